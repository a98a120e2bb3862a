#pragma once

#include "cartan_forge/analysis.hpp"
#include "cartan_forge/builder.hpp"
#include "cartan_forge/catalog.hpp"
#include "cartan_forge/emit.hpp"
#include "cartan_forge/error.hpp"
#include "cartan_forge/field.hpp"
#include "cartan_forge/linalg.hpp"
#include "cartan_forge/reflection.hpp"
#include "cartan_forge/registry.hpp"
#include "cartan_forge/verify.hpp"
