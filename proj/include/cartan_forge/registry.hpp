#pragma once

// The built-in catalog. CARTAN_FORGE_CATALOG, when set, names a catalog file
// that replaces the embedded one.

#include <cstdlib>
#include <string>

#include "cartan_forge/catalog.hpp"
#include "cartan_forge/embedded_data.hpp"

namespace cartan_forge {

inline Catalog embedded_catalog() {
    return Catalog(parse_catalog(embedded::catalog, [](const std::string& path) {
        auto it = embedded::files().find(path);
        if (it == embedded::files().end())
            throw Error(Errc::io, "no embedded file '" + path + "'");
        return std::string(it->second);
    }));
}

// Reads the environment on every call; see builtin_catalog() for the cached form.
inline Catalog load_catalog() {
    if (const char* path = std::getenv("CARTAN_FORGE_CATALOG"); path && *path)
        return Catalog::from_file(path);
    return embedded_catalog();
}

inline const Catalog& builtin_catalog() {
    static const Catalog cat = load_catalog();
    return cat;
}

inline const CartanSpec& builtin(std::string_view name) { return builtin_catalog().get(name); }

} // namespace cartan_forge
