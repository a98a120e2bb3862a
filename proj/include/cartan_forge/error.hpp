#pragma once

#include <stdexcept>
#include <string>

namespace cartan_forge {

enum class Errc {
    invalid_argument,
    non_prime,
    unsupported_degree,
    division_by_zero,
    context_mismatch,
    parse,
    schema,
    unknown_name,
    unbound_symbol,
    excluded_binding,
    not_in_field,
    limit_exceeded,
    multiplicity,
    precondition,
    out_of_range,
    io,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::non_prime: return "non-prime";
    case Errc::unsupported_degree: return "unsupported-degree";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::context_mismatch: return "context-mismatch";
    case Errc::parse: return "parse";
    case Errc::schema: return "schema";
    case Errc::unknown_name: return "unknown-name";
    case Errc::unbound_symbol: return "unbound-symbol";
    case Errc::excluded_binding: return "excluded-binding";
    case Errc::not_in_field: return "not-in-field";
    case Errc::limit_exceeded: return "limit-exceeded";
    case Errc::multiplicity: return "multiplicity";
    case Errc::precondition: return "precondition";
    case Errc::out_of_range: return "out-of-range";
    case Errc::io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace cartan_forge
