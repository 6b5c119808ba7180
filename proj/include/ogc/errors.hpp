#ifndef OGC_ERRORS_HPP
#define OGC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ogc {

/// Malformed combinatorial data (bad involution, inconsistent dimensions, ...).
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured size cap would be exceeded.
struct CapError : std::runtime_error {
    explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal consistency assertion failed (signals a convention bug, not bad input).
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace ogc

#endif
