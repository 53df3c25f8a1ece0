#ifndef HYDROFOLD_ERRORS_HPP
#define HYDROFOLD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hydrofold {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed or inconsistent input: bad residue codes, truncated scale files,
// length mismatches between a profile and a conformation, and the like.
struct input_error : error {
    explicit input_error(const std::string& what_arg) : error(what_arg) {}
};

// A resource guard tripped (e.g. exhaustive enumeration asked to walk more
// steps than the configured ceiling). Distinct from input_error so callers
// can map it to a dedicated exit code.
struct guard_error : error {
    explicit guard_error(const std::string& what_arg) : error(what_arg) {}
};

} // namespace hydrofold

#endif
