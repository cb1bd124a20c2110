#pragma once

#include <stdexcept>
#include <string>

namespace krich {

/// Raised when a caller violates a documented precondition or feeds in
/// malformed data (bad file, wrong dimension, out-of-range parameter).
/// The CLI maps this to exit code 1.
class invalid_input : public std::runtime_error {
public:
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal invariant is broken. Never the caller's fault.
/// The CLI maps this to exit code 2.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

namespace detail {
inline void require(bool cond, const std::string& what) {
    if (!cond) throw invalid_input(what);
}
inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw internal_error(what);
}
}  // namespace detail

}  // namespace krich
