#pragma once

#include <stdexcept>
#include <string>

namespace fdd {

enum class Errc {
    invalid_argument,
    non_convergent,
    config,
    singular_system,
    no_crossing,
    not_reached,
    contour_failure,
    optimizer_stall,
    grid_mismatch,
};

/// Domain error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

} // namespace fdd
