#pragma once

#include <stdexcept>
#include <string>

namespace cbundle {

/// Error categories. The CLI maps each one to a distinct process exit code.
enum class ErrorKind {
    Malformed = 3,          // unreadable or structurally wrong input
    FaceIdentity = 4,       // simplicial identity violated
    OutOfRange = 5,         // index, dimension or bound outside its domain
    NotBinary = 6,
    NotCocycle = 7,
    InconsistentTriples = 8,
    IncompatibleFamily = 9,
    IncoherentLocalSystem = 10,
    LastArc = 11,
    BeadNotFound = 12,
    BoundExceeded = 13,
    NotClosedSurface = 14,
    NonOrientable = 15,
    NotCohomologous = 16,
    Internal = 17,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond)
        throw Error(kind, what);
}

} // namespace cbundle
