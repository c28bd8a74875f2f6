#pragma once

#include <stdexcept>
#include <string>

namespace frq {

enum class ErrorKind { Validation, Degenerate, Resource, Invariant };

// CLI exit codes: 2 validation (degenerate input counts as validation),
// 3 resource cap, 4 internal invariant violation.
inline int exit_code_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::Resource: return 3;
        case ErrorKind::Invariant: return 4;
        default: return 2;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return exit_code_of(kind_); }

private:
    ErrorKind kind_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorKind::Validation, w) {}
};
struct DegenerateGeometry : Error {
    explicit DegenerateGeometry(const std::string& w) : Error(ErrorKind::Degenerate, w) {}
};
struct ResourceError : Error {
    explicit ResourceError(const std::string& w) : Error(ErrorKind::Resource, w) {}
};
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& w) : Error(ErrorKind::Invariant, w) {}
};

}  // namespace frq
