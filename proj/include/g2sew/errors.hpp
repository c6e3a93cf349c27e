#ifndef G2SEW_ERRORS_HPP
#define G2SEW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace g2sew {

enum class ErrorKind {
    domain,         // point outside the sewing domain, |q| >= 1, bad arguments
    inconsistency,  // two independent evaluations disagree
    cutoff,         // a series cutoff is too small for the requested tolerance
    verification,   // an oracle check failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string &what) : Error(ErrorKind::domain, what) {}
};

// |q| >= 1 or a similar divergent input.
struct NonConvergentError : DomainError {
    explicit NonConvergentError(const std::string &what) : DomainError(what) {}
};

// Laurent expansion requested outside its disk of convergence.
struct OutOfDiskError : DomainError {
    explicit OutOfDiskError(const std::string &what) : DomainError(what) {}
};

struct PoleError : DomainError {
    explicit PoleError(const std::string &what) : DomainError(what) {}
};

struct InconsistencyError : Error {
    explicit InconsistencyError(const std::string &what) : Error(ErrorKind::inconsistency, what) {}
};

struct SingularMatrixError : InconsistencyError {
    explicit SingularMatrixError(const std::string &what) : InconsistencyError(what) {}
};

struct CutoffError : Error {
    explicit CutoffError(const std::string &what) : Error(ErrorKind::cutoff, what) {}
};

// Process exit code associated with an error kind.
inline int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::domain: return 2;
    case ErrorKind::inconsistency: return 3;
    case ErrorKind::cutoff: return 4;
    case ErrorKind::verification: return 5;
    }
    return 1;
}

} // namespace g2sew

#endif
