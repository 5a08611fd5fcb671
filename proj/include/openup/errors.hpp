#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace openup {

// Error taxonomy mirrors the CLI exit codes: validation failures (exit 1),
// empty solver results (exit 2), and internal numerical failures (exit 3).
enum class ErrorKind { Validation, NoSolution, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string name, const std::string& message)
        : std::runtime_error(message), kind_(kind), name_(std::move(name)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(ErrorKind::Validation, "ValidationError", msg) {}
};

struct DegenerateSpec : Error {
    explicit DegenerateSpec(const std::string& msg) : Error(ErrorKind::Validation, "DegenerateSpec", msg) {}
};

struct JacobianSingular : Error {
    explicit JacobianSingular(const std::string& msg) : Error(ErrorKind::Numerical, "JacobianSingular", msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(ErrorKind::Numerical, "NoConvergence", msg) {}
};

struct RootFindingError : Error {
    RootFindingError(const std::string& msg, std::vector<double> residuals)
        : Error(ErrorKind::Numerical, "RootFindingError", msg), residuals(std::move(residuals)) {}
    std::vector<double> residuals;
};

struct NoSolutionFound : Error {
    explicit NoSolutionFound(const std::string& msg) : Error(ErrorKind::NoSolution, "NoSolutionFound", msg) {}
};

struct PathCollision : Error {
    explicit PathCollision(const std::string& msg) : Error(ErrorKind::Numerical, "PathCollision", msg) {}
};

struct StalledAlternation : Error {
    explicit StalledAlternation(const std::string& msg) : Error(ErrorKind::Numerical, "StalledAlternation", msg) {}
};

struct MultiplePole : Error {
    explicit MultiplePole(const std::string& msg) : Error(ErrorKind::Numerical, "MultiplePole", msg) {}
};

struct BranchJump : Error {
    explicit BranchJump(const std::string& msg) : Error(ErrorKind::Numerical, "BranchJump", msg) {}
};

struct NoOpeningSolution : Error {
    explicit NoOpeningSolution(const std::string& msg) : Error(ErrorKind::NoSolution, "NoOpeningSolution", msg) {}
};

}  // namespace openup
