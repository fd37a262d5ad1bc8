#pragma once

#include <stdexcept>
#include <string>

namespace pif {

// Every failure the library reports carries a stable kind string; the CLI
// maps kinds to exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define PIF_ERROR(Name, tag)                                                   \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(tag, what) {}           \
    }

PIF_ERROR(InvalidArgument, "invalid_argument");
PIF_ERROR(RangeViolation, "range_violation");
PIF_ERROR(NotCertified, "not_certified");
PIF_ERROR(NotImplemented, "not_implemented");
PIF_ERROR(PoleError, "pole_error");
PIF_ERROR(ReductionFailure, "reduction_failure");
PIF_ERROR(ConstructionFailure, "construction_failure");
PIF_ERROR(KernelPole, "kernel_pole");

#undef PIF_ERROR

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double best)
        : Error("convergence_failure", what), best_estimate(best) {}
    double best_estimate;
};

class SolveFailure : public Error {
public:
    SolveFailure(const std::string& what, double res)
        : Error("solve_failure", what), residual(res) {}
    double residual;
};

class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double err)
        : Error("quadrature_failure", what), error_estimate(err) {}
    double error_estimate;
};

}  // namespace pif
