#pragma once

#include <stdexcept>
#include <string>

namespace swsh {

/// Invalid argument for a mathematical operation (bad m, zero denominator, angle out of range).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operation was called before the data it depends on exists.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A floating-point procedure failed to converge or is ill-conditioned.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact identity that must hold did not. Carries enough context to locate the failure.
class VerificationError : public std::runtime_error {
public:
    VerificationError(std::string module, std::string operation, int order, std::string detail)
        : std::runtime_error(module + "::" + operation + " (n=" + std::to_string(order) + "): " + detail),
          module_(std::move(module)),
          operation_(std::move(operation)),
          order_(order) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& operation() const noexcept { return operation_; }
    int order() const noexcept { return order_; }

private:
    std::string module_;
    std::string operation_;
    int order_;
};

/// The shape-invariance linear solve hit a vanishing pivot at (n, p).
class SingularFlowError : public std::runtime_error {
public:
    SingularFlowError(int n, int p, const std::string& what)
        : std::runtime_error("singular flow at (n=" + std::to_string(n) + ", p=" + std::to_string(p) + "): " + what),
          n_(n),
          p_(p) {}

    int n() const noexcept { return n_; }
    int p() const noexcept { return p_; }

private:
    int n_;
    int p_;
};

}  // namespace swsh
