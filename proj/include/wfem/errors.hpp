#ifndef WFEM_ERRORS_HPP
#define WFEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wfem
{

/// Argument outside the mathematical domain of a function (poles, |x| >= 1, ...).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Malformed construction arguments (mesh sizes, rule orders, exponents).
class ArgumentError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite samples of user-supplied functions.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive integration ran out of budget before reaching the tolerance.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), m_estimate(estimate), m_error_bound(error_bound)
    {}

    double estimate() const noexcept { return m_estimate; }
    double error_bound() const noexcept { return m_error_bound; }

private:
    double m_estimate;
    double m_error_bound;
};

class AssemblyError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Cholesky failed: the stiffness matrix is not numerically SPD.
class FactorizationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// The energy identity produced a significantly negative squared error.
class InconsistencyError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace wfem

#endif // WFEM_ERRORS_HPP
