#ifndef WFEM_QUADRATURE_HPP
#define WFEM_QUADRATURE_HPP

#include <cmath>
#include <vector>

namespace wfem
{

enum class QuadKind
{
    legendre,
    jacobi
};

/// Gauss rule on [-1, 1] for the weight (1 - t)^alpha (1 + t)^beta.
struct QuadRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadKind kind = QuadKind::legendre;
    double alpha = 0.0;
    double beta = 0.0;
    int order = 0;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// 1 <= n <= 64. Returned references stay valid for the lifetime of the program.
const QuadRule& gauss_legendre(int n);

/// n >= 1, alpha > -1, beta > -1. alpha = beta = 0 yields the Legendre rule.
const QuadRule& gauss_jacobi(int n, double alpha, double beta);

/// Uncached construction, exposed for tests.
QuadRule build_gauss_jacobi(int n, double alpha, double beta);

/// Integral of f(x) (hi - x)^alpha (x - lo)^beta over [lo, hi] using the rule's own exponents.
template <typename F>
double integrate(const QuadRule& rule, double lo, double hi, F&& f)
{
    const double half = 0.5 * (hi - lo);
    const double scale = std::pow(half, rule.alpha + rule.beta + 1.0);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q)
        sum += rule.weights[q] * f(lo + half * (rule.nodes[q] + 1.0));
    return scale * sum;
}

/// Mapped nodes and weights of a rule on [lo, hi] (weights include the Jacobian).
struct MappedRule
{
    std::vector<double> x;
    std::vector<double> w;
};

MappedRule map_rule(const QuadRule& rule, double lo, double hi);

} // namespace wfem

#endif // WFEM_QUADRATURE_HPP
