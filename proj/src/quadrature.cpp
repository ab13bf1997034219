#include "wfem/quadrature.hpp"

#include "wfem/errors.hpp"

#include <Eigen/Eigenvalues>

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace wfem
{

namespace
{

// P_n^{(alpha,beta)}(x) and P_{n-1}^{(alpha,beta)}(x) by the three-term recurrence.
std::pair<double, double> jacobi_pair(int n, double a, double b, double x)
{
    double p_prev = 1.0;
    double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    if (n == 0)
        return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double c = 2.0 * k + a + b;
        const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
        const double a2 = (c - 1.0) * (a * a - b * b);
        const double a3 = (c - 2.0) * (c - 1.0) * c;
        const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        const double next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    return {p, p_prev};
}

// d/dx P_n from (2n+a+b)(1-x^2) P_n' = n[(a-b) - (2n+a+b)x] P_n + 2(n+a)(n+b) P_{n-1}.
double jacobi_derivative(int n, double a, double b, double x, double pn, double pn1)
{
    const double c = 2.0 * n + a + b;
    return (n * ((a - b) - c * x) * pn + 2.0 * (n + a) * (n + b) * pn1) / (c * (1.0 - x) * (1.0 + x));
}

} // namespace

QuadRule build_gauss_jacobi(int n, double alpha, double beta)
{
    if (n < 1)
        throw ArgumentError("gauss_jacobi: need n >= 1");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw ArgumentError("gauss_jacobi: exponents must exceed -1");

    const double a = alpha;
    const double b = beta;
    const double ab = a + b;

    // Jacobi matrix of the orthonormal recurrence.
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) {
        const double c = 2.0 * k + ab;
        diag[k] = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (c * (c + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double c = 2.0 * k + ab;
        double v;
        if (k == 1)
            v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            v = 4.0 * k * (k + a) * (k + b) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0));
        sub[k - 1] = std::sqrt(v);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (eig.info() != Eigen::Success)
        throw ArgumentError("gauss_jacobi: eigenvalue solver failed");

    const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                           std::lgamma(ab + 2.0);
    // weight = exp(log_const) / ((1 - x^2) P_n'(x)^2)
    const double log_const = (ab + 1.0) * std::log(2.0) + std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                             std::lgamma(n + ab + 1.0) - std::lgamma(n + 1.0);

    QuadRule rule;
    rule.kind = (a == 0.0 && b == 0.0) ? QuadKind::legendre : QuadKind::jacobi;
    rule.alpha = a;
    rule.beta = b;
    rule.order = n;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    for (int i = 0; i < n; ++i) {
        double x = eig.eigenvalues()[i];
        double w_gw = std::exp(log_mu0) * eig.eigenvectors()(0, i) * eig.eigenvectors()(0, i);
        if (n == 1) {
            rule.nodes[0] = x;
            rule.weights[0] = w_gw;
            break;
        }
        for (int it = 0; it < 3; ++it) {
            const auto [pn, pn1] = jacobi_pair(n, a, b, x);
            const double dp = jacobi_derivative(n, a, b, x, pn, pn1);
            const double step = pn / dp;
            if (!std::isfinite(step) || std::abs(step) > 1e-6)
                break;
            x -= step;
            if (std::abs(step) < 1e-17)
                break;
        }
        const auto [pn, pn1] = jacobi_pair(n, a, b, x);
        const double dp = jacobi_derivative(n, a, b, x, pn, pn1);
        const double w = std::exp(log_const) / ((1.0 - x) * (1.0 + x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = std::isfinite(w) && w > 0.0 ? w : w_gw;
    }
    return rule;
}

const QuadRule& gauss_jacobi(int n, double alpha, double beta)
{
    using Key = std::tuple<int, double, double>;
    static std::map<Key, std::unique_ptr<QuadRule>> cache;
    static std::shared_mutex mutex;

    const Key key{n, alpha, beta};
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return *it->second;
    }
    auto rule = std::make_unique<QuadRule>(build_gauss_jacobi(n, alpha, beta));
    std::unique_lock lock(mutex);
    auto [it, inserted] = cache.try_emplace(key, std::move(rule));
    return *it->second;
}

const QuadRule& gauss_legendre(int n)
{
    if (n < 1 || n > 64)
        throw ArgumentError("gauss_legendre: n must lie in [1, 64]");
    return gauss_jacobi(n, 0.0, 0.0);
}

MappedRule map_rule(const QuadRule& rule, double lo, double hi)
{
    const double half = 0.5 * (hi - lo);
    const double scale = std::pow(half, rule.alpha + rule.beta + 1.0);
    MappedRule m;
    m.x.reserve(rule.size());
    m.w.reserve(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) {
        m.x.push_back(lo + half * (rule.nodes[q] + 1.0));
        m.w.push_back(scale * rule.weights[q]);
    }
    return m;
}

} // namespace wfem
