#ifndef WFEM_SPECIAL_FUNCTIONS_HPP
#define WFEM_SPECIAL_FUNCTIONS_HPP

#include "wfem/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace wfem
{

namespace detail
{

template <typename Scalar>
bool is_nonpositive_integer(Scalar x)
{
    return x <= Scalar(0) && x == std::round(x);
}

// sin(pi x) with argument reduction, so that the zeros at integers are exact.
template <typename Scalar>
Scalar sin_pi(Scalar x)
{
    const Scalar n = std::round(x);
    const Scalar r = x - n;
    const Scalar v = std::sin(std::numbers::pi_v<Scalar> * r);
    return (static_cast<long long>(n) % 2 == 0) ? v : -v;
}

template <typename Scalar>
Scalar cot_pi(Scalar x)
{
    const Scalar r = x - std::round(x);
    return std::cos(std::numbers::pi_v<Scalar> * r) / std::sin(std::numbers::pi_v<Scalar> * r);
}

} // namespace detail

/// Gamma function. Lanczos approximation (g = 7, 9 terms) for x >= 1/2 and
/// the reflection formula below. Throws DomainError at the poles 0, -1, -2, ...
template <typename Scalar>
Scalar gamma(Scalar x)
{
    if (detail::is_nonpositive_integer(x))
        throw DomainError("gamma: pole at non-positive integer " + std::to_string(double(x)));

    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    if (x < Scalar(0.5))
        return pi / (detail::sin_pi(x) * gamma(Scalar(1) - x));

    static constexpr std::array<double, 9> lanczos = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr Scalar g = 7;

    const Scalar xm1 = x - Scalar(1);
    Scalar series = Scalar(lanczos[0]);
    for (std::size_t i = 1; i < lanczos.size(); ++i)
        series += Scalar(lanczos[i]) / (xm1 + Scalar(i));

    const Scalar t = xm1 + g + Scalar(0.5);
    // split t^(x - 1/2) to delay overflow for large x
    const Scalar half_pow = std::pow(t, (xm1 + Scalar(0.5)) / Scalar(2));
    return std::sqrt(Scalar(2) * pi) * half_pow * (half_pow * std::exp(-t)) * series;
}

/// 1/Gamma(x); exactly zero at the poles.
template <typename Scalar>
Scalar rgamma(Scalar x)
{
    if (detail::is_nonpositive_integer(x))
        return Scalar(0);
    return Scalar(1) / gamma(x);
}

/// Digamma function psi = Gamma'/Gamma.
template <typename Scalar>
Scalar digamma(Scalar x)
{
    if (detail::is_nonpositive_integer(x))
        throw DomainError("digamma: pole at non-positive integer");
    if (x < Scalar(0.5))
        return digamma(Scalar(1) - x) - std::numbers::pi_v<Scalar> * detail::cot_pi(x);

    Scalar acc = 0;
    while (x < Scalar(10)) {
        acc -= Scalar(1) / x;
        x += Scalar(1);
    }
    const Scalar inv2 = Scalar(1) / (x * x);
    // Bernoulli tail: B2/2, B4/4, ..., B12/12
    const Scalar tail =
        inv2 * (Scalar(1) / 12 -
                inv2 * (Scalar(1) / 120 -
                        inv2 * (Scalar(1) / 252 -
                                inv2 * (Scalar(1) / 240 - inv2 * (Scalar(1) / 132 - inv2 * Scalar(691) / 32760)))));
    return acc + std::log(x) - Scalar(0.5) / x - tail;
}

/// Order s and dimension d of the fractional Laplacian together with its
/// normalization constant C_{d,s} = 4^s Gamma(d/2 + s) / (pi^{d/2} |Gamma(-s)|).
struct FracParams
{
    double s = 0.5;
    int d = 1;
    double c_norm = 0.0;
};

template <typename Scalar>
Scalar frac_lap_constant(int d, Scalar s)
{
    if (d < 1)
        throw DomainError("frac_lap_constant: dimension must be >= 1");
    if (!(s > Scalar(0) && s < Scalar(1)))
        throw DomainError("frac_lap_constant: s must lie in (0,1)");
    const Scalar half_d = Scalar(d) / Scalar(2);
    return std::pow(Scalar(4), s) * gamma(half_d + s) /
           (std::pow(std::numbers::pi_v<Scalar>, half_d) * std::abs(gamma(-s)));
}

inline FracParams make_frac_params(double s, int d = 1)
{
    return FracParams{s, d, frac_lap_constant(d, s)};
}

/// c_{d,s} such that c_{d,s} (R^2 - |x - x0|^2)_+^s solves the problem with f = 1 on B_R(x0).
template <typename Scalar>
Scalar ball_solution_constant(int d, Scalar s)
{
    if (d < 1)
        throw DomainError("ball_solution_constant: dimension must be >= 1");
    if (!(s > Scalar(0) && s < Scalar(1)))
        throw DomainError("ball_solution_constant: s must lie in (0,1)");
    const Scalar half_d = Scalar(d) / Scalar(2);
    return gamma(half_d) /
           (std::pow(Scalar(2), Scalar(2) * s) * gamma(half_d + s) * gamma(Scalar(1) + s));
}

inline double ball_solution(double x, const FracParams& params, double radius, double center)
{
    const double r = std::abs(x - center);
    if (r >= radius)
        return 0.0;
    return ball_solution_constant(params.d, params.s) * std::pow((radius - r) * (radius + r), params.s);
}

namespace detail
{

template <typename Scalar>
Scalar hyp2f1_series(Scalar a, Scalar b, Scalar c, Scalar z)
{
    Scalar term = 1;
    Scalar sum = 1;
    for (int n = 0; n < 100000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * Scalar(n + 1)) * z;
        sum += term;
        if (term == Scalar(0) || std::abs(term) <= std::numeric_limits<Scalar>::epsilon() * std::abs(sum) / 4)
            return sum;
    }
    throw DomainError("gauss_2f1: series did not converge");
}

// F(a, b; a + b + m; z) for integer m >= 0 and z in (1/2, 1): logarithmic connection formula.
template <typename Scalar>
Scalar hyp2f1_integer_gap(Scalar a, Scalar b, int m, Scalar z)
{
    const Scalar c = a + b + Scalar(m);
    const Scalar w = Scalar(1) - z;
    const Scalar log_w = std::log(w);

    Scalar finite = 0;
    {
        Scalar poch = 1; // (a)_k (b)_k / k!
        Scalar pw = 1;   // (z - 1)^k
        for (int k = 0; k < m; ++k) {
            Scalar fact = 1; // (m - k - 1)!
            for (int j = 2; j <= m - k - 1; ++j)
                fact *= Scalar(j);
            finite += poch * fact * pw;
            poch *= (a + k) * (b + k) / Scalar(k + 1);
            pw *= -w;
        }
        finite *= rgamma(a + Scalar(m)) * rgamma(b + Scalar(m));
    }

    Scalar tail = 0;
    {
        Scalar mfact = 1;
        for (int j = 2; j <= m; ++j)
            mfact *= Scalar(j);
        Scalar coef = Scalar(1) / mfact; // (a+m)_k (b+m)_k / (k! (k+m)!)
        Scalar wk = 1;
        for (int k = 0; k < 100000; ++k) {
            const Scalar bracket = log_w - digamma(Scalar(k + 1)) - digamma(Scalar(k + m + 1)) +
                                   digamma(a + Scalar(k + m)) + digamma(b + Scalar(k + m));
            const Scalar term = coef * wk * bracket;
            tail += term;
            if (std::abs(term) <= std::numeric_limits<Scalar>::epsilon() * std::abs(tail) / 4 && k > 2)
                break;
            coef *= (a + Scalar(m + k)) * (b + Scalar(m + k)) / (Scalar(k + 1) * Scalar(k + m + 1));
            wk *= w;
        }
        Scalar zm1m = 1;
        for (int j = 0; j < m; ++j)
            zm1m *= -w;
        tail *= zm1m * rgamma(a) * rgamma(b);
    }
    return gamma(c) * (finite - tail);
}

} // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; z) for 0 <= z < 1.
///
/// Power series for z <= 1/2. For z in (1/2, 1) the 1 - z connection formula is
/// used; when c - a - b is an integer the logarithmic form applies instead.
template <typename Scalar>
Scalar gauss_2f1(Scalar a, Scalar b, Scalar c, Scalar z)
{
    if (detail::is_nonpositive_integer(c))
        throw DomainError("gauss_2f1: c is a non-positive integer");
    if (!(z >= Scalar(0) && z < Scalar(1)))
        throw DomainError("gauss_2f1: z must lie in [0,1)");
    if (a == Scalar(0) || b == Scalar(0) || z == Scalar(0))
        return Scalar(1);
    // terminating series is a polynomial and safe at any z < 1
    if (z <= Scalar(0.5) || detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b))
        return detail::hyp2f1_series(a, b, c, z);

    const Scalar gap = c - a - b;
    const Scalar nearest = std::round(gap);
    if (std::abs(gap - nearest) < Scalar(1e-12)) {
        const int m = static_cast<int>(nearest);
        if (m >= 0)
            return detail::hyp2f1_integer_gap(a, b, m, z);
        // Euler: F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z) flips the sign of the gap
        return std::pow(Scalar(1) - z, gap) * detail::hyp2f1_integer_gap(c - a, c - b, -m, z);
    }

    const Scalar w = Scalar(1) - z;
    const Scalar first = gamma(c) * gamma(gap) * rgamma(c - a) * rgamma(c - b) *
                         detail::hyp2f1_series(a, b, Scalar(1) - gap, w);
    const Scalar second = std::pow(w, gap) * gamma(c) * gamma(-gap) * rgamma(a) * rgamma(b) *
                          detail::hyp2f1_series(c - a, c - b, Scalar(1) + gap, w);
    return first + second;
}

/// (-Delta)^s (1 - |x|^2)_+ inside the unit ball:
/// 4^s Gamma(d/2 + s) / (Gamma(d/2) Gamma(2 - s)) * 2F1(d/2 + s, s - 1; d/2; |x|^2).
inline double bonito_rhs(double x, const FracParams& params)
{
    if (!(std::abs(x) < 1.0))
        throw DomainError("bonito_rhs: |x| must be < 1");
    const double half_d = params.d / 2.0;
    const double s = params.s;
    const double prefactor = std::pow(4.0, s) * gamma(half_d + s) / (gamma(half_d) * gamma(2.0 - s));
    return prefactor * gauss_2f1(half_d + s, s - 1.0, half_d, x * x);
}

/// a(u, u) = integral of f u over (-1, 1) for the pair u = (1 - x^2)_+, f = bonito_rhs, d = 1.
/// Term-wise integration of the hypergeometric series followed by Gauss's summation at z = 1.
inline double bonito_energy(double s)
{
    if (!(s > 0.0 && s < 1.0))
        throw DomainError("bonito_energy: s must lie in (0,1)");
    const double prefactor = std::pow(4.0, s) * gamma(0.5 + s) / (gamma(0.5) * gamma(2.0 - s));
    const double moment = 4.0 / 3.0 * gamma(2.5) * gamma(3.0 - 2.0 * s) / (gamma(2.0 - s) * gamma(3.5 - s));
    return prefactor * moment;
}

} // namespace wfem

#endif // WFEM_SPECIAL_FUNCTIONS_HPP
