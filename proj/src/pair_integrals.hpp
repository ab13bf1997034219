#ifndef WFEM_SRC_PAIR_INTEGRALS_HPP
#define WFEM_SRC_PAIR_INTEGRALS_HPP

#include "wfem/assembly.hpp"

#include <functional>
#include <string>

namespace wfem
{

/// Pair integral at a single order, no self-convergence check.
double pair_integral_fixed(const WfemSpace& space, int i, int j, int k, int l, int n);

/// Same quantity by the adaptive oracle (plain integrand on K x L).
double pair_integral_oracle(const WfemSpace& space, int i, int j, int k, int l, double tol);

double escalated_pair_integral(const WfemSpace& space, int i, int j, int k, int l, int n, double tol,
                               PairStats* stats);

/// Runs fixed(n), fixed(2n) and, if they disagree, fixed(4n); falls back to oracle(best estimate).
double escalate(const std::function<double(int)>& fixed, const std::function<double(double)>& oracle, int n,
                double tol, PairStats* stats, const std::function<std::string()>& label);

} // namespace wfem

#endif // WFEM_SRC_PAIR_INTEGRALS_HPP
