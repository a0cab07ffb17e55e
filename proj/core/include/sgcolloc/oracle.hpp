#ifndef SGCOLLOC_ORACLE_HPP
#define SGCOLLOC_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sgcolloc/common.hpp"
#include "sgcolloc/indexset.hpp"
#include "sgcolloc/rules1d.hpp"

// Brute-force references: full tensor Gauss rules, dense Hermite-coefficient
// extraction, box-scan index-set enumeration, and seeded Monte Carlo
// Bochner-norm estimation.  Ground truth for everything the faster paths
// claim.

namespace sgc::oracle {

using ParametricFn = std::function<double(const std::vector<double>&)>;

/// Full tensor Gauss rule with `order`+1 points per dimension.
/// Throws BudgetError if the point count exceeds 10^7.
double tensor_quadrature(int J, int order, const rules1d::Measure& measure,
                         const ParametricFn& f);

/// Generic tensor-rule sweep: calls visit(point, weight) for every node.
void tensor_rule_sweep(
    int J, int order, const rules1d::Measure& measure,
    const std::function<void(const std::vector<double>&, double)>& visit);

/// Hermite coefficients v_s = int f H_s dgamma over the box max_deg^J.
std::map<indexset::MultiIndex, double> hermite_coefficients(
    const ParametricFn& f, int J, int max_deg, int order);

/// Deterministic counter-based standard-normal stream (splitmix64 state,
/// Box-Muller); sample i of a given seed is reproducible in isolation.
double counter_normal(std::uint64_t seed, std::uint64_t counter);

struct McResult {
  double estimate = 0.0;   // E[ ||approx - ref||^p ]^(1/p)
  double std_error = 0.0;  // standard error of the p-th-moment mean, rooted
};

/// Monte Carlo estimate of the L_p(gamma) Bochner error, p in {1, 2}.
/// `sq_norm_diff` maps a parametric sample to ||approx(y) - ref(y)||_V^2.
McResult mc_bochner_error(
    const std::function<double(const std::vector<double>&)>& sq_norm_diff,
    int J, int p, int samples, std::uint64_t seed);

/// Exhaustive scan of the multi-index box 0 <= s_j <= bounds[j].
std::vector<indexset::MultiIndex> box_scan_indexset(
    const std::vector<int>& bounds,
    const std::function<bool(const indexset::MultiIndex&)>& predicate);

/// Exhaustive scan over levels k <= k_max and the box.
std::vector<std::pair<int, indexset::MultiIndex>> box_scan_G(
    int k_max, const std::vector<int>& bounds,
    const std::function<bool(int, const indexset::MultiIndex&)>& predicate);

}  // namespace sgc::oracle

#endif
