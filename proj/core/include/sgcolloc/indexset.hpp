#ifndef SGCOLLOC_INDEXSET_HPP
#define SGCOLLOC_INDEXSET_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sgcolloc/common.hpp"

// Multi-indices, the weight sequences sigma_s / beta_s built from growth
// sequences rho, and the thresholded index sets G(xi), Lambda(xi) with their
// even-parity restrictions.  Construction follows the sequential
// lowest-dimension-first walk; monotone rho makes it self-terminating.

namespace sgc::indexset {

/// Finitely supported sequence of nonnegative integers.  Canonical form
/// stores only the nonzero entries, sorted by (1-based) dimension.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::pair<int, int>> entries);
  static MultiIndex unit(int dim, int value = 1);
  static MultiIndex from_dense(const std::vector<int>& dense);

  int get(int dim) const;
  MultiIndex with(int dim, int value) const;
  MultiIndex incremented(int dim, int step = 1) const;

  const std::vector<std::pair<int, int>>& entries() const { return entries_; }
  bool zero() const { return entries_.empty(); }
  int support_size() const { return int(entries_.size()); }
  int max_dim() const { return entries_.empty() ? 0 : entries_.back().first; }
  int total_degree() const;
  int max_entry() const;
  bool is_even() const;
  bool in_F_nu(int nu) const;  // every nonzero entry >= nu
  bool leq(const MultiIndex& other) const;  // componentwise
  std::vector<int> dense(int dims) const;

  bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
  bool operator<(const MultiIndex& o) const { return entries_ < o.entries_; }
  std::string str() const;
  size_t hash() const;

 private:
  std::vector<std::pair<int, int>> entries_;
};

struct MultiIndexHash {
  size_t operator()(const MultiIndex& s) const { return s.hash(); }
};

enum class WeightMode { Lognormal, Affine };

/// The growth sequence rho_j, cap eta, and summability exponent q behind one
/// sigma (or beta) weight family.
struct WeightSpec {
  WeightMode mode = WeightMode::Lognormal;
  std::function<double(int)> rho;  // j >= 1; > 1 and nondecreasing
  int eta = 1;
  double q = 1.0;
  double jacobi_a = 0.0;  // affine mode, a = b
  int j_max = 512;        // hard guard for misconfigured rho

  /// rho_j = c * j^kappa.
  static WeightSpec lognormal_power(double c, double kappa, double q, int eta);
  static WeightSpec affine_power(double c, double kappa, double q, double a);
};

/// Lognormal sigma_s = sqrt( prod_j sum_{k<=min(eta,s_j)} C(s_j,k) rho_j^{2k} ).
/// Throws NumericError on floating overflow.
double sigma(const MultiIndex& s, const WeightSpec& spec);

/// Affine beta_s = rho^s prod_j c_{s_j}^{a,a}.
double beta_affine(const MultiIndex& s, const WeightSpec& spec);

/// Dispatch on spec.mode.
double weight(const MultiIndex& s, const WeightSpec& spec);

/// p_s(theta, lambda) = prod_j (1 + lambda s_j)^theta.
double p_weight(const MultiIndex& s, double theta, double lambda);

struct SummabilityReport {
  bool hypothesis_met = false;  // eta > 2 nu (theta+1) / q
  bool diverged = false;
  double value = 0.0;       // truncated product of the B_j factors
  double tail_bound = 0.0;  // multiplicative bound for the omitted factors
};

/// Evaluates sum_{s in F_nu} p_s(theta,lambda) sigma_s^{-q/nu} as a product
/// of per-dimension factors B_j, truncated at j_tail.
SummabilityReport summability_check(const WeightSpec& spec, int nu,
                                    double theta, double lambda, double q,
                                    int j_tail);

enum class Regime { Expansion, Interpolation };
enum class Parity { All, Even };

/// A finite thresholded index set: (level, multi-index) pairs for fully
/// discrete plans, level fixed to 0 for parametric-only plans.
struct IndexPlan {
  Regime regime = Regime::Expansion;
  Parity parity = Parity::All;
  double xi = 0.0;
  bool fully_discrete = false;
  std::vector<std::pair<int, MultiIndex>> entries;  // lex sorted in (k, s)

  size_t size() const { return entries.size(); }
  int max_level() const;
  long dyadic_dim() const;  // sum over entries of 2^k
  std::vector<MultiIndex> slice(int k) const;  // Lambda_k
  std::vector<MultiIndex> lambda0() const { return slice(0); }

  nlohmann::json to_json() const;
  static IndexPlan from_json(const nlohmann::json& j);
};

/// The fully discrete set G(xi) of the given regime.  The regime split is
/// alpha <= 1/q2 (expansion) or alpha <= 1/q2 - 1/2 (interpolation); above
/// the split the two thresholds sigma_1^{q1} <= xi and the level condition
/// on sigma_2 apply, below it the single condition 2^k sigma_2^{q2} <= xi.
/// Ties at equality are included.
IndexPlan build_G(double xi, double alpha, const WeightSpec& spec1,
                  const WeightSpec& spec2, Regime regime,
                  Parity parity = Parity::All, size_t cap = 10'000'000);

/// Lambda(xi) = { s : sigma_s^q <= xi }, optionally restricted to F_ev.
IndexPlan build_Lambda(double xi, const WeightSpec& spec,
                       Parity parity = Parity::All, size_t cap = 10'000'000);

/// Entries whose multi-index has all components even.
IndexPlan restrict_even(const IndexPlan& plan);

/// Downward closure of a slice; step = 2 checks closure within F_ev.
bool downward_closed(const std::vector<MultiIndex>& slice, int step = 1);

/// Symbolic parametric grid point: per-dimension (level, index) pairs for the
/// non-origin coordinates.  The midpoint of an even-level symmetric sequence
/// is the origin and is canonicalized away, so equality is exact point
/// identity without floating comparison.
struct SymbolicPoint {
  std::vector<std::array<int, 3>> coords;  // (dim, level, index), sorted by dim

  bool operator==(const SymbolicPoint& o) const { return coords == o.coords; }
  bool operator<(const SymbolicPoint& o) const { return coords < o.coords; }
  size_t hash() const;
  std::string str() const;
};

struct SymbolicPointHash {
  size_t operator()(const SymbolicPoint& p) const { return p.hash(); }
};

/// Gamma(Lambda) = union over s of prod_j (Y_{s_j} u Y_{s_j - step}).
/// step = 2 for slices inside F_ev, where the successive differences and
/// hence the grids skip the odd levels.
std::vector<SymbolicPoint> grid_of(const std::vector<MultiIndex>& lambda,
                                   int step = 1);

enum class CostFunctional { Cardinality, DyadicDim, GridPoints };

long plan_cost(const IndexPlan& plan, CostFunctional cost);

/// Largest xi (bracket doubling + 60 bisection steps) whose plan cost is
/// within the budget n.
std::pair<double, IndexPlan> calibrate_xi(
    long n, CostFunctional cost,
    const std::function<IndexPlan(double)>& builder);

}  // namespace sgc::indexset

#endif
