#ifndef SGCOLLOC_SPARSE_HPP
#define SGCOLLOC_SPARSE_HPP

#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sgcolloc/common.hpp"
#include "sgcolloc/fem.hpp"
#include "sgcolloc/indexset.hpp"
#include "sgcolloc/model.hpp"
#include "sgcolloc/nodes.hpp"
#include "sgcolloc/rules1d.hpp"

// Tensorized parametric operators: the differences Delta^I_s / Delta^Q_s,
// the sparse interpolant I_Lambda and quadrature Q_Lambda in combination
// form, and the fully discrete multilevel operators combining spatial level
// differences delta_k with the parametric slices Lambda_k.
//
// Tensor factors for inactive dimensions are I_0 / Q_0, so every sample sits
// on the symbolic grid Gamma(Lambda) and point identity is exact.

namespace sgc::sparse {

using ParamFn = std::function<double(const std::vector<double>&)>;

/// prod_j H_{s_j}(y_j) (Gaussian families) or prod_j J_{s_j}(y_j) (Jacobi).
double basis_tensor(const indexset::MultiIndex& s,
                    const nodes::NodeFamily& family,
                    const std::vector<double>& y);

double hermite_tensor(const indexset::MultiIndex& s,
                      const std::vector<double>& y);

/// Coordinates of a symbolic grid point as a dense vector of length dims.
std::vector<double> point_coords(const indexset::SymbolicPoint& p,
                                 const nodes::NodeFamily& family, int dims);

int slice_max_dim(const std::vector<indexset::MultiIndex>& slice);

/// Combination coefficients c_t with sum_{s in slice} Delta_s = sum_t c_t
/// (tensor operator at t): c_t = sum over s = t + e in the slice of
/// (-1)^{|e|}, e binary.  Zero coefficients are dropped.  Purely algebraic,
/// valid for any finite slice.
std::vector<std::pair<indexset::MultiIndex, int>> combination_coefficients(
    const std::vector<indexset::MultiIndex>& slice, int step = 1);

/// Throws UsageError unless the slice is downward closed (step 1, or step 2
/// for slices inside F_ev).
void require_closed(const std::vector<indexset::MultiIndex>& slice,
                    int step = 1);

/// (tensor_j I_{s_j}) f (y): interpolation at level s_j in every active
/// dimension, samples at 0 elsewhere.
double tensor_interpolate(const indexset::MultiIndex& s,
                          const nodes::NodeFamily& family, const ParamFn& f,
                          const std::vector<double>& y);

/// Delta^I_s f (y) = sum_{e binary on supp(s)} (-1)^{|e|} tensor interpolant
/// at s - e.
double tensor_delta_interp(const indexset::MultiIndex& s,
                           const nodes::NodeFamily& family, const ParamFn& f,
                           const std::vector<double>& y, int step = 1);

/// I_Lambda f (y) = sum over the slice of Delta^I_s, evaluated in
/// combination form.  Requires a downward-closed slice.
double sparse_interpolate(const std::vector<indexset::MultiIndex>& slice,
                          const nodes::NodeFamily& family, const ParamFn& f,
                          const std::vector<double>& y, int step = 1);

/// Per-point interpolation weights: I_Lambda f (y) = sum_p w_p(y) f(p) over
/// Gamma(slice).  Deterministic (points sorted).
std::vector<std::pair<indexset::SymbolicPoint, double>> interpolation_weights(
    const std::vector<indexset::MultiIndex>& slice,
    const nodes::NodeFamily& family, const std::vector<double>& y,
    int step = 1);

/// Delta^Q_s f, expanded term by term over the binary corrections.  dims is
/// a floor on the length of the sample vectors handed to f (inactive
/// coordinates are 0).
double tensor_delta_quad(const indexset::MultiIndex& s,
                         const nodes::NodeFamily& family, const ParamFn& f,
                         int dims = 0, int step = 1);

/// Combined quadrature weights over Gamma(slice):
/// Q_Lambda f = sum_p W_p f(p).
std::vector<std::pair<indexset::SymbolicPoint, double>> combined_quad_weights(
    const std::vector<indexset::MultiIndex>& slice,
    const nodes::NodeFamily& family, int step = 1);

/// Q_Lambda f through the combined weights.  Requires a downward-closed
/// slice and a symmetric family.
double sparse_quadrature(const std::vector<indexset::MultiIndex>& slice,
                         const nodes::NodeFamily& family, const ParamFn& f,
                         int dims = 0, int step = 1);

/// Fully discrete operators for one parametric PDE model: I_G, Q_G and
/// functionals of Q_G, with a (level, symbolic point) solver cache.
class FullyDiscreteEvaluator {
 public:
  FullyDiscreteEvaluator(model::CoefficientModel model,
                         const nodes::NodeFamily& family,
                         indexset::IndexPlan plan);

  int finest_level() const { return plan_.max_level(); }
  const indexset::IndexPlan& plan() const { return plan_; }

  /// I_G u at parameter y, as a field on the finest level of the plan.
  fem::Field interpolate(const std::vector<double>& y);

  /// Q_G u, the gamma-integral of the fully discrete interpolant.
  fem::Field quadrature();

  double functional_quadrature(
      const std::function<double(const fem::Field&)>& phi);

  /// Solves every (level, point) pair the quadrature needs, in parallel.
  void prefetch(int jobs);

  long solver_calls() const { return solver_calls_; }
  nlohmann::json stats() const;

 private:
  const fem::Field& solve_at(int level, const indexset::SymbolicPoint& p);
  fem::Field delta_at(int k, const indexset::SymbolicPoint& p);

  model::CoefficientModel model_;
  const nodes::NodeFamily& family_;
  indexset::IndexPlan plan_;
  int dims_ = 0;
  int step_ = 1;  // 2 for even-parity plans: differences and grids skip odd levels
  std::mutex mutex_;
  std::map<std::pair<int, indexset::SymbolicPoint>, fem::Field> cache_;
  long solver_calls_ = 0;
};

/// Functionals for functional_quadrature.
std::function<double(const fem::Field&)> mean_functional();
std::function<double(const fem::Field&)> point_functional(double x);
std::function<double(const fem::Field&)> h1_functional(fem::Field with);

/// Truncated gpc approximant S_G: per-index spatial profiles
/// sum_{k: (k,s) in G} delta_k(v_s), combined with H_s at evaluation time.
/// delta_k here acts by nodal interpolation onto the level meshes.
struct GpcApproximant {
  int level = 0;
  std::vector<std::pair<indexset::MultiIndex, fem::Field>> terms;

  fem::Field evaluate(const std::vector<double>& y) const;
};

GpcApproximant truncated_expansion(
    const indexset::IndexPlan& plan,
    const std::function<fem::ScalarFn(const indexset::MultiIndex&)>& coeff);

}  // namespace sgc::sparse

#endif
