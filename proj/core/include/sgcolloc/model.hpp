#ifndef SGCOLLOC_MODEL_HPP
#define SGCOLLOC_MODEL_HPP

#include <functional>
#include <string>
#include <vector>

#include "sgcolloc/common.hpp"
#include "sgcolloc/fem.hpp"
#include "sgcolloc/indexset.hpp"

// Parametric diffusion coefficients a(y) = exp(sum_j y_j psi_j) (lognormal)
// and a(y) = abar + sum_j y_j psi_j (affine), with psi families matching the
// summability hypotheses, and the parametric solution map.

namespace sgc::model {

enum class PsiFamily { PowerSine, DisjointBump, Constant1Term };

struct CoefficientModel {
  indexset::WeightMode mode = indexset::WeightMode::Lognormal;
  PsiFamily psi = PsiFamily::PowerSine;
  int J = 4;             // truncation dimension
  double c = 0.1;        // psi amplitude
  double kappa = 3.0;    // psi decay exponent
  double sigma1 = 0.5;   // Constant1Term amplitude
  double abar = 2.0;     // affine mean
  fem::ScalarFn source;  // right-hand side f; defaults to pi^2 sin(pi x)

  static CoefficientModel lognormal_power_sine(int J, double c, double kappa);
  static CoefficientModel lognormal_1term(double sigma1);
  static CoefficientModel affine_power_sine(int J, double abar, double c,
                                            double kappa);

  double psi_j(int j, double x) const;
  double psi_j_deriv(int j, double x) const;

  /// a(y, x); checks positivity in affine mode.
  double coefficient(const std::vector<double>& y, double x) const;

  fem::ScalarFn coefficient_fn(const std::vector<double>& y) const;

  /// Enforces the admissibility invariants on a 10^4-point spatial grid:
  /// affine: || sum rho_{1;j}|psi_j| / abar ||_inf < 1 with the default rho;
  /// lognormal: finiteness of the rho-weighted psi sums.
  void validate() const;
};

/// fem::solve at the given level with a(y, .).
fem::Field solve_parametric(const CoefficientModel& model, int level,
                            const std::vector<double>& y);

struct RhoDefaults {
  indexset::WeightSpec spec1;
  indexset::WeightSpec spec2;
  bool verified = false;
  double sup_r1 = 0.0;  // sup_x sum_j rho_{1;j} |psi_j|      (or /abar, affine)
  double sup_r2 = 0.0;  // sup_x sum_j rho_{2;j} |psi_j'|
  std::string message;
};

/// Default rho sequences rho_{r;j} = c_r j^{kappa_r} verified numerically
/// against the summability hypotheses of the model; feeds WeightSpec.
RhoDefaults rho_defaults(const CoefficientModel& model);

}  // namespace sgc::model

#endif
