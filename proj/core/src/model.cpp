#include "sgcolloc/model.hpp"

#include <cmath>

namespace sgc::model {

namespace {

constexpr double kPi = 3.14159265358979323846;

double default_source(double x) { return kPi * kPi * std::sin(kPi * x); }

double hat(double u) { return std::max(0.0, 1.0 - std::abs(2.0 * u - 1.0)); }

}  // namespace

CoefficientModel CoefficientModel::lognormal_power_sine(int J, double c,
                                                        double kappa) {
  CoefficientModel m;
  m.mode = indexset::WeightMode::Lognormal;
  m.psi = PsiFamily::PowerSine;
  m.J = J;
  m.c = c;
  m.kappa = kappa;
  m.source = default_source;
  return m;
}

CoefficientModel CoefficientModel::lognormal_1term(double sigma1) {
  CoefficientModel m;
  m.mode = indexset::WeightMode::Lognormal;
  m.psi = PsiFamily::Constant1Term;
  m.J = 1;
  m.sigma1 = sigma1;
  m.source = default_source;
  return m;
}

CoefficientModel CoefficientModel::affine_power_sine(int J, double abar,
                                                     double c, double kappa) {
  CoefficientModel m;
  m.mode = indexset::WeightMode::Affine;
  m.psi = PsiFamily::PowerSine;
  m.J = J;
  m.abar = abar;
  m.c = c;
  m.kappa = kappa;
  m.source = default_source;
  return m;
}

double CoefficientModel::psi_j(int j, double x) const {
  if (j < 1) throw UsageError("psi_j: 1-based index");
  switch (psi) {
    case PsiFamily::PowerSine:
      return c * std::pow(double(j), -kappa) * std::sin(j * kPi * x);
    case PsiFamily::DisjointBump: {
      int level = int(std::floor(std::log2(double(j))));
      int pos = j - (1 << level);
      double scale = std::pow(2.0, double(level));
      return c * std::pow(double(j), -kappa) * hat(x * scale - pos);
    }
    case PsiFamily::Constant1Term:
      return j == 1 ? sigma1 : 0.0;
  }
  return 0.0;
}

double CoefficientModel::psi_j_deriv(int j, double x) const {
  switch (psi) {
    case PsiFamily::PowerSine:
      return c * std::pow(double(j), -kappa) * j * kPi * std::cos(j * kPi * x);
    case PsiFamily::DisjointBump: {
      int level = int(std::floor(std::log2(double(j))));
      int pos = j - (1 << level);
      double scale = std::pow(2.0, double(level));
      double u = x * scale - pos;
      if (u <= 0.0 || u >= 1.0 || u == 0.5) return 0.0;
      return c * std::pow(double(j), -kappa) * scale * (u < 0.5 ? 2.0 : -2.0);
    }
    case PsiFamily::Constant1Term:
      return 0.0;
  }
  return 0.0;
}

double CoefficientModel::coefficient(const std::vector<double>& y,
                                     double x) const {
  double b = 0.0;
  int jmax = std::min<int>(J, int(y.size()));
  for (int j = 1; j <= jmax; ++j)
    if (y[j - 1] != 0.0) b += y[j - 1] * psi_j(j, x);
  if (mode == indexset::WeightMode::Lognormal) return std::exp(b);
  double a = abar + b;
  if (!(a > 0.0))
    throw NumericError("coefficient: affine coefficient lost positivity");
  return a;
}

fem::ScalarFn CoefficientModel::coefficient_fn(
    const std::vector<double>& y) const {
  return [this, y](double x) { return coefficient(y, x); };
}

void CoefficientModel::validate() const {
  auto rho = rho_defaults(*this);
  if (!rho.verified)
    throw ConfigError("CoefficientModel: " + rho.message);
}

fem::Field solve_parametric(const CoefficientModel& model, int level,
                            const std::vector<double>& y) {
  fem::ScalarFn f = model.source ? model.source : default_source;
  return fem::solve(level, model.coefficient_fn(y), f);
}

RhoDefaults rho_defaults(const CoefficientModel& model) {
  RhoDefaults out;
  const int grid = 10000;
  const int jsum = std::max(model.J, 64);

  if (model.psi == PsiFamily::Constant1Term) {
    double r1 = 3.0;
    out.spec1 = indexset::WeightSpec::lognormal_power(r1, 4.0, 1.0, 2);
    out.spec2 = out.spec1;
    out.sup_r1 = r1 * model.sigma1;
    out.sup_r2 = 0.0;
    out.verified = true;
    return out;
  }

  double kappa1 = model.kappa - 1.5;
  double kappa2 = model.kappa - 2.5;
  if (kappa1 <= 0 || kappa2 <= 0) {
    out.message = "psi decay too slow for the default rho sequences";
    return out;
  }
  double c1 = 1.2, c2 = 1.2;
  double q1 = 1.1 / kappa1, q2 = 1.1 / kappa2;

  auto sup_sum = [&](double cr, double kr, bool deriv) {
    double sup = 0.0;
    for (int i = 0; i <= grid; ++i) {
      double x = double(i) / grid;
      double s = 0.0;
      for (int j = 1; j <= jsum; ++j)
        s += cr * std::pow(double(j), kr) *
             std::abs(deriv ? model.psi_j_deriv(j, x) : model.psi_j(j, x));
      sup = std::max(sup, s);
    }
    return sup;
  };

  if (model.mode == indexset::WeightMode::Affine) {
    // scale rho_1 so the contraction hypothesis holds with margin
    double raw = sup_sum(1.0, kappa1, false) / model.abar;
    c1 = 0.95 / raw;
    if (c1 <= 1.0) {
      out.message = "affine contraction cannot hold with rho_j > 1";
      return out;
    }
    out.sup_r1 = sup_sum(c1, kappa1, false) / model.abar;
    out.sup_r2 = sup_sum(c2, kappa2, true);
    out.verified = out.sup_r1 < 1.0 && std::isfinite(out.sup_r2);
    out.spec1 = indexset::WeightSpec::affine_power(c1, kappa1, q1, 0.0);
    out.spec2 = indexset::WeightSpec::affine_power(c2, kappa2, q2, 0.0);
    if (!out.verified) out.message = "affine hypothesis check failed";
    return out;
  }

  out.sup_r1 = sup_sum(c1, kappa1, false);
  out.sup_r2 = sup_sum(c2, kappa2, true);
  out.verified = std::isfinite(out.sup_r1) && std::isfinite(out.sup_r2);
  out.spec1 = indexset::WeightSpec::lognormal_power(c1, kappa1, q1, 2);
  out.spec2 = indexset::WeightSpec::lognormal_power(c2, kappa2, q2, 2);
  if (!out.verified) out.message = "lognormal hypothesis check failed";
  return out;
}

}  // namespace sgc::model
