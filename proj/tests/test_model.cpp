#include <cmath>

#include "doctest.h"
#include "sgcolloc/fem.hpp"
#include "sgcolloc/model.hpp"

using namespace sgc;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("power-sine basis functions") {
  auto m = model::CoefficientModel::lognormal_power_sine(4, 0.1, 3.0);
  for (int j = 1; j <= 4; ++j) {
    double x = 0.37;
    CHECK(m.psi_j(j, x) ==
          doctest::Approx(0.1 * std::pow(double(j), -3.0) *
                          std::sin(j * kPi * x))
              .epsilon(1e-14));
    CHECK(m.psi_j_deriv(j, x) ==
          doctest::Approx(0.1 * std::pow(double(j), -3.0) * j * kPi *
                          std::cos(j * kPi * x))
              .epsilon(1e-14));
  }
}

TEST_CASE("lognormal coefficient is the exponential of the sum") {
  auto m = model::CoefficientModel::lognormal_power_sine(3, 0.2, 3.0);
  std::vector<double> y = {0.5, -1.0, 2.0};
  double b = 0.0;
  for (int j = 1; j <= 3; ++j) b += y[j - 1] * m.psi_j(j, 0.42);
  CHECK(m.coefficient(y, 0.42) == doctest::Approx(std::exp(b)).epsilon(1e-14));
  CHECK(m.coefficient({}, 0.42) == 1.0);
}

TEST_CASE("constant-1term coefficient") {
  auto m = model::CoefficientModel::lognormal_1term(0.5);
  CHECK(m.coefficient({2.0}, 0.9) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(m.psi_j(1, 0.1) == 0.5);
  CHECK(m.psi_j(2, 0.1) == 0.0);
}

TEST_CASE("affine coefficient and positivity guard") {
  auto m = model::CoefficientModel::affine_power_sine(3, 2.0, 0.1, 3.0);
  std::vector<double> y = {0.3, -0.8, 0.1};
  double b = 0.0;
  for (int j = 1; j <= 3; ++j) b += y[j - 1] * m.psi_j(j, 0.6);
  CHECK(m.coefficient(y, 0.6) == doctest::Approx(2.0 + b).epsilon(1e-14));
  auto bad = model::CoefficientModel::affine_power_sine(1, 0.01, 0.1, 3.0);
  CHECK_THROWS_AS(bad.coefficient({-40.0}, 0.5), NumericError);
}

TEST_CASE("default rho sequences verify the admissibility hypotheses") {
  auto rho = model::rho_defaults(
      model::CoefficientModel::lognormal_power_sine(4, 0.1, 3.0));
  CHECK(rho.verified);
  CHECK(rho.spec1.q < rho.spec2.q);
  CHECK(std::isfinite(rho.sup_r1));
  CHECK(std::isfinite(rho.sup_r2));
  auto aff = model::rho_defaults(
      model::CoefficientModel::affine_power_sine(4, 2.0, 0.1, 3.0));
  CHECK(aff.verified);
  CHECK(aff.sup_r1 < 1.0);  // contraction with margin
  // decay too slow for the derivative sequence
  auto bad = model::rho_defaults(
      model::CoefficientModel::lognormal_power_sine(4, 0.1, 2.0));
  CHECK(!bad.verified);
  CHECK_THROWS_AS(
      model::CoefficientModel::lognormal_power_sine(4, 0.1, 2.0).validate(),
      ConfigError);
}

TEST_CASE("parametric solve: zero parameter reduces to the unit coefficient") {
  auto m = model::CoefficientModel::lognormal_power_sine(4, 0.1, 3.0);
  auto u = model::solve_parametric(m, 3, {0.0, 0.0, 0.0, 0.0});
  auto v = fem::solve(3, [](double) { return 1.0; },
                      [](double x) { return kPi * kPi * std::sin(kPi * x); });
  REQUIRE(u.values.size() == v.values.size());
  for (size_t i = 0; i < u.values.size(); ++i)
    CHECK(u.values[i] == doctest::Approx(v.values[i]).epsilon(1e-13));
}

TEST_CASE("solution map continuity probe") {
  auto m = model::CoefficientModel::lognormal_power_sine(4, 0.1, 3.0);
  std::vector<double> y = {0.4, -0.2, 1.0, 0.3};
  auto base = model::solve_parametric(m, 8, y);
  y[1] += 1e-6;
  auto pert = model::solve_parametric(m, 8, y);
  double diff = fem::norm_V(pert - base);
  CHECK(diff <= 10.0 * 1e-6 * fem::norm_V(base));
}
