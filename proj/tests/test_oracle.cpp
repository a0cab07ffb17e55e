#include <cmath>
#include <set>

#include "doctest.h"
#include "sgcolloc/indexset.hpp"
#include "sgcolloc/oracle.hpp"
#include "sgcolloc/rules1d.hpp"

using namespace sgc;
using indexset::MultiIndex;

TEST_CASE("tensor quadrature: exact gaussian moments in two dimensions") {
  auto m = rules1d::Measure::gaussian();
  // E[y1^2 y2^2] = 1, E[y1^4] = 3, odd moments vanish
  CHECK(oracle::tensor_quadrature(2, 3, m, [](const std::vector<double>& y) {
          return y[0] * y[0] * y[1] * y[1];
        }) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(oracle::tensor_quadrature(1, 3, m, [](const std::vector<double>& y) {
          return std::pow(y[0], 4);
        }) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(std::abs(oracle::tensor_quadrature(
            2, 4, m,
            [](const std::vector<double>& y) { return y[0] * y[1] * y[1]; })) <
        1e-13);
  // closed form: E[e^{c y}] = e^{c^2/2}, c = 0.5 -> e^{1/8}
  CHECK(oracle::tensor_quadrature(1, 20, m, [](const std::vector<double>& y) {
          return std::exp(0.5 * y[0]);
        }) == doctest::Approx(1.1331484530668263168).epsilon(1e-14));
}

TEST_CASE("tensor quadrature refuses oversized boxes") {
  CHECK_THROWS_AS(oracle::tensor_quadrature(
                      10, 9, rules1d::Measure::gaussian(),
                      [](const std::vector<double>&) { return 1.0; }),
                  BudgetError);
}

TEST_CASE("tensor rule sweep: weights sum to one") {
  double s = 0.0;
  long count = 0;
  oracle::tensor_rule_sweep(3, 2, rules1d::Measure::gaussian(),
                            [&](const std::vector<double>& y, double w) {
                              REQUIRE(y.size() == 3);
                              s += w;
                              ++count;
                            });
  CHECK(count == 27);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("hermite coefficient extraction recovers a sparse expansion") {
  // f = 2 H_0 + 0.5 H_{(1,0)} - 0.25 H_{(1,2)}
  auto f = [](const std::vector<double>& y) {
    double h1 = y[0];
    double h2 = (y[1] * y[1] - 1.0) / std::sqrt(2.0);
    return 2.0 + 0.5 * h1 - 0.25 * h1 * h2;
  };
  auto coeffs = oracle::hermite_coefficients(f, 2, 3, 6);
  auto get = [&](const MultiIndex& s) {
    auto it = coeffs.find(s);
    return it == coeffs.end() ? 0.0 : it->second;
  };
  CHECK(get(MultiIndex()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(get(MultiIndex::unit(1)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(get(MultiIndex({{1, 1}, {2, 2}})) ==
        doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(std::abs(get(MultiIndex::unit(2, 2))) < 1e-12);
  CHECK(std::abs(get(MultiIndex::unit(1, 3))) < 1e-12);
}

TEST_CASE("counter-based normals: frozen references and independence") {
  // frozen from an independent implementation of splitmix64 + Box-Muller
  CHECK(oracle::counter_normal(42, 0) ==
        doctest::Approx(1.3919772730545004).epsilon(1e-15));
  CHECK(oracle::counter_normal(42, 7) ==
        doctest::Approx(0.16822517346494556).epsilon(1e-15));
  CHECK(oracle::counter_normal(1234, 3) ==
        doctest::Approx(-0.4375598596461685).epsilon(1e-15));
  // counter access is stateless: any order gives the same draw
  double a = oracle::counter_normal(7, 5);
  oracle::counter_normal(7, 123);
  CHECK(oracle::counter_normal(7, 5) == a);
  // rough sanity on the distribution
  double mean = 0.0, var = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) mean += oracle::counter_normal(99, i);
  mean /= n;
  for (int i = 0; i < n; ++i)
    var += std::pow(oracle::counter_normal(99, i) - mean, 2);
  var /= n - 1;
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("monte carlo bochner error: determinism and exact constants") {
  auto sq = [](const std::vector<double>& y) {
    return 4.0 + 0.0 * y[0];  // constant squared norm -> estimate 2, se 0
  };
  auto r1 = oracle::mc_bochner_error(sq, 3, 2, 500, 2024);
  CHECK(r1.estimate == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r1.std_error == doctest::Approx(0.0).epsilon(1e-12));
  auto r2 = oracle::mc_bochner_error(sq, 3, 1, 500, 2024);
  CHECK(r2.estimate == doctest::Approx(2.0).epsilon(1e-14));
  // same seed -> bitwise identical runs
  auto g = [](const std::vector<double>& y) {
    return y[0] * y[0] + 0.3 * y[1] * y[1];
  };
  auto a = oracle::mc_bochner_error(g, 2, 2, 256, 77);
  auto b = oracle::mc_bochner_error(g, 2, 2, 256, 77);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  auto c = oracle::mc_bochner_error(g, 2, 2, 256, 78);
  CHECK(a.estimate != c.estimate);
  // E[y1^2 + 0.3 y2^2] = 1.3, so the p = 2 estimate approaches sqrt(1.3)
  auto big = oracle::mc_bochner_error(g, 2, 2, 40000, 5);
  CHECK(big.estimate == doctest::Approx(std::sqrt(1.3)).epsilon(0.05));
}

TEST_CASE("box scans enumerate exactly the predicate set") {
  auto all = oracle::box_scan_indexset(
      {2, 1}, [](const MultiIndex&) { return true; });
  CHECK(all.size() == 6);
  std::set<MultiIndex> uniq(all.begin(), all.end());
  CHECK(uniq.size() == all.size());
  auto deg1 = oracle::box_scan_indexset(
      {2, 1}, [](const MultiIndex& s) { return s.total_degree() <= 1; });
  CHECK(deg1.size() == 3);
  auto g = oracle::box_scan_G(1, {1}, [](int k, const MultiIndex& s) {
    return k + s.total_degree() <= 1;
  });
  CHECK(g.size() == 3);  // (0,0), (0,e1), (1,0)
}
