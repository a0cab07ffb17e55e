#include "exactness.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "sgcolloc/indexset.hpp"
#include "sgcolloc/oracle.hpp"
#include "sgcolloc/orthopoly.hpp"
#include "sgcolloc/rules1d.hpp"
#include "sgcolloc/sparse.hpp"

namespace sgc::tools {

namespace {

struct Suite {
  std::ostream& os;
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
      os << "ok   " << name << "\n";
    } else {
      ++failures;
      os << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
    }
  }
};

double gaussian_moment(int p) {
  if (p % 2 == 1) return 0.0;
  double m = 1.0;
  for (int k = p - 1; k > 1; k -= 2) m *= k;
  return m;
}

// literal binomial double sum behind sigma^2, independent of the library path
double sigma_literal(const indexset::MultiIndex& s,
                     const indexset::WeightSpec& spec) {
  double sq = 1.0;
  for (auto& [d, v] : s.entries()) {
    double rho = spec.rho(d);
    double f = 0.0;
    for (int k = 0; k <= std::min(spec.eta, v); ++k) {
      double binom = std::exp(std::lgamma(v + 1) - std::lgamma(k + 1) -
                              std::lgamma(v - k + 1));
      f += binom * std::pow(rho, 2.0 * k);
    }
    sq *= f;
  }
  return std::sqrt(sq);
}

// scan box strictly containing the plan: one margin layer per dimension plus
// one extra dimension, so missed neighbors would be detected
std::vector<int> scan_bounds(const indexset::IndexPlan& plan) {
  int dims = 1;
  for (auto& [k, s] : plan.entries) dims = std::max(dims, s.max_dim());
  std::vector<int> bounds(dims + 1, 0);
  for (auto& [k, s] : plan.entries)
    for (auto& [d, v] : s.entries())
      bounds[d - 1] = std::max(bounds[d - 1], v);
  for (int& b : bounds) b += 2;
  return bounds;
}

}  // namespace

int run_exactness(bool fast, std::ostream& os) {
  Suite suite{os};
  const int m_max = fast ? 10 : 20;
  const int box_order = fast ? 3 : 4;
  nodes::NodeFamily gh(nodes::FamilyTag::GaussHermite);

  {
    double worst = 0.0;
    for (int m = 0; m <= m_max; ++m) {
      auto rule = rules1d::make_rule(gh.sequence(m), rules1d::Measure::gaussian());
      for (int p = 0; p <= 2 * m + 1; ++p) {
        // symmetric pairs summed together so odd powers cancel exactly
        double acc = 0.0;
        for (int k = 0; 2 * k <= m; ++k) {
          double t = rule.weights[k] * std::pow(rule.nodes.points[k], p);
          if (2 * k < m)
            t += rule.weights[m - k] * std::pow(rule.nodes.points[m - k], p);
          acc += t;
        }
        double ref = gaussian_moment(p);
        double err = std::abs(acc - ref) / std::max(1.0, std::abs(ref));
        worst = std::max(worst, err);
      }
    }
    suite.check("gauss-hermite moment exactness", worst < 1e-10,
                "worst rel err " + std::to_string(worst));
  }

  {
    double worst = 0.0;
    for (int m = 0; m <= m_max; ++m) {
      auto seq = gh.sequence(m);
      auto w = rules1d::quad_weights(seq, rules1d::Measure::gaussian());
      auto cf = rules1d::gauss_hermite_closed_form_weights(seq);
      for (size_t k = 0; k < w.size(); ++k)
        worst = std::max(worst, std::abs(w[k] - cf[k]));
    }
    suite.check("closed-form quadrature weights", worst < 1e-11,
                "worst abs err " + std::to_string(worst));
  }

  {
    std::vector<double> y{0.3, -0.7};
    double worst_i = 0.0, worst_q = 0.0;
    for (int s1 = 0; s1 <= box_order; ++s1)
      for (int s2 = 0; s2 <= box_order; ++s2)
        for (int t1 = 0; t1 <= box_order; ++t1)
          for (int t2 = 0; t2 <= box_order; ++t2) {
            auto s = indexset::MultiIndex::from_dense({s1, s2});
            auto t = indexset::MultiIndex::from_dense({t1, t2});
            auto ht = [&](const std::vector<double>& p) {
              return sparse::hermite_tensor(t, p);
            };
            if (!s.leq(t))
              worst_i = std::max(
                  worst_i,
                  std::abs(sparse::tensor_delta_interp(s, gh, ht, y)));
            if (t1 % 2 == 1 || t2 % 2 == 1)
              worst_q = std::max(
                  worst_q, std::abs(sparse::tensor_delta_quad(s, gh, ht)));
          }
    suite.check("interp annihilation (s not <= s')", worst_i < 1e-9,
                "worst " + std::to_string(worst_i));
    suite.check("quad annihilation (odd component)", worst_q < 1e-9,
                "worst " + std::to_string(worst_q));
  }

  {
    auto f = [](const std::vector<double>& y) {
      return std::exp(0.3 * y[0] - 0.2 * y[1]) + std::sin(y[0] * y[1]);
    };
    std::vector<indexset::MultiIndex> box;
    for (int s1 = 0; s1 <= 3; ++s1)
      for (int s2 = 0; s2 <= 3; ++s2)
        box.push_back(indexset::MultiIndex::from_dense({s1, s2}));
    std::vector<double> y{0.4, -0.9};
    double si = sparse::sparse_interpolate(box, gh, f, y);
    double ti = sparse::tensor_interpolate(
        indexset::MultiIndex::from_dense({3, 3}), gh, f, y);
    suite.check("interp telescoping on full box", std::abs(si - ti) < 1e-9,
                std::to_string(std::abs(si - ti)));
    double sq = sparse::sparse_quadrature(box, gh, f);
    double tq = oracle::tensor_quadrature(2, 3, rules1d::Measure::gaussian(), f);
    suite.check("quad telescoping on full box", std::abs(sq - tq) < 1e-9,
                std::to_string(std::abs(sq - tq)));
    double termwise = 0.0;
    for (auto& s : box) termwise += sparse::tensor_delta_quad(s, gh, f, 2);
    suite.check("combination-weight consistency", std::abs(sq - termwise) < 1e-11,
                std::to_string(std::abs(sq - termwise)));
  }

  {
    // lower triangle slice, downward closed but not a box
    std::vector<indexset::MultiIndex> tri;
    for (int s1 = 0; s1 <= 3; ++s1)
      for (int s2 = 0; s2 + s1 <= 3; ++s2)
        tri.push_back(indexset::MultiIndex::from_dense({s1, s2}));
    double worst = 0.0;
    std::vector<double> y{-0.2, 1.1};
    for (auto& s : tri) {
      auto hs = [&](const std::vector<double>& p) {
        return sparse::hermite_tensor(s, p);
      };
      double got = sparse::sparse_interpolate(tri, gh, hs, y);
      double want = sparse::hermite_tensor(s, y);
      worst = std::max(worst, std::abs(got - want));
    }
    suite.check("I_Lambda reproduces H_s on the slice", worst < 1e-9,
                std::to_string(worst));
    auto one = [](const std::vector<double>&) { return 1.0; };
    double q1v = sparse::sparse_quadrature(tri, gh, one);
    suite.check("quad weights sum to 1", std::abs(q1v - 1.0) < 1e-12,
                std::to_string(std::abs(q1v - 1.0)));
    auto odd = [](const std::vector<double>& p) {
      return p[0] * std::cosh(p[1]) + p[1] * p[1] * p[0];
    };
    double qodd = sparse::sparse_quadrature(tri, gh, odd);
    suite.check("odd integrand annihilated", std::abs(qodd) < 1e-12,
                std::to_string(std::abs(qodd)));
  }

  {
    auto spec = indexset::WeightSpec::lognormal_power(2.0, 1.0, 0.8, 3);
    double worst = 0.0;
    for (int s1 = 0; s1 <= 6; ++s1)
      for (int s2 = 0; s2 <= 6; ++s2)
        for (int s3 = 0; s3 <= 6; s3 += 3) {
          auto s = indexset::MultiIndex::from_dense({s1, s2, s3});
          double a = indexset::sigma(s, spec);
          double b = sigma_literal(s, spec);
          worst = std::max(worst, std::abs(a - b) / b);
        }
    suite.check("sigma product form vs double sum", worst < 1e-12,
                std::to_string(worst));
  }

  {
    auto spec = indexset::WeightSpec::lognormal_power(1.2, 1.3, 1.5, 2);
    double xi = 50.0;
    auto plan = indexset::build_Lambda(xi, spec);
    auto scan = oracle::box_scan_indexset(
        scan_bounds(plan), [&](const indexset::MultiIndex& s) {
          return std::pow(indexset::sigma(s, spec), spec.q) <= xi;
        });
    std::set<indexset::MultiIndex> a, b(scan.begin(), scan.end());
    for (auto& [k, s] : plan.entries) a.insert(s);
    suite.check("build_Lambda equals box scan", a == b,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    suite.check("Lambda slice downward closed",
                indexset::downward_closed(plan.lambda0()));
  }

  {
    auto spec1 = indexset::WeightSpec::lognormal_power(1.5, 2.6, 0.7, 3);
    auto spec2 = indexset::WeightSpec::lognormal_power(1.5, 1.4, 1.6, 3);
    double xi = 15.0, alpha = 1.0;
    auto plan = indexset::build_G(xi, alpha, spec1, spec2,
                                  indexset::Regime::Expansion);
    auto scan = oracle::box_scan_G(
        plan.max_level() + 1, scan_bounds(plan),
        [&](int k, const indexset::MultiIndex& s) {
          double w1 = std::pow(indexset::sigma(s, spec1), spec1.q);
          double w2 = std::pow(indexset::sigma(s, spec2), spec1.q);
          return w1 <= xi && std::exp2(alpha * spec1.q * k) * w2 <= xi;
        });
    std::set<std::pair<int, indexset::MultiIndex>> a(plan.entries.begin(),
                                                     plan.entries.end()),
        b(scan.begin(), scan.end());
    suite.check("build_G equals box scan", a == b,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    bool nested = true;
    for (int k = 1; k <= plan.max_level(); ++k) {
      auto prev = plan.slice(k - 1);
      std::set<indexset::MultiIndex> prev_set(prev.begin(), prev.end());
      for (auto& s : plan.slice(k))
        if (!prev_set.count(s)) nested = false;
    }
    suite.check("G slices nested decreasingly in k", nested);
  }

  return suite.failures;
}

}  // namespace sgc::tools
