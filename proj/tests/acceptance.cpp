// Acceptance suite: end-to-end checks of the quadrature/interpolation stack,
// one pass/fail line per criterion.  Exits with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgcolloc/fem.hpp"
#include "sgcolloc/indexset.hpp"
#include "sgcolloc/model.hpp"
#include "sgcolloc/nodes.hpp"
#include "sgcolloc/oracle.hpp"
#include "sgcolloc/rules1d.hpp"
#include "sgcolloc/sparse.hpp"
#include "sgcolloc/study.hpp"

using namespace sgc;
using indexset::MultiIndex;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%2d] %s %s (%s)\n", id, ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double gaussian_moment(int p) {
  if (p % 2 == 1) return 0.0;
  double m = 1.0;
  for (int k = p - 1; k > 1; k -= 2) m *= k;
  return m;
}

// ---------------------------------------------------------------------------

void criterion_1_moment_exactness(nodes::NodeFamily& gh) {
  auto t0 = Clock::now();
  double worst = 0.0;
  for (int m = 0; m <= 20; ++m) {
    auto rule = rules1d::make_rule(gh.sequence(m), rules1d::Measure::gaussian());
    for (int p = 0; p <= 2 * m + 1; ++p) {
      double acc = 0.0;
      for (int k = 0; 2 * k <= m; ++k) {
        double t = rule.weights[k] * std::pow(rule.nodes.points[k], p);
        if (2 * k < m)
          t += rule.weights[m - k] * std::pow(rule.nodes.points[m - k], p);
        acc += t;
      }
      double ref = gaussian_moment(p);
      worst = std::max(worst, std::abs(acc - ref) / std::max(1.0, ref));
    }
  }
  double dt = seconds_since(t0);
  report(1, "gauss-hermite moment exactness, p <= 2m+1, m <= 20",
         worst < 1e-10 && dt < 5.0,
         "worst rel err " + study::fmt17(worst) + ", " +
             std::to_string(dt) + " s");
}

void criterion_2_closed_form_weights(nodes::NodeFamily& gh) {
  double worst = 0.0;
  for (int m = 0; m <= 20; ++m) {
    auto seq = gh.sequence(m);
    auto w = rules1d::quad_weights(seq, rules1d::Measure::gaussian());
    auto cf = rules1d::gauss_hermite_closed_form_weights(seq);
    for (size_t k = 0; k < w.size(); ++k)
      worst = std::max(worst, std::abs(w[k] - cf[k]));
  }
  report(2, "projection weights match the closed form, m <= 20", worst < 1e-11,
         "worst abs err " + study::fmt17(worst));
}

void criterion_3_annihilation(nodes::NodeFamily& gh) {
  std::vector<double> y{0.3, -0.7};
  double worst_i = 0.0, worst_q = 0.0;
  for (int s1 = 0; s1 <= 4; ++s1)
    for (int s2 = 0; s2 <= 4; ++s2)
      for (int t1 = 0; t1 <= 4; ++t1)
        for (int t2 = 0; t2 <= 4; ++t2) {
          auto s = MultiIndex::from_dense({s1, s2});
          auto t = MultiIndex::from_dense({t1, t2});
          auto ht = [&](const std::vector<double>& p) {
            return sparse::hermite_tensor(t, p);
          };
          if (!s.leq(t))
            worst_i = std::max(
                worst_i, std::abs(sparse::tensor_delta_interp(s, gh, ht, y)));
          if (t1 % 2 == 1 || t2 % 2 == 1)
            worst_q = std::max(
                worst_q, std::abs(sparse::tensor_delta_quad(s, gh, ht)));
        }
  report(3, "difference operators annihilate off-support basis functions",
         worst_i < 1e-9 && worst_q < 1e-9,
         "interp " + study::fmt17(worst_i) + ", quad " + study::fmt17(worst_q));
}

void criterion_4_telescoping(nodes::NodeFamily& gh) {
  auto t0 = Clock::now();
  std::vector<sparse::ParamFn> fns = {
      [](const std::vector<double>& y) {
        return std::exp(0.3 * y[0] - 0.2 * y[1]);
      },
      [](const std::vector<double>& y) {
        return std::sin(y[0] * y[1]) + std::cos(0.5 * y[0]);
      },
      [](const std::vector<double>& y) {
        return 1.0 / (4.0 + y[0] * y[0] + 0.5 * y[1] * y[1]);
      }};
  double worst = 0.0;
  // 2-dim boxes: sparse vs tensor interpolation and vs high-order reference
  std::vector<MultiIndex> box2;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) box2.push_back(MultiIndex::from_dense({i, j}));
  std::vector<double> y{0.4, -0.9};
  for (auto& f : fns) {
    double si = sparse::sparse_interpolate(box2, gh, f, y);
    double ti = sparse::tensor_interpolate(MultiIndex::from_dense({3, 3}), gh,
                                           f, y);
    worst = std::max(worst, std::abs(si - ti));
    double sq = sparse::sparse_quadrature(box2, gh, f, 2);
    auto interp = [&](const std::vector<double>& p) {
      return sparse::sparse_interpolate(box2, gh, f, p);
    };
    double ref = oracle::tensor_quadrature(2, 12, rules1d::Measure::gaussian(),
                                           interp);
    worst = std::max(worst, std::abs(sq - ref));
  }
  // 3-dim box, quadrature only (the interpolant sweep dominates the cost)
  std::vector<MultiIndex> box3;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      for (int k = 0; k <= 2; ++k)
        box3.push_back(MultiIndex::from_dense({i, j, k}));
  auto g = [](const std::vector<double>& y) {
    return std::exp(0.2 * y[0] - 0.1 * y[1] + 0.15 * y[2]);
  };
  double sq3 = sparse::sparse_quadrature(box3, gh, g, 3);
  auto interp3 = [&](const std::vector<double>& p) {
    return sparse::sparse_interpolate(box3, gh, g, p);
  };
  double ref3 =
      oracle::tensor_quadrature(3, 8, rules1d::Measure::gaussian(), interp3);
  worst = std::max(worst, std::abs(sq3 - ref3));
  double dt = seconds_since(t0);
  report(4, "sparse operators telescope to tensor/high-order references",
         worst < 1e-8 && dt < 30.0,
         "worst abs err " + study::fmt17(worst) + ", " + std::to_string(dt) +
             " s");
}

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

void criterion_5_index_sets() {
  int configs = 0;
  bool all_ok = true;
  std::string first_bad;

  auto check_config = [&](const std::string& name, bool ok) {
    ++configs;
    if (!ok && first_bad.empty()) first_bad = name;
    all_ok = all_ok && ok;
  };

  // Lambda(xi) against the exhaustive scan, three specs x two parities
  struct LSpec {
    indexset::WeightSpec spec;
    double xi;
  };
  std::vector<LSpec> lspecs = {
      {indexset::WeightSpec::lognormal_power(1.2, 1.3, 1.5, 2), 50.0},
      {indexset::WeightSpec::lognormal_power(1.5, 1.8, 1.0, 2), 40.0},
      {indexset::WeightSpec::lognormal_power(1.8, 2.0, 1.2, 2), 80.0}};
  for (auto& [spec, xi] : lspecs)
    for (auto parity : {indexset::Parity::All, indexset::Parity::Even}) {
      auto plan = indexset::build_Lambda(xi, spec, parity);
      bool even = parity == indexset::Parity::Even;
      auto scan = oracle::box_scan_indexset(
          scan_bounds(plan), [&](const MultiIndex& s) {
            if (even && !s.is_even()) return false;
            return std::pow(indexset::sigma(s, spec), spec.q) <= xi;
          });
      std::set<MultiIndex> a, b(scan.begin(), scan.end());
      for (auto& [k, s] : plan.entries) a.insert(s);
      bool closed = indexset::downward_closed(plan.lambda0(), even ? 2 : 1);
      check_config("Lambda", a == b && closed);
    }

  // G(xi) against the scan: both regimes, both parities, plus a small-alpha
  // configuration that exercises the single-threshold branch
  auto spec1 = indexset::WeightSpec::lognormal_power(1.5, 2.6, 0.7, 3);
  auto spec2 = indexset::WeightSpec::lognormal_power(1.5, 1.4, 1.6, 3);
  struct GSpec {
    indexset::Regime regime;
    indexset::Parity parity;
    double xi, alpha;
  };
  std::vector<GSpec> gspecs = {
      {indexset::Regime::Expansion, indexset::Parity::All, 15.0, 1.0},
      {indexset::Regime::Expansion, indexset::Parity::Even, 15.0, 1.0},
      {indexset::Regime::Interpolation, indexset::Parity::All, 15.0, 1.0},
      {indexset::Regime::Interpolation, indexset::Parity::Even, 15.0, 1.0},
      {indexset::Regime::Expansion, indexset::Parity::All, 12.0, 0.3},
      {indexset::Regime::Expansion, indexset::Parity::Even, 12.0, 0.3}};
  for (auto& g : gspecs) {
    auto plan =
        indexset::build_G(g.xi, g.alpha, spec1, spec2, g.regime, g.parity);
    const double q1 = spec1.q, q2 = spec2.q;
    const double split = g.regime == indexset::Regime::Expansion
                             ? 1.0 / q2
                             : 1.0 / q2 - 0.5;
    const bool even = g.parity == indexset::Parity::Even;
    std::function<bool(int, const MultiIndex&)> pred;
    if (g.alpha <= split) {
      pred = [&, xi = g.xi](int k, const MultiIndex& s) {
        if (even && !s.is_even()) return false;
        double w2q = std::pow(indexset::sigma(s, spec2), q2);
        return std::exp2(double(k)) * w2q <= xi;
      };
    } else if (g.regime == indexset::Regime::Expansion) {
      pred = [&, xi = g.xi, alpha = g.alpha](int k, const MultiIndex& s) {
        if (even && !s.is_even()) return false;
        double w1 = std::pow(indexset::sigma(s, spec1), q1);
        double w2 = std::pow(indexset::sigma(s, spec2), q1);
        return w1 <= xi && std::exp2(alpha * q1 * k) * w2 <= xi;
      };
    } else {
      double vartheta = 1.0 / q1 + (1.0 / q1 - 1.0 / q2) / (2.0 * g.alpha);
      double xi_theta = std::pow(g.xi, vartheta);
      pred = [&, xi = g.xi, alpha = g.alpha, xi_theta](int k,
                                                       const MultiIndex& s) {
        if (even && !s.is_even()) return false;
        double w1 = std::pow(indexset::sigma(s, spec1), q1);
        double w2 = indexset::sigma(s, spec2);
        return w1 <= xi && std::exp2((alpha + 0.5) * k) * w2 <= xi_theta;
      };
    }
    auto scan = oracle::box_scan_G(plan.max_level() + 1, scan_bounds(plan),
                                   pred);
    std::set<std::pair<int, MultiIndex>> a(plan.entries.begin(),
                                           plan.entries.end()),
        b(scan.begin(), scan.end());
    bool nested = true, closed = true;
    std::set<MultiIndex> prev;
    for (int k = 0; k <= plan.max_level(); ++k) {
      auto slice = plan.slice(k);
      closed = closed && indexset::downward_closed(slice, even ? 2 : 1);
      if (k > 0)
        for (auto& s : slice)
          if (!prev.count(s)) nested = false;
      prev = std::set<MultiIndex>(slice.begin(), slice.end());
    }
    check_config("G", a == b && nested && closed);
  }

  report(5, "index-set builders equal exhaustive scans; slices closed/nested",
         all_ok && configs >= 10,
         std::to_string(configs) + " configurations" +
             (first_bad.empty() ? "" : ", first failure: " + first_bad));
}

void criterion_6_sigma() {
  auto spec = indexset::WeightSpec::lognormal_power(2.0, 1.0, 0.8, 3);
  double worst = 0.0;
  for (int s1 = 0; s1 <= 6; ++s1)
    for (int s2 = 0; s2 <= 6; ++s2)
      for (int s3 = 0; s3 <= 6; s3 += 2) {
        auto s = MultiIndex::from_dense({s1, s2, s3});
        // literal double sum: product over dims of sum_k C(s_j, k) rho^{2k}
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
        double lit = std::sqrt(sq);
        worst = std::max(worst,
                         std::abs(indexset::sigma(s, spec) - lit) / lit);
      }
  report(6, "sigma product form equals the literal binomial double sum",
         worst < 1e-12, "worst rel err " + study::fmt17(worst));
}

void criterion_7_lebesgue() {
  // Growth envelope of the Lebesgue constants.  The interior-node variant
  // tracks the Gauss baseline: same-order growth exponent and a bounded
  // per-degree ratio.  The exact per-degree factor sits near 1.4 at these
  // degrees (verified against 50-digit arithmetic), so the envelope is 1.6
  // on the ratio plus a 1.1 factor on the fitted exponent.
  bool ok = nodes::lebesgue_constant(nodes::gauss_hermite_nodes(0)) == 1.0;
  std::vector<double> ms, gh_l, sz_l;
  double worst_ratio = 0.0;
  for (int m = 6; m <= 40; m += 2) {
    double lg = nodes::lebesgue_constant(nodes::gauss_hermite_nodes(m));
    double ls = nodes::lebesgue_constant(nodes::szabados_nodes(m));
    worst_ratio = std::max(worst_ratio, ls / lg);
    if (m >= 8) {
      ms.push_back(double(m));
      gh_l.push_back(lg);
      sz_l.push_back(ls);
    }
  }
  double exp_gh = study::fit_loglog(ms, gh_l);
  double exp_sz = study::fit_loglog(ms, sz_l);
  ok = ok && exp_gh <= 0.5 && exp_sz <= 1.1 * exp_gh && worst_ratio <= 1.6;
  report(7, "lebesgue growth envelope (gauss exponent, modified-node ratio)",
         ok,
         "exponents " + std::to_string(exp_gh) + " / " + std::to_string(exp_sz) +
             ", worst ratio " + std::to_string(worst_ratio));
}

void criterion_8_spatial_rate() {
  const double pi = 3.14159265358979323846;
  std::vector<double> hs, errs;
  for (int k = 3; k <= 10; ++k) {
    auto u = fem::solve(k, [](double) { return 1.0; },
                        [=](double x) { return pi * pi * std::sin(pi * x); });
    errs.push_back(
        fem::error_V(u, [=](double x) { return pi * std::cos(pi * x); }));
    hs.push_back(1.0 / (1 << (k + 1)));
  }
  double slope = study::fit_loglog(hs, errs);
  report(8, "spatial V-error halves per level (slope 1 +- 0.05)",
         std::abs(slope - 1.0) <= 0.05, "slope " + std::to_string(slope));
}

void criterion_9_closed_form_study(int jobs) {
  auto t0 = Clock::now();
  study::StudyConfig c;
  c.kind = "quadrature";
  c.model = "constant-1term";
  c.reference = "closed-form";
  c.sigma1 = 0.5;
  c.budgets = {1024, 2048, 4096, 8192, 16384, 32768};
  c.cost = "dim";
  c.J = 1;
  c.jobs = jobs;
  auto r = study::run_study(c);
  double dt = seconds_since(t0);
  bool monotone = true;
  for (size_t i = r.rows.size() - 4; i + 1 < r.rows.size(); ++i)
    monotone = monotone && r.rows[i + 1].error < r.rows[i].error;
  double final_err = r.rows.back().error;
  report(9, "1-term lognormal quadrature converges to the closed form",
         final_err < 1e-4 && monotone && dt < 60.0,
         "final rel err " + study::fmt17(final_err) + ", " +
             std::to_string(dt) + " s");
}

void criterion_10_rate_study(int jobs) {
  auto t0 = Clock::now();
  study::StudyConfig q;
  q.kind = "quadrature";
  q.model = "power-sine";
  q.reference = "self";
  q.budgets = {16, 32, 64, 128, 256, 512, 1024};
  q.cost = "dim";
  q.J = 4;
  q.seed = 7;
  q.jobs = jobs;
  auto rq = study::run_study(q);

  study::StudyConfig it = q;
  it.kind = "interpolation";
  it.mc_samples = 64;
  auto ri = study::run_study(it);
  double dt = seconds_since(t0);

  double need_q = 0.5 * rq.rate_quad;
  double need_i = 0.5 * ri.rate_interp;
  report(10, "desk-scale rates meet half the predicted exponents",
         rq.slope >= need_q && ri.slope >= need_i && dt < 600.0,
         "quad slope " + std::to_string(rq.slope) + " >= " +
             std::to_string(need_q) + ", interp slope " +
             std::to_string(ri.slope) + " >= " + std::to_string(need_i) +
             ", " + std::to_string(dt) + " s");
}

void criterion_11_even_sparsity(nodes::NodeFamily& gh) {
  // With a symmetric measure only even-index coefficients enter the
  // quadrature error, so the even restriction keeps the same even coverage
  // at a matched threshold while visiting far fewer grid points.  Checked
  // here: (a) the even plan is exactly the even restriction of the full
  // plan, so the even-index tail omitted at threshold xi is identical;
  // (b) its grid is strictly smaller; (c) the even-plan quadrature is still
  // exact on every even basis function the plan covers (and annihilates the
  // odd ones), so the smaller grid gives up none of the guaranteed
  // exactness class.
  auto mdl = model::CoefficientModel::lognormal_power_sine(4, 0.1, 3.0);
  auto rho = model::rho_defaults(mdl);
  const auto& spec = rho.spec1;

  bool same_even = true, smaller = true;
  size_t g_all = 0, g_ev = 0;
  for (double xi : {15.0, 40.0}) {
    auto all = indexset::build_Lambda(xi, spec);
    auto ev = indexset::build_Lambda(xi, spec, indexset::Parity::Even);
    auto restricted = indexset::restrict_even(all);
    same_even = same_even && restricted.entries == ev.entries;
    g_all = indexset::grid_of(all.lambda0(), 1).size();
    g_ev = indexset::grid_of(ev.lambda0(), 2).size();
    smaller = smaller && g_ev < g_all;
  }

  auto ev = indexset::build_Lambda(40.0, spec, indexset::Parity::Even);
  double worst = 0.0;
  for (auto& [k, t] : ev.entries) {
    auto ht = [&](const std::vector<double>& y) {
      return sparse::hermite_tensor(t, y);
    };
    double q = sparse::sparse_quadrature(ev.lambda0(), gh, ht, 4, 2);
    worst = std::max(worst, std::abs(q - (t.zero() ? 1.0 : 0.0)));
    // the same basis function with one index bumped to odd integrates to 0
    if (!t.zero()) {
      auto odd = t.incremented(t.entries().front().first, -1);
      auto hodd = [&](const std::vector<double>& y) {
        return sparse::hermite_tensor(odd, y);
      };
      worst = std::max(
          worst,
          std::abs(sparse::sparse_quadrature(ev.lambda0(), gh, hodd, 4, 2)));
    }
  }
  report(11, "even plans: same even coverage, strictly smaller grids",
         same_even && smaller && worst < 1e-9,
         "grids " + std::to_string(g_ev) + " < " + std::to_string(g_all) +
             ", worst exactness defect " + study::fmt17(worst));
}

void criterion_12_reproducibility(int jobs) {
  study::StudyConfig c;
  c.kind = "quadrature";
  c.model = "constant-1term";
  c.reference = "closed-form";
  c.budgets = {16, 32, 64, 128, 256};
  c.cost = "dim";
  c.J = 1;
  c.jobs = jobs;
  auto a = study::run_study(c);
  auto b = study::run_study(c);
  bool ok = a.to_csv() == b.to_csv() && a.to_json() == b.to_json();

  study::StudyConfig ic;
  ic.kind = "interpolation";
  ic.model = "power-sine";
  ic.reference = "self";
  ic.budgets = {8, 16, 32};
  ic.cost = "card";
  ic.J = 2;
  ic.mc_samples = 16;
  ic.seed = 2024;
  auto ia = study::run_study(ic);
  auto ib = study::run_study(ic);
  ok = ok && ia.to_csv() == ib.to_csv() && ia.to_json() == ib.to_json();
  report(12, "identical config and seed give byte-identical outputs", ok,
         ok ? "csv+json stable across reruns" : "outputs differ");
}

}  // namespace

int main() {
  const int jobs = std::max(2u, std::thread::hardware_concurrency());
  nodes::NodeFamily gh(nodes::FamilyTag::GaussHermite);
  criterion_1_moment_exactness(gh);
  criterion_2_closed_form_weights(gh);
  criterion_3_annihilation(gh);
  criterion_4_telescoping(gh);
  criterion_5_index_sets();
  criterion_6_sigma();
  criterion_7_lebesgue();
  criterion_8_spatial_rate();
  criterion_9_closed_form_study(jobs);
  criterion_10_rate_study(jobs);
  criterion_11_even_sparsity(gh);
  criterion_12_reproducibility(jobs);
  std::printf("%s: %d of 12 criteria failed\n",
              failures == 0 ? "SUCCESS" : "FAILURE", failures);
  return failures;
}
