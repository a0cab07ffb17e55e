#include "sgcolloc/oracle.hpp"

#include <cmath>

#include "sgcolloc/orthopoly.hpp"

namespace sgc::oracle {

void tensor_rule_sweep(
    int J, int order, const rules1d::Measure& measure,
    const std::function<void(const std::vector<double>&, double)>& visit) {
  if (J < 0 || order < 0) throw ConfigError("tensor_rule_sweep: bad arguments");
  const int npts = order + 1;
  double volume = std::pow(double(npts), double(J));
  if (volume > 1e7) throw BudgetError("tensor_rule_sweep: rule too large");
  orthopoly::GaussRule rule =
      measure.kind == rules1d::Measure::Kind::Gaussian
          ? orthopoly::gauss_hermite_rule(npts)
          : orthopoly::gauss_jacobi_rule(npts, measure.a, measure.a);
  std::vector<double> y(J, 0.0);
  std::function<void(int, double)> rec = [&](int dim, double w) {
    if (dim == J) {
      visit(y, w);
      return;
    }
    for (int i = 0; i < npts; ++i) {
      y[dim] = rule.points[i];
      rec(dim + 1, w * rule.weights[i]);
    }
  };
  rec(0, 1.0);
}

double tensor_quadrature(int J, int order, const rules1d::Measure& measure,
                         const ParametricFn& f) {
  double acc = 0.0;
  tensor_rule_sweep(J, order, measure,
                    [&](const std::vector<double>& y, double w) {
                      acc += w * f(y);
                    });
  return acc;
}

std::map<indexset::MultiIndex, double> hermite_coefficients(
    const ParametricFn& f, int J, int max_deg, int order) {
  std::map<indexset::MultiIndex, double> coeffs;
  std::vector<std::vector<int>> box;
  std::vector<int> s(J, 0);
  std::function<void(int)> enumerate = [&](int dim) {
    if (dim == J) {
      box.push_back(s);
      return;
    }
    for (int v = 0; v <= max_deg; ++v) {
      s[dim] = v;
      enumerate(dim + 1);
    }
    s[dim] = 0;
  };
  enumerate(0);
  for (auto& sd : box) coeffs[indexset::MultiIndex::from_dense(sd)] = 0.0;
  tensor_rule_sweep(
      J, order, rules1d::Measure::gaussian(),
      [&](const std::vector<double>& y, double w) {
        double fy = f(y);
        std::vector<std::vector<double>> h(J);
        for (int j = 0; j < J; ++j) h[j] = orthopoly::hermite_all(max_deg, y[j]);
        for (auto& sd : box) {
          double hs = 1.0;
          for (int j = 0; j < J; ++j) hs *= h[j][sd[j]];
          coeffs[indexset::MultiIndex::from_dense(sd)] += w * fy * hs;
        }
      });
  return coeffs;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = splitmix64(splitmix64(seed) ^ counter);
  return (double(z >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double counter_normal(std::uint64_t seed, std::uint64_t counter) {
  double u1 = counter_uniform(seed, 2 * counter);
  double u2 = counter_uniform(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

McResult mc_bochner_error(
    const std::function<double(const std::vector<double>&)>& sq_norm_diff,
    int J, int p, int samples, std::uint64_t seed) {
  if (p != 1 && p != 2) throw ConfigError("mc_bochner_error: p must be 1 or 2");
  if (samples < 2) throw ConfigError("mc_bochner_error: need >= 2 samples");
  double sum = 0.0, sumsq = 0.0;
  std::vector<double> y(J);
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < J; ++j)
      y[j] = counter_normal(seed, std::uint64_t(i) * J + j);
    double sq = sq_norm_diff(y);
    double v = p == 2 ? sq : std::sqrt(sq);
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / samples;
  double var = std::max(0.0, sumsq / samples - mean * mean);
  double se = std::sqrt(var / samples);
  McResult r;
  if (p == 2) {
    r.estimate = std::sqrt(std::max(0.0, mean));
    r.std_error = r.estimate > 0 ? 0.5 * se / r.estimate : std::sqrt(se);
  } else {
    r.estimate = mean;
    r.std_error = se;
  }
  return r;
}

std::vector<indexset::MultiIndex> box_scan_indexset(
    const std::vector<int>& bounds,
    const std::function<bool(const indexset::MultiIndex&)>& predicate) {
  double volume = 1.0;
  for (int b : bounds) volume *= (b + 1);
  if (volume > 1e7) throw BudgetError("box_scan_indexset: box too large");
  std::vector<indexset::MultiIndex> out;
  std::vector<int> s(bounds.size(), 0);
  std::function<void(size_t)> rec = [&](size_t dim) {
    if (dim == bounds.size()) {
      auto m = indexset::MultiIndex::from_dense(s);
      if (predicate(m)) out.push_back(m);
      return;
    }
    for (int v = 0; v <= bounds[dim]; ++v) {
      s[dim] = v;
      rec(dim + 1);
    }
    s[dim] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, indexset::MultiIndex>> box_scan_G(
    int k_max, const std::vector<int>& bounds,
    const std::function<bool(int, const indexset::MultiIndex&)>& predicate) {
  double volume = 1.0;
  for (int b : bounds) volume *= (b + 1);
  if (volume * (k_max + 1) > 1e7) throw BudgetError("box_scan_G: box too large");
  std::vector<std::pair<int, indexset::MultiIndex>> out;
  for (int k = 0; k <= k_max; ++k) {
    auto slice = box_scan_indexset(
        bounds, [&](const indexset::MultiIndex& s) { return predicate(k, s); });
    for (auto& s : slice) out.push_back({k, s});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sgc::oracle
