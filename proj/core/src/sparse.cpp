#include "sgcolloc/sparse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <nlohmann/json.hpp>

#include "sgcolloc/orthopoly.hpp"

namespace sgc::sparse {

namespace {

rules1d::Measure measure_of(const nodes::NodeFamily& family) {
  return family.gaussian_measure() ? rules1d::Measure::gaussian()
                                   : rules1d::Measure::jacobi(family.jacobi_a());
}

// symbolic coordinate of node idx at the given level; origin maps to nothing
bool is_origin(int level, int idx) { return level % 2 == 0 && idx == level / 2; }

}  // namespace

double basis_tensor(const indexset::MultiIndex& s,
                    const nodes::NodeFamily& family,
                    const std::vector<double>& y) {
  double acc = 1.0;
  for (auto& [d, v] : s.entries()) {
    double yd = d <= int(y.size()) ? y[d - 1] : 0.0;
    acc *= family.gaussian_measure()
               ? orthopoly::hermite_value(v, yd)
               : orthopoly::jacobi_value(v, family.jacobi_a(),
                                         family.jacobi_a(), yd);
  }
  return acc;
}

double hermite_tensor(const indexset::MultiIndex& s,
                      const std::vector<double>& y) {
  double acc = 1.0;
  for (auto& [d, v] : s.entries())
    acc *= orthopoly::hermite_value(v, d <= int(y.size()) ? y[d - 1] : 0.0);
  return acc;
}

std::vector<double> point_coords(const indexset::SymbolicPoint& p,
                                 const nodes::NodeFamily& family, int dims) {
  std::vector<double> y(dims, 0.0);
  for (auto& c : p.coords) {
    if (c[0] > dims) throw UsageError("point_coords: dims too small");
    y[c[0] - 1] = family.sequence(c[1]).points[c[2]];
  }
  return y;
}

int slice_max_dim(const std::vector<indexset::MultiIndex>& slice) {
  int d = 0;
  for (auto& s : slice) d = std::max(d, s.max_dim());
  return d;
}

std::vector<std::pair<indexset::MultiIndex, int>> combination_coefficients(
    const std::vector<indexset::MultiIndex>& slice, int step) {
  if (step != 1 && step != 2)
    throw UsageError("combination_coefficients: step must be 1 or 2");
  std::map<indexset::MultiIndex, int> acc;
  for (auto& s : slice) {
    const auto& sup = s.entries();
    const size_t r = sup.size();
    for (size_t mask = 0; mask < (size_t(1) << r); ++mask) {
      indexset::MultiIndex t = s;
      int sign = 1;
      bool vanished = false;  // a flipped factor fell below level 0
      for (size_t i = 0; i < r; ++i)
        if (mask & (size_t(1) << i)) {
          if (sup[i].second < step) {
            vanished = true;
            break;
          }
          t = t.incremented(sup[i].first, -step);
          sign = -sign;
        }
      if (vanished) continue;
      acc[t] += sign;
    }
  }
  std::vector<std::pair<indexset::MultiIndex, int>> out;
  for (auto& [t, c] : acc)
    if (c != 0) out.push_back({t, c});
  return out;
}

void require_closed(const std::vector<indexset::MultiIndex>& slice,
                    int step) {
  if (!indexset::downward_closed(slice, step))
    throw UsageError("sparse: slice is not downward closed");
}

namespace {

// Visits every sample of (tensor_j I_{s_j}) at y with its cardinal weight;
// samples carry symbolic identity.
void tensor_interp_sweep(
    const indexset::MultiIndex& s, const nodes::NodeFamily& family,
    const std::vector<double>& y,
    const std::function<void(const indexset::SymbolicPoint&, double)>& visit) {
  const auto& sup = s.entries();
  std::vector<std::vector<double>> basis(sup.size());
  for (size_t i = 0; i < sup.size(); ++i) {
    auto& [d, v] = sup[i];
    double yd = d <= int(y.size()) ? y[d - 1] : 0.0;
    basis[i] = rules1d::basis_all(family.sequence(v), yd);
  }
  indexset::SymbolicPoint p;
  std::function<void(size_t, double)> rec = [&](size_t i, double w) {
    if (i == sup.size()) {
      indexset::SymbolicPoint q = p;
      std::sort(q.coords.begin(), q.coords.end());
      visit(q, w);
      return;
    }
    auto& [d, v] = sup[i];
    for (int idx = 0; idx <= v; ++idx) {
      if (is_origin(v, idx)) {
        rec(i + 1, w * basis[i][idx]);
      } else {
        p.coords.push_back({d, v, idx});
        rec(i + 1, w * basis[i][idx]);
        p.coords.pop_back();
      }
    }
  };
  rec(0, 1.0);
}

void tensor_quad_sweep(
    const indexset::MultiIndex& s, const nodes::NodeFamily& family,
    const std::function<void(const indexset::SymbolicPoint&, double)>& visit) {
  const auto& sup = s.entries();
  const auto measure = measure_of(family);
  std::vector<std::vector<double>> w1d(sup.size());
  for (size_t i = 0; i < sup.size(); ++i)
    w1d[i] = rules1d::make_rule(family.sequence(sup[i].second), measure).weights;
  indexset::SymbolicPoint p;
  std::function<void(size_t, double)> rec = [&](size_t i, double w) {
    if (i == sup.size()) {
      indexset::SymbolicPoint q = p;
      std::sort(q.coords.begin(), q.coords.end());
      visit(q, w);
      return;
    }
    auto& [d, v] = sup[i];
    for (int idx = 0; idx <= v; ++idx) {
      if (is_origin(v, idx)) {
        rec(i + 1, w * w1d[i][idx]);
      } else {
        p.coords.push_back({d, v, idx});
        rec(i + 1, w * w1d[i][idx]);
        p.coords.pop_back();
      }
    }
  };
  rec(0, 1.0);
}

}  // namespace

double tensor_interpolate(const indexset::MultiIndex& s,
                          const nodes::NodeFamily& family, const ParamFn& f,
                          const std::vector<double>& y) {
  const int dims = std::max(s.max_dim(), int(y.size()));
  double acc = 0.0;
  tensor_interp_sweep(s, family, y,
                      [&](const indexset::SymbolicPoint& p, double w) {
                        acc += w * f(point_coords(p, family, dims));
                      });
  return acc;
}

double tensor_delta_interp(const indexset::MultiIndex& s,
                           const nodes::NodeFamily& family, const ParamFn& f,
                           const std::vector<double>& y, int step) {
  const auto& sup = s.entries();
  const size_t r = sup.size();
  double acc = 0.0;
  for (size_t mask = 0; mask < (size_t(1) << r); ++mask) {
    indexset::MultiIndex t = s;
    int sign = 1;
    bool vanished = false;
    for (size_t i = 0; i < r; ++i)
      if (mask & (size_t(1) << i)) {
        if (sup[i].second < step) {
          vanished = true;
          break;
        }
        t = t.incremented(sup[i].first, -step);
        sign = -sign;
      }
    if (vanished) continue;
    acc += sign * tensor_interpolate(t, family, f, y);
  }
  return acc;
}

std::vector<std::pair<indexset::SymbolicPoint, double>> interpolation_weights(
    const std::vector<indexset::MultiIndex>& slice,
    const nodes::NodeFamily& family, const std::vector<double>& y,
    int step) {
  require_closed(slice, step);
  std::map<indexset::SymbolicPoint, double> acc;
  for (auto& [t, c] : combination_coefficients(slice, step))
    tensor_interp_sweep(t, family, y,
                        [&, cc = c](const indexset::SymbolicPoint& p,
                                    double w) { acc[p] += cc * w; });
  return {acc.begin(), acc.end()};
}

double sparse_interpolate(const std::vector<indexset::MultiIndex>& slice,
                          const nodes::NodeFamily& family, const ParamFn& f,
                          const std::vector<double>& y, int step) {
  const int dims = std::max(slice_max_dim(slice), int(y.size()));
  double acc = 0.0;
  for (auto& [p, w] : interpolation_weights(slice, family, y, step))
    acc += w * f(point_coords(p, family, dims));
  return acc;
}

double tensor_delta_quad(const indexset::MultiIndex& s,
                         const nodes::NodeFamily& family, const ParamFn& f,
                         int min_dims, int step) {
  const auto& sup = s.entries();
  const size_t r = sup.size();
  const int dims = std::max(s.max_dim(), min_dims);
  double acc = 0.0;
  for (size_t mask = 0; mask < (size_t(1) << r); ++mask) {
    indexset::MultiIndex t = s;
    int sign = 1;
    bool vanished = false;
    for (size_t i = 0; i < r; ++i)
      if (mask & (size_t(1) << i)) {
        if (sup[i].second < step) {
          vanished = true;
          break;
        }
        t = t.incremented(sup[i].first, -step);
        sign = -sign;
      }
    if (vanished) continue;
    tensor_quad_sweep(t, family,
                      [&](const indexset::SymbolicPoint& p, double w) {
                        acc += sign * w * f(point_coords(p, family, dims));
                      });
  }
  return acc;
}

std::vector<std::pair<indexset::SymbolicPoint, double>> combined_quad_weights(
    const std::vector<indexset::MultiIndex>& slice,
    const nodes::NodeFamily& family, int step) {
  require_closed(slice, step);
  std::map<indexset::SymbolicPoint, double> acc;
  for (auto& [t, c] : combination_coefficients(slice, step))
    tensor_quad_sweep(t, family,
                      [&, cc = c](const indexset::SymbolicPoint& p, double w) {
                        acc[p] += cc * w;
                      });
  return {acc.begin(), acc.end()};
}

double sparse_quadrature(const std::vector<indexset::MultiIndex>& slice,
                         const nodes::NodeFamily& family, const ParamFn& f,
                         int min_dims, int step) {
  const int dims = std::max(slice_max_dim(slice), min_dims);
  double acc = 0.0;
  for (auto& [p, w] : combined_quad_weights(slice, family, step))
    acc += w * f(point_coords(p, family, dims));
  return acc;
}

FullyDiscreteEvaluator::FullyDiscreteEvaluator(model::CoefficientModel model,
                                               const nodes::NodeFamily& family,
                                               indexset::IndexPlan plan)
    : model_(std::move(model)), family_(family), plan_(std::move(plan)) {
  dims_ = model_.J;
  for (auto& [k, s] : plan_.entries) dims_ = std::max(dims_, s.max_dim());
  step_ = plan_.parity == indexset::Parity::Even ? 2 : 1;
}

const fem::Field& FullyDiscreteEvaluator::solve_at(
    int level, const indexset::SymbolicPoint& p) {
  std::pair<int, indexset::SymbolicPoint> key{level, p};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  fem::Field u;
  try {
    u = model::solve_parametric(model_, level,
                                point_coords(p, family_, dims_));
  } catch (const Error& e) {
    throw NumericError("solve at level " + std::to_string(level) + " point " +
                       p.str() + ": " + e.what());
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = cache_.emplace(std::move(key), std::move(u));
  if (inserted) ++solver_calls_;
  return it->second;
}

fem::Field FullyDiscreteEvaluator::delta_at(int k,
                                            const indexset::SymbolicPoint& p) {
  fem::Field fine = solve_at(k, p);
  if (k == 0) return fine;
  return fine - fem::prolong(solve_at(k - 1, p), k);
}

fem::Field FullyDiscreteEvaluator::interpolate(const std::vector<double>& y) {
  const int K = finest_level();
  fem::Field out = fem::Field::zeros(K);
  for (int k = 0; k <= K; ++k) {
    auto slice = plan_.slice(k);
    if (slice.empty()) continue;
    fem::Field level_acc = fem::Field::zeros(k);
    for (auto& [p, w] : interpolation_weights(slice, family_, y, step_))
      level_acc += delta_at(k, p) * w;
    out += fem::prolong(level_acc, K);
  }
  return out;
}

fem::Field FullyDiscreteEvaluator::quadrature() {
  const int K = finest_level();
  fem::Field out = fem::Field::zeros(K);
  for (int k = 0; k <= K; ++k) {
    auto slice = plan_.slice(k);
    if (slice.empty()) continue;
    fem::Field level_acc = fem::Field::zeros(k);
    for (auto& [p, w] : combined_quad_weights(slice, family_, step_))
      level_acc += delta_at(k, p) * w;
    out += fem::prolong(level_acc, K);
  }
  return out;
}

double FullyDiscreteEvaluator::functional_quadrature(
    const std::function<double(const fem::Field&)>& phi) {
  return phi(quadrature());
}

void FullyDiscreteEvaluator::prefetch(int jobs) {
  if (jobs < 2) return;
  // only the support of the combined weights is ever solved for: after the
  // combination coefficients cancel, that is typically a small subset of the
  // full grid Gamma(Lambda_k)
  std::vector<std::pair<int, indexset::SymbolicPoint>> work;
  for (int k = 0; k <= finest_level(); ++k) {
    auto slice = plan_.slice(k);
    if (slice.empty()) continue;
    for (auto& [p, w] : combined_quad_weights(slice, family_, step_)) {
      work.push_back({k, p});
      if (k > 0) work.push_back({k - 1, p});
    }
  }
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (size_t i = next++; i < work.size(); i = next++)
        solve_at(work[i].first, work[i].second);
    });
  for (auto& th : pool) th.join();
}

nlohmann::json FullyDiscreteEvaluator::stats() const {
  nlohmann::json j;
  j["levels"] = nlohmann::json::array();
  for (int k = 0; k <= plan_.max_level(); ++k) {
    auto slice = plan_.slice(k);
    if (slice.empty()) continue;
    nlohmann::json lv;
    lv["k"] = k;
    lv["slice_size"] = slice.size();
    lv["grid_points"] = indexset::grid_of(slice, step_).size();
    j["levels"].push_back(lv);
  }
  j["solver_calls"] = solver_calls_;
  j["cached_fields"] = cache_.size();
  return j;
}

std::function<double(const fem::Field&)> mean_functional() {
  return [](const fem::Field& u) { return fem::mean_value(u); };
}

std::function<double(const fem::Field&)> point_functional(double x) {
  return [x](const fem::Field& u) { return u.at(x); };
}

std::function<double(const fem::Field&)> h1_functional(fem::Field with) {
  return [w = std::move(with)](const fem::Field& u) {
    if (u.level >= w.level) return fem::inner_V(u, fem::prolong(w, u.level));
    return fem::inner_V(fem::prolong(u, w.level), w);
  };
}

namespace {

fem::Field nodal_interp(int level, const fem::ScalarFn& v) {
  fem::Field f = fem::Field::zeros(level);
  fem::Mesh mesh{level};
  for (int i = 0; i < mesh.interior(); ++i) f.values[i] = v(mesh.node(i));
  return f;
}

}  // namespace

fem::Field GpcApproximant::evaluate(const std::vector<double>& y) const {
  fem::Field out = fem::Field::zeros(level);
  for (auto& [s, field] : terms) out += field * hermite_tensor(s, y);
  return out;
}

GpcApproximant truncated_expansion(
    const indexset::IndexPlan& plan,
    const std::function<fem::ScalarFn(const indexset::MultiIndex&)>& coeff) {
  GpcApproximant out;
  out.level = plan.max_level();
  std::map<indexset::MultiIndex, fem::Field> acc;
  for (auto& [k, s] : plan.entries) {
    fem::ScalarFn v = coeff(s);
    fem::Field d = nodal_interp(k, v);
    if (k > 0) d -= fem::prolong(nodal_interp(k - 1, v), k);
    fem::Field dk = fem::prolong(d, out.level);
    auto it = acc.find(s);
    if (it == acc.end())
      acc.emplace(s, std::move(dk));
    else
      it->second += dk;
  }
  for (auto& [s, f] : acc) out.terms.push_back({s, std::move(f)});
  return out;
}

}  // namespace sgc::sparse
