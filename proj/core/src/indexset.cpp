#include "sgcolloc/indexset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "sgcolloc/orthopoly.hpp"

namespace sgc::indexset {

MultiIndex::MultiIndex(std::vector<std::pair<int, int>> entries) {
  for (auto& [d, v] : entries) {
    if (d < 1 || v < 0) throw ConfigError("MultiIndex: bad entry");
    if (v > 0) entries_.push_back({d, v});
  }
  std::sort(entries_.begin(), entries_.end());
  for (size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i - 1].first == entries_[i].first)
      throw ConfigError("MultiIndex: duplicate dimension");
}

MultiIndex MultiIndex::unit(int dim, int value) {
  return MultiIndex({{dim, value}});
}

MultiIndex MultiIndex::from_dense(const std::vector<int>& dense) {
  std::vector<std::pair<int, int>> e;
  for (size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) e.push_back({int(i) + 1, dense[i]});
  return MultiIndex(std::move(e));
}

int MultiIndex::get(int dim) const {
  for (auto& [d, v] : entries_)
    if (d == dim) return v;
  return 0;
}

MultiIndex MultiIndex::with(int dim, int value) const {
  MultiIndex out = *this;
  auto it = std::find_if(out.entries_.begin(), out.entries_.end(),
                         [&](auto& e) { return e.first == dim; });
  if (it != out.entries_.end()) {
    if (value > 0)
      it->second = value;
    else
      out.entries_.erase(it);
  } else if (value > 0) {
    out.entries_.push_back({dim, value});
    std::sort(out.entries_.begin(), out.entries_.end());
  }
  return out;
}

MultiIndex MultiIndex::incremented(int dim, int step) const {
  return with(dim, get(dim) + step);
}

int MultiIndex::total_degree() const {
  int t = 0;
  for (auto& [d, v] : entries_) t += v;
  return t;
}

int MultiIndex::max_entry() const {
  int t = 0;
  for (auto& [d, v] : entries_) t = std::max(t, v);
  return t;
}

bool MultiIndex::is_even() const {
  for (auto& [d, v] : entries_)
    if (v % 2 != 0) return false;
  return true;
}

bool MultiIndex::in_F_nu(int nu) const {
  for (auto& [d, v] : entries_)
    if (v != 0 && v < nu) return false;
  return true;
}

bool MultiIndex::leq(const MultiIndex& other) const {
  for (auto& [d, v] : entries_)
    if (v > other.get(d)) return false;
  return true;
}

std::vector<int> MultiIndex::dense(int dims) const {
  std::vector<int> out(dims, 0);
  for (auto& [d, v] : entries_) {
    if (d > dims) throw UsageError("MultiIndex::dense: support exceeds dims");
    out[d - 1] = v;
  }
  return out;
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ",";
    os << entries_[i].first << ":" << entries_[i].second;
  }
  os << ")";
  return os.str();
}

size_t MultiIndex::hash() const {
  size_t h = 0x9e3779b97f4a7c15ull;
  for (auto& [d, v] : entries_) {
    h ^= size_t(d) * 0xff51afd7ed558ccdull + size_t(v) + (h << 6) + (h >> 2);
  }
  return h;
}

WeightSpec WeightSpec::lognormal_power(double c, double kappa, double q,
                                       int eta) {
  WeightSpec spec;
  spec.mode = WeightMode::Lognormal;
  spec.rho = [c, kappa](int j) { return c * std::pow(double(j), kappa); };
  spec.eta = eta;
  spec.q = q;
  return spec;
}

WeightSpec WeightSpec::affine_power(double c, double kappa, double q,
                                    double a) {
  WeightSpec spec;
  spec.mode = WeightMode::Affine;
  spec.rho = [c, kappa](int j) { return c * std::pow(double(j), kappa); };
  spec.eta = 1;
  spec.q = q;
  spec.jacobi_a = a;
  return spec;
}

namespace {

// sum_{k=0}^{min(eta,n)} C(n,k) rho^{2k}; the per-dimension factor of sigma^2
double sigma_factor(int n, double rho, int eta) {
  double rho2 = rho * rho;
  double acc = 1.0;   // k = 0
  double binom = 1.0;
  double pw = 1.0;
  int kmax = std::min(eta, n);
  for (int k = 1; k <= kmax; ++k) {
    binom *= double(n - k + 1) / double(k);
    pw *= rho2;
    acc += binom * pw;
  }
  return acc;
}

}  // namespace

double sigma(const MultiIndex& s, const WeightSpec& spec) {
  if (spec.mode != WeightMode::Lognormal)
    throw UsageError("sigma: spec must be in lognormal mode");
  double sq = 1.0;
  for (auto& [d, v] : s.entries()) {
    sq *= sigma_factor(v, spec.rho(d), spec.eta);
    if (!std::isfinite(sq) || sq > 1e300)
      throw NumericError("sigma: overflow at " + s.str());
  }
  return std::sqrt(sq);
}

double beta_affine(const MultiIndex& s, const WeightSpec& spec) {
  if (spec.mode != WeightMode::Affine)
    throw UsageError("beta_affine: spec must be in affine mode");
  if (spec.jacobi_a <= -1.0) throw ConfigError("beta_affine: a must be > -1");
  double b = 1.0;
  for (auto& [d, v] : s.entries()) {
    b *= std::pow(spec.rho(d), double(v)) *
         orthopoly::jacobi_norm_const(v, spec.jacobi_a, spec.jacobi_a);
    if (!std::isfinite(b) || b > 1e300)
      throw NumericError("beta_affine: overflow at " + s.str());
  }
  return b;
}

double weight(const MultiIndex& s, const WeightSpec& spec) {
  return spec.mode == WeightMode::Lognormal ? sigma(s, spec)
                                            : beta_affine(s, spec);
}

double p_weight(const MultiIndex& s, double theta, double lambda) {
  if (theta < 0 || lambda < 0)
    throw ConfigError("p_weight: theta, lambda must be >= 0");
  double p = 1.0;
  for (auto& [d, v] : s.entries()) p *= std::pow(1.0 + lambda * v, theta);
  return p;
}

SummabilityReport summability_check(const WeightSpec& spec, int nu,
                                    double theta, double lambda, double q,
                                    int j_tail) {
  if (nu < 1 || q <= 0 || j_tail < 2)
    throw ConfigError("summability_check: bad arguments");
  SummabilityReport rep;
  rep.hypothesis_met = spec.mode == WeightMode::Affine ||
                       double(spec.eta) > 2.0 * nu * (theta + 1.0) / q;
  auto term = [&](int j, int n) -> double {
    double p = std::pow(1.0 + lambda * n, theta);
    if (spec.mode == WeightMode::Lognormal)
      return p * std::pow(sigma_factor(n, spec.rho(j), spec.eta),
                          -q / (2.0 * nu));
    return p * std::pow(spec.rho(j), -double(n) * q / nu);
  };
  double product = 1.0;
  double last_excess = 0.0, prev_excess = 0.0;
  for (int j = 1; j <= j_tail; ++j) {
    double bj = 1.0;  // n = 0
    for (int n = nu; n < nu + 200000; ++n) {
      double t = term(j, n);
      bj += t;
      // relative cutoff: with a polynomial tail the absolute threshold is
      // never reached within the iteration cap
      if (t < 1e-14 * bj) break;
      if (!std::isfinite(bj) || (n == nu + 200000 - 1 && t >= 1e-14 * bj)) {
        rep.diverged = true;
        rep.value = std::numeric_limits<double>::infinity();
        return rep;
      }
    }
    prev_excess = last_excess;
    last_excess = bj - 1.0;
    product *= bj;
  }
  rep.value = product;
  // geometric tail estimate from the last two per-dimension excesses
  if (prev_excess > 0 && last_excess > 0 && last_excess < prev_excess) {
    double t = last_excess / prev_excess;
    rep.tail_bound = std::exp(last_excess * t / (1.0 - t));
  } else {
    rep.tail_bound = std::numeric_limits<double>::infinity();
  }
  if (!rep.hypothesis_met && spec.mode == WeightMode::Lognormal)
    rep.diverged = true;  // divergence warning, not an error
  return rep;
}

int IndexPlan::max_level() const {
  int k = 0;
  for (auto& [lev, s] : entries) k = std::max(k, lev);
  return k;
}

long IndexPlan::dyadic_dim() const {
  long t = 0;
  for (auto& [lev, s] : entries) t += 1L << lev;
  return t;
}

std::vector<MultiIndex> IndexPlan::slice(int k) const {
  std::vector<MultiIndex> out;
  for (auto& [lev, s] : entries)
    if (lev == k) out.push_back(s);
  return out;
}

nlohmann::json IndexPlan::to_json() const {
  nlohmann::json j;
  j["regime"] = regime == Regime::Expansion ? "expansion" : "interpolation";
  j["parity"] = parity == Parity::All ? "all" : "even";
  j["xi"] = xi;
  j["fully_discrete"] = fully_discrete;
  j["entries"] = nlohmann::json::array();
  for (auto& [k, s] : entries) {
    nlohmann::json e;
    e["k"] = k;
    nlohmann::json sj = nlohmann::json::object();
    for (auto& [d, v] : s.entries()) sj[std::to_string(d)] = v;
    e["s"] = sj;
    j["entries"].push_back(e);
  }
  return j;
}

IndexPlan IndexPlan::from_json(const nlohmann::json& j) {
  IndexPlan plan;
  plan.regime = j.at("regime") == "expansion" ? Regime::Expansion
                                              : Regime::Interpolation;
  plan.parity = j.at("parity") == "all" ? Parity::All : Parity::Even;
  plan.xi = j.at("xi").get<double>();
  plan.fully_discrete = j.value("fully_discrete", false);
  for (auto& e : j.at("entries")) {
    std::vector<std::pair<int, int>> entries;
    for (auto& [key, val] : e.at("s").items())
      entries.push_back({std::stoi(key), val.get<int>()});
    plan.entries.push_back({e.at("k").get<int>(), MultiIndex(entries)});
  }
  std::sort(plan.entries.begin(), plan.entries.end());
  return plan;
}

namespace {

// Enumerates a downward-closed set defined by a monotone membership
// predicate, visiting each index once: from s, increments are allowed only
// at dimensions >= the largest support dimension, and the scan over fresh
// dimensions stops at the first rejection (monotone rho).
void walk(const std::function<bool(const MultiIndex&)>& member,
          const std::function<void(const MultiIndex&)>& visit, int step,
          int j_max, size_t cap) {
  size_t count = 0;
  std::function<void(const MultiIndex&)> rec = [&](const MultiIndex& s) {
    if (++count > cap) throw BudgetError("index walk: entry cap exceeded");
    visit(s);
    int d0 = s.max_dim();
    if (!s.zero()) {
      MultiIndex t = s.incremented(d0, step);
      if (member(t)) rec(t);
    }
    for (int d = s.zero() ? 1 : d0 + 1;; ++d) {
      if (d > j_max)
        throw BudgetError("index walk: dimension guard j_max reached");
      MultiIndex t = s.incremented(d, step);
      if (!member(t)) break;
      rec(t);
    }
  };
  MultiIndex origin;
  if (member(origin)) rec(origin);
}

struct GConditions {
  // s-membership (the k = 0 slice) and max admissible level for s
  std::function<bool(const MultiIndex&)> in_lambda0;
  std::function<int(const MultiIndex&)> kmax;  // -1 if none
};

GConditions g_conditions(double xi, double alpha, const WeightSpec& spec1,
                         const WeightSpec& spec2, Regime regime) {
  double q1 = spec1.q, q2 = spec2.q;
  if (q1 > q2) throw ConfigError("build_G: requires q1 <= q2");
  GConditions c;
  const double split =
      regime == Regime::Expansion ? 1.0 / q2 : 1.0 / q2 - 0.5;
  auto levels_while = [](const std::function<bool(int)>& cond) {
    if (!cond(0)) return -1;
    int k = 0;
    while (cond(k + 1)) ++k;
    return k;
  };
  if (alpha <= split) {
    c.in_lambda0 = [=](const MultiIndex& s) {
      double w2 = weight(s, spec2);
      return std::pow(w2, q2) <= xi;
    };
    c.kmax = [=](const MultiIndex& s) {
      double w2q = std::pow(weight(s, spec2), q2);
      return levels_while([=](int k) { return std::exp2(double(k)) * w2q <= xi; });
    };
  } else if (regime == Regime::Expansion) {
    c.in_lambda0 = [=](const MultiIndex& s) {
      return std::pow(weight(s, spec1), q1) <= xi &&
             std::pow(weight(s, spec2), q1) <= xi;
    };
    c.kmax = [=](const MultiIndex& s) {
      if (std::pow(weight(s, spec1), q1) > xi) return -1;
      double w2q = std::pow(weight(s, spec2), q1);
      return levels_while(
          [=](int k) { return std::exp2(alpha * q1 * k) * w2q <= xi; });
    };
  } else {
    const double vartheta = 1.0 / q1 + (1.0 / q1 - 1.0 / q2) / (2.0 * alpha);
    const double xi_theta = std::pow(xi, vartheta);
    c.in_lambda0 = [=](const MultiIndex& s) {
      return std::pow(weight(s, spec1), q1) <= xi &&
             weight(s, spec2) <= xi_theta;
    };
    c.kmax = [=](const MultiIndex& s) {
      if (std::pow(weight(s, spec1), q1) > xi) return -1;
      double w2 = weight(s, spec2);
      return levels_while(
          [=](int k) { return std::exp2((alpha + 0.5) * k) * w2 <= xi_theta; });
    };
  }
  return c;
}

}  // namespace

IndexPlan build_G(double xi, double alpha, const WeightSpec& spec1,
                  const WeightSpec& spec2, Regime regime, Parity parity,
                  size_t cap) {
  if (xi <= 0) throw ConfigError("build_G: xi must be positive");
  auto cond = g_conditions(xi, alpha, spec1, spec2, regime);
  IndexPlan plan;
  plan.regime = regime;
  plan.parity = parity;
  plan.xi = xi;
  plan.fully_discrete = true;
  size_t total = 0;
  walk(
      cond.in_lambda0,
      [&](const MultiIndex& s) {
        int kmax = cond.kmax(s);
        for (int k = 0; k <= kmax; ++k) {
          plan.entries.push_back({k, s});
          if (++total > cap) throw BudgetError("build_G: plan cap exceeded");
        }
      },
      parity == Parity::Even ? 2 : 1, spec1.j_max, cap);
  std::sort(plan.entries.begin(), plan.entries.end());
  return plan;
}

IndexPlan build_Lambda(double xi, const WeightSpec& spec, Parity parity,
                       size_t cap) {
  if (xi <= 0) throw ConfigError("build_Lambda: xi must be positive");
  IndexPlan plan;
  plan.parity = parity;
  plan.xi = xi;
  plan.fully_discrete = false;
  walk(
      [&](const MultiIndex& s) {
        return std::pow(weight(s, spec), spec.q) <= xi;
      },
      [&](const MultiIndex& s) { plan.entries.push_back({0, s}); },
      parity == Parity::Even ? 2 : 1, spec.j_max, cap);
  std::sort(plan.entries.begin(), plan.entries.end());
  return plan;
}

IndexPlan restrict_even(const IndexPlan& plan) {
  IndexPlan out = plan;
  out.parity = Parity::Even;
  out.entries.clear();
  for (auto& [k, s] : plan.entries)
    if (s.is_even()) out.entries.push_back({k, s});
  return out;
}

bool downward_closed(const std::vector<MultiIndex>& slice, int step) {
  std::unordered_set<MultiIndex, MultiIndexHash> set(slice.begin(),
                                                     slice.end());
  for (auto& s : slice) {
    for (auto& [d, v] : s.entries()) {
      int down = v - step;
      if (down < 0) down = 0;
      if (!set.count(s.with(d, down))) return false;
    }
  }
  return true;
}

size_t SymbolicPoint::hash() const {
  size_t h = 0xc6a4a7935bd1e995ull;
  for (auto& c : coords)
    for (int x : c) h ^= size_t(x + 7) * 0x9e3779b97f4a7c15ull + (h << 7) + (h >> 3);
  return h;
}

std::string SymbolicPoint::str() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << " ";
    os << coords[i][0] << ":(" << coords[i][1] << "," << coords[i][2] << ")";
  }
  os << "}";
  return os.str();
}

namespace {

// (level, index) options of Y_m u Y_{m-step} for one dimension; the origin
// (midpoint of an even level) is encoded as (-1, -1)
std::vector<std::array<int, 2>> dim_options(int s, int step) {
  std::vector<std::array<int, 2>> out;
  bool origin = false;
  for (int level : {s, s - step}) {
    if (level < 0) continue;
    for (int idx = 0; idx <= level; ++idx) {
      if (level % 2 == 0 && idx == level / 2) {
        origin = true;
        continue;
      }
      out.push_back({level, idx});
    }
  }
  if (origin) out.push_back({-1, -1});
  return out;
}

}  // namespace

std::vector<SymbolicPoint> grid_of(const std::vector<MultiIndex>& lambda,
                                   int step) {
  if (step != 1 && step != 2) throw UsageError("grid_of: step must be 1 or 2");
  std::unordered_set<SymbolicPoint, SymbolicPointHash> grid;
  for (auto& s : lambda) {
    std::vector<int> dims;
    std::vector<std::vector<std::array<int, 2>>> options;
    for (auto& [d, v] : s.entries()) {
      dims.push_back(d);
      options.push_back(dim_options(v, step));
    }
    SymbolicPoint p;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == dims.size()) {
        SymbolicPoint q = p;
        std::sort(q.coords.begin(), q.coords.end());
        grid.insert(std::move(q));
        return;
      }
      for (auto& opt : options[i]) {
        if (opt[0] < 0) {
          rec(i + 1);  // origin coordinate, canonicalized away
        } else {
          p.coords.push_back({dims[i], opt[0], opt[1]});
          rec(i + 1);
          p.coords.pop_back();
        }
      }
    };
    rec(0);
  }
  std::vector<SymbolicPoint> out(grid.begin(), grid.end());
  std::sort(out.begin(), out.end());
  return out;
}

long plan_cost(const IndexPlan& plan, CostFunctional cost) {
  switch (cost) {
    case CostFunctional::Cardinality:
      return long(plan.size());
    case CostFunctional::DyadicDim:
      return plan.dyadic_dim();
    case CostFunctional::GridPoints:
      return long(grid_of(plan.lambda0(),
                          plan.parity == Parity::Even ? 2 : 1)
                      .size());
  }
  return 0;
}

std::pair<double, IndexPlan> calibrate_xi(
    long n, CostFunctional cost,
    const std::function<IndexPlan(double)>& builder) {
  if (n < 1) throw ConfigError("calibrate_xi: budget must be >= 1");
  auto cost_of = [&](double xi, IndexPlan& plan) -> long {
    try {
      plan = builder(xi);
      return plan_cost(plan, cost);
    } catch (const BudgetError&) {
      return std::numeric_limits<long>::max();
    }
  };
  double lo = 1.0;
  IndexPlan lo_plan;
  for (int i = 0; i < 80 && cost_of(lo, lo_plan) > n; ++i) lo *= 0.5;
  if (cost_of(lo, lo_plan) > n) return {0.0, IndexPlan{}};
  double hi = lo;
  IndexPlan scratch;
  for (int i = 0; i < 200; ++i) {
    double trial = hi * 2.0;
    if (cost_of(trial, scratch) > n) {
      hi = trial;
      break;
    }
    hi = trial;
    lo = trial;
    lo_plan = scratch;
    if (i == 199) return {lo, lo_plan};
  }
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    if (cost_of(mid, scratch) <= n) {
      lo = mid;
      lo_plan = scratch;
    } else {
      hi = mid;
    }
  }
  lo_plan.xi = lo;
  return {lo, lo_plan};
}

}  // namespace sgc::indexset
