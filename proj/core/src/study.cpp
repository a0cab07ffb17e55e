#include "sgcolloc/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sgcolloc/fem.hpp"
#include "sgcolloc/oracle.hpp"
#include "sgcolloc/sparse.hpp"

namespace sgc::study {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// strips a trailing comment outside of quotes
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

}  // namespace

Toml Toml::parse(const std::string& text) {
  Toml t;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty section name");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    std::string full = section.empty() ? key : section + "." + key;
    if (t.entries_.count(full))
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": duplicate key '" + full + "'");
    t.entries_[full] = {val, lineno};
  }
  return t;
}

Toml Toml::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Toml::has(const std::string& key) const { return entries_.count(key); }

void Toml::fail(const std::string& key, const std::string& why) const {
  auto it = entries_.find(key);
  int line = it == entries_.end() ? 0 : it->second.line;
  throw ConfigError("config line " + std::to_string(line) + ", field '" + key +
                    "': " + why);
}

std::string Toml::get_str(const std::string& key,
                          const std::string& dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  const std::string& raw = it->second.raw;
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"')
    return raw.substr(1, raw.size() - 2);
  return raw;
}

double Toml::get_double(const std::string& key, double dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  try {
    size_t pos = 0;
    double v = std::stod(it->second.raw, &pos);
    if (pos != it->second.raw.size()) fail(key, "trailing characters");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, "expected a number, got '" + it->second.raw + "'");
  }
}

long Toml::get_int(const std::string& key, long dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  try {
    size_t pos = 0;
    long v = std::stol(it->second.raw, &pos);
    if (pos != it->second.raw.size()) fail(key, "trailing characters");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, "expected an integer, got '" + it->second.raw + "'");
  }
}

bool Toml::get_bool(const std::string& key, bool dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  if (it->second.raw == "true") return true;
  if (it->second.raw == "false") return false;
  fail(key, "expected true or false");
}

std::vector<long> Toml::get_int_list(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  const std::string& raw = it->second.raw;
  if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']')
    fail(key, "expected an array [..]");
  std::vector<long> out;
  std::string body = raw.substr(1, raw.size() - 2);
  std::istringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stol(item, &pos));
      if (pos != item.size()) fail(key, "bad array element '" + item + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (...) {
      fail(key, "bad array element '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> Toml::keys() const {
  std::vector<std::string> out;
  for (auto& [k, v] : entries_) out.push_back(k);
  return out;
}

StudyConfig StudyConfig::from_toml(const Toml& t) {
  StudyConfig c;
  c.kind = t.get_str("study.kind", c.kind);
  c.reference = t.get_str("study.reference", c.reference);
  c.budgets = t.get_int_list("study.budgets");
  c.cost = t.get_str("study.cost", c.cost);
  c.alpha = t.get_double("study.alpha", c.alpha);
  c.ref_level_bump = int(t.get_int("study.ref_level_bump", c.ref_level_bump));
  c.oracle_order = int(t.get_int("study.oracle_order", c.oracle_order));
  c.mc_samples = int(t.get_int("study.mc_samples", c.mc_samples));
  c.seed = std::uint64_t(t.get_int("study.seed", long(c.seed)));
  c.jobs = int(t.get_int("study.jobs", c.jobs));
  c.model = t.get_str("model.kind", c.model);
  c.J = int(t.get_int("model.J", c.J));
  c.c = t.get_double("model.c", c.c);
  c.kappa = t.get_double("model.kappa", c.kappa);
  c.sigma1 = t.get_double("model.sigma1", c.sigma1);
  c.abar = t.get_double("model.abar", c.abar);
  c.family = t.get_str("family.name", c.family);
  c.validate();
  return c;
}

void StudyConfig::validate() const {
  if (kind != "quadrature" && kind != "interpolation")
    throw ConfigError("study.kind must be quadrature or interpolation");
  if (reference != "oracle" && reference != "closed-form" &&
      reference != "self")
    throw ConfigError("study.reference must be oracle, closed-form, or self");
  if (budgets.empty()) throw ConfigError("study.budgets must be nonempty");
  for (size_t i = 1; i < budgets.size(); ++i)
    if (budgets[i] <= budgets[i - 1])
      throw ConfigError("study.budgets must be strictly increasing");
  if (cost != "card" && cost != "dim" && cost != "grid")
    throw ConfigError("study.cost must be card, dim, or grid");
  if (model != "power-sine" && model != "constant-1term" && model != "affine")
    throw ConfigError("model.kind must be power-sine, constant-1term, affine");
  if (family != "gauss-hermite" && family != "szabados")
    throw ConfigError("family.name must be gauss-hermite or szabados");
  if (J < 1 || J > 16) throw ConfigError("model.J must be in [1, 16]");
  if (mc_samples < 2) throw ConfigError("study.mc_samples must be >= 2");
  if (jobs < 1) throw ConfigError("study.jobs must be >= 1");
  if (reference == "closed-form" && model != "constant-1term")
    throw ConfigError("closed-form reference requires the constant-1term model");
}

model::CoefficientModel StudyConfig::build_model() const {
  if (model == "power-sine")
    return model::CoefficientModel::lognormal_power_sine(J, c, kappa);
  if (model == "constant-1term")
    return model::CoefficientModel::lognormal_1term(sigma1);
  return model::CoefficientModel::affine_power_sine(J, abar, c, kappa);
}

nodes::FamilyTag StudyConfig::family_tag() const {
  return family == "szabados" ? nodes::FamilyTag::Szabados
                              : nodes::FamilyTag::GaussHermite;
}

indexset::CostFunctional StudyConfig::cost_functional() const {
  if (cost == "card") return indexset::CostFunctional::Cardinality;
  if (cost == "grid") return indexset::CostFunctional::GridPoints;
  return indexset::CostFunctional::DyadicDim;
}

double fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw UsageError("fit_loglog: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(std::max(x[i], 1e-300));
    double ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double den = n * sxx - sx * sx;
  if (den == 0.0) throw NumericError("fit_loglog: degenerate abscissae");
  return (n * sxy - sx * sy) / den;
}

double fit_decay(const std::vector<StudyRow>& rows) {
  if (rows.size() < 2) throw UsageError("fit_decay: need >= 2 rows");
  size_t start = rows.size() / 2;
  if (rows.size() - start < 2) start = rows.size() - 2;
  std::vector<double> x, y;
  for (size_t i = start; i < rows.size(); ++i) {
    x.push_back(double(rows[i].n));
    y.push_back(rows[i].error);
  }
  return -fit_loglog(x, y);
}

std::string StudyResult::to_csv() const {
  std::ostringstream os;
  os << "n,xi,card,dim,grid,error\n";
  for (auto& r : rows)
    os << r.n << "," << fmt17(r.xi) << "," << r.set_size << "," << r.dim << ","
       << r.grid << "," << fmt17(r.error) << "\n";
  return os.str();
}

std::string StudyResult::timings_csv() const {
  std::ostringstream os;
  os << "n,runtime_s\n";
  for (auto& r : rows) os << r.n << "," << fmt17(r.runtime) << "\n";
  return os.str();
}

nlohmann::json StudyResult::to_json() const {
  nlohmann::json j;
  j["kind"] = config.kind;
  j["model"] = config.model;
  j["family"] = config.family;
  j["reference"] = config.reference;
  j["seed"] = config.seed;
  j["q1"] = q1;
  j["q2"] = q2;
  j["rate_interp"] = rate_interp;
  j["rate_quad"] = rate_quad;
  j["slope"] = slope;
  j["rows"] = nlohmann::json::array();
  for (auto& r : rows) {
    nlohmann::json row;
    row["n"] = r.n;
    row["xi"] = r.xi;
    row["card"] = r.set_size;
    row["dim"] = r.dim;
    row["grid"] = r.grid;
    row["error"] = r.error;
    j["rows"].push_back(row);
  }
  return j;
}

namespace {

long grid_points(const indexset::IndexPlan& plan) {
  const int step = plan.parity == indexset::Parity::Even ? 2 : 1;
  long total = 0;
  for (int k = 0; k <= plan.max_level(); ++k) {
    auto slice = plan.slice(k);
    if (!slice.empty()) total += long(indexset::grid_of(slice, step).size());
  }
  return total;
}

}  // namespace

StudyResult run_study(const StudyConfig& config) {
  StudyResult result;
  result.config = config;

  auto mdl = config.build_model();
  mdl.validate();
  auto rho = model::rho_defaults(mdl);
  const double q1 = rho.spec1.q, q2 = rho.spec2.q;
  result.q1 = q1;
  result.q2 = q2;
  const double a = config.alpha;
  {
    double dI = 1.0 / q1 - 1.0 / q2;
    double dQ = 2.0 * dI;
    result.rate_interp = std::min(a, (1.0 / q1 - 0.5) * a / (a + dI));
    result.rate_quad = std::min(a, (2.0 / q1 - 0.5) * a / (a + dQ));
  }

  const bool quad = config.kind == "quadrature";
  const auto regime =
      quad ? indexset::Regime::Expansion : indexset::Regime::Interpolation;
  const auto parity = quad ? indexset::Parity::Even : indexset::Parity::All;
  auto builder = [&](double xi) {
    return indexset::build_G(xi, a, rho.spec1, rho.spec2, regime, parity);
  };

  std::vector<std::pair<double, indexset::IndexPlan>> plans;
  int max_plan_level = 0;
  for (long n : config.budgets) {
    auto [xi, plan] = indexset::calibrate_xi(n, config.cost_functional(),
                                             builder);
    if (plan.entries.empty())
      throw ConfigError("run_study: budget " + std::to_string(n) +
                        " admits no index set");
    max_plan_level = std::max(max_plan_level, plan.max_level());
    plans.push_back({xi, std::move(plan)});
  }
  const int ref_level = max_plan_level + config.ref_level_bump;

  nodes::NodeFamily family(config.family_tag());

  // reference for quadrature studies: either the closed form of the 1-term
  // model or a full tensor rule applied to the parametric solution
  fem::Field ref_field;
  double ref_norm = 1.0;
  constexpr double kPi = 3.14159265358979323846;
  if (quad) {
    if (config.reference == "closed-form") {
      double scale = std::exp(0.5 * config.sigma1 * config.sigma1);
      auto ref_du = [=](double x) { return scale * kPi * std::cos(kPi * x); };
      ref_norm = fem::norm_V_function(ref_du);
      ref_field = fem::Field::zeros(ref_level);
      fem::Mesh mesh{ref_level};
      for (int i = 0; i < mesh.interior(); ++i)
        ref_field.values[i] = scale * std::sin(kPi * mesh.node(i));
    } else {
      ref_field = fem::Field::zeros(ref_level);
      oracle::tensor_rule_sweep(
          config.J, config.oracle_order, rules1d::Measure::gaussian(),
          [&](const std::vector<double>& y, double w) {
            ref_field += model::solve_parametric(mdl, ref_level, y) * w;
          });
      ref_norm = fem::norm_V(ref_field);
    }
  }

  for (size_t i = 0; i < plans.size(); ++i) {
    auto& [xi, plan] = plans[i];
    StudyRow row;
    row.n = config.budgets[i];
    row.xi = xi;
    row.set_size = plan.size();
    row.dim = plan.dyadic_dim();
    row.grid = std::size_t(grid_points(plan));

    auto t0 = std::chrono::steady_clock::now();
    sparse::FullyDiscreteEvaluator ev(mdl, family, plan);
    ev.prefetch(config.jobs);
    if (quad) {
      fem::Field q = ev.quadrature();
      fem::Field diff = fem::prolong(q, ref_level) - ref_field;
      row.error = fem::norm_V(diff) / ref_norm;
    } else {
      auto sq = [&](const std::vector<double>& y) {
        fem::Field approx = fem::prolong(ev.interpolate(y), ref_level);
        fem::Field exact = model::solve_parametric(mdl, ref_level, y);
        double e = fem::norm_V(approx - exact);
        return e * e;
      };
      row.error = oracle::mc_bochner_error(sq, config.J, 2, config.mc_samples,
                                           config.seed)
                      .estimate;
    }
    row.runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    result.rows.push_back(row);
  }
  result.slope = fit_decay(result.rows);
  return result;
}

}  // namespace sgc::study
