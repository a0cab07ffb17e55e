#ifndef SGCOLLOC_STUDY_HPP
#define SGCOLLOC_STUDY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sgcolloc/common.hpp"
#include "sgcolloc/indexset.hpp"
#include "sgcolloc/model.hpp"
#include "sgcolloc/nodes.hpp"

// Convergence-study orchestration: experiment configs (TOML subset), budget
// calibration, error measurement against oracle references, CSV/JSON
// emission, and log-log slope fitting.

namespace sgc::study {

/// Value formatted with 17 significant digits (round-trip exact).
std::string fmt17(double x);

/// Minimal TOML subset: [section] headers, key = value with integers,
/// floats, booleans, quoted strings, and flat arrays.  Keys are stored as
/// "section.key".  Line numbers are kept for diagnostics.
class Toml {
 public:
  static Toml parse(const std::string& text);
  static Toml parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_str(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  long get_int(const std::string& key, long dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  std::vector<long> get_int_list(const std::string& key) const;
  std::vector<std::string> keys() const;

 private:
  struct Entry {
    std::string raw;
    int line = 0;
  };
  std::map<std::string, Entry> entries_;
  [[noreturn]] void fail(const std::string& key, const std::string& why) const;
};

struct StudyConfig {
  std::string kind = "quadrature";  // quadrature | interpolation
  std::string model = "power-sine";  // power-sine | constant-1term | affine
  std::string family = "gauss-hermite";  // gauss-hermite | szabados
  std::string reference = "oracle";  // oracle | closed-form | self
  std::vector<long> budgets;
  std::string cost = "dim";  // card | dim | grid
  int J = 4;
  double c = 0.1;
  double kappa = 3.0;
  double sigma1 = 0.5;
  double abar = 2.0;
  double alpha = 1.0;  // spatial approximation rate (pw-linear: 1)
  int ref_level_bump = 2;
  int oracle_order = 9;
  int mc_samples = 64;
  std::uint64_t seed = 1234;
  int jobs = 1;

  static StudyConfig from_toml(const Toml& t);
  void validate() const;

  model::CoefficientModel build_model() const;
  nodes::FamilyTag family_tag() const;
  indexset::CostFunctional cost_functional() const;
};

struct StudyRow {
  long n = 0;
  double xi = 0.0;
  std::size_t set_size = 0;
  long dim = 0;
  std::size_t grid = 0;
  double error = 0.0;
  double runtime = 0.0;  // seconds; excluded from deterministic outputs
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRow> rows;
  double slope = 0.0;        // fitted decay exponent of error vs n, >= 0 good
  double q1 = 0.0, q2 = 0.0; // summability exponents used for the plan
  double rate_interp = 0.0;  // predicted min(alpha, beta) for interpolation
  double rate_quad = 0.0;    // predicted min(alpha, beta) for quadrature

  /// Deterministic table (no runtime column).
  std::string to_csv() const;
  /// Timing sidecar, not covered by the byte-reproducibility guarantee.
  std::string timings_csv() const;
  nlohmann::json to_json() const;
};

/// Least-squares slope of log(err) vs log(n) over the last half of the rows;
/// returns the decay exponent (positive when the error decreases).
double fit_decay(const std::vector<StudyRow>& rows);

/// Fitted exponent of log(y) vs log(x), all points.
double fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

StudyResult run_study(const StudyConfig& config);

}  // namespace sgc::study

#endif
