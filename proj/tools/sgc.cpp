#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "exactness.hpp"
#include "sgcolloc/indexset.hpp"
#include "sgcolloc/nodes.hpp"
#include "sgcolloc/rules1d.hpp"
#include "sgcolloc/study.hpp"

namespace {

using namespace sgc;

nodes::FamilyTag parse_family(const std::string& name) {
  if (name == "gauss-hermite") return nodes::FamilyTag::GaussHermite;
  if (name == "szabados") return nodes::FamilyTag::Szabados;
  if (name == "gauss-jacobi") return nodes::FamilyTag::GaussJacobi;
  throw ConfigError("unknown node family '" + name + "'");
}

std::ostream& open_out(std::ofstream& file, const std::string& out_dir,
                       const std::string& name) {
  if (out_dir.empty()) return std::cout;
  std::filesystem::create_directories(out_dir);
  file.open(std::filesystem::path(out_dir) / name);
  if (!file) throw ConfigError("cannot write to output directory " + out_dir);
  return file;
}

void write_file(const std::string& out_dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(out_dir);
  std::ofstream f(std::filesystem::path(out_dir) / name);
  if (!f) throw ConfigError("cannot write " + name + " in " + out_dir);
  f << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse-grid collocation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, profile = "verify";
  long seed = -1;
  int jobs = 1;
  app.add_option("--config", config_path, "experiment config file (TOML)");
  app.add_option("--out", out_dir, "output directory (default: stdout/cwd)");
  app.add_option("--seed", seed, "RNG seed override");
  app.add_option("--jobs", jobs, "worker threads for solver batches");
  app.add_option("--profile", profile, "verify|fast")
      ->check(CLI::IsMember({"verify", "fast"}));

  auto* cmd_nodes = app.add_subcommand("nodes", "print node tables as CSV");
  std::string family_name = "gauss-hermite";
  int m = 8;
  double jacobi_a = 0.0;
  cmd_nodes->add_option("--family", family_name,
                        "gauss-hermite|szabados|gauss-jacobi");
  cmd_nodes->add_option("--m", m, "largest level");
  cmd_nodes->add_option("--a", jacobi_a, "Jacobi parameter (a = b)");

  auto* cmd_weights =
      app.add_subcommand("weights", "print quadrature weight tables as CSV");
  cmd_weights->add_option("--family", family_name,
                          "gauss-hermite|szabados|gauss-jacobi");
  cmd_weights->add_option("--m", m, "largest level");
  cmd_weights->add_option("--a", jacobi_a, "Jacobi parameter (a = b)");

  auto* cmd_indexset =
      app.add_subcommand("indexset", "build a thresholded index set as JSON");
  double xi = 10.0, alpha = 1.0;
  std::string regime = "expansion", parity = "all", mode = "lognormal";
  bool lambda_only = false;
  double c1 = 1.5, kappa1 = 1.5, q1 = 0.8;
  double c2 = 1.5, kappa2 = 0.8, q2 = 1.6;
  int eta = 3;
  cmd_indexset->add_option("--xi", xi, "threshold");
  cmd_indexset->add_option("--alpha", alpha, "spatial rate");
  cmd_indexset->add_option("--regime", regime, "expansion|interpolation")
      ->check(CLI::IsMember({"expansion", "interpolation"}));
  cmd_indexset->add_option("--parity", parity, "all|even")
      ->check(CLI::IsMember({"all", "even"}));
  cmd_indexset->add_option("--mode", mode, "lognormal|affine")
      ->check(CLI::IsMember({"lognormal", "affine"}));
  cmd_indexset->add_flag("--lambda", lambda_only,
                         "build Lambda(xi) instead of G(xi)");
  cmd_indexset->add_option("--c1", c1, "rho_1 amplitude");
  cmd_indexset->add_option("--kappa1", kappa1, "rho_1 exponent");
  cmd_indexset->add_option("--q1", q1, "summability exponent q1");
  cmd_indexset->add_option("--c2", c2, "rho_2 amplitude");
  cmd_indexset->add_option("--kappa2", kappa2, "rho_2 exponent");
  cmd_indexset->add_option("--q2", q2, "summability exponent q2");
  cmd_indexset->add_option("--eta", eta, "binomial cap eta");
  cmd_indexset->add_option("--a", jacobi_a, "Jacobi parameter (affine mode)");

  auto* cmd_exact =
      app.add_subcommand("exactness", "run the cross-module invariant suite");
  auto* cmd_study = app.add_subcommand("study", "run a convergence study");

  try {
    app.parse(argc, argv);

    if (*cmd_nodes || *cmd_weights) {
      nodes::NodeFamily family(parse_family(family_name), jacobi_a);
      std::ofstream file;
      std::ostream& os =
          open_out(file, out_dir, *cmd_nodes ? "nodes.csv" : "weights.csv");
      os << (*cmd_nodes ? "level,k,point\n" : "level,k,point,weight\n");
      for (int level = 0; level <= m; ++level) {
        const auto& seq = family.sequence(level);
        std::vector<double> w;
        if (*cmd_weights)
          w = rules1d::make_rule(seq, rules1d::natural_measure(seq)).weights;
        for (size_t k = 0; k < seq.points.size(); ++k) {
          os << level << "," << k << "," << study::fmt17(seq.points[k]);
          if (*cmd_weights) os << "," << study::fmt17(w[k]);
          os << "\n";
        }
      }
      return 0;
    }

    if (*cmd_indexset) {
      indexset::WeightSpec s1, s2;
      if (mode == "lognormal") {
        s1 = indexset::WeightSpec::lognormal_power(c1, kappa1, q1, eta);
        s2 = indexset::WeightSpec::lognormal_power(c2, kappa2, q2, eta);
      } else {
        s1 = indexset::WeightSpec::affine_power(c1, kappa1, q1, jacobi_a);
        s2 = indexset::WeightSpec::affine_power(c2, kappa2, q2, jacobi_a);
      }
      auto par = parity == "even" ? indexset::Parity::Even
                                  : indexset::Parity::All;
      auto plan =
          lambda_only
              ? indexset::build_Lambda(xi, s1, par)
              : indexset::build_G(xi, alpha, s1, s2,
                                  regime == "expansion"
                                      ? indexset::Regime::Expansion
                                      : indexset::Regime::Interpolation,
                                  par);
      nlohmann::json j = plan.to_json();
      j["cardinality"] = plan.size();
      j["dim"] = plan.dyadic_dim();
      j["max_level"] = plan.max_level();
      nlohmann::json grids = nlohmann::json::array();
      const int step = par == indexset::Parity::Even ? 2 : 1;
      for (int k = 0; k <= plan.max_level(); ++k) {
        auto slice = plan.slice(k);
        if (slice.empty()) continue;
        grids.push_back(
            {{"k", k},
             {"slice_size", slice.size()},
             {"grid_points", indexset::grid_of(slice, step).size()}});
      }
      j["grids"] = grids;
      std::ofstream file;
      open_out(file, out_dir, "indexset.json") << j.dump(2) << "\n";
      return 0;
    }

    if (*cmd_exact) {
      int failures = sgc::tools::run_exactness(profile == "fast", std::cout);
      if (failures > 0) {
        std::cout << failures << " check(s) failed\n";
        return 1;
      }
      std::cout << "all checks passed\n";
      return 0;
    }

    if (*cmd_study) {
      if (config_path.empty())
        throw ConfigError("study requires --config PATH");
      auto toml = study::Toml::parse_file(config_path);
      auto config = study::StudyConfig::from_toml(toml);
      if (seed >= 0) config.seed = std::uint64_t(seed);
      if (jobs > 1) config.jobs = jobs;
      auto result = study::run_study(config);
      std::string dir = out_dir.empty() ? "." : out_dir;
      write_file(dir, "study.csv", result.to_csv());
      write_file(dir, "timings.csv", result.timings_csv());
      write_file(dir, "study.json", result.to_json().dump(2) + "\n");
      std::cout << "rows: " << result.rows.size()
                << "  fitted decay: " << study::fmt17(result.slope)
                << "  predicted: "
                << study::fmt17(config.kind == "quadrature"
                                    ? result.rate_quad
                                    : result.rate_interp)
                << "\n";
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 4;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
