#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "dfrc/config_io.hpp"
#include "dfrc/experiments.hpp"
#include "dfrc/gradients.hpp"
#include "dfrc/metrics.hpp"
#include "dfrc/prox.hpp"
#include "dfrc/scenario.hpp"

namespace fs = std::filesystem;
using namespace dfrc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitExperiment = 3;

struct CliArgs {
  std::string config_path;
  std::string out_dir = "results";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::vector<double> rho_s;
  std::optional<int> n_runs;
};

LoadedConfig load_or_default(const CliArgs& args, bool selection) {
  LoadedConfig lc;
  if (!args.config_path.empty())
    lc = load_config(args.config_path);
  else
    lc = selection ? default_selection_config() : default_config();
  if (args.seed) lc.scenario.seed = *args.seed;
  if (!args.rho_s.empty()) lc.experiment.rho_s_values = args.rho_s;
  if (args.n_runs) lc.experiment.n_runs = *args.n_runs;
  return lc;
}

void write_metadata(const fs::path& dir, const LoadedConfig& lc,
                    const char* kind, int n_failed) {
  std::ofstream os(dir / "run_metadata.json");
  os << "{\n  \"kind\": \"" << kind << "\",\n"
     << "  \"seed\": " << lc.scenario.seed << ",\n"
     << "  \"n_runs\": " << lc.experiment.n_runs << ",\n"
     << "  \"redrawn_per_run\": [\"channel\", \"scene\", \"initial_w\"],\n"
     << "  \"n_failed\": " << n_failed << ",\n"
     << "  \"rho_s_values\": [";
  for (size_t i = 0; i < lc.experiment.rho_s_values.size(); ++i)
    os << (i ? ", " : "") << lc.experiment.rho_s_values[i];
  os << "]\n}\n";
}

std::string rho_tag(double v) {
  std::string s = std::to_string(v);
  for (char& c : s)
    if (c == '.') c = 'p';
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (s.back() == 'p') s.pop_back();
  return s;
}

int run_sweep(const CliArgs& args, SolverKind kind) {
  LoadedConfig lc = load_or_default(args, kind == SolverKind::Gpgda);
  fs::create_directories(args.out_dir);

  SweepSpec spec;
  spec.scenario = lc.scenario;
  spec.rho_s_values = lc.experiment.rho_s_values;
  spec.n_runs = lc.experiment.n_runs;
  spec.base_seed = lc.scenario.seed;

  SweepResult result = run_rho_sweep(spec, kind);
  int n_failed = 0;
  for (const auto& row : result.rows) n_failed += row.n_failed;

  fs::path dir(args.out_dir);
  if (args.format == "json") {
    std::ofstream os(dir / "sweep.json");
    export_sweep_json(result.rows, os);
  } else {
    std::ofstream os(dir / "sweep.csv");
    export_sweep_csv(result.rows, os);
  }
  {
    std::ofstream os(dir / "sweep_runs.csv");
    export_per_run_csv(result.per_run, lc.scenario.config.n_users, os);
  }
  // one representative convergence trace per rho_s (first seed)
  for (double rho_s : spec.rho_s_values) {
    auto [res, metrics] = run_single(spec.scenario, rho_s, spec.base_seed, kind);
    std::ofstream os(dir / ("trace_rho_" + rho_tag(rho_s) + ".csv"));
    res.trace.to_csv(os, lc.scenario.config.n_users);
  }
  write_metadata(dir, lc, kind == SolverKind::Pgda ? "sweep" : "select",
                 n_failed);
  std::cout << "wrote " << result.rows.size() << " sweep rows to "
            << args.out_dir << " (" << n_failed << " failed runs)\n";
  return kExitOk;
}

int run_dynamic_cmd(const CliArgs& args) {
  LoadedConfig lc = load_or_default(args, false);
  fs::create_directories(args.out_dir);
  DynamicSpec spec;
  spec.scenario = lc.scenario;
  spec.n_stages = lc.experiment.n_stages;
  spec.increment = lc.experiment.increment;

  auto stages = run_dynamic(spec);
  fs::path dir(args.out_dir);
  std::ofstream os(dir / "dynamic.csv");
  os << "stage";
  for (int j = 1; j <= lc.scenario.config.n_users; ++j) os << ",rate_min_" << j;
  for (int j = 1; j <= lc.scenario.config.n_users; ++j) os << ",se_" << j;
  os << ",radar_mi,tx_power,converged\n";
  for (size_t s = 0; s < stages.size(); ++s) {
    os << s;
    for (double v : stages[s].rate_min) os << ',' << v;
    for (double v : stages[s].result.metrics.se_per_user) os << ',' << v;
    os << ',' << stages[s].result.metrics.radar_mi << ','
       << stages[s].result.metrics.tx_power << ','
       << (stages[s].result.converged ? 1 : 0) << '\n';
    std::ofstream ts(dir / ("dynamic_stage_" + std::to_string(s) + ".csv"));
    stages[s].result.trace.to_csv(ts, lc.scenario.config.n_users);
  }
  write_metadata(dir, lc, "dynamic", 0);
  std::cout << "wrote " << stages.size() << " dynamic stages to "
            << args.out_dir << "\n";
  return kExitOk;
}

int run_beampattern(const CliArgs& args) {
  LoadedConfig lc = load_or_default(args, false);
  fs::create_directories(args.out_dir);
  const auto& c = lc.scenario.config;
  const bool selection = lc.scenario.mask.kind() == MaskKind::PerAntenna;
  const SolverKind kind = selection ? SolverKind::Gpgda : SolverKind::Pgda;

  std::vector<double> theta_deg, theta_rad;
  for (int deg = -90; deg <= 90; ++deg) {
    theta_deg.push_back(deg);
    theta_rad.push_back(deg * std::numbers::pi / 180.0);
  }

  fs::path dir(args.out_dir);
  for (double rho_s : lc.experiment.rho_s_values) {
    auto [res, metrics] =
        run_single(lc.scenario, rho_s, lc.scenario.seed, kind);
    auto unmasked = beampattern(res.w_star, theta_rad, c.n_tx, c.spacing,
                                c.wavelength);
    auto masked = beampattern(res.w_star, theta_rad, c.n_tx, c.spacing,
                              c.wavelength, lc.scenario.mask);
    {
      std::ofstream os(dir /
                       ("beampattern_rho_" + rho_tag(rho_s) + "_unmasked.csv"));
      export_beampattern_csv(theta_deg, unmasked, os);
    }
    {
      std::ofstream os(dir /
                       ("beampattern_rho_" + rho_tag(rho_s) + "_masked.csv"));
      export_beampattern_csv(theta_deg, masked, os);
    }
  }
  write_metadata(dir, lc, "beampattern", 0);
  std::cout << "wrote beampattern CSVs to " << args.out_dir << "\n";
  return kExitOk;
}

int run_gradcheck(const CliArgs& args) {
  const std::uint64_t seed = args.seed.value_or(2718);
  Rng rng(seed);
  double max_err = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n_tx = 6, m = 3, k = 2;
    RadarScene scene;
    scene.angles.resize(k);
    scene.strengths.resize(k);
    scene.amplitudes.resize(k);
    for (int i = 0; i < k; ++i) {
      scene.angles[i] = (rng.uniform() - 0.5) * 2.0;
      scene.strengths[i] = 0.5 + rng.uniform();
      scene.amplitudes[i] = rng.cgaussian();
    }
    CMatrix r = radar_covariance(scene, n_tx, 0.5, 1.0);
    CommChannel channel{CMatrix(n_tx, m)};
    BeamformingMatrix w(n_tx, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n_tx; ++i) {
        channel.h(i, j) = rng.cgaussian();
        w(i, j) = 0.5 * rng.cgaussian();
      }
    RVector weights(m);
    for (int j = 0; j < m; ++j) weights[j] = 0.2 + rng.uniform();
    const double mu = 0.1 * rng.uniform();
    const double sigma2_r = 0.5, sigma2_c = 0.3, rho_r = 0.4;

    CMatrix got =
        grad_smooth(w, r, channel, sigma2_r, sigma2_c, rho_r, weights, mu);
    CMatrix want = fd_oracle(
        [&](const BeamformingMatrix& x) {
          return smooth_value(x, r, channel, sigma2_r, sigma2_c, rho_r,
                              weights, mu);
        },
        w);
    double err = (got - want).norm() / std::max(want.norm(), 1e-12);
    max_err = std::max(max_err, err);
  }
  std::cout << "gradcheck: max relative error " << max_err << " over 20 instances\n";
  return max_err <= 1e-5 ? kExitOk : kExitVerification;
}

int run_proxcheck(const CliArgs& args) {
  const std::uint64_t seed = args.seed.value_or(3141);
  Rng rng(seed);
  double max_err = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Complex w = 2.0 * rng.cgaussian();
    double kappa = rng.uniform();
    Complex got = soft_threshold_entry(w, kappa);
    // radial brute force on the prox objective
    const double mag = std::abs(w);
    double best_val = std::norm(w) / 2.0;
    double best_r = 0.0;
    for (int i = 1; i <= 10000; ++i) {
      double r = mag * i / 10000.0;
      double val = kappa * r + (r - mag) * (r - mag) / 2.0;
      if (val < best_val) {
        best_val = val;
        best_r = r;
      }
    }
    Complex want = mag > 0 ? w * (best_r / mag) : Complex{0, 0};
    max_err = std::max(max_err, std::abs(got - want));
  }
  double max_group_err = 0.0;
  for (int t = 0; t < 1000; ++t) {
    CMatrix w(1, 4);
    for (int i = 0; i < 4; ++i) w(0, i) = rng.cgaussian();
    double tau = 2.0 * rng.uniform();
    CMatrix got = prox_group_rows(w, RVector::Constant(1, tau));
    const double norm = w.row(0).norm();
    double best_val = 1e300, best_s = 0.0;
    for (int i = 0; i <= 100000; ++i) {
      double s = i / 100000.0;
      double val = tau * s * norm + (1 - s) * (1 - s) * norm * norm / 2.0;
      if (val < best_val) {
        best_val = val;
        best_s = s;
      }
    }
    max_group_err =
        std::max(max_group_err, (got.row(0) - best_s * w.row(0)).norm());
  }
  std::cout << "proxcheck: elementwise max error " << max_err
            << ", group max error " << max_group_err << "\n";
  return (max_err <= 2e-3 && max_group_err <= 1e-4) ? kExitOk
                                                    : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DFRC antenna-health-aware beamforming toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CliArgs args;
  app.add_option("--config", args.config_path, "scenario JSON file");
  app.add_option("--out", args.out_dir, "output directory");
  app.add_option("--seed", args.seed, "seed override");
  app.add_option("--rho-s", args.rho_s, "rho_s grid override")->delimiter(',');
  app.add_option("--runs", args.n_runs, "runs per rho_s");
  app.add_option("--format", args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "PGDA rho_s sweep");
  auto* dynamic = app.add_subcommand("dynamic", "staged rate-requirement run");
  auto* select = app.add_subcommand("select", "GPGDA antenna-selection sweep");
  auto* bp = app.add_subcommand("beampattern", "beampattern exports");
  auto* gradcheck = app.add_subcommand("gradcheck", "gradient self-check");
  auto* proxcheck = app.add_subcommand("proxcheck", "prox oracle self-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (!args.config_path.empty() && !fs::exists(args.config_path)) {
    std::cerr << "config file not found: " << args.config_path << "\n"
              << app.help();
    return kExitUsage;
  }

  try {
    if (sweep->parsed()) return run_sweep(args, SolverKind::Pgda);
    if (select->parsed()) return run_sweep(args, SolverKind::Gpgda);
    if (dynamic->parsed()) return run_dynamic_cmd(args);
    if (bp->parsed()) return run_beampattern(args);
    if (gradcheck->parsed()) return run_gradcheck(args);
    if (proxcheck->parsed()) return run_proxcheck(args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "experiment failed: " << e.what() << "\n";
    return kExitExperiment;
  }
  return kExitUsage;
}
