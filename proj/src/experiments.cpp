#include "dfrc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>

#include "dfrc/metrics.hpp"
#include "dfrc/scenario.hpp"

namespace dfrc {

namespace {

void format_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::pair<SolveResult, MetricsRecord> run_single(const ScenarioSpec& scenario,
                                                 double rho_s,
                                                 std::uint64_t seed,
                                                 SolverKind kind) {
  SystemConfig config = scenario.config;
  config.sparsity_weight = rho_s;

  Rng root(seed);
  Rng channel_rng = root.stream(0);
  Rng scene_rng = root.stream(1);
  Rng init_rng = root.stream(2);

  CommChannel channel = sample_channel(channel_rng, config.n_tx, config.n_users);
  RadarScene scene = sample_scene(scene_rng, config.n_targets);

  SolveResult result;
  if (kind == SolverKind::Pgda) {
    BeamformingMatrix w0 = initial_beamformer(init_rng, config);
    result = pgda_solve(config, scene, channel, scenario.mask, w0,
                        scenario.options);
  } else {
    BeamformingMatrix w0 =
        initial_beamformer_gpgda(init_rng, config, scenario.gpgda_power);
    result = gpgda_solve(config, scene, channel, scenario.mask,
                         scenario.gpgda_power, w0, scenario.options);
  }
  MetricsRecord metrics = result.metrics;
  return {std::move(result), std::move(metrics)};
}

SweepResult run_rho_sweep(const SweepSpec& spec, SolverKind kind,
                          bool parallel) {
  if (spec.rho_s_values.empty())
    throw std::invalid_argument("run_rho_sweep: empty rho_s grid");
  if (!std::is_sorted(spec.rho_s_values.begin(), spec.rho_s_values.end()))
    throw std::invalid_argument("run_rho_sweep: rho_s grid must be ascending");
  if (spec.n_runs < 1)
    throw std::invalid_argument("run_rho_sweep: n_runs must be >= 1");

  SweepResult out;
  for (double rho_s : spec.rho_s_values) {
    std::vector<std::optional<MetricsRecord>> records(
        static_cast<size_t>(spec.n_runs));
    auto one = [&](int i) -> std::optional<MetricsRecord> {
      try {
        return run_single(spec.scenario, rho_s,
                          spec.base_seed + static_cast<std::uint64_t>(i), kind)
            .second;
      } catch (const DivergedError&) {
        return std::nullopt;
      }
    };
    if (parallel) {
      std::vector<std::future<std::optional<MetricsRecord>>> futures;
      futures.reserve(static_cast<size_t>(spec.n_runs));
      for (int i = 0; i < spec.n_runs; ++i)
        futures.push_back(std::async(std::launch::async, one, i));
      for (int i = 0; i < spec.n_runs; ++i)
        records[static_cast<size_t>(i)] = futures[static_cast<size_t>(i)].get();
    } else {
      for (int i = 0; i < spec.n_runs; ++i)
        records[static_cast<size_t>(i)] = one(i);
    }

    std::vector<MetricsRecord> ok;
    int failed = 0;
    for (auto& rec : records) {
      if (rec)
        ok.push_back(std::move(*rec));
      else
        ++failed;
    }
    if (failed > spec.n_runs / 5)
      throw std::runtime_error("run_rho_sweep: more than 20% of runs failed");

    std::vector<double> se, rate, mi, density, power, reliability;
    for (const auto& rec : ok) {
      se.push_back(mean_of(rec.se_per_user));
      rate.push_back(mean_of(rec.rate_per_user));
      mi.push_back(rec.radar_mi);
      density.push_back(rec.density_pct);
      power.push_back(rec.tx_power);
      reliability.push_back(rec.reliability_pct);
    }
    SweepRow row;
    row.rho_s = rho_s;
    row.se_mean = mean_of(se);
    row.se_std = std_of(se, row.se_mean);
    row.rate_mean = mean_of(rate);
    row.rate_std = std_of(rate, row.rate_mean);
    row.mi_mean = mean_of(mi);
    row.mi_std = std_of(mi, row.mi_mean);
    row.density_mean = mean_of(density);
    row.power_mean = mean_of(power);
    row.reliability_mean = mean_of(reliability);
    row.n_failed = failed;
    out.rows.push_back(row);
    out.per_run.push_back(std::move(ok));
  }
  return out;
}

std::vector<DynamicStage> run_dynamic(const DynamicSpec& spec) {
  if (spec.n_stages < 1)
    throw std::invalid_argument("run_dynamic: n_stages must be >= 1");
  if (spec.increment < 0.0)
    throw std::invalid_argument("run_dynamic: increment must be >= 0");

  SystemConfig config = spec.scenario.config;
  config.sparsity_weight = 0.0;

  Rng root(spec.scenario.seed);
  Rng channel_rng = root.stream(0);
  Rng scene_rng = root.stream(1);
  Rng init_rng = root.stream(2);
  CommChannel channel = sample_channel(channel_rng, config.n_tx, config.n_users);
  RadarScene scene = sample_scene(scene_rng, config.n_targets);
  BeamformingMatrix w = initial_beamformer(init_rng, config);

  std::vector<DynamicStage> stages;
  std::optional<DualState> warm;
  for (int s = 0; s < spec.n_stages; ++s) {
    if (s > 0)
      for (double& r : config.rate_min) r *= 1.0 + spec.increment;
    DynamicStage stage;
    stage.rate_min = config.rate_min;
    stage.result = pgda_solve(config, scene, channel, spec.scenario.mask, w,
                              spec.scenario.options, warm);
    w = stage.result.w_star;
    warm = stage.result.duals;
    stages.push_back(std::move(stage));
  }
  return stages;
}

ReliabilityMask generate_mask(Rng& rng, MaskKind kind, int n_tx, int n_users,
                              double clamp_fraction, double target_mean) {
  const int cols = kind == MaskKind::PerEntry ? n_users : 1;
  RMatrix values(n_tx, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < n_tx; ++i) values(i, j) = rng.uniform();
  if (clamp_fraction > 0.0)
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < n_tx; ++i)
        if (rng.uniform() < clamp_fraction)
          values(i, j) = values(i, j) < 0.5 ? 0.0 : 1.0;
  if (std::isfinite(target_mean)) {
    const double shift = target_mean - values.mean();
    values = (values.array() + shift).cwiseMax(0.0).cwiseMin(1.0);
  }
  if (kind == MaskKind::PerEntry) return ReliabilityMask::per_entry(values);
  return ReliabilityMask::per_antenna(values.col(0));
}

void export_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "rho_s,se_mean,se_std,rate_mean,rate_std,mi_mean,mi_std,"
        "density_mean,power_mean,reliability_mean,n_failed\n";
  for (const auto& r : rows) {
    format_double(os, r.rho_s);
    for (double v : {r.se_mean, r.se_std, r.rate_mean, r.rate_std, r.mi_mean,
                     r.mi_std, r.density_mean, r.power_mean,
                     r.reliability_mean}) {
      os << ',';
      format_double(os, v);
    }
    os << ',' << r.n_failed << '\n';
  }
}

void export_sweep_json(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "[\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << "  {\"rho_s\": ";
    format_double(os, r.rho_s);
    auto field = [&](const char* name, double v) {
      os << ", \"" << name << "\": ";
      format_double(os, v);
    };
    field("se_mean", r.se_mean);
    field("se_std", r.se_std);
    field("rate_mean", r.rate_mean);
    field("rate_std", r.rate_std);
    field("mi_mean", r.mi_mean);
    field("mi_std", r.mi_std);
    field("density_mean", r.density_mean);
    field("power_mean", r.power_mean);
    field("reliability_mean", r.reliability_mean);
    os << ", \"n_failed\": " << r.n_failed << "}";
    os << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  os << "]\n";
}

void export_per_run_csv(const std::vector<std::vector<MetricsRecord>>& per_run,
                        int n_users, std::ostream& os) {
  write_metrics_csv_header(os, n_users);
  for (const auto& group : per_run)
    for (const auto& rec : group) write_metrics_csv_row(os, rec);
}

void export_beampattern_csv(const std::vector<double>& theta_deg,
                            const std::vector<double>& power,
                            std::ostream& os) {
  if (theta_deg.size() != power.size())
    throw std::invalid_argument("export_beampattern_csv: length mismatch");
  os << "theta_deg,power\n";
  for (size_t i = 0; i < theta_deg.size(); ++i) {
    format_double(os, theta_deg[i]);
    os << ',';
    format_double(os, power[i]);
    os << '\n';
  }
}

}  // namespace dfrc
