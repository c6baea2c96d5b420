#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "dfrc/power.hpp"
#include "dfrc/solver.hpp"

namespace dfrc {

enum class SolverKind { Pgda, Gpgda };

/// Everything one experiment run needs besides the per-run seed.
struct ScenarioSpec {
  SystemConfig config;
  ReliabilityMask mask = ReliabilityMask::per_entry(RMatrix::Ones(10, 4));
  GpgdaPowerParams gpgda_power;
  SolverOptions options;
  std::uint64_t seed = 1;
};

struct SweepSpec {
  std::vector<double> rho_s_values;
  int n_runs = 100;
  std::uint64_t base_seed = 1;
  ScenarioSpec scenario;
};

struct SweepRow {
  double rho_s = 0.0;
  double se_mean = 0.0, se_std = 0.0;      // per-user-averaged SE
  double rate_mean = 0.0, rate_std = 0.0;  // per-user-averaged rate
  double mi_mean = 0.0, mi_std = 0.0;
  double density_mean = 0.0;
  double power_mean = 0.0;
  double reliability_mean = 0.0;
  int n_failed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // per rho_s, the successful per-run records in seed order
  std::vector<std::vector<MetricsRecord>> per_run;
};

struct DynamicSpec {
  int n_stages = 3;
  double increment = 0.10;
  ScenarioSpec scenario;
};

struct DynamicStage {
  std::vector<double> rate_min;
  SolveResult result;
};

/// Deterministic single run: channel, scene and initial W are drawn from
/// independent sub-streams of the given seed.
std::pair<SolveResult, MetricsRecord> run_single(const ScenarioSpec& scenario,
                                                 double rho_s,
                                                 std::uint64_t seed,
                                                 SolverKind kind);

/// Seeded sweep over rho_s values; failed runs are excluded and counted,
/// more than 20% failures raises. Parallel execution reduces in seed order
/// and matches the serial result.
SweepResult run_rho_sweep(const SweepSpec& spec, SolverKind kind,
                          bool parallel = false);

/// Staged run with rate_min scaled by (1+increment) per stage, warm-started
/// from the previous stage. Uses PGDA with rho_s = 0.
std::vector<DynamicStage> run_dynamic(const DynamicSpec& spec);

/// Seeded random mask, entries uniform on [0,1]. clamp_fraction of the
/// values are snapped to {0,1}; a finite target_mean shifts values so the
/// mean matches it.
ReliabilityMask generate_mask(Rng& rng, MaskKind kind, int n_tx, int n_users,
                              double clamp_fraction = 0.0,
                              double target_mean =
                                  std::numeric_limits<double>::quiet_NaN());

void export_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);
void export_sweep_json(const std::vector<SweepRow>& rows, std::ostream& os);
void export_per_run_csv(const std::vector<std::vector<MetricsRecord>>& per_run,
                        int n_users, std::ostream& os);
void export_beampattern_csv(const std::vector<double>& theta_deg,
                            const std::vector<double>& power,
                            std::ostream& os);

}  // namespace dfrc
