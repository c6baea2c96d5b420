#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <utility>

#include "dfrc/rng.hpp"
#include "dfrc/types.hpp"

namespace dfrc {

struct SolverOptions {
  double dual_step = 0.025;       // alpha
  double primal_step = 0.025;     // eta0, reset every outer iteration
  double backtrack_factor = 0.5;
  double tol = 1e-12;
  int max_iter = 1000;
  int max_backtracks = 50;
  double eta_min = 1e-12;
  double lambda1_init = 0.04;
  double lambda2_init = 0.06;
  double mu_init = 0.05;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double smooth_objective = 0.0;
  double radar_mi = 0.0;
  double comm_weighted = 0.0;
  double sparsity_penalty = 0.0;
  double tx_power = 0.0;
  std::vector<double> se_per_user;
  DualState duals;
  double eta = 0.0;
  double step_norm = 0.0;
};

struct ConvergenceTrace {
  std::vector<IterationRecord> rows;

  void to_csv(std::ostream& os, int n_users) const;
};

struct SolveResult {
  BeamformingMatrix w_star;
  DualState duals;
  ConvergenceTrace trace;
  MetricsRecord metrics;
  bool converged = false;
  int iterations = 0;
};

/// Hybrid power constraint parameters for antenna selection.
struct GpgdaPowerParams {
  double eta_pa = 0.4;
  double p_antenna = 5.0;  // P_A
  double p_total = 100.0;  // P_tot

  void validate() const;
};

/// Thrown when the objective turns non-finite mid-run; carries the trace
/// collected so far.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(std::string what, ConvergenceTrace trace)
      : std::runtime_error(std::move(what)), trace(std::move(trace)) {}
  ConvergenceTrace trace;
};

/// Backtracking ascent step: halves eta until evaluator does not decrease.
/// Returns W unchanged with eta_min when no improving step is found.
std::pair<BeamformingMatrix, double> backtrack_step(
    const BeamformingMatrix& w, const CMatrix& gradient, double eta_start,
    const std::function<double(const BeamformingMatrix&)>& evaluator,
    double factor, int max_backtracks, double eta_min);

/// Projected dual ascent update for the PGDA constraints.
DualState dual_update(const DualState& duals,
                      const std::vector<double>& se_per_user, double tx_power,
                      const SystemConfig& config, double alpha);

/// Random initial beamformer scaled so tx_power = power_budget / 2.
BeamformingMatrix initial_beamformer(Rng& rng, const SystemConfig& config);

/// Random initial beamformer scaled so the hybrid power equals p_total / 2.
BeamformingMatrix initial_beamformer_gpgda(Rng& rng, const SystemConfig& config,
                                           const GpgdaPowerParams& power);

/// Entrywise selective beamforming (per-entry reliability mask).
SolveResult pgda_solve(const SystemConfig& config, const RadarScene& scene,
                       const CommChannel& channel, const ReliabilityMask& beta,
                       const BeamformingMatrix& w0, const SolverOptions& options,
                       const std::optional<DualState>& warm_duals = {});

/// Row-group antenna selection (per-antenna reliability mask).
SolveResult gpgda_solve(const SystemConfig& config, const RadarScene& scene,
                        const CommChannel& channel,
                        const ReliabilityMask& beta_vec,
                        const GpgdaPowerParams& power,
                        const BeamformingMatrix& w0,
                        const SolverOptions& options,
                        const std::optional<DualState>& warm_duals = {});

}  // namespace dfrc
