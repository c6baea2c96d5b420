#include "dfrc/solver.hpp"

#include <cmath>
#include <cstdio>

#include "dfrc/gradients.hpp"
#include "dfrc/metrics.hpp"
#include "dfrc/power.hpp"
#include "dfrc/prox.hpp"
#include "dfrc/scenario.hpp"

namespace dfrc {

namespace {

void format_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

CMatrix scene_covariance(const SystemConfig& config, const RadarScene& scene) {
  if (scene.n_targets() == 0 || config.bw_fraction_radar == 0.0)
    return CMatrix();
  return radar_covariance(scene, config.n_tx, config.spacing,
                          config.wavelength);
}

double elementwise_penalty(const BeamformingMatrix& w, double rho_s,
                           const ReliabilityMask& beta) {
  double p = 0.0;
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      p += (1.0 - beta.entries()(i, j)) * std::abs(w(i, j));
  return rho_s * p;
}

double group_penalty(const BeamformingMatrix& w, double rho_s,
                     const ReliabilityMask& beta) {
  double p = 0.0;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    p += (1.0 - beta.antennas()[i]) * w.row(i).norm();
  return rho_s * p;
}

}  // namespace

void SolverOptions::validate() const {
  if (dual_step <= 0.0 || primal_step <= 0.0)
    throw std::invalid_argument("SolverOptions: step sizes must be > 0");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw std::invalid_argument("SolverOptions: backtrack_factor must be in (0,1)");
  if (tol <= 0.0) throw std::invalid_argument("SolverOptions: tol must be > 0");
  if (max_iter < 1 || max_backtracks < 1)
    throw std::invalid_argument("SolverOptions: iteration caps must be >= 1");
  if (eta_min <= 0.0)
    throw std::invalid_argument("SolverOptions: eta_min must be > 0");
}

void GpgdaPowerParams::validate() const {
  if (!(eta_pa > 0.0 && eta_pa <= 1.0))
    throw std::invalid_argument("GpgdaPowerParams: eta_pa must be in (0,1]");
  if (p_antenna < 0.0)
    throw std::invalid_argument("GpgdaPowerParams: p_antenna must be >= 0");
  if (p_total <= 0.0)
    throw std::invalid_argument("GpgdaPowerParams: p_total must be > 0");
}

void ConvergenceTrace::to_csv(std::ostream& os, int n_users) const {
  os << "iteration,smooth_objective,radar_mi,comm_weighted,sparsity_penalty,"
        "tx_power";
  for (int j = 1; j <= n_users; ++j) os << ",se_" << j;
  for (int j = 1; j <= n_users; ++j) os << ",lambda1_" << j;
  for (int j = 1; j <= n_users; ++j) os << ",lambda2_" << j;
  os << ",mu,eta,step_norm\n";
  for (const auto& r : rows) {
    os << r.iteration;
    for (double v : {r.smooth_objective, r.radar_mi, r.comm_weighted,
                     r.sparsity_penalty, r.tx_power}) {
      os << ',';
      format_double(os, v);
    }
    for (double v : r.se_per_user) {
      os << ',';
      format_double(os, v);
    }
    for (Eigen::Index j = 0; j < r.duals.lambda1.size(); ++j) {
      os << ',';
      format_double(os, r.duals.lambda1[j]);
    }
    for (Eigen::Index j = 0; j < r.duals.lambda2.size(); ++j) {
      os << ',';
      format_double(os, r.duals.lambda2[j]);
    }
    os << ',';
    format_double(os, r.duals.mu);
    os << ',';
    format_double(os, r.eta);
    os << ',';
    format_double(os, r.step_norm);
    os << '\n';
  }
}

std::pair<BeamformingMatrix, double> backtrack_step(
    const BeamformingMatrix& w, const CMatrix& gradient, double eta_start,
    const std::function<double(const BeamformingMatrix&)>& evaluator,
    double factor, int max_backtracks, double eta_min) {
  const double f0 = evaluator(w);
  if (!std::isfinite(f0))
    throw std::invalid_argument("backtrack_step: non-finite value at W");
  if (gradient.norm() == 0.0) return {w, eta_start};
  double eta = eta_start;
  for (int k = 0; k < max_backtracks && eta >= eta_min; ++k) {
    BeamformingMatrix cand = w + eta * gradient;
    double f = evaluator(cand);
    if (std::isfinite(f) && f >= f0) return {cand, eta};
    eta *= factor;
  }
  return {w, eta_min};
}

DualState dual_update(const DualState& duals,
                      const std::vector<double>& se_per_user, double tx_power,
                      const SystemConfig& config, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("dual_update: alpha must be > 0");
  DualState next = duals;
  for (Eigen::Index j = 0; j < next.lambda1.size(); ++j) {
    const auto ju = static_cast<size_t>(j);
    next.lambda1[j] = std::max(
        0.0, duals.lambda1[j] + alpha * (config.rate_min[ju] - se_per_user[ju]));
    next.lambda2[j] = std::max(
        0.0, duals.lambda2[j] + alpha * (se_per_user[ju] - config.rate_max[ju]));
  }
  next.mu = std::max(0.0, duals.mu + alpha * (tx_power - config.power_budget));
  return next;
}

BeamformingMatrix initial_beamformer(Rng& rng, const SystemConfig& config) {
  BeamformingMatrix w(config.n_tx, config.n_users);
  for (int j = 0; j < config.n_users; ++j)
    for (int i = 0; i < config.n_tx; ++i) w(i, j) = rng.cgaussian();
  w *= std::sqrt(config.power_budget / 2.0 / w.squaredNorm());
  return w;
}

BeamformingMatrix initial_beamformer_gpgda(Rng& rng, const SystemConfig& config,
                                           const GpgdaPowerParams& power) {
  BeamformingMatrix w(config.n_tx, config.n_users);
  for (int j = 0; j < config.n_users; ++j)
    for (int i = 0; i < config.n_tx; ++i) w(i, j) = rng.cgaussian();
  // solve c^2*a + c*b = p_total/2 for the scale c
  const double a = w.squaredNorm() / power.eta_pa;
  double b = 0.0;
  for (int i = 0; i < config.n_tx; ++i)
    b += power.p_antenna * w.row(i).norm();
  const double target = power.p_total / 2.0;
  const double c = (-b + std::sqrt(b * b + 4.0 * a * target)) / (2.0 * a);
  return c * w;
}

SolveResult pgda_solve(const SystemConfig& config, const RadarScene& scene,
                       const CommChannel& channel, const ReliabilityMask& beta,
                       const BeamformingMatrix& w0, const SolverOptions& options,
                       const std::optional<DualState>& warm_duals) {
  config.validate();
  options.validate();
  if (beta.kind() != MaskKind::PerEntry)
    throw std::invalid_argument("pgda_solve: per-entry mask required");
  const CMatrix r = scene_covariance(config, scene);
  const double rho_s = config.sparsity_weight;

  DualState duals;
  if (warm_duals) {
    duals = *warm_duals;
  } else {
    duals.lambda1 = RVector::Constant(config.n_users, options.lambda1_init);
    duals.lambda2 = RVector::Constant(config.n_users, options.lambda2_init);
    duals.mu = options.mu_init;
  }

  BeamformingMatrix w = w0;
  SolveResult result;
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    RVector weights(config.n_users);
    for (int j = 0; j < config.n_users; ++j)
      weights[j] = config.bw_fractions_users[static_cast<size_t>(j)] +
                   duals.lambda1[j] - duals.lambda2[j];
    auto eval = [&](const BeamformingMatrix& x) {
      return smooth_value(x, r, channel, config.sigma2_r, config.sigma2_c,
                          config.bw_fraction_radar, weights, duals.mu);
    };

    CMatrix g = grad_smooth(w, r, channel, config.sigma2_r, config.sigma2_c,
                            config.bw_fraction_radar, weights, duals.mu);
    auto [x_new, eta] =
        backtrack_step(w, g, options.primal_step, eval, options.backtrack_factor,
                       options.max_backtracks, options.eta_min);
    BeamformingMatrix w_new =
        rho_s > 0.0
            ? prox_elementwise(x_new, elementwise_thresholds(eta, rho_s, beta))
            : x_new;

    const std::vector<double> se = se_all_users(channel, w_new, config.sigma2_c);
    const double power = tx_power(w_new);
    const double obj = eval(w_new);
    const double step_norm = (w_new - w).norm();

    IterationRecord rec;
    rec.iteration = iter;
    rec.smooth_objective = obj;
    rec.radar_mi = r.size() > 0 ? radar_mi(r, w_new, config.sigma2_r) : 0.0;
    rec.comm_weighted = 0.0;
    for (int j = 0; j < config.n_users; ++j)
      rec.comm_weighted += config.bw_fractions_users[static_cast<size_t>(j)] *
                           se[static_cast<size_t>(j)];
    rec.sparsity_penalty = elementwise_penalty(w_new, rho_s, beta);
    rec.tx_power = power;
    rec.se_per_user = se;
    rec.eta = eta;
    rec.step_norm = step_norm;

    if (!std::isfinite(obj) || !std::isfinite(step_norm)) {
      result.trace.rows.push_back(std::move(rec));
      throw DivergedError("pgda_solve: non-finite objective",
                          std::move(result.trace));
    }

    duals = dual_update(duals, se, power, config, options.dual_step);
    rec.duals = duals;
    result.trace.rows.push_back(std::move(rec));
    w = std::move(w_new);

    if (step_norm < options.tol) {
      result.converged = true;
      ++iter;
      break;
    }
  }

  result.w_star = std::move(w);
  result.duals = duals;
  result.iterations = iter;
  result.metrics =
      compute_metrics(config, r, channel, result.w_star, beta, rho_s);
  return result;
}

SolveResult gpgda_solve(const SystemConfig& config, const RadarScene& scene,
                        const CommChannel& channel,
                        const ReliabilityMask& beta_vec,
                        const GpgdaPowerParams& power,
                        const BeamformingMatrix& w0,
                        const SolverOptions& options,
                        const std::optional<DualState>& warm_duals) {
  config.validate();
  options.validate();
  power.validate();
  if (beta_vec.kind() != MaskKind::PerAntenna)
    throw std::invalid_argument("gpgda_solve: per-antenna mask required");
  const CMatrix r = scene_covariance(config, scene);
  const double rho_s = config.sparsity_weight;

  // lambda1 holds the per-user min-rate multipliers (mu_j), mu holds the
  // hybrid power multiplier (lambda); lambda2 is unused here.
  DualState duals;
  if (warm_duals) {
    duals = *warm_duals;
  } else {
    duals.lambda1 = RVector::Constant(config.n_users, options.lambda1_init);
    duals.lambda2 = RVector::Zero(config.n_users);
    duals.mu = options.mu_init;
  }

  BeamformingMatrix w = w0;
  SolveResult result;
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    RVector weights(config.n_users);
    for (int j = 0; j < config.n_users; ++j)
      weights[j] = config.bw_fractions_users[static_cast<size_t>(j)] +
                   duals.lambda1[j];
    const double mu_eff = duals.mu / power.eta_pa;
    auto eval = [&](const BeamformingMatrix& x) {
      return smooth_value(x, r, channel, config.sigma2_r, config.sigma2_c,
                          config.bw_fraction_radar, weights, mu_eff);
    };

    CMatrix g = grad_smooth(w, r, channel, config.sigma2_r, config.sigma2_c,
                            config.bw_fraction_radar, weights, mu_eff);
    auto [x_new, eta] =
        backtrack_step(w, g, options.primal_step, eval, options.backtrack_factor,
                       options.max_backtracks, options.eta_min);
    BeamformingMatrix w_new = prox_group_rows(
        x_new,
        row_thresholds(eta, rho_s, beta_vec, duals.mu, power.p_antenna));

    const std::vector<double> se = se_all_users(channel, w_new, config.sigma2_c);
    const double hybrid =
        hybrid_power_surrogate(w_new, power.eta_pa, power.p_antenna);
    const double obj = eval(w_new);
    const double step_norm = (w_new - w).norm();

    IterationRecord rec;
    rec.iteration = iter;
    rec.smooth_objective = obj;
    rec.radar_mi = r.size() > 0 ? radar_mi(r, w_new, config.sigma2_r) : 0.0;
    rec.comm_weighted = 0.0;
    for (int j = 0; j < config.n_users; ++j)
      rec.comm_weighted += config.bw_fractions_users[static_cast<size_t>(j)] *
                           se[static_cast<size_t>(j)];
    rec.sparsity_penalty = group_penalty(w_new, rho_s, beta_vec);
    rec.tx_power = tx_power(w_new);
    rec.se_per_user = se;
    rec.eta = eta;
    rec.step_norm = step_norm;

    if (!std::isfinite(obj) || !std::isfinite(step_norm)) {
      result.trace.rows.push_back(std::move(rec));
      throw DivergedError("gpgda_solve: non-finite objective",
                          std::move(result.trace));
    }

    DualState next = duals;
    for (int j = 0; j < config.n_users; ++j)
      next.lambda1[j] = std::max(
          0.0, duals.lambda1[j] +
                   options.dual_step * (config.rate_min[static_cast<size_t>(j)] -
                                        se[static_cast<size_t>(j)]));
    next.mu = std::max(
        0.0, duals.mu + options.dual_step * (hybrid - power.p_total));
    duals = next;
    rec.duals = duals;
    result.trace.rows.push_back(std::move(rec));
    w = std::move(w_new);

    if (step_norm < options.tol) {
      result.converged = true;
      ++iter;
      break;
    }
  }

  result.w_star = std::move(w);
  result.duals = duals;
  result.iterations = iter;
  result.metrics =
      compute_metrics(config, r, channel, result.w_star, beta_vec, rho_s);
  return result;
}

}  // namespace dfrc
