#pragma once

#include <functional>

#include "dfrc/types.hpp"

namespace dfrc {

/// Conjugate (Wirtinger d/dW*) ascent directions of the smooth Lagrangian
/// terms. Adding eta * g to W increases the term for small eta.

/// Radar term rho_r * log2 det(I_M + sigma^-2 W^H R W):
/// rho_r * sigma^-2 * R W (I + sigma^-2 W^H R W)^-1 / ln 2.
CMatrix grad_radar(const BeamformingMatrix& w, const CMatrix& r,
                   double sigma2_r, double rho_r);

/// Weighted communication term sum_m weight_m * log2(1 + gamma_m).
CMatrix grad_comm(const BeamformingMatrix& w, const CommChannel& channel,
                  double sigma2_c, const RVector& weights);

/// Power penalty -mu * trace(W W^H): returns -mu * W.
CMatrix grad_power_term(const BeamformingMatrix& w, double mu);

/// Smooth Lagrangian value with per-user weights and effective power
/// multiplier: rho_r*MI + sum_j weight_j*SE_j - mu_eff*||W||_F^2.
/// Pass an empty R (size 0) to drop the radar term.
double smooth_value(const BeamformingMatrix& w, const CMatrix& r,
                    const CommChannel& channel, double sigma2_r,
                    double sigma2_c, double rho_r, const RVector& weights,
                    double mu_eff);

/// Gradient of smooth_value with the same parameterization.
CMatrix grad_smooth(const BeamformingMatrix& w, const CMatrix& r,
                    const CommChannel& channel, double sigma2_r,
                    double sigma2_c, double rho_r, const RVector& weights,
                    double mu_eff);

/// PGDA assembly: weights_j = rho_j + lambda1_j - lambda2_j, mu_eff = mu.
CMatrix grad_lagrangian_smooth(const BeamformingMatrix& w, const CMatrix& r,
                               const CommChannel& channel,
                               const DualState& duals,
                               const SystemConfig& config);

/// Central-difference conjugate gradient of an arbitrary real functional,
/// used as the verification oracle. h = 0 selects the default step.
CMatrix fd_oracle(const std::function<double(const BeamformingMatrix&)>& f,
                  const BeamformingMatrix& w, double h = 0.0);

}  // namespace dfrc
