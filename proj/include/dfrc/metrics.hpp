#pragma once

#include <optional>
#include <ostream>

#include "dfrc/types.hpp"

namespace dfrc {

/// SINR of user m under beamformer W.
double sinr(const CommChannel& channel, const BeamformingMatrix& w,
            double sigma2_c, int user_index);

/// log2(1 + gamma), bits/s/Hz.
double spectral_efficiency(double gamma);

std::vector<double> se_all_users(const CommChannel& channel,
                                 const BeamformingMatrix& w, double sigma2_c);

/// Radar mutual information log2 det(I_M + sigma^-2 W^H R W), bits.
double radar_mi(const CMatrix& r, const BeamformingMatrix& w, double sigma2_r);

/// Transmit power pattern over an angle grid, sum_j |a(theta)^H w_j|^2.
/// A supplied mask scales rows (per-antenna) or entries (per-entry) of W.
std::vector<double> beampattern(const BeamformingMatrix& w,
                                const std::vector<double>& theta_grid, int n_tx,
                                double spacing, double wavelength,
                                const std::optional<ReliabilityMask>& mask = {});

/// Masked copy of W: rows or entries scaled by beta.
BeamformingMatrix apply_mask(const BeamformingMatrix& w,
                             const ReliabilityMask& mask);

/// Percentage of entries with |w_ij| > rel_threshold * max|w|.
double density_pct(const BeamformingMatrix& w, double rel_threshold = 1e-6);

/// Mean of beta over the support of W, as a percentage. Zero W maps to 0.
double reliability_pct(const BeamformingMatrix& w, const ReliabilityMask& beta,
                       double rel_threshold = 1e-6);

/// trace(W W^H), the squared Frobenius norm.
double tx_power(const BeamformingMatrix& w);

/// Assembles the full reporting record for a solution.
MetricsRecord compute_metrics(const SystemConfig& config, const CMatrix& r,
                              const CommChannel& channel,
                              const BeamformingMatrix& w,
                              const ReliabilityMask& beta, double rho_s);

void write_metrics_csv_header(std::ostream& os, int n_users);
void write_metrics_csv_row(std::ostream& os, const MetricsRecord& rec);

}  // namespace dfrc
