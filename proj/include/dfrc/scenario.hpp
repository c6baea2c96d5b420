#pragma once

#include "dfrc/rng.hpp"
#include "dfrc/types.hpp"

namespace dfrc {

/// ULA array response toward angle theta; element m has phase
/// 2*pi/lambda * d * m * sin(theta), element 0 is 1.
CVector steering_vector(double theta, int n, double spacing, double wavelength);

/// Target response G = sum_k alpha_k b(theta_k) a(theta_k)^H, N_r x N_t.
CMatrix target_response(const RadarScene& scene, int n_tx, int n_rx,
                        double spacing, double wavelength);

/// Transmit-side radar channel covariance R = sum_k sigma_k^2 a a^H,
/// N_t x N_t Hermitian PSD.
CMatrix radar_covariance(const RadarScene& scene, int n_tx, double spacing,
                         double wavelength);

/// i.i.d. CN(0,1) entries scaled by 1/sqrt(N_t).
CommChannel sample_channel(Rng& rng, int n_tx, int n_users);

/// M x L frame of i.i.d. CN(0,1) symbols.
CMatrix sample_symbols(Rng& rng, int n_users, int frame_len);

/// Radar receive branch: G*W*S + noise, entries CN(0, sigma2_r).
CMatrix synthesize_rx_radar(const CMatrix& g, const BeamformingMatrix& w,
                            const CMatrix& s, double sigma2_r, Rng& rng);

/// Communication receive branch: H^H*W*S + noise, entries CN(0, sigma2_c).
CMatrix synthesize_rx_comm(const CommChannel& channel,
                           const BeamformingMatrix& w, const CMatrix& s,
                           double sigma2_c, Rng& rng);

/// Default experiment scene: angles uniform on (-pi/3, pi/3), unit
/// strengths, CN(0,1) amplitudes.
RadarScene sample_scene(Rng& rng, int n_targets);

}  // namespace dfrc
