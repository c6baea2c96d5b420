#pragma once

#include "dfrc/types.hpp"

namespace dfrc {

/// Phased-array power consumption model coefficients.
struct PowerModelParams {
  double eta_pa = 0.4;    // PA efficiency, (0,1]
  int dac_resolution = 1; // q, bits
  double sampling_rate = 0.0;
  double c1 = 0.0;  // static DAC coefficient
  double c2 = 0.0;  // dynamic DAC coefficient
  double p_mixer = 0.0;
  double p_lpf = 0.0;
  double p_hybrid_buffer = 0.0;

  void validate() const;
};

/// P / eta.
double pa_power(double transmit_power, double eta_pa);

/// c1 * f * q + c2 * 2^q.
double dac_power(const PowerModelParams& params);

/// PA power plus N_t * (2 P_DAC + 2 P_M + 2 P_LF + P_HB).
double total_power(const BeamformingMatrix& w, const PowerModelParams& params,
                   int n_tx);

/// Hybrid surrogate: sum_j ||w_j||^2 / eta + P_A * sum_i ||row_i||_2.
double hybrid_power_surrogate(const BeamformingMatrix& w, double eta_pa,
                              double p_antenna);

}  // namespace dfrc
