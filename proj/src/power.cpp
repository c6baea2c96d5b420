#include "dfrc/power.hpp"

#include <cmath>

#include "dfrc/metrics.hpp"

namespace dfrc {

void PowerModelParams::validate() const {
  if (!(eta_pa > 0.0 && eta_pa <= 1.0))
    throw std::invalid_argument("PowerModelParams: eta_pa must be in (0,1]");
  if (dac_resolution < 1)
    throw std::invalid_argument("PowerModelParams: dac_resolution must be >= 1");
  if (sampling_rate < 0.0 || c1 < 0.0 || c2 < 0.0 || p_mixer < 0.0 ||
      p_lpf < 0.0 || p_hybrid_buffer < 0.0)
    throw std::invalid_argument("PowerModelParams: coefficients must be >= 0");
}

double pa_power(double transmit_power, double eta_pa) {
  if (eta_pa <= 0.0) throw std::invalid_argument("pa_power: eta_pa must be > 0");
  return transmit_power / eta_pa;
}

double dac_power(const PowerModelParams& params) {
  return params.c1 * params.sampling_rate * params.dac_resolution +
         params.c2 * std::ldexp(1.0, params.dac_resolution);
}

double total_power(const BeamformingMatrix& w, const PowerModelParams& params,
                   int n_tx) {
  params.validate();
  const double rf = 2.0 * params.p_mixer + 2.0 * params.p_lpf +
                    params.p_hybrid_buffer;
  return pa_power(tx_power(w), params.eta_pa) +
         n_tx * (2.0 * dac_power(params) + rf);
}

double hybrid_power_surrogate(const BeamformingMatrix& w, double eta_pa,
                              double p_antenna) {
  if (eta_pa <= 0.0)
    throw std::invalid_argument("hybrid_power_surrogate: eta_pa must be > 0");
  double row_norm_sum = 0.0;
  for (Eigen::Index i = 0; i < w.rows(); ++i) row_norm_sum += w.row(i).norm();
  return tx_power(w) / eta_pa + p_antenna * row_norm_sum;
}

}  // namespace dfrc
