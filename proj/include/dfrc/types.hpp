#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace dfrc {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Beamforming matrix W, N_t x M; column j beams toward user j, row i is
/// antenna i's weights across users.
using BeamformingMatrix = CMatrix;

/// Full DFRC system description: array geometry, users, noise, power budget,
/// bandwidth split and objective weights.
struct SystemConfig {
  int n_tx = 10;
  int n_rx = 10;
  int n_users = 4;
  int n_targets = 4;
  int frame_len = 32;
  double wavelength = 0.0107;   // meters
  double spacing = 0.00535;     // meters, defaults to wavelength/2
  double sigma2_c = 0.1;
  double sigma2_r = 0.1;
  double power_budget = 1.0;
  double total_bandwidth = 28e9;          // Hz
  double bw_fraction_radar = 0.0148;      // rho_r
  std::vector<double> bw_fractions_users; // rho_j
  std::vector<double> rate_min;           // bits/s/Hz per user
  std::vector<double> rate_max;           // bits/s/Hz per user
  double sparsity_weight = 0.0;           // rho_s

  // Bandwidth allocated to user j in Hz.
  double user_bandwidth(int j) const {
    return bw_fractions_users.at(static_cast<size_t>(j)) * total_bandwidth;
  }

  void validate() const;
};

enum class MaskKind { PerEntry, PerAntenna };

/// Antenna health values in [0,1]; 1 = fully operational, 0 = failed.
class ReliabilityMask {
 public:
  static ReliabilityMask per_entry(RMatrix values);
  static ReliabilityMask per_antenna(RVector values);

  MaskKind kind() const { return kind_; }
  const RMatrix& entries() const { return entries_; }
  const RVector& antennas() const { return antennas_; }
  int n_tx() const {
    return kind_ == MaskKind::PerEntry ? static_cast<int>(entries_.rows())
                                       : static_cast<int>(antennas_.size());
  }

 private:
  ReliabilityMask() = default;
  MaskKind kind_ = MaskKind::PerEntry;
  RMatrix entries_;
  RVector antennas_;
};

/// Point-target environment: angles, expected strengths and complex
/// amplitudes for K targets.
struct RadarScene {
  RVector angles;      // radians, in (-pi/2, pi/2)
  RVector strengths;   // sigma_k^2 >= 0
  CVector amplitudes;  // alpha_k

  int n_targets() const { return static_cast<int>(angles.size()); }
  void validate() const;
};

struct CommChannel {
  CMatrix h;  // N_t x M, column j is user j's channel
};

/// Multipliers for min-rate, max-rate and power constraints.
struct DualState {
  RVector lambda1;
  RVector lambda2;
  double mu = 0.0;
};

struct MetricsRecord {
  double rho_s = 0.0;
  std::vector<double> se_per_user;    // bits/s/Hz
  std::vector<double> rate_per_user;  // bits/s
  double radar_mi = 0.0;              // bits
  double density_pct = 0.0;
  double reliability_pct = 0.0;
  double tx_power = 0.0;
};

}  // namespace dfrc
