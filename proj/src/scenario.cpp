#include "dfrc/scenario.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace dfrc {

void SystemConfig::validate() const {
  if (n_tx < 1 || n_rx < 1 || n_users < 1 || n_targets < 0)
    throw std::invalid_argument("SystemConfig: counts must be positive");
  if (frame_len < n_tx)
    throw std::invalid_argument("SystemConfig: frame_len must be >= n_tx");
  if (wavelength <= 0.0 || spacing <= 0.0)
    throw std::invalid_argument("SystemConfig: geometry must be positive");
  if (sigma2_c <= 0.0 || sigma2_r <= 0.0)
    throw std::invalid_argument("SystemConfig: noise variances must be positive");
  if (power_budget <= 0.0 || total_bandwidth <= 0.0)
    throw std::invalid_argument("SystemConfig: budget/bandwidth must be positive");
  if (bw_fraction_radar < 0.0 || bw_fraction_radar >= 1.0)
    throw std::invalid_argument("SystemConfig: bw_fraction_radar out of range");
  if (sparsity_weight < 0.0)
    throw std::invalid_argument("SystemConfig: sparsity_weight must be >= 0");
  const size_t m = static_cast<size_t>(n_users);
  if (bw_fractions_users.size() != m || rate_min.size() != m ||
      rate_max.size() != m)
    throw std::invalid_argument("SystemConfig: per-user sequences must have length M");
  double sum = bw_fraction_radar;
  for (double f : bw_fractions_users) {
    if (f <= 0.0) throw std::invalid_argument("SystemConfig: fractions must be > 0");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("SystemConfig: bandwidth fractions must sum to 1");
  for (size_t j = 0; j < m; ++j)
    if (!(rate_min[j] < rate_max[j]))
      throw std::invalid_argument("SystemConfig: rate_min must be < rate_max");
}

ReliabilityMask ReliabilityMask::per_entry(RMatrix values) {
  if ((values.array() < 0.0).any() || (values.array() > 1.0).any())
    throw std::invalid_argument("ReliabilityMask: values must lie in [0,1]");
  ReliabilityMask m;
  m.kind_ = MaskKind::PerEntry;
  m.entries_ = std::move(values);
  return m;
}

ReliabilityMask ReliabilityMask::per_antenna(RVector values) {
  if ((values.array() < 0.0).any() || (values.array() > 1.0).any())
    throw std::invalid_argument("ReliabilityMask: values must lie in [0,1]");
  ReliabilityMask m;
  m.kind_ = MaskKind::PerAntenna;
  m.antennas_ = std::move(values);
  return m;
}

void RadarScene::validate() const {
  const auto k = angles.size();
  if (strengths.size() != k || amplitudes.size() != k)
    throw std::invalid_argument("RadarScene: field lengths disagree");
  const double half_pi = std::numbers::pi / 2.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(angles[i] >= -half_pi && angles[i] <= half_pi))
      throw std::invalid_argument("RadarScene: angle out of [-pi/2, pi/2]");
    if (strengths[i] < 0.0)
      throw std::invalid_argument("RadarScene: negative target strength");
  }
}

CVector steering_vector(double theta, int n, double spacing,
                        double wavelength) {
  if (n < 1) throw std::invalid_argument("steering_vector: n must be >= 1");
  if (wavelength <= 0.0)
    throw std::invalid_argument("steering_vector: wavelength must be > 0");
  const double phase_step =
      2.0 * std::numbers::pi / wavelength * spacing * std::sin(theta);
  CVector a(n);
  for (int m = 0; m < n; ++m)
    a[m] = std::polar(1.0, phase_step * static_cast<double>(m));
  return a;
}

CMatrix target_response(const RadarScene& scene, int n_tx, int n_rx,
                        double spacing, double wavelength) {
  scene.validate();
  if (scene.n_targets() < 1)
    throw std::invalid_argument("target_response: need at least one target");
  CMatrix g = CMatrix::Zero(n_rx, n_tx);
  for (int k = 0; k < scene.n_targets(); ++k) {
    CVector a = steering_vector(scene.angles[k], n_tx, spacing, wavelength);
    CVector b = steering_vector(scene.angles[k], n_rx, spacing, wavelength);
    g.noalias() += scene.amplitudes[k] * b * a.adjoint();
  }
  return g;
}

CMatrix radar_covariance(const RadarScene& scene, int n_tx, double spacing,
                         double wavelength) {
  scene.validate();
  if (scene.n_targets() < 1)
    throw std::invalid_argument("radar_covariance: need at least one target");
  CMatrix r = CMatrix::Zero(n_tx, n_tx);
  for (int k = 0; k < scene.n_targets(); ++k) {
    CVector a = steering_vector(scene.angles[k], n_tx, spacing, wavelength);
    r.noalias() += scene.strengths[k] * a * a.adjoint();
  }
  // exact Hermitian symmetry for downstream eigendecompositions
  r = 0.5 * (r + CMatrix(r.adjoint()));
  return r;
}

CommChannel sample_channel(Rng& rng, int n_tx, int n_users) {
  if (n_tx < 1 || n_users < 1)
    throw std::invalid_argument("sample_channel: invalid dimensions");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_tx));
  CMatrix h(n_tx, n_users);
  for (int j = 0; j < n_users; ++j)
    for (int i = 0; i < n_tx; ++i) h(i, j) = scale * rng.cgaussian();
  return CommChannel{std::move(h)};
}

CMatrix sample_symbols(Rng& rng, int n_users, int frame_len) {
  if (frame_len < n_users)
    throw std::invalid_argument("sample_symbols: frame_len must be >= n_users");
  CMatrix s(n_users, frame_len);
  for (int l = 0; l < frame_len; ++l)
    for (int m = 0; m < n_users; ++m) s(m, l) = rng.cgaussian();
  return s;
}

namespace {
CMatrix awgn(Eigen::Index rows, Eigen::Index cols, double sigma2, Rng& rng) {
  CMatrix n(rows, cols);
  const double sd = std::sqrt(sigma2);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) n(r, c) = sd * rng.cgaussian();
  return n;
}
}  // namespace

CMatrix synthesize_rx_radar(const CMatrix& g, const BeamformingMatrix& w,
                            const CMatrix& s, double sigma2_r, Rng& rng) {
  if (g.cols() != w.rows() || w.cols() != s.rows())
    throw std::invalid_argument("synthesize_rx_radar: dimension mismatch");
  if (sigma2_r < 0.0)
    throw std::invalid_argument("synthesize_rx_radar: negative variance");
  CMatrix y = g * w * s;
  if (sigma2_r > 0.0) y += awgn(y.rows(), y.cols(), sigma2_r, rng);
  return y;
}

CMatrix synthesize_rx_comm(const CommChannel& channel,
                           const BeamformingMatrix& w, const CMatrix& s,
                           double sigma2_c, Rng& rng) {
  if (channel.h.rows() != w.rows() || w.cols() != s.rows())
    throw std::invalid_argument("synthesize_rx_comm: dimension mismatch");
  if (sigma2_c < 0.0)
    throw std::invalid_argument("synthesize_rx_comm: negative variance");
  CMatrix y = channel.h.adjoint() * w * s;
  if (sigma2_c > 0.0) y += awgn(y.rows(), y.cols(), sigma2_c, rng);
  return y;
}

RadarScene sample_scene(Rng& rng, int n_targets) {
  RadarScene scene;
  scene.angles.resize(n_targets);
  scene.strengths = RVector::Ones(n_targets);
  scene.amplitudes.resize(n_targets);
  const double third_pi = std::numbers::pi / 3.0;
  for (int k = 0; k < n_targets; ++k) {
    scene.angles[k] = third_pi * (2.0 * rng.uniform() - 1.0);
    scene.amplitudes[k] = rng.cgaussian();
  }
  return scene;
}

}  // namespace dfrc
