#include "dfrc/gradients.hpp"

#include <cmath>

#include "dfrc/metrics.hpp"

namespace dfrc {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
}

CMatrix grad_radar(const BeamformingMatrix& w, const CMatrix& r,
                   double sigma2_r, double rho_r) {
  if (sigma2_r <= 0.0)
    throw std::invalid_argument("grad_radar: sigma2_r must be > 0");
  if (r.rows() != w.rows() || r.cols() != w.rows())
    throw std::invalid_argument("grad_radar: dimension mismatch");
  if (rho_r == 0.0) return CMatrix::Zero(w.rows(), w.cols());
  const double c = 1.0 / sigma2_r;
  const Eigen::Index m = w.cols();
  CMatrix rw = r * w;
  CMatrix inner = CMatrix::Identity(m, m) + c * w.adjoint() * rw;
  // I + PSD, always invertible
  CMatrix g = (rho_r * c / kLn2) * rw * inner.inverse();
  return g;
}

CMatrix grad_comm(const BeamformingMatrix& w, const CommChannel& channel,
                  double sigma2_c, const RVector& weights) {
  if (sigma2_c <= 0.0)
    throw std::invalid_argument("grad_comm: sigma2_c must be > 0");
  const Eigen::Index m = w.cols();
  if (weights.size() != m)
    throw std::invalid_argument("grad_comm: weights length mismatch");
  CMatrix g = CMatrix::Zero(w.rows(), w.cols());
  // hdotw(m, j) = h_m^H w_j
  CMatrix hdotw = channel.h.adjoint() * w;
  for (Eigen::Index um = 0; um < m; ++um) {
    double denom = sigma2_c;
    for (Eigen::Index j = 0; j < m; ++j)
      if (j != um) denom += std::norm(hdotw(um, j));
    const double gamma = std::norm(hdotw(um, um)) / denom;
    const double base = weights[um] / ((1.0 + gamma) * denom * kLn2);
    const CVector& hm = channel.h.col(um);
    // own-signal term on column um
    g.col(um) += base * hdotw(um, um) * hm;
    // interference pushback on every other column
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == um) continue;
      g.col(j) -= base * gamma * hdotw(um, j) * hm;
    }
  }
  return g;
}

CMatrix grad_power_term(const BeamformingMatrix& w, double mu) {
  if (mu < 0.0) throw std::invalid_argument("grad_power_term: mu must be >= 0");
  return -mu * w;
}

double smooth_value(const BeamformingMatrix& w, const CMatrix& r,
                    const CommChannel& channel, double sigma2_r,
                    double sigma2_c, double rho_r, const RVector& weights,
                    double mu_eff) {
  double v = 0.0;
  if (rho_r != 0.0 && r.size() > 0) v += rho_r * radar_mi(r, w, sigma2_r);
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    if (weights[j] != 0.0)
      v += weights[j] * spectral_efficiency(
                            sinr(channel, w, sigma2_c, static_cast<int>(j)));
  v -= mu_eff * w.squaredNorm();
  return v;
}

CMatrix grad_smooth(const BeamformingMatrix& w, const CMatrix& r,
                    const CommChannel& channel, double sigma2_r,
                    double sigma2_c, double rho_r, const RVector& weights,
                    double mu_eff) {
  CMatrix g = grad_comm(w, channel, sigma2_c, weights);
  if (rho_r != 0.0 && r.size() > 0) g += grad_radar(w, r, sigma2_r, rho_r);
  if (mu_eff != 0.0) g += grad_power_term(w, mu_eff);
  return g;
}

CMatrix grad_lagrangian_smooth(const BeamformingMatrix& w, const CMatrix& r,
                               const CommChannel& channel,
                               const DualState& duals,
                               const SystemConfig& config) {
  RVector weights(w.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    weights[j] = config.bw_fractions_users[static_cast<size_t>(j)] +
                 duals.lambda1[j] - duals.lambda2[j];
  return grad_smooth(w, r, channel, config.sigma2_r, config.sigma2_c,
                     config.bw_fraction_radar, weights, duals.mu);
}

CMatrix fd_oracle(const std::function<double(const BeamformingMatrix&)>& f,
                  const BeamformingMatrix& w, double h) {
  if (h <= 0.0) h = 1e-6 * (1.0 + w.cwiseAbs().maxCoeff());
  CMatrix g(w.rows(), w.cols());
  BeamformingMatrix wp = w;
  auto probe = [&](Eigen::Index i, Eigen::Index j, Complex delta) {
    wp(i, j) = w(i, j) + delta;
    double v = f(wp);
    wp(i, j) = w(i, j);
    if (!std::isfinite(v))
      throw std::runtime_error("fd_oracle: non-finite functional value");
    return v;
  };
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      double dre = (probe(i, j, {h, 0}) - probe(i, j, {-h, 0})) / (2.0 * h);
      double dim = (probe(i, j, {0, h}) - probe(i, j, {0, -h})) / (2.0 * h);
      // conjugate-gradient convention: (d/dRe + j d/dIm) / 2
      g(i, j) = Complex(dre / 2.0, dim / 2.0);
    }
  }
  return g;
}

}  // namespace dfrc
