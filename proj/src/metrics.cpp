#include "dfrc/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>

#include "dfrc/scenario.hpp"

namespace dfrc {

namespace {
void format_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}
}  // namespace

double sinr(const CommChannel& channel, const BeamformingMatrix& w,
            double sigma2_c, int user_index) {
  if (sigma2_c <= 0.0) throw std::invalid_argument("sinr: sigma2_c must be > 0");
  const int m = static_cast<int>(w.cols());
  if (user_index < 0 || user_index >= m)
    throw std::invalid_argument("sinr: user index out of range");
  const CVector& hm = channel.h.col(user_index);
  double signal = std::norm(hm.dot(w.col(user_index)));
  double denom = sigma2_c;
  for (int j = 0; j < m; ++j) {
    if (j == user_index) continue;
    denom += std::norm(hm.dot(w.col(j)));
  }
  return signal / denom;
}

double spectral_efficiency(double gamma) { return std::log2(1.0 + gamma); }

std::vector<double> se_all_users(const CommChannel& channel,
                                 const BeamformingMatrix& w, double sigma2_c) {
  std::vector<double> se(static_cast<size_t>(w.cols()));
  for (int j = 0; j < w.cols(); ++j)
    se[static_cast<size_t>(j)] =
        spectral_efficiency(sinr(channel, w, sigma2_c, j));
  return se;
}

double radar_mi(const CMatrix& r, const BeamformingMatrix& w,
                double sigma2_r) {
  if (sigma2_r <= 0.0)
    throw std::invalid_argument("radar_mi: sigma2_r must be > 0");
  if (r.rows() != r.cols() || r.rows() != w.rows())
    throw std::invalid_argument("radar_mi: dimension mismatch");
  {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (r + CMatrix(r.adjoint())),
                                              Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
      throw std::invalid_argument("radar_mi: R is not PSD");
  }
  // M x M Hermitian form, symmetrized before the eigendecomposition
  CMatrix inner = w.adjoint() * r * w;
  inner = 0.5 * (inner + CMatrix(inner.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(inner, Eigen::EigenvaluesOnly);
  double mi = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = std::max(es.eigenvalues()[i], 0.0);
    mi += std::log2(1.0 + ev / sigma2_r);
  }
  return mi;
}

BeamformingMatrix apply_mask(const BeamformingMatrix& w,
                             const ReliabilityMask& mask) {
  if (mask.kind() == MaskKind::PerEntry) {
    if (mask.entries().rows() != w.rows() || mask.entries().cols() != w.cols())
      throw std::invalid_argument("apply_mask: dimension mismatch");
    return w.cwiseProduct(mask.entries().cast<Complex>());
  }
  if (mask.antennas().size() != w.rows())
    throw std::invalid_argument("apply_mask: dimension mismatch");
  return mask.antennas().cast<Complex>().asDiagonal() * w;
}

std::vector<double> beampattern(const BeamformingMatrix& w,
                                const std::vector<double>& theta_grid, int n_tx,
                                double spacing, double wavelength,
                                const std::optional<ReliabilityMask>& mask) {
  if (theta_grid.empty())
    throw std::invalid_argument("beampattern: empty angle grid");
  BeamformingMatrix wt = mask ? apply_mask(w, *mask) : w;
  std::vector<double> p(theta_grid.size());
  for (size_t i = 0; i < theta_grid.size(); ++i) {
    CVector a = steering_vector(theta_grid[i], n_tx, spacing, wavelength);
    double power = 0.0;
    for (int j = 0; j < wt.cols(); ++j) power += std::norm(a.dot(wt.col(j)));
    p[i] = power;
  }
  return p;
}

double density_pct(const BeamformingMatrix& w, double rel_threshold) {
  const double wmax = w.cwiseAbs().maxCoeff();
  if (wmax == 0.0) return 0.0;
  const double thr = rel_threshold * wmax;
  int count = 0;
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      if (std::abs(w(i, j)) > thr) ++count;
  return 100.0 * count / static_cast<double>(w.size());
}

double reliability_pct(const BeamformingMatrix& w, const ReliabilityMask& beta,
                       double rel_threshold) {
  const double wmax = w.cwiseAbs().maxCoeff();
  if (wmax == 0.0) return 0.0;
  const double thr = rel_threshold * wmax;
  double sum = 0.0;
  int count = 0;
  if (beta.kind() == MaskKind::PerEntry) {
    if (beta.entries().rows() != w.rows() || beta.entries().cols() != w.cols())
      throw std::invalid_argument("reliability_pct: dimension mismatch");
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        if (std::abs(w(i, j)) > thr) {
          sum += beta.entries()(i, j);
          ++count;
        }
  } else {
    if (beta.antennas().size() != w.rows())
      throw std::invalid_argument("reliability_pct: dimension mismatch");
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      if (w.row(i).cwiseAbs().maxCoeff() > thr) {
        sum += beta.antennas()[i];
        ++count;
      }
  }
  return count == 0 ? 0.0 : 100.0 * sum / count;
}

double tx_power(const BeamformingMatrix& w) { return w.squaredNorm(); }

MetricsRecord compute_metrics(const SystemConfig& config, const CMatrix& r,
                              const CommChannel& channel,
                              const BeamformingMatrix& w,
                              const ReliabilityMask& beta, double rho_s) {
  MetricsRecord rec;
  rec.rho_s = rho_s;
  rec.se_per_user = se_all_users(channel, w, config.sigma2_c);
  rec.rate_per_user.resize(rec.se_per_user.size());
  for (size_t j = 0; j < rec.se_per_user.size(); ++j)
    rec.rate_per_user[j] =
        rec.se_per_user[j] * config.user_bandwidth(static_cast<int>(j));
  rec.radar_mi = r.size() == 0 ? 0.0 : radar_mi(r, w, config.sigma2_r);
  rec.density_pct = density_pct(w);
  rec.reliability_pct = reliability_pct(w, beta);
  rec.tx_power = tx_power(w);
  return rec;
}

void write_metrics_csv_header(std::ostream& os, int n_users) {
  os << "rho_s";
  for (int j = 1; j <= n_users; ++j) os << ",se_" << j;
  for (int j = 1; j <= n_users; ++j) os << ",rate_" << j;
  os << ",radar_mi,density_pct,power,reliability_pct\n";
}

void write_metrics_csv_row(std::ostream& os, const MetricsRecord& rec) {
  format_double(os, rec.rho_s);
  for (double v : rec.se_per_user) {
    os << ',';
    format_double(os, v);
  }
  for (double v : rec.rate_per_user) {
    os << ',';
    format_double(os, v);
  }
  os << ',';
  format_double(os, rec.radar_mi);
  os << ',';
  format_double(os, rec.density_pct);
  os << ',';
  format_double(os, rec.tx_power);
  os << ',';
  format_double(os, rec.reliability_pct);
  os << '\n';
}

}  // namespace dfrc
