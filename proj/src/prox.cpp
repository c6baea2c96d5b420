#include "dfrc/prox.hpp"

#include <cmath>

namespace dfrc {

Complex soft_threshold_entry(Complex w, double kappa) {
  const double mag = std::abs(w);
  if (mag <= kappa || mag == 0.0) return {0.0, 0.0};
  return w * (1.0 - kappa / mag);
}

RMatrix elementwise_thresholds(double eta, double rho_s,
                               const ReliabilityMask& beta) {
  if (beta.kind() != MaskKind::PerEntry)
    throw std::invalid_argument("elementwise_thresholds: per-entry mask required");
  return eta * rho_s * (1.0 - beta.entries().array());
}

RVector row_thresholds(double eta, double rho_s, const ReliabilityMask& beta,
                       double lambda, double p_antenna) {
  if (beta.kind() != MaskKind::PerAntenna)
    throw std::invalid_argument("row_thresholds: per-antenna mask required");
  return eta * (rho_s * (1.0 - beta.antennas().array()) + lambda * p_antenna);
}

BeamformingMatrix prox_elementwise(const BeamformingMatrix& w,
                                   const RMatrix& kappa) {
  if (kappa.rows() != w.rows() || kappa.cols() != w.cols())
    throw std::invalid_argument("prox_elementwise: dimension mismatch");
  BeamformingMatrix z(w.rows(), w.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      z(i, j) = soft_threshold_entry(w(i, j), kappa(i, j));
  return z;
}

BeamformingMatrix prox_group_rows(const BeamformingMatrix& w,
                                  const RVector& tau) {
  if (tau.size() != w.rows())
    throw std::invalid_argument("prox_group_rows: dimension mismatch");
  BeamformingMatrix z = w;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    const double norm = w.row(i).norm();
    if (norm <= tau[i] || norm == 0.0)
      z.row(i).setZero();
    else
      z.row(i) *= 1.0 - tau[i] / norm;
  }
  return z;
}

}  // namespace dfrc
