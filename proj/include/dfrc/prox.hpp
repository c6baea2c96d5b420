#pragma once

#include "dfrc/types.hpp"

namespace dfrc {

/// Complex magnitude shrinkage: w * max(1 - kappa/|w|, 0).
Complex soft_threshold_entry(Complex w, double kappa);

/// Per-entry thresholds kappa_ij = eta * rho_s * (1 - beta_ij).
RMatrix elementwise_thresholds(double eta, double rho_s,
                               const ReliabilityMask& beta);

/// Row thresholds tau_i = eta * (rho_s * (1 - beta_i') + lambda * p_antenna).
RVector row_thresholds(double eta, double rho_s, const ReliabilityMask& beta,
                       double lambda, double p_antenna);

/// Entrywise soft thresholding, the exact prox of the weighted l1 penalty.
BeamformingMatrix prox_elementwise(const BeamformingMatrix& w,
                                   const RMatrix& kappa);

/// Row-group shrinkage: row i scaled by max(1 - tau_i/||row_i||_2, 0).
BeamformingMatrix prox_group_rows(const BeamformingMatrix& w,
                                  const RVector& tau);

}  // namespace dfrc
