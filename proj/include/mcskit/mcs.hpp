#pragma once

// Multiphoton coherent states |alpha>_j: eigenstates of (a^-)^k supported on the
// ladder |kn + j>, together with their quadrature statistics, mean energy and the
// geometric phase of their cyclic evolution.

#include <complex>

#include "mcskit/fock.hpp"

namespace mcskit {

struct McsLabel {
  int k = 1;
  int j = 0;
  std::complex<double> alpha{0, 0};

  /// Throws InvalidArgument unless k >= 1, 0 <= j < k and alpha is finite.
  const McsLabel& validate() const;
};

/// Normalized |alpha>_j truncated to n_max levels. Throws TailTooHeavy when the
/// probability above n_max exceeds `tail_tolerance`.
FockVector build_mcs(const McsLabel& label, Eigen::Index n_max = kDefaultNMax,
                     double tail_tolerance = kDefaultLeakageTol);

/// Probability carried by |kn + j> with kn + j >= n_max.
double mcs_tail_mass(const McsLabel& label, Eigen::Index n_max);

/// || (a^-)^k state - alpha state ||
double eigenvalue_residual(const McsLabel& label, const FockVector& state);

struct MomentSet {
  double mean_x = 0;
  double mean_p = 0;
  double mean_x2 = 0;
  double mean_p2 = 0;
  double var_x = 0;
  double var_p = 0;
  double uncertainty_product = 0;  ///< (Delta x)(Delta p)
  double a_norm_sq = 0;            ///< || a |alpha>_j ||^2
  double mean_H = 0;
};

/// || a |alpha>_j ||^2 from ratios of the normalization series.
double a_norm_sq_series(const McsLabel& label);

/// Closed hyperbolic (k = 2) and trigonometric-exponential (k = 3) forms of
/// || a |alpha>_j ||^2. Throws UnsupportedOrder for other k. At alpha = 0 the
/// removable singularity is resolved by the series limit.
double a_norm_closed(const McsLabel& label);

/// Moments from the series formulas for <x^2>, <p^2>, the uncertainty product and <H>.
MomentSet moments_series(const McsLabel& label);

/// Moments from matrix elements of x and p on an explicit state.
MomentSet moments_from_state(const FockVector& state);

struct MomentOptions {
  Eigen::Index n_max = kDefaultNMax;
  double route_tolerance = 1e-10;
  bool cross_check = true;
};

/// Series moments, checked against the matrix-element route on build_mcs(label).
/// Throws RouteDiscrepancy (message lists both values) if they disagree.
MomentSet moments(const McsLabel& label, const MomentOptions& options = {});

/// beta_j = (2 pi / k) (|| a |alpha>_j ||^2 - j)
double geometric_phase(const McsLabel& label);

/// beta = phi + tau <H> with phi = -(2j+1) pi / k, tau = 2 pi / k.
double geometric_phase_dynamical(const McsLabel& label);

/// Closed forms of beta_j for k = 2, 3; UnsupportedOrder otherwise.
double geometric_phase_closed(const McsLabel& label);

/// Geometric phase measured on a state: phi from arg <psi|U(2 pi/k)|psi> taken on the
/// branch (-2 pi, 0], <H> from the Hamiltonian's expectation value.
double geometric_phase_from_state(const FockVector& state, int k);

}  // namespace mcskit
