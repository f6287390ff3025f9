#pragma once

// Multiphoton coherent states as superpositions of k standard coherent states placed
// on a regular polygon, |z>_j = (1/k) sum_l mu^{-jl} |mu^l z>, mu = exp(2 pi i / k),
// together with position-space wavefunctions and their time dependence.

#include <complex>

#include <Eigen/Dense>

#include "mcskit/fock.hpp"

namespace mcskit {

/// mu^power with the exponent reduced mod k before evaluating the exponential.
std::complex<double> root_of_unity(int k, long power);

struct DftPair {
  Eigen::MatrixXcd forward;  ///< M_{jl} = mu^{jl}
  Eigen::MatrixXcd inverse;  ///< (1/k) mu^{-jl}
};

DftPair dft_matrix(int k);

/// Standard coherent state in the number basis: z^n / sqrt(n!) (unnormalized) or that
/// times exp(-|z|^2/2).
FockVector scs_fock(std::complex<double> z, Eigen::Index n_max, bool normalized = true);

/// Unnormalized |z>_j = sum_n z^{kn+j} / sqrt((kn+j)!) |kn+j>.
FockVector mcs_fock_unnormalized(int k, int j, std::complex<double> z, Eigen::Index n_max);

/// || |z>_j ||^2 from the SCS overlap <w|z> = exp(conj(w) z):
///   (1/k) sum_d mu^{-jd} exp(|z|^2 mu^d).
double unnormalized_mcs_norm_sq(int k, int j, std::complex<double> z);

/// The same norm from the ladder series |z|^{2j} S_{k,j}(|z|^{2k}).
double unnormalized_mcs_norm_sq_series(int k, int j, std::complex<double> z);

/// Normalized <x|z> = pi^{-1/4} exp(-(x - <x>)^2/2 + i <p> x - i <x><p>/2).
std::complex<double> scs_position_amplitude(std::complex<double> z, double x);

/// Normalized <p|z>.
std::complex<double> scs_momentum_amplitude(std::complex<double> z, double p);

/// sum_l weights[l] |mu^l z> over normalized standard coherent states.
struct ScsSuperposition {
  std::complex<double> z{0, 0};
  int k = 1;
  int j = 0;
  Eigen::VectorXcd weights;

  std::complex<double> center(int l) const { return root_of_unity(k, l) * z; }

  FockVector to_fock(Eigen::Index n_max) const;

  /// <x|U(t)|psi>. U(t)|w> = exp(-it/2) |w exp(-it)>.
  std::complex<double> position_amplitude(double x, double t = 0) const;
  std::complex<double> momentum_amplitude(double p, double t = 0) const;
};

/// The normalized |z>_j, phase-aligned with |alpha = z^k>_j built from the number
/// basis (positive first coefficient). DegenerateNorm if ||z>_j| is below 1e-300
/// relative to the SCS scale (j > 0 at z = 0).
ScsSuperposition mcs_as_scs(int k, int j, std::complex<double> z);

struct WaveSample {
  Eigen::VectorXd x;
  Eigen::VectorXcd values;
  double t = 0;

  Eigen::VectorXd density() const { return values.cwiseAbs2(); }
  /// Trapezoid integral of |psi|^2 (x must be ascending).
  double trapezoid_norm() const;
};

Eigen::VectorXd uniform_grid(double lo, double hi, Eigen::Index count);

/// [-12, 12] with 2048 points.
Eigen::VectorXd default_x_grid();

WaveSample scs_wavefunction(std::complex<double> z, const Eigen::VectorXd& x_grid);

/// Position wavefunction of U(t)|z>_j from the superposition of rotated Gaussians.
WaveSample mcs_wavefunction(int k, int j, std::complex<double> z, const Eigen::VectorXd& x_grid,
                            double t = 0);

/// Hermite-function synthesis of U(t)|state>.
WaveSample fock_wavefunction(const FockVector& state, const Eigen::VectorXd& x_grid,
                             double t = 0);

/// |psi_z^j(x, t)|^2, one row per entry of t_grid.
Eigen::MatrixXd density_movie(int k, int j, std::complex<double> z,
                              const Eigen::VectorXd& x_grid, const Eigen::VectorXd& t_grid);

}  // namespace mcskit
