#pragma once

// Wigner quasi-probability distributions on a rectangular (q, p) grid.
//
// Closed forms cover standard coherent states and the k = 2, 3 cat families. All
// closed forms are normalized so the field integrates to one; the overall constants
// follow from the analytic integral of each cross term,
//   iint exp(-(q - a)^2 - (p - b)^2) dq dp = pi   for complex a, b.

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "mcskit/fock.hpp"
#include "mcskit/scs.hpp"

namespace mcskit {

struct PhaseGrid {
  double q_min = -8;
  double q_max = 8;
  double p_min = -8;
  double p_max = 8;
  Eigen::Index n_q = 257;
  Eigen::Index n_p = 257;

  const PhaseGrid& validate() const;
  double dq() const { return (q_max - q_min) / double(n_q - 1); }
  double dp() const { return (p_max - p_min) / double(n_p - 1); }
  double q(Eigen::Index i) const { return i == n_q - 1 ? q_max : q_min + dq() * double(i); }
  double p(Eigen::Index j) const { return j == n_p - 1 ? p_max : p_min + dp() * double(j); }
};

struct WignerField {
  PhaseGrid grid;
  Eigen::MatrixXd values;   ///< values(i, j) = W(q_i, p_j)
  double imag_residue = 0;  ///< largest |Im W| seen by the numerical route

  /// Trapezoid iint W dq dp.
  double integral() const;
  /// Bilinear interpolation; zero outside the grid.
  double sample(double q, double p) const;
};

/// Uniform trapezoid rule for the y-integral of the defining Wigner transform.
struct WignerQuadrature {
  double half_width = 10;
  Eigen::Index points = 4096;
  /// Largest |psi*(q+Y) psi(q-Y)| accepted at the window edge.
  double envelope_tolerance = 1e-16;
};

using Wavefunction = std::function<std::complex<double>(double)>;

/// W(q,p) = (1/pi) int psi*(q+y) psi(q-y) exp(2ipy) dy. Throws WindowTooNarrow when the
/// integrand has not decayed at the edge of the y-window.
WignerField wigner_numeric(const Wavefunction& psi, const PhaseGrid& grid,
                           const WignerQuadrature& quadrature = {});

/// Numerical Wigner function of U(t) applied to a superposition of coherent states.
WignerField wigner_numeric(const ScsSuperposition& state, const PhaseGrid& grid,
                           const WignerQuadrature& quadrature = {}, double t = 0);

/// Numerical Wigner function of a Fock-basis state via Hermite synthesis.
WignerField wigner_numeric(const FockVector& state, const PhaseGrid& grid,
                           const WignerQuadrature& quadrature = {});

/// (1/pi) exp(-(q - <q>)^2) exp(-(p - <p>)^2).
WignerField wigner_scs(std::complex<double> z, const PhaseGrid& grid);

/// Even (j = 0) and odd (j = 1) cat states built on |z> and |-z>.
WignerField wigner_cat2(int j, std::complex<double> z, const PhaseGrid& grid);

/// The three k = 3 states built on |z>, |mu z>, |mu^2 z>.
WignerField wigner_cat3(int j, std::complex<double> z, const PhaseGrid& grid);

/// Closed form for any superposition of coherent states, evolved by t: sum over all
/// pairs of the analytic cross-Wigner functions.
WignerField wigner_superposition(const ScsSuperposition& state, const PhaseGrid& grid,
                                 double t = 0);

struct Marginals {
  Eigen::VectorXd position;  ///< int W dp at each q_i
  Eigen::VectorXd momentum;  ///< int W dq at each p_j
};

/// Trapezoid marginals. Throws BoundaryMass if |W| exceeds boundary_tolerance anywhere on
/// the grid boundary.
Marginals marginals(const WignerField& field, double boundary_tolerance = 1e-10);

struct MarginalReport {
  Marginals marginals;
  Eigen::VectorXd position_density;  ///< |psi(q_i)|^2
  Eigen::VectorXd momentum_density;  ///< |phi(p_j)|^2
  double position_deviation = 0;
  double momentum_deviation = 0;
};

/// Marginals compared against the wavefunction densities of `state` evolved by t.
MarginalReport marginal_check(const WignerField& field, const ScsSuperposition& state,
                              double t = 0, double boundary_tolerance = 1e-10);

/// iint max(-W, 0) dq dp.
double negativity_volume(const WignerField& field);

/// Tr rho^2 = 2 pi iint W^2 dq dp (one for pure states).
double purity(const WignerField& field);

double sup_difference(const WignerField& a, const WignerField& b);

}  // namespace mcskit
