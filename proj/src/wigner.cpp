#include "mcskit/wigner.hpp"

#include <cmath>
#include <numbers>

#include "mcskit/hermite.hpp"
#include "mcskit/parallel.hpp"

namespace mcskit {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const std::complex<double> kI(0, 1);

using Complex = std::complex<double>;

/// (1/pi) exp(-(q - a)^2 - (p - b)^2 + c), evaluated as a single exponential so that
/// large growing and damping parts cancel before exponentiation.
Complex gaussian_term(double q, double p, Complex a, Complex b, Complex c) {
  const Complex dq = q - a;
  const Complex dp = p - b;
  return std::exp(-dq * dq - dp * dp + c) / kPi;
}

/// Cross-Wigner function of normalized coherent states <w_bra| and |w_ket>, i.e. the
/// Wigner transform of |w_ket><w_bra|.
Complex cross_wigner(double q, double p, Complex bra, Complex ket) {
  const Complex bc = std::conj(bra);
  return gaussian_term(q, p, (bc + ket) / kSqrt2, kI * (bc - ket) / kSqrt2,
                       bc * ket - (std::norm(bra) + std::norm(ket)) / 2);
}

template <typename F>
WignerField fill(const PhaseGrid& grid, F&& value) {
  grid.validate();
  WignerField field{grid, Eigen::MatrixXd(grid.n_q, grid.n_p), 0};
  parallel_for(grid.n_q, [&](Eigen::Index i) {
    const double q = grid.q(i);
    for (Eigen::Index j = 0; j < grid.n_p; ++j) field.values(i, j) = value(q, grid.p(j));
  });
  return field;
}

double trapezoid_weight(Eigen::Index i, Eigen::Index n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

}  // namespace

const PhaseGrid& PhaseGrid::validate() const {
  const bool finite = std::isfinite(q_min) && std::isfinite(q_max) && std::isfinite(p_min) &&
                      std::isfinite(p_max);
  if (!finite || !(q_max > q_min) || !(p_max > p_min) || n_q < 2 || n_p < 2) {
    throw InvalidArgument("phase grid needs finite increasing bounds and at least 2 samples per axis");
  }
  return *this;
}

double WignerField::integral() const {
  double sum = 0;
  for (Eigen::Index i = 0; i < grid.n_q; ++i) {
    for (Eigen::Index j = 0; j < grid.n_p; ++j) {
      sum += trapezoid_weight(i, grid.n_q) * trapezoid_weight(j, grid.n_p) * values(i, j);
    }
  }
  return sum * grid.dq() * grid.dp();
}

double WignerField::sample(double q, double p) const {
  const double u = (q - grid.q_min) / grid.dq();
  const double v = (p - grid.p_min) / grid.dp();
  if (u < 0 || v < 0 || u > double(grid.n_q - 1) || v > double(grid.n_p - 1)) return 0;
  const auto i = std::min<Eigen::Index>(Eigen::Index(u), grid.n_q - 2);
  const auto j = std::min<Eigen::Index>(Eigen::Index(v), grid.n_p - 2);
  const double fu = u - double(i);
  const double fv = v - double(j);
  return (1 - fu) * (1 - fv) * values(i, j) + fu * (1 - fv) * values(i + 1, j) +
         (1 - fu) * fv * values(i, j + 1) + fu * fv * values(i + 1, j + 1);
}

WignerField wigner_numeric(const Wavefunction& psi, const PhaseGrid& grid,
                           const WignerQuadrature& quadrature) {
  grid.validate();
  const Eigen::Index n = quadrature.points;
  if (n < 3 || !(quadrature.half_width > 0)) {
    throw InvalidArgument("Wigner quadrature needs a positive window and at least 3 points");
  }
  const Eigen::VectorXd y = uniform_grid(-quadrature.half_width, quadrature.half_width, n);
  const double dy = y[1] - y[0];

  // Phase table exp(2 i p_j y_i), shared by every q row.
  Eigen::MatrixXcd phases(grid.n_p, n);
  for (Eigen::Index j = 0; j < grid.n_p; ++j) {
    const double p = grid.p(j);
    for (Eigen::Index i = 0; i < n; ++i) phases(j, i) = std::polar(1.0, 2 * p * y[i]);
  }

  WignerField field{grid, Eigen::MatrixXd(grid.n_q, grid.n_p), 0};
  Eigen::VectorXd edge(grid.n_q);
  Eigen::VectorXd residue(grid.n_q);
  parallel_for(grid.n_q, [&](Eigen::Index r) {
    const double q = grid.q(r);
    // y is symmetric, so psi(q - y_i) = psi(q + y_{n-1-i}).
    Eigen::VectorXcd shifted(n);
    for (Eigen::Index i = 0; i < n; ++i) shifted[i] = psi(q + y[i]);
    Eigen::VectorXcd integrand(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      integrand[i] = std::conj(shifted[i]) * shifted[n - 1 - i] * trapezoid_weight(i, n);
    }
    edge[r] = std::max(std::abs(integrand[0]), std::abs(integrand[n - 1])) * 2;
    const Eigen::VectorXcd row = (phases * integrand) * (dy / kPi);
    field.values.row(r) = row.real().transpose();
    residue[r] = row.imag().cwiseAbs().maxCoeff();
  });
  const double worst_edge = edge.maxCoeff();
  if (worst_edge > quadrature.envelope_tolerance) {
    throw WindowTooNarrow("Wigner integrand is " + std::to_string(worst_edge) +
                          " at the y-window edge (half width " +
                          std::to_string(quadrature.half_width) + ")");
  }
  field.imag_residue = residue.maxCoeff();
  return field;
}

WignerField wigner_numeric(const ScsSuperposition& state, const PhaseGrid& grid,
                           const WignerQuadrature& quadrature, double t) {
  return wigner_numeric([&](double x) { return state.position_amplitude(x, t); }, grid,
                        quadrature);
}

WignerField wigner_numeric(const FockVector& state, const PhaseGrid& grid,
                           const WignerQuadrature& quadrature) {
  return wigner_numeric([&](double x) { return hermite_synthesis(state.coeffs(), x); }, grid,
                        quadrature);
}

WignerField wigner_scs(Complex z, const PhaseGrid& grid) {
  const double q0 = kSqrt2 * z.real();
  const double p0 = kSqrt2 * z.imag();
  return fill(grid, [&](double q, double p) {
    return std::exp(-(q - q0) * (q - q0)) * std::exp(-(p - p0) * (p - p0)) / kPi;
  });
}

WignerField wigner_cat2(int j, Complex z, const PhaseGrid& grid) {
  if (j != 0 && j != 1) throw InvalidArgument("wigner_cat2 requires j = 0 or 1");
  const double q0 = kSqrt2 * z.real();
  const double p0 = kSqrt2 * z.imag();
  const double r2 = std::norm(z);
  const double sign = j == 0 ? 1.0 : -1.0;
  // Each Gaussian and the interference term integrate to pi (the latter damped by
  // exp(-2|z|^2)), so the total is 2 pi (1 +- exp(-2|z|^2)).
  const double total = 2 * (1 + sign * std::exp(-2 * r2));
  if (!(total > 1e-300)) throw DegenerateNorm("odd cat state at z = 0 has no normalization");
  return fill(grid, [&](double q, double p) {
    const double plus = std::exp(-(q - q0) * (q - q0) - (p - p0) * (p - p0));
    const double minus = std::exp(-(q + q0) * (q + q0) - (p + p0) * (p + p0));
    const Complex a = q + kI * p0;
    const Complex b = p - kI * q0;
    const double interference = 2 * std::exp(-a * a - b * b - 2 * r2).real();
    return (plus + minus + sign * interference) / (kPi * total);
  });
}

WignerField wigner_cat3(int j, Complex z, const PhaseGrid& grid) {
  if (j < 0 || j > 2) throw InvalidArgument("wigner_cat3 requires j in {0, 1, 2}");
  const Complex mu = root_of_unity(3, 1);
  const Complex mu2 = root_of_unity(3, 2);
  const Complex zc = std::conj(z);
  const double r2 = std::norm(z);
  const double centers_q[3] = {kSqrt2 * z.real(), kSqrt2 * (z * mu).real(),
                               kSqrt2 * (z * mu2).real()};
  const double centers_p[3] = {kSqrt2 * z.imag(), kSqrt2 * (z * mu).imag(),
                               kSqrt2 * (z * mu2).imag()};

  struct Cross {
    Complex q_center;
    Complex p_shift;  // enters as (p + i p_shift)^2
    Complex damping;  // |z|^2 (mu^d - 1)
    Complex prefactor;
  };
  // Pairs (|z>, |mu z>), (|z>, |mu^2 z>), (|mu^2 z>, |mu z>) with the cyclic-group
  // coefficients conj(c_l) c_m = mu^{j(l-m)}.
  const Complex zc2 = zc * std::conj(mu2);
  const Cross cross[3] = {
      {(z * mu + zc) / kSqrt2, (z * mu - zc) / kSqrt2, r2 * (mu - 1.0), root_of_unity(3, -j)},
      {(z * mu2 + zc) / kSqrt2, (z * mu2 - zc) / kSqrt2, r2 * (mu2 - 1.0), root_of_unity(3, -2 * j)},
      {(z * mu + zc2) / kSqrt2, (z * mu - zc2) / kSqrt2, r2 * (std::conj(mu) - 1.0),
       root_of_unity(3, j)},
  };
  double total = 3;
  for (const auto& c : cross) total += 2 * (c.prefactor * std::exp(c.damping)).real();
  if (!(total > 1e-300)) throw DegenerateNorm("k=3 cat state has vanishing norm");

  return fill(grid, [&](double q, double p) {
    double sum = 0;
    for (int l = 0; l < 3; ++l) {
      sum += std::exp(-(q - centers_q[l]) * (q - centers_q[l]) -
                      (p - centers_p[l]) * (p - centers_p[l]));
    }
    Complex interference(0);
    for (const auto& c : cross) {
      const Complex a = q - c.q_center;
      const Complex b = p + kI * c.p_shift;
      interference += c.prefactor * std::exp(-a * a - b * b + c.damping);
    }
    return (sum + 2 * interference.real()) / (kPi * total);
  });
}

WignerField wigner_superposition(const ScsSuperposition& state, const PhaseGrid& grid, double t) {
  const auto rotate = std::polar(1.0, -t);
  std::vector<Complex> centers(state.k);
  for (int l = 0; l < state.k; ++l) centers[l] = state.center(l) * rotate;
  return fill(grid, [&](double q, double p) {
    double sum = 0;
    for (int l = 0; l < state.k; ++l) {
      sum += std::norm(state.weights[l]) * cross_wigner(q, p, centers[l], centers[l]).real();
      for (int m = l + 1; m < state.k; ++m) {
        sum += 2 * (std::conj(state.weights[l]) * state.weights[m] *
                    cross_wigner(q, p, centers[l], centers[m]))
                       .real();
      }
    }
    return sum;
  });
}

Marginals marginals(const WignerField& field, double boundary_tolerance) {
  const auto& g = field.grid;
  const auto& w = field.values;
  const double boundary = std::max({w.row(0).cwiseAbs().maxCoeff(),
                                    w.row(g.n_q - 1).cwiseAbs().maxCoeff(),
                                    w.col(0).cwiseAbs().maxCoeff(),
                                    w.col(g.n_p - 1).cwiseAbs().maxCoeff()});
  if (boundary > boundary_tolerance) {
    throw BoundaryMass("|W| reaches " + std::to_string(boundary) + " on the grid boundary");
  }
  Marginals m{Eigen::VectorXd::Zero(g.n_q), Eigen::VectorXd::Zero(g.n_p)};
  for (Eigen::Index i = 0; i < g.n_q; ++i) {
    for (Eigen::Index j = 0; j < g.n_p; ++j) {
      m.position[i] += trapezoid_weight(j, g.n_p) * w(i, j);
      m.momentum[j] += trapezoid_weight(i, g.n_q) * w(i, j);
    }
  }
  m.position *= g.dp();
  m.momentum *= g.dq();
  return m;
}

MarginalReport marginal_check(const WignerField& field, const ScsSuperposition& state, double t,
                              double boundary_tolerance) {
  MarginalReport report{marginals(field, boundary_tolerance), {}, {}, 0, 0};
  const auto& g = field.grid;
  report.position_density.resize(g.n_q);
  report.momentum_density.resize(g.n_p);
  for (Eigen::Index i = 0; i < g.n_q; ++i) {
    report.position_density[i] = std::norm(state.position_amplitude(g.q(i), t));
  }
  for (Eigen::Index j = 0; j < g.n_p; ++j) {
    report.momentum_density[j] = std::norm(state.momentum_amplitude(g.p(j), t));
  }
  report.position_deviation =
      (report.marginals.position - report.position_density).cwiseAbs().maxCoeff();
  report.momentum_deviation =
      (report.marginals.momentum - report.momentum_density).cwiseAbs().maxCoeff();
  return report;
}

double negativity_volume(const WignerField& field) {
  WignerField negative = field;
  negative.values = (-field.values).cwiseMax(0.0);
  return negative.integral();
}

double purity(const WignerField& field) {
  WignerField squared = field;
  squared.values = field.values.cwiseAbs2();
  return 2 * kPi * squared.integral();
}

double sup_difference(const WignerField& a, const WignerField& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
    throw InvalidArgument("Wigner fields are sampled on different grids");
  }
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace mcskit
