#include "mcskit/scs.hpp"

#include <cmath>
#include <numbers>

#include "mcskit/hermite.hpp"
#include "mcskit/parallel.hpp"
#include "mcskit/series.hpp"

namespace mcskit {

namespace {

constexpr double kPi = std::numbers::pi;
const double kQuarterRootPi = std::pow(kPi, -0.25);
const std::complex<double> kI(0, 1);

void check_order(int k, int j) {
  if (k < 1 || j < 0 || j >= k) throw InvalidArgument("requires k >= 1 and 0 <= j < k");
}

/// log of e^{-|z|^2} || |z>_j ||^2 via the ladder series.
double log_scaled_norm_sq(int k, int j, std::complex<double> z) {
  const double r2 = std::norm(z);
  if (r2 == 0) return j == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -r2 + j * std::log(r2) + log_norm_sum(k, j, std::pow(r2, k));
}

}  // namespace

std::complex<double> root_of_unity(int k, long power) {
  if (k < 1) throw InvalidArgument("root_of_unity requires k >= 1");
  long reduced = power % k;
  if (reduced < 0) reduced += k;
  if (reduced == 0) return {1, 0};
  // Quarter turns exactly.
  if (4 * reduced % k == 0) {
    const std::complex<double> axis[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return axis[4 * reduced / k];
  }
  return std::polar(1.0, 2 * kPi * double(reduced) / k);
}

DftPair dft_matrix(int k) {
  if (k < 1) throw InvalidArgument("dft_matrix requires k >= 1");
  DftPair pair{Eigen::MatrixXcd(k, k), Eigen::MatrixXcd(k, k)};
  for (int j = 0; j < k; ++j) {
    for (int l = 0; l < k; ++l) {
      pair.forward(j, l) = root_of_unity(k, long(j) * l);
      pair.inverse(j, l) = root_of_unity(k, -long(j) * l) / double(k);
    }
  }
  return pair;
}

FockVector scs_fock(std::complex<double> z, Eigen::Index n_max, bool normalized) {
  FockVector v(n_max);
  std::complex<double> c = normalized ? std::exp(-std::norm(z) / 2) : 1.0;
  for (Eigen::Index n = 0; n < n_max; ++n) {
    v[n] = c;
    c *= z / std::sqrt(double(n + 1));
  }
  return v;
}

FockVector mcs_fock_unnormalized(int k, int j, std::complex<double> z, Eigen::Index n_max) {
  check_order(k, j);
  FockVector v(n_max);
  const auto full = scs_fock(z, n_max, false);
  for (Eigen::Index n = j; n < n_max; n += k) v[n] = full[n];
  return v;
}

double unnormalized_mcs_norm_sq(int k, int j, std::complex<double> z) {
  check_order(k, j);
  const double r2 = std::norm(z);
  std::complex<double> sum(0);
  for (int d = 0; d < k; ++d) {
    sum += root_of_unity(k, -long(j) * d) * std::exp(r2 * root_of_unity(k, d));
  }
  return sum.real() / k;
}

double unnormalized_mcs_norm_sq_series(int k, int j, std::complex<double> z) {
  check_order(k, j);
  const double r2 = std::norm(z);
  if (r2 == 0) return j == 0 ? 1.0 : 0.0;
  return std::pow(r2, j) * norm_sum(k, j, std::pow(r2, k));
}

std::complex<double> scs_position_amplitude(std::complex<double> z, double x) {
  // -x^2/2 + sqrt2 z x - z^2/2 - |z|^2/2
  const auto e = -x * x / 2 + std::sqrt(2.0) * z * x - z * z / 2.0 - std::norm(z) / 2;
  return kQuarterRootPi * std::exp(e);
}

std::complex<double> scs_momentum_amplitude(std::complex<double> z, double p) {
  // -p^2/2 - i sqrt2 z p + z^2/2 - |z|^2/2
  const auto e = -p * p / 2 - kI * std::sqrt(2.0) * z * p + z * z / 2.0 - std::norm(z) / 2;
  return kQuarterRootPi * std::exp(e);
}

FockVector ScsSuperposition::to_fock(Eigen::Index n_max) const {
  FockVector v(n_max);
  for (int l = 0; l < k; ++l) v.coeffs() += weights[l] * scs_fock(center(l), n_max).coeffs();
  return v;
}

std::complex<double> ScsSuperposition::position_amplitude(double x, double t) const {
  const auto rotate = std::polar(1.0, -t);
  std::complex<double> sum(0);
  for (int l = 0; l < k; ++l) sum += weights[l] * scs_position_amplitude(center(l) * rotate, x);
  return std::polar(1.0, -t / 2) * sum;
}

std::complex<double> ScsSuperposition::momentum_amplitude(double p, double t) const {
  const auto rotate = std::polar(1.0, -t);
  std::complex<double> sum(0);
  for (int l = 0; l < k; ++l) sum += weights[l] * scs_momentum_amplitude(center(l) * rotate, p);
  return std::polar(1.0, -t / 2) * sum;
}

ScsSuperposition mcs_as_scs(int k, int j, std::complex<double> z) {
  check_order(k, j);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument("mcs_as_scs requires finite z");
  }
  const double log_norm_sq = log_scaled_norm_sq(k, j, z);
  if (!(log_norm_sq > std::log(1e-300))) {
    throw DegenerateNorm("|z>_" + std::to_string(j) + " has vanishing norm at |z|=" +
                         std::to_string(std::abs(z)));
  }
  const double inv_norm = std::exp(-log_norm_sq / 2);
  const auto align = z == 0.0 ? std::complex<double>(1) : std::polar(1.0, -j * std::arg(z));
  ScsSuperposition s{z, k, j, Eigen::VectorXcd(k)};
  for (int l = 0; l < k; ++l) {
    s.weights[l] = align * root_of_unity(k, -long(j) * l) * (inv_norm / k);
  }
  return s;
}

double WaveSample::trapezoid_norm() const {
  const auto rho = density();
  double sum = 0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) sum += 0.5 * (rho[i] + rho[i + 1]) * (x[i + 1] - x[i]);
  return sum;
}

Eigen::VectorXd uniform_grid(double lo, double hi, Eigen::Index count) {
  if (count < 2 || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgument("uniform grid needs finite lo < hi and at least 2 points");
  }
  Eigen::VectorXd g(count);
  const double h = (hi - lo) / double(count - 1);
  for (Eigen::Index i = 0; i < count; ++i) g[i] = lo + h * double(i);
  g[count - 1] = hi;
  return g;
}

Eigen::VectorXd default_x_grid() { return uniform_grid(-12, 12, 2048); }

WaveSample scs_wavefunction(std::complex<double> z, const Eigen::VectorXd& x_grid) {
  WaveSample w{x_grid, Eigen::VectorXcd(x_grid.size()), 0};
  for (Eigen::Index i = 0; i < x_grid.size(); ++i) w.values[i] = scs_position_amplitude(z, x_grid[i]);
  return w;
}

WaveSample mcs_wavefunction(int k, int j, std::complex<double> z, const Eigen::VectorXd& x_grid,
                            double t) {
  const auto s = mcs_as_scs(k, j, z);
  WaveSample w{x_grid, Eigen::VectorXcd(x_grid.size()), t};
  for (Eigen::Index i = 0; i < x_grid.size(); ++i) w.values[i] = s.position_amplitude(x_grid[i], t);
  return w;
}

WaveSample fock_wavefunction(const FockVector& state, const Eigen::VectorXd& x_grid, double t) {
  const auto evolved = t == 0 ? state : time_evolve(state, t);
  WaveSample w{x_grid, Eigen::VectorXcd(x_grid.size()), t};
  for (Eigen::Index i = 0; i < x_grid.size(); ++i) {
    w.values[i] = hermite_synthesis(evolved.coeffs(), x_grid[i]);
  }
  return w;
}

Eigen::MatrixXd density_movie(int k, int j, std::complex<double> z,
                              const Eigen::VectorXd& x_grid, const Eigen::VectorXd& t_grid) {
  const auto s = mcs_as_scs(k, j, z);
  Eigen::MatrixXd rows(t_grid.size(), x_grid.size());
  parallel_for(t_grid.size(), [&](Eigen::Index r) {
    for (Eigen::Index i = 0; i < x_grid.size(); ++i) {
      rows(r, i) = std::norm(s.position_amplitude(x_grid[i], t_grid[r]));
    }
  });
  return rows;
}

}  // namespace mcskit
