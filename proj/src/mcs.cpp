#include "mcskit/mcs.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "mcskit/series.hpp"

namespace mcskit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRescale = 0x1p-500;
constexpr double kRescaleThreshold = 0x1p+500;

/// Unnormalized magnitudes |alpha|^n / sqrt((kn+j)!) for n < count, with a common
/// power-of-two scale (entries that underflow after rescaling are negligible).
std::vector<double> ladder_magnitudes(int k, int j, double r, Eigen::Index count) {
  std::vector<double> mags(static_cast<std::size_t>(count));
  if (count == 0) return mags;
  double m = 1;
  for (int i = 2; i <= j; ++i) m /= std::sqrt(double(i));
  mags[0] = m;
  for (Eigen::Index n = 1; n < count; ++n) {
    double denom = 1;
    const double base = double(k) * double(n - 1) + j;
    for (int i = 1; i <= k; ++i) denom *= base + i;
    m *= r / std::sqrt(denom);
    if (m > kRescaleThreshold) {
      for (Eigen::Index i = 0; i < n; ++i) mags[i] *= kRescale;
      m *= kRescale;
    }
    mags[n] = m;
  }
  return mags;
}

std::string describe(const MomentSet& m) {
  std::ostringstream os;
  os.precision(17);
  os << "{<x>=" << m.mean_x << ", <p>=" << m.mean_p << ", <x2>=" << m.mean_x2
     << ", <p2>=" << m.mean_p2 << ", dxdp=" << m.uncertainty_product
     << ", |a psi|^2=" << m.a_norm_sq << ", <H>=" << m.mean_H << "}";
  return os.str();
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace

const McsLabel& McsLabel::validate() const {
  if (k < 1) throw InvalidArgument("MCS label requires k >= 1");
  if (j < 0 || j >= k) throw InvalidArgument("MCS label requires 0 <= j < k");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw InvalidArgument("MCS label requires finite alpha");
  }
  return *this;
}

double mcs_tail_mass(const McsLabel& label, Eigen::Index n_max) {
  label.validate();
  // Rungs kept: kn + j < n_max.
  const Eigen::Index kept = n_max > label.j ? (n_max - label.j + label.k - 1) / label.k : 0;
  if (kept == 0) return 1.0;
  const double x = std::norm(label.alpha);
  if (x == 0) return 0.0;

  // One pass over x^n / (kn+j)!, split at the cutoff; shared power-of-two rescaling.
  double term = 1;
  for (int i = 2; i <= label.j; ++i) term /= i;
  double head = 0;
  double tail = 0;
  for (Eigen::Index n = 0; n < 100'000'000; ++n) {
    (n < kept ? head : tail) += term;
    if (head + tail > 0x1p+600) {
      head *= 0x1p-600;
      tail *= 0x1p-600;
      term *= 0x1p-600;
    }
    double denom = 1;
    const double base = double(label.k) * double(n) + label.j;
    for (int i = 1; i <= label.k; ++i) denom *= base + i;
    term *= x / denom;
    const bool decreasing = x < denom;
    if (n + 1 >= kept && decreasing && term <= 1e-18 * (head + tail)) break;
  }
  return tail / (head + tail);
}

FockVector build_mcs(const McsLabel& label, Eigen::Index n_max, double tail_tolerance) {
  label.validate();
  if (n_max <= label.j) {
    throw TailTooHeavy(1.0, tail_tolerance);
  }
  const double tail = mcs_tail_mass(label, n_max);
  if (tail > tail_tolerance) throw TailTooHeavy(tail, tail_tolerance);

  const double r = std::abs(label.alpha);
  const double theta = std::arg(label.alpha);
  const Eigen::Index rungs = (n_max - label.j + label.k - 1) / label.k;
  const auto mags = ladder_magnitudes(label.k, label.j, r, rungs);

  // Normalize against the infinite sum so kept coefficients are exact truncations.
  double kept_sq = 0;
  for (double m : mags) kept_sq += m * m;
  const double norm = std::sqrt(kept_sq / (1.0 - tail));

  FockVector state(n_max);
  for (Eigen::Index n = 0; n < rungs; ++n) {
    const double mag = mags[std::size_t(n)] / norm;
    state[Eigen::Index(label.k) * n + label.j] =
        r == 0 ? std::complex<double>(n == 0 ? mag : 0.0) : std::polar(mag, double(n) * theta);
  }
  return state;
}

double eigenvalue_residual(const McsLabel& label, const FockVector& state) {
  label.validate();
  const auto lowered = apply_k_ladder(state, LadderPower::lowering(label.k)).state;
  return (lowered - label.alpha * state).norm();
}

double a_norm_sq_series(const McsLabel& label) {
  label.validate();
  const double x = std::norm(label.alpha);
  const auto s = norm_sum_scaled(label.k, label.j, x);
  if (label.j > 0) return ratio(norm_sum_scaled(label.k, label.j - 1, x), s);
  // j = 0: the index shift wraps to the top ladder, sum_n x^{n+1} / (kn + k - 1)!.
  if (x == 0) return 0;
  return x * ratio(norm_sum_scaled(label.k, label.k - 1, x), s);
}

double a_norm_closed(const McsLabel& label) {
  label.validate();
  if (label.k != 2 && label.k != 3) {
    throw UnsupportedOrder("closed form of |a|alpha>|^2 exists for k = 2, 3 only (k=" +
                           std::to_string(label.k) + ")");
  }
  const double r = std::abs(label.alpha);
  if (r == 0) return a_norm_sq_series(label);
  if (label.k == 2) return label.j == 0 ? r * std::tanh(r) : r / std::tanh(r);

  // Forms with e^{3u/2} divided out of numerator and denominator.
  const double u = std::cbrt(r * r);
  const double theta = std::sqrt(3.0) * u / 2;
  const double damp = 2 * std::exp(-1.5 * u);
  const double even = 1 + damp * std::cos(theta);             // ~ S_{3,0}
  const double one = 1 - damp * std::sin(kPi / 6 - theta);    // ~ u S_{3,1}
  const double two = 1 - damp * std::sin(kPi / 6 + theta);    // ~ u^2 S_{3,2}
  switch (label.j) {
    case 0: return u * two / even;
    case 1: return u * even / one;
    default: return u * one / two;
  }
}

MomentSet moments_series(const McsLabel& label) {
  label.validate();
  MomentSet m;
  const double re = label.alpha.real();
  const double im = label.alpha.imag();
  m.a_norm_sq = a_norm_sq_series(label);
  m.mean_H = m.a_norm_sq + 0.5;
  if (label.k == 1) {
    m.mean_x = std::sqrt(2.0) * re;
    m.mean_p = std::sqrt(2.0) * im;
    m.mean_x2 = 0.5 + m.mean_x * m.mean_x;
    m.mean_p2 = 0.5 + m.mean_p * m.mean_p;
    m.var_x = 0.5;
    m.var_p = 0.5;
    m.uncertainty_product = 0.5;
    return m;
  }
  const double cross = label.k == 2 ? re : 0.0;
  m.mean_x2 = m.a_norm_sq + 0.5 + cross;
  m.mean_p2 = m.a_norm_sq + 0.5 - cross;
  m.var_x = m.mean_x2;
  m.var_p = m.mean_p2;
  const double h = m.a_norm_sq + 0.5;
  m.uncertainty_product = std::sqrt(h * h - cross * cross);
  return m;
}

MomentSet moments_from_state(const FockVector& state) {
  MomentSet m;
  const auto xs = position_apply(state);
  const auto ps = momentum_apply(state);
  m.mean_x = state.dot(xs).real();
  m.mean_p = state.dot(ps).real();
  m.mean_x2 = xs.squared_norm();
  m.mean_p2 = ps.squared_norm();
  m.var_x = std::max(0.0, m.mean_x2 - m.mean_x * m.mean_x);
  m.var_p = std::max(0.0, m.mean_p2 - m.mean_p * m.mean_p);
  m.uncertainty_product = std::sqrt(m.var_x * m.var_p);
  m.a_norm_sq = apply_lowering(state).squared_norm();
  m.mean_H = state.dot(hamiltonian_apply(state)).real();
  return m;
}

MomentSet moments(const McsLabel& label, const MomentOptions& options) {
  const MomentSet series = moments_series(label);
  if (!options.cross_check) return series;
  const MomentSet direct = moments_from_state(build_mcs(label, options.n_max));
  const double tol = options.route_tolerance;
  const bool agree = close(direct.mean_x, series.mean_x, tol) &&
                     close(direct.mean_p, series.mean_p, tol) &&
                     close(direct.mean_x2, series.mean_x2, tol) &&
                     close(direct.mean_p2, series.mean_p2, tol) &&
                     close(direct.uncertainty_product, series.uncertainty_product, tol) &&
                     close(direct.a_norm_sq, series.a_norm_sq, tol) &&
                     close(direct.mean_H, series.mean_H, tol);
  if (!agree) {
    throw RouteDiscrepancy("moment routes disagree for k=" + std::to_string(label.k) +
                           " j=" + std::to_string(label.j) + ": series " + describe(series) +
                           " vs matrix elements " + describe(direct));
  }
  return series;
}

double geometric_phase(const McsLabel& label) {
  return 2 * kPi / label.k * (a_norm_sq_series(label) - label.j);
}

double geometric_phase_dynamical(const McsLabel& label) {
  label.validate();
  const double phi = -(2.0 * label.j + 1) * kPi / label.k;
  const double tau = 2 * kPi / label.k;
  return phi + tau * moments_series(label).mean_H;
}

double geometric_phase_closed(const McsLabel& label) {
  label.validate();
  const double r = std::abs(label.alpha);
  if (label.k == 2) {
    if (r == 0) return 0;
    return label.j == 0 ? kPi * r * std::tanh(r) : kPi * (r / std::tanh(r) - 1);
  }
  if (label.k != 3) {
    throw UnsupportedOrder("closed geometric phase exists for k = 2, 3 only");
  }
  if (r == 0) return 0;
  const double u = std::cbrt(r * r);
  const double theta = std::sqrt(3.0) * u / 2;
  // e^u and 2 e^{-u/2}(...), both scaled by e^{-u}.
  const double d = 2 * std::exp(-1.5 * u);
  const double c0 = 1 + d * std::cos(theta);
  const double s_minus = 1 - d * std::sin(kPi / 6 - theta);
  const double s_plus = 1 - d * std::sin(kPi / 6 + theta);
  const double scale = 2 * kPi / 3;
  switch (label.j) {
    case 0: return scale * u * s_plus / c0;
    case 1: return scale * (u * c0 / s_minus - 1);
    default: return scale * (u * s_minus / s_plus - 2);
  }
}

double geometric_phase_from_state(const FockVector& state, int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const double tau = 2 * kPi / k;
  const auto overlap = state.dot(time_evolve(state, tau));
  double phi = std::arg(overlap);  // (-pi, pi]
  if (phi > 0) phi -= 2 * kPi;
  const double mean_h = state.dot(hamiltonian_apply(state)).real() / state.squared_norm();
  return phi + tau * mean_h;
}

}  // namespace mcskit
