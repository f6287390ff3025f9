#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace mcskit {

/// Normalized oscillator eigenfunctions phi_0(x) ... phi_{count-1}(x), by the
/// ratio-form recurrence
///   phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1}.
/// No factorials or unnormalized Hermite polynomials are formed.
template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> hermite_functions(Real x, Eigen::Index count) {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> phi(count);
  if (count == 0) return phi;
  const Real quarter_root_pi = std::pow(std::numbers::pi_v<Real>, Real(-0.25));
  phi[0] = quarter_root_pi * std::exp(-x * x / 2);
  if (count == 1) return phi;
  phi[1] = std::sqrt(Real(2)) * x * phi[0];
  for (Eigen::Index n = 1; n + 1 < count; ++n) {
    const Real np1 = static_cast<Real>(n + 1);
    phi[n + 1] = std::sqrt(Real(2) / np1) * x * phi[n] -
                 std::sqrt(static_cast<Real>(n) / np1) * phi[n - 1];
  }
  return phi;
}

/// sum_n c_n phi_n(x) for a coefficient vector over the number basis.
template <typename Real, typename Derived>
std::complex<Real> hermite_synthesis(const Eigen::MatrixBase<Derived>& coeffs, Real x) {
  const auto phi = hermite_functions<Real>(x, coeffs.size());
  std::complex<Real> sum(0);
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) sum += coeffs[n] * phi[n];
  return sum;
}

}  // namespace mcskit
