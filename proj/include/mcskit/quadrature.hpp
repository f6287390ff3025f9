#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mcskit/errors.hpp"

namespace mcskit {

template <typename Real>
struct GaussRule {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> nodes;    ///< on [-1, 1], ascending
  Eigen::Matrix<Real, Eigen::Dynamic, 1> weights;
};

/// n-point Gauss-Legendre rule; nodes are roots of P_n found by Newton iteration from
/// the Chebyshev-like initial guess cos(pi (i + 3/4) / (n + 1/2)).
template <typename Real = double>
GaussRule<Real> gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre order must be >= 1");
  GaussRule<Real> rule{Eigen::Matrix<Real, Eigen::Dynamic, 1>(n),
                       Eigen::Matrix<Real, Eigen::Dynamic, 1>(n)};
  const Real pi = std::numbers::pi_v<Real>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real derivative = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1;
      Real p1 = x;
      for (int m = 2; m <= n; ++m) {
        const Real p2 = (Real(2 * m - 1) * x * p1 - Real(m - 1) * p0) / Real(m);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      derivative = Real(n) * (x * p1 - p0) / (x * x - 1);
      const Real step = p1 / derivative;
      x -= step;
      if (std::abs(step) <= 4 * std::numeric_limits<Real>::epsilon()) break;
    }
    // Recompute P_n' at the converged node for the weight.
    Real p0 = 1;
    Real p1 = x;
    for (int m = 2; m <= n; ++m) {
      const Real p2 = (Real(2 * m - 1) * x * p1 - Real(m - 1) * p0) / Real(m);
      p0 = p1;
      p1 = p2;
    }
    derivative = n == 1 ? Real(1) : Real(n) * (x * p1 - p0) / (x * x - 1);
    const Real w = 2 / ((1 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

/// Composite rule: `rule` applied on each of `panels` equal sub-intervals of [a, b].
template <typename Real, typename F>
auto composite_gauss(const GaussRule<Real>& rule, F&& f, Real a, Real b, int panels) {
  using Value = decltype(f(a));
  Value sum = Value(0) * Real(0);
  const Real h = (b - a) / Real(panels);
  for (int p = 0; p < panels; ++p) {
    const Real lo = a + h * Real(p);
    const Real mid = lo + h / 2;
    Value panel = Value(0) * Real(0);
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + h / 2 * rule.nodes[i]);
    }
    sum += panel * (h / 2);
  }
  return sum;
}

template <typename Real>
struct QuadratureResult {
  Real value = 0;
  Real error = 0;  ///< sum of per-panel |coarse - refined| estimates
  int panels = 0;
  bool converged = false;
};

/// Adaptive bisection with a fixed Gauss-Legendre rule. A panel is accepted when its
/// estimate and the sum over its two halves differ by at most
/// max(abs_tol, rel_tol |total|) scaled by the panel's share of [a, b]. Panels that reach
/// max_depth are accepted unconverged and clear `converged`.
template <typename Real = double>
QuadratureResult<Real> adaptive_gauss_legendre(const std::function<Real(Real)>& f, Real a,
                                               Real b, Real rel_tol = Real(1e-12),
                                               Real abs_tol = Real(1e-300), int max_depth = 48,
                                               int order = 20) {
  if (!(b >= a)) throw InvalidArgument("integration bounds must satisfy a <= b");
  QuadratureResult<Real> result;
  result.converged = true;
  if (a == b) return result;
  const auto rule = gauss_legendre<Real>(order);
  const auto panel_value = [&](Real lo, Real hi) { return composite_gauss(rule, f, lo, hi, 1); };
  const Real whole = panel_value(a, b);
  const Real length = b - a;

  struct Panel {
    Real lo, hi, value;
    int depth;
  };
  std::vector<Panel> stack{{a, b, whole, 0}};
  Real scale = std::abs(whole);
  while (!stack.empty()) {
    const Panel panel = stack.back();
    stack.pop_back();
    const Real mid = (panel.lo + panel.hi) / 2;
    const Real left = panel_value(panel.lo, mid);
    const Real right = panel_value(mid, panel.hi);
    const Real refined = left + right;
    const Real diff = std::abs(refined - panel.value);
    if (!std::isfinite(refined)) throw QuadratureFailure("integrand is not finite on a panel");
    scale = std::max(scale, std::abs(refined));
    const Real allowed =
        std::max(abs_tol, rel_tol * scale) * std::max((panel.hi - panel.lo) / length, Real(1e-3));
    if (diff <= allowed || panel.depth >= max_depth) {
      if (diff > allowed) result.converged = false;
      result.value += refined;
      result.error += diff;
      ++result.panels;
    } else {
      stack.push_back({mid, panel.hi, right, panel.depth + 1});
      stack.push_back({panel.lo, mid, left, panel.depth + 1});
    }
  }
  return result;
}

/// int_a^inf f by adaptive panels over [a, a + L], [a + L, a + 3L], ... (doubling widths)
/// until a segment contributes less than rel_tol of the running total. Throws
/// QuadratureFailure if the tail has not died out after `max_segments`.
template <typename Real = double>
QuadratureResult<Real> adaptive_semi_infinite(const std::function<Real(Real)>& f, Real a,
                                              Real initial_length, Real rel_tol = Real(1e-13),
                                              Real abs_tol = Real(1e-300), int max_segments = 60) {
  if (!(initial_length > 0)) throw InvalidArgument("initial segment length must be positive");
  QuadratureResult<Real> total;
  total.converged = true;
  Real lo = a;
  Real width = initial_length;
  for (int s = 0; s < max_segments; ++s) {
    const auto part = adaptive_gauss_legendre<Real>(f, lo, lo + width, rel_tol, abs_tol);
    total.value += part.value;
    total.error += part.error;
    total.panels += part.panels;
    total.converged = total.converged && part.converged;
    if (s > 0 && std::abs(part.value) <= std::max(abs_tol, rel_tol * std::abs(total.value))) {
      return total;
    }
    lo += width;
    width *= 2;
  }
  throw QuadratureFailure("integrand tail has not decayed after " + std::to_string(max_segments) +
                          " segments");
}

}  // namespace mcskit
