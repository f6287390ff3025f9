#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mcskit/mcs.hpp"
#include "mcskit/series.hpp"

using namespace mcskit;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

/// Direct sum of x^m / (km + j)! in long double with lgamma-free factorials.
long double brute_norm_sum(int k, int j, long double x) {
  long double sum = 0;
  for (int m = 0; m < 200; ++m) {
    long double term = std::pow(x, (long double)m) / std::tgamma((long double)(k * m + j + 1));
    sum += term;
  }
  return sum;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("norm sums") {
  for (double x : {0.0, 0.5, 3.0, 20.0, 100.0}) CHECK(rel(norm_sum(1, 0, x), std::exp(x)) <= 1e-14);
  CHECK(rel(norm_sum(2, 0, 1.0), 1.5430806348152437) <= 1e-14);
  CHECK(rel(norm_sum(3, 1, 1.0), double(brute_norm_sum(3, 1, 1.0L))) <= 1e-14);
  for (int k = 1; k <= 5; ++k) {
    for (int j = 0; j < k; ++j) {
      CHECK(rel(norm_sum(k, j, 0.0), 1.0 / std::tgamma(j + 1.0)) <= 1e-15);
      for (double x : {0.3, 2.0, 16.0}) {
        CHECK(rel(norm_sum(k, j, x), double(brute_norm_sum(k, j, x))) <= 1e-14);
      }
    }
  }
  // e^x far beyond double range stays representable in scaled form.
  CHECK(rel(log_norm_sum(1, 0, 2000.0), 2000.0) <= 1e-13);
  CHECK_THROWS_AS(norm_sum(2, 2, 1.0), InvalidArgument);
  CHECK_THROWS_AS(norm_sum(2, 0, -1.0), InvalidArgument);
}

TEST_CASE("build_mcs examples") {
  const auto ground = build_mcs({1, 0, 0.0});
  CHECK(ground[0] == C(1));
  CHECK(ground.norm() == 1);
  const auto one = build_mcs({2, 1, 0.0});
  CHECK(std::abs(one[1] - 1.0) < 1e-15);
  CHECK(one.squared_norm() == doctest::Approx(1).epsilon(1e-15));

  // k=2, j=0, alpha=1: c_{2n} = 1 / sqrt((2n)! cosh 1)
  const auto s = build_mcs({2, 0, 1.0}, 64);
  for (int n = 0; n < 32; ++n) {
    const double expect = 1 / std::sqrt(std::tgamma(2.0 * n + 1) * std::cosh(1.0));
    CHECK(std::abs(s[2 * n] - expect) <= 1e-15 + 1e-13 * expect);
    CHECK(s[2 * n + 1] == C(0));
  }
}

TEST_CASE("build_mcs invariants") {
  for (int k = 1; k <= 4; ++k) {
    for (int j = 0; j < k; ++j) {
      for (C a : {C(0.5), C(2), C(4), C(2, 2), C(0, 4), C(-3, 1)}) {
        const McsLabel label{k, j, a};
        const auto s = build_mcs(label);
        CHECK(std::abs(s.norm() - 1) <= 1e-12);
        for (Eigen::Index n = 0; n < s.n_max(); ++n) {
          if (n % k != j) CHECK(s[n] == C(0));
        }
        // Positive real leading coefficient.
        CHECK(s[j].imag() == 0);
        CHECK(s[j].real() > 0);
        CHECK(eigenvalue_residual(label, s) <= 1e-10);
      }
    }
  }
  CHECK(eigenvalue_residual({1, 0, 0.0}, build_mcs({1, 0, 0.0})) == 0);
  CHECK(eigenvalue_residual({2, 0, C(2, 1)}, build_mcs({2, 0, C(2, 1)})) <= 1e-10);
  CHECK(eigenvalue_residual({3, 2, 3.0}, build_mcs({3, 2, 3.0})) <= 1e-10);

  CHECK_THROWS_AS(build_mcs({1, 0, 4.0}, 8), TailTooHeavy);
  CHECK(mcs_tail_mass({1, 0, 4.0}, 8) > 0.5);
  CHECK(mcs_tail_mass({3, 0, 4.0}, 256) < 1e-20);
  CHECK_THROWS_AS(build_mcs({2, 2, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(build_mcs({2, 0, C(std::nan(""), 0)}), InvalidArgument);
}

TEST_CASE("moments") {
  const auto m = moments({1, 0, C(1, 1)});
  CHECK(m.mean_x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(m.mean_p == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(m.uncertainty_product - 0.5) <= 1e-12);

  const std::pair<int, int> orders[] = {{2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};
  const double limits[] = {0.5, 1.5, 0.5, 1.5, 2.5};
  for (int i = 0; i < 5; ++i) {
    const auto [k, j] = orders[i];
    CHECK(std::abs(moments({k, j, 1e-6}).uncertainty_product - limits[i]) <= 1e-6);
    CHECK(std::abs(moments({k, j, 0.0}).uncertainty_product - limits[i]) <= 1e-15);
  }

  for (int k = 1; k <= 4; ++k) {
    for (int j = 0; j < k; ++j) {
      for (double r : {0.0, 0.7, 2.5, 4.0}) {
        const auto base = moments({k, j, r});
        CHECK(std::abs(base.mean_H - base.a_norm_sq - 0.5) <= 1e-12);
        CHECK(base.uncertainty_product >= 0.5 - 1e-12);
        CHECK(base.var_x >= 0);
        CHECK(base.var_p >= 0);
        if (k >= 3) {
          CHECK(std::abs(base.mean_x2 - base.mean_p2) <= 1e-12);
          CHECK(std::abs(base.uncertainty_product - base.mean_H) <= 1e-12);
        }
        // Phase covariance of the |alpha|-only quantities.
        const auto turned = moments({k, j, std::polar(r, 1.1)});
        CHECK(std::abs(turned.a_norm_sq - base.a_norm_sq) <= 1e-12 * std::max(1.0, base.a_norm_sq));
        CHECK(std::abs(turned.mean_H - base.mean_H) <= 1e-12 * base.mean_H);
        CHECK(std::abs(geometric_phase({k, j, std::polar(r, 1.1)}) - geometric_phase({k, j, r})) <= 1e-12 * std::max(1.0, base.mean_H));
      }
    }
  }
}

TEST_CASE("moment route discrepancy is reported") {
  MomentOptions strict;
  strict.route_tolerance = -1;
  try {
    moments({2, 0, 1.0}, strict);
    FAIL("expected RouteDiscrepancy");
  } catch (const RouteDiscrepancy& e) {
    const std::string what = e.what();
    CHECK(what.find("series") != std::string::npos);
    CHECK(what.find("matrix elements") != std::string::npos);
  }
}

TEST_CASE("closed forms of ||a alpha||^2") {
  CHECK(rel(a_norm_closed({2, 0, 1.0}), 0.76159415595576489) <= 1e-14);
  CHECK(std::abs(a_norm_closed({2, 1, 1e-8}) - 1) <= 1e-12);
  CHECK(a_norm_closed({2, 1, 0.0}) == 1);
  CHECK(rel(a_norm_closed({3, 0, 1.0}), a_norm_sq_series({3, 0, 1.0})) <= 1e-12);
  for (int k : {2, 3}) {
    for (int j = 0; j < k; ++j) {
      double worst = 0;
      for (int i = 0; i < 100; ++i) {
        const double r = 1e-3 + (4 - 1e-3) * i / 99.0;
        worst = std::max(worst, rel(a_norm_closed({k, j, r}), a_norm_sq_series({k, j, r})));
      }
      CHECK(worst <= 1e-10);
      // Large |alpha|: both forms approach |alpha|^{2/k}.
      CHECK(rel(a_norm_closed({k, j, 40.0}), a_norm_sq_series({k, j, 40.0})) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(a_norm_closed({4, 0, 1.0}), UnsupportedOrder);
  CHECK_THROWS_AS(a_norm_closed({1, 0, 1.0}), UnsupportedOrder);
}

TEST_CASE("geometric phase") {
  for (double r : {0.1, 1.0, 3.0}) {
    CHECK(std::abs(geometric_phase({2, 0, r}) - kPi * r * std::tanh(r)) <= 1e-10);
    CHECK(std::abs(geometric_phase({2, 1, r}) - kPi * (r / std::tanh(r) - 1)) <= 1e-10);
  }
  CHECK(std::abs(geometric_phase({2, 1, 0.0})) <= 1e-15);
  CHECK(std::abs(geometric_phase({2, 1, 1e-6})) <= 1e-10);
  const McsLabel l31{3, 1, 1.0};
  CHECK(std::abs(geometric_phase(l31) - 2 * kPi / 3 * (a_norm_sq_series(l31) - 1)) <= 1e-15);
  CHECK(std::abs(geometric_phase_closed(l31) - geometric_phase(l31)) <= 1e-10);

  for (int k = 1; k <= 4; ++k) {
    for (int j = 0; j < k; ++j) {
      for (C a : {C(0.5), C(2), C(2, 2)}) {
        const McsLabel label{k, j, a};
        CHECK(std::abs(geometric_phase(label) - geometric_phase_dynamical(label)) <= 1e-12);
        CHECK(std::abs(geometric_phase_from_state(build_mcs(label), k) - geometric_phase(label)) <= 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(geometric_phase_closed({4, 0, 1.0}), UnsupportedOrder);
}

TEST_CASE("cyclic evolution") {
  for (int k = 1; k <= 3; ++k) {
    for (int j = 0; j < k; ++j) {
      const McsLabel label{k, j, C(2, 2)};
      const auto s = build_mcs(label);
      const auto evolved = time_evolve(s, 2 * kPi / k);
      const auto expect = std::polar(1.0, -(2 * j + 1) * kPi / k) * s;
      CHECK((evolved - expect).norm() <= 1e-12);
    }
  }
}
