#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mcskit/completeness.hpp"
#include "mcskit/errors.hpp"
#include "mcskit/quadrature.hpp"

using namespace mcskit;

namespace {

/// f = x^{(j+1)/k} exp(-x^{1/k}) / k: substituting u = x^{1/k} turns the n-th moment into
/// int u^{kn+j} e^{-u} du = Gamma(kn + j + 1).
MeasureCandidate root_gamma(int k, int j) {
  return stretched_gamma(k, j, 1.0 / k, double(j + 1) / k, 1, 1.0 / k);
}

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  const auto two = gauss_legendre<double>(2);
  CHECK(std::abs(std::abs(two.nodes[0]) - 1 / std::sqrt(3.0)) <= 1e-15);
  CHECK(std::abs(two.weights[0] - 1) <= 1e-15);
  const auto three = gauss_legendre<double>(3);
  double outer = 0;
  for (double x : three.nodes) outer = std::max(outer, std::abs(x));
  CHECK(std::abs(outer - std::sqrt(0.6)) <= 1e-15);

  for (int n : {5, 20, 40}) {
    const auto rule = gauss_legendre<double>(n);
    double sum = 0;
    for (double w : rule.weights) sum += w;
    CHECK(std::abs(sum - 2) <= 1e-14);
    // Exact for x^{2n-2}: int_{-1}^{1} x^{2n-2} = 2/(2n-1).
    double moment = 0;
    for (int i = 0; i < n; ++i) moment += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 2);
    CHECK(std::abs(moment - 2.0 / (2 * n - 1)) <= 1e-14);
  }
  const auto ld = gauss_legendre<long double>(10);
  long double sum = 0;
  for (auto w : ld.weights) sum += w;
  CHECK(std::abs(double(sum - 2)) <= 1e-17);
}

TEST_CASE("adaptive quadrature") {
  const auto root = adaptive_gauss_legendre<double>([](double x) { return std::sqrt(x); }, 0, 1);
  CHECK(std::abs(root.value - 2.0 / 3) <= 1e-12);
  CHECK(root.converged);
  const auto sine = adaptive_gauss_legendre<double>([](double x) { return std::sin(x); }, 0,
                                                    std::numbers::pi);
  CHECK(std::abs(sine.value - 2) <= 1e-13);
  const auto gamma5 = adaptive_semi_infinite<double>(
      [](double x) { return std::pow(x, 4) * std::exp(-x); }, 0, 10);
  CHECK(std::abs(gamma5.value - 24) <= 1e-11);
  CHECK_THROWS_AS(adaptive_semi_infinite<double>([](double) { return 1.0; }, 0, 1, 1e-13, 1e-300, 10),
                  QuadratureFailure);
  CHECK_THROWS_AS(
      adaptive_gauss_legendre<double>([](double) { return std::nan(""); }, 0, 1), QuadratureFailure);
  CHECK_THROWS_AS(adaptive_gauss_legendre<double>([](double x) { return x; }, 1, 0), InvalidArgument);
}

TEST_CASE("moment checks") {
  const auto standard = moment_check(standard_measure(), 20, 1e-8);
  CHECK(standard.pass);
  CHECK(standard.first_failure == 0);
  for (double e : standard.relative_errors) CHECK(e <= 1e-8);

  const auto zero = moment_check(parse_measure_spec("zero"), 5, 1e-8);
  CHECK_FALSE(zero.pass);
  CHECK(zero.first_failure == 1);
  for (double e : zero.relative_errors) CHECK(e == doctest::Approx(1));

  // e^{-x} gives Gamma(n) instead of Gamma(n + 1); n = 1 agrees since 0! = 1!.
  const auto plain = moment_check(parse_measure_spec("stretched_gamma:a=0"), 6, 1e-8);
  CHECK_FALSE(plain.pass);
  CHECK(plain.relative_errors[0] <= 1e-12);
  CHECK(plain.first_failure == 2);
  CHECK(plain.relative_errors[1] == doctest::Approx(0.5));

  for (int k = 2; k <= 3; ++k) {
    for (int j = 0; j < k; ++j) {
      const auto report = moment_check(root_gamma(k, j), 20, 1e-8);
      CAPTURE(k);
      CAPTURE(j);
      CHECK(report.pass);
    }
  }
  // Wrong subspace: the k = 1 density tested against the k = 2 moments.
  auto shifted = standard_measure();
  shifted.k = 2;
  CHECK_FALSE(moment_check(shifted, 4, 1e-8).pass);

  MeasureCandidate dip;
  dip.name = "dip";
  dip.density = [](double x) { return x * std::exp(-x) - 2 * std::exp(-2 * x); };
  const auto negative = moment_check(dip, 3, 1e-8);
  CHECK(negative.negative_density);
  CHECK_FALSE(negative.pass);
}

TEST_CASE("measure specs") {
  const auto s = parse_measure_spec("stretched_gamma:k=2,j=1,c=0.5,a=1,b=1,s=0.5");
  CHECK(s.k == 2);
  CHECK(s.j == 1);
  CHECK(s.name == "stretched_gamma:k=2,j=1,c=0.5,a=1,b=1,s=0.5");
  CHECK(s.density(4.0) == doctest::Approx(0.5 * 4 * std::exp(-2)));
  CHECK(moment_check(s, 12, 1e-8).pass);
  const auto x = parse_measure_spec("x_exp");
  CHECK(x.k == 1);
  CHECK(x.density(2.0) == doctest::Approx(2 * std::exp(-2)));

  for (const char* bad : {"", "gauss", "x_exp:q=1", "stretched_gamma:c=", "stretched_gamma:c=1,c=2",
                          "stretched_gamma:c=abc", "stretched_gamma:k=0", "stretched_gamma:k=2,j=2",
                          "stretched_gamma:s=0", "stretched_gamma:c=-1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_measure_spec(bad), InvalidArgument);
  }
}

TEST_CASE("measure registry") {
  MeasureRegistry registry;
  CHECK(registry.contains(1, 0));
  CHECK_FALSE(registry.contains(2, 0));
  CHECK_THROWS_AS(registry.find(2, 0), NoCandidate);
  CHECK_THROWS_AS(registry.add(parse_measure_spec("stretched_gamma:k=2,j=0")), InvalidArgument);
  CHECK_FALSE(registry.contains(2, 0));
  registry.add(root_gamma(2, 0));
  CHECK(registry.contains(2, 0));
  CHECK_THROWS_AS(full_identity(registry, 2), NoCandidate);
  CHECK_THROWS_AS(identity_resolution_numeric(registry, 3, 1), NoCandidate);
}

TEST_CASE("resolution of the identity") {
  const auto report = identity_resolution_numeric(MeasureRegistry{}, 1, 0);
  CHECK(report.deviation <= 1e-6);
  CHECK(report.off_diagonal_max <= 1e-14);
  CHECK(report.radial_converged);
  CHECK(report.matrix.rows() == 12);

  // A short radial window misses mass, mostly on the higher states.
  IdentityOptions short_window;
  short_window.radial_cutoff = 2;
  const auto cut = identity_resolution_numeric(standard_measure(), short_window);
  CHECK(cut.deviation > 0.5);
  CHECK(std::abs(cut.matrix(0, 0).real() - 1) < std::abs(cut.matrix(11, 11).real() - 1));

  IdentityOptions wide;
  wide.dim_check = 6;
  for (int k = 2; k <= 3; ++k) {
    // |alpha|^{2/k} sets the decay of the density, so k = 3 needs a much longer radial window.
    wide.radial_cutoff = k == 2 ? 150 : 800;
    MeasureRegistry registry;
    for (int j = 0; j < k; ++j) registry.add(root_gamma(k, j));
    const auto full = full_identity(registry, k, wide);
    CAPTURE(k);
    CHECK(full.deviation <= 1e-6);
    CHECK(full.matrix.rows() == k * 6);
    CHECK(full.block_deviations.size() == std::size_t(k));
  }

  IdentityOptions few_angles;
  few_angles.angular_points = 12;
  CHECK_THROWS_AS(identity_resolution_numeric(standard_measure(), few_angles), InvalidArgument);
}
