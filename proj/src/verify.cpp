#include "mcskit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "mcskit/completeness.hpp"
#include "mcskit/errors.hpp"
#include "mcskit/mcs.hpp"
#include "mcskit/scs.hpp"
#include "mcskit/wigner.hpp"

namespace mcskit {

namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

/// Runs `residual`; an exception becomes a failing check that carries the message.
void check(std::vector<CheckResult>& out, std::string name, double tolerance,
           const std::function<double()>& residual) {
  CheckResult r{std::move(name), 0, tolerance, false, {}};
  try {
    r.residual = residual();
    r.pass = r.residual <= tolerance;
  } catch (const std::exception& e) {
    r.residual = std::numeric_limits<double>::quiet_NaN();
    r.detail = e.what();
  }
  out.push_back(std::move(r));
}

std::vector<Complex> state_alphas(const VerifyConfig& config) {
  if (config.alpha) return {*config.alpha};
  return {0.5, 2.0, 4.0, {2, 2}, {0, 4}};
}

std::string label_text(int k, int j, Complex a) {
  return "k=" + std::to_string(k) + " j=" + std::to_string(j) + " alpha=(" +
         std::to_string(a.real()) + "," + std::to_string(a.imag()) + ")";
}

void algebra_suite(std::vector<CheckResult>& out, const VerifyConfig&) {
  check(out, "lowering then raising gives N+1 on interior states", 1e-12, [] {
    const Eigen::Index n_max = 64;
    double worst = 0;
    for (Eigen::Index n = 0; n + 1 < n_max; ++n) {
      const auto v = FockVector::basis(n_max, n);
      const auto back = apply_raising(apply_lowering(v), 1e-12).state;
      worst = std::max(worst, (back + v - double(n + 1) * v).norm());
    }
    return worst;
  });

  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> gauss;
  for (int k = 1; k <= 5; ++k) {
    check(out, "PHA relations k=" + std::to_string(k) + " (10 random probes)", 1e-12, [&] {
      double worst = 0;
      for (int trial = 0; trial < 10; ++trial) {
        FockVector probe(128);
        for (Eigen::Index n = 0; n <= 40; ++n) probe[n] = Complex(gauss(rng), gauss(rng));
        probe *= Complex(1.0 / probe.norm());
        worst = std::max(worst, pha_commutator_check(k, probe).max_relative());
      }
      return worst;
    });
    check(out, "extremal states annihilated by N(H) k=" + std::to_string(k), 1e-12, [k] {
      double worst = 0;
      for (int j = 0; j < k; ++j) {
        const auto v = FockVector::basis(64, j);
        worst = std::max(worst, detail::number_polynomial_apply(v, k, 0.0).norm());
      }
      return worst;
    });
  }

  for (int k : {2, 3, 5}) {
    check(out, "spectrum union k=" + std::to_string(k), 0, [k] {
      const auto merged = ladder_spectrum(k, (60 + k - 1) / k).merged();
      double worst = 0;
      for (int n = 0; n < 60; ++n) worst = std::max(worst, std::abs(merged[n] - (n + 0.5)));
      return worst;
    });
  }

  check(out, "time evolution unitary over 1000 steps", 1e-14, [] {
    FockVector v(64);
    for (Eigen::Index n = 0; n < 64; ++n) v[n] = Complex(1.0 / (n + 1), 0.5 / (n + 2));
    v *= Complex(1.0 / v.norm());
    for (int s = 0; s < 1000; ++s) v = time_evolve(v, 0.0137);
    return std::abs(v.norm() - 1);
  });

  check(out, "DFT round trip k<=8", 1e-13, [] {
    double worst = 0;
    for (int k = 1; k <= 8; ++k) {
      const auto d = dft_matrix(k);
      worst = std::max(worst, (d.forward * d.inverse - Eigen::MatrixXcd::Identity(k, k))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    return worst;
  });

  check(out, "sum of unnormalized |z>_j rebuilds |z>", 1e-12, [] {
    double worst = 0;
    for (int k = 1; k <= 5; ++k) {
      for (Complex z : {Complex(1, 0), Complex(2, 0), Complex(1, 1)}) {
        auto sum = mcs_fock_unnormalized(k, 0, z, 96);
        for (int j = 1; j < k; ++j) sum = sum + mcs_fock_unnormalized(k, j, z, 96);
        worst = std::max(worst, (sum - scs_fock(z, 96, false)).coeffs().cwiseAbs().maxCoeff());
      }
    }
    return worst;
  });
}

void states_suite(std::vector<CheckResult>& out, const VerifyConfig& config) {
  for (int k = 1; k <= 3; ++k) {
    for (int j = 0; j < k; ++j) {
      for (Complex a : state_alphas(config)) {
        const McsLabel label{k, j, a};
        check(out, "eigenvalue " + label_text(k, j, a), 1e-10, [&] {
          return eigenvalue_residual(label, build_mcs(label, config.n_max, config.tail_tolerance));
        });
        check(out, "cyclicity " + label_text(k, j, a), 1e-10, [&] {
          const auto s = build_mcs(label, config.n_max, config.tail_tolerance);
          const auto overlap = s.dot(time_evolve(s, 2 * kPi / k));
          return std::abs(overlap * std::polar(1.0, (2 * j + 1) * kPi / k) - 1.0);
        });
        check(out, "moment routes " + label_text(k, j, a), 1e-10, [&] {
          const auto series = moments_series(label);
          const auto direct =
              moments_from_state(build_mcs(label, config.n_max, config.tail_tolerance));
          const double scale = std::max(1.0, series.mean_H);
          return std::max({std::abs(series.uncertainty_product - direct.uncertainty_product),
                           std::abs(series.mean_H - direct.mean_H),
                           std::abs(series.mean_x2 - direct.mean_x2),
                           std::abs(series.mean_p2 - direct.mean_p2)}) /
                 scale;
        });
      }
    }
  }

  check(out, "SCS minimum uncertainty |alpha|<=4", 1e-12, [&] {
    double worst = 0;
    for (int i = 0; i <= 40; ++i) {
      const auto m = moments_from_state(build_mcs({1, 0, std::polar(0.1 * i, 0.3 * i)}, config.n_max));
      worst = std::max(worst, std::abs(m.uncertainty_product - 0.5));
    }
    return worst;
  });

  const std::pair<int, int> orders[] = {{2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};
  const double limits[] = {0.5, 1.5, 0.5, 1.5, 2.5};
  for (int i = 0; i < 5; ++i) {
    const auto [k, j] = orders[i];
    check(out, "limit uncertainty at |alpha|=1e-6 k=" + std::to_string(k) + " j=" + std::to_string(j),
          1e-6, [&, k = k, j = j] {
            return std::abs(moments({k, j, 1e-6}).uncertainty_product - limits[i]);
          });
  }

  for (const auto& [k, j] : orders) {
    check(out, "closed vs series norm k=" + std::to_string(k) + " j=" + std::to_string(j), 1e-10,
          [k = k, j = j] {
            double worst = 0;
            for (int i = 0; i < 100; ++i) {
              const double r = 1e-3 + (4 - 1e-3) * i / 99.0;
              const double series = a_norm_sq_series({k, j, r});
              worst = std::max(worst, std::abs(a_norm_closed({k, j, r}) - series) / series);
            }
            return worst;
          });
    check(out, "geometric phase routes k=" + std::to_string(k) + " j=" + std::to_string(j), 1e-10,
          [k = k, j = j] {
            double worst = 0;
            for (int i = 0; i < 100; ++i) {
              const McsLabel label{k, j, 1e-3 + (4 - 1e-3) * i / 99.0};
              const double beta = geometric_phase(label);
              worst = std::max({worst, std::abs(beta - geometric_phase_dynamical(label)),
                                std::abs(beta - geometric_phase_closed(label))});
            }
            return worst;
          });
  }
}

void wigner_suite(std::vector<CheckResult>& out, const VerifyConfig&) {
  const PhaseGrid grid;
  for (int k = 1; k <= 3; ++k) {
    for (int j = 0; j < k; ++j) {
      const Complex z = 2;
      const std::string tag = "k=" + std::to_string(k) + " j=" + std::to_string(j) + " z=2";
      const auto closed = [&] {
        if (k == 1) return wigner_scs(z, grid);
        return k == 2 ? wigner_cat2(j, z, grid) : wigner_cat3(j, z, grid);
      };
      check(out, "Wigner closed vs numeric " + tag, 1e-6, [&] {
        return sup_difference(closed(), wigner_numeric(mcs_as_scs(k, j, z), grid));
      });
      check(out, "Wigner marginals " + tag, 1e-6, [&] {
        const auto report = marginal_check(closed(), mcs_as_scs(k, j, z));
        return std::max(report.position_deviation, report.momentum_deviation);
      });
      check(out, "Wigner purity " + tag, 1e-3, [&] { return std::abs(purity(closed()) - 1); });
      if (k == 1) {
        check(out, "SCS negativity volume", 1e-10, [&] { return negativity_volume(closed()); });
      } else {
        // Passes when the negativity volume exceeds 1e-3.
        check(out, "cat negativity volume above 1e-3 " + tag, 0, [&] {
          return std::max(0.0, 1e-3 - negativity_volume(closed()));
        });
      }
    }
  }
}

void completeness_suite(std::vector<CheckResult>& out, const VerifyConfig&) {
  check(out, "x e^{-x} moments n=1..20", 1e-8, [] {
    const auto report = moment_check(standard_measure(), 20, 1e-8);
    return *std::max_element(report.relative_errors.begin(), report.relative_errors.end());
  });
  check(out, "k=1 identity resolution on 12 states", 1e-6,
        [] { return identity_resolution_numeric(MeasureRegistry{}, 1, 0).deviation; });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "states", "wigner", "completeness", "all"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& config) {
  if (config.n_max < 1) throw InvalidArgument("n_max must be >= 1");
  std::vector<CheckResult> out;
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw InvalidArgument("unknown suite '" + suite +
                          "' (expected algebra, states, wigner, completeness or all)");
  }
  const bool all = suite == "all";
  if (all || suite == "algebra") algebra_suite(out, config);
  if (all || suite == "states") states_suite(out, config);
  if (all || suite == "wigner") wigner_suite(out, config);
  if (all || suite == "completeness") completeness_suite(out, config);
  return out;
}

}  // namespace mcskit
