#pragma once

// Invariant suites run by `mcskit verify`.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mcskit/fock.hpp"

namespace mcskit {

struct CheckResult {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::string detail;  ///< error message when the check threw
};

struct VerifyConfig {
  Eigen::Index n_max = kDefaultNMax;
  /// Replaces the default eigenvalue set of the state checks.
  std::optional<std::complex<double>> alpha;
  double tail_tolerance = kDefaultLeakageTol;
};

/// Suites: algebra, states, wigner, completeness, all. InvalidArgument for other names.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& config = {});

const std::vector<std::string>& suite_names();

}  // namespace mcskit
