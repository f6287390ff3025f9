#pragma once

// Partial resolution of the identity on the ladder subspaces span{|kn + j>}: moment
// testing of candidate radial densities f_j and direct numerical assembly of
//   int |alpha>_j <alpha| dmu_j(alpha),
//   dmu_j = S_{k,j}(|alpha|^2) f_j(|alpha|^2) / (pi |alpha|) d|alpha| dphi.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mcskit {

struct MeasureCandidate {
  int k = 1;
  int j = 0;
  std::string name;
  std::function<double(double)> density;
  /// log f(x); preferred over log(density(x)) when present (no underflow for large x).
  std::function<double(double)> log_density;
  /// Length scale of the support, used as the first quadrature segment.
  double support_hint = 10;

  double log_f(double x) const;
};

struct MomentReport {
  std::vector<double> relative_errors;  ///< index n - 1 holds moment n
  std::vector<int> panels;              ///< adaptive panels used per moment
  std::vector<double> quadrature_error;
  bool pass = false;
  int first_failure = 0;  ///< first failing n, 0 if none
  bool negative_density = false;  ///< density < 0 seen at a sample point
};

/// Tests int_0^inf x^{n-1} f(x) dx = Gamma(kn + j + 1) for n = 1..n_top. Each integrand is
/// divided by Gamma(kn + j + 1) in log space, so the relative error is |I_n - 1|.
/// Throws QuadratureFailure if an integral does not converge.
MomentReport moment_check(const MeasureCandidate& candidate, int n_top, double tolerance);

/// f(x) = x e^{-x} for k = 1, j = 0.
MeasureCandidate standard_measure();

/// c x^a exp(-b x^s).
MeasureCandidate stretched_gamma(int k, int j, double c, double a, double b, double s);

/// Parses "family" or "family:key=value,...". Families:
///   x_exp                               x e^{-x} (k = 1, j = 0)
///   stretched_gamma:c=,a=,b=,s=         c x^a exp(-b x^s), defaults c=1 a=1 b=1 s=1
///   zero                                f = 0
/// Optional keys k= and j= set the target subspace (default 1 and 0).
MeasureCandidate parse_measure_spec(const std::string& spec);

class MeasureRegistry {
 public:
  /// Starts with the standard k = 1 measure.
  MeasureRegistry();

  /// Replaces any entry for (candidate.k, candidate.j). Candidates must pass the first 12
  /// moments at 1e-8; InvalidArgument otherwise.
  void add(MeasureCandidate candidate);
  /// Throws NoCandidate if nothing is registered for (k, j).
  const MeasureCandidate& find(int k, int j) const;
  bool contains(int k, int j) const;

 private:
  std::map<std::pair<int, int>, MeasureCandidate> candidates_;
};

struct IdentityReport {
  Eigen::MatrixXcd matrix;        ///< <km + j| resolved operator |kn + j>, m, n < dim_check
  double deviation = 0;           ///< max |matrix - I|
  double off_diagonal_max = 0;    ///< max |matrix(m, n)|, m != n
  int radial_panels = 0;          ///< composite panels at convergence
  bool radial_converged = false;  ///< successive panel doublings agreed within 1e-10
};

struct IdentityOptions {
  double radial_cutoff = 12;  ///< upper limit of |alpha|
  int radial_order = 20;      ///< Gauss-Legendre points per panel
  int angular_points = 64;    ///< uniform angles; must exceed dim_check
  int dim_check = 12;
  double radial_tolerance = 1e-10;
  int max_panels = 4096;
};

/// Assembles the resolved operator on the first dim_check states |kn + j> using the
/// candidate's density. The angular sum over a uniform grid is exact for the phase
/// factors involved, so off-diagonal entries vanish to rounding.
IdentityReport identity_resolution_numeric(const MeasureCandidate& candidate,
                                           const IdentityOptions& options = {});

/// Looks up (k, j) in the registry; NoCandidate if absent.
IdentityReport identity_resolution_numeric(const MeasureRegistry& registry, int k, int j,
                                           const IdentityOptions& options = {});

struct FullIdentityReport {
  Eigen::MatrixXcd matrix;  ///< on |0> .. |k dim_check - 1>
  double deviation = 0;
  std::vector<double> block_deviations;
};

/// Sum of the k subspace blocks; NoCandidate if any j lacks a registered measure.
FullIdentityReport full_identity(const MeasureRegistry& registry, int k,
                                 const IdentityOptions& options = {});

}  // namespace mcskit
