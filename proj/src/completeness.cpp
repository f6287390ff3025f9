#include "mcskit/completeness.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "mcskit/errors.hpp"
#include "mcskit/parallel.hpp"
#include "mcskit/quadrature.hpp"

namespace mcskit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRegistryMoments = 12;
constexpr double kRegistryTolerance = 1e-8;

void check_subspace(int k, int j) {
  if (k < 1 || j < 0 || j >= k) throw InvalidArgument("measure requires k >= 1 and 0 <= j < k");
}

double parse_number(const std::string& text, const std::string& key) {
  double value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InvalidArgument("measure parameter " + key + "='" + text + "' is not a finite number");
  }
  return value;
}

}  // namespace

double MeasureCandidate::log_f(double x) const {
  if (log_density) return log_density(x);
  const double f = density(x);
  return f > 0 ? std::log(f) : -std::numeric_limits<double>::infinity();
}

MomentReport moment_check(const MeasureCandidate& candidate, int n_top, double tolerance) {
  check_subspace(candidate.k, candidate.j);
  if (n_top < 1) throw InvalidArgument("n_top must be >= 1");
  if (!candidate.density && !candidate.log_density) {
    throw InvalidArgument("measure candidate '" + candidate.name + "' has no density");
  }
  MomentReport report;
  report.relative_errors.resize(n_top);
  report.panels.resize(n_top);
  report.quadrature_error.resize(n_top);

  if (candidate.density) {
    for (int i = 1; i <= 64; ++i) {
      if (candidate.density(candidate.support_hint * i / 16.0) < 0) report.negative_density = true;
    }
  }

  parallel_for(n_top, [&](Eigen::Index index) {
    const int n = int(index) + 1;
    const double log_target = std::lgamma(double(candidate.k) * n + candidate.j + 1);
    const std::function<double(double)> integrand = [&](double x) {
      double sign = 1;
      double lf = 0;
      if (candidate.log_density) {
        lf = candidate.log_density(x);
      } else {
        const double f = candidate.density(x);
        if (f == 0) return 0.0;
        sign = f < 0 ? -1 : 1;
        lf = std::log(std::abs(f));
      }
      if (lf == -std::numeric_limits<double>::infinity()) return 0.0;
      return sign * std::exp((n - 1) * std::log(x) + lf - log_target);
    };
    const auto result = adaptive_semi_infinite<double>(integrand, 0.0, candidate.support_hint,
                                                       1e-13, 1e-300);
    if (!result.converged) {
      throw QuadratureFailure("moment n=" + std::to_string(n) + " of '" + candidate.name +
                              "' did not converge");
    }
    report.relative_errors[index] = std::abs(result.value - 1);
    report.panels[index] = result.panels;
    report.quadrature_error[index] = result.error;
  });

  report.pass = true;
  for (int n = 1; n <= n_top; ++n) {
    if (!(report.relative_errors[n - 1] <= tolerance)) {
      report.pass = false;
      if (report.first_failure == 0) report.first_failure = n;
    }
  }
  return report;
}

MeasureCandidate standard_measure() {
  MeasureCandidate m;
  m.k = 1;
  m.j = 0;
  m.name = "x_exp";
  m.density = [](double x) { return x * std::exp(-x); };
  m.log_density = [](double x) { return std::log(x) - x; };
  m.support_hint = 10;
  return m;
}

MeasureCandidate stretched_gamma(int k, int j, double c, double a, double b, double s) {
  check_subspace(k, j);
  if (!(c > 0) || !(b > 0) || !(s > 0) || !std::isfinite(a)) {
    throw InvalidArgument("stretched_gamma needs c > 0, b > 0, s > 0 and finite a");
  }
  MeasureCandidate m;
  m.k = k;
  m.j = j;
  m.name = "stretched_gamma";
  m.density = [=](double x) { return c * std::pow(x, a) * std::exp(-b * std::pow(x, s)); };
  m.log_density = [=](double x) { return std::log(c) + a * std::log(x) - b * std::pow(x, s); };
  // x^s ~ 10 / b marks the bulk of the support.
  m.support_hint = std::pow(10.0 / b, 1.0 / s);
  return m;
}

MeasureCandidate parse_measure_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const std::string item =
          rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw InvalidArgument("measure spec item '" + item + "' is not key=value");
      }
      const std::string key = item.substr(0, eq);
      if (params.count(key)) throw InvalidArgument("measure spec repeats key '" + key + "'");
      params[key] = parse_number(item.substr(eq + 1), key);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  const auto take = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    params.erase(it);
    return v;
  };
  const double kd = take("k", 1);
  const double jd = take("j", 0);
  if (kd != std::floor(kd) || jd != std::floor(jd)) throw InvalidArgument("k and j must be integers");
  const int k = int(kd);
  const int j = int(jd);
  check_subspace(k, j);

  MeasureCandidate m;
  if (family == "x_exp") {
    m = standard_measure();
    m.k = k;
    m.j = j;
  } else if (family == "stretched_gamma") {
    const double c = take("c", 1);
    const double a = take("a", 1);
    const double b = take("b", 1);
    const double s = take("s", 1);
    m = stretched_gamma(k, j, c, a, b, s);
  } else if (family == "zero") {
    m.k = k;
    m.j = j;
    m.name = "zero";
    m.density = [](double) { return 0.0; };
    m.support_hint = 10;
  } else {
    throw InvalidArgument("unknown measure family '" + family +
                          "' (expected x_exp, stretched_gamma or zero)");
  }
  if (!params.empty()) {
    throw InvalidArgument("unknown key '" + params.begin()->first + "' for measure family " + family);
  }
  m.name = spec;
  return m;
}

MeasureRegistry::MeasureRegistry() { add(standard_measure()); }

void MeasureRegistry::add(MeasureCandidate candidate) {
  check_subspace(candidate.k, candidate.j);
  const auto report = moment_check(candidate, kRegistryMoments, kRegistryTolerance);
  if (!report.pass) {
    throw InvalidArgument("measure '" + candidate.name + "' fails moment n=" +
                          std::to_string(report.first_failure) + " and cannot be registered");
  }
  const auto key = std::make_pair(candidate.k, candidate.j);
  candidates_.insert_or_assign(key, std::move(candidate));
}

const MeasureCandidate& MeasureRegistry::find(int k, int j) const {
  const auto it = candidates_.find({k, j});
  if (it == candidates_.end()) {
    throw NoCandidate("no measure registered for k=" + std::to_string(k) + ", j=" + std::to_string(j));
  }
  return it->second;
}

bool MeasureRegistry::contains(int k, int j) const { return candidates_.count({k, j}) > 0; }

IdentityReport identity_resolution_numeric(const MeasureCandidate& candidate,
                                           const IdentityOptions& options) {
  check_subspace(candidate.k, candidate.j);
  const int dim = options.dim_check;
  if (dim < 1) throw InvalidArgument("dim_check must be >= 1");
  if (options.angular_points <= dim) {
    throw InvalidArgument("angular_points must exceed dim_check for exact phase orthogonality");
  }
  if (!(options.radial_cutoff > 0)) throw InvalidArgument("radial cutoff must be positive");
  const int k = candidate.k;
  const int j = candidate.j;

  // Angular factor int e^{i(m-n) phi} dphi on the uniform grid.
  Eigen::MatrixXcd angular = Eigen::MatrixXcd::Zero(dim, dim);
  for (int a = 0; a < options.angular_points; ++a) {
    const double phi = 2 * kPi * a / options.angular_points;
    for (int m = 0; m < dim; ++m) {
      for (int n = 0; n < dim; ++n) angular(m, n) += std::polar(1.0, (m - n) * phi);
    }
  }
  angular *= 2 * kPi / options.angular_points;

  Eigen::VectorXd log_fact(dim);
  for (int n = 0; n < dim; ++n) log_fact[n] = std::lgamma(double(k) * n + j + 1);

  // Radial integrand r^{m+n-1} f(r^2) / (pi sqrt((km+j)! (kn+j)!)).
  const auto radial = [&](double r) {
    Eigen::MatrixXd g(dim, dim);
    const double lf = candidate.log_f(r * r);
    const double lr = std::log(r);
    for (int m = 0; m < dim; ++m) {
      for (int n = 0; n < dim; ++n) {
        g(m, n) = lf == -std::numeric_limits<double>::infinity()
                      ? 0.0
                      : std::exp((m + n - 1) * lr + lf - 0.5 * (log_fact[m] + log_fact[n])) / kPi;
      }
    }
    return g;
  };

  const auto rule = gauss_legendre<double>(options.radial_order);
  // r = R u^3 on u in [0, 1]: integrable r^{-a} endpoint behaviour of f near 0 (for
  // instance fractional powers) becomes smooth in u.
  const double cutoff = options.radial_cutoff;
  const auto integrate = [&](int panels) {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = h * (p + 0.5);
      for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double u = mid + h / 2 * rule.nodes[i];
        sum += (rule.weights[i] * 3 * cutoff * u * u) * radial(cutoff * u * u * u);
      }
    }
    return Eigen::MatrixXd(sum * (h / 2));
  };

  IdentityReport report;
  int panels = 1;
  Eigen::MatrixXd previous = integrate(panels);
  while (panels < options.max_panels) {
    panels *= 2;
    Eigen::MatrixXd current = integrate(panels);
    const double change = (current - previous).cwiseAbs().maxCoeff();
    previous = std::move(current);
    if (change < options.radial_tolerance) {
      report.radial_converged = true;
      break;
    }
  }
  report.radial_panels = panels;
  report.matrix = angular.cwiseProduct(previous.cast<std::complex<double>>());
  report.deviation =
      (report.matrix - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      if (m != n) report.off_diagonal_max = std::max(report.off_diagonal_max, std::abs(report.matrix(m, n)));
    }
  }
  return report;
}

IdentityReport identity_resolution_numeric(const MeasureRegistry& registry, int k, int j,
                                           const IdentityOptions& options) {
  return identity_resolution_numeric(registry.find(k, j), options);
}

FullIdentityReport full_identity(const MeasureRegistry& registry, int k,
                                 const IdentityOptions& options) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const int dim = options.dim_check;
  FullIdentityReport report;
  report.matrix = Eigen::MatrixXcd::Zero(k * dim, k * dim);
  for (int j = 0; j < k; ++j) {
    const auto block = identity_resolution_numeric(registry, k, j, options);
    report.block_deviations.push_back(block.deviation);
    for (int m = 0; m < dim; ++m) {
      for (int n = 0; n < dim; ++n) report.matrix(k * m + j, k * n + j) += block.matrix(m, n);
    }
  }
  report.deviation =
      (report.matrix - Eigen::MatrixXcd::Identity(k * dim, k * dim)).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace mcskit
