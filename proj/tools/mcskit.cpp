// mcskit: datasets and verification for multiphoton coherent states.
//
// Complex inputs (--alpha, --z) accept "re,im", "r@theta_degrees" or a real number.
// Exit status: 0 when every requested check passes, 1 when a check fails, 2 on invalid
// input or a library error.

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "mcskit/errors.hpp"
#include "mcskit/fock.hpp"
#include "mcskit/mcs.hpp"
#include "mcskit/scs.hpp"
#include "mcskit/verify.hpp"
#include "mcskit/wigner.hpp"

namespace {

using namespace mcskit;
using cli::format_number;

constexpr double kPi = std::numbers::pi;

struct Output {
  std::string path;
  std::string format = "csv";
};

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Output file (stdout if omitted)");
  cmd->add_option("--format", out.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

/// Prints one status line to stderr and returns whether the check passed.
bool report(const std::string& name, double residual, double tolerance) {
  const bool pass = residual <= tolerance;
  std::cerr << (pass ? "PASS " : "FAIL ") << name << ": " << format_number(residual)
            << " (tol " << format_number(tolerance) << ")\n";
  return pass;
}

void check_order(int k, int j) {
  if (k < 1) throw InvalidArgument("--k must be >= 1 (got " + std::to_string(k) + ")");
  if (j < 0 || j >= k) {
    throw InvalidArgument("--j must satisfy 0 <= j < k (got j=" + std::to_string(j) +
                          ", k=" + std::to_string(k) + ")");
  }
}

int cmd_spectrum(int k, int levels, const Output& out) {
  const auto spectrum = ladder_spectrum(k, levels);
  cli::Table t;
  t.config = {{"command", "spectrum"}, {"k", std::to_string(k)}, {"levels", std::to_string(levels)}};
  t.columns = {{"ladder", ""}, {"n", ""}, {"energy", "hbar*omega"}};
  for (int i = 0; i < k; ++i) {
    for (int n = 0; n < levels; ++n) t.add_row({double(i + 1), double(n), spectrum.ladders[i][n]});
  }
  cli::write_table(t, out.path, out.format);
  const auto merged = spectrum.merged();
  double worst = 0;
  for (std::size_t n = 0; n < merged.size(); ++n) worst = std::max(worst, std::abs(merged[n] - (n + 0.5)));
  return report("merged ladders equal n + 1/2", worst, 0) ? 0 : 1;
}

int cmd_uncertainty(int k, int j, const cli::Range& range, const std::string& method,
                    Eigen::Index n_max, double tol, const Output& out) {
  check_order(k, j);
  if (range.lo < 0) throw InvalidArgument("--arange must start at |alpha| >= 0");
  const bool closed = method == "closed" || method == "both";
  const bool numeric = method == "numeric" || method == "both";
  if (closed && k != 1 && k != 2 && k != 3) {
    throw UnsupportedOrder("--method closed is available for k = 1, 2, 3 only (k=" +
                           std::to_string(k) + "); use --method numeric");
  }
  cli::Table t;
  t.config = {{"command", "uncertainty"}, {"k", std::to_string(k)}, {"j", std::to_string(j)},
              {"arange", format_number(range.lo) + "," + format_number(range.hi) + "," +
                             std::to_string(range.count)},
              {"method", method}, {"nmax", std::to_string(n_max)}, {"tol", format_number(tol)}};
  t.columns = {{"alpha_abs", ""}, {"dxdp_series", "hbar"}, {"mean_H_series", "hbar*omega"},
               {"beta_series", "rad"}};
  if (closed) {
    t.columns.push_back({"a_norm_sq_closed", ""});
    t.columns.push_back({"beta_closed", "rad"});
  }
  if (numeric) {
    t.columns.push_back({"dxdp_fock", "hbar"});
    t.columns.push_back({"mean_H_fock", "hbar*omega"});
    t.columns.push_back({"beta_fock", "rad"});
  }
  double worst_closed = 0;
  double worst_numeric = 0;
  for (double a : range.values()) {
    const McsLabel label{k, j, a};
    const auto series = moments_series(label);
    const double beta = geometric_phase(label);
    std::vector<double> row{a, series.uncertainty_product, series.mean_H, beta};
    if (closed) {
      // k = 1 has ||a|alpha>||^2 = |alpha|^2 and beta = 2 pi |alpha|^2.
      const double norm_sq = k == 1 ? a * a : a_norm_closed(label);
      const double beta_closed = k == 1 ? 2 * kPi * a * a : geometric_phase_closed(label);
      row.push_back(norm_sq);
      row.push_back(beta_closed);
      worst_closed = std::max({worst_closed, std::abs(norm_sq - series.a_norm_sq) / std::max(1.0, series.a_norm_sq),
                               std::abs(beta_closed - beta) / std::max(1.0, std::abs(beta))});
    }
    if (numeric) {
      const auto state = build_mcs(label, n_max);
      const auto direct = moments_from_state(state);
      const double beta_state = geometric_phase_from_state(state, k);
      row.push_back(direct.uncertainty_product);
      row.push_back(direct.mean_H);
      row.push_back(beta_state);
      worst_numeric = std::max({worst_numeric,
                                std::abs(direct.uncertainty_product - series.uncertainty_product),
                                std::abs(direct.mean_H - series.mean_H),
                                std::abs(beta_state - beta)});
    }
    t.add_row(std::move(row));
  }
  cli::write_table(t, out.path, out.format);
  bool ok = true;
  if (closed) ok = report("closed form vs series (relative)", worst_closed, tol) && ok;
  if (numeric) ok = report("Fock-state route vs series", worst_numeric, tol) && ok;
  return ok ? 0 : 1;
}

WignerField closed_wigner(int k, int j, std::complex<double> z, const PhaseGrid& grid, double t) {
  const auto zt = z * std::polar(1.0, -t);
  switch (k) {
    case 1: return wigner_scs(zt, grid);
    case 2: return wigner_cat2(j, zt, grid);
    case 3: return wigner_cat3(j, zt, grid);
    default:
      throw UnsupportedOrder("--method closed is available for k = 1, 2, 3 only (k=" +
                             std::to_string(k) + "); use --method numeric");
  }
}

int cmd_wigner(int k, int j, std::complex<double> z, const PhaseGrid& grid, double t,
               const std::string& method, double tol, const Output& out) {
  check_order(k, j);
  const bool closed = method == "closed" || method == "both";
  const bool numeric = method == "numeric" || method == "both";
  std::optional<WignerField> wc;
  std::optional<WignerField> wn;
  if (closed) wc = closed_wigner(k, j, z, grid, t);
  if (numeric) wn = wigner_numeric(mcs_as_scs(k, j, z), grid, WignerQuadrature{}, t);

  cli::Table table;
  table.config = {{"command", "wigner"}, {"k", std::to_string(k)}, {"j", std::to_string(j)},
                  {"z", cli::format_complex(z)}, {"t", format_number(t)},
                  {"grid", format_number(grid.q_min) + "," + format_number(grid.q_max) + "," +
                               format_number(grid.p_min) + "," + format_number(grid.p_max) + "," +
                               std::to_string(grid.n_q) + "," + std::to_string(grid.n_p)},
                  {"method", method}, {"tol", format_number(tol)}};
  table.columns = {{"q", "sqrt(hbar)"}, {"p", "sqrt(hbar)"}};
  if (closed) table.columns.push_back({"W_closed", "1/hbar"});
  if (numeric) table.columns.push_back({"W_numeric", "1/hbar"});
  for (Eigen::Index a = 0; a < grid.n_q; ++a) {
    for (Eigen::Index b = 0; b < grid.n_p; ++b) {
      std::vector<double> row{grid.q(a), grid.p(b)};
      if (wc) row.push_back(wc->values(a, b));
      if (wn) row.push_back(wn->values(a, b));
      table.add_row(std::move(row));
    }
  }
  cli::write_table(table, out.path, out.format);

  const WignerField& w = wc ? *wc : *wn;
  std::cerr << "max W = " << format_number(w.values.maxCoeff())
            << ", min W = " << format_number(w.values.minCoeff())
            << ", integral = " << format_number(w.integral())
            << ", negativity volume = " << format_number(negativity_volume(w)) << '\n';
  bool ok = report("integral equals 1", std::abs(w.integral() - 1), 1e-4);
  if (wn) ok = report("numeric imaginary residue", wn->imag_residue, 1e-10) && ok;
  if (wc && wn) ok = report("closed vs numeric sup difference", sup_difference(*wc, *wn), tol) && ok;
  return ok ? 0 : 1;
}

int cmd_evolve(int k, int j, std::complex<double> z, const cli::Range& xr, double t_max, int nt,
               const Output& out) {
  check_order(k, j);
  if (nt < 1) throw InvalidArgument("--nt must be >= 1");
  if (!std::isfinite(t_max) || t_max < 0) throw InvalidArgument("--tmax must be finite and >= 0");
  if (xr.count < 2) throw InvalidArgument("--xgrid needs at least 2 points");
  const Eigen::VectorXd x = uniform_grid(xr.lo, xr.hi, xr.count);
  Eigen::VectorXd times(nt);
  for (int i = 0; i < nt; ++i) times[i] = nt == 1 ? 0.0 : t_max * i / (nt - 1);
  if (nt > 1) times[nt - 1] = t_max;
  const Eigen::MatrixXd rho = density_movie(k, j, z, x, times);

  cli::Table table;
  table.config = {{"command", "evolve"}, {"k", std::to_string(k)}, {"j", std::to_string(j)},
                  {"z", cli::format_complex(z)},
                  {"xgrid", format_number(xr.lo) + "," + format_number(xr.hi) + "," + std::to_string(xr.count)},
                  {"tmax", format_number(t_max)}, {"nt", std::to_string(nt)}};
  table.columns = {{"t", "1/omega"}, {"x", "sqrt(hbar)"}, {"density", "1/sqrt(hbar)"}};
  for (int r = 0; r < nt; ++r) {
    for (Eigen::Index i = 0; i < x.size(); ++i) table.add_row({times[r], x[i], rho(r, i)});
  }
  cli::write_table(table, out.path, out.format);

  double worst_norm = 0;
  const double dx = x[1] - x[0];
  for (int r = 0; r < nt; ++r) {
    const double norm = dx * (rho.row(r).sum() - 0.5 * (rho(r, 0) + rho(r, x.size() - 1)));
    worst_norm = std::max(worst_norm, std::abs(norm - 1));
  }
  bool ok = report("row norms", worst_norm, 1e-6);
  const double period = 2 * kPi / k;
  const double cycles = t_max / period;
  if (nt > 1 && t_max > 0 && std::abs(cycles - std::round(cycles)) < 1e-12) {
    ok = report("density periodic over tmax", (rho.row(0) - rho.row(nt - 1)).cwiseAbs().maxCoeff(), 1e-10) && ok;
  }
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, const VerifyConfig& config, const Output& out) {
  const auto results = run_suite(suite, config);
  cli::Table table;
  table.config = {{"command", "verify"}, {"suite", suite}, {"nmax", std::to_string(config.n_max)},
                  {"tol", format_number(config.tail_tolerance)}};
  if (config.alpha) table.config.push_back({"alpha", cli::format_complex(*config.alpha)});
  bool ok = true;
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": residual " << format_number(r.residual)
              << " (tol " << format_number(r.tolerance) << ")";
    if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
    std::cout << '\n';
    ok = ok && r.pass;
    failed += r.pass ? 0 : 1;
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  if (!out.path.empty()) {
    table.columns = {{"check", ""}, {"residual", ""}, {"tolerance", ""}, {"pass", ""}};
    for (std::size_t i = 0; i < results.size(); ++i) {
      table.add_row({double(i), results[i].residual, results[i].tolerance, results[i].pass ? 1.0 : 0.0});
    }
    cli::write_table(table, out.path, out.format);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiphoton coherent states of the harmonic oscillator (hbar = m = omega = 1).\n"
               "Complex values: \"re,im\", \"r@theta_degrees\" or a real number."};
  app.require_subcommand(1);

  int k = 2;
  int j = 0;
  int levels = 4;
  std::string alpha_text = "1";
  std::string z_text = "1";
  std::string grid_text = "-8,8,-8,8,257,257";
  std::string arange_text = "0,4,101";
  std::string xgrid_text = "-12,12,2048";
  std::string method = "closed";
  std::string suite = "all";
  double t = 0;
  double tol = 1e-6;
  std::optional<double> t_max;
  int nt = 65;
  long n_max = kDefaultNMax;
  Output out;

  auto* spectrum = app.add_subcommand("spectrum", "Energy ladders of the k-photon algebra");
  spectrum->add_option("--k", k, "Photons per ladder step")->capture_default_str();
  spectrum->add_option("--levels", levels, "Levels per ladder")->capture_default_str();
  add_output_options(spectrum, out);

  auto* uncertainty = app.add_subcommand("uncertainty", "Uncertainty product, <H> and geometric phase versus |alpha|");
  uncertainty->add_option("--k", k)->capture_default_str();
  uncertainty->add_option("--j", j)->capture_default_str();
  uncertainty->add_option("--arange", arange_text, "|alpha| sweep lo,hi,count")->capture_default_str();
  uncertainty->add_option("--method", method, "closed, numeric (Fock state) or both")
      ->check(CLI::IsMember({"closed", "numeric", "both"}))
      ->capture_default_str();
  uncertainty->add_option("--nmax", n_max, "Fock truncation")->capture_default_str();
  uncertainty->add_option("--tol", tol, "Route agreement tolerance")->capture_default_str();
  add_output_options(uncertainty, out);

  auto* wigner = app.add_subcommand("wigner", "Wigner function on a phase-space grid");
  wigner->add_option("--k", k)->capture_default_str();
  wigner->add_option("--j", j)->capture_default_str();
  wigner->add_option("--z", z_text, "Base point z (alpha = z^k)")->capture_default_str();
  wigner->add_option("--alpha", alpha_text, "Eigenvalue alpha; z is its principal k-th root");
  wigner->add_option("--grid", grid_text, "qmin,qmax,pmin,pmax,nq,np")->capture_default_str();
  wigner->add_option("--t", t, "Evolution time")->capture_default_str();
  wigner->add_option("--method", method, "closed, numeric or both")
      ->check(CLI::IsMember({"closed", "numeric", "both"}))
      ->capture_default_str();
  wigner->add_option("--tol", tol, "Closed vs numeric tolerance")->capture_default_str();
  add_output_options(wigner, out);

  auto* evolve = app.add_subcommand("evolve", "Probability density |psi(x, t)|^2");
  evolve->add_option("--k", k)->capture_default_str();
  evolve->add_option("--j", j)->capture_default_str();
  evolve->add_option("--z", z_text, "Base point z (alpha = z^k)")->capture_default_str();
  evolve->add_option("--alpha", alpha_text, "Eigenvalue alpha; z is its principal k-th root");
  evolve->add_option("--xgrid", xgrid_text, "xmin,xmax,count")->capture_default_str();
  evolve->add_option("--tmax", t_max, "Final time (default: one period 2 pi / k)");
  evolve->add_option("--nt", nt, "Time samples")->capture_default_str();
  add_output_options(evolve, out);

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", suite, "algebra, states, wigner, completeness or all")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  verify->add_option("--nmax", n_max, "Fock truncation")->capture_default_str();
  verify->add_option("--alpha", alpha_text, "Eigenvalue for the state checks (default: a fixed set)");
  verify->add_option("--tol", tol, "Tail-mass tolerance for state construction");
  add_output_options(verify, out);

  CLI11_PARSE(app, argc, argv);

  try {
    // --alpha selects z as the principal k-th root when given for wigner/evolve.
    const auto base_point = [&](CLI::App* cmd) {
      if (cmd->count("--alpha") && cmd->count("--z")) {
        throw InvalidArgument("give either --z or --alpha, not both");
      }
      if (cmd->count("--alpha")) {
        const auto a = cli::parse_complex(alpha_text);
        if (k < 1) throw InvalidArgument("--k must be >= 1");
        return a == 0.0 ? std::complex<double>(0) : std::polar(std::pow(std::abs(a), 1.0 / k), std::arg(a) / k);
      }
      return cli::parse_complex(z_text);
    };
    if (n_max < 1) throw InvalidArgument("--nmax must be >= 1");

    if (*spectrum) return cmd_spectrum(k, levels, out);
    if (*uncertainty) {
      return cmd_uncertainty(k, j, cli::parse_range(arange_text, "--arange"), method, n_max, tol, out);
    }
    if (*wigner) return cmd_wigner(k, j, base_point(wigner), cli::parse_grid(grid_text), t, method, tol, out);
    if (*evolve) {
      const double tm = t_max.value_or(2 * kPi / std::max(k, 1));
      return cmd_evolve(k, j, base_point(evolve), cli::parse_range(xgrid_text, "--xgrid"), tm, nt, out);
    }
    if (*verify) {
      VerifyConfig config;
      config.n_max = n_max;
      if (verify->count("--alpha")) config.alpha = cli::parse_complex(alpha_text);
      if (verify->count("--tol")) config.tail_tolerance = tol;
      return cmd_verify(suite, config, out);
    }
  } catch (const mcskit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
