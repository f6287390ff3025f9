#include "mcskit/series.hpp"

#include <string>

#include "mcskit/errors.hpp"

namespace mcskit {

namespace {

constexpr double kRelativeStop = 1e-16;
constexpr int kStopRun = 3;
constexpr long kRescaleBits = 600;
constexpr long kMaxTerms = 10'000'000;

}  // namespace

ScaledValue norm_sum_scaled(int k, int j, double x) {
  if (k < 1 || j < 0 || j >= k) {
    throw InvalidArgument("norm_sum requires k >= 1 and 0 <= j < k (k=" + std::to_string(k) +
                          ", j=" + std::to_string(j) + ")");
  }
  if (!(x >= 0) || !std::isfinite(x)) throw InvalidArgument("norm_sum requires finite x >= 0");

  double term = 1;
  for (int i = 2; i <= j; ++i) term /= i;
  double sum = term;
  long exponent = 0;

  int quiet = 0;
  for (long m = 0; m < kMaxTerms; ++m) {
    double denom = 1;
    const double base = double(k) * double(m) + j;
    for (int i = 1; i <= k; ++i) denom *= base + i;
    term *= x / denom;
    sum += term;
    if (sum > std::ldexp(1.0, kRescaleBits)) {
      sum = std::ldexp(sum, -kRescaleBits);
      term = std::ldexp(term, -kRescaleBits);
      exponent += kRescaleBits;
    }
    // Terms are k-spaced in the factorial, so a single small one is not yet conclusive.
    quiet = term <= kRelativeStop * sum ? quiet + 1 : 0;
    if (quiet >= kStopRun) return {sum, exponent};
  }
  throw Error("norm_sum did not converge for x=" + std::to_string(x));
}

double norm_sum(int k, int j, double x) { return norm_sum_scaled(k, j, x).value(); }

double log_norm_sum(int k, int j, double x) { return norm_sum_scaled(k, j, x).log(); }

}  // namespace mcskit
