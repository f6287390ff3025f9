#pragma once

#include <cmath>

namespace mcskit {

/// mantissa * 2^exponent. Keeps factorial-weighted series finite for any argument.
struct ScaledValue {
  double mantissa = 0;
  long exponent = 0;

  double value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }
  double log() const { return std::log(mantissa) + double(exponent) * std::log(2.0); }
};

/// a / b for two scaled values.
inline double ratio(const ScaledValue& a, const ScaledValue& b) {
  return std::ldexp(a.mantissa / b.mantissa, static_cast<int>(a.exponent - b.exponent));
}

/// S_{k,j}(x) = sum_{m>=0} x^m / (km + j)!, summed by term recurrence.
ScaledValue norm_sum_scaled(int k, int j, double x);

/// S_{k,j}(x); returns 1/j! at x = 0. May overflow to +inf for very large x.
double norm_sum(int k, int j, double x);

double log_norm_sum(int k, int j, double x);

}  // namespace mcskit
