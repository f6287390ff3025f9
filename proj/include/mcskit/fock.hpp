#pragma once

// Truncated Fock-space arithmetic for the harmonic oscillator (hbar = m = omega = 1).
//
// States live on the number basis |0>, ..., |n_max-1>. Ladder operators act on that
// fixed dimension; amplitude pushed past the cutoff by a raising step is measured and
// compared to a tolerance instead of being dropped silently.

#include <algorithm>
#include <cmath>
#include <complex>
#include <type_traits>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mcskit/errors.hpp"

namespace mcskit {

inline constexpr Eigen::Index kDefaultNMax = 256;
inline constexpr double kDefaultLeakageTol = 1e-12;

template <typename Real>
class BasicFockVector {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// Zero vector of dimension n_max.
  explicit BasicFockVector(Eigen::Index n_max) : coeffs_(Coeffs::Zero(checked(n_max))) {}

  explicit BasicFockVector(Coeffs coeffs) : coeffs_(std::move(coeffs)) { checked(coeffs_.size()); }

  /// The number state |n> in a basis of dimension n_max.
  static BasicFockVector basis(Eigen::Index n_max, Eigen::Index n) {
    if (n < 0 || n >= n_max) {
      throw Overflow("basis index " + std::to_string(n) + " outside truncation n_max=" +
                     std::to_string(n_max));
    }
    BasicFockVector v(n_max);
    v.coeffs_[n] = Scalar(1);
    return v;
  }

  Eigen::Index n_max() const noexcept { return coeffs_.size(); }
  const Coeffs& coeffs() const noexcept { return coeffs_; }
  Coeffs& coeffs() noexcept { return coeffs_; }

  Scalar operator[](Eigen::Index n) const { return coeffs_[n]; }
  Scalar& operator[](Eigen::Index n) { return coeffs_[n]; }

  Real norm() const { return coeffs_.norm(); }
  Real squared_norm() const { return coeffs_.squaredNorm(); }

  /// <this|other>
  Scalar dot(const BasicFockVector& other) const { return coeffs_.dot(other.coeffs_); }

  BasicFockVector& operator*=(Scalar s) {
    coeffs_ *= s;
    return *this;
  }
  friend BasicFockVector operator*(Scalar s, BasicFockVector v) { return v *= s; }
  friend BasicFockVector operator+(const BasicFockVector& a, const BasicFockVector& b) {
    return BasicFockVector(Coeffs(a.coeffs_ + b.coeffs_));
  }
  friend BasicFockVector operator-(const BasicFockVector& a, const BasicFockVector& b) {
    return BasicFockVector(Coeffs(a.coeffs_ - b.coeffs_));
  }

 private:
  static Eigen::Index checked(Eigen::Index n_max) {
    if (n_max < 1) throw InvalidArgument("Fock dimension must be positive");
    return n_max;
  }

  Coeffs coeffs_;
};

using FockVector = BasicFockVector<double>;

enum class LadderSign { Raising, Lowering };

/// (a^+)^k or (a^-)^k.
struct LadderPower {
  int k = 1;
  LadderSign sign = LadderSign::Lowering;

  static LadderPower raising(int k) { return checked({k, LadderSign::Raising}); }
  static LadderPower lowering(int k) { return checked({k, LadderSign::Lowering}); }

  static LadderPower checked(LadderPower op) {
    if (op.k < 1) throw InvalidArgument("ladder power k must be >= 1");
    return op;
  }
};

template <typename Real>
struct LadderResult {
  BasicFockVector<Real> state;
  /// Probability pushed past |n_max - 1>.
  Real leakage = 0;
};

template <typename Real>
BasicFockVector<Real> apply_lowering(const BasicFockVector<Real>& state) {
  const Eigen::Index n_max = state.n_max();
  BasicFockVector<Real> out(n_max);
  for (Eigen::Index n = 0; n + 1 < n_max; ++n) {
    out[n] = std::sqrt(static_cast<Real>(n + 1)) * state[n + 1];
  }
  return out;
}

/// Raising with truncation bookkeeping. Throws LeakageExceeded when the discarded
/// probability exceeds `tolerance`; pass infinity to only measure it.
template <typename Real>
LadderResult<Real> apply_raising(const BasicFockVector<Real>& state,
                                 Real tolerance = static_cast<Real>(kDefaultLeakageTol)) {
  const Eigen::Index n_max = state.n_max();
  LadderResult<Real> result{BasicFockVector<Real>(n_max), Real(0)};
  for (Eigen::Index n = 1; n < n_max; ++n) {
    result.state[n] = std::sqrt(static_cast<Real>(n)) * state[n - 1];
  }
  result.leakage = static_cast<Real>(n_max) * std::norm(state[n_max - 1]);
  if (result.leakage > tolerance) throw LeakageExceeded(double(result.leakage), double(tolerance));
  return result;
}

/// k-fold composition of the single-step ladder; leakage accumulates over the steps.
template <typename Real>
LadderResult<Real> apply_k_ladder(const BasicFockVector<Real>& state, LadderPower op,
                                  Real tolerance = static_cast<Real>(kDefaultLeakageTol)) {
  op = LadderPower::checked(op);
  LadderResult<Real> result{state, Real(0)};
  for (int step = 0; step < op.k; ++step) {
    if (op.sign == LadderSign::Lowering) {
      result.state = apply_lowering(result.state);
    } else {
      auto raised = apply_raising(result.state, std::numeric_limits<Real>::infinity());
      result.state = std::move(raised.state);
      result.leakage += raised.leakage;
    }
  }
  if (result.leakage > tolerance) throw LeakageExceeded(double(result.leakage), double(tolerance));
  return result;
}

/// H|n> = (n + 1/2)|n>.
template <typename Real>
BasicFockVector<Real> hamiltonian_apply(const BasicFockVector<Real>& state) {
  BasicFockVector<Real> out(state.n_max());
  for (Eigen::Index n = 0; n < state.n_max(); ++n) {
    out[n] = (static_cast<Real>(n) + Real(0.5)) * state[n];
  }
  return out;
}

/// U(t) = exp(-iHt).
template <typename Real>
BasicFockVector<Real> time_evolve(const BasicFockVector<Real>& state, Real t) {
  BasicFockVector<Real> out(state.n_max());
  for (Eigen::Index n = 0; n < state.n_max(); ++n) {
    // Extended-precision product: one rounding per component keeps the norm drift unbiased.
    using Wide = std::conditional_t<(sizeof(Real) > sizeof(long double)), Real, long double>;
    const auto phase = std::polar(Wide(1), -(static_cast<Wide>(n) + Wide(0.5)) * Wide(t));
    out[n] = std::complex<Real>(phase * std::complex<Wide>(state[n]));
  }
  return out;
}

/// x = (a + a^+)/sqrt(2). The component raised past the cutoff is dropped.
template <typename Real>
BasicFockVector<Real> position_apply(const BasicFockVector<Real>& state) {
  const auto up = apply_raising(state, std::numeric_limits<Real>::infinity()).state;
  const auto down = apply_lowering(state);
  return std::complex<Real>(std::sqrt(Real(0.5))) * (up + down);
}

/// p = i(a^+ - a)/sqrt(2).
template <typename Real>
BasicFockVector<Real> momentum_apply(const BasicFockVector<Real>& state) {
  const auto up = apply_raising(state, std::numeric_limits<Real>::infinity()).state;
  const auto down = apply_lowering(state);
  return std::complex<Real>(0, std::sqrt(Real(0.5))) * (up - down);
}

/// |kn + j>, the n-th rung of the (j+1)-th ladder.
template <typename Real = double>
BasicFockVector<Real> ladder_eigenstate(int k, int j, Eigen::Index n,
                                        Eigen::Index n_max = kDefaultNMax) {
  if (k < 1 || j < 0 || j >= k || n < 0) {
    throw InvalidArgument("ladder_eigenstate requires k >= 1, 0 <= j < k, n >= 0");
  }
  const Eigen::Index index = Eigen::Index(k) * n + j;
  if (index >= n_max) {
    throw Overflow("ladder state |" + std::to_string(index) + "> does not fit in n_max=" +
                   std::to_string(n_max));
  }
  return BasicFockVector<Real>::basis(n_max, index);
}

/// Residuals of the polynomial Heisenberg algebra generated by {H, (a^-)^k, (a^+)^k}.
/// Relative residuals are scaled by max(||reference||, 1).
template <typename Real>
struct PhaResiduals {
  Real raising = 0;     ///< [H, a_g^+] - k a_g^+
  Real lowering = 0;    ///< [H, a_g^-] + k a_g^-
  Real number = 0;      ///< a_g^+ a_g^- versus prod_i (H - i + 1/2)
  Real commutator = 0;  ///< [a_g^-, a_g^+] versus N(H + k) - N(H)
  Real raising_abs = 0;
  Real lowering_abs = 0;
  Real number_abs = 0;
  Real commutator_abs = 0;

  Real max_relative() const { return std::max({raising, lowering, number, commutator}); }
};

namespace detail {

/// prod_{i=1..k} (H + shift - i + 1/2) applied to `state`.
template <typename Real>
BasicFockVector<Real> number_polynomial_apply(const BasicFockVector<Real>& state, int k,
                                              Real shift) {
  BasicFockVector<Real> out = state;
  for (int i = 1; i <= k; ++i) {
    const Real offset = shift - static_cast<Real>(i) + Real(0.5);
    auto h = hamiltonian_apply(out);
    h.coeffs() += offset * out.coeffs();
    out = std::move(h);
  }
  return out;
}

template <typename Real>
Real relative_to(Real residual, Real reference) {
  return residual / std::max(reference, Real(1));
}

}  // namespace detail

/// Checks the degree-(k-1) polynomial Heisenberg algebra on `probe`. The probe must be
/// supported on n <= n_max - k - 1 so that no operator in the check reaches the cutoff.
template <typename Real>
PhaResiduals<Real> pha_commutator_check(int k, const BasicFockVector<Real>& probe) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const Eigen::Index limit = probe.n_max() - k - 1;
  for (Eigen::Index n = std::max<Eigen::Index>(limit + 1, 0); n < probe.n_max(); ++n) {
    if (probe[n] != std::complex<Real>(0)) {
      throw EdgeSupport("probe has support at n=" + std::to_string(n) +
                        " within k+1 of the truncation edge");
    }
  }
  const Real inf = std::numeric_limits<Real>::infinity();
  const auto up = [&](const BasicFockVector<Real>& v) {
    return apply_k_ladder(v, LadderPower::raising(k), inf).state;
  };
  const auto down = [&](const BasicFockVector<Real>& v) {
    return apply_k_ladder(v, LadderPower::lowering(k), inf).state;
  };
  const std::complex<Real> kk(static_cast<Real>(k));

  PhaResiduals<Real> r;
  {
    const auto ref = kk * up(probe);
    const auto lhs = hamiltonian_apply(up(probe)) - up(hamiltonian_apply(probe));
    r.raising_abs = (lhs - ref).norm();
    r.raising = detail::relative_to(r.raising_abs, ref.norm());
  }
  {
    const auto ref = kk * down(probe);
    const auto lhs = hamiltonian_apply(down(probe)) - down(hamiltonian_apply(probe));
    r.lowering_abs = (lhs + ref).norm();
    r.lowering = detail::relative_to(r.lowering_abs, ref.norm());
  }
  {
    const auto ref = detail::number_polynomial_apply(probe, k, Real(0));
    const auto direct = up(down(probe));
    r.number_abs = (direct - ref).norm();
    r.number = detail::relative_to(r.number_abs, ref.norm());
  }
  {
    const auto ref = detail::number_polynomial_apply(probe, k, static_cast<Real>(k)) -
                     detail::number_polynomial_apply(probe, k, Real(0));
    const auto direct = down(up(probe)) - up(down(probe));
    r.commutator_abs = (direct - ref).norm();
    r.commutator = detail::relative_to(r.commutator_abs, ref.norm());
  }
  return r;
}

/// The k energy ladders E_i + k n, E_i = i - 1/2.
struct LadderSpectrum {
  int k = 1;
  std::vector<std::vector<double>> ladders;

  std::vector<double> merged() const;
};

LadderSpectrum ladder_spectrum(int k, int levels_per_ladder);

inline std::vector<double> LadderSpectrum::merged() const {
  std::vector<double> all;
  for (const auto& ladder : ladders) all.insert(all.end(), ladder.begin(), ladder.end());
  std::sort(all.begin(), all.end());
  return all;
}

inline LadderSpectrum ladder_spectrum(int k, int levels_per_ladder) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (levels_per_ladder < 0) throw InvalidArgument("level count must be non-negative");
  LadderSpectrum spectrum{k, {}};
  for (int i = 1; i <= k; ++i) {
    const double base = i - 0.5;
    std::vector<double> ladder;
    ladder.reserve(levels_per_ladder);
    for (int n = 0; n < levels_per_ladder; ++n) ladder.push_back(base + double(k) * n);
    spectrum.ladders.push_back(std::move(ladder));
  }
  return spectrum;
}

}  // namespace mcskit
