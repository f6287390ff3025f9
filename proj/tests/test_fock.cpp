#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mcskit/fock.hpp"

using namespace mcskit;
using C = std::complex<double>;

namespace {

double max_abs(const FockVector& v) { return v.coeffs().cwiseAbs().maxCoeff(); }

FockVector random_probe(std::mt19937_64& rng, Eigen::Index n_max, Eigen::Index top) {
  std::normal_distribution<double> g;
  FockVector v(n_max);
  for (Eigen::Index n = 0; n <= top; ++n) v[n] = C(g(rng), g(rng));
  v *= C(1.0 / v.norm());
  return v;
}

}  // namespace

TEST_CASE("lowering") {
  CHECK(max_abs(apply_lowering(FockVector::basis(8, 0))) == 0);
  const auto one = apply_lowering(FockVector::basis(8, 1));
  CHECK(max_abs(one - FockVector::basis(8, 0)) == 0);

  // (|0> + |2>)/sqrt2 -> sqrt2 |1> / sqrt2 = |1>
  FockVector v(8);
  v[0] = v[2] = 1 / std::sqrt(2.0);
  CHECK(max_abs(apply_lowering(v) - FockVector::basis(8, 1)) < 1e-15);
  CHECK(apply_lowering(v).n_max() == 8);
}

TEST_CASE("raising and leakage") {
  const auto r0 = apply_raising(FockVector::basis(8, 0));
  CHECK(max_abs(r0.state - FockVector::basis(8, 1)) == 0);
  CHECK(r0.leakage == 0);

  const auto inf = std::numeric_limits<double>::infinity();
  const auto edge = apply_raising(FockVector::basis(8, 7), inf);
  CHECK(max_abs(edge.state) == 0);
  CHECK(edge.leakage == 8);
  CHECK_THROWS_AS(apply_raising(FockVector::basis(8, 7)), LeakageExceeded);

  const auto r3 = apply_raising(FockVector::basis(8, 3)).state;
  CHECK(r3[4] == C(2));
  CHECK(r3.norm() == doctest::Approx(2));

  CHECK_THROWS_AS(FockVector(0), InvalidArgument);
}

TEST_CASE("k-th power ladders") {
  const auto down2 = apply_k_ladder(FockVector::basis(16, 5), LadderPower::lowering(2)).state;
  CHECK(std::abs(down2[3] - 2 * std::sqrt(5.0)) < 1e-14);
  CHECK(down2.norm() == doctest::Approx(2 * std::sqrt(5.0)));
  CHECK(max_abs(apply_k_ladder(FockVector::basis(16, 2), LadderPower::lowering(3)).state) == 0);

  std::mt19937_64 rng(7);
  const auto probe = random_probe(rng, 16, 15);
  CHECK(max_abs(apply_k_ladder(probe, LadderPower::lowering(1)).state - apply_lowering(probe)) == 0);

  // Leakage adds up over the steps: |6> in n_max 8 loses 7*8 on the second step.
  const auto inf = std::numeric_limits<double>::infinity();
  const auto up = apply_k_ladder(FockVector::basis(8, 6), LadderPower::raising(2), inf);
  CHECK(up.leakage == doctest::Approx(56));
  CHECK_THROWS_AS(LadderPower::lowering(0), InvalidArgument);
}

TEST_CASE("Hamiltonian") {
  CHECK(hamiltonian_apply(FockVector::basis(4, 0))[0] == C(0.5));
  for (int k = 1; k <= 4; ++k) {
    for (int j = 0; j < k; ++j) {
      const auto v = ladder_eigenstate(k, j, 3, 32);
      const double e = j + 0.5 + 3.0 * k;
      CHECK(max_abs(hamiltonian_apply(v) - C(e) * v) == 0);
    }
  }
  CHECK(max_abs(hamiltonian_apply(FockVector(5))) == 0);
}

TEST_CASE("N+1 from lowering then raising") {
  for (Eigen::Index n = 0; n + 1 < 32; ++n) {
    const auto v = FockVector::basis(32, n);
    const auto w = apply_raising(apply_lowering(v)).state + v;
    CHECK(max_abs(w - C(double(n + 1)) * v) < 1e-13);
  }
}

TEST_CASE("polynomial Heisenberg algebra relations") {
  const auto r = pha_commutator_check(2, FockVector::basis(32, 4));
  CHECK(r.raising < 1e-12);
  CHECK(r.lowering < 1e-12);
  CHECK(r.number < 1e-12);
  CHECK(r.commutator < 1e-12);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK(pha_commutator_check(3, random_probe(rng, 64, 10)).max_relative() <= 1e-12);
  }

  // N(H)|0> = (H - 1/2)|0> = 0 for k = 1; all extremal states are annihilated.
  CHECK(detail::number_polynomial_apply(FockVector::basis(8, 0), 1, 0.0).norm() == 0);
  for (int k = 1; k <= 5; ++k) {
    for (int j = 0; j < k; ++j) {
      CHECK(detail::number_polynomial_apply(FockVector::basis(16, j), k, 0.0).norm() == 0);
    }
  }
  // The product formula is a_g^+ a_g^- on a non-extremal state: |5>, k = 2 gives 5*4.
  const auto n5 = detail::number_polynomial_apply(FockVector::basis(16, 5), 2, 0.0);
  CHECK(std::abs(n5[5] - 20.0) < 1e-12);

  // Support allowed up to n_max - k - 1 = 12.
  CHECK_THROWS_AS(pha_commutator_check(3, FockVector::basis(16, 13)), EdgeSupport);
  CHECK_NOTHROW(pha_commutator_check(3, FockVector::basis(16, 12)));
}

TEST_CASE("ladder eigenstates") {
  CHECK(ladder_eigenstate(3, 0, 2)[6] == C(1));
  CHECK(ladder_eigenstate(1, 0, 5)[5] == C(1));
  const auto three = ladder_eigenstate(2, 1, 1);
  CHECK(three[3] == C(1));
  // sqrt(1!/3!) (a^+)^2 |1> = |3>
  const auto built = C(std::sqrt(1.0 / 6.0)) *
                     apply_k_ladder(FockVector::basis(kDefaultNMax, 1), LadderPower::raising(2)).state;
  CHECK(max_abs(built - three) < 1e-15);
  CHECK_THROWS_AS(ladder_eigenstate(3, 1, 5, 16), Overflow);
  CHECK_THROWS_AS(ladder_eigenstate(3, 3, 0), InvalidArgument);
}

TEST_CASE("time evolution") {
  std::mt19937_64 rng(3);
  const auto v = random_probe(rng, 32, 31);
  CHECK(max_abs(time_evolve(v, 0.0) - v) == 0);
  const auto ground = time_evolve(FockVector::basis(4, 0), 2 * std::numbers::pi);
  CHECK(std::abs(ground[0] + 1.0) < 1e-15);

  auto w = v;
  for (int s = 0; s < 1000; ++s) w = time_evolve(w, 0.01);
  CHECK(std::abs(w.norm() - 1) <= 1e-14);
  CHECK(max_abs(w - time_evolve(v, 10.0)) < 1e-11);
}

TEST_CASE("ladder spectrum") {
  const auto s = ladder_spectrum(3, 4);
  REQUIRE(s.ladders.size() == 3);
  CHECK(s.ladders[0] == std::vector<double>{0.5, 3.5, 6.5, 9.5});
  CHECK(s.ladders[1] == std::vector<double>{1.5, 4.5, 7.5, 10.5});
  CHECK(s.ladders[2] == std::vector<double>{2.5, 5.5, 8.5, 11.5});
  for (int k : {1, 2, 3, 5, 7}) {
    const auto merged = ladder_spectrum(k, 12).merged();
    REQUIRE(merged.size() == std::size_t(12 * k));
    for (std::size_t n = 0; n < merged.size(); ++n) CHECK(merged[n] == n + 0.5);
  }
  CHECK_THROWS_AS(ladder_spectrum(0, 3), InvalidArgument);
}

TEST_CASE("extended precision instantiation") {
  using LV = BasicFockVector<long double>;
  LV v = LV::basis(16, 5);
  const auto down = apply_k_ladder(v, LadderPower::lowering(2)).state;
  CHECK(std::abs(down[3] - std::sqrt(20.0L)) < 1e-17L);
  CHECK(pha_commutator_check(2, v).max_relative() < 1e-15L);
}
