#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "jacfact/circuit_sim.hpp"
#include "oracles.hpp"

using jacfact::Int;
using jacfact::SimParams;
using jacfact::StateVector;
using jacfact::ZeroPhase;
using doctest::Approx;

namespace {

double l2_diff(const StateVector& a, const StateVector& b) {
  REQUIRE(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

StateVector random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  StateVector v(n);
  for (auto& z : v) z = {dist(gen), dist(gen)};
  return v;
}

}  // namespace

TEST_CASE("register width derivation") {
  CHECK(jacfact::derive_ell(Int(2)) == 3);
  CHECK(jacfact::derive_ell(Int(5)) == 5);
  CHECK(jacfact::derive_ell(Int(7)) == 6);
  CHECK(jacfact::derive_ell(Int(11)) == 7);
  CHECK_THROWS_AS(jacfact::derive_ell(Int(1)), std::invalid_argument);

  SimParams p;
  p.N = 45;
  p.B_max = 5;
  CHECK(jacfact::effective_ell(p) == 5);
  p.ell = 8;
  CHECK(jacfact::effective_ell(p) == 8);
  p.ell = 30;  // above the default cap of 24
  CHECK_THROWS_AS(jacfact::effective_ell(p), std::invalid_argument);
}

TEST_CASE("phase state carries the symbol as a sign") {
  SimParams p;
  p.N = 175;
  p.B_max = 35;
  p.ell = 6;
  StateVector st = jacfact::build_phase_state(p);
  REQUIRE(st.size() == 64);
  const double amp = 1.0 / 8.0;
  CHECK(st[1].real() == Approx(amp));    // (1 | 175) = +1
  CHECK(st[2].real() == Approx(amp));    // 175 = 7 mod 8
  CHECK(st[3].real() == Approx(-amp));   // (3 | 175) = -1
  CHECK(st[5].real() == Approx(amp));    // (5 | 175) = 0, convention +1
  CHECK(st[0].real() == Approx(amp));    // x = 64 wraps to index 0
  for (const auto& z : st) CHECK(z.imag() == 0.0);

  p.zero_phase = ZeroPhase::minus_one;
  StateVector st2 = jacfact::build_phase_state(p);
  CHECK(st2[5].real() == Approx(-amp));
  CHECK(st2[3].real() == Approx(-amp));  // nonzero symbols unaffected

  double norm = 0.0;
  for (const auto& z : st) norm += std::norm(z);
  CHECK(norm == Approx(1.0));
}

TEST_CASE("phase state per-element route matches the reference symbol") {
  // A modulus just above the tabulation threshold exercises the per-x path.
  SimParams p;
  p.N = 1048583;  // prime, 21 bits
  p.B_max = 2;
  p.ell = 4;
  StateVector st = jacfact::build_phase_state(p);
  const double amp = 0.25;
  for (std::uint64_t x = 1; x <= 16; ++x) {
    int j = jacfact::jacobi_reference(Int(static_cast<unsigned long>(x)), p.N);
    CHECK(st[x % 16].real() == Approx(j * amp));
  }
}

TEST_CASE("transform matches the direct discrete Fourier sum") {
  StateVector in = random_state(32, 5);
  StateVector fast = jacfact::qft_mod_2l(in);
  StateVector slow = oracle::dft_direct(in);
  CHECK(l2_diff(fast, slow) < 1e-12);
}

TEST_CASE("transform pins: delta to uniform, norm preserved, round trip") {
  StateVector delta(16);
  delta[0] = 1.0;
  StateVector flat = jacfact::qft_mod_2l(delta);
  for (const auto& z : flat) {
    CHECK(z.real() == Approx(0.25));
    CHECK(z.imag() == Approx(0.0));
  }

  StateVector in = random_state(64, 9);
  StateVector out = jacfact::qft_mod_2l(in);
  double ni = 0.0, no = 0.0;
  for (const auto& z : in) ni += std::norm(z);
  for (const auto& z : out) no += std::norm(z);
  CHECK(no == Approx(ni));

  StateVector back = jacfact::inverse_qft_mod_2l(out);
  CHECK(l2_diff(in, back) < 1e-12);

  StateVector bad(12);
  CHECK_THROWS_AS(jacfact::qft_mod_2l(bad), std::invalid_argument);
}

TEST_CASE("successful outcome sets") {
  SimParams p;
  p.N = 7;  // squarefree part 7
  p.B_max = 7;
  p.ell = 6;
  auto ys = jacfact::successful_y_set(p);
  CHECK(ys == std::vector<std::uint64_t>{9, 18, 27, 37, 46, 55});

  p.N = 3;
  p.B_max = 3;
  p.ell = 5;
  ys = jacfact::successful_y_set(p);
  CHECK(ys == std::vector<std::uint64_t>{11, 21});
}

TEST_CASE("exact run on 175 concentrates on the squarefree part") {
  SimParams p;
  p.N = 175;  // 5^2 * 7, squarefree part 7
  p.B_max = 7;
  auto rep = jacfact::run_algorithm1(p);
  CHECK(rep.true_b == 7);
  CHECK(rep.channel == "quantum");
  CHECK(rep.successful_y_count >= 6);  // phi(7)
  CHECK(rep.success_prob > 0.1);
  CHECK(rep.min_successful_amp_ratio > 0.0);
  double total = 0.0;
  for (auto& [den, mass] : rep.recovered) total += mass;
  CHECK(total == Approx(1.0));
  CHECK(rep.recovered.at(Int(7)) == Approx(rep.success_prob));
}

TEST_CASE("square modulus yields the trivial denominator") {
  SimParams p;
  p.N = 9;
  p.B_max = 4;
  p.ell = 4;
  auto rep = jacfact::run_algorithm1(p);
  CHECK(rep.true_b == 1);
  CHECK(rep.channel == "none");
  CHECK(rep.successful_y_count == 0);
  // With the +1 convention every phase is +1, so all mass sits at y = 0.
  CHECK(rep.success_prob == Approx(1.0));
  CHECK(rep.recovered.at(Int(1)) == Approx(1.0));
}

TEST_CASE("small prime stage short-circuits the run") {
  SimParams p;
  p.N = 24;
  p.B_max = 24;
  p.small_prime_cutoff = 2;
  auto rep = jacfact::run_algorithm1(p);
  REQUIRE(rep.found_small_prime.has_value());
  CHECK(*rep.found_small_prime == 2);
  CHECK(rep.channel == "small_prime");
  CHECK(rep.success_prob == Approx(1.0));
}

TEST_CASE("sampled mode is reproducible and tracks the exact law") {
  const std::uint64_t shots = 100000;
  SimParams p;
  p.N = 45;
  p.B_max = 5;
  p.sample = jacfact::SampleMode{shots, 7};
  auto a = jacfact::run_algorithm1(p);
  auto b = jacfact::run_algorithm1(p);
  CHECK(a.shot_outcomes == b.shot_outcomes);
  REQUIRE(a.shot_outcomes.size() == shots);

  SimParams q = p;
  q.sample.reset();
  auto exact = jacfact::run_algorithm1(q);
  // Binomial three-sigma envelope around the exact success mass.
  double sigma = std::sqrt(exact.success_prob * (1 - exact.success_prob) /
                           static_cast<double>(shots));
  CHECK(std::abs(a.success_prob - exact.success_prob) < 3 * sigma + 1e-9);

  p.sample->seed = 8;
  auto c = jacfact::run_algorithm1(p);
  CHECK(a.shot_outcomes != c.shot_outcomes);
}

TEST_CASE("successful amplitudes stay level as the register grows") {
  // Fixed squarefree part 7, register width swept; the floor prob(y)*phi(B)
  // must not sag below half its median across the family.
  std::vector<double> ratios;
  for (unsigned ell = 6; ell <= 12; ++ell) {
    SimParams p;
    p.N = 175;
    p.B_max = 7;
    p.ell = ell;
    ratios.push_back(jacfact::amplitude_lower_bound_check(p));
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  double median = sorted[sorted.size() / 2];
  CHECK(median > 0.0);
  for (double r : ratios) CHECK(r >= median / 2.0);
}

TEST_CASE("character sum magnitudes") {
  auto s = jacfact::jacobi_character_dft(Int(15), Int(2));
  CHECK(std::abs(s) == Approx(std::sqrt(15.0)).epsilon(1e-9));
  s = jacfact::jacobi_character_dft(Int(15), Int(5));
  CHECK(std::abs(s) == Approx(0.0).scale(1.0));
  s = jacfact::jacobi_character_dft(Int(15), Int(0));
  CHECK(std::abs(s) == Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(jacfact::jacobi_character_dft(Int(9), Int(1)),
                  std::invalid_argument);  // not squarefree
  CHECK_THROWS_AS(jacfact::jacobi_character_dft(Int(10), Int(1)),
                  std::invalid_argument);  // even
}

TEST_CASE("geometric phase sum closed cases") {
  auto s = jacfact::geometric_phase_sum(0.0, 8);
  CHECK(s.real() == Approx(8.0));
  CHECK(s.imag() == Approx(0.0));
  s = jacfact::geometric_phase_sum(0.5, 2);
  CHECK(std::abs(s) == Approx(0.0).scale(1.0));
  // 1 + e^{-i pi/2} = 1 - i
  s = jacfact::geometric_phase_sum(0.25, 2);
  CHECK(s.real() == Approx(1.0));
  CHECK(s.imag() == Approx(-1.0));
}

TEST_CASE("trace distance against an in-test recount") {
  for (std::uint64_t M : {16ull, 64ull, 256ull}) {
    for (Int N : {Int(15), Int(45), Int(175), Int(99)}) {
      auto r = jacfact::trace_distance_check(N, M);
      CHECK(r.distance >= 0.0);
      CHECK(r.distance <= 1.0);

      Int B = jacfact::squarefree_part(jacfact::factorize(N));
      std::int64_t inner = 0, norm1 = 0;
      for (std::uint64_t x = 1; x <= M; ++x) {
        Int xi(static_cast<unsigned long>(x));
        int jb = B > 1 ? jacfact::jacobi_reference(xi, B) : 1;
        int jn = jacfact::jacobi_reference(xi, N);
        if (jn == 0) jn = 1;
        inner += jb * jn;
        if (jb != 0) ++norm1;
      }
      CHECK(r.norm_sq_psi1 == norm1);
      double overlap_sq = double(inner) * double(inner) /
                          (double(norm1) * double(M));
      CHECK(r.distance ==
            Approx(std::sqrt(std::max(0.0, 1.0 - overlap_sq))).epsilon(1e-12));
    }
  }
}

TEST_CASE("identical states have zero distance") {
  // Every x in 1..4 is coprime to 35, so the two states coincide exactly.
  auto r = jacfact::trace_distance_check(Int(35), 4);
  CHECK(r.norm_sq_psi1 == 4);
  CHECK(r.distance == Approx(0.0).scale(1.0));
}
