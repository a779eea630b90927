#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jacfact/numtheory.hpp"

namespace jacfact {

// Phase assigned where the Jacobi symbol vanishes; the states stay unit
// modulus either way.
enum class ZeroPhase : int { plus_one = +1, minus_one = -1 };

struct SampleMode {
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
};

struct SimParams {
  Int N;                         // odd modulus under test, >= 3
  Int B_max;                     // bound on the squarefree part, >= 2
  std::optional<unsigned> ell;   // register width override; default fits B_max^2
  Int small_prime_cutoff = 0;    // classical trial-division bound, 0 disables
  ZeroPhase zero_phase = ZeroPhase::plus_one;
  std::optional<SampleMode> sample;  // nullopt: exact outcome weighting
  unsigned ell_cap = 24;             // refuse register widths past this
};

// Width that guarantees 2^ell > B_max^2.
unsigned derive_ell(const Int& B_max);
unsigned effective_ell(const SimParams& params);

using StateVector = std::vector<std::complex<double>>;

// Normalized state over 2^ell basis indices: index (x mod 2^ell) carries
// phase (x | N) for x in [1, 2^ell], with vanishing symbols replaced by the
// configured unit phase.
StateVector build_phase_state(const SimParams& params);

// Fourier transform with kernel exp(-2*pi*i*x*y / 2^ell), unitary
// normalization. Length must be a power of two.
StateVector qft_mod_2l(const StateVector& state);
StateVector inverse_qft_mod_2l(const StateVector& state);

std::vector<double> outcome_distribution(const StateVector& state);

struct SimReport {
  double success_prob = 0.0;  // mass of outcomes whose post-processing hits B
  std::map<Int, double> recovered;  // candidate value -> probability mass
  std::uint64_t successful_y_count = 0;
  double min_successful_amp_ratio = 0.0;  // min prob(y) * phi(B) over that set
  Int true_b;                 // squarefree part of N, from classical factoring
  std::optional<Int> found_small_prime;
  std::string channel;        // "quantum", "small_prime" or "none"
  std::vector<std::uint64_t> shot_outcomes;  // sampled mode only
};

// Full run: optional trial-division stage, phase preparation, transform,
// measurement (exact weighting or sampled shots) and denominator recovery via
// best_rational_approx with bound B_max.
SimReport run_algorithm1(const SimParams& params);

// Outcomes y admitting a coprime k in [1, B-1] with |y/M - k/B| <= 1/(2M).
// Verifies that distinct k land on distinct y and that there are at least
// phi(B) outcomes; violations raise invariant_error.
std::vector<std::uint64_t> successful_y_set(const SimParams& params);

// Min over successful outcomes of prob(y) * phi(B); should stay bounded away
// from zero as ell grows.
double amplitude_lower_bound_check(const SimParams& params);

// Sum over j in Z_m of (j | m) * exp(-2*pi*i*j*k/m) for odd squarefree
// m >= 3. Magnitude is sqrt(m) when gcd(k, m) == 1 and 0 otherwise.
std::complex<double> jacobi_character_dft(const Int& m, const Int& k);

// Sum over k in [0, M) of exp(-2*pi*i*k*x); closed geometric form checked by
// the verification suite.
std::complex<double> geometric_phase_sum(double x, std::uint64_t M);

struct TraceDistanceResult {
  double distance;   // between the (x|B)-phased and (x|N)-phased unit states
  Int norm_sq_psi1;  // #{x in [1, M] : gcd(x, B) = 1}, cross-checked against
                     // the per-class counting formula
};
TraceDistanceResult trace_distance_check(const Int& N, std::uint64_t M,
                                         ZeroPhase zero_phase = ZeroPhase::plus_one);

}  // namespace jacfact
