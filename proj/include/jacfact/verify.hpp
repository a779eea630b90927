#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jacfact/numtheory.hpp"

namespace jacfact {

// Outcome of one verification sweep. `failures` keeps the first few
// counterexamples in printable form; `failed` counts all of them.
struct CheckResult {
  std::string suite;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::vector<std::string> failures;

  bool passed() const { return failed == 0; }
  void fail(const std::string& detail);
};

// Streamed Jacobi against the quadratic reference, every odd modulus below
// 2^n_bits and every x below 2^x_bits, for each requested block width.
CheckResult check_streamed_vs_reference_exhaustive(
    unsigned n_bits = 12, unsigned x_bits = 6,
    const std::vector<unsigned>& block_widths = {2, 3, 6});

// Same comparison on random operands up to max_n_bits bits.
CheckResult check_streamed_vs_reference_random(
    std::uint64_t trials, unsigned max_n_bits, unsigned max_x_bits,
    const std::vector<unsigned>& block_widths, std::uint64_t seed);

// Random reductions with full traces: window bounds, per-block congruences,
// divisibility of the matched multiple, and the inverse-step replay back to
// the all-zero state.
CheckResult check_window_invariants(std::uint64_t trials, std::uint64_t seed);

// match_low_bits against the one-shot modular-inverse route.
CheckResult check_window_oracle_equivalence(std::uint64_t trials,
                                            std::uint64_t seed);

// Character sums: magnitude sqrt(m) at coprime frequencies, 0 elsewhere,
// for every odd squarefree modulus up to max_m.
CheckResult check_gauss_sums(std::uint64_t max_m = 201, double tol = 1e-6);

// For every odd nonsquare modulus up to max_n, the +1 and -1 classes both
// have phi(N)/2 elements.
CheckResult check_sign_counts(std::uint64_t max_n = 3000);

// Measured cost counters equal the model prediction on random (n, m).
CheckResult check_cost_counters(std::uint64_t cases, std::uint64_t seed);

// Direct phase sums against the closed geometric form, and the magnitude
// floor M/4 whenever |x*M| <= 1/2.
CheckResult check_phase_sums(std::uint64_t trials, std::uint64_t seed,
                             double tol = 1e-9);

// trace_distance_check internals: the coprime count must match both a direct
// gcd scan and the per-class counting formula.
CheckResult check_counting_and_trace(std::uint64_t trials, std::uint64_t seed);

// Every divisor of a very good N (composite, not square, not squarefree)
// whose cofactor is a square is a multiple of the squarefree part.
CheckResult check_divisor_filter(std::uint64_t max_n = 5000);

// special_factor with the exact classical oracle across every special
// integer up to max_n: no aborts, and the result matches direct factoring.
CheckResult check_special_classical(std::uint64_t max_n = 100000,
                                    std::uint64_t extra_T = 10);

}  // namespace jacfact
