#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jacfact/circuit_sim.hpp"
#include "jacfact/numtheory.hpp"

namespace jacfact {

// One-shot squarefree-part guesser: given N, returns a candidate for its
// squarefree part B (or a prime divisor, or garbage). The boosting wrapper
// repeats calls and filters.
struct SquarefreeOracle {
  std::string kind;
  std::function<Int(const Int&)> call;

  // Exact answers from desk-scale classical factoring.
  static SquarefreeOracle classical_trial();
  // Always returns the same value; used to pin driver behavior in tests.
  static SquarefreeOracle constant(const Int& value);
  // Returns `success_value` with probability success_prob, otherwise
  // `failure_value`. Reproducible for a fixed seed.
  static SquarefreeOracle injected(const Int& success_value, double success_prob,
                                   const Int& failure_value, std::uint64_t seed);

  struct QuantumOptions {
    std::optional<Int> B_max;     // bound handed to each run; default: N itself
    Int small_prime_cutoff = 2;   // lets even inputs resolve classically
    ZeroPhase zero_phase = ZeroPhase::plus_one;
    unsigned ell_cap = 24;
  };
  // Each call runs the simulated circuit once (one sampled shot) and returns
  // the recovered denominator or the classically found prime. The shot seed
  // advances per call.
  static SquarefreeOracle quantum_sim(const QuantumOptions& options,
                                      std::uint64_t seed);
};

// Exact split N = A^2 * B with B squarefree, by classical factoring.
struct SquarefreeDecomposition {
  Int root;        // A
  Int squarefree;  // B
};
SquarefreeDecomposition squarefree_decompose_classical(const Int& N);

struct BoostOutcome {
  Int result;
  std::vector<Int> outputs;        // raw oracle outputs, in call order
  std::vector<Int> candidate_set;  // outputs dividing N with a square quotient
  std::uint64_t oracle_calls = 0;
};

// Repetition wrapper: primes return themselves, squares return 1, otherwise
// the oracle runs up to T times. A returned prime divisor of N wins
// immediately; else the minimum over outputs B' with B' | N and N/B' square,
// or N when no output qualifies.
BoostOutcome boosted_decompose_detail(const Int& N, const SquarefreeOracle& oracle,
                                      std::uint64_t T);
Int boosted_decompose(const Int& N, const SquarefreeOracle& oracle,
                      std::uint64_t T);

// Runs boosted_decompose with B_max = 2, 4, 16, ... (squared each level),
// stopping at the first nontrivial divisor. Returns 1 for squares, and N
// when every level up to B_max > N fails.
Int bmax_search(const Int& N,
                const std::function<SquarefreeOracle(const Int& B_max)>& factory,
                std::uint64_t T);

struct SpecialFactorReport {
  Factorization factorization;
  std::uint64_t oracle_calls = 0;  // boosted_decompose invocations
  bool aborted = false;
  std::string abort_reason;
};

// Complete factorization of integers whose prime-power exponents are pairwise
// distinct. Peels prime powers directly, recurses on square roots, and
// otherwise extracts one prime per oracle round via p = B / gcd(k, B) where
// N = k * B^gamma with B not dividing k. Non-special inputs are detected on
// the way (a composite p, or duplicate exponents in the result) and flagged
// via `aborted`; nothing is retried.
SpecialFactorReport special_factor(const Int& N, const SquarefreeOracle& oracle,
                                   std::uint64_t T);

// Product, primality and strict base ordering all verified.
bool validate_factorization(const Int& N, const Factorization& f);

}  // namespace jacfact
