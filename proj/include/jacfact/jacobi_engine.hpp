#pragma once

#include "jacfact/numtheory.hpp"
#include "jacfact/window_reducer.hpp"

namespace jacfact {

struct EngineConfig {
  unsigned block_bits = 64;    // requested m; raised to bit_length(x') if needed
  bool runtime_checks = false; // re-verify the per-block congruence while running
};

// Work accounting for one jacobi_streamed call. Multiplies and adds are
// counted in m-bit units: two of each per block iteration, plus one multiply
// for the window-inverse precomputation and one subtract for the final
// top-bits difference. The quadratic base case is not itemized; its operand
// width is recorded in base_case_bits instead.
struct CostReport {
  unsigned n_padded = 0;       // padded bit budget (bit_length(N) on fallback)
  unsigned block_bits = 0;     // effective m
  std::uint64_t block_iterations = 0;  // n_padded / m - 1 when streamed
  unsigned peak_window_bits = 0;       // <= 2m
  std::uint64_t mbit_mults = 0;        // 2 * block_iterations + 1 when streamed
  std::uint64_t mbit_adds = 0;         // 2 * block_iterations + 1 when streamed
  unsigned base_case_bits = 0;         // modulus width of the quadratic tail
  bool streamed = false;
};

struct JacobiResult {
  int value = 0;  // -1, 0 or +1
  CostReport cost;
};

// Smallest n with n >= bit_length(N), m | n and n >= 2m.
unsigned pad_bitlength(const Int& N, unsigned m);

// Jacobi symbol (x | N) for odd N >= 3, x >= 1, computed by streaming N
// through the windowed reducer in m-bit blocks and finishing with a quadratic
// base case on operands below 2^m. Inputs whose bit length fits inside a
// single block fall back to the reference loop outright.
JacobiResult jacobi_streamed(const Int& x, const Int& N,
                             const EngineConfig& config = {});

// Predicted CostReport for a streamed run with parameters (n, m). The
// multiply/add counts are exact; peak_window_bits and base_case_bits are
// upper bounds (the window register is 2m bits, the base modulus at most m).
CostReport cost_model(unsigned n, unsigned m);

}  // namespace jacfact
