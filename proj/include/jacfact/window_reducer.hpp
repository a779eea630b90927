#pragma once

#include <optional>
#include <vector>

#include "jacfact/numtheory.hpp"

namespace jacfact {

// Block layout for the windowed reduction: N is consumed in n/m blocks of m
// bits each, least significant first, through a 2m-bit working window.
struct ReduceParams {
  unsigned n = 0;  // total bit budget, a multiple of m, n >= 2m
  unsigned m = 0;  // block width, >= 1
};

void validate_reduce_params(const ReduceParams& p);

// Window contents after j completed iterations.
struct WindowState {
  Int z;
  unsigned j = 0;
};

struct TraceRecord {
  unsigned j;    // iteration index
  Int block;     // N_j, the m-bit block consumed
  Int ctrl;      // multiplier chosen this iteration
  Int z_before;  // window at entry
  Int z_mid;     // z_before + ctrl*x, before the shift
  Int z_after;   // window at exit
};

struct ReduceTrace {
  std::vector<TraceRecord> records;  // one per iteration, (n-m)/m total
};

struct ReduceCounters {
  std::uint64_t iterations = 0;
  unsigned peak_window_bits = 0;  // max bit_length(z_mid), never above 2m
  std::uint64_t mults = 0;        // m-bit multiplies, 2 per iteration
  std::uint64_t adds = 0;         // m-bit add/subtract ops, 2 per iteration
};

struct ReduceResult {
  Int z;  // final window; z*2^(n-m) + (N mod 2^(n-m)) is the multiple of x
  std::optional<ReduceTrace> trace;
};

// One iteration: pick ctrl so that z + ctrl*x agrees with block N_j in the low
// m bits, then retire those bits by shifting the window down. With
// runtime_checks set, the congruence (z + ctrl*x) == N_j (mod 2^m) is
// re-verified and an invariant_error is raised on mismatch.
WindowState step(const WindowState& state, const Int& block, const Int& x,
                 const Int& x_minv, const ReduceParams& params,
                 bool runtime_checks = true, ReduceCounters* counters = nullptr,
                 ReduceTrace* trace = nullptr);

// Exact inverse of step: rebuilds z_mid = z_after*2^m + block, recomputes
// ctrl = floor(z_mid / x) and returns the entry state. Raises invariant_error
// if ctrl does not fit in m bits or the recovered window is >= x, i.e. the
// input could not have been produced by step.
WindowState inverse_step(const WindowState& after, const Int& block,
                         const Int& x, const ReduceParams& params);

// Runs the full reduction: needs odd x with 0 < x < 2^m and 0 <= N < 2^n.
// The returned z satisfies z < x, and y = z*2^(n-m) + (N mod 2^(n-m)) is the
// unique multiple of x below 2^(n-m) * x congruent to N mod 2^(n-m).
ReduceResult match_low_bits(const Int& N, const Int& x,
                            const ReduceParams& params, bool want_trace = false,
                            bool runtime_checks = true,
                            ReduceCounters* counters = nullptr);

// Independent route to the same answer: the unique k < 2^(n-m) with
// k == N * x^(-1) (mod 2^(n-m)), computed in one shot with a library modular
// inverse. match_low_bits must always return floor(k*x / 2^(n-m)).
Int recover_k(const Int& N, const Int& x, const ReduceParams& params);

}  // namespace jacfact
