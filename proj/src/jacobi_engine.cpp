#include "jacfact/jacobi_engine.hpp"

#include <algorithm>

namespace jacfact {

namespace {

unsigned round_up(unsigned v, unsigned m) { return (v + m - 1) / m * m; }

// (2 | N)^e for odd N: -1 when e is odd and N == +-3 (mod 8).
int two_symbol_power(const Int& N, std::uint64_t e) {
  if (e % 2 == 0) return 1;
  unsigned long r = mpz_fdiv_ui(N.get_mpz_t(), 8);
  return (r == 3 || r == 5) ? -1 : 1;
}

}  // namespace

unsigned pad_bitlength(const Int& N, unsigned m) {
  if (m < 1) throw std::invalid_argument("pad_bitlength: m must be >= 1");
  unsigned bl = static_cast<unsigned>(bit_length(N));
  return std::max(round_up(bl, m), 2 * m);
}

JacobiResult jacobi_streamed(const Int& x, const Int& N,
                             const EngineConfig& config) {
  if (N < 3 || mpz_even_p(N.get_mpz_t()))
    throw std::invalid_argument("jacobi_streamed: N must be odd and >= 3");
  if (x < 1) throw std::invalid_argument("jacobi_streamed: x must be >= 1");
  if (config.block_bits < 1)
    throw std::invalid_argument("jacobi_streamed: block_bits must be >= 1");

  const unsigned long t = x == 1 ? 0 : mpz_scan1(x.get_mpz_t(), 0);
  Int xp = x >> t;  // odd part of x

  // The reducer needs x' inside one block; a wider x' simply raises m.
  const unsigned m =
      std::max<unsigned>(config.block_bits, static_cast<unsigned>(bit_length(xp)));
  const unsigned bl = static_cast<unsigned>(bit_length(N));

  JacobiResult out;
  if (round_up(bl, m) < 2 * m) {
    // N fits in a single block; nothing to stream.
    out.value = jacobi_reference(x, N);
    out.cost.n_padded = bl;
    out.cost.block_bits = m;
    out.cost.base_case_bits = bl;
    out.cost.streamed = false;
    return out;
  }

  const unsigned n = pad_bitlength(N, m);
  int sign = two_symbol_power(N, t);  // (2 | N)^t from the even part of x
  // Flip from swapping (x' | N) to (N | x').
  if (mpz_fdiv_ui(xp.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(N.get_mpz_t(), 4) == 3)
    sign = -sign;
  // (2 | x')^(n-m) from peeling the retired bits off the matched multiple.
  sign *= two_symbol_power(xp, n - m);

  ReduceCounters counters;
  ReduceResult red = match_low_bits(N, xp, {n, m}, /*want_trace=*/false,
                                    config.runtime_checks, &counters);
  Int s = (N >> (n - m)) - red.z;
  if (bit_length(s) > m)
    throw invariant_error("jacobi_streamed: top-bits difference exceeds m bits");
  int base = jacobi_reference(s, xp);

  out.value = base == 0 ? 0 : sign * base;
  out.cost.n_padded = n;
  out.cost.block_bits = m;
  out.cost.block_iterations = counters.iterations;
  out.cost.peak_window_bits = counters.peak_window_bits;
  out.cost.mbit_mults = counters.mults;
  out.cost.mbit_adds = counters.adds + 1;  // final top-bits subtraction
  out.cost.base_case_bits = static_cast<unsigned>(bit_length(xp));
  out.cost.streamed = true;
  return out;
}

CostReport cost_model(unsigned n, unsigned m) {
  ReduceParams p{n, m};
  validate_reduce_params(p);
  CostReport c;
  c.n_padded = n;
  c.block_bits = m;
  c.block_iterations = n / m - 1;
  c.peak_window_bits = 2 * m;
  c.mbit_mults = 2 * c.block_iterations + 1;
  c.mbit_adds = 2 * c.block_iterations + 1;
  c.base_case_bits = m;
  c.streamed = true;
  return c;
}

}  // namespace jacfact
