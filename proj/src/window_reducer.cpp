#include "jacfact/window_reducer.hpp"

#include <algorithm>

namespace jacfact {

void validate_reduce_params(const ReduceParams& p) {
  if (p.m < 1) throw std::invalid_argument("reduce: block width m must be >= 1");
  if (p.n < 2 * p.m)
    throw std::invalid_argument("reduce: need n >= 2m, one full window");
  if (p.n % p.m != 0)
    throw std::invalid_argument("reduce: m must divide n");
}

namespace {

Int low_bits(const Int& v, unsigned bits) {
  Int r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), bits);
  return r;
}

void validate_operands(const Int& N, const Int& x, const ReduceParams& p) {
  validate_reduce_params(p);
  if (x <= 0 || mpz_even_p(x.get_mpz_t()))
    throw std::invalid_argument("reduce: x must be odd and positive");
  if (bit_length(x) > p.m)
    throw std::invalid_argument("reduce: x must fit in one m-bit block");
  if (N < 0 || bit_length(N) > p.n)
    throw std::invalid_argument("reduce: N must satisfy 0 <= N < 2^n");
}

}  // namespace

WindowState step(const WindowState& state, const Int& block, const Int& x,
                 const Int& x_minv, const ReduceParams& params,
                 bool runtime_checks, ReduceCounters* counters,
                 ReduceTrace* trace) {
  const unsigned m = params.m;
  Int diff = block - state.z;
  Int ctrl = low_bits(x_minv * diff, m);
  Int z_mid = state.z + ctrl * x;
  if (runtime_checks && low_bits(z_mid, m) != block)
    throw invariant_error("step: window does not match the consumed block");
  WindowState next;
  next.z = z_mid >> m;
  next.j = state.j + 1;
  if (counters) {
    counters->iterations += 1;
    counters->mults += 2;  // x_minv * diff and ctrl * x
    counters->adds += 2;   // block - z and z + ctrl*x
    counters->peak_window_bits = std::max(
        counters->peak_window_bits, static_cast<unsigned>(bit_length(z_mid)));
  }
  if (trace)
    trace->records.push_back({state.j, block, ctrl, state.z, z_mid, next.z});
  return next;
}

WindowState inverse_step(const WindowState& after, const Int& block,
                         const Int& x, const ReduceParams& params) {
  if (after.j == 0)
    throw std::invalid_argument("inverse_step: no iteration to undo");
  const unsigned m = params.m;
  Int z_mid = (after.z << m) + block;
  Int ctrl = z_mid / x;
  if (bit_length(ctrl) > m)
    throw invariant_error("inverse_step: ctrl does not fit in m bits");
  WindowState before;
  before.z = z_mid - ctrl * x;
  before.j = after.j - 1;
  if (before.z >= x)
    throw invariant_error("inverse_step: recovered window not below x");
  return before;
}

ReduceResult match_low_bits(const Int& N, const Int& x,
                            const ReduceParams& params, bool want_trace,
                            bool runtime_checks, ReduceCounters* counters) {
  validate_operands(N, x, params);
  const unsigned m = params.m;
  const unsigned iterations = params.n / m - 1;
  Int x_minv = mod_inverse_pow2(x, m);
  if (counters) counters->mults += 1;  // inverse precomputation, one unit

  ReduceResult out;
  if (want_trace) out.trace.emplace();
  ReduceTrace* trace = out.trace ? &*out.trace : nullptr;
  WindowState state;
  state.z = 0;
  for (unsigned j = 0; j < iterations; ++j) {
    Int block = low_bits(N >> (j * m), m);
    state = step(state, block, x, x_minv, params, runtime_checks, counters,
                 trace);
  }
  out.z = state.z;
  return out;
}

Int recover_k(const Int& N, const Int& x, const ReduceParams& params) {
  validate_operands(N, x, params);
  const unsigned nm = params.n - params.m;
  Int mod = Int(1) << nm;
  Int xinv;
  if (!mpz_invert(xinv.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t()))
    throw std::invalid_argument("recover_k: x not invertible");  // unreachable, x odd
  return low_bits(N, nm) * xinv % mod;
}

}  // namespace jacfact
