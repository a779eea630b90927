#include "jacfact/verify.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "jacfact/circuit_sim.hpp"
#include "jacfact/factor_driver.hpp"
#include "jacfact/jacobi_engine.hpp"
#include "jacfact/window_reducer.hpp"

namespace jacfact {

namespace {

constexpr std::size_t kMaxRecordedFailures = 16;

Int random_bits(gmp_randclass& rng, unsigned bits) {
  return rng.get_z_bits(bits);
}

bool all_exponents_distinct(const Factorization& f) {
  for (std::size_t i = 0; i < f.entries.size(); ++i)
    for (std::size_t j = i + 1; j < f.entries.size(); ++j)
      if (f.entries[i].exponent == f.entries[j].exponent) return false;
  return true;
}

}  // namespace

void CheckResult::fail(const std::string& detail) {
  ++failed;
  if (failures.size() < kMaxRecordedFailures) failures.push_back(detail);
}

CheckResult check_streamed_vs_reference_exhaustive(
    unsigned n_bits, unsigned x_bits, const std::vector<unsigned>& block_widths) {
  CheckResult res{.suite = "streamed_vs_reference_exhaustive"};
  const unsigned long n_end = 1ul << n_bits;
  const unsigned long x_end = 1ul << x_bits;
  for (unsigned long n = 3; n < n_end; n += 2) {
    Int N = static_cast<unsigned long>(n);
    for (unsigned long x = 1; x < x_end; ++x) {
      Int X = static_cast<unsigned long>(x);
      int expect = jacobi_reference(X, N);
      for (unsigned m : block_widths) {
        ++res.checked;
        JacobiResult got =
            jacobi_streamed(X, N, {.block_bits = m, .runtime_checks = true});
        if (got.value != expect) {
          std::ostringstream os;
          os << "x=" << x << " N=" << n << " m=" << m << " got=" << got.value
             << " want=" << expect;
          res.fail(os.str());
        }
      }
    }
  }
  return res;
}

CheckResult check_streamed_vs_reference_random(
    std::uint64_t trials, unsigned max_n_bits, unsigned max_x_bits,
    const std::vector<unsigned>& block_widths, std::uint64_t seed) {
  CheckResult res{.suite = "streamed_vs_reference_random"};
  std::mt19937_64 gen(seed);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(static_cast<unsigned long>(seed));
  for (std::uint64_t t = 0; t < trials; ++t) {
    unsigned nb = 2 + gen() % (max_n_bits - 1);
    Int N = random_bits(rng, nb) | 1;
    if (N < 3) N = 3;
    unsigned xb = 1 + gen() % max_x_bits;
    Int x = random_bits(rng, xb);
    if (x < 1) x = 1;
    unsigned m = block_widths[gen() % block_widths.size()];
    ++res.checked;
    JacobiResult got =
        jacobi_streamed(x, N, {.block_bits = m, .runtime_checks = true});
    int expect = jacobi_reference(x, N);
    if (got.value != expect) {
      std::ostringstream os;
      os << "x=" << x << " N=" << N << " m=" << m << " got=" << got.value
         << " want=" << expect;
      res.fail(os.str());
    }
  }
  return res;
}

namespace {

struct WindowCase {
  Int N;
  Int x;
  ReduceParams params;
};

WindowCase random_window_case(std::mt19937_64& gen, gmp_randclass& rng) {
  WindowCase c;
  c.params.m = 1 + gen() % 12;
  unsigned blocks = 2 + gen() % 15;
  c.params.n = c.params.m * blocks;
  c.N = random_bits(rng, c.params.n);
  c.x = random_bits(rng, c.params.m) | 1;
  return c;
}

}  // namespace

CheckResult check_window_invariants(std::uint64_t trials, std::uint64_t seed) {
  CheckResult res{.suite = "window_invariants"};
  std::mt19937_64 gen(seed);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(static_cast<unsigned long>(seed));
  for (std::uint64_t t = 0; t < trials; ++t) {
    WindowCase c = random_window_case(gen, rng);
    const unsigned m = c.params.m;
    const unsigned iters = c.params.n / m - 1;
    ++res.checked;
    std::ostringstream ctx;
    ctx << "trial=" << t << " N=" << c.N << " x=" << c.x << " n=" << c.params.n
        << " m=" << m;
    try {
      ReduceResult r = match_low_bits(c.N, c.x, c.params, /*want_trace=*/true,
                                      /*runtime_checks=*/true);
      const auto& recs = r.trace->records;
      bool ok = recs.size() == iters && r.z < c.x;
      Int two_m = Int(1) << m;
      for (unsigned j = 0; ok && j < iters; ++j) {
        const TraceRecord& rec = recs[j];
        Int block;
        mpz_fdiv_r_2exp(block.get_mpz_t(), Int(c.N >> (j * m)).get_mpz_t(), m);
        ok = ok && rec.j == j;
        ok = ok && rec.block == block;
        ok = ok && rec.z_before == (j == 0 ? Int(0) : recs[j - 1].z_after);
        ok = ok && rec.z_before < c.x;
        ok = ok && rec.ctrl < two_m && rec.ctrl >= 0;
        ok = ok && rec.z_mid == rec.z_before + rec.ctrl * c.x;
        ok = ok && bit_length(rec.z_mid) <= 2 * m;
        ok = ok && rec.ctrl == rec.z_mid / c.x;
        Int low;
        mpz_fdiv_r_2exp(low.get_mpz_t(), rec.z_mid.get_mpz_t(), m);
        ok = ok && low == block;
        ok = ok && rec.z_after == rec.z_mid >> m;
      }
      // Matched-multiple invariant at every block boundary: the window plus
      // the retired bits is a multiple of x, congruent to N, below 2^(j*m)*x.
      for (unsigned j = 0; ok && j <= iters; ++j) {
        Int zj = j < iters ? recs[j].z_before : r.z;
        Int retired;
        mpz_fdiv_r_2exp(retired.get_mpz_t(), c.N.get_mpz_t(), j * m);
        Int yj = (zj << (j * m)) + retired;
        ok = ok && mpz_divisible_p(yj.get_mpz_t(), c.x.get_mpz_t());
        ok = ok && yj < (c.x << (j * m));
        Int diff = c.N - yj;
        Int mod = Int(1) << (j * m);
        ok = ok && diff % mod == 0;
      }
      // Replay backwards to the all-zero starting window.
      if (ok) {
        WindowState st{r.z, iters};
        for (unsigned j = iters; j-- > 0;) {
          st = inverse_step(st, recs[j].block, c.x, c.params);
          ok = ok && st.z == recs[j].z_before && st.j == j;
        }
        ok = ok && st.z == 0 && st.j == 0;
      }
      if (!ok) res.fail(ctx.str());
    } catch (const std::exception& e) {
      res.fail(ctx.str() + " raised: " + e.what());
    }
  }
  return res;
}

CheckResult check_window_oracle_equivalence(std::uint64_t trials,
                                            std::uint64_t seed) {
  CheckResult res{.suite = "window_oracle_equivalence"};
  std::mt19937_64 gen(seed);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(static_cast<unsigned long>(seed));
  for (std::uint64_t t = 0; t < trials; ++t) {
    WindowCase c = random_window_case(gen, rng);
    ++res.checked;
    const unsigned shift = c.params.n - c.params.m;
    Int z = match_low_bits(c.N, c.x, c.params).z;
    Int k = recover_k(c.N, c.x, c.params);
    Int y = k * c.x;
    Int retired;
    mpz_fdiv_r_2exp(retired.get_mpz_t(), c.N.get_mpz_t(), shift);
    bool ok = bit_length(k) <= shift;
    ok = ok && (c.N - y) % (Int(1) << shift) == 0;
    ok = ok && z == y >> shift;
    ok = ok && (z << shift) + retired == y;
    if (!ok) {
      std::ostringstream os;
      os << "trial=" << t << " N=" << c.N << " x=" << c.x << " n=" << c.params.n
         << " m=" << c.params.m << " z=" << z << " k=" << k;
      res.fail(os.str());
    }
  }
  return res;
}

CheckResult check_gauss_sums(std::uint64_t max_m, double tol) {
  CheckResult res{.suite = "gauss_sums"};
  for (std::uint64_t m = 3; m <= max_m; m += 2) {
    Int M = static_cast<unsigned long>(m);
    bool squarefree = true;
    for (const auto& e : factorize(M).entries)
      if (e.exponent > 1) squarefree = false;
    if (!squarefree) continue;
    for (std::uint64_t k = 0; k < m; ++k) {
      ++res.checked;
      Int K = static_cast<unsigned long>(k);
      double mag = std::abs(jacobi_character_dft(M, K));
      double want = gcd(K, M) == 1 ? std::sqrt(static_cast<double>(m)) : 0.0;
      if (std::abs(mag - want) > tol) {
        std::ostringstream os;
        os << "m=" << m << " k=" << k << " |S|=" << mag << " want=" << want;
        res.fail(os.str());
      }
    }
  }
  return res;
}

CheckResult check_sign_counts(std::uint64_t max_n) {
  CheckResult res{.suite = "sign_counts"};
  for (std::uint64_t n = 3; n <= max_n; n += 2) {
    Int N = static_cast<unsigned long>(n);
    if (integer_sqrt(N).exact) continue;
    ++res.checked;
    Int plus = 0, minus = 0;
    for (std::uint64_t a = 1; a <= n; ++a) {
      int v = jacobi_reference(Int(static_cast<unsigned long>(a)), N);
      if (v > 0) ++plus;
      if (v < 0) ++minus;
    }
    Int half = euler_phi(N) / 2;
    if (plus != half || minus != half) {
      std::ostringstream os;
      os << "N=" << n << " plus=" << plus << " minus=" << minus
         << " phi/2=" << half;
      res.fail(os.str());
    }
  }
  return res;
}

CheckResult check_cost_counters(std::uint64_t cases, std::uint64_t seed) {
  CheckResult res{.suite = "cost_counters"};
  std::mt19937_64 gen(seed);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(static_cast<unsigned long>(seed));
  for (std::uint64_t t = 0; t < cases; ++t) {
    unsigned m = 2 + gen() % 127;
    unsigned blocks = 2 + gen() % 31;
    unsigned n = m * blocks;
    // Pin the bit length to n so the padded width is exactly n.
    Int N = random_bits(rng, n) | (Int(1) << (n - 1)) | 1;
    Int x = random_bits(rng, m) | 1;
    ++res.checked;
    JacobiResult run =
        jacobi_streamed(x, N, {.block_bits = m, .runtime_checks = true});
    CostReport want = cost_model(n, m);
    bool ok = run.cost.streamed;
    ok = ok && run.cost.n_padded == want.n_padded;
    ok = ok && run.cost.block_bits == want.block_bits;
    ok = ok && run.cost.block_iterations == want.block_iterations;
    ok = ok && run.cost.mbit_mults == want.mbit_mults;
    ok = ok && run.cost.mbit_adds == want.mbit_adds;
    ok = ok && run.cost.peak_window_bits <= want.peak_window_bits;
    ok = ok && run.cost.base_case_bits <= want.base_case_bits;
    if (!ok) {
      std::ostringstream os;
      os << "n=" << n << " m=" << m << " iters=" << run.cost.block_iterations
         << " mults=" << run.cost.mbit_mults << " adds=" << run.cost.mbit_adds
         << " peak=" << run.cost.peak_window_bits;
      res.fail(os.str());
    }
  }
  return res;
}

CheckResult check_phase_sums(std::uint64_t trials, std::uint64_t seed,
                             double tol) {
  CheckResult res{.suite = "phase_sums"};
  std::mt19937_64 gen(seed);
  auto uniform = [&gen]() {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t M = 1 + gen() % 1024;
    // Keep x a safe distance from integers so the closed form stays
    // well-conditioned.
    double x;
    do {
      x = (uniform() - 0.5) * 4.0;
    } while (std::abs(x - std::round(x)) < 1.0 / 64.0);
    ++res.checked;
    std::complex<double> direct = geometric_phase_sum(x, M);
    auto unit = [&](long double arg) {
      long double f = arg - std::floor(arg);
      double a = -two_pi * static_cast<double>(f);
      return std::complex<double>(std::cos(a), std::sin(a));
    };
    std::complex<double> closed =
        (1.0 - unit(static_cast<long double>(x) * M)) / (1.0 - unit(x));
    if (std::abs(direct - closed) > tol) {
      std::ostringstream os;
      os << "x=" << x << " M=" << M << " |direct-closed|="
         << std::abs(direct - closed);
      res.fail(os.str());
    }

    // Companion bound: |x*M| <= 1/2 keeps the magnitude above M/4.
    ++res.checked;
    std::uint64_t M2 = 1 + gen() % 1024;
    double xm = (uniform() - 0.5);  // in [-1/2, 1/2)
    double x2 = xm / static_cast<double>(M2);
    double mag = std::abs(geometric_phase_sum(x2, M2));
    if (mag < static_cast<double>(M2) / 4.0) {
      std::ostringstream os;
      os << "x=" << x2 << " M=" << M2 << " |sum|=" << mag << " floor="
         << static_cast<double>(M2) / 4.0;
      res.fail(os.str());
    }
  }
  return res;
}

CheckResult check_counting_and_trace(std::uint64_t trials, std::uint64_t seed) {
  CheckResult res{.suite = "counting_and_trace"};
  std::mt19937_64 gen(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Int N = static_cast<unsigned long>(3 + 2 * (gen() % 10000));
    std::uint64_t M = 1 + gen() % 4096;
    ++res.checked;
    std::ostringstream ctx;
    ctx << "N=" << N << " M=" << M;
    try {
      TraceDistanceResult r = trace_distance_check(N, M);
      Int B = squarefree_part(factorize(N));
      Int direct = 0;
      for (std::uint64_t x = 1; x <= M; ++x)
        if (gcd(Int(static_cast<unsigned long>(x)), B) == 1) ++direct;
      bool ok = direct == r.norm_sq_psi1;
      ok = ok && r.distance >= 0.0 && r.distance <= 1.0 + 1e-12;
      if (!ok) res.fail(ctx.str() + " count/distance mismatch");
    } catch (const std::exception& e) {
      res.fail(ctx.str() + " raised: " + e.what());
    }
  }
  return res;
}

CheckResult check_divisor_filter(std::uint64_t max_n) {
  CheckResult res{.suite = "divisor_filter"};
  for (std::uint64_t n = 4; n <= max_n; ++n) {
    Int N = static_cast<unsigned long>(n);
    if (is_probable_prime(N)) continue;
    Factorization f = factorize(N);
    Int B = squarefree_part(f);
    if (B == 1 || B == N) continue;  // square or squarefree: not very good
    // Enumerate all divisors from the factorization.
    std::vector<Int> divisors{1};
    for (const auto& e : f.entries) {
      std::size_t base_count = divisors.size();
      Int pk = 1;
      for (unsigned i = 1; i <= e.exponent; ++i) {
        pk *= e.prime;
        for (std::size_t d = 0; d < base_count; ++d)
          divisors.push_back(divisors[d] * pk);
      }
    }
    for (const Int& d : divisors) {
      if (!integer_sqrt(N / d).exact) continue;
      ++res.checked;
      if (!mpz_divisible_p(d.get_mpz_t(), B.get_mpz_t())) {
        std::ostringstream os;
        os << "N=" << N << " divisor=" << d << " B=" << B;
        res.fail(os.str());
      }
    }
  }
  return res;
}

CheckResult check_special_classical(std::uint64_t max_n, std::uint64_t extra_T) {
  CheckResult res{.suite = "special_classical"};
  SquarefreeOracle oracle = SquarefreeOracle::classical_trial();
  for (std::uint64_t n = 2; n <= max_n; ++n) {
    Int N = static_cast<unsigned long>(n);
    Factorization truth = factorize(N);
    if (!all_exponents_distinct(truth)) continue;
    ++res.checked;
    std::uint64_t T = bit_length(N) + extra_T;
    SpecialFactorReport rep = special_factor(N, oracle, T);
    bool ok = !rep.aborted;
    ok = ok && validate_factorization(N, rep.factorization);
    ok = ok && all_exponents_distinct(rep.factorization);
    ok = ok && rep.factorization.entries.size() == truth.entries.size();
    if (ok)
      for (std::size_t i = 0; i < truth.entries.size(); ++i)
        ok = ok && rep.factorization.entries[i].prime == truth.entries[i].prime &&
             rep.factorization.entries[i].exponent == truth.entries[i].exponent;
    if (!ok) {
      std::ostringstream os;
      os << "N=" << n << (rep.aborted ? " aborted: " + rep.abort_reason
                                      : " wrong factorization");
      res.fail(os.str());
    }
  }
  return res;
}

}  // namespace jacfact
