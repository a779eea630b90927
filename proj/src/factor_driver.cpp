#include "jacfact/factor_driver.hpp"

#include <algorithm>
#include <memory>
#include <random>

namespace jacfact {

namespace {

bool divides(const Int& d, const Int& n) {
  return d > 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t());
}

unsigned strip_factor(Int& M, const Int& p) {
  unsigned e = 0;
  while (mpz_divisible_p(M.get_mpz_t(), p.get_mpz_t())) {
    M /= p;
    ++e;
  }
  return e;
}

}  // namespace

SquarefreeOracle SquarefreeOracle::classical_trial() {
  return {"classical_trial",
          [](const Int& N) { return squarefree_decompose_classical(N).squarefree; }};
}

SquarefreeOracle SquarefreeOracle::constant(const Int& value) {
  return {"constant", [value](const Int&) { return value; }};
}

SquarefreeOracle SquarefreeOracle::injected(const Int& success_value,
                                            double success_prob,
                                            const Int& failure_value,
                                            std::uint64_t seed) {
  auto gen = std::make_shared<std::mt19937_64>(seed);
  return {"injected", [=](const Int&) {
            double u = static_cast<double>((*gen)() >> 11) * 0x1.0p-53;
            return u < success_prob ? success_value : failure_value;
          }};
}

SquarefreeOracle SquarefreeOracle::quantum_sim(const QuantumOptions& options,
                                               std::uint64_t seed) {
  auto next_seed = std::make_shared<std::uint64_t>(seed);
  return {"quantum_sim", [=](const Int& N) -> Int {
            SimParams params;
            params.N = N;
            params.B_max = options.B_max ? *options.B_max : N;
            params.small_prime_cutoff = options.small_prime_cutoff;
            params.zero_phase = options.zero_phase;
            params.ell_cap = options.ell_cap;
            params.sample = SampleMode{1, (*next_seed)++};
            SimReport rep = run_algorithm1(params);
            if (rep.found_small_prime) return *rep.found_small_prime;
            const std::uint64_t M = 1ull << effective_ell(params);
            return best_rational_approx(
                       Int(static_cast<unsigned long>(rep.shot_outcomes.at(0))),
                       Int(static_cast<unsigned long>(M)), params.B_max)
                .den;
          }};
}

SquarefreeDecomposition squarefree_decompose_classical(const Int& N) {
  if (N < 1)
    throw std::invalid_argument("squarefree_decompose: N must be >= 1");
  Factorization f = factorize(N);
  SquarefreeDecomposition out{1, 1};
  for (const auto& e : f.entries) {
    Int half;
    mpz_pow_ui(half.get_mpz_t(), e.prime.get_mpz_t(), e.exponent / 2);
    out.root *= half;
    if (e.exponent % 2 == 1) out.squarefree *= e.prime;
  }
  return out;
}

BoostOutcome boosted_decompose_detail(const Int& N, const SquarefreeOracle& oracle,
                                      std::uint64_t T) {
  if (N < 2) throw std::invalid_argument("boosted_decompose: N must be >= 2");
  BoostOutcome out;
  if (is_probable_prime(N)) {
    out.result = N;
    return out;
  }
  if (integer_sqrt(N).exact) {
    out.result = 1;
    return out;
  }
  for (std::uint64_t i = 0; i < T; ++i) {
    Int b = oracle.call(N);
    ++out.oracle_calls;
    out.outputs.push_back(b);
    if (b > 1 && b < N && divides(b, N) && is_probable_prime(b)) {
      out.result = b;  // a prime divisor settles it outright
      return out;
    }
  }
  for (const Int& b : out.outputs)
    if (divides(b, N) && integer_sqrt(N / b).exact)
      out.candidate_set.push_back(b);
  if (out.candidate_set.empty()) {
    out.result = N;
    return out;
  }
  out.result = *std::min_element(out.candidate_set.begin(),
                                 out.candidate_set.end());
  return out;
}

Int boosted_decompose(const Int& N, const SquarefreeOracle& oracle,
                      std::uint64_t T) {
  return boosted_decompose_detail(N, oracle, T).result;
}

Int bmax_search(const Int& N,
                const std::function<SquarefreeOracle(const Int& B_max)>& factory,
                std::uint64_t T) {
  if (N < 2) throw std::invalid_argument("bmax_search: N must be >= 2");
  Int bmax = 2;
  while (true) {
    Int r = boosted_decompose(N, factory(bmax), T);
    if (r == 1) return r;
    if (r > 1 && r < N && divides(r, N)) return r;
    if (bmax > N) return N;
    bmax *= bmax;
  }
}

SpecialFactorReport special_factor(const Int& N, const SquarefreeOracle& oracle,
                                   std::uint64_t T) {
  if (N < 2) throw std::invalid_argument("special_factor: N must be >= 2");
  SpecialFactorReport rep;
  Int M = N;
  while (M > 1) {
    if (is_probable_prime(M)) {
      rep.factorization.entries.push_back({M, 1});
      break;
    }
    if (auto pp = perfect_power(M); pp && is_probable_prime(pp->base)) {
      rep.factorization.entries.push_back({pp->base, pp->exponent});
      break;
    }
    if (SqrtResult sq = integer_sqrt(M); sq.exact) {
      SpecialFactorReport sub = special_factor(sq.root, oracle, T);
      rep.oracle_calls += sub.oracle_calls;
      if (sub.aborted) {
        rep.aborted = true;
        rep.abort_reason = sub.abort_reason;
        break;
      }
      for (const auto& e : sub.factorization.entries)
        rep.factorization.entries.push_back({e.prime, 2 * e.exponent});
      break;
    }

    Int b = boosted_decompose(M, oracle, T);
    ++rep.oracle_calls;
    if (b > 1 && b < M && is_probable_prime(b) && divides(b, M)) {
      unsigned e = strip_factor(M, b);
      rep.factorization.entries.push_back({b, e});
      continue;
    }
    if (b <= 1 || !divides(b, M) || !integer_sqrt(M / b).exact) {
      rep.aborted = true;
      rep.abort_reason = "oracle returned no usable candidate";
      break;
    }
    // M = k * b^gamma with b not dividing k; one prime of b survives in
    // b / gcd(k, b) exactly when the input is special.
    Int k = M;
    strip_factor(k, b);
    Int p = b / gcd(k, b);
    if (!is_probable_prime(p)) {
      rep.aborted = true;
      rep.abort_reason = "derived divisor is not prime";
      break;
    }
    unsigned e = strip_factor(M, p);
    rep.factorization.entries.push_back({p, e});
  }

  std::sort(rep.factorization.entries.begin(), rep.factorization.entries.end(),
            [](const FactorEntry& a, const FactorEntry& b) {
              return a.prime < b.prime;
            });
  if (!rep.aborted) {
    std::vector<unsigned> exps;
    for (const auto& e : rep.factorization.entries) exps.push_back(e.exponent);
    std::sort(exps.begin(), exps.end());
    if (std::adjacent_find(exps.begin(), exps.end()) != exps.end()) {
      rep.aborted = true;
      rep.abort_reason = "duplicate exponents; input was not special";
    }
  }
  return rep;
}

bool validate_factorization(const Int& N, const Factorization& f) {
  Int product = 1;
  const Int* prev = nullptr;
  for (const auto& e : f.entries) {
    if (e.exponent < 1) return false;
    if (prev && !(*prev < e.prime)) return false;
    prev = &e.prime;
    if (!is_probable_prime(e.prime)) return false;
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), e.prime.get_mpz_t(), e.exponent);
    product *= pk;
  }
  return product == N;
}

}  // namespace jacfact
