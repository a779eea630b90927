#include "jacfact/numtheory.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace jacfact {

std::size_t bit_length(const Int& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

int jacobi_reference(const Int& a, const Int& b) {
  if (b < 1 || mpz_even_p(b.get_mpz_t()))
    throw std::invalid_argument("jacobi_reference: modulus must be odd and >= 1");
  if (b == 1) return 1;
  Int A = a, B = b;
  int result = 1;
  if (A < 0) {
    A = -A;
    if (mpz_fdiv_ui(B.get_mpz_t(), 4) == 3) result = -result;
  }
  mpz_mod(A.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  while (A != 0) {
    unsigned long t = mpz_scan1(A.get_mpz_t(), 0);
    if (t > 0) {
      A >>= t;
      if (t & 1) {
        unsigned long r = mpz_fdiv_ui(B.get_mpz_t(), 8);
        if (r == 3 || r == 5) result = -result;
      }
    }
    if (mpz_fdiv_ui(A.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(B.get_mpz_t(), 4) == 3)
      result = -result;
    std::swap(A, B);
    mpz_mod(A.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  }
  return B == 1 ? result : 0;
}

Int mod_inverse_pow2(const Int& x, unsigned m) {
  if (mpz_even_p(x.get_mpz_t()))
    throw std::invalid_argument("mod_inverse_pow2: x must be odd");
  if (m == 0) return 0;
  Int xr;
  mpz_fdiv_r_2exp(xr.get_mpz_t(), x.get_mpz_t(), m);
  Int w = 1;
  unsigned k = 1;
  while (k < m) {
    k = std::min(2 * k, m);
    Int w2 = w * (2 - w * xr);
    mpz_fdiv_r_2exp(w.get_mpz_t(), w2.get_mpz_t(), k);
  }
  return w;
}

namespace {

constexpr std::array<unsigned long, 12> kSmallWitnesses = {2,  3,  5,  7,  11, 13,
                                                          17, 19, 23, 29, 31, 37};

// True when `a` proves n composite. n odd, n - 1 == d * 2^r with d odd.
bool mr_witness(const Int& a, const Int& n, const Int& d, unsigned long r) {
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Int nm1 = n - 1;
  if (x == 1 || x == nm1) return false;
  for (unsigned long i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == nm1) return false;
  }
  return true;
}

}  // namespace

bool is_probable_prime(const Int& n, unsigned rounds, unsigned long seed) {
  if (n < 2) return false;
  for (unsigned long p : kSmallWitnesses) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Int d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  d >>= r;
  Int two64 = Int(1) << 64;
  if (n < two64) {
    // The fixed witness set is exact for every n below 2^64.
    for (unsigned long a : kSmallWitnesses)
      if (mr_witness(Int(a), n, d, r)) return false;
    return true;
  }
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  for (unsigned i = 0; i < rounds; ++i) {
    Int a = 2 + rng.get_z_range(n - 3);
    if (mr_witness(a, n, d, r)) return false;
  }
  return true;
}

SqrtResult integer_sqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("integer_sqrt: n must be nonnegative");
  SqrtResult out;
  Int rem;
  mpz_sqrtrem(out.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  out.exact = rem == 0;
  return out;
}

std::optional<PerfectPower> perfect_power(const Int& n) {
  if (n < 2) throw std::invalid_argument("perfect_power: n must be >= 2");
  // n = base^k forces k <= log2(n); scanning downward finds the maximal k.
  for (std::size_t k = bit_length(n) - 1; k >= 2; --k) {
    Int root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k)))
      return PerfectPower{root, static_cast<unsigned>(k)};
  }
  return std::nullopt;
}

Fraction best_rational_approx(const Int& y, const Int& M, const Int& d_max) {
  if (M < 1 || y < 0 || y >= M)
    throw std::invalid_argument("best_rational_approx: need 0 <= y < M");
  if (d_max < 1)
    throw std::invalid_argument("best_rational_approx: d_max must be >= 1");
  if (y == 0) return {Int(0), Int(1)};

  // Continued-fraction convergents of y/M, stopping before the denominator
  // passes d_max. a0 = 0 is already consumed by the initial values.
  Int pm1 = 1, qm1 = 0;  // convergent k-1
  Int p = 0, q = 1;      // convergent k
  Int num = M, den = y;
  while (den != 0) {
    Int a, rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int pn = a * p + pm1;
    Int qn = a * q + qm1;
    if (qn > d_max) break;
    pm1 = p;
    qm1 = q;
    p = pn;
    q = qn;
    num = den;
    den = rem;
  }
  if (den == 0) return {p, q};  // y/M itself fits the bound

  // The optimum is the last convergent or the deepest semiconvergent that
  // still fits. Compare |y/M - p/q| against |y/M - sp/sq| by cross
  // multiplication; both candidates are automatically in lowest terms.
  Int t = (d_max - qm1) / q;
  Int sp = pm1 + t * p;
  Int sq = qm1 + t * q;
  Int e1 = abs(y * q - p * M) * sq;
  Int e2 = abs(y * sq - sp * M) * q;
  if (e1 < e2) return {p, q};
  if (e2 < e1) return {sp, sq};
  if (q != sq) return q < sq ? Fraction{p, q} : Fraction{sp, sq};
  return p <= sp ? Fraction{p, q} : Fraction{sp, sq};
}

Int count_in_class(const Int& M, const Int& B, const Int& j) {
  if (B <= 1) throw std::invalid_argument("count_in_class: B must be > 1");
  if (j < 0 || j >= B)
    throw std::invalid_argument("count_in_class: need 0 <= j < B");
  if (M < 0) throw std::invalid_argument("count_in_class: M must be >= 0");
  Int hi, lo, t;
  t = M - j;
  mpz_fdiv_q(hi.get_mpz_t(), t.get_mpz_t(), B.get_mpz_t());
  t = 1 - j;
  mpz_cdiv_q(lo.get_mpz_t(), t.get_mpz_t(), B.get_mpz_t());
  return hi - lo + 1;
}

Int Factorization::value() const {
  Int v = 1;
  for (const auto& e : entries) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), e.prime.get_mpz_t(), e.exponent);
    v *= pk;
  }
  return v;
}

namespace {

// Brent's variant of Pollard rho. n odd composite, > 1. Decrements `budget`
// once per modular squaring and throws when it runs out.
Int pollard_brent(const Int& n, std::uint64_t& budget) {
  for (unsigned long c = 1;; ++c) {
    Int y = 2, g = 1, q = 1, x, ys;
    unsigned long r = 1;
    const unsigned long batch = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) {
        if (budget-- == 0) throw budget_error("factorize: rho budget exhausted");
        y = (y * y + c) % n;
      }
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(batch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          if (budget-- == 0) throw budget_error("factorize: rho budget exhausted");
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += batch;
      }
      r *= 2;
    }
    if (g == n) {
      // The batched gcd overshot; replay one step at a time.
      do {
        if (budget-- == 0) throw budget_error("factorize: rho budget exhausted");
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
    // Cycle degenerated for this c; retry with the next increment.
  }
}

void factor_into(const Int& n, std::vector<std::pair<Int, unsigned>>& out,
                 std::uint64_t& budget) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  if (auto pp = perfect_power(n)) {
    std::vector<std::pair<Int, unsigned>> sub;
    factor_into(pp->base, sub, budget);
    for (auto& [p, e] : sub) out.emplace_back(p, e * pp->exponent);
    return;
  }
  Int d = pollard_brent(n, budget);
  factor_into(d, out, budget);
  factor_into(n / d, out, budget);
}

}  // namespace

Factorization factorize(const Int& n, std::uint64_t rho_budget) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<std::pair<Int, unsigned>> raw;
  Int rest = n;
  for (unsigned long d = 2; d < 10000 && rest > 1; d == 2 ? d = 3 : d += 2) {
    if (Int(d) * d > rest) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), d)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      rest /= d;
      ++e;
    }
    raw.emplace_back(Int(d), e);
  }
  if (rest > 1) factor_into(rest, raw, rho_budget);

  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Factorization f;
  for (auto& [p, e] : raw) {
    if (!f.entries.empty() && f.entries.back().prime == p)
      f.entries.back().exponent += e;
    else
      f.entries.push_back({p, e});
  }
  return f;
}

Int euler_phi(const Int& n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be >= 1");
  Int phi = 1;
  for (const auto& e : factorize(n).entries) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), e.prime.get_mpz_t(), e.exponent - 1);
    phi *= pk * (e.prime - 1);
  }
  return phi;
}

Int squarefree_part(const Factorization& f) {
  Int b = 1;
  for (const auto& e : f.entries)
    if (e.exponent % 2 == 1) b *= e.prime;
  return b;
}

}  // namespace jacfact
