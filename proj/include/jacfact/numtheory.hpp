#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace jacfact {

// Arbitrary-precision integer. Signed; helpers below state their own range
// requirements.
using Int = mpz_class;

// A proven internal identity failed at runtime. Always a bug, never an input
// error.
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Desk-scale factoring ran past its work budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Number of bits in |v|; bit_length(0) == 0.
std::size_t bit_length(const Int& v);

// gcd(0, 0) == 0; result is nonnegative.
Int gcd(const Int& a, const Int& b);

// Jacobi symbol (a | b) for odd b >= 1. Returns -1, 0 or +1. A negative
// numerator contributes (-1 | b) = (-1)^((b-1)/2) before the usual reduction.
// Quadratic-time reference loop; the streamed engine must agree with it
// everywhere.
int jacobi_reference(const Int& a, const Int& b);

// Inverse of odd x modulo 2^m, in [0, 2^m). Newton/Hensel iteration
// w <- w*(2 - w*x), doubling the correct bit count each round.
Int mod_inverse_pow2(const Int& x, unsigned m);

// Miller-Rabin. Exact for n < 2^64 via a fixed witness set; above that, uses
// `rounds` random witnesses drawn from a generator seeded with `seed`.
bool is_probable_prime(const Int& n, unsigned rounds = 40,
                       unsigned long seed = 1);

struct SqrtResult {
  Int root;    // floor(sqrt(n))
  bool exact;  // root*root == n
};
SqrtResult integer_sqrt(const Int& n);

struct PerfectPower {
  Int base;
  unsigned exponent;  // maximal k >= 2 with base^k == n
};
// std::nullopt when n >= 2 is not a perfect power.
std::optional<PerfectPower> perfect_power(const Int& n);

struct Fraction {
  Int num;
  Int den;  // > 0, gcd(num, den) == 1
};

// Closest fraction to y/M with denominator <= d_max, 0 <= y < M.
// Ties prefer the smaller denominator, then the smaller numerator.
Fraction best_rational_approx(const Int& y, const Int& M, const Int& d_max);

// |{x in [1, M] : x == j (mod B)}| for B > 1, 0 <= j < B, M >= 0.
// Closed form floor((M-j)/B) - ceil((1-j)/B) + 1.
Int count_in_class(const Int& M, const Int& B, const Int& j);

struct FactorEntry {
  Int prime;
  unsigned exponent;
};

struct Factorization {
  std::vector<FactorEntry> entries;  // primes strictly increasing, exponents >= 1
  Int value() const;                 // product of prime^exponent
};

// Complete factorization at desk scale: trial division, then perfect-power
// peeling, then Pollard-Brent rho with a primality-tested recursion. Throws
// budget_error if rho runs past `rho_budget` squarings.
Factorization factorize(const Int& n, std::uint64_t rho_budget = 1ull << 26);

Int euler_phi(const Int& n);

// Product of the primes appearing with odd exponent.
Int squarefree_part(const Factorization& f);

}  // namespace jacfact
