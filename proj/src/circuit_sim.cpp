#include "jacfact/circuit_sim.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>

#include "jacfact/jacobi_engine.hpp"

namespace jacfact {

namespace {

// FFTW planning is not thread safe; execution is.
std::mutex g_fftw_mutex;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int sim_jacobi(const Int& a, const Int& N) {
  if (a == 0) return 0;
  return jacobi_streamed(a, N, {.block_bits = 32}).value;
}

// Jacobi symbols (r | N) for every residue r; the phase state only needs x
// mod N. Callers keep N at desk scale.
std::vector<signed char> jacobi_table(const Int& N) {
  if (bit_length(N) > 26)
    throw std::invalid_argument("sim: modulus too large to tabulate");
  std::vector<signed char> table(mpz_get_ui(N.get_mpz_t()));
  table[0] = 0;
  for (std::size_t r = 1; r < table.size(); ++r)
    table[r] = static_cast<signed char>(sim_jacobi(Int(static_cast<unsigned long>(r)), N));
  return table;
}

void validate_quantum_params(const SimParams& params) {
  if (params.N < 3 || mpz_even_p(params.N.get_mpz_t()))
    throw std::invalid_argument("sim: N must be odd and >= 3");
  if (params.B_max < 2)
    throw std::invalid_argument("sim: B_max must be >= 2");
}

}  // namespace

unsigned derive_ell(const Int& B_max) {
  if (B_max < 2) throw std::invalid_argument("derive_ell: B_max must be >= 2");
  return static_cast<unsigned>(bit_length(B_max * B_max));
}

unsigned effective_ell(const SimParams& params) {
  unsigned ell = params.ell ? *params.ell : derive_ell(params.B_max);
  if (ell < 2) throw std::invalid_argument("sim: register width must be >= 2");
  if (ell > params.ell_cap)
    throw std::invalid_argument("sim: register width exceeds the configured cap");
  return ell;
}

StateVector build_phase_state(const SimParams& params) {
  validate_quantum_params(params);
  const unsigned ell = effective_ell(params);
  const std::uint64_t M = 1ull << ell;
  const double amp = 1.0 / std::sqrt(static_cast<double>(M));
  const double zero_amp = amp * static_cast<int>(params.zero_phase);

  StateVector state(M);
  if (bit_length(params.N) <= 20) {
    const std::uint64_t n = mpz_get_ui(params.N.get_mpz_t());
    std::vector<signed char> table = jacobi_table(params.N);
    for (std::uint64_t x = 1; x <= M; ++x) {
      int j = table[x % n];
      state[x & (M - 1)] = j == 0 ? zero_amp : j * amp;
    }
  } else {
    for (std::uint64_t x = 1; x <= M; ++x) {
      int j = sim_jacobi(Int(static_cast<unsigned long>(x)) % params.N, params.N);
      state[x & (M - 1)] = j == 0 ? zero_amp : j * amp;
    }
  }
  return state;
}

namespace {

StateVector fft_with_sign(const StateVector& state, int sign) {
  const std::size_t n = state.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("qft: length must be a power of two");
  StateVector in = state;
  StateVector out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(n),
                            reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), sign,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace

StateVector qft_mod_2l(const StateVector& state) {
  return fft_with_sign(state, FFTW_FORWARD);
}

StateVector inverse_qft_mod_2l(const StateVector& state) {
  return fft_with_sign(state, FFTW_BACKWARD);
}

std::vector<double> outcome_distribution(const StateVector& state) {
  std::vector<double> prob(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) prob[i] = std::norm(state[i]);
  return prob;
}

namespace {

// Success set plus the k behind each y; shared by the public accessors.
std::vector<std::pair<std::uint64_t, Int>> successful_outcomes(const Int& B,
                                                               std::uint64_t M) {
  std::vector<std::pair<std::uint64_t, Int>> out;
  if (B < 2) return out;
  Int half = (B - 1) / 2;
  for (Int k = 1; k < B; ++k) {
    if (gcd(k, B) != 1) continue;
    Int y0 = k * M / B;
    for (Int y = y0; y <= y0 + 1; ++y) {
      if (y < 0 || y >= Int(static_cast<unsigned long>(M))) continue;
      if (abs(y * B - k * Int(static_cast<unsigned long>(M))) <= half)
        out.emplace_back(mpz_get_ui(y.get_mpz_t()), k);
    }
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> successful_y_set(const SimParams& params) {
  validate_quantum_params(params);
  const std::uint64_t M = 1ull << effective_ell(params);
  const Int B = squarefree_part(factorize(params.N));
  auto outcomes = successful_outcomes(B, M);

  std::vector<std::uint64_t> ys;
  for (auto& [y, k] : outcomes) ys.push_back(y);
  std::sort(ys.begin(), ys.end());
  if (std::adjacent_find(ys.begin(), ys.end()) != ys.end())
    throw invariant_error("successful_y_set: distinct k collided on one y");
  if (B >= 2 && Int(static_cast<unsigned long>(ys.size())) < euler_phi(B))
    throw invariant_error("successful_y_set: fewer outcomes than phi(B)");
  return ys;
}

double amplitude_lower_bound_check(const SimParams& params) {
  std::vector<double> prob =
      outcome_distribution(qft_mod_2l(build_phase_state(params)));
  std::vector<std::uint64_t> ys = successful_y_set(params);
  if (ys.empty()) return 0.0;
  const Int B = squarefree_part(factorize(params.N));
  const double phi = mpz_get_d(euler_phi(B).get_mpz_t());
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t y : ys) min_ratio = std::min(min_ratio, prob[y] * phi);
  return min_ratio;
}

SimReport run_algorithm1(const SimParams& params) {
  SimReport rep;

  if (params.small_prime_cutoff >= 2) {
    for (Int d = 2; d <= params.small_prime_cutoff && d <= params.N; ++d) {
      if (!mpz_divisible_p(params.N.get_mpz_t(), d.get_mpz_t())) continue;
      // Smallest divisor above 1 is automatically prime.
      rep.found_small_prime = d;
      rep.channel = "small_prime";
      rep.success_prob = 1.0;
      rep.recovered[d] = 1.0;
      rep.true_b = squarefree_part(factorize(params.N));
      return rep;
    }
  }

  validate_quantum_params(params);
  const unsigned ell = effective_ell(params);
  const std::uint64_t M = 1ull << ell;
  const Int B = squarefree_part(factorize(params.N));
  rep.true_b = B;
  rep.channel = (B >= 2 && B < params.N && B <= params.B_max) ? "quantum" : "none";

  std::vector<double> prob =
      outcome_distribution(qft_mod_2l(build_phase_state(params)));

  // Denominator recovery for every outcome. The recovered map aggregates the
  // full exact distribution even in sampled mode.
  double exact_success = 0.0;
  std::vector<Int> denominator(M);
  for (std::uint64_t y = 0; y < M; ++y) {
    Fraction f = best_rational_approx(Int(static_cast<unsigned long>(y)),
                                      Int(static_cast<unsigned long>(M)),
                                      params.B_max);
    denominator[y] = f.den;
    rep.recovered[f.den] += prob[y];
    if (f.den == B) exact_success += prob[y];
  }

  auto outcomes = successful_outcomes(B, M);
  rep.successful_y_count = outcomes.size();
  if (!outcomes.empty()) {
    const double phi = mpz_get_d(euler_phi(B).get_mpz_t());
    double min_ratio = std::numeric_limits<double>::infinity();
    for (auto& [y, k] : outcomes)
      min_ratio = std::min(min_ratio, prob[y] * phi);
    rep.min_successful_amp_ratio = min_ratio;
  }

  if (!params.sample) {
    rep.success_prob = exact_success;
    return rep;
  }

  // Sampled mode: inverse-CDF draws from the exact distribution, with a
  // bit-reproducible uniform generator.
  std::vector<double> cdf(M);
  double acc = 0.0;
  for (std::uint64_t y = 0; y < M; ++y) {
    acc += prob[y];
    cdf[y] = acc;
  }
  std::mt19937_64 gen(params.sample->seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < params.sample->shots; ++s) {
    double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * acc;
    std::uint64_t y =
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (y >= M) y = M - 1;
    rep.shot_outcomes.push_back(y);
    if (denominator[y] == B) ++hits;
  }
  rep.success_prob = params.sample->shots == 0
                         ? 0.0
                         : static_cast<double>(hits) /
                               static_cast<double>(params.sample->shots);
  return rep;
}

std::complex<double> jacobi_character_dft(const Int& m, const Int& k) {
  if (m < 3 || mpz_even_p(m.get_mpz_t()))
    throw std::invalid_argument("jacobi_character_dft: m must be odd and >= 3");
  for (const auto& e : factorize(m).entries)
    if (e.exponent > 1)
      throw std::invalid_argument("jacobi_character_dft: m must be squarefree");

  const std::uint64_t mm = mpz_get_ui(m.get_mpz_t());
  std::vector<signed char> table = jacobi_table(m);
  Int kr = k % m;
  if (kr < 0) kr += m;
  const std::uint64_t kk = mpz_get_ui(kr.get_mpz_t());
  std::complex<double> acc = 0.0;
  for (std::uint64_t j = 0; j < mm; ++j) {
    int c = table[j];
    if (c == 0) continue;
    double angle = -kTwoPi * static_cast<double>(j * kk % mm) /
                   static_cast<double>(mm);
    acc += std::complex<double>(c * std::cos(angle), c * std::sin(angle));
  }
  return acc;
}

std::complex<double> geometric_phase_sum(double x, std::uint64_t M) {
  std::complex<double> acc = 0.0;
  for (std::uint64_t kk = 0; kk < M; ++kk) {
    long double t = static_cast<long double>(kk) * x;
    t -= std::floor(t);
    double angle = -kTwoPi * static_cast<double>(t);
    acc += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

TraceDistanceResult trace_distance_check(const Int& N, std::uint64_t M,
                                         ZeroPhase zero_phase) {
  if (N < 3 || mpz_even_p(N.get_mpz_t()))
    throw std::invalid_argument("trace_distance_check: N must be odd and >= 3");
  if (M < 1)
    throw std::invalid_argument("trace_distance_check: M must be >= 1");

  const Int B = squarefree_part(factorize(N));
  const std::uint64_t n = mpz_get_ui(N.get_mpz_t());
  std::vector<signed char> table_n = jacobi_table(N);
  std::vector<signed char> table_b;
  std::uint64_t b = 1;
  if (B > 1) {
    b = mpz_get_ui(B.get_mpz_t());
    table_b = jacobi_table(B);
  }

  std::int64_t inner = 0, norm1 = 0;
  const int conv = static_cast<int>(zero_phase);
  for (std::uint64_t x = 1; x <= M; ++x) {
    int jb = B > 1 ? table_b[x % b] : 1;
    int jn_raw = table_n[x % n];
    int jn = jn_raw == 0 ? conv : jn_raw;
    inner += jb * jn;
    if (jb != 0) ++norm1;
  }

  if (B > 1) {
    Int expected = 0;
    for (Int j = 1; j < B; ++j)
      if (gcd(j, B) == 1)
        expected += count_in_class(Int(static_cast<unsigned long>(M)), B, j);
    if (expected != norm1)
      throw invariant_error(
          "trace_distance_check: coprime count disagrees with the class formula");
  }

  const double overlap_sq = static_cast<double>(inner) *
                            static_cast<double>(inner) /
                            (static_cast<double>(norm1) * static_cast<double>(M));
  TraceDistanceResult out;
  out.distance = std::sqrt(std::max(0.0, 1.0 - overlap_sq));
  out.norm_sq_psi1 = Int(static_cast<unsigned long>(norm1));
  return out;
}

}  // namespace jacfact
