#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "jacfact/factor_driver.hpp"

using jacfact::Factorization;
using jacfact::Int;
using jacfact::SquarefreeOracle;

namespace {

Factorization make_fact(std::vector<std::pair<long, unsigned>> entries) {
  Factorization f;
  for (auto& [p, e] : entries) f.entries.push_back({Int(p), e});
  return f;
}

bool same_entries(const Factorization& a, const Factorization& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (a.entries[i].prime != b.entries[i].prime ||
        a.entries[i].exponent != b.entries[i].exponent)
      return false;
  return true;
}

}  // namespace

TEST_CASE("classical square and squarefree split") {
  auto d = jacfact::squarefree_decompose_classical(Int(175));
  CHECK(d.root == 5);
  CHECK(d.squarefree == 7);
  d = jacfact::squarefree_decompose_classical(Int(12));
  CHECK(d.root == 2);
  CHECK(d.squarefree == 3);
  d = jacfact::squarefree_decompose_classical(Int(36));
  CHECK(d.root == 6);
  CHECK(d.squarefree == 1);
  d = jacfact::squarefree_decompose_classical(Int(97));
  CHECK(d.root == 1);
  CHECK(d.squarefree == 97);
  d = jacfact::squarefree_decompose_classical(Int(1));
  CHECK(d.root == 1);
  CHECK(d.squarefree == 1);
  for (long n = 1; n <= 500; ++n) {
    auto s = jacfact::squarefree_decompose_classical(Int(n));
    REQUIRE(s.root * s.root * s.squarefree == n);
  }
  CHECK_THROWS_AS(jacfact::squarefree_decompose_classical(Int(0)),
                  std::invalid_argument);
}

TEST_CASE("oracle factories") {
  auto classical = SquarefreeOracle::classical_trial();
  CHECK(classical.kind == "classical_trial");
  CHECK(classical.call(Int(175)) == 7);
  CHECK(classical.call(Int(48)) == 3);

  auto fixed = SquarefreeOracle::constant(Int(42));
  CHECK(fixed.kind == "constant");
  CHECK(fixed.call(Int(9999)) == 42);

  auto always = SquarefreeOracle::injected(Int(7), 1.0, Int(174), 3);
  auto never = SquarefreeOracle::injected(Int(7), 0.0, Int(174), 3);
  for (int i = 0; i < 20; ++i) {
    CHECK(always.call(Int(175)) == 7);
    CHECK(never.call(Int(175)) == 174);
  }
}

TEST_CASE("boosting short-circuits, filters and falls back") {
  // Prime and square inputs are resolved before any oracle call.
  auto detail = jacfact::boosted_decompose_detail(
      Int(97), SquarefreeOracle::constant(Int(3)), 5);
  CHECK(detail.result == 97);
  CHECK(detail.oracle_calls == 0);
  detail = jacfact::boosted_decompose_detail(
      Int(324), SquarefreeOracle::constant(Int(3)), 5);
  CHECK(detail.result == 1);
  CHECK(detail.oracle_calls == 0);

  // A prime divisor from the oracle stops the loop at once.
  detail = jacfact::boosted_decompose_detail(
      Int(175), SquarefreeOracle::constant(Int(7)), 5);
  CHECK(detail.result == 7);
  CHECK(detail.oracle_calls == 1);

  // 35 divides 175 but 175/35 = 5 is not a square: rejected, N returned.
  detail = jacfact::boosted_decompose_detail(
      Int(175), SquarefreeOracle::constant(Int(35)), 4);
  CHECK(detail.result == 175);
  CHECK(detail.oracle_calls == 4);
  CHECK(detail.outputs.size() == 4);
  CHECK(detail.candidate_set.empty());

  // 25 divides 175, quotient 7 is not a square either.
  CHECK(jacfact::boosted_decompose(
            Int(175), SquarefreeOracle::constant(Int(25)), 3) == 175);

  // A coin-flip oracle succeeds within 20 tries for this seed.
  CHECK(jacfact::boosted_decompose(
            Int(175), SquarefreeOracle::injected(Int(7), 0.5, Int(174), 11),
            20) == 7);

  CHECK_THROWS_AS(
      jacfact::boosted_decompose(Int(1), SquarefreeOracle::constant(Int(1)), 1),
      std::invalid_argument);
}

TEST_CASE("threshold search squares its bound until something lands") {
  std::vector<Int> seen;
  auto factory = [&seen](const Int& bmax) {
    seen.push_back(bmax);
    // Oracle only knows the answer once the bound covers it.
    return bmax >= 49 ? SquarefreeOracle::constant(Int(7))
                      : SquarefreeOracle::constant(Int(174));
  };
  Int r = jacfact::bmax_search(Int(175), factory, 3);
  CHECK(r == 7);
  CHECK(seen == std::vector<Int>{2, 4, 16, 256});

  // Square input: the inner routine answers 1 immediately.
  CHECK(jacfact::bmax_search(
            Int(324),
            [](const Int&) { return SquarefreeOracle::constant(Int(3)); },
            3) == 1);

  // Prime input never yields a divisor; the search gives up past N.
  CHECK(jacfact::bmax_search(
            Int(97),
            [](const Int&) { return SquarefreeOracle::constant(Int(3)); },
            2) == 97);

  CHECK_THROWS_AS(jacfact::bmax_search(
                      Int(1),
                      [](const Int&) { return SquarefreeOracle::constant(Int(1)); },
                      1),
                  std::invalid_argument);
}

TEST_CASE("special inputs factor completely with the classical oracle") {
  auto oracle = SquarefreeOracle::classical_trial();
  struct Case {
    long n;
    std::vector<std::pair<long, unsigned>> expect;
  };
  for (const Case& c : {
           Case{24, {{2, 3}, {3, 1}}},
           Case{48, {{2, 4}, {3, 1}}},
           Case{324, {{2, 2}, {3, 4}}},
           Case{1944, {{2, 3}, {3, 5}}},
           Case{175, {{5, 2}, {7, 1}}},
           Case{12, {{2, 2}, {3, 1}}},
           Case{8, {{2, 3}}},
           Case{97, {{97, 1}}},
           Case{729, {{3, 6}}},
       }) {
    auto rep = jacfact::special_factor(Int(c.n), oracle, 8);
    INFO("n = " << c.n << " " << rep.abort_reason);
    REQUIRE_FALSE(rep.aborted);
    CHECK(same_entries(rep.factorization, make_fact(c.expect)));
    CHECK(jacfact::validate_factorization(Int(c.n), rep.factorization));
  }
}

TEST_CASE("non-special inputs abort rather than mislead") {
  auto oracle = SquarefreeOracle::classical_trial();
  // 6 = 2 * 3 has equal exponents; the derived divisor check trips first.
  auto rep = jacfact::special_factor(Int(6), oracle, 4);
  CHECK(rep.aborted);
  CHECK(rep.abort_reason == "derived divisor is not prime");

  // 36 recurses into 6 and inherits the abort.
  rep = jacfact::special_factor(Int(36), oracle, 4);
  CHECK(rep.aborted);

  // An adversarial oracle that leaks one prime at a time still cannot force
  // a bogus success: the exponent audit catches the duplicate.
  rep = jacfact::special_factor(Int(15), SquarefreeOracle::constant(Int(3)), 4);
  CHECK(rep.aborted);
  CHECK(rep.abort_reason == "duplicate exponents; input was not special");

  CHECK_THROWS_AS(jacfact::special_factor(Int(1), oracle, 1),
                  std::invalid_argument);
}

TEST_CASE("factorization validator") {
  CHECK(jacfact::validate_factorization(Int(24), make_fact({{2, 3}, {3, 1}})));
  CHECK_FALSE(
      jacfact::validate_factorization(Int(24), make_fact({{3, 1}, {2, 3}})));
  CHECK_FALSE(
      jacfact::validate_factorization(Int(24), make_fact({{2, 2}, {3, 1}})));
  CHECK_FALSE(
      jacfact::validate_factorization(Int(24), make_fact({{4, 1}, {6, 1}})));
  CHECK_FALSE(jacfact::validate_factorization(Int(24), make_fact({{2, 0}})));
  CHECK(jacfact::validate_factorization(Int(1), make_fact({})));
}

TEST_CASE("simulated quantum oracle") {
  auto oracle = SquarefreeOracle::quantum_sim({}, 1);
  CHECK(oracle.kind == "quantum_sim");
  // Even inputs resolve in the classical pre-stage.
  CHECK(oracle.call(Int(24)) == 2);
  CHECK(oracle.call(Int(1944)) == 2);
  // A perfect square with the +1 convention puts all mass at y = 0.
  CHECK(oracle.call(Int(9)) == 1);

  // Same starting seed, same draw sequence.
  auto a = SquarefreeOracle::quantum_sim({}, 5);
  auto b = SquarefreeOracle::quantum_sim({}, 5);
  for (int i = 0; i < 5; ++i) {
    Int va = a.call(Int(45));
    CHECK(va == b.call(Int(45)));
    CHECK(va >= 1);
    CHECK(va <= 45);
  }
}

TEST_CASE("threshold search driven by the simulated oracle") {
  // The squarefree part 7 only becomes recoverable once the bound covers it,
  // i.e. from the 16 level onward.
  auto factory = [](const Int& bmax) {
    jacfact::SquarefreeOracle::QuantumOptions opts;
    opts.B_max = bmax;
    return SquarefreeOracle::quantum_sim(opts, 21);
  };
  CHECK(jacfact::bmax_search(Int(175), factory, 18) == 7);
}

TEST_CASE("quantum oracle factors an odd special number") {
  auto oracle = SquarefreeOracle::quantum_sim({}, 1);
  auto rep = jacfact::special_factor(Int(175), oracle, 60);
  INFO(rep.abort_reason);
  REQUIRE_FALSE(rep.aborted);
  CHECK(same_entries(rep.factorization, make_fact({{5, 2}, {7, 1}})));
  CHECK(rep.oracle_calls >= 1);
}

TEST_CASE("boosting with a fully reliable injected oracle") {
  auto rep = jacfact::special_factor(
      Int(175), SquarefreeOracle::injected(Int(7), 1.0, Int(174), 2), 5);
  REQUIRE_FALSE(rep.aborted);
  CHECK(same_entries(rep.factorization, make_fact({{5, 2}, {7, 1}})));
}
