// Command-line front end: every subcommand prints one deterministic JSON
// document on stdout and a short human summary on stderr. Exit codes:
// 0 success, 1 verification/operation failure, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "jacfact/circuit_sim.hpp"
#include "jacfact/factor_driver.hpp"
#include "jacfact/jacobi_engine.hpp"
#include "jacfact/verify.hpp"

namespace {

using jacfact::Int;
using ordered_json = nlohmann::ordered_json;

std::string dec(const Int& v) { return v.get_str(); }

Int parse_int(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("expected a decimal integer, got '" + s + "'");
  }
}

unsigned default_ell_cap() {
  if (const char* env = std::getenv("JACOBI_ELL_CAP")) {
    int v = std::atoi(env);
    if (v >= 2 && v <= 30) return static_cast<unsigned>(v);
  }
  return 24;
}

ordered_json cost_to_json(const jacfact::CostReport& c) {
  return ordered_json{{"n_padded", c.n_padded},
                      {"block_bits", c.block_bits},
                      {"block_iterations", c.block_iterations},
                      {"peak_window_bits", c.peak_window_bits},
                      {"mbit_mults", c.mbit_mults},
                      {"mbit_adds", c.mbit_adds},
                      {"base_case_bits", c.base_case_bits},
                      {"streamed", c.streamed}};
}

ordered_json check_to_json(const jacfact::CheckResult& r) {
  return ordered_json{{"suite", r.suite},
                      {"checked", r.checked},
                      {"failed", r.failed},
                      {"failures", r.failures}};
}

void emit(const ordered_json& doc, const std::string& summary) {
  std::cout << doc.dump(2) << "\n";
  std::cerr << summary << "\n";
}

int cmd_jacobi(const std::string& x_str, const std::string& n_str,
               unsigned block_bits, bool check) {
  Int x = parse_int(x_str);
  Int N = parse_int(n_str);
  jacfact::JacobiResult r = jacfact::jacobi_streamed(
      x, N, {.block_bits = block_bits, .runtime_checks = check});
  bool ok = true;
  ordered_json out{{"value", r.value}};
  if (check) {
    int ref = jacfact::jacobi_reference(x, N);
    ok = ref == r.value;
    out["reference"] = ref;
    out["match"] = ok;
  }
  ordered_json doc{{"command", "jacobi"},
                   {"inputs",
                    {{"x", dec(x)},
                     {"modulus", dec(N)},
                     {"block_bits", block_bits},
                     {"check", check}}},
                   {"outputs", out},
                   {"counters", cost_to_json(r.cost)},
                   {"seed", nullptr}};
  std::string summary = "jacobi(" + dec(x) + " | " + dec(N) +
                        ") = " + std::to_string(r.value) +
                        (r.cost.streamed ? " [streamed m=" +
                                               std::to_string(r.cost.block_bits) +
                                               "]"
                                         : " [reference fallback]");
  if (check) summary += ok ? " check: ok" : " check: MISMATCH";
  emit(doc, summary);
  return ok ? 0 : 1;
}

int cmd_factor(const std::string& n_str, const std::string& bmax_str,
               int ell_override, const std::string& mode, std::uint64_t shots,
               std::uint64_t seed, const std::string& cutoff_str,
               const std::string& zero_phase, unsigned ell_cap) {
  jacfact::SimParams params;
  params.N = parse_int(n_str);
  params.B_max = parse_int(bmax_str);
  if (ell_override > 0) params.ell = static_cast<unsigned>(ell_override);
  params.small_prime_cutoff = parse_int(cutoff_str);
  params.zero_phase = zero_phase == "-1" ? jacfact::ZeroPhase::minus_one
                                         : jacfact::ZeroPhase::plus_one;
  params.ell_cap = ell_cap;
  if (mode == "sampled") params.sample = jacfact::SampleMode{shots, seed};

  jacfact::SimReport rep = jacfact::run_algorithm1(params);

  ordered_json recovered = ordered_json::object();
  for (const auto& [value, mass] : rep.recovered) recovered[dec(value)] = mass;
  ordered_json out{{"channel", rep.channel},
                   {"true_b", dec(rep.true_b)},
                   {"success_prob", rep.success_prob},
                   {"successful_y_count", rep.successful_y_count},
                   {"min_successful_amp_ratio", rep.min_successful_amp_ratio},
                   {"recovered", recovered}};
  if (rep.found_small_prime)
    out["found_small_prime"] = dec(*rep.found_small_prime);
  if (params.sample) out["shot_outcomes"] = rep.shot_outcomes;

  ordered_json counters = ordered_json::object();
  if (rep.channel != "small_prime") {
    counters["ell"] = jacfact::effective_ell(params);
    counters["register_size"] = (1ull << jacfact::effective_ell(params));
  }
  ordered_json doc{{"command", "factor"},
                   {"inputs",
                    {{"n", dec(params.N)},
                     {"bmax", dec(params.B_max)},
                     {"mode", mode},
                     {"shots", mode == "sampled" ? ordered_json(shots)
                                                 : ordered_json(nullptr)},
                     {"cutoff", dec(params.small_prime_cutoff)},
                     {"zero_phase", zero_phase},
                     {"ell_cap", ell_cap}}},
                   {"outputs", out},
                   {"counters", counters},
                   {"seed", mode == "sampled" ? ordered_json(seed)
                                              : ordered_json(nullptr)}};
  std::string summary;
  if (rep.channel == "small_prime")
    summary = "n=" + dec(params.N) +
              ": small prime " + dec(*rep.found_small_prime) +
              " found classically";
  else if (rep.channel == "none")
    summary = "n=" + dec(params.N) + ": no success channel (true B " +
              dec(rep.true_b) + " outside [2, bmax] or input degenerate)";
  else
    summary = "n=" + dec(params.N) + ": success probability " +
              std::to_string(rep.success_prob) + " for B=" + dec(rep.true_b);
  emit(doc, summary);
  return 0;
}

int cmd_special_factor(const std::string& n_str, const std::string& oracle_kind,
                       std::uint64_t T, std::uint64_t seed, unsigned ell_cap) {
  Int N = parse_int(n_str);
  jacfact::SquarefreeOracle::QuantumOptions qopts;
  qopts.ell_cap = ell_cap;
  jacfact::SquarefreeOracle oracle =
      oracle_kind == "quantum"
          ? jacfact::SquarefreeOracle::quantum_sim(qopts, seed)
          : jacfact::SquarefreeOracle::classical_trial();
  if (T == 0) T = jacfact::bit_length(N) + 10;
  jacfact::SpecialFactorReport rep = jacfact::special_factor(N, oracle, T);
  bool valid =
      !rep.aborted && jacfact::validate_factorization(N, rep.factorization);

  ordered_json factors = ordered_json::array();
  for (const auto& e : rep.factorization.entries)
    factors.push_back({{"prime", dec(e.prime)}, {"exponent", e.exponent}});
  ordered_json doc{
      {"command", "special_factor"},
      {"inputs",
       {{"n", dec(N)}, {"oracle", oracle_kind}, {"T", T}, {"ell_cap", ell_cap}}},
      {"outputs",
       {{"factorization", factors},
        {"aborted", rep.aborted},
        {"abort_reason", rep.abort_reason},
        {"validated", valid}}},
      {"counters", {{"oracle_calls", rep.oracle_calls}}},
      {"seed", oracle_kind == "quantum" ? ordered_json(seed)
                                        : ordered_json(nullptr)}};
  std::string summary;
  if (rep.aborted)
    summary = "n=" + dec(N) + ": aborted (" + rep.abort_reason + ")";
  else {
    summary = "n=" + dec(N) + " =";
    for (const auto& e : rep.factorization.entries)
      summary += " " + dec(e.prime) + "^" + std::to_string(e.exponent);
  }
  emit(doc, summary);
  return valid ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t trials,
               std::uint64_t seed, std::uint64_t max_m, std::uint64_t max_n) {
  std::vector<jacfact::CheckResult> results;
  if (suite == "gauss") {
    results.push_back(jacfact::check_gauss_sums(max_m));
  } else if (suite == "window") {
    results.push_back(jacfact::check_window_invariants(trials, seed));
    results.push_back(jacfact::check_window_oracle_equivalence(trials, seed + 1));
  } else if (suite == "phases") {
    results.push_back(jacfact::check_phase_sums(trials, seed));
  } else if (suite == "counts") {
    results.push_back(jacfact::check_sign_counts(max_n));
  } else if (suite == "trace") {
    results.push_back(jacfact::check_counting_and_trace(trials, seed));
  } else {
    throw CLI::ValidationError(
        "unknown suite '" + suite +
        "' (expected gauss, window, phases, counts or trace)");
  }
  bool all_passed = true;
  std::uint64_t checked = 0;
  ordered_json suites = ordered_json::array();
  for (const auto& r : results) {
    suites.push_back(check_to_json(r));
    all_passed = all_passed && r.passed();
    checked += r.checked;
  }
  ordered_json doc{{"command", "verify"},
                   {"inputs",
                    {{"suite", suite},
                     {"trials", trials},
                     {"seed", seed},
                     {"max_m", max_m},
                     {"max_n", max_n}}},
                   {"outputs", {{"passed", all_passed}, {"suites", suites}}},
                   {"counters", {{"checked", checked}}},
                   {"seed", seed}};
  emit(doc, "verify " + suite + ": " +
                (all_passed ? "passed" : "FAILED") + " (" +
                std::to_string(checked) + " checks)");
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streamed Jacobi symbols and squarefree-part recovery"};
  app.require_subcommand(1);

  std::string x_str, n_str = "0", bmax_str = "2", cutoff_str = "0";
  std::string mode = "exact", zero_phase = "+1", oracle_kind = "classical";
  std::string suite;
  unsigned block_bits = 64;
  unsigned ell_cap = default_ell_cap();
  int ell_override = 0;
  bool check = false;
  std::uint64_t shots = 128, seed = 0, T = 0, trials = 10000;
  std::uint64_t max_m = 201, max_n = 3000;

  CLI::App* jacobi = app.add_subcommand("jacobi", "Jacobi symbol (x | modulus)");
  jacobi->add_option("--x", x_str, "numerator")->required();
  jacobi->add_option("--modulus", n_str, "odd modulus")->required();
  jacobi->add_option("--block-bits", block_bits, "streaming block width");
  jacobi->add_flag("--check", check, "compare against the reference loop");

  CLI::App* factor =
      app.add_subcommand("factor", "recover the squarefree part of n");
  factor->add_option("--n", n_str, "odd integer to analyze")->required();
  factor->add_option("--bmax", bmax_str, "bound on the squarefree part")
      ->required();
  factor->add_option("--ell", ell_override, "register width override");
  factor->add_option("--mode", mode, "exact or sampled")
      ->check(CLI::IsMember({"exact", "sampled"}));
  factor->add_option("--shots", shots, "samples in sampled mode");
  factor->add_option("--seed", seed, "sampling seed");
  factor->add_option("--cutoff", cutoff_str, "classical trial-division bound");
  factor->add_option("--zero-phase", zero_phase, "phase at vanishing symbols")
      ->check(CLI::IsMember({"+1", "-1"}));
  factor->add_option("--ell-cap", ell_cap, "refuse wider registers");

  CLI::App* special =
      app.add_subcommand("special-factor", "factor distinct-exponent integers");
  special->add_option("--n", n_str, "integer to factor")->required();
  special->add_option("--oracle", oracle_kind, "classical or quantum")
      ->check(CLI::IsMember({"classical", "quantum"}));
  special->add_option("--T", T, "oracle repetitions (0: derive from n)");
  special->add_option("--seed", seed, "oracle sampling seed");
  special->add_option("--ell-cap", ell_cap, "refuse wider registers");

  CLI::App* verify = app.add_subcommand("verify", "run a verification sweep");
  verify->add_option("suite", suite, "gauss, window, phases, counts or trace")
      ->required();
  verify->add_option("--trials", trials, "random trials");
  verify->add_option("--seed", seed, "sweep seed");
  verify->add_option("--max-m", max_m, "largest character modulus");
  verify->add_option("--max-n", max_n, "largest counting modulus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (jacobi->parsed()) return cmd_jacobi(x_str, n_str, block_bits, check);
    if (factor->parsed())
      return cmd_factor(n_str, bmax_str, ell_override, mode, shots, seed,
                        cutoff_str, zero_phase, ell_cap);
    if (special->parsed())
      return cmd_special_factor(n_str, oracle_kind, T, seed, ell_cap);
    if (verify->parsed()) return cmd_verify(suite, trials, seed, max_m, max_n);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
