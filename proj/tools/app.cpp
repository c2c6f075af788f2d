#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "polyxform/errors.hpp"

namespace polyxform::cli {

namespace {

struct Shared {
  u64 seed = 0;
  std::optional<u64> p;
  std::optional<u64> n_target;
  std::string bound_mode = "strict";
  std::string format;
  std::string out;
  std::string update_ledger;
};

void add_plan_options(CLI::App* cmd, Shared& s, PlanConfig& plan) {
  cmd->add_option("--p", s.p, "Plan prime (must be 1 mod 3)");
  cmd->add_option("--n-target", s.n_target, "Smallest transform length wanted; p is derived from it");
  cmd->add_option("--bound-mode", s.bound_mode, "strict or input-aware")
      ->check(CLI::IsMember({"strict", "strict-9p6", "input-aware"}));
  cmd->add_option("--coeff-bound", plan.coeff_bound, "Largest input coefficient (0: p - 1)");
  cmd->add_option("--supply-limit", plan.supply_limit, "Exclusive upper limit for auxiliary primes (0: p^2)");
}

void finish_plan_config(const Shared& s, PlanConfig& plan) {
  plan.p = s.p;
  plan.n_target = s.n_target;
  plan.bound_mode = parse_bound_mode(s.bound_mode);
  plan.seed = s.seed;
}

std::vector<u64> parse_list(const std::string& text, const char* what) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    u64 v = 0;
    try {
      v = std::stoull(item, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.front() == '-') throw UsageError(std::string("malformed ") + what + " '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// The command as it would be typed, without output-only flags.
std::string invocation(const std::vector<std::string>& args) {
  std::string s = "polyxform";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out" || args[i] == "--update-ledger" || args[i] == "--plan-out") {
      ++i;
      continue;
    }
    if (args[i].starts_with("--out=") || args[i].starts_with("--update-ledger=") || args[i].starts_with("--plan-out=")) {
      continue;
    }
    s += ' ' + args[i];
  }
  return s;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial transform experiments and big-integer multiplication", "polyxform"};
  app.require_subcommand(1);
  Shared s;
  app.add_option("--seed", s.seed, "Seed for every random choice")->capture_default_str();

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", s.seed, "Seed for every random choice");
    cmd->add_option("--format", s.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", s.out, "Write the report here instead of stdout");
  };

  SieveConfig sieve;
  auto* c_sieve = app.add_subcommand("sieve", "Sieve of Atkin cross-checked against trial division");
  c_sieve->add_option("--limit", sieve.limit, "Largest candidate")->capture_default_str();
  add_common(c_sieve);

  PlanConfig plan;
  std::string plan_out;
  auto* c_plan = app.add_subcommand("plan", "Build and certify a transform plan");
  add_plan_options(c_plan, s, plan);
  c_plan->add_option("--plan-out", plan_out, "Also write the plan document here");
  add_common(c_plan);

  VerifyConfig verify;
  std::string plan_in;
  auto* c_verify = app.add_subcommand("verify", "Compare the transform pipeline against direct evaluation");
  c_verify->add_option("--plan", plan_in, "Plan document from 'plan --plan-out'");
  add_plan_options(c_verify, s, verify.plan);
  c_verify->add_option("--input", verify.input, "delta, zeros, random or sparse")
      ->check(CLI::IsMember({"delta", "zeros", "random", "sparse"}));
  c_verify->add_option("--sample", verify.sample, "Output indices to compare")->capture_default_str();
  c_verify->add_option("--update-ledger", s.update_ledger, "Record the verdict in this claims ledger");
  add_common(c_verify);

  MulConfig mul;
  std::string backend = "schoolbook";
  auto* c_mul = app.add_subcommand("mul", "Multiply two hexadecimal numbers");
  c_mul->add_option("--a", mul.a, "First factor (hex)")->required();
  c_mul->add_option("--b", mul.b, "Second factor (hex)")->required();
  c_mul->add_option("--backend", backend, "schoolbook, karatsuba, oracle-ntt or polynomial-transform");
  c_mul->add_option("--threshold", mul.threshold, "Karatsuba base-case size in limbs");
  c_mul->add_flag("--oracle-transform", mul.oracle_transform,
                  "Polynomial-transform backend: use direct extension-field sums for both directions");
  add_plan_options(c_mul, s, mul.plan);
  add_common(c_mul);

  BenchConfig bench;
  std::string sizes, backends = "schoolbook,karatsuba";
  auto* c_bench = app.add_subcommand("bench", "Operation counts and wall time per backend and size");
  c_bench->add_option("--sizes", sizes, "Comma-separated operand sizes in bits")->required();
  c_bench->add_option("--backends", backends, "Comma-separated backends");
  c_bench->add_option("--repetitions", bench.repetitions, "Runs per size");
  c_bench->add_option("--threshold", bench.threshold, "Karatsuba base-case size in limbs");
  add_common(c_bench);

  ExperimentConfig exp;
  std::string bounds, alpha_primes, root_primes;
  auto* c_exp = app.add_subcommand("experiments", "Experiments behind the claims ledger");
  c_exp->add_option("--which", exp.which, "density, singularity, cost-model, alpha, root-order or all")
      ->check(CLI::IsMember({"density", "singularity", "cost-model", "alpha", "root-order", "all"}));
  c_exp->add_option("--q", exp.q, "Prime for the singularity experiment");
  c_exp->add_option("--trials", exp.trials, "Random circulants to draw");
  c_exp->add_option("--dimension", exp.dimension, "Circulant size");
  c_exp->add_option("--density-limit", exp.density_limit, "Exclusive prime limit for the density count");
  c_exp->add_option("--bounds", bounds, "Comma-separated cost-model bounds");
  c_exp->add_option("--alpha-primes", alpha_primes, "Comma-separated plan primes for the alpha measurement");
  c_exp->add_option("--root-primes", root_primes, "Comma-separated primes for the root-order experiment");
  c_exp->add_option("--update-ledger", s.update_ledger, "Record verdicts in this claims ledger");
  add_common(c_exp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    CommandResult result;
    std::string command;
    bool tabular = false;
    if (c_sieve->parsed()) {
      command = "sieve";
      result = run_sieve(sieve);
    } else if (c_plan->parsed()) {
      command = "plan";
      finish_plan_config(s, plan);
      result = run_plan(plan);
      if (!plan_out.empty()) write_text(plan_out, result.report["result"]["plan"].dump(2) + "\n", out);
    } else if (c_verify->parsed()) {
      command = "verify";
      finish_plan_config(s, verify.plan);
      if (!plan_in.empty()) {
        if (s.p || s.n_target) throw UsageError("give either --plan or --p/--n-target");
        verify.plan_path = plan_in;
      }
      verify.seed = s.seed;
      result = run_verify(verify);
    } else if (c_mul->parsed()) {
      command = "mul";
      mul.backend = parse_backend(backend);
      finish_plan_config(s, mul.plan);
      result = run_mul(mul);
    } else if (c_bench->parsed()) {
      command = "bench";
      bench.sizes = parse_list(sizes, "size");
      bench.backends.clear();
      std::stringstream ss(backends);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) bench.backends.push_back(parse_backend(item));
      }
      bench.seed = s.seed;
      tabular = s.format != "json";
      result = run_bench(bench);
    } else if (c_exp->parsed()) {
      command = "experiments";
      exp.seed = s.seed;
      if (!bounds.empty()) exp.bounds = parse_list(bounds, "bound");
      if (!alpha_primes.empty()) exp.alpha_primes = parse_list(alpha_primes, "prime");
      if (!root_primes.empty()) exp.root_primes = parse_list(root_primes, "prime");
      result = run_experiments(exp);
    }
    if (s.format == "csv" && command != "bench") throw UsageError("csv output is only available for bench");

    write_text(s.out, tabular ? result.csv : result.report.dump(2) + "\n", out);

    if (!s.update_ledger.empty()) {
      if (result.ledger_updates.empty()) {
        err << "note: this run decides no ledger claim; ledger left unchanged\n";
      } else {
        auto ledger = load_ledger(s.update_ledger);
        const auto hash = fnv1a64_hex(strip_timing(result.report).dump());
        for (const auto& u : result.ledger_updates) apply_update(ledger, u, invocation(args), hash);
        save_ledger(s.update_ledger, ledger);
      }
    }
    if (result.exit_code == kExitMismatch) err << "error: result disagrees with its oracle\n";
    return result.exit_code;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PrimeSupplyExhausted& e) {
    err << "error: " << e.what() << "\nhint: --bound-mode input-aware certifies against the actual input bound\n";
    return kExitPlan;
  } catch (const PlanNotCertified& e) {
    err << "error: " << e.what() << '\n';
    return kExitPlan;
  } catch (const OverflowRisk& e) {
    err << "error: " << e.what() << '\n';
    return kExitPlan;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitPlan;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace polyxform::cli
