// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: acceptance <path-to-polyxform-binary>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "polyxform/circulant.hpp"
#include "polyxform/crt.hpp"
#include "polyxform/dft.hpp"
#include "polyxform/multiply.hpp"
#include "polyxform/plan.hpp"
#include "polyxform/primes.hpp"
#include "polyxform/residues.hpp"
#include "polyxform/transform.hpp"

using namespace polyxform;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;  // 0 for none
  std::function<Outcome()> check;
};

std::filesystem::path g_tool;

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "polyxform-acceptance";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = "\"" + g_tool.string() + "\" " + args + " --out \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome golden_vectors() {
  const PrimeModulus five(5);
  const auto rm = build_recovery(std::vector<Residue>{Residue(five, 2), Residue(five, 3)});
  const auto comps = recover_components(std::vector<Residue>{Residue(five, 0), Residue(five, 1)}, rm);
  const bool recovery_ok = comps.size() == 2 && comps[0].value() == 3 && comps[1].value() == 1;
  const u64 root = cube_root_fermat(Residue(PrimeModulus(11), 9)).value();
  const auto& table_roots = CubeTable(PrimeModulus(11)).roots_of(9).roots;
  const bool cube_ok = root == 4 && table_roots.size() == 1 && table_roots[0].value() == 4;
  std::ostringstream d;
  d << "components (" << comps[0].value() << "," << comps[1].value() << "), cube root of 9 mod 11 = " << root;
  return {recovery_ok && cube_ok, d.str()};
}

Outcome sieve_million() {
  const auto atkin = sieve_atkin(1000000);
  const auto trial = trial_division_table(1000000);
  std::ostringstream d;
  d << atkin.primes.size() << " primes";
  return {atkin.primes.size() == 78498 && atkin.primes == trial.primes, d.str()};
}

Outcome residue_suite() {
  u64 checked = 0;
  for (u64 q : oracle::primes_up_to(499)) {
    const PrimeModulus m(q);
    if (q % 3 == 1) {
      std::set<u64> seen;
      for (u64 r = 1; r < q; ++r) seen.insert(oracle::mulmod(oracle::mulmod(r, r, q), r, q));
      const u64 cubes = CubeTable(m).nonzero_cube_count();
      if (cubes * 3 != q - 1 || seen.size() != cubes) return {false, "cube count wrong at q = " + std::to_string(q)};
      ++checked;
    } else if (q % 3 == 2) {
      for (u64 x = 0; x < q; ++x) {
        const u64 r = cube_root_fermat(Residue(m, x)).value();
        if (oracle::mulmod(oracle::mulmod(r, r, q), r, q) != x) {
          return {false, "Fermat cube root wrong at q = " + std::to_string(q)};
        }
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " primes"};
}

Outcome principal_roots() {
  u64 pairs = 0;
  for (u64 q : oracle::primes_up_to(199)) {
    const PrimeModulus m(q);
    for (u64 n = 1; n <= q - 1; ++n) {
      if ((q - 1) % n != 0) continue;
      const Residue w = find_root_of_order(n, m);
      const auto cert = check_principal_root(w, n, SumMethod::direct);
      if (!cert.passed() || oracle::order_by_scan(w.value(), q) != n) {
        return {false, "q = " + std::to_string(q) + ", n = " + std::to_string(n)};
      }
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " (q, n) pairs"};
}

Outcome folding_identity() {
  PlanOptions opts;
  opts.bound_mode = BoundMode::input_aware;
  const std::vector<PTPlan> plans{preprocess_for_prime(PrimeModulus(13), opts),
                                  preprocess_for_prime(PrimeModulus(19), opts)};
  std::mt19937_64 rng(2024);
  u64 instances = 0;
  for (; instances < 120; ++instances) {
    const auto& plan = plans[instances % plans.size()];
    const auto& slot = plan.slots[rng() % plan.slots.size()];
    std::vector<u64> x(plan.n);
    for (auto& v : x) v = rng() % (plan.coeff_bound + 1);
    const auto folded = fold_coefficients(x, slot);
    const u64 q = slot.q.value();
    for (const auto& rho : slot.reduced_omegas) {
      const auto via_fold = vandermonde_eval(std::span<const Residue>(folded), rho, slot.period);
      std::vector<u64> fold_values;
      for (const auto& r : via_fold) fold_values.push_back(r.value());
      if (fold_values != oracle::dft_direct(x, rho.value(), q, slot.period)) {
        return {false, "mismatch at q = " + std::to_string(q)};
      }
    }
  }
  return {true, std::to_string(instances) + " slot/input instances, 3 reduced roots each"};
}

Outcome recovery_round_trip() {
  std::vector<u64> primes;
  for (u64 q : oracle::primes_up_to(9999)) {
    if (q % 3 == 1) primes.push_back(q);
  }
  std::mt19937_64 rng(6);
  u64 done = 0;
  while (done < 1000) {
    const u64 q = primes[rng() % primes.size()];
    const PrimeModulus m(q);
    const auto roots = CubeTable(m).roots_of(1 + rng() % (q - 1)).roots;
    if (roots.size() != 3) continue;
    const std::array<u64, 3> a{rng() % q, rng() % q, rng() % q};
    std::vector<Residue> evals;
    for (const auto& r : roots) {
      const u64 x = r.value();
      evals.emplace_back(m, (a[0] + oracle::mulmod(a[1], x, q) + oracle::mulmod(a[2], oracle::mulmod(x, x, q), q)) % q);
    }
    const auto got = recover_components(evals, build_recovery(roots));
    for (int c = 0; c < 3; ++c) {
      if (got[c].value() != a[c]) return {false, "q = " + std::to_string(q)};
    }
    ++done;
  }
  return {true, "1000 triples"};
}

Outcome crt_stage() {
  const auto plan = preprocess_for_prime(PrimeModulus(103), PlanOptions{});
  const auto& moduli = plan.basis.moduli();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    oracle::Big v = (oracle::Big(rng()) << 64) + rng();
    v %= plan.modulus_product();
    std::vector<u64> r;
    for (u64 m : moduli) r.push_back(static_cast<u64>(v % m));
    if (crt_reconstruct(r, plan.basis) != v) return {false, "reconstruction failed"};
    if (crt_reduce(r, plan.basis, 103) != static_cast<u64>(v % 103)) return {false, "reduction failed"};
  }
  std::ostringstream d;
  d << "10000 values below " << plan.modulus_product() << " (" << moduli.size() << " moduli)";
  return {true, d.str()};
}

Outcome circulant_formula() {
  std::mt19937_64 rng(8);
  const std::vector<u64> primes{7, 13, 19, 31, 37, 43, 61, 67, 73, 79};
  for (u64 q : primes) {
    const PrimeModulus m(q);
    for (int i = 0; i < 500; ++i) {
      CirculantSpec spec{{rng() % q, rng() % q, rng() % q}};
      std::vector<std::vector<long long>> rows(3, std::vector<long long>(3));
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) rows[r][c] = static_cast<long long>(spec.coeffs[(c + 3 - r) % 3]);
      }
      const u64 brute = static_cast<u64>(oracle::det_laplace(rows, static_cast<long long>(q)));
      if (circulant_det_formula(spec, m).value() != brute) return {false, "q = " + std::to_string(q)};
    }
  }
  return {true, "5000 instances over 10 primes"};
}

Outcome singularity_rate() {
  const u64 trials = 100000;
  const auto m = singularity_experiment(PrimeModulus(103), trials, 1);
  const double measured = m.fraction();
  const double deviation = std::fabs(measured - 1.0 / 103);
  const double exact = 1.0 - std::pow(1.0 - 1.0 / 103, 3);
  std::ostringstream d;
  d << std::setprecision(6) << "measured " << measured << " vs 1/103 = " << 1.0 / 103 << ", |diff| = " << deviation
    << " (tolerance 0.005); exact rate for 3x3 circulants 1-(1-1/q)^3 = " << exact;
  return {deviation < 5e-3, d.str()};
}

Outcome multiplication_exactness() {
  std::mt19937_64 rng(9);
  auto to_big = [](const BigNat& a) {
    oracle::Big v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = (v << a.limb_bits()) + a.limbs()[i];
    return v;
  };
  u64 pairs = 0;
  auto check = [&](const BigNat& a, const BigNat& b) {
    const auto reference = schoolbook_mul(a, b);
    const auto expected = to_big(a) * to_big(b);
    ++pairs;
    return to_big(reference) == expected && karatsuba_mul(a, b) == reference &&
           multiply(a, b, MulBackend{MulBackendKind::oracle_ntt}).product == reference;
  };
  for (int i = 0; i < 1000; ++i) {
    if (!check(random_bignat(1 + rng() % 10000, rng), random_bignat(1 + rng() % 10000, rng))) {
      return {false, "random pair " + std::to_string(i)};
    }
  }
  for (u64 bits : {1ULL, 64ULL, 65ULL, 2048ULL, 4097ULL, 10000ULL}) {
    if (!check(all_ones(bits), all_ones(bits)) || !check(all_ones(bits), all_ones(10000))) {
      return {false, "all-ones at " + std::to_string(bits) + " bits"};
    }
  }
  return {true, std::to_string(pairs) + " pairs"};
}

Outcome pt_verdict() {
  const auto dir = scratch_dir();
  const auto ledger = dir / "claims.json";
  std::filesystem::remove(ledger);
  const std::string args = "verify --p 13 --bound-mode input-aware --input random --sample 20 --seed 1";
  const int c1 = run_tool(args + " --update-ledger \"" + ledger.string() + "\"", dir / "verify-a.json");
  const int c2 = run_tool(args, dir / "verify-b.json");
  if (c1 != 0 || c2 != 0) return {false, "verify exited with " + std::to_string(c1) + "/" + std::to_string(c2)};
  const auto a = json::parse(slurp(dir / "verify-a.json")), b = json::parse(slurp(dir / "verify-b.json"));
  if (cli::strip_timing(a) != cli::strip_timing(b)) return {false, "report differs between runs"};
  const auto doc = json::parse(slurp(ledger));
  for (const auto& e : doc["entries"]) {
    if (e["id"] != "pt-correctness") continue;
    if (!e["verdict"].is_string()) return {false, "no verdict recorded"};
    const std::string verdict = e["verdict"];
    std::ostringstream d;
    d << "verdict " << verdict << ", " << a["result"]["matches"] << "/" << a["result"]["samples"].size()
      << " sampled outputs agree with direct evaluation";
    return {verdict == "confirmed" || verdict == "refuted", d.str()};
  }
  return {false, "ledger has no pt-correctness entry"};
}

Outcome cli_determinism() {
  const auto dir = scratch_dir();
  const std::vector<std::string> invocations{
      "sieve --limit 100000",
      "plan --p 103 --bound-mode strict-9p6",
      "verify --p 13 --bound-mode input-aware --input sparse --sample 20 --seed 4",
      "mul --a 0x123456789abcdef0123456789 --b 0xfedcba9876543210f --backend karatsuba --threshold 2",
      "mul --a 0xabc --b 0x5a5 --backend polynomial-transform --p 13 --bound-mode input-aware",
      "bench --sizes 64,512,2048 --repetitions 2 --seed 3",
      "bench --sizes 64,512 --format json --seed 3",
      "experiments --which all --seed 1",
  };
  std::set<std::string> subcommands;
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    const auto& args = invocations[i];
    const auto fa = dir / ("run-" + std::to_string(i) + "-a"), fb = dir / ("run-" + std::to_string(i) + "-b");
    const int ca = run_tool(args, fa), cb = run_tool(args, fb);
    if (ca != cb) return {false, "exit codes differ for '" + args + "'"};
    const std::string ta = slurp(fa), tb = slurp(fb);
    const bool csv = ta.rfind("size_bits,", 0) == 0;
    const bool same = csv ? cli::strip_wall_column(ta) == cli::strip_wall_column(tb)
                          : cli::strip_timing(json::parse(ta)).dump() == cli::strip_timing(json::parse(tb)).dump();
    if (!same) return {false, "reports differ for '" + args + "'"};
    subcommands.insert(args.substr(0, args.find(' ')));
  }
  return {subcommands.size() == 6, std::to_string(invocations.size()) + " invocations over " +
                                       std::to_string(subcommands.size()) + " subcommands"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <path-to-polyxform>\n";
    return 2;
  }
  g_tool = argv[1];

  const std::vector<Criterion> criteria{
      {"1", "golden vectors", 1, golden_vectors},
      {"2", "sieve of Atkin at 10^6", 10, sieve_million},
      {"3", "residue suite for q < 500", 30, residue_suite},
      {"4", "principal roots for q < 200", 0, principal_roots},
      {"5", "folding identity", 0, folding_identity},
      {"6", "recovery round-trip", 0, recovery_round_trip},
      {"7", "CRT stage at p = 103", 0, crt_stage},
      {"8a", "circulant determinant formula", 0, circulant_formula},
      {"8b", "singularity rate at q = 103", 0, singularity_rate},
      {"9", "multiplication exactness", 60, multiplication_exactness},
      {"10", "end-to-end transform verdict", 0, pt_verdict},
      {"11", "CLI determinism", 0, cli_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << o.detail << " ("
              << std::fixed << std::setprecision(2) << secs << " s)" << std::defaultfloat << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
