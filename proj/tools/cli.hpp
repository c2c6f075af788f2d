#pragma once

// In-process entry points for the polyxform command line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polyxform/multiply.hpp"
#include "polyxform/plan.hpp"

namespace polyxform::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPlan = 3;
inline constexpr int kExitMismatch = 4;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kLedgerVersion = 1;

// Parses argv-style arguments (without the program name) and runs one
// subcommand. Reports go to `out` unless --out is given; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct LedgerUpdate {
  std::string id;
  std::string verdict;  // confirmed | refuted | not-testable-at-desk-scale
  nlohmann::json details;
};

struct CommandResult {
  nlohmann::json report;  // JSON report, always populated
  std::string csv;        // tabular rendering when the command has one
  int exit_code = kExitOk;
  std::vector<LedgerUpdate> ledger_updates;
};

struct PlanConfig {
  std::optional<u64> p;
  std::optional<u64> n_target;
  BoundMode bound_mode = BoundMode::strict_9p6;
  u64 coeff_bound = 0;
  u64 supply_limit = 0;
  u64 seed = 0;
};

PTPlan build_plan(const PlanConfig& config);

struct SieveConfig {
  u64 limit = 1000000;
};

struct VerifyConfig {
  std::optional<std::string> plan_path;
  PlanConfig plan;
  std::string input = "random";  // delta | zeros | random | sparse
  u64 sample = 20;
  u64 seed = 0;
};

struct MulConfig {
  std::string a;
  std::string b;
  MulBackendKind backend = MulBackendKind::schoolbook;
  std::size_t threshold = kDefaultKaratsubaThreshold;
  bool oracle_transform = false;
  PlanConfig plan;
};

struct BenchConfig {
  std::vector<u64> sizes;  // operand sizes in bits
  std::vector<MulBackendKind> backends{MulBackendKind::schoolbook, MulBackendKind::karatsuba};
  u64 repetitions = 1;
  u64 seed = 0;
  std::size_t threshold = kDefaultKaratsubaThreshold;
};

struct ExperimentConfig {
  std::string which = "all";  // density | singularity | cost-model | alpha | root-order | all
  u64 seed = 0;
  u64 q = 103;
  u64 trials = 100000;
  u64 dimension = 3;
  u64 density_limit = 500;
  std::vector<u64> bounds{1000, 10000};
  std::vector<u64> alpha_primes{103, 151, 199};
  std::vector<u64> root_primes{7, 13, 19, 31, 103};
};

CommandResult run_sieve(const SieveConfig& config);
CommandResult run_plan(const PlanConfig& config);
CommandResult run_verify(const VerifyConfig& config);
CommandResult run_mul(const MulConfig& config);
CommandResult run_bench(const BenchConfig& config);
CommandResult run_experiments(const ExperimentConfig& config);

// Input vectors used by verify.
std::vector<u64> make_input(std::string_view kind, u64 n, u64 coeff_bound, u64 seed);

// The report with its "timing" member removed.
nlohmann::json strip_timing(const nlohmann::json& report);
// A CSV table with its wall_ns column removed.
std::string strip_wall_column(std::string_view csv);

std::string fnv1a64_hex(std::string_view bytes);

// Claims ledger document handling.
nlohmann::json new_ledger();
// Missing file yields new_ledger(); malformed content is a SchemaError.
nlohmann::json load_ledger(const std::string& path);
void save_ledger(const std::string& path, const nlohmann::json& ledger);
void apply_update(nlohmann::json& ledger, const LedgerUpdate& update, const std::string& experiment,
                  const std::string& report_hash);
void validate_ledger(const nlohmann::json& ledger);

}  // namespace polyxform::cli
