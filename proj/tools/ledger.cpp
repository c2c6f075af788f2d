#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "polyxform/errors.hpp"

namespace polyxform::cli {

namespace {

struct ClaimDefinition {
  const char* id;
  const char* claim;
  const char* experiment;
  const char* fixed_verdict;  // nullptr when an experiment decides
  const char* note;
};

// Claims are restated in our own words.
const ClaimDefinition kCatalog[] = {
    {"pt-correctness",
     "Working modulo auxiliary primes q_k, evaluating at the cube roots of y, recovering components and "
     "recombining by CRT reproduces the length-n DFT over the cubic extension, reduced mod p, at every output.",
     "polyxform verify --p 13 --bound-mode input-aware --input random --sample 20 --seed 1", nullptr, nullptr},
    {"noncube-density",
     "For a prime q = 1 (mod 3), a fixed nonzero value is a cube with probability about one third.",
     "polyxform experiments --which density", nullptr, nullptr},
    {"circulant-singularity",
     "A uniformly random 3x3 circulant matrix over F_q is singular with probability about 1/q.",
     "polyxform experiments --which singularity --q 103 --trials 100000 --seed 1", nullptr, nullptr},
    {"cost-sum-q-log-q",
     "The sum of q ln q over primes below the bound grows no faster than p^2 ln^2 p.",
     "polyxform experiments --which cost-model", nullptr, nullptr},
    {"cost-sum-q-squared",
     "The sum of q^2 over primes below p grows like p^3 / ln(p^3).",
     "polyxform experiments --which cost-model", nullptr, nullptr},
    {"transform-length",
     "The cubic extension contains a root of unity of order p^3 (or p^2 - 1) to serve as the transform root.",
     "polyxform experiments --which root-order", nullptr, nullptr},
    {"principal-root-criterion",
     "An element of order n whose power sums over j = 1..n-1 all vanish is a principal root of unity.",
     "polyxform experiments --which root-order", nullptr, nullptr},
    {"auxiliary-prime-count",
     "The number of auxiliary primes needed stays bounded by a constant as p grows.",
     "polyxform experiments --which alpha", nullptr, nullptr},
    {"linear-operation-count",
     "The transform takes O(n) operations.", "none",
     "not-testable-at-desk-scale",
     "Asymptotic operation count; verify reports measured per-slot multiplication counts instead."},
    {"multiplication-complexity",
     "Two n-bit integers can be multiplied in n k^(log* n) time by recursing on the transform.", "none",
     "not-testable-at-desk-scale",
     "Asymptotic claim whose recursion depth never exceeds one level at any feasible size."},
    {"network-coding-consequence",
     "The multiplication bound contradicts the network coding conjecture.", "none",
     "not-testable-at-desk-scale", "A statement about lower bounds; no finite experiment bears on it."},
};

const std::set<std::string> kVerdicts{"confirmed", "refuted", "not-testable-at-desk-scale"};

nlohmann::json entry_for(const ClaimDefinition& def) {
  nlohmann::json e;
  e["id"] = def.id;
  e["claim"] = def.claim;
  e["source_ref"] = nullptr;
  e["source_quote"] = nullptr;
  e["experiment"] = def.experiment;
  if (def.fixed_verdict) {
    e["verdict"] = def.fixed_verdict;
    e["evidence"] = {{"note", def.note}};
  } else {
    e["verdict"] = nullptr;
    e["evidence"] = nullptr;
  }
  return e;
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

nlohmann::json new_ledger() {
  nlohmann::json doc;
  doc["ledger_version"] = kLedgerVersion;
  doc["entries"] = nlohmann::json::array();
  for (const auto& def : kCatalog) doc["entries"].push_back(entry_for(def));
  return doc;
}

void validate_ledger(const nlohmann::json& ledger) {
  if (!ledger.is_object() || !ledger.contains("ledger_version") || !ledger.contains("entries") ||
      !ledger.at("entries").is_array()) {
    throw SchemaError("claims ledger must be an object with ledger_version and entries");
  }
  if (ledger.at("ledger_version") != kLedgerVersion) throw SchemaError("unsupported claims ledger version");
  std::set<std::string> seen;
  for (const auto& e : ledger.at("entries")) {
    if (!e.is_object() || !e.contains("id") || !e.at("id").is_string()) throw SchemaError("ledger entry without id");
    const auto id = e.at("id").get<std::string>();
    if (!seen.insert(id).second) throw SchemaError("duplicate ledger entry '" + id + "'");
    for (const char* key : {"claim", "experiment", "verdict", "evidence"}) {
      if (!e.contains(key)) throw SchemaError("ledger entry '" + id + "' is missing '" + key + "'");
    }
    const auto& v = e.at("verdict");
    if (!v.is_null() && (!v.is_string() || !kVerdicts.contains(v.get<std::string>()))) {
      throw SchemaError("ledger entry '" + id + "' has an unknown verdict");
    }
  }
}

nlohmann::json load_ledger(const std::string& path) {
  std::ifstream in(path);
  if (!in) return new_ledger();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("claims ledger is not valid JSON: ") + e.what());
  }
  validate_ledger(doc);
  return doc;
}

void save_ledger(const std::string& path, const nlohmann::json& ledger) {
  validate_ledger(ledger);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw UsageError("cannot write claims ledger to " + path);
  out << ledger.dump(2) << '\n';
}

void apply_update(nlohmann::json& ledger, const LedgerUpdate& update, const std::string& experiment,
                  const std::string& report_hash) {
  if (!kVerdicts.contains(update.verdict)) throw UsageError("unknown verdict '" + update.verdict + "'");
  nlohmann::json* target = nullptr;
  for (auto& e : ledger["entries"]) {
    if (e.at("id") == update.id) target = &e;
  }
  if (!target) {
    for (const auto& def : kCatalog) {
      if (update.id == def.id) {
        ledger["entries"].push_back(entry_for(def));
        target = &ledger["entries"].back();
      }
    }
  }
  if (!target) throw UsageError("no claim with id '" + update.id + "'");
  (*target)["experiment"] = experiment;
  (*target)["verdict"] = update.verdict;
  (*target)["evidence"] = {{"report_fnv1a64", report_hash}, {"details", update.details}};
}

}  // namespace polyxform::cli
