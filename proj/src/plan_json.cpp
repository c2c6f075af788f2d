#include <string>

#include "polyxform/plan.hpp"

namespace polyxform {

namespace {

constexpr const char* kFormatName = "polyxform-plan";

template <class T, std::size_t N>
nlohmann::json residue_values(const std::array<T, N>& values) {
  auto arr = nlohmann::json::array();
  for (const auto& v : values) arr.push_back(v.value());
  return arr;
}

u64 get_u64(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw SchemaError(std::string("plan is missing '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number_unsigned()) throw SchemaError(std::string("plan field '") + key + "' must be a natural number");
  return v.get<u64>();
}

std::array<u64, 3> get_triple(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array() || doc.at(key).size() != 3) {
    throw SchemaError(std::string("plan field '") + key + "' must be an array of three naturals");
  }
  std::array<u64, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& v = doc.at(key)[i];
    if (!v.is_number_unsigned()) throw SchemaError(std::string("plan field '") + key + "' holds a non-natural");
    out[i] = v.get<u64>();
  }
  return out;
}

}  // namespace

nlohmann::json plan_to_json(const PTPlan& plan) {
  nlohmann::json doc;
  doc["format"] = kFormatName;
  doc["format_version"] = static_cast<u64>(kPlanFormatVersion);
  doc["p"] = plan.p().value();
  doc["y"] = plan.y.value();
  doc["n"] = plan.n;
  doc["omega"] = plan.omega.coefficients();
  doc["bound_mode"] = std::string(to_string(plan.bound_mode));
  doc["coeff_bound"] = plan.coeff_bound;
  doc["supply_limit"] = plan.supply_limit;
  doc["seed"] = plan.seed;
  auto slots = nlohmann::json::array();
  for (const auto& s : plan.slots) {
    slots.push_back({{"q", s.q.value()},
                     {"roots", residue_values(s.roots)},
                     {"reduced_omegas", residue_values(s.reduced_omegas)},
                     {"orders", s.orders},
                     {"period", s.period}});
  }
  doc["slots"] = std::move(slots);
  return doc;
}

PTPlan plan_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("plan document must be a JSON object");
  if (!doc.contains("format") || doc.at("format") != kFormatName) throw SchemaError("not a polyxform plan document");
  if (get_u64(doc, "format_version") != static_cast<u64>(kPlanFormatVersion)) {
    throw SchemaError("unsupported plan format version");
  }
  if (!doc.contains("bound_mode") || !doc.at("bound_mode").is_string()) throw SchemaError("plan is missing 'bound_mode'");
  if (!doc.contains("slots") || !doc.at("slots").is_array()) throw SchemaError("plan is missing 'slots'");

  try {
    const PrimeModulus p(get_u64(doc, "p"));
    const BoundMode mode = parse_bound_mode(doc.at("bound_mode").get<std::string>());
    const CubicExtension field(p, get_u64(doc, "y"));
    const ExtensionElement omega(field, get_triple(doc, "omega"));
    if (omega.coefficients() != get_triple(doc, "omega")) throw SchemaError("omega coefficients are not reduced");

    std::vector<PTPrimeSlot> slots;
    std::vector<u64> moduli;
    for (const auto& entry : doc.at("slots")) {
      if (!entry.is_object()) throw SchemaError("slot entries must be objects");
      const PrimeModulus q(get_u64(entry, "q"));
      auto slot = try_build_slot(q, omega);
      if (!slot) throw SchemaError("slot q=" + std::to_string(q.value()) + " is not usable with this omega");
      std::array<u64, 3> roots{}, reduced{};
      for (std::size_t i = 0; i < 3; ++i) {
        roots[i] = slot->roots[i].value();
        reduced[i] = slot->reduced_omegas[i].value();
      }
      if (get_triple(entry, "roots") != roots || get_triple(entry, "reduced_omegas") != reduced ||
          get_triple(entry, "orders") != slot->orders || get_u64(entry, "period") != slot->period) {
        throw SchemaError("slot q=" + std::to_string(q.value()) + " disagrees with its recomputation");
      }
      moduli.push_back(q.value());
      slots.push_back(std::move(*slot));
    }

    const u64 n = field.unit_group_order();
    if (get_u64(doc, "n") != n) throw SchemaError("n must equal p^3 - 1");
    const u64 coeff_bound = get_u64(doc, "coeff_bound");
    Natural target = mode == BoundMode::strict_9p6 ? strict_bound(p.value()) : Natural(n) * coeff_bound * (p.value() - 1);
    PTPlan plan{field,
                Residue(p, field.y()),
                n,
                omega,
                mode,
                coeff_bound,
                get_u64(doc, "supply_limit"),
                get_u64(doc, "seed"),
                std::move(slots),
                CrtBasis(std::move(moduli)),
                std::move(target),
                {}};
    const auto problems = plan_violations(plan);
    if (!problems.empty()) throw SchemaError("plan violates an invariant: " + problems.front());
    return plan;
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid plan: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed plan: ") + e.what());
  }
}

}  // namespace polyxform
