#include "tprep/record.hpp"

#include <string>

namespace tprep {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::distillation: return "distillation";
    case Family::cultivation: return "cultivation";
    case Family::code_switching: return "code_switching";
  }
  return "?";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::table: return "table";
    case Provenance::figure_digitized: return "figure_digitized";
    case Provenance::reconstructed: return "reconstructed";
    case Provenance::missing: return "missing";
  }
  return "?";
}

std::string_view to_string(NumericField f) {
  switch (f) {
    case NumericField::epsilon_out: return "epsilon_out";
    case NumericField::v_single: return "v_single";
    case NumericField::v_expected: return "v_expected";
    case NumericField::p_succ: return "p_succ";
    case NumericField::q_peak: return "q_peak";
    case NumericField::latency: return "latency";
  }
  return "?";
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::cost: return "cost";
    case Quantity::footprint: return "footprint";
    case Quantity::time: return "time";
    case Quantity::error: return "error";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  for (Family f : kFamilies)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view s) {
  for (Provenance p : {Provenance::table, Provenance::figure_digitized,
                       Provenance::reconstructed, Provenance::missing})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

std::optional<NumericField> parse_numeric_field(std::string_view s) {
  for (NumericField f : kNumericFields)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

Quantity parse_quantity(std::string_view s) {
  for (Quantity q : {Quantity::cost, Quantity::footprint, Quantity::time, Quantity::error})
    if (to_string(q) == s) return q;
  throw DomainError("unknown comparison field '" + std::string(s) +
                    "' (expected cost, footprint, time or error)");
}

const std::array<std::string_view, Completeness::kItems>& Completeness::names() {
  static const std::array<std::string_view, kItems> kNames = {
      "error_model",        "code_family", "decoder_convention",    "postselection_rule",
      "footprint",          "latency",     "cost_interpretability", "output_error_definition"};
  return kNames;
}

std::array<bool, Completeness::kItems> Completeness::items() const {
  return {error_model, code_family, decoder_convention,    postselection_rule,
          footprint,   latency,     cost_interpretability, output_error_definition};
}

bool& Completeness::item(std::size_t i) {
  switch (i) {
    case 0: return error_model;
    case 1: return code_family;
    case 2: return decoder_convention;
    case 3: return postselection_rule;
    case 4: return footprint;
    case 5: return latency;
    case 6: return cost_interpretability;
    case 7: return output_error_definition;
  }
  throw std::out_of_range("completeness item index");
}

std::optional<double>& ProtocolRecord::value(NumericField f) {
  switch (f) {
    case NumericField::epsilon_out: return epsilon_out;
    case NumericField::v_single: return v_single;
    case NumericField::v_expected: return v_expected;
    case NumericField::p_succ: return p_succ;
    case NumericField::q_peak: return q_peak;
    case NumericField::latency: return latency;
  }
  throw std::out_of_range("numeric field");
}

const std::optional<double>& ProtocolRecord::value(NumericField f) const {
  return const_cast<ProtocolRecord*>(this)->value(f);
}

namespace {

bool carries_cost(const ProtocolRecord& r) {
  return (r.v_single || r.v_expected) && r.cost_unit.has_value();
}

}  // namespace

bool compatible(const ProtocolRecord& a, const ProtocolRecord& b, Quantity q) {
  switch (q) {
    case Quantity::cost:
      return carries_cost(a) && carries_cost(b) && *a.cost_unit == *b.cost_unit;
    case Quantity::footprint:
      return a.q_peak && b.q_peak && a.footprint_unit && b.footprint_unit &&
             *a.footprint_unit == *b.footprint_unit;
    case Quantity::time:
      return a.latency && b.latency && a.time_unit && b.time_unit &&
             *a.time_unit == *b.time_unit;
    case Quantity::error:
      return a.epsilon_out && b.epsilon_out && a.epsilon_def == b.epsilon_def;
  }
  return false;
}

bool compatible(const ProtocolRecord& a, const ProtocolRecord& b, std::string_view field) {
  return compatible(a, b, parse_quantity(field));
}

double completeness_score(const ProtocolRecord& r) {
  int set = 0;
  for (bool b : r.completeness.items()) set += b ? 1 : 0;
  return static_cast<double>(set) / static_cast<double>(Completeness::kItems);
}

}  // namespace tprep
