#include "tprep/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tprep {

using nlohmann::json;

std::string_view to_string(Severity s) {
  return s == Severity::error ? "error" : "warning";
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  os << to_string(d.severity) << ' ' << (d.record_id.empty() ? "-" : d.record_id) << ' '
     << (d.field.empty() ? "-" : d.field) << ' ' << d.rule << ": " << d.message;
  return os.str();
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diags) {
  std::size_t errors = 0;
  for (const auto& d : diags)
    if (d.severity == Severity::error) ++errors;
  std::ostringstream os;
  os << "dataset validation failed with " << errors << " error(s)";
  for (const auto& d : diags)
    if (d.severity == Severity::error) {
      os << "; first: " << format_diagnostic(d);
      break;
    }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diags)
    : std::runtime_error(summarize(diags)), diagnostics_(std::move(diags)) {}

bool Dataset::has_errors() const { return error_count() > 0; }

std::size_t Dataset::error_count() const {
  std::size_t n = 0;
  for (const auto& d : diagnostics)
    if (d.severity == Severity::error) ++n;
  return n;
}

namespace {

const std::set<std::string, std::less<>> kStringFields = {
    "id", "family", "source", "epsilon_def", "cost_unit", "footprint_unit", "time_unit"};

Diagnostic make_diag(Severity sev, std::string id, std::string field, std::string rule,
                     std::string message) {
  return Diagnostic{sev, std::move(id), std::move(field), std::move(rule), std::move(message)};
}

Diagnostic error(std::string id, std::string field, std::string rule, std::string message) {
  return make_diag(Severity::error, std::move(id), std::move(field), std::move(rule),
                   std::move(message));
}

std::string record_label(const std::string& id, std::size_t index) {
  return id.empty() ? "#" + std::to_string(index) : id;
}

std::optional<std::string>* string_slot(ProtocolRecord& r, std::string_view key) {
  if (key == "epsilon_def") return &r.epsilon_def;
  if (key == "cost_unit") return &r.cost_unit;
  if (key == "footprint_unit") return &r.footprint_unit;
  if (key == "time_unit") return &r.time_unit;
  return nullptr;
}

void parse_provenance_map(const json& obj, ProtocolRecord& r, const std::string& label,
                          std::vector<Diagnostic>& out) {
  if (!obj.is_object()) {
    out.push_back(error(label, "provenance", "field-type", "provenance must be an object"));
    return;
  }
  for (const auto& [key, val] : obj.items()) {
    auto field = parse_numeric_field(key);
    if (!field) {
      out.push_back(error(label, "provenance", "provenance-invalid",
                          "provenance names unknown numeric field '" + key + "'"));
      continue;
    }
    std::optional<Provenance> p;
    if (val.is_string()) p = parse_provenance(val.get<std::string>());
    if (!p) {
      out.push_back(error(label, key, "provenance-invalid",
                          "provenance must be one of table, figure_digitized, reconstructed, "
                          "missing"));
      continue;
    }
    r.provenance_of(*field) = *p;
  }
}

void parse_completeness(const json& obj, ProtocolRecord& r, const std::string& label,
                        std::vector<Diagnostic>& out) {
  if (!obj.is_object()) {
    out.push_back(
        error(label, "completeness", "completeness-invalid", "completeness must be an object"));
    return;
  }
  const auto& names = Completeness::names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = obj.find(std::string(names[i]));
    if (it == obj.end()) {
      out.push_back(error(label, "completeness", "completeness-invalid",
                          "checklist item '" + std::string(names[i]) + "' is absent"));
    } else if (!it->is_boolean()) {
      out.push_back(error(label, "completeness", "completeness-invalid",
                          "checklist item '" + std::string(names[i]) + "' must be boolean"));
    } else {
      r.completeness.item(i) = it->get<bool>();
    }
  }
  for (const auto& [key, val] : obj.items()) {
    bool known = false;
    for (auto n : names) known = known || n == key;
    if (!known)
      out.push_back(error(label, "completeness", "completeness-invalid",
                          "unknown checklist item '" + key + "'"));
  }
}

// Returns nullopt when the record cannot be represented (invalid family).
std::optional<ProtocolRecord> parse_record(const json& obj, std::size_t index,
                                           std::vector<Diagnostic>& out) {
  ProtocolRecord r;
  if (auto it = obj.find("id"); it != obj.end() && it->is_string()) r.id = it->get<std::string>();
  const std::string label = record_label(r.id, index);

  bool family_ok = false;
  bool saw_completeness = false;
  for (const auto& [key, val] : obj.items()) {
    if (val.is_null()) {
      out.push_back(error(label, key, "field-null",
                          "absent fields must be omitted, not written as null"));
      if (key == "family") family_ok = false;
      continue;
    }
    if (auto field = parse_numeric_field(key)) {
      if (!val.is_number()) {
        out.push_back(error(label, key, "field-type", "expected a number"));
        continue;
      }
      r.value(*field) = val.get<double>();
    } else if (kStringFields.contains(key)) {
      if (!val.is_string()) {
        out.push_back(error(label, key, "field-type", "expected a string"));
        continue;
      }
      auto s = val.get<std::string>();
      if (key == "id") {
        // handled above
      } else if (key == "family") {
        if (auto f = parse_family(s)) {
          r.family = *f;
          family_ok = true;
        } else {
          out.push_back(error(label, key, "family-invalid",
                              "unknown family '" + s +
                                  "' (expected distillation, cultivation or code_switching)"));
        }
      } else if (key == "source") {
        r.source = std::move(s);
      } else {
        *string_slot(r, key) = std::move(s);
      }
    } else if (key == "provenance") {
      parse_provenance_map(val, r, label, out);
    } else if (key == "completeness") {
      saw_completeness = true;
      parse_completeness(val, r, label, out);
    } else {
      out.push_back(error(label, key, "field-unknown", "'" + key + "' is not a record field"));
    }
  }
  if (!obj.contains("family"))
    out.push_back(error(label, "family", "family-invalid", "family is required"));
  if (!saw_completeness)
    out.push_back(error(label, "completeness", "completeness-invalid",
                        "completeness checklist is required"));
  if (!family_ok) return std::nullopt;
  return r;
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::vector<Diagnostic> lint_records(std::span<const ProtocolRecord> records) {
  std::vector<Diagnostic> out;
  std::set<std::string, std::less<>> seen;

  for (std::size_t i = 0; i < records.size(); ++i) {
    const ProtocolRecord& r = records[i];
    const std::string label = record_label(r.id, i);

    if (r.id.empty()) {
      out.push_back(error(label, "id", "id-missing", "record has no id"));
    } else if (!seen.insert(r.id).second) {
      out.push_back(error(label, "id", "id-duplicate", "id '" + r.id + "' is not unique"));
    }
    if (r.source.empty())
      out.push_back(error(label, "source", "source-missing", "citation key is required"));

    for (NumericField f : kNumericFields) {
      const auto& v = r.value(f);
      const std::string name(to_string(f));
      if (v) {
        if (f == NumericField::p_succ) {
          if (!(std::isfinite(*v) && *v > 0.0 && *v <= 1.0))
            out.push_back(error(label, name, "psucc-range", "p_succ must lie in (0, 1]"));
        } else if (!positive_finite(*v)) {
          out.push_back(
              error(label, name, "value-nonpositive", name + " must be finite and positive"));
        }
        if (r.provenance_of(f) == Provenance::missing)
          out.push_back(error(label, name, "provenance-missing",
                              "present value must carry a provenance tag other than missing"));
      } else if (r.provenance_of(f) != Provenance::missing) {
        out.push_back(error(label, name, "provenance-orphan",
                            "absent value is tagged '" + std::string(to_string(r.provenance_of(f))) +
                                "'; absent fields are always 'missing'"));
      }
    }

    const bool has_cost = r.v_single || r.v_expected;
    if (has_cost && !r.cost_unit)
      out.push_back(error(label, "cost_unit", "unit-required", "cost value present without cost_unit"));
    if (!has_cost && r.cost_unit)
      out.push_back(error(label, "cost_unit", "unit-orphan", "cost_unit present without a cost value"));
    if (r.q_peak && !r.footprint_unit)
      out.push_back(
          error(label, "footprint_unit", "unit-required", "q_peak present without footprint_unit"));
    if (!r.q_peak && r.footprint_unit)
      out.push_back(
          error(label, "footprint_unit", "unit-orphan", "footprint_unit present without q_peak"));
    if (r.latency && !r.time_unit)
      out.push_back(error(label, "time_unit", "unit-required", "latency present without time_unit"));
    if (!r.latency && r.time_unit)
      out.push_back(error(label, "time_unit", "unit-orphan", "time_unit present without latency"));

    if (r.v_single && r.v_expected && r.p_succ && *r.p_succ > 0.0) {
      const double implied = *r.v_single / *r.p_succ;
      if (!(std::abs(*r.v_expected - implied) <= kEq1RelTol * *r.v_expected)) {
        std::ostringstream msg;
        msg << "v_expected=" << *r.v_expected << " but v_single/p_succ=" << implied;
        out.push_back(error(label, "v_expected", "eq1-inconsistent", msg.str()));
      }
    }

    if (r.epsilon_out && !r.epsilon_def)
      out.push_back(make_diag(Severity::warning, label, "epsilon_def", "epsilon-def-missing",
                              "output error carries no error-definition note"));
  }
  return out;
}

Dataset parse_dataset(std::string_view text, bool strict) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DatasetError(DatasetError::Kind::parse, std::string("malformed dataset JSON: ") + e.what());
  }
  if (!doc.is_array())
    throw DatasetError(DatasetError::Kind::parse, "dataset must be a JSON array of records");

  Dataset ds;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_object())
      throw DatasetError(DatasetError::Kind::parse,
                         "dataset element " + std::to_string(i) + " is not an object");
    if (auto r = parse_record(doc[i], i, ds.diagnostics)) ds.records.push_back(std::move(*r));
  }
  // A tag that failed to parse is stored as missing; it was already reported
  // as provenance-invalid, so the linter's provenance-missing would repeat it.
  auto already_invalid = [&](const Diagnostic& d) {
    return d.rule == "provenance-missing" &&
           std::any_of(ds.diagnostics.begin(), ds.diagnostics.end(), [&](const Diagnostic& e) {
             return e.rule == "provenance-invalid" && e.record_id == d.record_id && e.field == d.field;
           });
  };
  for (auto& d : lint_records(ds.records))
    if (!already_invalid(d)) ds.diagnostics.push_back(std::move(d));

  if (strict && ds.has_errors()) throw ValidationError(ds.diagnostics);
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DatasetError(DatasetError::Kind::io, "cannot open dataset file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad())
    throw DatasetError(DatasetError::Kind::io, "error reading dataset file '" + path.string() + "'");
  return parse_dataset(buf.str(), strict);
}

nlohmann::ordered_json to_json(const ProtocolRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["family"] = to_string(r.family);
  j["source"] = r.source;
  auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("epsilon_out", r.epsilon_out);
  put("epsilon_def", r.epsilon_def);
  put("v_single", r.v_single);
  put("v_expected", r.v_expected);
  put("p_succ", r.p_succ);
  put("q_peak", r.q_peak);
  put("latency", r.latency);
  put("cost_unit", r.cost_unit);
  put("footprint_unit", r.footprint_unit);
  put("time_unit", r.time_unit);

  nlohmann::ordered_json prov = nlohmann::ordered_json::object();
  for (NumericField f : kNumericFields) prov[std::string(to_string(f))] = to_string(r.provenance_of(f));
  j["provenance"] = std::move(prov);

  nlohmann::ordered_json comp = nlohmann::ordered_json::object();
  const auto items = r.completeness.items();
  for (std::size_t i = 0; i < items.size(); ++i)
    comp[std::string(Completeness::names()[i])] = items[i];
  j["completeness"] = std::move(comp);
  return j;
}

std::string serialize_dataset(std::span<const ProtocolRecord> records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

}  // namespace tprep
