#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tprep/record.hpp"

namespace tprep {

enum class Severity { error, warning };

std::string_view to_string(Severity s);

/// One lint finding. `rule` is always one of kLintRules.
struct Diagnostic {
  Severity severity = Severity::error;
  std::string record_id;
  std::string field;
  std::string rule;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string format_diagnostic(const Diagnostic& d);

// Rule ids. Everything except the last two is error-severity.
//
//   id-missing           record has no (or an empty) id
//   id-duplicate         id already used earlier in the same dataset
//   family-invalid       family is not one of the three known families (record dropped)
//   source-missing       empty or absent citation key
//   field-unknown        key that is not part of the record schema
//   field-null           key present with a null value (absent fields must be omitted)
//   field-type           value has the wrong JSON type (field treated as absent)
//   value-nonpositive    numeric value <= 0 or non-finite
//   psucc-range          p_succ outside (0, 1]
//   provenance-missing   present numeric field tagged (or defaulted to) "missing"
//   provenance-orphan    absent numeric field tagged with anything but "missing"
//   provenance-invalid   unknown provenance string or unknown key in provenance map
//   unit-required        cost/footprint/time value present without its unit label
//   unit-orphan          unit label present without any value it could label
//   eq1-inconsistent     v_single, p_succ and v_expected violate V_exp = V / P_succ
//   completeness-invalid checklist absent, non-boolean, or with missing/unknown items
//   epsilon-def-missing  (warning) output error present without an error definition
//   regime-skip          (warning) record lacks epsilon_out or v_expected for the map
inline constexpr std::array<std::string_view, 18> kLintRules = {
    "id-missing",         "id-duplicate",       "family-invalid",     "source-missing",
    "field-unknown",      "field-null",         "field-type",         "value-nonpositive",
    "psucc-range",        "provenance-missing", "provenance-orphan",  "provenance-invalid",
    "unit-required",      "unit-orphan",        "eq1-inconsistent",   "completeness-invalid",
    "epsilon-def-missing", "regime-skip"};

/// Relative tolerance for the V_exp = V / P_succ consistency check.
inline constexpr double kEq1RelTol = 1e-6;

/// File could not be read, or is not a JSON array of objects.
class DatasetError : public std::runtime_error {
 public:
  enum class Kind { io, parse };
  DatasetError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Strict-mode load found error-severity diagnostics.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct Dataset {
  std::vector<ProtocolRecord> records;
  std::vector<Diagnostic> diagnostics;

  bool has_errors() const;
  std::size_t error_count() const;
};

/// Parses dataset JSON text. Absent fields stay absent; nothing is estimated.
/// In strict mode any error-severity diagnostic raises ValidationError.
Dataset parse_dataset(std::string_view text, bool strict);
Dataset load_dataset(const std::filesystem::path& path, bool strict);

/// Record-level invariants (values, units, provenance, V_exp = V / P_succ consistency, ids).
std::vector<Diagnostic> lint_records(std::span<const ProtocolRecord> records);

nlohmann::ordered_json to_json(const ProtocolRecord& r);
std::string serialize_dataset(std::span<const ProtocolRecord> records);

}  // namespace tprep
