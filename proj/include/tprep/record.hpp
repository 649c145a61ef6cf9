#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tprep {

/// Thrown for arguments outside an operation's typed domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { distillation, cultivation, code_switching };

inline constexpr std::array<Family, 3> kFamilies = {
    Family::distillation, Family::cultivation, Family::code_switching};

/// Where a numeric field's value came from. Ordered from least to most
/// derived; `missing` sorts first so that max() picks the most derived tag.
enum class Provenance { missing, table, figure_digitized, reconstructed };

enum class NumericField { epsilon_out, v_single, v_expected, p_succ, q_peak, latency };

inline constexpr std::size_t kNumericFieldCount = 6;
inline constexpr std::array<NumericField, kNumericFieldCount> kNumericFields = {
    NumericField::epsilon_out, NumericField::v_single, NumericField::v_expected,
    NumericField::p_succ,      NumericField::q_peak,   NumericField::latency};

/// Quantities that compatible() can compare across records.
enum class Quantity { cost, footprint, time, error };

std::string_view to_string(Family f);
std::string_view to_string(Provenance p);
std::string_view to_string(NumericField f);
std::string_view to_string(Quantity q);

std::optional<Family> parse_family(std::string_view s);
std::optional<Provenance> parse_provenance(std::string_view s);
std::optional<NumericField> parse_numeric_field(std::string_view s);
/// Throws DomainError on an unknown name.
Quantity parse_quantity(std::string_view s);

/// Reporting-completeness checklist. Each item is all-or-nothing.
struct Completeness {
  bool error_model = false;
  bool code_family = false;
  bool decoder_convention = false;
  bool postselection_rule = false;
  bool footprint = false;
  bool latency = false;
  bool cost_interpretability = false;
  bool output_error_definition = false;

  static constexpr std::size_t kItems = 8;
  static const std::array<std::string_view, kItems>& names();
  std::array<bool, kItems> items() const;
  bool& item(std::size_t i);

  friend bool operator==(const Completeness&, const Completeness&) = default;
};

/// One reported protocol configuration, kept in the units its source used.
struct ProtocolRecord {
  std::string id;
  Family family = Family::distillation;
  std::string source;

  std::optional<double> epsilon_out;
  std::optional<std::string> epsilon_def;
  std::optional<double> v_single;
  std::optional<double> v_expected;
  std::optional<double> p_succ;
  std::optional<double> q_peak;
  std::optional<double> latency;

  std::optional<std::string> cost_unit;
  std::optional<std::string> footprint_unit;
  std::optional<std::string> time_unit;

  std::array<Provenance, kNumericFieldCount> provenance{
      Provenance::missing, Provenance::missing, Provenance::missing,
      Provenance::missing, Provenance::missing, Provenance::missing};

  Completeness completeness;

  std::optional<double>& value(NumericField f);
  const std::optional<double>& value(NumericField f) const;
  Provenance& provenance_of(NumericField f) {
    return provenance[static_cast<std::size_t>(f)];
  }
  Provenance provenance_of(NumericField f) const {
    return provenance[static_cast<std::size_t>(f)];
  }

  friend bool operator==(const ProtocolRecord&, const ProtocolRecord&) = default;
};

/// True iff both records carry `q` and their unit labels are byte-identical.
/// For `error` the epsilon_def strings must match (or both be absent).
bool compatible(const ProtocolRecord& a, const ProtocolRecord& b, Quantity q);
bool compatible(const ProtocolRecord& a, const ProtocolRecord& b, std::string_view field);

/// Unweighted fraction of checklist items that are satisfied.
double completeness_score(const ProtocolRecord& r);

}  // namespace tprep
