#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tprep/family_summary.hpp"
#include "tprep/frontier.hpp"
#include "tprep/reconstruct.hpp"
#include "tprep/record.hpp"
#include "tprep/workload.hpp"

namespace tprep {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::vector<std::filesystem::path> dataset_paths;
  std::vector<std::filesystem::path> supplementary_paths;
  bool strict = false;
  double s_min = kDefaultSMin;
  double eta_t = 1e-2;
  std::vector<double> c_t_list{4.0, 7.0};
  std::int64_t n = 2048;
  std::uint64_t seed = 20260427;
  OutputFormat format = OutputFormat::csv;
  std::filesystem::path output_dir = ".";

  /// Throws DomainError on out-of-range parameters.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

/// Records the representative rows used by the Shor mapping table.
inline constexpr std::array<const char*, 3> kRepresentativeIds = {
    "cs-dk-postselected", "cult-chen-rp2-msc5-b", "dist-litinski-3.3e-14"};

/// Raised when a table needs records the dataset does not contain.
class MissingRecordsError : public std::runtime_error {
 public:
  explicit MissingRecordsError(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

/// Rectangular report. row_provenance holds the most derived provenance tag of
/// the inputs behind each row ("formula" for rows computed from the model alone).
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> row_provenance;
};

/// Shortest decimal text that round-trips to the same double.
std::string format_real(double x);

std::string render_csv(const Table& t);
nlohmann::ordered_json render_json(const Table& t);

/// Writes `<name>.csv|json` plus `<name>.meta.json` (command, config and
/// per-row provenance) under cfg.output_dir. Returns the data file path.
std::filesystem::path write_table(const Table& t, const RunConfig& cfg, const std::string& command);

Table map_table(const RegimeMap& map);
Table radar_table(std::span<const SpokeScore> spokes, std::span<const ProtocolRecord> records);
/// Demand quantities at cfg.n and per-T targets for each configured c_T.
Table table1(const RunConfig& cfg);
/// Representative rows: error, native footprint/latency, and n_max per c_T.
Table table2(std::span<const ProtocolRecord> records, const RunConfig& cfg);
Table budget_table(const std::vector<const ProtocolRecord*>& records,
                   const std::vector<double>& epsilons, const RunConfig& cfg);
Table reconstruct_table(std::span<const ProtocolRecord> originals);

struct SimcheckInput {
  std::string record_id;
  double v_single = 0.0;
  double p_succ = 1.0;
  std::string cost_unit;
  std::string provenance;
};
Table simcheck_table(std::span<const SimcheckInput> inputs, std::uint64_t trials, std::uint64_t seed);

}  // namespace tprep
