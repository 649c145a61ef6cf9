#include "tprep/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "tprep/dataset.hpp"

namespace tprep {

namespace fs = std::filesystem;

MissingRecordsError::MissingRecordsError(std::vector<std::string> ids)
    : std::runtime_error([&] {
        std::string msg = "dataset is missing representative record(s):";
        for (const auto& id : ids) msg += " " + id;
        return msg;
      }()),
      ids_(std::move(ids)) {}

void RunConfig::validate() const {
  if (!(s_min >= 0.0 && s_min < 1.0)) throw DomainError("--smin must lie in [0, 1)");
  if (!(eta_t > 0.0 && eta_t < 1.0)) throw DomainError("--eta must lie in (0, 1)");
  if (n < 2) throw DomainError("--n must be at least 2");
  if (c_t_list.empty()) throw DomainError("at least one --ct value is required");
  for (double c : c_t_list)
    if (!(std::isfinite(c) && c > 0.0)) throw DomainError("--ct values must be positive");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  auto paths = [](const std::vector<fs::path>& ps) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& p : ps) a.push_back(p.generic_string());
    return a;
  };
  j["data"] = paths(dataset_paths);
  j["supplementary"] = paths(supplementary_paths);
  j["strict"] = strict;
  j["smin"] = s_min;
  j["eta"] = eta_t;
  j["ct"] = c_t_list;
  j["n"] = n;
  j["seed"] = seed;
  j["format"] = format == OutputFormat::csv ? "csv" : "json";
  return j;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, std::string>) return csv_escape(v);
        else if constexpr (std::is_same_v<T, double>) return format_real(v);
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else return v ? "true" : "false";
      },
      c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else return v;
      },
      c);
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }
Cell opt_cell(const std::optional<std::string>& v) { return v ? Cell{*v} : Cell{}; }

std::string ct_label(double c) { return "n_max_ct" + format_real(c); }

std::string most_derived(std::initializer_list<Provenance> ps) {
  Provenance best = Provenance::missing;
  for (Provenance p : ps) best = std::max(best, p);
  return std::string(to_string(best));
}

}  // namespace

std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json render_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = cell_json(t.rows[r][i]);
    if (r < t.row_provenance.size() && !obj.contains("provenance"))
      obj["provenance"] = t.row_provenance[r];
    arr.push_back(std::move(obj));
  }
  return arr;
}

fs::path write_table(const Table& t, const RunConfig& cfg, const std::string& command) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw DatasetError(DatasetError::Kind::io, "cannot create output directory '" +
                                                         cfg.output_dir.string() + "': " + ec.message());

  const bool csv = cfg.format == OutputFormat::csv;
  const fs::path data_path = cfg.output_dir / (t.name + (csv ? ".csv" : ".json"));
  const fs::path meta_path = cfg.output_dir / (t.name + ".meta.json");

  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw DatasetError(DatasetError::Kind::io, "cannot write '" + p.string() + "'");
  };
  write(data_path, csv ? render_csv(t) : render_json(t).dump(2) + "\n");

  nlohmann::ordered_json meta;
  meta["generated_by"] = "tprep";
  meta["command"] = command;
  meta["table"] = t.name;
  meta["config"] = cfg.to_json();
  meta["columns"] = t.columns;
  meta["row_provenance"] = t.row_provenance;
  write(meta_path, meta.dump(2) + "\n");
  return data_path;
}

Table map_table(const RegimeMap& map) {
  Table t;
  t.name = "map";
  t.columns = {"record_id", "family", "epsilon_out", "v_expected", "cost_unit", "on_frontier"};
  for (const auto& p : map.points) {
    t.rows.push_back({p.record_id, std::string(to_string(p.family)), p.epsilon_out, p.v_expected,
                      p.cost_unit, p.on_frontier});
    t.row_provenance.emplace_back(to_string(p.provenance));
  }
  return t;
}

Table radar_table(std::span<const SpokeScore> spokes, std::span<const ProtocolRecord> records) {
  Table t;
  t.name = "radar";
  t.columns = {"family", "field", "score", "n_rows"};
  for (const auto& s : spokes) {
    t.rows.push_back({std::string(to_string(s.family)), std::string(to_string(s.field)), s.score,
                      static_cast<std::int64_t>(s.n_rows)});
    // Completeness comes from the checklist, not from a provenance-tagged value.
    Provenance best = Provenance::missing;
    std::string tag;
    if (s.field == SpokeField::completeness) {
      tag = s.n_rows ? "checklist" : "missing";
    } else {
      for (const auto& raw : records) {
        if (raw.family != s.family) continue;
        const ProtocolRecord r = fill_record(raw);
        NumericField f = NumericField::epsilon_out;
        switch (s.field) {
          case SpokeField::v_single: f = NumericField::v_single; break;
          case SpokeField::v_expected: f = NumericField::v_expected; break;
          case SpokeField::q_peak: f = NumericField::q_peak; break;
          case SpokeField::latency: f = NumericField::latency; break;
          default: break;
        }
        if (r.value(f)) best = std::max(best, r.provenance_of(f));
      }
      tag = to_string(best);
    }
    t.row_provenance.push_back(tag);
  }
  return t;
}

Table table1(const RunConfig& cfg) {
  cfg.validate();
  Table t;
  t.name = "table1";
  t.columns = {"quantity", "n", "c_t", "eta_t", "value", "unit"};
  const auto n = cfg.n;
  auto row = [&](const char* q, Cell ct, Cell eta, double v, const char* unit) {
    t.rows.push_back({std::string(q), n, std::move(ct), std::move(eta), v, std::string(unit)});
    t.row_provenance.emplace_back("formula");
  };
  row("q_data", {}, {}, q_data(n), kDataQubitUnit);
  row("n_tof", {}, {}, n_tof(n), "Toffoli gates");
  for (double c : cfg.c_t_list) row("n_t", c, {}, n_t(n, c), "T states");
  for (double c : cfg.c_t_list)
    row("per_t_target", c, cfg.eta_t, budget_check(1.0, {n, c, cfg.eta_t}).per_t_target,
        "dimensionless");
  row("l_meas", {}, {}, l_meas(n), "measurement steps");
  return t;
}

namespace {

const ProtocolRecord* find_record(std::span<const ProtocolRecord> records, const std::string& id) {
  for (const auto& r : records)
    if (r.id == id) return &r;
  return nullptr;
}

}  // namespace

Table table2(std::span<const ProtocolRecord> records, const RunConfig& cfg) {
  cfg.validate();
  std::vector<std::string> missing;
  std::vector<const ProtocolRecord*> reps;
  for (const char* id : kRepresentativeIds) {
    const ProtocolRecord* r = find_record(records, id);
    if (!r || !r->epsilon_out) missing.emplace_back(id);
    reps.push_back(r);
  }
  if (!missing.empty()) throw MissingRecordsError(missing);

  Table t;
  t.name = "table2";
  t.columns = {"record_id", "family", "epsilon_out", "q_peak", "footprint_unit", "latency", "time_unit"};
  for (double c : cfg.c_t_list) t.columns.push_back(ct_label(c));

  for (const ProtocolRecord* r : reps) {
    std::vector<Cell> row{r->id,        std::string(to_string(r->family)), *r->epsilon_out,
                          opt_cell(r->q_peak), opt_cell(r->footprint_unit),
                          opt_cell(r->latency), opt_cell(r->time_unit)};
    for (double c : cfg.c_t_list) {
      auto reach = n_max(*r->epsilon_out, c, cfg.eta_t);
      row.push_back(reach ? Cell{*reach} : Cell{});
    }
    t.rows.push_back(std::move(row));
    t.row_provenance.push_back(most_derived({r->provenance_of(NumericField::epsilon_out),
                                             r->provenance_of(NumericField::q_peak),
                                             r->provenance_of(NumericField::latency)}));
  }
  return t;
}

Table budget_table(const std::vector<const ProtocolRecord*>& records,
                   const std::vector<double>& epsilons, const RunConfig& cfg) {
  cfg.validate();
  Table t;
  t.name = "budget";
  t.columns = {"record_id",   "epsilon_out", "n",          "c_t",       "eta_t",
               "n_t",         "per_t_target", "ratio",     "feasible",  "n_max",
               "serial_cost", "cost_unit",    "q_total_m1", "q_total_unit", "mixed_unit"};

  auto emit = [&](const std::string& id, double eps, const ProtocolRecord* r, double c) {
    const BudgetReport rep = budget_check(eps, {cfg.n, c, cfg.eta_t});
    const auto reach = n_max(eps, c, cfg.eta_t);
    std::vector<Cell> row{id,        eps,       cfg.n,    c, cfg.eta_t, rep.n_t, rep.per_t_target,
                          rep.ratio, rep.feasible, reach ? Cell{*reach} : Cell{}};
    std::string prov = "input";
    if (r) {
      const ProtocolRecord filled = fill_record(*r);
      if (filled.v_expected && filled.cost_unit) {
        const auto cost = serial_cost(cfg.n, c, filled);
        row.push_back(cost.value);
        row.push_back(cost.unit);
      } else {
        row.insert(row.end(), {Cell{}, Cell{}});
      }
      if (filled.q_peak && filled.footprint_unit) {
        const auto q = total_qubits(cfg.n, 1, filled);
        row.push_back(q.value);
        row.push_back(q.unit);
        row.push_back(q.mixed_unit);
      } else {
        row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
      }
      prov = most_derived({filled.provenance_of(NumericField::epsilon_out),
                           filled.v_expected ? filled.provenance_of(NumericField::v_expected)
                                             : Provenance::missing});
    } else {
      row.insert(row.end(), {Cell{}, Cell{}, Cell{}, Cell{}, Cell{}});
    }
    t.rows.push_back(std::move(row));
    t.row_provenance.push_back(prov);
  };

  for (const ProtocolRecord* r : records) {
    if (!r->epsilon_out) throw DomainError("record '" + r->id + "' has no epsilon_out");
    for (double c : cfg.c_t_list) emit(r->id, *r->epsilon_out, r, c);
  }
  for (double eps : epsilons)
    for (double c : cfg.c_t_list) emit("", eps, nullptr, c);
  return t;
}

Table reconstruct_table(std::span<const ProtocolRecord> originals) {
  Table t;
  t.name = "reconstructed";
  t.columns = {"record_id", "family",     "v_single",            "v_expected",
               "p_succ",    "cost_unit",  "v_single_provenance", "v_expected_provenance", "filled"};
  for (const auto& orig : originals) {
    const ProtocolRecord r = fill_record(orig);
    std::string filled;
    if (!orig.v_single && r.v_single) filled = "v_single";
    if (!orig.v_expected && r.v_expected) filled = "v_expected";
    t.rows.push_back({r.id, std::string(to_string(r.family)), opt_cell(r.v_single),
                      opt_cell(r.v_expected), opt_cell(r.p_succ), opt_cell(r.cost_unit),
                      std::string(to_string(r.provenance_of(NumericField::v_single))),
                      std::string(to_string(r.provenance_of(NumericField::v_expected))),
                      filled.empty() ? Cell{} : Cell{filled}});
    t.row_provenance.push_back(most_derived({r.provenance_of(NumericField::v_single),
                                             r.provenance_of(NumericField::v_expected),
                                             r.provenance_of(NumericField::p_succ)}));
  }
  return t;
}

Table simcheck_table(std::span<const SimcheckInput> inputs, std::uint64_t trials, std::uint64_t seed) {
  Table t;
  t.name = "simcheck";
  t.columns = {"record_id", "v_single", "p_succ",        "trials",    "seed",
               "mean_cost", "std_error", "mean_attempts", "analytic_v_expected",
               "z_score",   "cost_unit"};
  for (const auto& in : inputs) {
    const RestartStats s = simulate_restarts(in.v_single, in.p_succ, trials, seed);
    const double analytic = reconstruct_expected(in.v_single, in.p_succ);
    const double z = s.std_error > 0.0 ? (s.mean_cost - analytic) / s.std_error : 0.0;
    t.rows.push_back({in.record_id, in.v_single, in.p_succ, static_cast<std::int64_t>(trials),
                      std::to_string(seed), s.mean_cost, s.std_error, s.mean_attempts, analytic, z,
                      in.cost_unit});
    t.row_provenance.push_back(in.provenance);
  }
  return t;
}

}  // namespace tprep
