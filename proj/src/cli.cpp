#include "tprep/cli.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tprep/dataset.hpp"
#include "tprep/report.hpp"

#ifndef TPREP_DATA_DIR
#define TPREP_DATA_DIR "data"
#endif

namespace tprep::cli {

namespace fs = std::filesystem;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::vector<ProtocolRecord> core;
  std::vector<ProtocolRecord> supplementary;
  std::vector<Diagnostic> diagnostics;

  std::vector<ProtocolRecord> all() const {
    std::vector<ProtocolRecord> v = core;
    v.insert(v.end(), supplementary.begin(), supplementary.end());
    return v;
  }
};

bool is_supplementary_file(const fs::path& p) { return p.stem() == "supplementary"; }

void resolve_paths(RunConfig& cfg) {
  if (cfg.dataset_paths.empty() && cfg.supplementary_paths.empty()) {
    cfg.dataset_paths = {fs::path(TPREP_DATA_DIR) / "core.json"};
    cfg.supplementary_paths = {fs::path(TPREP_DATA_DIR) / "supplementary.json"};
    return;
  }
  std::vector<fs::path> core;
  for (const auto& p : cfg.dataset_paths)
    (is_supplementary_file(p) ? cfg.supplementary_paths : core).push_back(p);
  cfg.dataset_paths = std::move(core);
}

Loaded load_all(const RunConfig& cfg, std::ostream& err) {
  Loaded out;
  auto load_into = [&](const fs::path& p, std::vector<ProtocolRecord>& dst) {
    Dataset ds = load_dataset(p, cfg.strict);
    for (auto& d : ds.diagnostics) out.diagnostics.push_back(std::move(d));
    for (auto& r : ds.records) dst.push_back(std::move(r));
  };
  for (const auto& p : cfg.dataset_paths) load_into(p, out.core);
  for (const auto& p : cfg.supplementary_paths) load_into(p, out.supplementary);

  std::size_t errors = 0;
  for (const auto& d : out.diagnostics)
    if (d.severity == Severity::error) ++errors;
  if (errors) err << "warning: " << errors << " lint error(s) ignored (run `validate` for details)\n";
  return out;
}

void report_written(std::ostream& out, const fs::path& p) { out << "wrote " << p.generic_string() << '\n'; }

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  std::size_t errors = 0;
  std::size_t warnings = 0;
  auto check = [&](const fs::path& p) {
    const Dataset ds = load_dataset(p, false);
    for (const auto& d : ds.diagnostics) {
      out << p.generic_string() << ": " << format_diagnostic(d) << '\n';
      (d.severity == Severity::error ? errors : warnings) += 1;
    }
    out << p.generic_string() << ": " << ds.records.size() << " record(s)\n";
  };
  for (const auto& p : cfg.dataset_paths) check(p);
  for (const auto& p : cfg.supplementary_paths) check(p);
  out << errors << " error(s), " << warnings << " warning(s)\n";
  return errors ? kValidationFailure : kOk;
}

int cmd_reconstruct(const RunConfig& cfg, std::optional<double> v_single,
                    std::optional<double> v_expected, std::optional<double> p_succ,
                    std::ostream& out, std::ostream& err) {
  if (v_single || v_expected) {
    if (!p_succ) throw ConfigError("--p-succ is required with --v-single / --v-expected");
    if (v_single && v_expected) throw ConfigError("give only one of --v-single and --v-expected");
    if (v_single)
      out << "v_expected=" << format_real(reconstruct_expected(*v_single, *p_succ)) << '\n';
    else
      out << "v_single=" << format_real(reconstruct_single(*v_expected, *p_succ)) << '\n';
    return kOk;
  }
  const Loaded data = load_all(cfg, err);
  report_written(out, write_table(reconstruct_table(data.all()), cfg, "reconstruct"));
  return kOk;
}

int cmd_map(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Loaded data = load_all(cfg, err);
  const RegimeMap map = regime_map(data.core, data.supplementary);
  for (const auto& d : map.diagnostics) err << format_diagnostic(d) << '\n';
  report_written(out, write_table(map_table(map), cfg, "map"));
  return kOk;
}

int cmd_radar(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Loaded data = load_all(cfg, err);
  const auto spokes = family_radar(data.core, cfg.s_min);
  report_written(out, write_table(radar_table(spokes, data.core), cfg, "radar"));
  return kOk;
}

int cmd_tables(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Loaded data = load_all(cfg, err);
  const auto all = data.all();
  Table t2 = table2(all, cfg);
  report_written(out, write_table(table1(cfg), cfg, "tables"));
  report_written(out, write_table(t2, cfg, "tables"));
  return kOk;
}

int cmd_budget(const RunConfig& cfg, const std::vector<std::string>& ids,
               const std::vector<double>& epsilons, std::ostream& out, std::ostream& err) {
  if (ids.empty() && epsilons.empty()) throw ConfigError("budget needs --record <id> or --epsilon <value>");
  std::vector<ProtocolRecord> all;
  if (!ids.empty()) all = load_all(cfg, err).all();
  std::vector<const ProtocolRecord*> chosen;
  for (const auto& id : ids) {
    const ProtocolRecord* hit = nullptr;
    for (const auto& r : all)
      if (r.id == id) hit = &r;
    if (!hit) throw ConfigError("unknown record id '" + id + "'");
    chosen.push_back(hit);
  }
  for (double e : epsilons)
    if (!(e > 0.0)) throw ConfigError("--epsilon must be positive");
  const Table t = budget_table(chosen, epsilons, cfg);
  out << render_csv(t);
  report_written(out, write_table(t, cfg, "budget"));
  return kOk;
}

int cmd_simcheck(const RunConfig& cfg, std::optional<double> v_single, std::optional<double> p_succ,
                 std::uint64_t trials, std::ostream& out, std::ostream& err) {
  std::vector<SimcheckInput> inputs;
  if (v_single || p_succ) {
    if (!v_single || !p_succ) throw ConfigError("simcheck needs both --v-single and --p-succ");
    inputs.push_back({"", *v_single, *p_succ, "", "input"});
  } else {
    for (const auto& raw : load_all(cfg, err).all()) {
      const ProtocolRecord r = fill_record(raw);
      if (!r.v_single || !r.p_succ || !r.cost_unit) continue;
      const auto prov = std::max(r.provenance_of(NumericField::v_single),
                                 r.provenance_of(NumericField::p_succ));
      inputs.push_back({r.id, *r.v_single, *r.p_succ, *r.cost_unit, std::string(to_string(prov))});
    }
  }
  if (trials == 0) throw ConfigError("--trials must be at least 1");
  const Table t = simcheck_table(inputs, trials, cfg.seed);
  out << render_csv(t);
  report_written(out, write_table(t, cfg, "simcheck"));
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resource comparison and Shor budget calculator for logical T-state preparation"};
  app.name("tprep");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::vector<std::string> data_paths;
  std::vector<std::string> supp_paths;
  std::vector<double> ct_list;
  std::string format = "csv";
  std::string out_dir = ".";

  app.add_option("--data", data_paths, "Dataset file (repeatable); files named supplementary.json are anchors")
      ->allow_extra_args(false);
  app.add_option("--supplementary", supp_paths, "Supplementary-anchor dataset file (repeatable)")
      ->allow_extra_args(false);
  app.add_flag("--strict", cfg.strict, "Fail on any error-severity lint finding");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", cfg.seed, "Seed for simcheck");
  app.add_option("--smin", cfg.s_min, "Radar floor s_min");
  app.add_option("--eta", cfg.eta_t, "T-budget fraction eta_T");
  app.add_option("--ct", ct_list, "Compilation coefficient c_T (repeatable)")->allow_extra_args(false);
  app.add_option("--n", cfg.n, "RSA modulus size in bits");

  auto* validate = app.add_subcommand("validate", "Lint dataset files");
  auto* reconstruct = app.add_subcommand("reconstruct", "Fill V / V_exp from P_succ");
  auto* map = app.add_subcommand("map", "Export the cost-error regime map");
  auto* radar = app.add_subcommand("radar", "Export family-level radar spokes");
  auto* tables = app.add_subcommand("tables", "Write the Shor demand and representative-mapping tables");
  auto* budget = app.add_subcommand("budget", "Error-budget check, reach and serial cost");
  auto* simcheck = app.add_subcommand("simcheck", "Monte Carlo check of the restart relation");

  std::optional<double> rc_v_single, rc_v_expected, rc_p_succ;
  reconstruct->add_option("--v-single", rc_v_single, "Single-attempt cost V");
  reconstruct->add_option("--v-expected", rc_v_expected, "Expected cost V_exp");
  reconstruct->add_option("--p-succ", rc_p_succ, "Acceptance probability");

  std::vector<std::string> budget_ids;
  std::vector<double> budget_eps;
  budget->add_option("--record", budget_ids, "Record id (repeatable)")->allow_extra_args(false);
  budget->add_option("--epsilon", budget_eps, "Output error (repeatable)")->allow_extra_args(false);

  std::optional<double> sim_v_single, sim_p_succ;
  std::uint64_t trials = 1000000;
  simcheck->add_option("--v-single", sim_v_single, "Single-attempt cost V");
  simcheck->add_option("--p-succ", sim_p_succ, "Acceptance probability");
  simcheck->add_option("--trials", trials, "Number of accepted outputs to simulate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "tprep: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    for (const auto& p : data_paths) cfg.dataset_paths.emplace_back(p);
    for (const auto& p : supp_paths) cfg.supplementary_paths.emplace_back(p);
    if (!ct_list.empty()) cfg.c_t_list = ct_list;
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    cfg.output_dir = out_dir;
    cfg.validate();
    resolve_paths(cfg);

    if (validate->parsed()) return cmd_validate(cfg, out);
    if (reconstruct->parsed())
      return cmd_reconstruct(cfg, rc_v_single, rc_v_expected, rc_p_succ, out, err);
    if (map->parsed()) return cmd_map(cfg, out, err);
    if (radar->parsed()) return cmd_radar(cfg, out, err);
    if (tables->parsed()) return cmd_tables(cfg, out, err);
    if (budget->parsed()) return cmd_budget(cfg, budget_ids, budget_eps, out, err);
    if (simcheck->parsed()) return cmd_simcheck(cfg, sim_v_single, sim_p_succ, trials, out, err);
  } catch (const ConfigError& e) {
    err << "tprep: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "tprep: " << e.what() << '\n';
    return kConfigError;
  } catch (const ValidationError& e) {
    for (const auto& d : e.diagnostics())
      if (d.severity == Severity::error) err << format_diagnostic(d) << '\n';
    err << "tprep: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const MissingRecordsError& e) {
    err << "tprep: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const DatasetError& e) {
    err << "tprep: " << e.what() << '\n';
    return e.kind() == DatasetError::Kind::io ? kIoFailure : kValidationFailure;
  }
  return kConfigError;
}

}  // namespace tprep::cli
