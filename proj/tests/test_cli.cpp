#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tprep/cli.hpp"
#include "tprep/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tprep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tprep::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& tag) {
  auto p = fs::temp_directory_path() / ("tprep-cli-" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

const std::string kCore = std::string(TPREP_DATA_DIR) + "/core.json";

}  // namespace

TEST_CASE("validate on the bundled data succeeds") {
  const auto r = run({"--strict", "--data", kCore, "validate"});
  CHECK(r.code == tprep::cli::kOk);
  CHECK(r.out.find("0 error(s), 0 warning(s)") != std::string::npos);
}

TEST_CASE("validate flags an inconsistent record with exit 1") {
  const auto dir = scratch("bad");
  const auto path = dir / "bad.json";
  std::ofstream(path) << R"([{"id": "bad", "family": "cultivation", "source": "s",
    "v_single": 100, "v_expected": 150, "p_succ": 0.5, "cost_unit": "qubit-rounds",
    "provenance": {"v_single": "table", "v_expected": "table", "p_succ": "table"}}])";
  const auto r = run({"--data", path.string(), "validate"});
  CHECK(r.code == tprep::cli::kValidationFailure);
  CHECK(r.out.find("eq1-inconsistent") != std::string::npos);
  CHECK(run({"--strict", "--data", path.string(), "--out", dir.string(), "map"}).code ==
        tprep::cli::kValidationFailure);
  fs::remove_all(dir);
}

TEST_CASE("malformed JSON is a validation failure") {
  const auto dir = scratch("malformed");
  std::ofstream(dir / "m.json") << "[{";
  CHECK(run({"--data", (dir / "m.json").string(), "validate"}).code == tprep::cli::kValidationFailure);
  fs::remove_all(dir);
}

TEST_CASE("missing input file exits 2") {
  const auto r = run({"--data", "/nonexistent/x.json", "validate"});
  CHECK(r.code == tprep::cli::kIoFailure);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("configuration errors exit 3") {
  const auto dir = scratch("cfg");
  CHECK(run({"--eta", "1.5", "--out", dir.string(), "tables"}).code == tprep::cli::kConfigError);
  CHECK(run({"--smin", "1", "--out", dir.string(), "radar"}).code == tprep::cli::kConfigError);
  CHECK(run({"--out", dir.string(), "budget", "--record", "no-such-record"}).code == tprep::cli::kConfigError);
  CHECK(run({"--out", dir.string(), "budget"}).code == tprep::cli::kConfigError);
  CHECK(run({"frobnicate"}).code == tprep::cli::kConfigError);
  CHECK(run({"reconstruct", "--v-single", "100"}).code == tprep::cli::kConfigError);
  fs::remove_all(dir);
}

TEST_CASE("reconstruct one-shot mode") {
  auto r = run({"reconstruct", "--v-single", "1300", "--p-succ", "0.65"});
  CHECK(r.code == 0);
  CHECK(r.out == "v_expected=2000\n");
  r = run({"reconstruct", "--v-expected", "200", "--p-succ", "0.5"});
  CHECK(r.out == "v_single=100\n");
  CHECK(run({"reconstruct", "--v-single", "1", "--p-succ", "0"}).code == tprep::cli::kConfigError);
}

TEST_CASE("budget with a free epsilon reports the reach") {
  const auto dir = scratch("budget");
  const auto r = run({"--ct", "4", "--out", dir.string(), "budget", "--epsilon", "1.5e-6"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(slurp(dir / "budget.csv"));
  REQUIRE(rows.size() == 2);
  const auto& header = rows[0];
  const auto at = [&](const char* name) {
    return std::find(header.begin(), header.end(), name) - header.begin();
  };
  CHECK(rows[1][at("n_max")] == "17");
  CHECK(rows[1][at("feasible")] == "false");
  fs::remove_all(dir);
}

TEST_CASE("budget on a record uses its expected cost") {
  const auto dir = scratch("budget-rec");
  const auto r = run({"--ct", "4", "--n", "25", "--out", dir.string(), "budget", "--record", "cult-chen-rp2-msc5-b"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(slurp(dir / "budget.csv"));
  REQUIRE(rows.size() == 2);
  const auto& header = rows[0];
  const auto at = [&](const char* name) {
    return std::find(header.begin(), header.end(), name) - header.begin();
  };
  CHECK(std::stod(rows[1][at("serial_cost")]) == doctest::Approx(1.19e8).epsilon(0.02));
  CHECK(rows[1][at("feasible")] == "true");
  fs::remove_all(dir);
}

TEST_CASE("repeated runs produce byte-identical output") {
  for (const char* cmd : {"map", "radar", "tables", "reconstruct"}) {
    CAPTURE(cmd);
    const auto a = scratch(std::string("a-") + cmd);
    const auto b = scratch(std::string("b-") + cmd);
    REQUIRE(run({"--out", a.string(), cmd}).code == 0);
    REQUIRE(run({"--out", b.string(), cmd}).code == 0);
    for (const auto& e : fs::directory_iterator(a)) {
      const std::string left = slurp(e.path());
      const std::string right = slurp(b / e.path().filename());
      CHECK(left == right);
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST_CASE("simcheck is reproducible for a fixed seed") {
  const auto a = scratch("sim-a");
  const auto args = std::vector<std::string>{"--seed", "7", "--out", a.string(), "simcheck",
                                             "--v-single", "100", "--p-succ", "0.5", "--trials", "20000"};
  const auto first = run(args);
  const auto second = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  fs::remove_all(a);
}

TEST_CASE("radar scores lie within [s_min, 1]") {
  const auto dir = scratch("radar");
  REQUIRE(run({"--out", dir.string(), "radar"}).code == 0);
  const auto rows = csv_rows(slurp(dir / "radar.csv"));
  REQUIRE(rows.size() == 19);
  CHECK(rows[0] == std::vector<std::string>{"family", "field", "score", "n_rows"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double s = std::stod(rows[i][2]);
    CHECK(s >= 0.05);
    CHECK(s <= 1.0);
  }
  fs::remove_all(dir);
}

TEST_CASE("map output covers the deepest distillation row") {
  const auto dir = scratch("map");
  REQUIRE(run({"--format", "json", "--out", dir.string(), "map"}).code == 0);
  const auto j = json::parse(slurp(dir / "map.json"));
  double min_eps = 1;
  std::string min_family;
  for (const auto& p : j)
    if (p["epsilon_out"].get<double>() < min_eps) {
      min_eps = p["epsilon_out"];
      min_family = p["family"];
    }
  CHECK(min_eps == 3.3e-14);
  CHECK(min_family == "distillation");
  fs::remove_all(dir);
}
