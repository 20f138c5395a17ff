#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "akde/bandwidth.hpp"
#include "akde/estimators.hpp"
#include "akde/kernels.hpp"
#include "akde/samples.hpp"
#include "akde/verify.hpp"

using namespace akde;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("akde_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(AKDE_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  int code = -1;
  if (status != -1 && WIFEXITED(status)) {
    code = WEXITSTATUS(status);
  }
  return {code, slurp(out), slurp(err)};
}

const std::string& fixture_path() {
  static const std::string path = [] {
    const fs::path p = work_dir() / "data.txt";
    write_fixture(p.string());
    return p.string();
  }();
  return path;
}

// data rows of a CSV body: skip '#' meta lines and the header
std::vector<std::vector<std::string>> csv_rows(const std::string& body) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(body);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) {
      fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
      fields.emplace_back();  // getline drops a trailing empty field
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string meta_value(const std::string& body, const std::string& key) {
  std::istringstream in(body);
  std::string line;
  const std::string prefix = "# " + key + "=";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) {
      return line.substr(prefix.size());
    }
  }
  return "";
}

}  // namespace

TEST_CASE("estimate emits exactly the library's numbers") {
  const auto r = run_cli("estimate --input " + fixture_path() +
                         " --kernel gamma --role improper "
                         "--bandwidth fixed:0.3 --grid 0.5:4:7:geo");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 7);
  const auto samples = read_samples_file(fixture_path());
  const DensityEstimate est(
      KernelSpec(KernelFamily::gamma, Role::improper, 0.3), samples);
  const auto grid = geometric_grid(0.5, 4.0, 7);
  const auto expected = est.on_grid(grid);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 2);
    CHECK(std::strtod(rows[i][0].c_str(), nullptr) == grid[i]);
    CHECK(std::strtod(rows[i][1].c_str(), nullptr) == expected[i]);
  }
  CHECK(meta_value(r.out, "bandwidth_mode") == "fixed");
  CHECK(meta_value(r.out, "n") == "300");
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string args = "estimate --input " + fixture_path() +
                           " --bandwidth plugin --grid 0.2:8:33:geo";
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("json output carries the same values") {
  const auto r = run_cli("estimate --input " + fixture_path() +
                         " --bandwidth fixed:0.25 --grid 1:2:5:ari "
                         "--format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("meta"));
  REQUIRE(j.contains("rows"));
  CHECK(j["meta"]["bandwidth_mode"] == "fixed");
  CHECK(j["columns"] == nlohmann::json({"x", "density"}));
  const auto samples = read_samples_file(fixture_path());
  const DensityEstimate est(
      KernelSpec(KernelFamily::gamma, Role::improper, 0.25), samples);
  const auto grid = arithmetic_grid(1.0, 2.0, 5);
  REQUIRE(j["rows"].size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(j["rows"][i][0].get<double>() == grid[i]);
    CHECK(j["rows"][i][1].get<double>() == est(grid[i]));
  }
}

TEST_CASE("plugin bandwidth report matches the library") {
  const auto r = run_cli("bandwidth --input " + fixture_path() +
                         " --bandwidth plugin --kernel gamma --role proper");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1);
  const auto samples = read_samples_file(fixture_path());
  const double star =
      plugin_bandwidth(KernelFamily::gamma, Role::proper, samples);
  CHECK(std::strtod(rows[0][0].c_str(), nullptr) == star);
}

TEST_CASE("cv bandwidth report carries scores and the argmin") {
  const auto r = run_cli("bandwidth --input " + fixture_path() +
                         " --kernel gamma --role proper --grid 0.2:0.6:5:geo");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 5);
  const auto samples = read_samples_file(fixture_path());
  const auto profile = cv_profile(KernelFamily::gamma, Role::proper, samples,
                                  geometric_grid(0.2, 0.6, 5));
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(rows[i].size() == 3);  // sigma, cv_score, asymptotic_mise
    CHECK(std::strtod(rows[i][1].c_str(), nullptr) == profile.cv_score[i]);
  }
  CHECK(std::strtod(meta_value(r.out, "cv_argmin").c_str(), nullptr) ==
        profile.cv_argmin);
  CHECK(!meta_value(r.out, "sigma_plugin").empty());
}

TEST_CASE("malformed input names the offending line") {
  const fs::path bad = work_dir() / "bad.txt";
  {
    std::ofstream out(bad);
    out << "1.0\n2.0\nbogus\n3.0\n";
  }
  const auto r = run_cli("estimate --input " + bad.string() +
                         " --bandwidth fixed:0.3");
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("non-positive observations are a domain problem") {
  const fs::path bad = work_dir() / "negative.txt";
  {
    std::ofstream out(bad);
    out << "1.0\n-2.0\n";
  }
  const auto r = run_cli("estimate --input " + bad.string() +
                         " --bandwidth fixed:0.3");
  CHECK(r.code == 3);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("exit codes separate the failure classes") {
  const fs::path single = work_dir() / "single.txt";
  {
    std::ofstream out(single);
    out << "1.5\n";
  }
  // too few observations for cross-validation
  CHECK(run_cli("estimate --input " + single.string() + " --bandwidth cv")
            .code == 3);
  // no closed-form plugin for the proper inverse gaussian
  CHECK(run_cli("estimate --input " + fixture_path() +
                " --kernel inverse-gaussian --role proper --bandwidth plugin")
            .code == 4);
  // the gaussian baseline has no cross-validation score
  CHECK(run_cli("estimate --input " + fixture_path() +
                " --kernel gaussian --bandwidth cv")
            .code == 4);
  // bad flag values parse-fail
  CHECK(run_cli("estimate --input " + fixture_path() +
                " --bandwidth fixed:-1").code == 2);
  CHECK(run_cli("estimate --input " + fixture_path() +
                " --bandwidth fixed:abc").code == 2);
  CHECK(run_cli("estimate --input " + fixture_path() + " --grid 4:0.5:7")
            .code == 2);
  CHECK(run_cli("estimate --input " + fixture_path() + " --format yaml")
            .code == 2);
  CHECK(run_cli("estimate --no-such-flag").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  // missing input file
  CHECK(run_cli("estimate --input /nonexistent/data.txt --bandwidth fixed:0.3")
            .code == 2);
}

TEST_CASE("simulate emits per-replication records and envelopes") {
  const auto r = run_cli("simulate --kernel gamma --role proper --mu 0.5 "
                         "--Sigma 0.8 --n 30 --reps 2 --seed 4 "
                         "--grid 0.2:0.8:4:geo");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  // 2 reps * 4 sigmas cv rows, 2 argmin, 2 plugin, 3 envelopes * 4 sigmas
  std::size_t cv = 0, argmin = 0, plugin = 0, envelope = 0;
  for (const auto& row : rows) {
    REQUIRE(row.size() == 4);
    if (row[0] == "cv") ++cv;
    if (row[0] == "argmin") ++argmin;
    if (row[0] == "plugin") ++plugin;
    if (row[0] == "q05" || row[0] == "q50" || row[0] == "q95") ++envelope;
  }
  CHECK(cv == 8);
  CHECK(argmin == 2);
  CHECK(plugin == 2);
  CHECK(envelope == 12);
  CHECK(meta_value(r.out, "replications") == "2");
  // deterministic under the same seed
  const auto again = run_cli("simulate --kernel gamma --role proper --mu 0.5 "
                             "--Sigma 0.8 --n 30 --reps 2 --seed 4 "
                             "--grid 0.2:0.8:4:geo");
  CHECK(again.out == r.out);
}

TEST_CASE("verify runs a single criterion and honors the tolerance hook") {
  const auto pass = run_cli("verify --quick --only plugin-formulas");
  CHECK(pass.code == 0);
  CHECK(pass.out.find("[PASS] plugin-formulas") != std::string::npos);
  // microscopic tolerances force the same criterion to fail honestly
  const auto fail = run_cli(
      "verify --quick --only plugin-formulas --tolerance-scale 1e-12");
  CHECK(fail.code == 1);
  CHECK(fail.out.find("[FAIL] plugin-formulas") != std::string::npos);
  // unknown names are rejected
  CHECK(run_cli("verify --only no-such-criterion").code == 2);
}

TEST_CASE("output lands in a file when requested") {
  const fs::path out = work_dir() / "est.csv";
  const auto r = run_cli("estimate --input " + fixture_path() +
                         " --bandwidth fixed:0.3 --grid 1:2:3:ari --out " +
                         out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const std::string body = slurp(out);
  CHECK(csv_rows(body).size() == 3);
}
