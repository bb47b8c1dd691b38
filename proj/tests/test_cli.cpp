#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "cli/cli.hpp"
#include "hiproof/json_io.hpp"
#include "hiproof/optimizers.hpp"

namespace {

const std::string kSource = HIPROOF_SOURCE_DIR;
const std::string kCases = kSource + "/cases/paper_houses.csv";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& stdin_text = {}) {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = hiproof::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Compares against tests/golden/<name>; HIPROOF_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::vector<std::string>& args) {
  const Result r = run(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string path = kSource + "/tests/golden/" + name;
  if (const char* update = std::getenv("HIPROOF_UPDATE_GOLDEN"); update && std::string(update) == "1") {
    std::ofstream(path, std::ios::binary) << r.out;
  }
  const std::string expected = read_file(path);
  REQUIRE_MESSAGE(!expected.empty(), "missing golden file " << path);
  CHECK_MESSAGE(r.out == expected, "output differs from " << path);
  // Identical invocations give identical bytes.
  CHECK(run(args).out == r.out);
}

}  // namespace

TEST_CASE("help golden files") {
  check_golden("help.txt", {"--help"});
  for (const char* cmd : {"optimize", "score", "contour", "audit", "verify", "serve"}) {
    CAPTURE(cmd);
    check_golden(std::string("help_") + cmd + ".txt", {cmd, "--help"});
  }
}

TEST_CASE("worked example golden files") {
  check_golden("optimize_fixed_volume.txt", {"optimize", "--scenario", "fixed-volume", "--volume", "400", "--alpha-deg", "30"});
  check_golden("optimize_fixed_volume.json",
               {"optimize", "--scenario", "fixed-volume", "--volume", "400", "--alpha-deg", "30", "--output-format", "json"});
  check_golden("optimize_fixed_r.json", {"optimize", "--scenario", "fixed-r", "--volume", "400", "--alpha-deg", "30",
                                         "--ratio-r", "1.5", "--output-format", "json"});
  check_golden("optimize_fixed_k.json", {"optimize", "--scenario", "fixed-k", "--volume", "400", "--alpha-deg", "30",
                                         "--ratio-k", "0.5", "--output-format", "json"});
  check_golden("optimize_fixed_floor.csv", {"optimize", "--scenario", "fixed-floor", "--floor-area", "100", "--height",
                                            "3", "--alpha-deg", "30", "--output-format", "csv"});
  check_golden("optimize_height_range_upper.json", {"optimize", "--scenario", "height-range", "--volume", "400",
                                                    "--alpha-deg", "30", "--hmin", "3", "--hmax", "4", "--output-format", "json"});
  check_golden("optimize_height_range_lower.txt", {"optimize", "--scenario", "height-range", "--volume", "400",
                                                   "--alpha-deg", "30", "--hmin", "6", "--hmax", "7", "--precision", "4"});
  check_golden("score_house_b.txt", {"score", "--width", "9.5", "--length", "16.7", "--height", "2.6", "--alpha-deg", "30"});
  check_golden("score_house_a_fixed_r.json", {"score", "--width", "10.9", "--length", "26.7", "--height", "7.2",
                                              "--alpha-deg", "50", "--against", "fixed-r", "--output-format", "json"});
  check_golden("audit_paper_houses.txt", {"audit", kCases});
  check_golden("audit_paper_houses.csv", {"audit", kCases, "--output-format", "csv"});
  check_golden("audit_paper_houses.json", {"audit", kCases, "--output-format", "json"});
  check_golden("contour_summary.txt", {"contour", "--volume", "400", "--alpha-deg", "30"});
  check_golden("contour_small.csv", {"contour", "--volume", "400", "--alpha-deg", "30", "--grid", "5x4", "--r-range",
                                     "0.5:1.5", "--k-range", "0.3:0.9", "--output-format", "csv"});
  check_golden("contour_small.json", {"contour", "--volume", "400", "--alpha-deg", "30", "--grid", "3x2", "--output-format", "json"});
}

TEST_CASE("optimize output matches the library") {
  const Result r =
      run({"optimize", "--scenario", "fixed-volume", "--volume", "400", "--alpha-deg", "30", "--output-format", "json"});
  REQUIRE(r.code == 0);
  const auto j = hiproof::io::Json::parse(r.out);
  CHECK(std::abs(j.at("s_min").get<double>() - 271.23) <= 0.01);
  CHECK(j.at("w_min").get<double>() == doctest::Approx(8.85).epsilon(1e-3));
  const auto expected = hiproof::optimize_fixed_volume(400, hiproof::deg_to_rad(30));
  CHECK(hiproof::io::design_from_json(j).surface == expected.surface);
}

TEST_CASE("audit of the bundled houses") {
  const Result r = run({"audit", kCases});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  int house_c_rows = 0;
  for (std::string line; std::getline(lines, line);) {
    if (!line.starts_with("House C")) continue;
    ++house_c_rows;
    std::istringstream cells(line.substr(7));
    std::vector<std::string> values;
    for (std::string v; cells >> v;) values.push_back(v);
    REQUIRE(values.size() == 12);
    CHECK(values[10] == "1.00");
  }
  CHECK(house_c_rows == 4);

  // stdin and JSON input.
  const Result from_stdin = run({"audit"}, read_file(kCases));
  CHECK(from_stdin.code == 0);
  CHECK(from_stdin.out == r.out);
  const Result json_in = run({"audit", "-", "--input-format", "json"},
                             R"([{"name": "House C", "W": 12.5, "L": 12.5, "H": 7.9, "alpha_deg": 35}])");
  CHECK(json_in.code == 0);
  CHECK(json_in.out.find("House C") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == hiproof::cli::kUsageError);
  CHECK(run({"bogus"}).code == hiproof::cli::kUsageError);
  CHECK(run({"optimize"}).code == hiproof::cli::kUsageError);
  CHECK(run({"optimize", "--scenario", "gable"}).code == hiproof::cli::kUsageError);

  const Result missing = run({"optimize", "--scenario", "fixed-r", "--volume", "400", "--alpha-deg", "30"});
  CHECK(missing.code == hiproof::cli::kUsageError);
  CHECK(missing.err == "error: --ratio-r is required for --scenario fixed-r\n");
  CHECK(missing.out.empty());

  const Result extra =
      run({"optimize", "--scenario", "fixed-volume", "--volume", "400", "--alpha-deg", "30", "--hmin", "3"});
  CHECK(extra.code == hiproof::cli::kUsageError);
  CHECK(extra.err == "error: --hmin does not apply to --scenario fixed-volume\n");

  const Result domain = run({"optimize", "--scenario", "fixed-volume", "--volume", "-1", "--alpha-deg", "30"});
  CHECK(domain.code == hiproof::cli::kDomainError);
  CHECK(domain.err.starts_with("error: "));
  CHECK(domain.out.empty());

  CHECK(run({"optimize", "--scenario", "height-range", "--volume", "400", "--alpha-deg", "30", "--hmin", "4", "--hmax", "3"}).code ==
        hiproof::cli::kDomainError);
  CHECK(run({"score", "--width", "1", "--length", "1", "--height", "1", "--alpha-deg", "95"}).code ==
        hiproof::cli::kDomainError);
  CHECK(run({"contour", "--volume", "400", "--alpha-deg", "30", "--grid", "1x5"}).code == hiproof::cli::kDomainError);
  CHECK(run({"contour", "--volume", "400", "--alpha-deg", "30", "--grid", "ax5"}).code == hiproof::cli::kUsageError);
  CHECK(run({"contour", "--volume", "400", "--alpha-deg", "30", "--r-range", "1"}).code == hiproof::cli::kUsageError);
  CHECK(run({"audit", kSource + "/does/not/exist.csv"}).code == hiproof::cli::kUsageError);

  const Result bad_record = run({"audit"}, "name,W,L,H,alpha_deg\nX,-1,5,3,30\n");
  CHECK(bad_record.code == hiproof::cli::kDomainError);
  CHECK(bad_record.err.find("line 2") != std::string::npos);
  CHECK(bad_record.err.find("W") != std::string::npos);
  CHECK(run({"audit"}, "name,W,L,H,alpha_deg\n").code == hiproof::cli::kDomainError);
  CHECK(run({"optimize", "--scenario", "fixed-volume", "--volume", "400", "--alpha-deg", "30", "--output-format", "xml"}).code ==
        hiproof::cli::kUsageError);
}

TEST_CASE("verify subcommand") {
  const Result r = run({"verify", "--samples", "10", "--output-format", "json"});
  CHECK(r.code == 0);
  const auto j = hiproof::io::Json::parse(r.out);
  REQUIRE(j.size() == 5);
  for (const auto& row : j) CHECK(row.at("passed") == true);
  CHECK(run({"verify", "--samples", "10", "--output-format", "json"}).out == r.out);
}
