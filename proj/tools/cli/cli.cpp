#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hiproof/casestudy.hpp"
#include "hiproof/json_io.hpp"
#include "hiproof/oracle.hpp"
#include "service.hpp"

namespace hiproof::cli {

namespace {

using io::Json;

/// Usage problem detected after CLI11 parsing (missing/conflicting flags).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { table, json, csv };

const std::map<std::string, OutputFormat> kFormats{
    {"table", OutputFormat::table}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}};

struct OutputOptions {
  std::string format_name = "table";
  int precision = 2;
  OutputFormat format() const { return kFormats.at(format_name); }
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--output-format", opts.format_name, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--precision", opts.precision, "Decimal places in table mode")
      ->check(CLI::Range(0, 17))
      ->capture_default_str();
}

std::string fixed(double v, int precision) { return fmt::format("{:.{}f}", v, precision); }

// Two-column "name value" listing.
void print_pairs(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::size_t width = 0;
  for (const auto& [k, v] : pairs) width = std::max(width, k.size());
  for (const auto& [k, v] : pairs) out << fmt::format("{:<{}}  {}\n", k, width, v);
}

void print_csv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::string header;
  std::string values;
  for (const auto& [k, v] : pairs) {
    header += (header.empty() ? "" : ",") + k;
    values += (values.empty() ? "" : ",") + v;
  }
  out << header << '\n' << values << '\n';
}

std::vector<std::pair<std::string, std::string>> design_pairs(const OptimalDesign& d,
                                                              const std::function<std::string(double)>& num) {
  std::vector<std::pair<std::string, std::string>> pairs{
      {"scenario", std::string(to_string(d.scenario))},
      {"w_min", num(d.width)},
      {"l_min", num(d.length)},
      {"h_min", num(d.height)},
      {"s_min", num(d.surface)},
      {"r_min", num(d.r)},
      {"k_min", num(d.k)},
      {"volume", num(d.volume)},
  };
  if (d.kkt) {
    pairs.emplace_back("h_crit", num(d.kkt->h_crit));
    pairs.emplace_back("active", std::string(to_string(d.kkt->active)));
    pairs.emplace_back("mu1", num(d.kkt->mu1));
    pairs.emplace_back("mu2", num(d.kkt->mu2));
  }
  return pairs;
}

void emit_pairs(std::ostream& out, const OutputOptions& opts, const Json& json,
                const std::function<std::vector<std::pair<std::string, std::string>>(
                    const std::function<std::string(double)>&)>& pairs) {
  switch (opts.format()) {
    case OutputFormat::json: out << json.dump(2) << '\n'; break;
    case OutputFormat::table: print_pairs(out, pairs([&](double v) { return fixed(v, opts.precision); })); break;
    case OutputFormat::csv: print_csv(out, pairs([](double v) { return io::format_number(v); })); break;
  }
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  double lo = 0.0;
  double hi = 0.0;
  const auto parse = [&](std::string_view s, double& v) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
  };
  const std::string_view sv(text);
  if (colon == std::string::npos || !parse(sv.substr(0, colon), lo) || !parse(sv.substr(colon + 1), hi)) {
    throw UsageError(fmt::format("{} expects lo:hi (got '{}')", flag, text));
  }
  return {lo, hi};
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  std::size_t n = 0;
  std::size_t m = 0;
  const auto parse = [](std::string_view s, std::size_t& v) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
  };
  const std::string_view sv(text);
  if (x == std::string::npos || !parse(sv.substr(0, x), n) || !parse(sv.substr(x + 1), m)) {
    throw UsageError(fmt::format("--grid expects NxM (got '{}')", text));
  }
  return {n, m};
}

// --- optimize ----------------------------------------------------------------

struct OptimizeArgs {
  std::string scenario;
  std::optional<double> volume, alpha_deg, ratio_r, ratio_k, floor_area, height, hmin, hmax;
  OutputOptions output;
};

ScenarioSpec build_spec(const OptimizeArgs& a) {
  const std::vector<std::pair<const char*, const std::optional<double>*>> flags{
      {"--volume", &a.volume},         {"--alpha-deg", &a.alpha_deg}, {"--ratio-r", &a.ratio_r},
      {"--ratio-k", &a.ratio_k},       {"--floor-area", &a.floor_area}, {"--height", &a.height},
      {"--hmin", &a.hmin},             {"--hmax", &a.hmax}};
  const auto scenario = *scenario_from_string(a.scenario);
  std::vector<const char*> needed;
  switch (scenario) {
    case Scenario::fixed_volume: needed = {"--volume", "--alpha-deg"}; break;
    case Scenario::fixed_r: needed = {"--volume", "--alpha-deg", "--ratio-r"}; break;
    case Scenario::fixed_k: needed = {"--volume", "--alpha-deg", "--ratio-k"}; break;
    case Scenario::fixed_floor: needed = {"--floor-area", "--height", "--alpha-deg"}; break;
    case Scenario::height_range: needed = {"--volume", "--alpha-deg", "--hmin", "--hmax"}; break;
  }
  for (const auto& [flag, value] : flags) {
    const bool wanted = std::any_of(needed.begin(), needed.end(), [&](const char* n) { return n == std::string_view(flag); });
    if (wanted && !value->has_value()) {
      throw UsageError(fmt::format("{} is required for --scenario {}", flag, a.scenario));
    }
    if (!wanted && value->has_value()) {
      throw UsageError(fmt::format("{} does not apply to --scenario {}", flag, a.scenario));
    }
  }
  const double alpha = deg_to_rad(*a.alpha_deg);
  switch (scenario) {
    case Scenario::fixed_volume: return FixedVolume{*a.volume, alpha};
    case Scenario::fixed_r: return FixedFootprintRatio{*a.volume, alpha, *a.ratio_r};
    case Scenario::fixed_k: return FixedSlenderness{*a.volume, alpha, *a.ratio_k};
    case Scenario::fixed_floor: return FixedFloorArea{*a.floor_area, *a.height, alpha};
    case Scenario::height_range: return HeightRange{*a.volume, alpha, *a.hmin, *a.hmax};
  }
  throw UsageError("unknown scenario");
}

void run_optimize(const OptimizeArgs& a, std::ostream& out) {
  const OptimalDesign d = optimize(build_spec(a));
  emit_pairs(out, a.output, io::to_json(d), [&](const auto& num) { return design_pairs(d, num); });
}

// --- score -------------------------------------------------------------------

struct ScoreArgs {
  double width = 0.0, length = 0.0, height = 0.0, alpha_deg = 0.0;
  std::string against = "fixed-volume";
  OutputOptions output;
};

void run_score(const ScoreArgs& a, std::ostream& out) {
  const HouseParams house{a.width, a.length, a.height, deg_to_rad(a.alpha_deg)};
  check_limits(house);
  const OptimalDesign ref = casestudy::reference_optimum(house, *scenario_from_string(a.against));
  const CompactnessReport r = compactness(house, ref.surface);
  emit_pairs(out, a.output, io::to_json(r), [&](const auto& num) {
    return std::vector<std::pair<std::string, std::string>>{
        {"surface", num(r.surface)}, {"min_surface", num(r.min_surface)}, {"ratio", num(r.ratio)},
        {"surplus", num(r.surplus)}};
  });
}

// --- contour -----------------------------------------------------------------

struct ContourArgs {
  double volume = 0.0, alpha_deg = 0.0;
  std::string grid, r_range, k_range;
  unsigned threads = 0;
  OutputOptions output;
};

void run_contour(const ContourArgs& a, std::ostream& out) {
  oracle::GridSpec spec;
  if (!a.grid.empty()) std::tie(spec.n_r, spec.n_k) = parse_grid(a.grid);
  if (!a.r_range.empty()) std::tie(spec.r.lo, spec.r.hi) = parse_range(a.r_range, "--r-range");
  if (!a.k_range.empty()) std::tie(spec.k.lo, spec.k.hi) = parse_range(a.k_range, "--k-range");
  const double alpha = deg_to_rad(a.alpha_deg);
  validate(FixedVolume{a.volume, alpha});
  const oracle::ContourGrid grid = oracle::contour_grid(a.volume, alpha, spec, a.threads);
  switch (a.output.format()) {
    case OutputFormat::json: out << io::to_json(grid).dump() << '\n'; break;
    case OutputFormat::csv: out << io::contour_to_csv(grid); break;
    case OutputFormat::table: {
      const int p = a.output.precision;
      print_pairs(out, {{"grid", fmt::format("{}x{}", spec.n_r, spec.n_k)},
                        {"r_range", fmt::format("{}:{}", fixed(spec.r.lo, p), fixed(spec.r.hi, p))},
                        {"k_range", fmt::format("{}:{}", fixed(spec.k.lo, p), fixed(spec.k.hi, p))},
                        {"min_r", fixed(grid.min_point.r, p)},
                        {"min_k", fixed(grid.min_point.k, p)},
                        {"min_s", fixed(grid.min_point.s, p)}});
      break;
    }
  }
}

// --- audit -------------------------------------------------------------------

struct AuditArgs {
  std::string file;
  std::string input_format;
  OutputOptions output;
};

void run_audit(const AuditArgs& a, std::istream& in, std::ostream& out) {
  std::string format = a.input_format;
  if (format.empty()) {
    format = a.file.size() >= 5 && a.file.substr(a.file.size() - 5) == ".json" ? "json" : "csv";
  }
  const auto record_format = format == "json" ? casestudy::RecordFormat::json : casestudy::RecordFormat::csv;

  std::vector<casestudy::CaseStudyRecord> records;
  if (a.file.empty() || a.file == "-") {
    records = casestudy::parse_records(in, record_format);
  } else {
    std::ifstream file(a.file);
    if (!file) throw UsageError(fmt::format("cannot open {}", a.file));
    records = casestudy::parse_records(file, record_format);
  }
  if (records.empty()) throw DomainError(ErrorCode::invalid_record, "", "input contains no records");

  std::vector<casestudy::AuditRow> rows;
  for (const auto& rec : records) {
    for (auto& row : casestudy::audit(rec)) rows.push_back(std::move(row));
  }
  const auto report_format = a.output.format() == OutputFormat::json  ? casestudy::ReportFormat::json
                             : a.output.format() == OutputFormat::csv ? casestudy::ReportFormat::csv
                                                                    : casestudy::ReportFormat::table;
  out << casestudy::render_report(rows, report_format, a.output.precision);
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  oracle::VerificationOptions options;
  OutputOptions output;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
  const auto results = oracle::verify_closed_forms(a.options);
  bool all = true;
  Json doc = Json::array();
  std::vector<std::vector<std::string>> rows{{"scenario", "samples", "max_gap", "median_gap", "median_gap_refined",
                                              "dominance_failures", "bound_failures", "status"}};
  for (const auto& r : results) {
    all = all && r.passed();
    Json j;
    j["scenario"] = std::string(to_string(r.scenario));
    j["samples"] = r.samples;
    j["max_gap"] = r.max_gap;
    j["median_gap"] = r.median_gap;
    j["median_gap_refined"] = r.median_gap_refined;
    j["dominance_failures"] = r.dominance_failures;
    j["bound_failures"] = r.bound_failures;
    j["passed"] = r.passed();
    doc.push_back(j);
    const auto sci = [](double v) { return fmt::format("{:.3e}", v); };
    rows.push_back({std::string(to_string(r.scenario)), std::to_string(r.samples), sci(r.max_gap), sci(r.median_gap),
                    sci(r.median_gap_refined), std::to_string(r.dominance_failures),
                    std::to_string(r.bound_failures), r.passed() ? "PASS" : "FAIL"});
  }
  switch (a.output.format()) {
    case OutputFormat::json: out << doc.dump(2) << '\n'; break;
    case OutputFormat::csv:
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
        out << '\n';
      }
      break;
    case OutputFormat::table: {
      std::vector<std::size_t> widths(rows.front().size(), 0);
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
      }
      for (const auto& row : rows) {
        std::string line = fmt::format("{:<{}}", row[0], widths[0]);
        for (std::size_t c = 1; c < row.size(); ++c) line += fmt::format("  {:>{}}", row[c], widths[c]);
        out << line << '\n';
      }
      break;
    }
  }
  return all ? kOk : kDomainError;
}

// --- serve -------------------------------------------------------------------

struct ServeArgs {
  int port = 8080;
  std::string host = "0.0.0.0";
  std::string cors_origin = "*";
};

int run_serve(const ServeArgs& a, std::ostream& err) {
  service::ServiceConfig config;
  config.cors_origin = a.cors_origin;
  service::Server server(config);
  const int port = server.bind(a.host, a.port);
  if (port < 0) {
    err << fmt::format("error: cannot bind {}:{}\n", a.host, a.port);
    return kDomainError;
  }
  err << fmt::format("hiproof service listening on {}:{}\n", a.host, port) << std::flush;
  return server.listen_after_bind() ? kOk : kDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hip roof house envelope optimizer", "hiproof"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const std::vector<std::string> scenarios{"fixed-volume", "fixed-r", "fixed-k", "fixed-floor", "height-range"};
  const std::vector<std::string> references{"fixed-volume", "fixed-r", "fixed-k", "fixed-floor"};

  OptimizeArgs opt;
  auto* optimize_cmd = app.add_subcommand("optimize", "Minimal-envelope dimensions for one scenario");
  optimize_cmd->add_option("--scenario", opt.scenario, "Problem to solve")
      ->required()
      ->check(CLI::IsMember(scenarios));
  optimize_cmd->add_option("--volume", opt.volume, "Volume V [m^3]");
  optimize_cmd->add_option("--alpha-deg", opt.alpha_deg, "Roof slope [degrees]");
  optimize_cmd->add_option("--ratio-r", opt.ratio_r, "Footprint ratio r = L/W (fixed-r)");
  optimize_cmd->add_option("--ratio-k", opt.ratio_k, "Slenderness ratio k = H/W (fixed-k)");
  optimize_cmd->add_option("--floor-area", opt.floor_area, "Floor area F = W L [m^2] (fixed-floor)");
  optimize_cmd->add_option("--height", opt.height, "Wall height H [m] (fixed-floor)");
  optimize_cmd->add_option("--hmin", opt.hmin, "Lower height bound a [m] (height-range)");
  optimize_cmd->add_option("--hmax", opt.hmax, "Upper height bound b [m] (height-range)");
  add_output_options(optimize_cmd, opt.output);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Compactness S/S_min of a design");
  score_cmd->add_option("--width", score.width, "Width W [m]")->required();
  score_cmd->add_option("--length", score.length, "Length L [m]")->required();
  score_cmd->add_option("--height", score.height, "Wall height H [m]")->required();
  score_cmd->add_option("--alpha-deg", score.alpha_deg, "Roof slope [degrees]")->required();
  score_cmd->add_option("--against", score.against, "Reference optimum")
      ->check(CLI::IsMember(references))
      ->capture_default_str();
  add_output_options(score_cmd, score.output);

  ContourArgs contour;
  auto* contour_cmd = app.add_subcommand("contour", "Sample S over the (r, k) plane");
  contour_cmd->add_option("--volume", contour.volume, "Volume V [m^3]")->required();
  contour_cmd->add_option("--alpha-deg", contour.alpha_deg, "Roof slope [degrees]")->required();
  contour_cmd->add_option("--grid", contour.grid, "Samples NxM along r and k (default 201x201)");
  contour_cmd->add_option("--r-range", contour.r_range, "r axis lo:hi (default 0.2:5)");
  contour_cmd->add_option("--k-range", contour.k_range, "k axis lo:hi (default 0.1:3)");
  contour_cmd->add_option("--threads", contour.threads, "Worker threads, 0 = all cores")->capture_default_str();
  add_output_options(contour_cmd, contour.output);

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Score measured houses against the fixed-parameter scenarios");
  audit_cmd->add_option("file", audit.file, "Record file (CSV or JSON); stdin when omitted or '-'");
  audit_cmd->add_option("--input-format", audit.input_format, "csv | json (default: from extension, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  add_output_options(audit_cmd, audit.output);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check every closed form against brute-force grid search");
  verify_cmd->add_option("--samples", verify.options.samples, "Random specs per scenario")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.options.seed, "RNG seed")->capture_default_str();
  verify_cmd->add_option("--grid-1d", verify.options.grid_1d, "Samples on 1-D oracle grids")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  verify_cmd->add_option("--grid-2d", verify.options.grid_2d, "Samples per axis on 2-D oracle grids")
      ->check(CLI::Range(std::size_t{2}, std::size_t{5000}))
      ->capture_default_str();
  add_output_options(verify_cmd, verify.output);

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the JSON HTTP service");
  serve_cmd->add_option("--port", serve.port, "TCP port")
      ->envname("HIPROOF_PORT")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--cors-origin", serve.cors_origin, "Access-Control-Allow-Origin value; empty disables CORS")
      ->envname("HIPROOF_CORS_ORIGIN")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (optimize_cmd->parsed()) run_optimize(opt, out);
    if (score_cmd->parsed()) run_score(score, out);
    if (contour_cmd->parsed()) run_contour(contour, out);
    if (audit_cmd->parsed()) run_audit(audit, in, out);
    if (verify_cmd->parsed()) return run_verify(verify, out);
    if (serve_cmd->parsed()) return run_serve(serve, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

}  // namespace hiproof::cli
