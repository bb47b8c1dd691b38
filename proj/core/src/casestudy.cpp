#include "hiproof/casestudy.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "hiproof/json_io.hpp"

namespace hiproof::casestudy {

namespace {

constexpr std::array<const char*, 5> kColumns{"name", "W", "L", "H", "alpha_deg"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Comma-separated fields; double quotes may wrap a field and "" escapes a quote.
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"' && trim(current).empty()) {
      current.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current += c;
    }
  }
  if (quoted) throw RecordError(ErrorCode::parse_error, "", line_no, fmt::format("line {}: unterminated quote", line_no));
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

double parse_number(std::string_view text, const char* column, std::size_t line_no) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw RecordError(ErrorCode::parse_error, column, line_no,
                      fmt::format("line {}: column {}: '{}' is not a number", line_no, column, text));
  }
  return value;
}

void validate_record(const CaseStudyRecord& rec, std::size_t line_no) {
  const auto reject = [&](const char* field, double value, const char* rule) {
    throw RecordError(ErrorCode::invalid_record, field, line_no,
                      fmt::format("line {}: field {} = {} violates {}", line_no, field, value, rule));
  };
  if (!std::isfinite(rec.width) || rec.width <= 0.0) reject("W", rec.width, "W > 0");
  if (!std::isfinite(rec.length) || rec.length <= 0.0) reject("L", rec.length, "L > 0");
  if (!std::isfinite(rec.height) || rec.height <= 0.0) reject("H", rec.height, "H > 0");
  const double alpha = deg_to_rad(rec.alpha_deg);
  if (!std::isfinite(rec.alpha_deg) || alpha <= kAlphaEpsilon || alpha >= std::numbers::pi / 2.0 - kAlphaEpsilon) {
    reject("alpha_deg", rec.alpha_deg, "0 < alpha_deg < 90");
  }
}

std::vector<CaseStudyRecord> parse_csv(std::istream& in) {
  std::vector<CaseStudyRecord> out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::array<std::size_t, kColumns.size()>> index;
  std::size_t header_width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line, line_no);
    if (!index) {
      std::array<std::size_t, kColumns.size()> idx{};
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        const auto it = std::find(fields.begin(), fields.end(), kColumns[c]);
        if (it == fields.end()) {
          throw RecordError(ErrorCode::parse_error, kColumns[c], line_no,
                            fmt::format("line {}: header is missing column {}", line_no, kColumns[c]));
        }
        idx[c] = static_cast<std::size_t>(it - fields.begin());
      }
      index = idx;
      header_width = fields.size();
      continue;
    }
    if (fields.size() != header_width) {
      throw RecordError(ErrorCode::parse_error, "", line_no,
                        fmt::format("line {}: expected {} fields, found {}", line_no, header_width, fields.size()));
    }
    const auto& idx = *index;
    CaseStudyRecord rec;
    rec.name = fields[idx[0]];
    rec.width = parse_number(fields[idx[1]], "W", line_no);
    rec.length = parse_number(fields[idx[2]], "L", line_no);
    rec.height = parse_number(fields[idx[3]], "H", line_no);
    rec.alpha_deg = parse_number(fields[idx[4]], "alpha_deg", line_no);
    validate_record(rec, line_no);
    out.push_back(std::move(rec));
  }
  if (!index) throw RecordError(ErrorCode::parse_error, "", 1, "line 1: missing CSV header name,W,L,H,alpha_deg");
  return out;
}

std::vector<CaseStudyRecord> parse_json(std::istream& in) {
  io::Json doc;
  try {
    doc = io::Json::parse(in);
  } catch (const io::Json::parse_error& e) {
    throw RecordError(ErrorCode::parse_error, "", 0, fmt::format("malformed JSON: {}", e.what()));
  }
  if (!doc.is_array()) throw RecordError(ErrorCode::parse_error, "", 0, "record JSON must be an array");
  std::vector<CaseStudyRecord> out;
  std::size_t n = 0;
  for (const auto& item : doc) {
    ++n;
    if (!item.is_object()) {
      throw RecordError(ErrorCode::parse_error, "", n, fmt::format("record {}: not an object", n));
    }
    CaseStudyRecord rec;
    const auto name = item.find("name");
    if (name == item.end() || !name->is_string()) {
      throw RecordError(ErrorCode::parse_error, "name", n, fmt::format("record {}: column name must be a string", n));
    }
    rec.name = name->get<std::string>();
    auto number = [&](const char* key) {
      const auto it = item.find(key);
      if (it == item.end() || !it->is_number()) {
        throw RecordError(ErrorCode::parse_error, key, n, fmt::format("record {}: column {} must be a number", n, key));
      }
      return it->get<double>();
    };
    rec.width = number("W");
    rec.length = number("L");
    rec.height = number("H");
    rec.alpha_deg = number("alpha_deg");
    validate_record(rec, n);
    out.push_back(std::move(rec));
  }
  return out;
}

// --- rendering -------------------------------------------------------------

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

io::Json row_to_json(const AuditRow& row) {
  io::Json real;
  real["W"] = row.real.width;
  real["L"] = row.real.length;
  real["H"] = row.real.height;
  real["alpha_deg"] = row.real.alpha_deg;
  real["V"] = row.real.envelope.volume;
  real["F"] = row.real.envelope.floor_area;
  real["S"] = row.real.envelope.surface;
  real["r"] = row.real.ratios.r;
  real["k"] = row.real.ratios.k;

  io::Json j;
  j["house"] = row.house;
  j["scenario"] = std::string(to_string(row.scenario));
  j["real"] = std::move(real);
  j["optimal"] = io::to_json(row.optimal);
  j["ratio"] = row.ratio;
  j["surplus"] = row.surplus;
  return j;
}

std::string render_table(std::span<const AuditRow> rows, int precision) {
  std::vector<Scenario> order;
  for (const auto& row : rows) {
    if (std::find(order.begin(), order.end(), row.scenario) == order.end()) order.push_back(row.scenario);
  }

  std::string out;
  for (Scenario scenario : order) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"house", "W", "L", "H", "alpha", std::string(fixed_label(scenario)), "S", "W_min", "L_min",
                     "H_min", "S_min", "S/S_min", "S-S_min"});
    const auto num = [precision](double v) { return fmt::format("{:.{}f}", v, precision); };
    for (const auto& row : rows) {
      if (row.scenario != scenario) continue;
      cells.push_back({row.house, num(row.real.width), num(row.real.length), num(row.real.height),
                       num(row.real.alpha_deg), num(fixed_value(row)), num(row.real.envelope.surface),
                       num(row.optimal.width), num(row.optimal.length), num(row.optimal.height),
                       num(row.optimal.surface), num(row.ratio), num(row.surplus)});
    }
    std::vector<std::size_t> widths(cells.front().size(), 0);
    for (const auto& line : cells) {
      for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
    }
    if (!out.empty()) out += '\n';
    out += fmt::format("Scenario: {}\n", to_string(scenario));
    for (const auto& line : cells) {
      std::string text;
      for (std::size_t c = 0; c < line.size(); ++c) {
        if (c == 0) {
          text += fmt::format("{:<{}}", line[c], widths[c]);
        } else {
          text += fmt::format("  {:>{}}", line[c], widths[c]);
        }
      }
      out += text;
      out += '\n';
    }
  }
  return out;
}

std::string render_csv(std::span<const AuditRow> rows) {
  std::string out = "house,scenario,W,L,H,alpha_deg,fixed,fixed_value,S,W_min,L_min,H_min,S_min,ratio,surplus\n";
  for (const auto& row : rows) {
    const std::vector<double> numbers{row.real.width,        row.real.length,       row.real.height,
                                      row.real.alpha_deg,    fixed_value(row),      row.real.envelope.surface,
                                      row.optimal.width,     row.optimal.length,    row.optimal.height,
                                      row.optimal.surface,   row.ratio,             row.surplus};
    out += csv_escape(row.house);
    out += ',';
    out += to_string(row.scenario);
    for (std::size_t i = 0; i < numbers.size(); ++i) {
      out += ',';
      if (i == 4) {
        out += fixed_label(row.scenario);
        out += ',';
      }
      out += io::format_number(numbers[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::vector<CaseStudyRecord> parse_records(std::istream& in, RecordFormat format) {
  return format == RecordFormat::csv ? parse_csv(in) : parse_json(in);
}

OptimalDesign reference_optimum(const HouseParams& house, Scenario scenario) {
  validate(house);
  const double v = volume(house);
  const AspectRatios ratios = ratios_of(house);
  switch (scenario) {
    case Scenario::fixed_volume: return optimize_fixed_volume(v, house.alpha);
    case Scenario::fixed_r: return optimize_fixed_r(v, house.alpha, ratios.r);
    case Scenario::fixed_k: return optimize_fixed_k(v, house.alpha, ratios.k);
    case Scenario::fixed_floor: return optimize_fixed_floor(floor_area(house), house.height, house.alpha);
    case Scenario::height_range: break;
  }
  throw DomainError(ErrorCode::unknown_scenario, "scenario",
                    "height-range needs a height interval and cannot serve as a reference optimum");
}

std::string_view fixed_label(Scenario scenario) {
  switch (scenario) {
    case Scenario::fixed_volume: return "V";
    case Scenario::fixed_r: return "r";
    case Scenario::fixed_k: return "k";
    case Scenario::fixed_floor: return "F";
    case Scenario::height_range: return "V";
  }
  return "?";
}

double fixed_value(const AuditRow& row) {
  switch (row.scenario) {
    case Scenario::fixed_r: return row.real.ratios.r;
    case Scenario::fixed_k: return row.real.ratios.k;
    case Scenario::fixed_floor: return row.real.envelope.floor_area;
    default: return row.real.envelope.volume;
  }
}

AuditRow audit(const CaseStudyRecord& record, Scenario scenario) {
  const HouseParams house = record.house();
  AuditRow row;
  row.house = record.name;
  row.scenario = scenario;
  row.real = {record.width, record.length, record.height, record.alpha_deg, envelope(house), ratios_of(house)};
  row.optimal = reference_optimum(house, scenario);
  const CompactnessReport score = compactness(house, row.optimal.surface);
  row.ratio = score.ratio;
  row.surplus = score.surplus;
  return row;
}

std::vector<AuditRow> audit(const CaseStudyRecord& record) {
  std::vector<AuditRow> rows;
  for (Scenario s : kAuditScenarios) rows.push_back(audit(record, s));
  return rows;
}

std::string render_report(std::span<const AuditRow> rows, ReportFormat format, int precision) {
  if (rows.empty()) throw DomainError(ErrorCode::invalid_request, "rows", "cannot render an empty report");
  switch (format) {
    case ReportFormat::table: return render_table(rows, precision);
    case ReportFormat::csv: return render_csv(rows);
    case ReportFormat::json: {
      io::Json doc = io::Json::array();
      for (const auto& row : rows) doc.push_back(row_to_json(row));
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::vector<AuditRow> parse_report_json(std::string_view text) {
  io::Json doc;
  try {
    doc = io::Json::parse(text);
  } catch (const io::Json::parse_error& e) {
    throw DomainError(ErrorCode::parse_error, "", fmt::format("malformed report JSON: {}", e.what()));
  }
  if (!doc.is_array()) throw DomainError(ErrorCode::parse_error, "", "report JSON must be an array");
  std::vector<AuditRow> rows;
  try {
    for (const auto& j : doc) {
      AuditRow row;
      row.house = j.at("house").get<std::string>();
      const auto scenario = scenario_from_string(j.at("scenario").get<std::string>());
      if (!scenario) throw DomainError(ErrorCode::unknown_scenario, "scenario", "unknown scenario in report");
      row.scenario = *scenario;
      const auto& real = j.at("real");
      row.real.width = real.at("W").get<double>();
      row.real.length = real.at("L").get<double>();
      row.real.height = real.at("H").get<double>();
      row.real.alpha_deg = real.at("alpha_deg").get<double>();
      row.real.envelope.volume = real.at("V").get<double>();
      row.real.envelope.floor_area = real.at("F").get<double>();
      row.real.envelope.surface = real.at("S").get<double>();
      row.real.ratios.r = real.at("r").get<double>();
      row.real.ratios.k = real.at("k").get<double>();
      row.optimal = io::design_from_json(j.at("optimal"));
      row.ratio = j.at("ratio").get<double>();
      row.surplus = j.at("surplus").get<double>();
      rows.push_back(std::move(row));
    }
  } catch (const io::Json::exception& e) {
    throw DomainError(ErrorCode::parse_error, "", fmt::format("report JSON does not match the schema: {}", e.what()));
  }
  return rows;
}

}  // namespace hiproof::casestudy
