#pragma once

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hiproof/geometry.hpp"
#include "hiproof/optimizers.hpp"

namespace hiproof::casestudy {

/// One measured house. CSV columns: name,W,L,H,alpha_deg.
struct CaseStudyRecord {
  std::string name;
  double width = 0.0;
  double length = 0.0;
  double height = 0.0;
  double alpha_deg = 0.0;

  HouseParams house() const { return {width, length, height, deg_to_rad(alpha_deg)}; }
};

enum class RecordFormat { csv, json };

/// Throws RecordError carrying the line (CSV) or 1-based record index (JSON).
std::vector<CaseStudyRecord> parse_records(std::istream& in, RecordFormat format);

/// Scenarios used by the audit: the four that need no extra design input.
inline constexpr Scenario kAuditScenarios[] = {Scenario::fixed_volume, Scenario::fixed_r, Scenario::fixed_k,
                                                Scenario::fixed_floor};

/// The optimum the house is measured against under `scenario`:
/// fixed-volume keeps V, fixed-r keeps L/W, fixed-k keeps H/W,
/// fixed-floor keeps W L and H. height-range is rejected.
OptimalDesign reference_optimum(const HouseParams& house, Scenario scenario);

struct RealParameters {
  double width = 0.0;
  double length = 0.0;
  double height = 0.0;
  double alpha_deg = 0.0;
  EnvelopeQuantities envelope;
  AspectRatios ratios;
};

struct AuditRow {
  std::string house;
  Scenario scenario = Scenario::fixed_volume;
  RealParameters real;
  OptimalDesign optimal;
  double ratio = 0.0;
  double surplus = 0.0;
};

/// Quantity held fixed in the row's scenario and its column label (V, r, k, F).
std::string_view fixed_label(Scenario scenario);
double fixed_value(const AuditRow& row);

AuditRow audit(const CaseStudyRecord& record, Scenario scenario);
std::vector<AuditRow> audit(const CaseStudyRecord& record);

enum class ReportFormat { table, json, csv };

/// Columns: real W, L, H, alpha, V|r|k|F, S; optimal W_min, L_min, H_min,
/// S_min; S/S_min and S - S_min. `precision` applies to table mode only.
std::string render_report(std::span<const AuditRow> rows, ReportFormat format, int precision = 2);

/// Inverse of the JSON report.
std::vector<AuditRow> parse_report_json(std::string_view text);

}  // namespace hiproof::casestudy
