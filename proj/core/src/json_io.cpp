#include "hiproof/json_io.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

namespace hiproof::io {

namespace {

[[noreturn]] void bad_request(const std::string& field, const std::string& message) {
  throw DomainError(ErrorCode::invalid_request, field, message);
}

const Json& require_object(const Json& j, const char* what) {
  if (!j.is_object()) bad_request(what, fmt::format("{} must be a JSON object", what));
  return j;
}

double number_at(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad_request(key, fmt::format("missing required field '{}'", key));
  if (!it->is_number()) bad_request(key, fmt::format("field '{}' must be a number", key));
  return it->get<double>();
}

void reject_unknown_keys(const Json& obj, const std::vector<const char*>& known) {
  for (const auto& item : obj.items()) {
    const bool ok = std::any_of(known.begin(), known.end(), [&](const char* k) { return item.key() == k; });
    if (!ok) bad_request(item.key(), fmt::format("unexpected field '{}'", item.key()));
  }
}

}  // namespace

std::string format_number(double value) { return fmt::format("{}", value); }

Json to_json(const KktDiagnostics& kkt) {
  Json j;
  j["h_crit"] = kkt.h_crit;
  j["active"] = std::string(to_string(kkt.active));
  j["mu1"] = kkt.mu1;
  j["mu2"] = kkt.mu2;
  return j;
}

Json to_json(const OptimalDesign& d) {
  Json j;
  j["scenario"] = std::string(to_string(d.scenario));
  j["w_min"] = d.width;
  j["l_min"] = d.length;
  j["h_min"] = d.height;
  j["s_min"] = d.surface;
  j["r_min"] = d.r;
  j["k_min"] = d.k;
  j["volume"] = d.volume;
  if (d.kkt) j["kkt"] = to_json(*d.kkt);
  return j;
}

Json to_json(const CompactnessReport& report) {
  Json j;
  j["surface"] = report.surface;
  j["min_surface"] = report.min_surface;
  j["ratio"] = report.ratio;
  j["surplus"] = report.surplus;
  return j;
}

Json to_json(const oracle::ContourGrid& grid) {
  Json j;
  j["r_axis"] = grid.r_axis;
  j["k_axis"] = grid.k_axis;
  Json rows = Json::array();
  const std::size_t n_r = grid.r_axis.size();
  for (std::size_t row = 0; row < grid.k_axis.size(); ++row) {
    const auto first = grid.surface.begin() + static_cast<std::ptrdiff_t>(row * n_r);
    rows.push_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n_r)));
  }
  j["surface"] = std::move(rows);
  j["min"] = {{"r", grid.min_point.r}, {"k", grid.min_point.k}, {"s", grid.min_point.s}};
  return j;
}

OptimalDesign design_from_json(const Json& j) {
  require_object(j, "design");
  OptimalDesign d;
  const auto scenario = scenario_from_string(j.value("scenario", std::string{}));
  if (!scenario) bad_request("scenario", "unknown scenario in design");
  d.scenario = *scenario;
  d.width = number_at(j, "w_min");
  d.length = number_at(j, "l_min");
  d.height = number_at(j, "h_min");
  d.surface = number_at(j, "s_min");
  d.r = number_at(j, "r_min");
  d.k = number_at(j, "k_min");
  d.volume = number_at(j, "volume");
  if (const auto it = j.find("kkt"); it != j.end()) {
    require_object(*it, "kkt");
    KktDiagnostics kkt;
    kkt.h_crit = number_at(*it, "h_crit");
    const std::string active = it->value("active", std::string{});
    if (active == "lower") {
      kkt.active = ActiveBound::lower;
    } else if (active == "upper") {
      kkt.active = ActiveBound::upper;
    } else if (active == "interior") {
      kkt.active = ActiveBound::interior;
    } else {
      bad_request("active", "kkt.active must be lower, interior or upper");
    }
    kkt.mu1 = number_at(*it, "mu1");
    kkt.mu2 = number_at(*it, "mu2");
    d.kkt = kkt;
  }
  return d;
}

ScenarioSpec scenario_from_json(const Json& j) {
  require_object(j, "body");
  reject_unknown_keys(j, {"scenario", "params"});
  const auto it = j.find("scenario");
  if (it == j.end() || !it->is_string()) bad_request("scenario", "field 'scenario' must be a string");
  const auto scenario = scenario_from_string(it->get<std::string>());
  if (!scenario) {
    throw DomainError(ErrorCode::unknown_scenario, "scenario",
                      fmt::format("unknown scenario '{}'", it->get<std::string>()));
  }
  const auto pit = j.find("params");
  if (pit == j.end()) bad_request("params", "missing required field 'params'");
  const Json& p = require_object(*pit, "params");

  switch (*scenario) {
    case Scenario::fixed_volume:
      reject_unknown_keys(p, {"volume", "alpha_deg"});
      return FixedVolume{number_at(p, "volume"), deg_to_rad(number_at(p, "alpha_deg"))};
    case Scenario::fixed_r:
      reject_unknown_keys(p, {"volume", "alpha_deg", "r"});
      return FixedFootprintRatio{number_at(p, "volume"), deg_to_rad(number_at(p, "alpha_deg")), number_at(p, "r")};
    case Scenario::fixed_k:
      reject_unknown_keys(p, {"volume", "alpha_deg", "k"});
      return FixedSlenderness{number_at(p, "volume"), deg_to_rad(number_at(p, "alpha_deg")), number_at(p, "k")};
    case Scenario::fixed_floor:
      reject_unknown_keys(p, {"floor_area", "height", "alpha_deg"});
      return FixedFloorArea{number_at(p, "floor_area"), number_at(p, "height"),
                            deg_to_rad(number_at(p, "alpha_deg"))};
    case Scenario::height_range:
      reject_unknown_keys(p, {"volume", "alpha_deg", "hmin", "hmax"});
      return HeightRange{number_at(p, "volume"), deg_to_rad(number_at(p, "alpha_deg")), number_at(p, "hmin"),
                         number_at(p, "hmax")};
  }
  bad_request("scenario", "unhandled scenario");
}

HouseParams house_from_json(const Json& j, std::initializer_list<const char*> allowed_extra) {
  require_object(j, "body");
  std::vector<const char*> known{"width", "length", "height", "alpha_deg"};
  known.insert(known.end(), allowed_extra.begin(), allowed_extra.end());
  reject_unknown_keys(j, known);
  return {number_at(j, "width"), number_at(j, "length"), number_at(j, "height"),
          deg_to_rad(number_at(j, "alpha_deg"))};
}

std::string contour_to_csv(const oracle::ContourGrid& grid) {
  std::string out = "k\\r";
  for (double r : grid.r_axis) {
    out += ',';
    out += format_number(r);
  }
  out += '\n';
  for (std::size_t row = 0; row < grid.k_axis.size(); ++row) {
    out += format_number(grid.k_axis[row]);
    for (std::size_t col = 0; col < grid.r_axis.size(); ++col) {
      out += ',';
      out += format_number(grid.at(row, col));
    }
    out += '\n';
  }
  return out;
}

}  // namespace hiproof::io
