#pragma once

// Drift reports: a time series of an invariant, its deviation from the value
// at the first time stamp, and enough metadata to reproduce the numbers.
//
// CSV columns: t,value,max_dev,l2_dev
// JSON: {"schema": ..., "theorem": ..., "tolerance": ..., "metadata": {...},
//        "rows": [{"t":..,"value":..,"max_dev":..,"l2_dev":..}, ...]}

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace cauchy {

inline constexpr const char* kReportSchema = "cauchy-report/1";

struct DriftRow {
  double t = 0.0;
  double value = 0.0;    // scalar invariant, or grid L2 norm of a field invariant
  double max_dev = 0.0;  // max over nodes of |q(t) - q(t0)|
  double l2_dev = 0.0;   // weighted L2 over nodes of |q(t) - q(t0)|
};

struct DriftReport {
  std::string theorem;
  std::vector<DriftRow> rows;
  std::map<std::string, std::string> metadata;
  double tolerance = 0.0;

  double max_drift() const;
  bool passes() const { return max_drift() <= tolerance; }

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

/// Number formatting shared by every report writer (round-trip precision).
std::string format_number(double x);

}  // namespace cauchy
