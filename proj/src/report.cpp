#include "cauchy/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cauchy {

double DriftReport::max_drift() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, std::isnan(r.max_dev) ? INFINITY : r.max_dev);
  return m;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::ordered_json DriftReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["theorem"] = theorem;
  j["tolerance"] = tolerance;
  j["max_drift"] = max_drift();
  j["pass"] = passes();
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  auto rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"t", r.t}, {"value", r.value}, {"max_dev", r.max_dev}, {"l2_dev", r.l2_dev}});
  j["rows"] = rows_json;
  return j;
}

std::string DriftReport::to_csv() const {
  std::ostringstream os;
  os << "# theorem=" << theorem << " tolerance=" << format_number(tolerance) << "\n";
  for (const auto& [k, v] : metadata) os << "# " << k << "=" << v << "\n";
  os << "t,value,max_dev,l2_dev\n";
  for (const auto& r : rows)
    os << format_number(r.t) << "," << format_number(r.value) << "," << format_number(r.max_dev) << ","
       << format_number(r.l2_dev) << "\n";
  return os.str();
}

}  // namespace cauchy
