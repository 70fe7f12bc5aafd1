#pragma once

// Command-line driver: configuration, the verification suites and report
// assembly. `run` is what the `cauchy` executable calls.
//
// Report JSON (schema cauchy-report/1):
//   {"schema", "command", "artifact": {"name", "version"}, "config": {...},
//    "pass", "checks": [{"name", "value", "tolerance", "pass", "detail": {...},
//                        "drift": <DriftReport JSON, optional>}]}
// Report CSV columns: check,kind,t,value,max_dev,l2_dev,tolerance,pass
//   kind = summary (one per check) or row (one per drift time stamp).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cauchy/report.hpp"

namespace cauchy::cli {

inline constexpr const char* kArtifactName = "cauchy-invariants";
inline constexpr const char* kArtifactVersion = "1.0.0";

/// Exit codes.
enum Exit : int { kPass = 0, kToleranceFailure = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;                     // verify | identities | action | drift | export
  std::string fixture = "rigid-rotation";  // "name" or "name:key=value,..."
  int grid = 0;                            // label nodes per axis; 0 = fixture default
  std::string grid_file;                   // sampled trajectories instead of a fixture
  std::optional<double> t0, t1;
  int nt = 11;                             // time samples
  int fd_order = 4;                        // sampled fields without stored jets
  std::optional<double> tol;               // overrides every default tolerance
  std::string out;                         // report path; stdout when empty
  std::string format = "json";             // json | csv (export: csv | binary)
  std::uint64_t seed = 1;
  std::vector<double> dt;                  // integrator steps for integrated fixtures
  int trials = 100;                        // identities
  std::string generator = "bump";          // action: bump | xy | dilating
  bool scan = false, weak = false, rt = false;
  std::string theorem = "cauchy";          // drift: cauchy | circulation | helicity | ertel
  int threads = 0;                         // 0 = hardware concurrency
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, std::string> detail;
  std::optional<DriftReport> drift;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // provenance, in insertion order
  std::vector<CheckResult> checks;

  bool pass() const;
  std::string to_json() const;
  std::string to_csv() const;
};

/// Invalid command line or configuration.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv-style arguments (without the program name). Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

Report cmd_verify(const RunConfig& cfg);
Report cmd_identities(const RunConfig& cfg);
Report cmd_action(const RunConfig& cfg);
Report cmd_drift(const RunConfig& cfg);
/// Writes the fixture's trajectories to a grid file (--out, --format csv|binary).
Report cmd_export(const RunConfig& cfg);

/// Full driver: parse, run, write the report. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cauchy::cli
