#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cauchy/cli.hpp"
#include "cauchy/parallel.hpp"

using namespace cauchy;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const json& check(const json& rep, const std::string& name) {
  for (const auto& c : rep["checks"])
    if (c["name"] == name) return c;
  FAIL("no check named " << name);
  static json none;
  return none;
}

}  // namespace

TEST_CASE("verify passes on rigid rotation") {
  const auto r = invoke({"verify", "--fixture", "rigid-rotation"});
  CHECK(r.code == cli::kPass);
  const auto rep = r.report();
  CHECK(rep["schema"] == "cauchy-report/1");
  CHECK(rep["pass"] == true);
  CHECK(rep["config"]["fixture"] == "rigid-rotation");
  CHECK(rep["checks"].size() == 8);
}

TEST_CASE("a non-Euler flow fails the dynamical checks but not the kinematic ones") {
  const auto r = invoke({"verify", "--fixture", "dilation"});
  CHECK(r.code == cli::kToleranceFailure);
  const auto rep = r.report();
  CHECK(check(rep, "kinematic-identities")["pass"] == true);
  CHECK(check(rep, "cauchy-drift")["pass"] == false);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({"nosuch"}).code == cli::kUsageError);
  CHECK(invoke({}).code == cli::kUsageError);
  CHECK(invoke({"verify", "--fixture", "nosuch"}).code == cli::kUsageError);
  CHECK(invoke({"verify", "--nt", "1"}).code == cli::kUsageError);
  CHECK(invoke({"verify", "--dt", "0.1"}).code == cli::kUsageError);  // analytic fixture
  CHECK(invoke({"verify", "--t0", "5", "--t1", "1"}).code == cli::kUsageError);
  CHECK(invoke({"drift", "--theorem", "bogus"}).code == cli::kUsageError);
  CHECK(invoke({"export"}).code == cli::kUsageError);
  CHECK(invoke({"verify", "--grid-file", "does-not-exist.cigrid"}).code == cli::kUsageError);
  const auto h = invoke({"--help"});
  CHECK(h.code == cli::kPass);
  CHECK(h.out.find("verify") != std::string::npos);
}

TEST_CASE("identities battery") {
  const auto r = invoke({"identities", "--trials", "100", "--seed", "3"});
  CHECK(r.code == cli::kPass);
  for (const auto& c : r.report()["checks"]) CHECK(c["detail"]["exact_zeros"] == "100/100");

  const auto empty = invoke({"identities", "--trials", "0"});
  CHECK(empty.code == cli::kPass);
  CHECK(empty.report()["checks"].empty());
}

TEST_CASE("action scan detects symmetry and its absence") {
  const auto r = invoke({"action", "--scan"});
  CHECK(r.code == cli::kPass);
  const auto rep = r.report();
  const auto& scan = check(rep, "relabeling-scan");
  CHECK(scan["value"].get<double>() >= 1.9);

  const auto d = invoke({"action", "--scan", "--generator", "dilating"});
  CHECK(d.code == cli::kPass);
  const auto drep = d.report();
  const auto& ds = check(drep, "relabeling-scan");
  CHECK(ds["detail"]["flagged_non_symmetry"] == "true");
  CHECK(ds["value"].get<double>() < 1.5);
}

TEST_CASE("action weak form and Rund-Trautman") {
  const auto r = invoke({"action", "--weak", "--rt", "--generator", "xy"});
  CHECK(r.code == cli::kPass);
  const auto rep = r.report();
  CHECK(check(rep, "weak-form")["pass"] == true);
  CHECK(check(rep, "rund-trautman:time-translation")["pass"] == true);
  CHECK(check(rep, "noether-boundary")["pass"] == true);
}

TEST_CASE("drift at two steps shows fourth-order integration") {
  const auto r = invoke({"drift", "--fixture", "abc:n=6", "--dt", "0.01,0.005", "--theorem", "cauchy"});
  CHECK(r.code == cli::kPass);
  const auto rep = r.report();
  const auto& order = check(rep, "integrator-order");
  CHECK(order["value"].get<double>() == doctest::Approx(16).epsilon(0.25));
}

TEST_CASE("drift of the identity map is zero") {
  const auto r = invoke({"drift", "--fixture", "identity", "--theorem", "circulation"});
  CHECK(r.code == cli::kPass);
  const auto rep = r.report();
  const auto& c = rep["checks"][0];
  CHECK(c["value"].get<double>() == 0.0);
  for (const auto& row : c["drift"]["rows"]) CHECK(row["max_dev"].get<double>() == 0.0);
}

TEST_CASE("reports are identical for any thread count") {
  const auto a = invoke({"verify", "--fixture", "gerstner", "--threads", "1"});
  const auto b = invoke({"verify", "--fixture", "gerstner", "--threads", "5"});
  CHECK(a.out == b.out);
  const auto c = invoke({"action", "--scan", "--threads", "3"});
  const auto d = invoke({"action", "--scan", "--threads", "1"});
  CHECK(c.out == d.out);
  set_worker_count(0);
}

TEST_CASE("csv output and config files") {
  const std::string cfg = "cli_test.ini";
  {
    std::ofstream f(cfg);
    f << "fixture=shear\nnt=5\nformat=csv\n";
  }
  const auto r = invoke({"verify", "--config", cfg});
  std::remove(cfg.c_str());
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("# fixture=shear") != std::string::npos);
  CHECK(r.out.find("check,kind,t,value,max_dev,l2_dev,tolerance,pass\n") != std::string::npos);
  CHECK(r.out.find("cauchy-drift,row,0.25,") != std::string::npos);
}

TEST_CASE("export round trip through a grid file") {
  const std::string path = "cli_test.cigrid";
  const auto e = invoke({"export", "--fixture", "rigid-rotation:n=11", "--nt", "41", "--out", path, "--format", "binary"});
  REQUIRE(e.code == cli::kPass);
  const auto r = invoke({"verify", "--grid-file", path, "--tol", "1e-3"});
  std::remove(path.c_str());
  CHECK(r.code == cli::kPass);
  const auto rep = r.report();
  CHECK(rep["config"]["backend"] == "sampled");
  CHECK(rep["config"]["momentum"] == "skipped: no pressure for file trajectories");
}
