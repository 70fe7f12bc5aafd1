#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "cauchy/flows.hpp"
#include "cauchy/grid_io.hpp"
#include "cauchy/invariants.hpp"

using namespace cauchy;

namespace {

SampledTrajectories rotation_samples(const LabelGrid& grid, int nt) {
  auto rot = make_fixture("rigid-rotation");
  return grid_io::sample(rot.field, grid, linspace(0, 1, nt));
}

void check_same(const SampledTrajectories& a, const SampledTrajectories& b) {
  REQUIRE(a.times == b.times);
  REQUIRE(a.grid.shape() == b.grid.shape());
  CHECK(a.fd_order == b.fd_order);
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    CHECK(a.grid.label(i) == b.grid.label(i));
    CHECK(a.grid.weight(i) == doctest::Approx(b.grid.weight(i)).epsilon(1e-14));
  }
  CHECK(a.positions == b.positions);
}

}  // namespace

TEST_CASE("grid files round-trip in both formats") {
  for (const auto& grid : {LabelGrid::cube_nodes(-1, 1, 5), LabelGrid::cube_cells(-1, 1, 4),
                           LabelGrid::periodic_box(-1, 2.0, 4)}) {
    const auto s = rotation_samples(grid, 6);
    for (auto fmt : {grid_io::Format::csv, grid_io::Format::binary}) {
      std::stringstream buf;
      grid_io::write(s, buf, fmt);
      check_same(s, grid_io::read(buf));
    }
  }
}

TEST_CASE("a sampled field loaded from disk reproduces the analytic invariants") {
  auto rot = make_fixture("rigid-rotation");
  const auto grid = LabelGrid::cube_nodes(-1, 1, 11);
  const auto s = grid_io::sample(rot.field, grid, linspace(0, 1, 41));
  const std::string path = "grid_io_test.cigrid";
  grid_io::save(s, path, grid_io::Format::binary);
  const auto f = grid_io::load_field(path);
  std::remove(path.c_str());
  CHECK(f.backend() == Backend::sampled);
  const Vec3d a = grid.label(grid.flat(5, 4, 6));
  CHECK(norm(f.eval_state(a, 0.5).xdot - rot.field.eval_state(a, 0.5).xdot) < 1e-5);
  CHECK(norm(lagrangian_vorticity(f, a, 0.5) - Vec3d(0, 0, 2)) < 1e-4);
}

TEST_CASE("malformed grid files are rejected") {
  auto bad = [](const std::string& text) {
    std::stringstream in(text);
    return grid_io::read(in);
  };
  CHECK_THROWS_AS(bad(""), ConfigError);
  CHECK_THROWS_AS(bad("hello"), ConfigError);
  CHECK_THROWS_AS(bad("# cauchy-grid v2\n"), ConfigError);
  CHECK_THROWS_AS(bad("# cauchy-grid v1\naxes,2,2\n"), ConfigError);
  const std::string head =
      "# cauchy-grid v1\naxes,2,2,2\nkind,nodes,nodes,nodes\norigin,0,0,0\nspacing,1,1,1\nfd_order,4\ntimes,0,1\n"
      "x1,x2,x3\n";
  CHECK_THROWS_AS(bad(head + "0,0,0\n"), ConfigError);  // too few rows
  CHECK_THROWS_AS(bad("# cauchy-grid v1\naxes,2,2,2\nkind,nodes,odd,nodes\n"), ConfigError);
  CHECK_THROWS_AS(bad("CIGRID01\x02"), ConfigError);  // truncated

  // nonuniform axes cannot be written
  const auto s = rotation_samples(LabelGrid::box_gauss({-1, -1, -1}, {1, 1, 1}, 4), 2);
  std::stringstream out;
  CHECK_THROWS_AS(grid_io::write(s, out, grid_io::Format::csv), ConfigError);
}
