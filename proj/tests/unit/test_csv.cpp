#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "liars/csv.hpp"

using namespace liars;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t fields(const std::string& l) { return static_cast<std::size_t>(std::count(l.begin(), l.end(), ',')) + 1; }

}  // namespace

TEST_CASE("numbers round-trip") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 123456.789, 0.0}) CHECK(std::strtod(csv::number(v).c_str(), nullptr) == v);
  CHECK(csv::number(0.5) == "0.5");
}

TEST_CASE("trajectory layout") {
  MicroConfig cfg;
  cfg.agents = 4;
  cfg.horizon = 0.3;
  const auto tr = simulate_micro(cfg);
  std::ostringstream os;
  csv::trajectory(os, tr);
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 2 + tr.states.size());
  CHECK(ls[0] == "# liars-csv v1 trajectory");
  CHECK(ls[1] == "t,x_1,x_2,x_3,y_1,y_2,y_3");
  for (std::size_t i = 2; i < ls.size(); ++i) CHECK(fields(ls[i]) == 7);
  CHECK(ls.back().substr(ls.back().size() - 3) == ",,,");
}

TEST_CASE("identical runs give identical files") {
  MicroConfig cfg;
  cfg.horizon = 1.0;
  cfg.reg = ClassicReg{1e-3};
  std::ostringstream a, b;
  csv::trajectory(a, simulate_micro(cfg));
  csv::trajectory(b, simulate_micro(cfg));
  CHECK(a.str() == b.str());

  McConfig mc;
  mc.samples = 200;
  mc.steps = 10;
  mc.histogram_bins = 20;
  std::ostringstream c, d, e;
  const auto r = mc_run(mc);
  csv::moments(c, r);
  csv::moments(d, mc_run(mc));
  CHECK(c.str() == d.str());
  csv::histogram(e, r);
  CHECK(lines(e.str()).size() == 22);
}

TEST_CASE("heatmap layout") {
  LieMagnitudeMatrix m{2, 3, {0, 0.5, 0, 1, 0, 0.25}};
  std::ostringstream os;
  csv::heatmap(os, m);
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 4);
  CHECK(ls[1] == "agent,step_0,step_1,step_2");
  CHECK(ls[2] == "1,0,0.5,0");
  CHECK(ls[3] == "2,1,0,0.25");
}

TEST_CASE("density and series layout") {
  FpConfig cfg;
  cfg.cells = 21;
  cfg.liars = {LiarField{}};
  cfg.horizon = 0.05;
  const auto r = fv_solve(cfg);
  std::ostringstream os;
  csv::density(os, r);
  const auto ls = lines(os.str());
  CHECK(ls[1].rfind("# grid lo=-1 hi=1 cells=21", 0) == 0);
  CHECK(fields(ls[2]) == 22);
  CHECK(ls.size() == 3 + r.snapshots.size());

  std::ostringstream s;
  csv::fp_series(s, r, 1000000);
  const auto sl = lines(s.str());
  CHECK(sl.size() == 4);  // tag, header, first and last sample
  CHECK_THROWS(csv::fp_series(s, r, 0));

  std::ostringstream c;
  csv::curve(c, control_curve(SmoothedBounded{0.1, 0.2}, 0.1, 0.0, 10));
  CHECK(lines(c.str()).size() == 2 + 11);
}
