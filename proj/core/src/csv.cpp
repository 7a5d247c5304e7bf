#include "liars/csv.hpp"

#include <array>
#include <charconv>
#include <ostream>

#include "liars/errors.hpp"

namespace liars::csv {

std::string number(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return {buf.data(), end};
}

namespace {

void tag(std::ostream& os, const char* kind) { os << "# liars-csv v" << schema_version << ' ' << kind << '\n'; }

void indexed(std::ostream& os, const char* prefix, std::size_t count) {
  for (std::size_t i = 1; i <= count; ++i) os << ',' << prefix << i;
}

}  // namespace

void trajectory(std::ostream& os, const Trajectory& tr) {
  tag(os, "trajectory");
  const std::size_t n = tr.states.empty() ? 0 : tr.states.front().x.size();
  os << 't';
  indexed(os, "x_", n);
  indexed(os, "y_", n);
  os << '\n';
  for (std::size_t s = 0; s < tr.states.size(); ++s) {
    os << number(tr.times[s]);
    for (double v : tr.states[s].x) os << ',' << number(v);
    if (s < tr.controls.size()) {
      for (double v : tr.controls[s].lies) os << ',' << number(v);
    } else {
      for (std::size_t i = 0; i < n; ++i) os << ',';
    }
    os << '\n';
  }
}

void heatmap(std::ostream& os, const LieMagnitudeMatrix& m) {
  tag(os, "lie-magnitude");
  os << "agent";
  for (int c = 0; c < m.cols; ++c) os << ",step_" << c;
  os << '\n';
  for (int r = 0; r < m.rows; ++r) {
    os << r + 1;
    for (int c = 0; c < m.cols; ++c) os << ',' << number(m.at(r, c));
    os << '\n';
  }
}

void moments(std::ostream& os, const McResult& r) {
  tag(os, "moments");
  os << "t,mean,second_moment\n";
  for (std::size_t i = 0; i < r.times.size(); ++i)
    os << number(r.times[i]) << ',' << number(r.mean[i]) << ',' << number(r.second_moment[i]) << '\n';
}

void histogram(std::ostream& os, const McResult& r) {
  tag(os, "histogram");
  os << "centre,density\n";
  const double width = 2.0 / static_cast<double>(r.histogram.size());
  for (std::size_t i = 0; i < r.histogram.size(); ++i)
    os << number(-1.0 + (static_cast<double>(i) + 0.5) * width) << ',' << number(r.histogram[i]) << '\n';
}

void density(std::ostream& os, const FpResult& r) {
  tag(os, "density");
  if (r.snapshots.empty()) return;
  const DensityGrid& g = r.snapshots.front();
  os << "# grid lo=" << number(g.range.lo) << " hi=" << number(g.range.hi) << " cells=" << g.cells()
     << " dx=" << number(g.dx()) << '\n';
  os << 't';
  indexed(os, "u_", g.u.size());
  os << '\n';
  for (std::size_t s = 0; s < r.snapshots.size(); ++s) {
    os << number(r.snapshot_times[s]);
    for (double v : r.snapshots[s].u) os << ',' << number(v);
    os << '\n';
  }
}

void fp_series(std::ostream& os, const FpResult& r, int every) {
  if (every < 1) throw InvalidArgument("series stride must be positive");
  tag(os, "fp-series");
  os << "t,mass,mean,V\n";
  const std::size_t n = r.series.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(every) != 0 && i + 1 != n) continue;
    const auto& s = r.series[i];
    os << number(s.t) << ',' << number(s.mass) << ',' << number(s.mean) << ',' << number(s.lyapunov) << '\n';
  }
}

void curve(std::ostream& os, const ControlCurve& c) {
  tag(os, "control-curve");
  os << "x,y,residual\n";
  for (std::size_t i = 0; i < c.xs.size(); ++i)
    os << number(c.xs[i]) << ',' << number(c.ys[i]) << ',' << number(c.residuals[i]) << '\n';
}

}  // namespace liars::csv
