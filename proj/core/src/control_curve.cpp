#include "liars/control_curve.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <boost/math/tools/roots.hpp>

#include "liars/errors.hpp"

namespace liars {

double curve_residual(double y, double x, double scaled_penalty, double goal, const Kernel& k) {
  return scaled_penalty * (y - goal) + (x - goal) * eval_influence_dy(k, x, y);
}

namespace {

struct Solver {
  Kernel kernel;
  double outer;
  double penalty;
  double goal;
  double tol;

  double g(double y, double x) const { return curve_residual(y, x, penalty, goal, kernel); }
  double dg(double y, double x) const { return penalty + (x - goal) * eval_influence_dyy(kernel, x, y); }

  std::optional<double> newton(double x, double guess) const {
    double y = guess;
    for (int it = 0; it < 50; ++it) {
      const double r = g(y, x);
      if (std::abs(r) < tol) return y;
      const double slope = dg(y, x);
      if (slope == 0.0 || !std::isfinite(slope)) return std::nullopt;
      y -= r / slope;
      if (!std::isfinite(y)) return std::nullopt;
    }
    if (std::abs(g(y, x)) < tol) return y;
    return std::nullopt;
  }

  // Every root other than the truth sits within the transition band around x.
  std::optional<double> bracket(double x, double guess) const {
    constexpr int pieces = 400;
    const double lo = x - outer;
    const double step = 2.0 * outer / pieces;
    std::optional<double> best;
    double prev = g(lo, x);
    for (int i = 1; i <= pieces; ++i) {
      const double a = lo + (i - 1) * step;
      const double b = lo + i * step;
      const double cur = g(b, x);
      if ((prev < 0.0) != (cur < 0.0)) {
        auto stop = [](double l, double r) { return r - l < 1e-15; };
        auto [l, r] = boost::math::tools::bisect([&](double y) { return g(y, x); }, a, b, stop);
        const double root = 0.5 * (l + r);
        if (std::abs(g(root, x)) < tol && (!best || std::abs(root - guess) < std::abs(*best - guess))) best = root;
      }
      prev = cur;
    }
    return best;
  }
};

}  // namespace

ControlCurve control_curve(const SmoothedBounded& k, double scaled_penalty, double goal, int cells, int refine,
                           double tol) {
  validate(Kernel{k});
  if (!(scaled_penalty > 0.0)) throw InvalidArgument("control curve needs a positive scaled penalty");
  if (cells < 1 || refine < 0 || refine > 20) throw InvalidArgument("control curve grid is out of range");
  const Interval range{};
  if (!range.contains(goal)) throw InvalidArgument("goal must lie in the opinion interval");

  const long fine = (1L << refine) * cells;
  const double h = range.width() / static_cast<double>(fine);
  auto point = [&](long j) { return j == fine ? range.hi : range.lo + static_cast<double>(j) * h; };

  const Solver solver{k, k.outer, scaled_penalty, goal, tol};
  const double inner = k.inner * scaled_penalty / (scaled_penalty + 1.0);

  std::vector<double> ys(static_cast<std::size_t>(fine + 1), goal);
  const long centre = std::clamp(std::lround((goal - range.lo) / h), 0L, fine);

  auto solve_at = [&](long j, double guess) {
    const double x = point(j);
    const double off = x - goal;
    double y;
    if (std::abs(off) < inner) {
      y = goal - off / scaled_penalty;
    } else if (auto r = solver.newton(x, guess)) {
      y = *r;
    } else if (auto b = solver.bracket(x, guess)) {
      y = *b;
    } else {
      y = goal;
    }
    ys[static_cast<std::size_t>(j)] = project(y, range);
  };

  solve_at(centre, goal);
  for (long j = centre + 1; j <= fine; ++j) solve_at(j, ys[static_cast<std::size_t>(j - 1)]);
  for (long j = centre - 1; j >= 0; --j) solve_at(j, ys[static_cast<std::size_t>(j + 1)]);

  ControlCurve out;
  out.scaled_penalty = scaled_penalty;
  out.goal = goal;
  const long stride = 1L << refine;
  for (long c = 0; c <= cells; ++c) {
    const long j = c * stride;
    const double x = point(j);
    const double y = ys[static_cast<std::size_t>(j)];
    out.xs.push_back(x);
    out.ys.push_back(y);
    out.residuals.push_back(std::abs(solver.g(y, x)));
  }
  return out;
}

}  // namespace liars
