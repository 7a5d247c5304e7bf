#include "liars/micro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "liars/errors.hpp"
#include "liars/rng.hpp"

namespace liars {
namespace {

constexpr double escape_tol = 1e-9;

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
}

// One Euler step for a single truth-teller; rate is dt/N.
double advance(const Kernel& k, double x, double pull, double lie, double rate) {
  return x + rate * (eval_kernel(k, x, lie) * (lie - x) + pull);
}

// Solves lie = anchor - gain * (x_next(lie) - goal) * d/dy{P(x,lie)(lie-x)}, which is the
// stationarity condition of 1/2 (x_next - goal)^2 + (rate / 2 gain)(lie - anchor)^2.
struct ScalarProblem {
  const Kernel& k;
  double x, pull, anchor, weight, rate, goal;

  double error(double y) const { return advance(k, x, pull, y, rate) - goal; }
  double cost(double y) const {
    const double e = error(y);
    return 0.5 * e * e + 0.5 * weight * (y - anchor) * (y - anchor);
  }
  double slope(double y) const { return error(y) * rate * eval_influence_dy(k, x, y) + weight * (y - anchor); }
};

// Global minimiser for a smoothed kernel. Outside the band the cost is a
// parabola centred on the anchor, so the candidates are the anchor (when it
// sits outside) and the local minima found by scanning the band.
double scalar_argmin(const ScalarProblem& p, double outer) {
  constexpr int pieces = 256;
  double best = p.anchor, best_cost = std::numeric_limits<double>::infinity();
  auto consider = [&](double y) {
    const double c = p.cost(y);
    if (c < best_cost || (c == best_cost && std::abs(y - p.goal) < std::abs(best - p.goal))) {
      best = y;
      best_cost = c;
    }
  };
  if (std::abs(p.anchor - p.x) >= outer) consider(p.anchor);
  const double lo = p.x - outer, step = 2.0 * outer / pieces;
  double a = lo, sa = p.slope(a);
  for (int j = 1; j <= pieces; ++j) {
    const double b = lo + j * step, sb = p.slope(b);
    if (sa < 0.0 && sb >= 0.0) {
      auto [r0, r1] = boost::math::tools::bisect([&](double y) { return p.slope(y); }, a, b,
                                                 boost::math::tools::eps_tolerance<double>(50));
      consider(0.5 * (r0 + r1));
    }
    a = b;
    sa = sb;
  }
  return best;
}

double solve_implicit(const Kernel& k, double x, double pull, double anchor, double gain, double rate,
                      double goal) {
  if (partner_independent(k)) {
    const double p = eval_kernel(k, x, x);
    const double offset = x * (1.0 - rate * p) + rate * pull - goal;
    return (anchor - gain * p * offset) / (1.0 + gain * rate * p * p);
  }
  const auto* smooth = std::get_if<SmoothedBounded>(&k);
  if (!smooth) throw NotDifferentiable("implicit lie equation needs a differentiable kernel");
  return scalar_argmin({k, x, pull, anchor, rate / gain, rate, goal}, smooth->outer);
}

ControlRecord finish(std::vector<double> raw, Interval range) {
  ControlRecord rec;
  rec.lies.resize(raw.size());
  std::transform(raw.begin(), raw.end(), rec.lies.begin(), [&](double v) { return project(v, range); });
  rec.raw = std::move(raw);
  return rec;
}

// Distance in the transition band where |P(s)s| peaks.
double peak_offset(const SmoothedBounded& k) {
  auto slope = [&](double d) { return smoothed_profile(k, d) + d * smoothed_profile_d1(k, d); };
  const double w = k.outer - k.inner;
  auto [a, b] = boost::math::tools::bisect(slope, k.inner, k.inner + 0.999 * w,
                                           boost::math::tools::eps_tolerance<double>(52));
  return 0.5 * (a + b);
}

// Offset s in [0, peak] with P(s)s = target.
double influence_inverse(const SmoothedBounded& k, double target, double peak) {
  if (target <= 0.0) return 0.0;
  if (target <= k.inner) return target;
  auto f = [&](double d) { return smoothed_profile(k, d) * d - target; };
  if (f(peak) <= 0.0) return peak;
  auto [a, b] = boost::math::tools::bisect(f, k.inner, peak, boost::math::tools::eps_tolerance<double>(52));
  return 0.5 * (a + b);
}

void require_agents(const OpinionState& s, std::span<const double> prev) {
  if (prev.size() != s.x.size()) throw DimensionMismatch("previous lies must match the truth-teller count");
}

}  // namespace

ControlRecord control_no_reg(const OpinionState& s, const Kernel& k, double dt, Interval range) {
  require_positive(dt, "time step");
  if (std::holds_alternative<HardBounded>(k))
    throw NotDifferentiable("no-regularisation control needs a differentiable kernel");
  const auto pull = peer_pull(s.x, k);
  const double rate = dt / s.agents();
  std::vector<double> raw(s.x.size());

  const auto* smooth = std::get_if<SmoothedBounded>(&k);
  const double peak = smooth ? peak_offset(*smooth) : 0.0;
  const double peak_value = smooth ? smoothed_profile(*smooth, peak) * peak : 0.0;

  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double x = s.x[i];
    // Influence P(x,y)(y-x) needed to land exactly on the goal.
    const double need = (s.goal - x) / rate - pull[i];
    if (!smooth) {
      const double p = eval_kernel(k, x, x);
      raw[i] = p > 0.0 ? x + need / p : s.goal;
      continue;
    }
    const double dir = need < 0.0 ? -1.0 : 1.0;
    if (std::abs(need) <= peak_value)
      raw[i] = x + dir * influence_inverse(*smooth, std::abs(need), peak);
    else
      raw[i] = x + dir * peak;
  }
  return finish(std::move(raw), range);
}

double binary_lie(double x, double weight, double penalty, double goal, const Kernel& k, Interval range) {
  require_positive(penalty, "penalty");
  return project(solve_implicit(k, x, 0.0, goal, weight / penalty, weight, goal), range);
}

ControlRecord control_classic(const OpinionState& s, const Kernel& k, double dt, double penalty,
                              Interval range) {
  require_positive(dt, "time step");
  require_positive(penalty, "penalty");
  const auto pull = peer_pull(s.x, k);
  const double rate = dt / s.agents();
  const double gain = dt / (penalty * s.agents());
  std::vector<double> raw(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i)
    raw[i] = solve_implicit(k, s.x[i], pull[i], s.goal, gain, rate, s.goal);
  return finish(std::move(raw), range);
}

ControlRecord control_consistent(const OpinionState& s, const Kernel& k, double dt, double penalty,
                                 Interval range) {
  require_positive(dt, "time step");
  require_positive(penalty, "penalty");
  if (s.x.size() < 2) throw InvalidArgument("consistent control needs at least two truth-tellers");
  const auto pull = peer_pull(s.x, k);
  const std::size_t n = s.x.size();
  const double rate = dt / s.agents();
  const double gain = dt / (penalty * static_cast<double>(n));
  std::vector<double> raw(n);

  if (partner_independent(k)) {
    // lie_i (1 + gain rate p_i^2) = mean - gain p_i offset_i; average to get the mean.
    double num = 0.0, den = 0.0;
    std::vector<double> p(n), offset(n), scale(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = eval_kernel(k, s.x[i], s.x[i]);
      offset[i] = s.x[i] * (1.0 - rate * p[i]) + rate * pull[i] - s.goal;
      scale[i] = 1.0 / (1.0 + gain * rate * p[i] * p[i]);
      num += gain * p[i] * offset[i] * scale[i];
      den += 1.0 - scale[i];
    }
    const double mean = den > 1e-300 ? -num / den : s.goal;
    for (std::size_t i = 0; i < n; ++i) raw[i] = (mean - gain * p[i] * offset[i]) * scale[i];
    return finish(std::move(raw), range);
  }

  const auto* smooth = std::get_if<SmoothedBounded>(&k);
  if (!smooth) throw NotDifferentiable("consistent control needs a differentiable kernel");
  // For a fixed lie mean m the agents decouple; the joint optimum is the best
  // m where mean(lies(m)) - m crosses from positive to negative.
  const double weight = rate / gain;
  auto lies_for = [&](double m) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = scalar_argmin({k, s.x[i], pull[i], m, weight, rate, s.goal}, smooth->outer);
    return y;
  };
  auto excess = [&](const std::vector<double>& y, double m) {
    double mean = 0.0;
    for (double v : y) mean += v;
    return mean / static_cast<double>(n) - m;
  };
  auto joint = [&](const std::vector<double>& y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = advance(k, s.x[i], pull[i], y[i], rate) - s.goal;
      c += 0.5 * e * e + 0.5 * weight * (y[i] - mean) * (y[i] - mean);
    }
    return c;
  };
  const auto [xmin, xmax] = std::minmax_element(s.x.begin(), s.x.end());
  const double lo = *xmin - smooth->outer, hi = *xmax + smooth->outer;
  constexpr int grid = 64;
  std::vector<double> best;
  double best_cost = std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<double> y) {
    const double c = joint(y);
    if (c < best_cost) {
      best_cost = c;
      best = std::move(y);
    }
  };
  double ma = lo;
  auto ya = lies_for(ma);
  double ha = excess(ya, ma);
  for (int j = 1; j <= grid; ++j) {
    const double mb = lo + (hi - lo) * j / grid;
    auto yb = lies_for(mb);
    const double hb = excess(yb, mb);
    if (ha >= 0.0 && hb <= 0.0) {
      double l = ma, r = mb;
      auto yl = ya, yr = yb;
      for (int it = 0; it < 60 && r - l > 1e-15; ++it) {
        const double mid = 0.5 * (l + r);
        auto ym = lies_for(mid);
        if (excess(ym, mid) > 0.0) {
          l = mid;
          yl = std::move(ym);
        } else {
          r = mid;
          yr = std::move(ym);
        }
      }
      consider(std::move(yl));
      consider(std::move(yr));
    }
    ma = mb;
    ya = std::move(yb);
    ha = hb;
  }
  return finish(std::move(best), range);
}

ControlRecord control_time_consistent(const OpinionState& s, const Kernel& k, double dt, double penalty,
                                      std::span<const double> prev_lies, Interval range) {
  require_positive(dt, "time step");
  require_positive(penalty, "penalty");
  require_agents(s, prev_lies);
  const auto pull = peer_pull(s.x, k);
  const double rate = dt / s.agents();
  const double gain = dt * dt * dt / (penalty * s.agents());
  std::vector<double> raw(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i)
    raw[i] = solve_implicit(k, s.x[i], pull[i], prev_lies[i], gain, rate, s.goal);
  return finish(std::move(raw), range);
}

ControlRecord control_variant_tc(const OpinionState& s, const OpinionState& prev, const Kernel& k, double dt,
                                 double penalty, std::span<const double> prev_lies, Interval range) {
  require_positive(dt, "time step");
  require_positive(penalty, "penalty");
  require_agents(s, prev_lies);
  if (prev.x.size() != s.x.size()) throw DimensionMismatch("previous state must match the current one");
  const auto pull = peer_pull(s.x, k);
  const double rate = dt / s.agents();
  const double gain = dt * dt * dt / (penalty * s.agents());
  std::vector<double> raw(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    // The lie moves like an ordinary agent sitting at the previous lie.
    double expected = 0.0;
    for (double xj : prev.x) expected += eval_kernel(k, prev_lies[i], xj) * (xj - prev_lies[i]);
    const double anchor = prev_lies[i] + dt * expected / s.agents();
    raw[i] = solve_implicit(k, s.x[i], pull[i], anchor, gain, rate, s.goal);
  }
  return finish(std::move(raw), range);
}

ControlRecord control_bounded_confidence(const OpinionState& s, double radius, double dt, double penalty,
                                         Interval range) {
  require_positive(dt, "time step");
  require_positive(penalty, "penalty");
  const Kernel k = HardBounded{radius};
  validate(k);
  const auto pull = peer_pull(s.x, k);
  const double rate = dt / s.agents();
  const double gain = dt / (penalty * s.agents());
  ControlRecord rec;
  rec.lies.resize(s.x.size());
  rec.raw.resize(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double x = s.x[i];
    // Inside the band P = 1, so the implicit equation is linear.
    const double raw = (s.goal - gain * (x * (1.0 - rate) + rate * pull[i] - s.goal)) / (1.0 + gain * rate);
    const double candidate = project(std::clamp(raw, x - radius, x + radius), range);
    const double lied = x + rate * ((candidate - x) + pull[i]) - s.goal;
    const double truthful = advance(k, x, pull[i], s.goal, rate) - s.goal;
    const double dev = candidate - s.goal;
    rec.raw[i] = raw;
    rec.lies[i] = lied * lied + 2.0 * penalty * dev * dev < truthful * truthful ? candidate : s.goal;
  }
  return rec;
}

OpinionState step_micro(const OpinionState& s, const ControlRecord& ctrl, const Kernel& k, double dt,
                        Interval range) {
  require_positive(dt, "time step");
  const auto drift = hk_drift(s, k, ctrl.lies);
  OpinionState next{s.x, s.goal, s.t + dt};
  for (std::size_t i = 0; i < next.x.size(); ++i) {
    const double v = s.x[i] + dt * drift[i];
    if (v < range.lo - escape_tol || v > range.hi + escape_tol)
      throw StateEscapedInterval("opinion left the interval after an Euler step; reduce the time step");
    next.x[i] = project(v, range);
  }
  return next;
}

std::vector<double> uniform_opinions(int count, std::uint64_t seed, Interval range) {
  CounterRng rng(seed, 0);
  std::vector<double> x(static_cast<std::size_t>(count));
  for (auto& v : x) v = rng.uniform(range.lo, range.hi);
  return x;
}

int step_count(double horizon, double dt) {
  require_positive(dt, "time step");
  if (horizon < 0.0) throw InvalidArgument("horizon must be non-negative");
  return static_cast<int>(std::ceil(horizon / dt - 1e-9));
}

namespace {

ControlRecord initial_control(InitRule rule, const OpinionState& s, const Kernel& k, double dt, double penalty,
                              Interval range) {
  switch (rule) {
    case InitRule::classic:
      return control_classic(s, k, dt, penalty, range);
    case InitRule::consistent:
      return control_consistent(s, k, dt, penalty, range);
    case InitRule::no_reg:
      break;
  }
  return control_no_reg(s, k, dt, range);
}

}  // namespace

Trajectory simulate_micro(const MicroConfig& cfg) {
  validate(cfg.kernel);
  if (cfg.agents < 2) throw InvalidArgument("need at least one truth-teller besides the liar");
  if (!cfg.range.contains(cfg.goal)) throw InvalidArgument("goal opinion must lie in the interval");
  if (std::holds_alternative<BoundedConfidenceReg>(cfg.reg) && !std::holds_alternative<HardBounded>(cfg.kernel))
    throw InvalidArgument("bounded-confidence control requires the hard bounded kernel");

  OpinionState state;
  state.goal = cfg.goal;
  state.x = cfg.initial.empty() ? uniform_opinions(cfg.agents - 1, cfg.seed, cfg.range) : cfg.initial;
  if (state.x.size() + 1 != static_cast<std::size_t>(cfg.agents))
    throw DimensionMismatch("initial opinions must number agents - 1");
  for (double v : state.x)
    if (!cfg.range.contains(v)) throw InvalidArgument("initial opinions must lie in the interval");

  const int steps = step_count(cfg.horizon, cfg.dt);
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(state);

  for (int n = 0; n < steps; ++n) {
    const auto& cur = traj.states.back();
    ControlRecord ctrl = std::visit(
        [&](const auto& reg) -> ControlRecord {
          using R = std::decay_t<decltype(reg)>;
          if constexpr (std::is_same_v<R, NoRegularisation>) {
            return control_no_reg(cur, cfg.kernel, cfg.dt, cfg.range);
          } else if constexpr (std::is_same_v<R, ClassicReg>) {
            return control_classic(cur, cfg.kernel, cfg.dt, reg.penalty, cfg.range);
          } else if constexpr (std::is_same_v<R, ConsistentReg>) {
            return control_consistent(cur, cfg.kernel, cfg.dt, reg.penalty, cfg.range);
          } else if constexpr (std::is_same_v<R, TimeConsistentReg>) {
            if (n == 0) return initial_control(reg.init, cur, cfg.kernel, cfg.dt, reg.penalty, cfg.range);
            return control_time_consistent(cur, cfg.kernel, cfg.dt, reg.penalty, traj.controls.back().lies,
                                           cfg.range);
          } else if constexpr (std::is_same_v<R, VariantTimeConsistentReg>) {
            if (n == 0) return initial_control(reg.init, cur, cfg.kernel, cfg.dt, reg.penalty, cfg.range);
            return control_variant_tc(cur, traj.states[traj.states.size() - 2], cfg.kernel, cfg.dt, reg.penalty,
                                      traj.controls.back().lies, cfg.range);
          } else {
            return control_bounded_confidence(cur, std::get<HardBounded>(cfg.kernel).radius, cfg.dt, reg.penalty,
                                              cfg.range);
          }
        },
        cfg.reg);
    ctrl.step = n;
    auto next = step_micro(cur, ctrl, cfg.kernel, cfg.dt, cfg.range);
    next.t = (n + 1) * cfg.dt;
    traj.controls.push_back(std::move(ctrl));
    traj.states.push_back(std::move(next));
    traj.times.push_back((n + 1) * cfg.dt);
  }
  return traj;
}

}  // namespace liars
