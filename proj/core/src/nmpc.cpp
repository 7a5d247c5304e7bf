#include "liars/nmpc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liars/errors.hpp"

namespace liars {
namespace {

double penalty_term(double dev, Norm norm) { return norm == Norm::l1 ? std::abs(dev) : dev * dev; }

}  // namespace

PsoResult pso_minimize(const CostFn& cost, int dim, const PsoParams& params, CounterRng& rng,
                       std::span<const double> warm_start, Interval range) {
  if (dim < 1) throw InvalidArgument("search dimension must be at least 1");
  if (params.swarm < 2 || params.iterations < 1) throw InvalidArgument("swarm needs >= 2 particles and >= 1 sweep");
  if (!warm_start.empty() && warm_start.size() != static_cast<std::size_t>(dim))
    throw DimensionMismatch("warm start must match the search dimension");

  const auto d = static_cast<std::size_t>(dim);
  const auto k = static_cast<std::size_t>(params.swarm);
  const double spread = std::sqrt(params.warm_variance);
  std::vector<double> pos(k * d), vel(k * d), best(k * d), best_cost(k);

  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t j = 0; j < d; ++j) {
      double v = warm_start.empty() ? rng.uniform(range.lo, range.hi) : warm_start[j] + spread * rng.normal();
      pos[p * d + j] = project(v, range);
      vel[p * d + j] = rng.uniform(-params.initial_speed, params.initial_speed);
    }
    best_cost[p] = cost(std::span<const double>(pos.data() + p * d, d));
  }
  best = pos;
  auto leader = static_cast<std::size_t>(std::min_element(best_cost.begin(), best_cost.end()) - best_cost.begin());

  int sweep = 0;
  while (sweep < params.iterations && best_cost[leader] >= params.tolerance) {
    for (std::size_t p = 0; p < k; ++p) {
      double* x = pos.data() + p * d;
      double* v = vel.data() + p * d;
      const double* own = best.data() + p * d;
      const double* lead = best.data() + leader * d;
      for (std::size_t j = 0; j < d; ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        v[j] = params.inertia * v[j] + params.cognitive * r1 * (own[j] - x[j]) + params.social * r2 * (lead[j] - x[j]);
        x[j] = project(x[j] + v[j], range);
      }
      const double c = cost(std::span<const double>(x, d));
      if (c < best_cost[p]) {
        best_cost[p] = c;
        std::copy(x, x + d, best.begin() + static_cast<std::ptrdiff_t>(p * d));
      }
    }
    leader = static_cast<std::size_t>(std::min_element(best_cost.begin(), best_cost.end()) - best_cost.begin());
    ++sweep;
  }

  PsoResult out;
  out.position.assign(best.begin() + static_cast<std::ptrdiff_t>(leader * d),
                      best.begin() + static_cast<std::ptrdiff_t>((leader + 1) * d));
  out.value = best_cost[leader];
  out.sweeps = sweep;
  return out;
}

double horizon_cost(std::span<const double> lies, int horizon, const OpinionState& s, const Kernel& k, double dt,
                    double penalty, Norm norm) {
  const std::size_t n = s.x.size();
  if (horizon < 0 || lies.size() != static_cast<std::size_t>(horizon + 1) * n)
    throw DimensionMismatch("horizon lies must have (H + 1)(N - 1) entries");
  const double w = dt / s.agents();
  OpinionState cur = s;
  ControlRecord ctrl;
  double total = 0.0;
  for (int h = 0; h <= horizon; ++h) {
    auto row = lies.subspan(static_cast<std::size_t>(h) * n, n);
    ctrl.lies.assign(row.begin(), row.end());
    const auto drift = hk_drift(cur, k, ctrl.lies);
    double stage = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cur.x[i] += dt * drift[i];
      const double e = cur.x[i] - s.goal;
      stage += 0.5 * e * e + penalty * penalty_term(row[i] - s.goal, norm);
    }
    total += w * stage;
  }
  return total;
}

double collapsed_cost(std::span<const double> lies, double x, int agents, double goal, const Kernel& k, double dt,
                      double penalty, Norm norm) {
  const double w = dt / agents;
  const double count = agents - 1;
  double total = 0.0;
  for (double y : lies) {
    x += w * eval_kernel(k, x, y) * (y - x);
    const double e = x - goal;
    total += w * count * (0.5 * e * e + penalty * penalty_term(y - goal, norm));
  }
  return total;
}

NmpcResult nmpc_simulate(const NmpcConfig& cfg) {
  validate(cfg.kernel);
  if (cfg.agents < 2) throw InvalidArgument("need at least one truth-teller");
  if (cfg.horizon < 0) throw InvalidArgument("horizon must be non-negative");
  if (!(cfg.penalty >= 0.0)) throw InvalidArgument("penalty must be non-negative");

  OpinionState state;
  state.goal = cfg.goal;
  state.x = cfg.initial.empty() ? uniform_opinions(cfg.agents - 1, cfg.seed, cfg.range) : cfg.initial;
  if (state.x.size() + 1 != static_cast<std::size_t>(cfg.agents))
    throw DimensionMismatch("initial opinions must number agents - 1");

  const int steps = step_count(cfg.horizon_time, cfg.dt);
  const std::size_t n = state.x.size();
  const std::size_t rows = static_cast<std::size_t>(cfg.horizon) + 1;
  CounterRng rng(cfg.seed, 1);

  NmpcResult out;
  out.trajectory.times.push_back(0.0);
  out.trajectory.states.push_back(state);
  out.magnitudes.rows = static_cast<int>(n);
  out.magnitudes.cols = steps;
  out.magnitudes.values.assign(n * static_cast<std::size_t>(steps), 0.0);

  std::vector<double> previous;
  for (int step = 0; step < steps; ++step) {
    const auto& cur = out.trajectory.states.back();
    const auto [lo, hi] = std::minmax_element(cur.x.begin(), cur.x.end());
    ControlRecord ctrl;
    ctrl.step = step;

    if (*hi - *lo < cfg.consensus_tol) {
      double centre = 0.0;
      for (double v : cur.x) centre += v;
      centre /= static_cast<double>(n);
      auto cost = [&](std::span<const double> y) {
        return collapsed_cost(y, centre, cfg.agents, cfg.goal, cfg.kernel, cfg.dt, cfg.penalty, cfg.norm);
      };
      std::vector<double> warm;
      if (!previous.empty()) {
        double avg = 0.0;
        for (double v : previous) avg += v;
        warm.assign(rows, avg / static_cast<double>(previous.size()));
      }
      const auto res = pso_minimize(cost, static_cast<int>(rows), cfg.pso, rng, warm, cfg.range);
      ctrl.lies.assign(n, res.position.front());
    } else {
      auto cost = [&](std::span<const double> y) {
        return horizon_cost(y, cfg.horizon, cur, cfg.kernel, cfg.dt, cfg.penalty, cfg.norm);
      };
      std::vector<double> warm;
      if (!previous.empty())
        for (std::size_t h = 0; h < rows; ++h) warm.insert(warm.end(), previous.begin(), previous.end());
      const auto res = pso_minimize(cost, static_cast<int>(rows * n), cfg.pso, rng, warm, cfg.range);
      ctrl.lies.assign(res.position.begin(), res.position.begin() + static_cast<std::ptrdiff_t>(n));
    }
    ctrl.raw = ctrl.lies;
    previous = ctrl.lies;
    for (std::size_t i = 0; i < n; ++i)
      out.magnitudes.values[i * static_cast<std::size_t>(steps) + static_cast<std::size_t>(step)] =
          std::abs(ctrl.lies[i] - cfg.goal);

    auto next = step_micro(cur, ctrl, cfg.kernel, cfg.dt, cfg.range);
    next.t = (step + 1) * cfg.dt;
    out.trajectory.controls.push_back(std::move(ctrl));
    out.trajectory.states.push_back(std::move(next));
    out.trajectory.times.push_back((step + 1) * cfg.dt);
  }
  return out;
}

SparsityMetrics sparsity_metrics(const LieMagnitudeMatrix& m, double zero_tol) {
  if (zero_tol < 0.0) throw InvalidArgument("zero tolerance must be non-negative");
  SparsityMetrics s;
  if (m.values.empty()) {
    s.fraction_zero = 1.0;
    return s;
  }
  std::size_t zeros = 0;
  for (double v : m.values) {
    if (v < zero_tol || v == 0.0) ++zeros;
    s.l1_total += v;
    s.max_entry = std::max(s.max_entry, v);
  }
  s.fraction_zero = static_cast<double>(zeros) / static_cast<double>(m.values.size());
  return s;
}

std::vector<double> reference_opinions() {
  return {-0.275, -0.387, -0.431, 0.716, -0.883, -0.885, -0.932, 0.177, -0.208, 0.986};
}

}  // namespace liars
