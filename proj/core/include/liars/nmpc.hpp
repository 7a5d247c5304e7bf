#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "liars/micro.hpp"
#include "liars/model.hpp"
#include "liars/rng.hpp"

namespace liars {

enum class Norm { l1, l2 };

struct PsoParams {
  int swarm = 50;
  int iterations = 200;
  double tolerance = 1e-8;
  double cognitive = 1.5;
  double social = 1.5;
  double warm_variance = 0.01;
  double initial_speed = 0.1;
  double inertia = 0.7298;  // 1.0 is the undamped update, which does not settle
};

struct PsoResult {
  std::vector<double> position;
  double value = 0.0;
  int sweeps = 0;
};

using CostFn = std::function<double(std::span<const double>)>;

// warm_start empty: positions drawn uniformly on the interval.
PsoResult pso_minimize(const CostFn& cost, int dim, const PsoParams& params, CounterRng& rng,
                       std::span<const double> warm_start = {}, Interval range = {});

// Lies are stored row-major: (horizon + 1) rows of N - 1 entries.
double horizon_cost(std::span<const double> lies, int horizon, const OpinionState& s, const Kernel& k, double dt,
                    double penalty, Norm norm);

// Same cost when every truth-teller sits at one opinion and gets the same
// lie: one truth-teller of weight N - 1 against the liar.
double collapsed_cost(std::span<const double> lies, double x, int agents, double goal, const Kernel& k, double dt,
                      double penalty, Norm norm);

struct NmpcConfig {
  int agents = 11;
  double dt = 0.1;
  double horizon_time = 5.0;
  int horizon = 3;
  Kernel kernel = SelfDependent{};
  double penalty = 0.0155;
  Norm norm = Norm::l1;
  double goal = 0.0;
  std::vector<double> initial;
  PsoParams pso{};
  double consensus_tol = 1e-3;
  std::uint64_t seed = 1;
  Interval range{};
};

// Rows are agents, columns are steps; entries |y_i^n - goal|.
struct LieMagnitudeMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  double at(int agent, int step) const { return values[static_cast<std::size_t>(agent) * cols + step]; }
};

struct NmpcResult {
  Trajectory trajectory;
  LieMagnitudeMatrix magnitudes;
};

NmpcResult nmpc_simulate(const NmpcConfig& cfg);

struct SparsityMetrics {
  double fraction_zero = 0.0;
  double l1_total = 0.0;
  double max_entry = 0.0;
};

SparsityMetrics sparsity_metrics(const LieMagnitudeMatrix& m, double zero_tol);

std::vector<double> reference_opinions();

}  // namespace liars
