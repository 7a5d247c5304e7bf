#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "liars/model.hpp"

namespace liars {

struct ControlRecord {
  std::vector<double> lies;  // what each truth-teller is told
  std::vector<double> raw;   // before projection
  int step = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<OpinionState> states;
  std::vector<ControlRecord> controls;
};

enum class InitRule { no_reg, classic, consistent };

struct NoRegularisation {};
struct ClassicReg {
  double penalty = 1e-2;
};
struct ConsistentReg {
  double penalty = 1e-2;
};
struct TimeConsistentReg {
  double penalty = 1e-2;
  InitRule init = InitRule::no_reg;
};
struct VariantTimeConsistentReg {
  double penalty = 1e-2;
  InitRule init = InitRule::no_reg;
};
// Hard bounded-confidence liar; the radius comes from the HardBounded kernel.
struct BoundedConfidenceReg {
  double penalty = 1e-3;
};

using Regularisation = std::variant<NoRegularisation, ClassicReg, ConsistentReg, TimeConsistentReg,
                                    VariantTimeConsistentReg, BoundedConfidenceReg>;

ControlRecord control_no_reg(const OpinionState& s, const Kernel& k, double dt, Interval range = {});
ControlRecord control_classic(const OpinionState& s, const Kernel& k, double dt, double penalty,
                              Interval range = {});
ControlRecord control_consistent(const OpinionState& s, const Kernel& k, double dt, double penalty,
                                 Interval range = {});
ControlRecord control_time_consistent(const OpinionState& s, const Kernel& k, double dt, double penalty,
                                      std::span<const double> prev_lies, Interval range = {});
ControlRecord control_variant_tc(const OpinionState& s, const OpinionState& prev, const Kernel& k, double dt,
                                 double penalty, std::span<const double> prev_lies, Interval range = {});
ControlRecord control_bounded_confidence(const OpinionState& s, double radius, double dt, double penalty,
                                         Interval range = {});

// Lie for a single truth-teller facing the liar alone (two-agent classic
// control); used by the binary interaction rules.
double binary_lie(double x, double weight, double penalty, double goal, const Kernel& k, Interval range = {});

OpinionState step_micro(const OpinionState& s, const ControlRecord& ctrl, const Kernel& k, double dt,
                        Interval range = {});

struct MicroConfig {
  int agents = 50;  // including the liar
  double dt = 0.1;
  double horizon = 10.0;
  Kernel kernel = SelfDependent{};
  Regularisation reg = NoRegularisation{};
  double goal = 0.0;
  std::vector<double> initial;  // empty: uniform draw from the seed
  std::uint64_t seed = 1;
  Interval range{};
};

std::vector<double> uniform_opinions(int count, std::uint64_t seed, Interval range = {});

int step_count(double horizon, double dt);

Trajectory simulate_micro(const MicroConfig& cfg);

}  // namespace liars
