#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "liars/model.hpp"

namespace liars {

// One truth-teller block at relative consensus facing the liar.
struct TwoParticleParams {
  double dt = 0.1;
  int agents = 50;
  double penalty = 1.0;
  bool truthful_only = false;  // the liar never lies (infinite penalty)
  double start = 1.0;
  double goal = 0.0;
};

struct KineticParams {
  double weight = 0.05;        // binary interaction strength, dt/2
  double strength = 1.0;       // constant kernel value
  double penalty = 1.0;        // binary regularisation
  double scaled_penalty = 1.0; // quasi-invariant regularisation
  double liar_mass = 0.5;
  double liar_rate = 1.0;      // liar interaction frequency
  double liar_time = 1.0;      // quasi-invariant liar time scale
  double truth_time = 1.0;
  double noise_scale = 0.1;
  double goal = 0.0;
};

double half_life(const TwoParticleParams& p);
// Smallest n with x^n < x^0 / 2 implied by the closed form.
int half_life_steps(const TwoParticleParams& p);
double two_particle_ratio(const TwoParticleParams& p);

double penalty_for_speedup(double dt, int agents, double factor);
double oscillation_threshold(double dt, int agents);
double lie_bound_penalty(double weight, double goal);

// Unprojected two-agent lie for a partner-independent kernel of value p.
double binary_lie_unprojected(double x, double weight, double penalty, double goal, double p);

double reach_penalty_threshold(std::span<const double> x0, double radius, double dt, double goal);

double mean_constant_kernel(double t, double m0, const KineticParams& p);
double quasi_mean_rate(const KineticParams& p);
double variance_rate_sign(const KineticParams& p);
bool variance_decay_guaranteed(const KineticParams& p);

// Stationary densities up to a constant, with D(x) = 1 - x^2.
double log_steady_state_constant(double x, const KineticParams& p);
double steady_state_constant(double x, const KineticParams& p);
double log_steady_state_quadratic(double x, const KineticParams& p);
double steady_state_quadratic(double x, const KineticParams& p);

// Density on (-1, 1) normalised by adaptive quadrature.
class NormalisedDensity {
 public:
  explicit NormalisedDensity(std::function<double(double)> log_density);

  double operator()(double x) const;
  double cell_average(double a, double b) const;
  double mode() const;

 private:
  std::function<double(double)> log_density_;
  double shift_ = 0.0;
  double norm_ = 1.0;
};

NormalisedDensity normalised_constant(const KineticParams& p);
NormalisedDensity normalised_quadratic(const KineticParams& p);

struct LiarWeight {
  double mass = 0.0;
  double rate = 1.0;
  double goal = 0.0;
};

double multi_liar_mean_limit(std::span<const LiarWeight> liars);

inline constexpr double infinite_penalty = std::numeric_limits<double>::infinity();

}  // namespace liars
