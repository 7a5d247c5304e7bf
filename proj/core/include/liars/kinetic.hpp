#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "liars/analysis.hpp"
#include "liars/model.hpp"
#include "liars/rng.hpp"

namespace liars {

struct NoiseBounds {
  double truth_lo = 0.0;
  double truth_hi = 0.0;
  double liar_lo = 0.0;
  double liar_hi = 0.0;
};

std::pair<double, double> tt_interaction(double x, double partner, double weight, const Kernel& k, double noise,
                                         double partner_noise, Diffusion d);

// Truth-teller meets the liar, who answers with the two-agent optimal lie.
double tl_interaction(double x, double weight, double penalty, double goal, const Kernel& k, double noise,
                      Diffusion d);

NoiseBounds noise_bounds(Diffusion d, double weight, double penalty);

double sample_noise(CounterRng& rng, double variance, double lo, double hi);

struct McConfig {
  int samples = 10000;
  double dt = 0.1;  // interaction weight is dt / 2
  int steps = 100;
  int agents = 50;  // liar met with probability 1 / agents
  std::optional<double> liar_probability;
  double penalty = 0.05;
  double goal = 0.0;
  Kernel kernel = Constant{1.0};
  Diffusion diffusion = Diffusion::zero;
  double noise_variance = 0.0;
  double init_lo = -1.0;
  double init_hi = 1.0;
  std::uint64_t seed = 1;
  int histogram_bins = 0;
};

struct McResult {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> second_moment;
  std::vector<double> samples;    // final ensemble
  std::vector<double> histogram;  // density on histogram_bins cells of [-1, 1]
};

double liar_probability(const McConfig& cfg);

// Boltzmann parameters equivalent to the per-step protocol, for the mean law.
KineticParams equivalent_params(const McConfig& cfg, double strength);

McResult mc_run(const McConfig& cfg);

}  // namespace liars
