#include "liars/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liars/errors.hpp"
#include "liars/micro.hpp"

namespace liars {
namespace {

constexpr double roundoff = 1e-12;

double settle(double v) {
  if (v < -1.0 - roundoff || v > 1.0 + roundoff)
    throw BoundViolation("binary interaction left the interval; noise exceeds the admissible box");
  return project(v);
}

// Smallest (1 - x)/D(x) over the support of D.
double edge_room(Diffusion d) {
  return d == Diffusion::zero ? std::numeric_limits<double>::infinity() : 0.5;
}

}  // namespace

std::pair<double, double> tt_interaction(double x, double partner, double weight, const Kernel& k, double noise,
                                         double partner_noise, Diffusion d) {
  const double a = x + weight * eval_kernel(k, x, partner) * (partner - x) + noise * eval_diffusion(d, x);
  const double b =
      partner + weight * eval_kernel(k, partner, x) * (x - partner) + partner_noise * eval_diffusion(d, partner);
  return {settle(a), settle(b)};
}

double tl_interaction(double x, double weight, double penalty, double goal, const Kernel& k, double noise,
                      Diffusion d) {
  const double lie = binary_lie(x, weight, penalty, goal, k);
  return settle(x + weight * eval_kernel(k, x, lie) * (lie - x) + noise * eval_diffusion(d, x));
}

NoiseBounds noise_bounds(Diffusion d, double weight, double penalty) {
  if (!(weight < 1.0)) throw InvalidArgument("interaction weight must be below 1");
  const double room = edge_room(d);
  const double liar_pull =
      std::isinf(penalty) ? weight : weight * (penalty + weight) / (penalty + weight * weight);
  return {-(1.0 - weight) * room, (1.0 - weight) * room, -(1.0 - liar_pull) * room, (1.0 - liar_pull) * room};
}

double sample_noise(CounterRng& rng, double variance, double lo, double hi) {
  if (lo > 0.0 || hi < 0.0) throw InvalidArgument("noise box must contain zero");
  if (!(variance > 0.0)) return 0.0;
  const double w = std::min({hi, -lo, std::sqrt(3.0 * variance)});
  return rng.uniform(-w, w);
}

double liar_probability(const McConfig& cfg) {
  return cfg.liar_probability ? *cfg.liar_probability : 1.0 / cfg.agents;
}

KineticParams equivalent_params(const McConfig& cfg, double strength) {
  KineticParams p;
  p.weight = 0.5 * cfg.dt;
  p.strength = strength;
  p.penalty = cfg.penalty;
  p.liar_mass = 1.0;
  p.liar_rate = liar_probability(cfg) / cfg.dt;
  p.goal = cfg.goal;
  return p;
}

McResult mc_run(const McConfig& cfg) {
  validate(cfg.kernel);
  if (cfg.samples < 2 || cfg.steps < 0 || !(cfg.dt > 0.0)) throw InvalidArgument("bad Monte Carlo sizes");
  const double pl = liar_probability(cfg);
  if (!(pl >= 0.0 && pl <= 1.0)) throw InvalidArgument("liar probability must lie in [0, 1]");
  if (cfg.init_lo < -1.0 || cfg.init_hi > 1.0 || !(cfg.init_lo < cfg.init_hi))
    throw InvalidArgument("initial range must be a sub-interval of [-1, 1]");
  const double weight = 0.5 * cfg.dt;
  const auto box = noise_bounds(cfg.diffusion, weight, cfg.penalty);
  const bool noisy = cfg.noise_variance > 0.0 && cfg.diffusion != Diffusion::zero;

  const auto n = static_cast<std::size_t>(cfg.samples);
  std::vector<CounterRng> streams;
  streams.reserve(n);
  for (std::size_t i = 0; i < n; ++i) streams.emplace_back(cfg.seed, i + 1);

  CounterRng init(cfg.seed, 0);
  std::vector<double> x(n), frozen(n);
  for (auto& v : x) v = init.uniform(cfg.init_lo, cfg.init_hi);

  McResult out;
  auto record = [&](double t) {
    double m = 0.0, s = 0.0;
    for (double v : x) {
      m += v;
      s += v * v;
    }
    out.times.push_back(t);
    out.mean.push_back(m / static_cast<double>(n));
    out.second_moment.push_back(s / static_cast<double>(n));
  };
  record(0.0);

  for (int step = 0; step < cfg.steps; ++step) {
    frozen = x;
    for (std::size_t i = 0; i < n; ++i) {
      auto& rng = streams[i];
      const double u = rng.uniform();
      if (u < pl) {
        const double noise = noisy ? sample_noise(rng, cfg.noise_variance, box.liar_lo, box.liar_hi) : 0.0;
        x[i] = tl_interaction(frozen[i], weight, cfg.penalty, cfg.goal, cfg.kernel, noise, cfg.diffusion);
      } else {
        std::size_t j = rng.index(n - 1);
        if (j >= i) ++j;
        const double noise = noisy ? sample_noise(rng, cfg.noise_variance, box.truth_lo, box.truth_hi) : 0.0;
        const double xi = frozen[i];
        x[i] = settle(xi + weight * eval_kernel(cfg.kernel, xi, frozen[j]) * (frozen[j] - xi) +
                      noise * eval_diffusion(cfg.diffusion, xi));
      }
    }
    record((step + 1) * cfg.dt);
  }

  if (cfg.histogram_bins > 0) {
    const auto bins = static_cast<std::size_t>(cfg.histogram_bins);
    out.histogram.assign(bins, 0.0);
    const double width = 2.0 / static_cast<double>(bins);
    for (double v : x) {
      auto b = static_cast<std::size_t>((v + 1.0) / width);
      out.histogram[std::min(b, bins - 1)] += 1.0;
    }
    for (auto& h : out.histogram) h /= static_cast<double>(n) * width;
  }
  out.samples = std::move(x);
  return out;
}

}  // namespace liars
