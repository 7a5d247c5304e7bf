#include "liars/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "liars/errors.hpp"

namespace liars {
namespace {

constexpr double edge_cut = 1e-12;

void check_two_particle(const TwoParticleParams& p) {
  if (!(p.dt > 0.0) || p.agents < 2) throw InvalidArgument("two-particle system needs dt > 0 and N >= 2");
  if (!(p.dt / p.agents < 1.0)) throw InvalidArgument("two-particle system needs dt/N < 1");
  if (!p.truthful_only && !(p.penalty > 0.0)) throw InvalidArgument("penalty must be positive");
}

double boost_term(const TwoParticleParams& p) {
  if (p.truthful_only || std::isinf(p.penalty)) return 0.0;
  const double n = p.agents;
  return std::log1p(p.dt * p.dt / (p.penalty * n * n));
}

}  // namespace

double two_particle_ratio(const TwoParticleParams& p) {
  check_two_particle(p);
  return std::exp(std::log1p(-p.dt / p.agents) - boost_term(p));
}

double half_life(const TwoParticleParams& p) {
  check_two_particle(p);
  return -p.dt * std::numbers::ln2 / (std::log1p(-p.dt / p.agents) - boost_term(p));
}

int half_life_steps(const TwoParticleParams& p) {
  return static_cast<int>(std::floor(half_life(p) / p.dt)) + 1;
}

double penalty_for_speedup(double dt, int agents, double factor) {
  if (!(factor > 1.0)) throw InvalidSpeedup("speed-up factor must exceed 1");
  const double n = agents;
  return (dt * dt / (n * n)) / std::expm1((1.0 - factor) * std::log1p(-dt / n));
}

double oscillation_threshold(double dt, int agents) {
  if (!(dt / agents < 1.0)) throw InvalidArgument("oscillation threshold needs dt/N < 1");
  return 4.0 * dt * dt * (1.0 - dt / agents);
}

double lie_bound_penalty(double weight, double goal) {
  const double a = std::abs(goal);
  if (a >= 1.0) return infinite_penalty;
  return weight * (1.0 + a) / (1.0 - a);
}

double binary_lie_unprojected(double x, double weight, double penalty, double goal, double p) {
  const double ap = weight * p;
  return ((penalty + ap) * goal - ap * (1.0 - ap) * x) / (penalty + ap * ap);
}

double reach_penalty_threshold(std::span<const double> x0, double radius, double dt, double goal) {
  if (x0.empty()) throw InvalidArgument("need at least one truth-teller");
  const double n = static_cast<double>(x0.size()) + 1.0;
  if (!(dt < 2.0 * n / (2.0 * n + 1.0))) throw InvalidArgument("time step too large for the threshold formula");
  std::size_t far = 0;
  for (std::size_t j = 1; j < x0.size(); ++j)
    if (std::abs(x0[j] - goal) > std::abs(x0[far] - goal)) far = j;
  const double gap = x0[far] - goal;
  if (std::abs(gap) <= radius) throw TrivialReach("the liar already reaches every agent");
  const Kernel band = HardBounded{radius};
  double pull = 0.0;
  for (double xj : x0) pull += eval_kernel(band, x0[far], xj) * (xj - x0[far]);
  const double sign = gap > 0.0 ? 1.0 : -1.0;
  const double r = dt / n;
  const double dist = std::abs(gap);
  return r * (radius * dist - r * radius * (0.5 * radius - sign * pull)) / ((radius - dist) * (radius - dist));
}

double mean_constant_kernel(double t, double m0, const KineticParams& p) {
  const double ap = p.weight * p.strength;
  const double speed = p.liar_mass * p.liar_rate * (p.penalty * ap + ap * ap) / (p.penalty + ap * ap);
  return (m0 - p.goal) * std::exp(-speed * t) + p.goal;
}

double quasi_mean_rate(const KineticParams& p) {
  if (!(p.scaled_penalty > 0.0)) throw InvalidArgument("scaled penalty must be positive");
  const double s = p.strength;
  return (p.liar_mass / p.liar_time) * (p.scaled_penalty * s + s * s) / p.scaled_penalty;
}

bool variance_decay_guaranteed(const KineticParams& p) {
  const double ap = p.weight * p.strength;
  const double gain = (p.penalty + ap) / (p.penalty + ap * ap);
  return ap <= 1.0 && ap * gain <= 2.0;
}

double variance_rate_sign(const KineticParams& p) {
  // Coefficient of the liar's contribution to d/dt E[(x - goal)^2] for a constant kernel.
  const double ap = p.weight * p.strength;
  const double g = ap * (p.penalty + ap) / (p.penalty + ap * ap);
  const double c = g * g - 2.0 * g;
  return c < 0.0 ? -1.0 : (c > 0.0 ? 1.0 : 0.0);
}

double log_steady_state_constant(double x, const KineticParams& p) {
  if (std::abs(x) >= 1.0) return -std::numeric_limits<double>::infinity();
  const double s = p.strength;
  double a = s / p.noise_scale;
  if (std::isfinite(p.scaled_penalty))
    a += s * s / (p.scaled_penalty * p.noise_scale) * p.liar_mass / (p.liar_time / p.truth_time + p.liar_mass);
  const double q = 1.0 - x * x;
  return -2.0 * std::log(q) + 0.5 * a * p.goal * (std::log1p(x) - std::log1p(-x)) - a * (1.0 - p.goal * x) / q;
}

double steady_state_constant(double x, const KineticParams& p) { return std::exp(log_steady_state_constant(x, p)); }

double log_steady_state_quadratic(double x, const KineticParams& p) {
  if (std::abs(x) >= 1.0) return -std::numeric_limits<double>::infinity();
  const double z = p.noise_scale;
  double v = (1.0 / z - 2.0) * std::log1p(-x * x) + (p.goal / z) * (std::log1p(x) - std::log1p(-x));
  if (std::isfinite(p.scaled_penalty)) {
    const double b = 1.0 / p.truth_time + p.liar_mass / p.liar_time;
    v -= p.liar_mass * (x * x - 2.0 * p.goal * x) / (b * p.liar_time * p.scaled_penalty * z);
  }
  return v;
}

double steady_state_quadratic(double x, const KineticParams& p) { return std::exp(log_steady_state_quadratic(x, p)); }

NormalisedDensity::NormalisedDensity(std::function<double(double)> log_density)
    : log_density_(std::move(log_density)) {
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < 4000; ++i) peak = std::max(peak, log_density_(-1.0 + i / 2000.0));
  shift_ = peak;
  auto f = [this](double x) { return std::exp(log_density_(x) - shift_); };
  norm_ = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, -1.0 + edge_cut, 1.0 - edge_cut, 20,
                                                                          1e-12);
}

double NormalisedDensity::operator()(double x) const {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(log_density_(x) - shift_) / norm_;
}

double NormalisedDensity::cell_average(double a, double b) const {
  auto f = [this](double x) { return (*this)(x); };
  return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b) / (b - a);
}

double NormalisedDensity::mode() const {
  double best = -1.0, value = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < 200000; ++i) {
    const double x = -1.0 + i / 100000.0;
    const double v = log_density_(x);
    if (v > value) {
      value = v;
      best = x;
    }
  }
  return best;
}

NormalisedDensity normalised_constant(const KineticParams& p) {
  return NormalisedDensity([p](double x) { return log_steady_state_constant(x, p); });
}

NormalisedDensity normalised_quadratic(const KineticParams& p) {
  return NormalisedDensity([p](double x) { return log_steady_state_quadratic(x, p); });
}

double multi_liar_mean_limit(std::span<const LiarWeight> liars) {
  if (liars.empty()) throw InvalidArgument("need at least one liar");
  double num = 0.0, den = 0.0;
  for (const auto& l : liars) {
    num += l.mass * l.rate * l.goal;
    den += l.mass * l.rate;
  }
  if (!(den > 0.0)) throw InvalidArgument("liar weights must have positive total");
  return num / den;
}

}  // namespace liars
