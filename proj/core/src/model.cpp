#include "liars/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "liars/errors.hpp"

namespace liars {
namespace {

// Closed confidence band; the slack absorbs roundoff for lies placed
// exactly on the band edge.
constexpr double band_slack = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double blend(Blend b, double t) {
  if (b == Blend::quintic) return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
  return 1.0 - t * t * (3.0 - 2.0 * t);
}

double blend_d1(Blend b, double t) {
  if (b == Blend::quintic) return -30.0 * t * t * (1.0 - t) * (1.0 - t);
  return -6.0 * t * (1.0 - t);
}

double blend_d2(Blend b, double t) {
  if (b == Blend::quintic) return -60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
  return -6.0 * (1.0 - 2.0 * t);
}

double self_weight(double x) { return std::max(0.0, 1.0 - x * x); }

}  // namespace

double project(double v, Interval range) { return std::clamp(v, range.lo, range.hi); }

void validate(const Kernel& k) {
  std::visit(overloaded{
                 [](const Constant& c) {
                   if (!(c.value >= 0.0 && c.value <= 1.0))
                     throw InvalidArgument("constant kernel value must lie in [0, 1]");
                 },
                 [](const SelfDependent&) {},
                 [](const HardBounded& h) {
                   if (!(h.radius > 0.0 && h.radius <= 2.0))
                     throw InvalidArgument("confidence radius must lie in (0, 2]");
                 },
                 [](const SmoothedBounded& s) {
                   if (!(s.inner > 0.0 && s.inner < s.outer && s.outer <= 2.0))
                     throw InvalidArgument("smoothed kernel needs 0 < inner < outer <= 2");
                 },
             },
             k);
}

std::string describe(const Kernel& k) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const Constant& c) { out << "constant(" << c.value << ")"; },
                 [&](const SelfDependent&) { out << "self-dependent"; },
                 [&](const HardBounded& h) { out << "hard-bounded(" << h.radius << ")"; },
                 [&](const SmoothedBounded& s) {
                   out << "smoothed-bounded(" << s.inner << "," << s.outer << ","
                       << (s.blend == Blend::quintic ? "quintic" : "cubic") << ")";
                 },
             },
             k);
  return out.str();
}

bool partner_independent(const Kernel& k) {
  return std::holds_alternative<Constant>(k) || std::holds_alternative<SelfDependent>(k);
}

double smoothed_profile(const SmoothedBounded& k, double dist) {
  if (dist <= k.inner) return 1.0;
  if (dist >= k.outer) return 0.0;
  return blend(k.blend, (dist - k.inner) / (k.outer - k.inner));
}

double smoothed_profile_d1(const SmoothedBounded& k, double dist) {
  if (dist <= k.inner || dist >= k.outer) return 0.0;
  const double w = k.outer - k.inner;
  return blend_d1(k.blend, (dist - k.inner) / w) / w;
}

double smoothed_profile_d2(const SmoothedBounded& k, double dist) {
  if (dist <= k.inner || dist >= k.outer) return 0.0;
  const double w = k.outer - k.inner;
  return blend_d2(k.blend, (dist - k.inner) / w) / (w * w);
}

double eval_kernel(const Kernel& k, double x, double y) {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.value; },
                        [&](const SelfDependent&) { return self_weight(x); },
                        [&](const HardBounded& h) {
                          return std::abs(y - x) <= h.radius + band_slack ? 1.0 : 0.0;
                        },
                        [&](const SmoothedBounded& s) { return smoothed_profile(s, std::abs(y - x)); },
                    },
                    k);
}

double eval_influence_dy(const Kernel& k, double x, double y) {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.value; },
                        [&](const SelfDependent&) { return self_weight(x); },
                        [](const HardBounded&) -> double {
                          throw NotDifferentiable("hard bounded kernel has no derivative; use the smoothed kernel");
                        },
                        [&](const SmoothedBounded& s) {
                          const double d = std::abs(y - x);
                          return smoothed_profile(s, d) + d * smoothed_profile_d1(s, d);
                        },
                    },
                    k);
}

double eval_influence_dyy(const Kernel& k, double x, double y) {
  return std::visit(overloaded{
                        [](const Constant&) { return 0.0; },
                        [](const SelfDependent&) { return 0.0; },
                        [](const HardBounded&) -> double {
                          throw NotDifferentiable("hard bounded kernel has no derivative; use the smoothed kernel");
                        },
                        [&](const SmoothedBounded& s) {
                          const double offset = y - x;
                          const double d = std::abs(offset);
                          const double mag = 2.0 * smoothed_profile_d1(s, d) + d * smoothed_profile_d2(s, d);
                          return offset < 0.0 ? -mag : mag;
                        },
                    },
                    k);
}

double eval_diffusion(Diffusion d, double x) {
  if (d == Diffusion::zero) return 0.0;
  return std::max(0.0, 1.0 - x * x);
}

std::string describe(Diffusion d) { return d == Diffusion::zero ? "zero" : "one-minus-x-sq"; }

std::vector<double> peer_pull(std::span<const double> x, const Kernel& k) {
  const std::size_t n = x.size();
  std::vector<double> pull(n, 0.0);
  if (partner_independent(k)) {
    double total = 0.0;
    for (double v : x) total += v;
    for (std::size_t i = 0; i < n; ++i)
      pull[i] = eval_kernel(k, x[i], x[i]) * (total - static_cast<double>(n) * x[i]);
    return pull;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += eval_kernel(k, x[i], x[j]) * (x[j] - x[i]);
    pull[i] = acc;
  }
  return pull;
}

std::vector<double> hk_drift(const OpinionState& s, const Kernel& k, std::span<const double> lies) {
  if (lies.size() != s.x.size()) throw DimensionMismatch("one lie per truth-teller is required");
  auto drift = peer_pull(s.x, k);
  const double inv = 1.0 / s.agents();
  for (std::size_t i = 0; i < drift.size(); ++i)
    drift[i] = inv * (eval_kernel(k, s.x[i], lies[i]) * (lies[i] - s.x[i]) + drift[i]);
  return drift;
}

}  // namespace liars
