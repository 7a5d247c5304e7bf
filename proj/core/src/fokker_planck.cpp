#include "liars/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "liars/analysis.hpp"
#include "liars/errors.hpp"

namespace liars {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double negative_floor = -1e-9;

void check(const FpConfig& cfg) {
  validate(cfg.kernel);
  if (cfg.cells < 3) throw InvalidArgument("finite-volume grid needs at least 3 cells");
  if (!(cfg.truth_time > 0.0)) throw InvalidArgument("truth_time must be positive");
  if (!(cfg.noise_scale >= 0.0)) throw InvalidArgument("noise_scale must be non-negative");
  if (!(cfg.horizon > 0.0)) throw InvalidArgument("horizon must be positive");
  if (cfg.dt < 0.0) throw InvalidArgument("dt must be non-negative");
  if (cfg.snapshot_every < 0) throw InvalidArgument("snapshot_every must be non-negative");
  const Interval range{};
  for (const auto& l : cfg.liars) {
    if (!(l.scaled_penalty > 0.0)) throw InvalidArgument("liar scaled_penalty must be positive");
    if (!(l.mass >= 0.0)) throw InvalidArgument("liar mass must be non-negative");
    if (!(l.time > 0.0)) throw InvalidArgument("liar time must be positive");
    if (!range.contains(l.goal)) throw InvalidArgument("liar goal must lie in the opinion interval");
  }
  if (const auto* g = std::get_if<GaussianMixtureInit>(&cfg.init)) {
    if (g->centres.empty() || !(g->sharpness > 0.0))
      throw InvalidArgument("gaussian mixture needs centres and a positive sharpness");
  }
}

// Largest |x' - x| P(x, x') over the interval, used for the drift bound.
double interaction_reach(const Kernel& k) {
  return std::visit(overloaded{
                        [](const Constant& c) { return 2.0 * std::abs(c.value); },
                        [](const SelfDependent&) { return 2.0; },
                        [](const HardBounded& h) { return h.radius; },
                        [](const SmoothedBounded& s) { return s.outer; },
                    },
                    k);
}

// Breakpoints of y -> P(x, y) on either side of x.
std::vector<double> breaks(const Kernel& k) {
  if (const auto* h = std::get_if<HardBounded>(&k)) return {h->radius};
  if (const auto* s = std::get_if<SmoothedBounded>(&k)) return {s->inner, s->outer};
  return {};
}

}  // namespace

Moments density_moments(const DensityGrid& g) {
  Moments m;
  const double dx = g.dx();
  for (int i = 0; i < g.cells(); ++i) {
    const double c = g.centre(i);
    const double w = g.u[static_cast<std::size_t>(i)] * dx;
    m.mass += w;
    m.mean += w * c;
    m.second_moment += w * c * c;
  }
  return m;
}

FvOperator::FvOperator(const FpConfig& cfg) {
  check(cfg);
  const Interval range{};
  cells_ = cfg.cells;
  dx_ = range.width() / cells_;
  inv_truth_ = 1.0 / cfg.truth_time;

  double liar_weight = 0.0;
  for (const auto& l : cfg.liars) liar_weight += l.mass / l.time;
  const double total = inv_truth_ + liar_weight;
  diff_ = 0.5 * cfg.noise_scale * total;

  face_x_.resize(static_cast<std::size_t>(cells_ + 1));
  for (int f = 0; f <= cells_; ++f) face_x_[static_cast<std::size_t>(f)] = f == cells_ ? range.hi : range.lo + f * dx_;

  spread_.resize(static_cast<std::size_t>(cells_));
  double spread_max = 0.0;
  for (int i = 0; i < cells_; ++i) {
    const double d = eval_diffusion(cfg.diffusion, range.lo + (i + 0.5) * dx_);
    spread_[static_cast<std::size_t>(i)] = d * d;
    spread_max = std::max(spread_max, d * d);
  }

  if (const auto* c = std::get_if<Constant>(&cfg.kernel)) {
    conv_ = Conv::constant;
    strength_ = c->value;
  } else if (std::holds_alternative<SelfDependent>(cfg.kernel)) {
    conv_ = Conv::self_dependent;
  } else {
    conv_ = Conv::banded;
    const double reach = interaction_reach(cfg.kernel);
    const auto cuts = breaks(cfg.kernel);
    rows_.resize(static_cast<std::size_t>(cells_ + 1));
    for (int f = 1; f < cells_; ++f) {
      const double xf = face_x_[static_cast<std::size_t>(f)];
      const int first = std::max(0, static_cast<int>(std::floor((xf - reach - range.lo) / dx_)) - 1);
      const int last = std::min(cells_ - 1, static_cast<int>(std::floor((xf + reach - range.lo) / dx_)) + 1);
      Row& row = rows_[static_cast<std::size_t>(f)];
      row.first = first;
      for (int j = first; j <= last; ++j) {
        const double a = range.lo + j * dx_;
        const double b = a + dx_;
        std::vector<double> pts{a, b};
        for (double r : cuts)
          for (double p : {xf - r, xf + r})
            if (p > a && p < b) pts.push_back(p);
        std::sort(pts.begin(), pts.end());
        double w = 0.0;
        for (std::size_t q = 0; q + 1 < pts.size(); ++q) {
          w += boost::math::quadrature::gauss<double, 5>::integrate(
              [&](double y) { return eval_kernel(cfg.kernel, xf, y) * (y - xf); }, pts[q], pts[q + 1]);
        }
        row.w.push_back(w);
      }
    }
  }

  liar_drift_.assign(static_cast<std::size_t>(cells_ + 1), 0.0);
  for (const auto& l : cfg.liars) {
    const double scale = l.mass / l.time;
    if (scale == 0.0) continue;
    if (partner_independent(cfg.kernel)) {
      for (int f = 0; f <= cells_; ++f) {
        const double x = face_x_[static_cast<std::size_t>(f)];
        const double p = eval_kernel(cfg.kernel, x, x);
        liar_drift_[static_cast<std::size_t>(f)] += scale * p * (1.0 + p / l.scaled_penalty) * (l.goal - x);
      }
      continue;
    }
    std::vector<double> ys(static_cast<std::size_t>(cells_ + 1), l.goal);
    if (std::isfinite(l.scaled_penalty)) {
      const auto* s = std::get_if<SmoothedBounded>(&cfg.kernel);
      if (!s) throw NotDifferentiable("liar control curve needs the smoothed bounded kernel");
      curves_.push_back(control_curve(*s, l.scaled_penalty, l.goal, cells_, cfg.curve_refine, cfg.curve_tol));
      ys = curves_.back().ys;
    }
    for (int f = 0; f <= cells_; ++f) {
      const double x = face_x_[static_cast<std::size_t>(f)];
      const double y = ys[static_cast<std::size_t>(f)];
      liar_drift_[static_cast<std::size_t>(f)] += scale * eval_kernel(cfg.kernel, x, y) * (y - x);
    }
  }

  double liar_max = 0.0;
  for (double v : liar_drift_) liar_max = std::max(liar_max, std::abs(v));
  const double drift_max = inv_truth_ * interaction_reach(cfg.kernel) + liar_max;
  const double diff_rate = cfg.noise_scale * total * spread_max;  // noise scale times total rate times max spread

  const double by_diffusion = diff_rate > 0.0 ? dx_ * dx_ / diff_rate : std::numeric_limits<double>::infinity();
  const double by_drift = drift_max > 0.0 ? dx_ / drift_max : std::numeric_limits<double>::infinity();
  rule_dt_ = 0.4 * std::min(by_diffusion, by_drift);
  const double denom = 2.0 * drift_max / dx_ + diff_rate / (dx_ * dx_);
  stable_dt_ = denom > 0.0 ? 0.4 / denom : cfg.horizon;
  flux_.assign(static_cast<std::size_t>(cells_ + 1), 0.0);
}

bool FvOperator::admissible(double dt) const {
  if (!(dt > 0.0)) return false;
  const double slack = 1.0 + 1e-12;
  return dt <= rule_dt_ * slack && dt <= 2.5 * stable_dt_ * slack;
}

void FvOperator::rate(std::span<const double> u, std::span<double> out) const {
  if (u.size() != static_cast<std::size_t>(cells_) || out.size() != u.size())
    throw DimensionMismatch("density size does not match the operator grid");

  double s0 = 0.0, s1 = 0.0;
  if (conv_ != Conv::banded) {
    for (int j = 0; j < cells_; ++j) {
      const double w = u[static_cast<std::size_t>(j)] * dx_;
      s0 += w;
      s1 += w * (face_x_[static_cast<std::size_t>(j)] + 0.5 * dx_);
    }
  }

  flux_.front() = 0.0;
  flux_.back() = 0.0;
  for (int f = 1; f < cells_; ++f) {
    const auto fi = static_cast<std::size_t>(f);
    const double xf = face_x_[fi];
    double pull;
    switch (conv_) {
      case Conv::constant:
        pull = strength_ * (s1 - xf * s0);
        break;
      case Conv::self_dependent:
        pull = (1.0 - xf * xf) * (s1 - xf * s0);
        break;
      default: {
        const Row& row = rows_[fi];
        pull = 0.0;
        for (std::size_t q = 0; q < row.w.size(); ++q) pull += row.w[q] * u[static_cast<std::size_t>(row.first) + q];
      }
    }
    const double v = inv_truth_ * pull + liar_drift_[fi];
    const double left = u[fi - 1];
    const double right = u[fi];
    const double dl = spread_[fi - 1];
    const double dr = spread_[fi];
    // Central face value while the cell Peclet number allows it, upwind otherwise.
    double face;
    if (std::abs(v) * dx_ <= 2.0 * diff_ * std::min(dl, dr))
      face = 0.5 * (left + right);
    else
      face = v > 0.0 ? left : right;
    flux_[fi] = v * face - diff_ * (dr * right - dl * left) / dx_;
  }
  for (int i = 0; i < cells_; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    out[ii] = -(flux_[ii + 1] - flux_[ii]) / dx_;
  }
}

DensityGrid initial_density(const FpConfig& cfg) {
  check(cfg);
  DensityGrid g;
  g.u.assign(static_cast<std::size_t>(cfg.cells), 1.0 / g.range.width());
  if (const auto* mix = std::get_if<GaussianMixtureInit>(&cfg.init)) {
    const double dx = g.dx();
    double mass = 0.0;
    for (int i = 0; i < cfg.cells; ++i) {
      const double a = g.face(i);
      const double avg = boost::math::quadrature::gauss<double, 10>::integrate(
                             [&](double x) {
                               double s = 0.0;
                               for (double c : mix->centres) s += std::exp(-mix->sharpness * (c - x) * (c - x));
                               return s;
                             },
                             a, a + dx) /
                         dx;
      g.u[static_cast<std::size_t>(i)] = avg;
      mass += avg * dx;
    }
    for (double& v : g.u) v /= mass;
  }
  return g;
}

DensityGrid fv_step(const DensityGrid& g, const FvOperator& op, double dt) {
  if (!op.admissible(dt)) throw StabilityViolation("time step violates the stability rule");
  std::vector<double> du(g.u.size());
  op.rate(g.u, du);
  DensityGrid next = g;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < du.size(); ++i) {
    next.u[i] += dt * du[i];
    lowest = std::min(lowest, next.u[i]);
  }
  if (lowest < negative_floor) throw StabilityViolation("density went negative");
  return next;
}

FpResult fv_solve(const FpConfig& cfg) {
  const FvOperator op(cfg);
  double dt = cfg.dt > 0.0 ? cfg.dt : op.stable_dt();
  if (!op.admissible(dt)) throw StabilityViolation("configured dt violates the stability rule");
  const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.horizon / dt - 1e-9)));
  dt = cfg.horizon / static_cast<double>(steps);

  FpResult res;
  res.dt = dt;
  res.curves = op.curves();
  if (cfg.liars.size() == 1) {
    res.target = cfg.liars.front().goal;
  } else if (!cfg.liars.empty()) {
    std::vector<LiarWeight> w;
    const auto* c = std::get_if<Constant>(&cfg.kernel);
    for (const auto& l : cfg.liars) {
      const double p = c ? c->value : 1.0;
      w.push_back({l.mass, p * (1.0 + p / l.scaled_penalty) / l.time, l.goal});
    }
    res.target = multi_liar_mean_limit(w);
  }

  DensityGrid g = initial_density(cfg);
  std::vector<double> du(g.u.size());
  res.series.reserve(static_cast<std::size_t>(steps + 1));
  res.min_value = *std::min_element(g.u.begin(), g.u.end());

  auto record = [&](double t) {
    const Moments m = density_moments(g);
    const double off = m.mean - res.target;
    res.series.push_back({t, m.mass, m.mean, off * off});
    res.max_mass_error = std::max(res.max_mass_error, std::abs(m.mass - 1.0));
  };
  record(0.0);
  res.snapshot_times.push_back(0.0);
  res.snapshots.push_back(g);

  for (long n = 1; n <= steps; ++n) {
    op.rate(g.u, du);
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < du.size(); ++i) {
      g.u[i] += dt * du[i];
      lowest = std::min(lowest, g.u[i]);
    }
    res.min_value = std::min(res.min_value, lowest);
    if (lowest < negative_floor) throw StabilityViolation("density went negative");
    const double t = n == steps ? cfg.horizon : static_cast<double>(n) * dt;
    record(t);
    if (n == steps || (cfg.snapshot_every > 0 && n % cfg.snapshot_every == 0)) {
      res.snapshot_times.push_back(t);
      res.snapshots.push_back(g);
    }
  }
  return res;
}

}  // namespace liars
