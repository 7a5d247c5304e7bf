#include <cmath>
#include <limits>

#include "liars/errors.hpp"
#include "liars_app/app.hpp"

namespace liars::app {
namespace {

Kernel kernel(const Config& c, const std::string& ns) {
  const std::string type = c.text(ns + ".kernel");
  Kernel k;
  if (type == "constant")
    k = Constant{c.number(ns + ".kernel_value")};
  else if (type == "self-dependent")
    k = SelfDependent{};
  else if (type == "hard")
    k = HardBounded{c.number(ns + ".radius")};
  else if (type == "smoothed") {
    const std::string blend = c.text(ns + ".blend");
    if (blend != "quintic" && blend != "cubic")
      throw ConfigError("config key '" + ns + ".blend' must be quintic or cubic");
    k = SmoothedBounded{c.number(ns + ".inner"), c.number(ns + ".outer"),
                        blend == "cubic" ? Blend::cubic : Blend::quintic};
  } else
    throw ConfigError("config key '" + ns + ".kernel' must be constant, self-dependent, hard or smoothed");
  try {
    liars::validate(k);
  } catch (const InvalidArgument& e) {
    throw ConfigError("config key '" + ns + ".kernel': " + e.what());
  }
  return k;
}

Diffusion diffusion(const Config& c, const std::string& key) {
  const std::string d = c.text(key);
  if (d == "zero") return Diffusion::zero;
  if (d == "one-minus-x-sq") return Diffusion::one_minus_x_sq;
  throw ConfigError("config key '" + key + "' must be zero or one-minus-x-sq");
}

int positive_int(const Config& c, const std::string& key, int min = 1) {
  const auto v = c.integer(key);
  if (v < min) throw ConfigError("config key '" + key + "' must be at least " + std::to_string(min));
  return static_cast<int>(v);
}

double positive(const Config& c, const std::string& key) {
  const double v = c.number(key);
  if (!(v > 0.0)) throw ConfigError("config key '" + key + "' must be positive");
  return v;
}

double in_interval(const Config& c, const std::string& key) {
  const double v = c.number(key);
  if (!(v >= -1.0 && v <= 1.0)) throw ConfigError("config key '" + key + "' must lie in [-1, 1]");
  return v;
}

std::vector<double> opinions(const Config& c, const std::string& key, std::size_t expected) {
  const Json& v = c.get(key);
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError("config key '" + key + "' must hold numbers");
    const double x = e.get<double>();
    if (!(x >= -1.0 && x <= 1.0)) throw ConfigError("config key '" + key + "' has an opinion outside [-1, 1]");
    out.push_back(x);
  }
  if (!out.empty() && out.size() != expected)
    throw ConfigError("config key '" + key + "' must list agents - 1 = " + std::to_string(expected) + " opinions");
  return out;
}

InitRule init_rule(const Config& c) {
  const std::string r = c.text("micro.init_rule");
  if (r == "no-reg") return InitRule::no_reg;
  if (r == "classic") return InitRule::classic;
  if (r == "consistent") return InitRule::consistent;
  throw ConfigError("config key 'micro.init_rule' must be no-reg, classic or consistent");
}

}  // namespace

MicroConfig micro_config(const Config& c) {
  MicroConfig m;
  m.agents = positive_int(c, "micro.agents", 2);
  m.dt = positive(c, "micro.dt");
  m.horizon = c.number("micro.horizon");
  if (!(m.horizon >= 0.0)) throw ConfigError("config key 'micro.horizon' must be non-negative");
  m.kernel = kernel(c, "micro");
  m.goal = in_interval(c, "micro.goal");
  m.initial = opinions(c, "micro.initial", static_cast<std::size_t>(m.agents - 1));
  m.seed = c.seed();
  const std::string reg = c.text("micro.regularisation");
  const double penalty = reg == "none" ? 1.0 : positive(c, "micro.penalty");
  if (reg == "none")
    m.reg = NoRegularisation{};
  else if (reg == "classic")
    m.reg = ClassicReg{penalty};
  else if (reg == "consistent")
    m.reg = ConsistentReg{penalty};
  else if (reg == "time-consistent")
    m.reg = TimeConsistentReg{penalty, init_rule(c)};
  else if (reg == "variant")
    m.reg = VariantTimeConsistentReg{penalty, init_rule(c)};
  else if (reg == "bounded-confidence") {
    if (!std::holds_alternative<HardBounded>(m.kernel))
      throw ConfigError("config key 'micro.regularisation': bounded-confidence needs micro.kernel = hard");
    m.reg = BoundedConfidenceReg{penalty};
  } else
    throw ConfigError(
        "config key 'micro.regularisation' must be none, classic, consistent, time-consistent, variant or "
        "bounded-confidence");
  if (std::holds_alternative<HardBounded>(m.kernel) && !std::holds_alternative<BoundedConfidenceReg>(m.reg))
    throw ConfigError("config key 'micro.kernel': the hard kernel is not differentiable; it needs bounded-confidence regularisation");
  return m;
}

NmpcConfig nmpc_config(const Config& c) {
  NmpcConfig n;
  n.dt = positive(c, "nmpc.dt");
  n.horizon_time = positive(c, "nmpc.horizon_time");
  n.horizon = positive_int(c, "nmpc.horizon", 0);
  n.kernel = kernel(c, "nmpc");
  n.penalty = c.number("nmpc.penalty");
  if (!(n.penalty >= 0.0)) throw ConfigError("config key 'nmpc.penalty' must be non-negative");
  const std::string norm = c.text("nmpc.norm");
  if (norm != "l1" && norm != "l2") throw ConfigError("config key 'nmpc.norm' must be l1 or l2");
  n.norm = norm == "l1" ? Norm::l1 : Norm::l2;
  n.goal = in_interval(c, "nmpc.goal");
  const Json& init = c.get("nmpc.initial");
  if (init.is_string()) {
    if (c.text("nmpc.initial") != "reference") throw ConfigError("config key 'nmpc.initial' must be reference or a list");
    n.initial = reference_opinions();
    n.agents = static_cast<int>(n.initial.size()) + 1;
  } else {
    n.agents = positive_int(c, "nmpc.agents", 2);
    n.initial = opinions(c, "nmpc.initial", static_cast<std::size_t>(n.agents - 1));
  }
  n.pso.swarm = positive_int(c, "nmpc.swarm", 2);
  n.pso.iterations = positive_int(c, "nmpc.iterations");
  n.pso.inertia = c.number("nmpc.inertia");
  n.consensus_tol = c.number("nmpc.consensus_tol");
  n.seed = c.seed();
  return n;
}

McConfig mc_config(const Config& c) {
  McConfig m;
  m.samples = positive_int(c, "mc.samples", 2);
  m.dt = positive(c, "mc.dt");
  if (!(m.dt < 2.0)) throw ConfigError("config key 'mc.dt' must be below 2 so the interaction weight is below 1");
  m.steps = positive_int(c, "mc.steps", 0);
  m.agents = positive_int(c, "mc.agents", 2);
  m.penalty = positive(c, "mc.penalty");
  m.goal = in_interval(c, "mc.goal");
  m.kernel = kernel(c, "mc");
  if (std::holds_alternative<HardBounded>(m.kernel))
    throw ConfigError("config key 'mc.kernel': the liar's binary control needs a differentiable kernel");
  m.diffusion = diffusion(c, "mc.diffusion");
  m.noise_variance = c.number("mc.noise_variance");
  if (!(m.noise_variance >= 0.0)) throw ConfigError("config key 'mc.noise_variance' must be non-negative");
  m.histogram_bins = positive_int(c, "mc.histogram_bins", 0);
  m.seed = c.seed();
  return m;
}

FpConfig fp_config(const Config& c) {
  FpConfig f;
  f.kernel = kernel(c, "fp");
  const Json& liars = c.get("fp.liars");
  if (!liars.is_array()) throw ConfigError("config key 'fp.liars' must be a list");
  for (std::size_t i = 0; i < liars.size(); ++i) {
    const std::string where = "fp.liars[" + std::to_string(i) + "]";
    const Json& l = liars[i];
    if (!l.is_object()) throw ConfigError("config key '" + where + "' must be an object");
    for (const auto& [field, unused] : l.items())
      if (field != "scaled_penalty" && field != "mass" && field != "time" && field != "goal")
        throw ConfigError("unknown config key '" + where + "." + field + "'");
    auto field = [&](const char* name, double fallback) {
      if (!l.contains(name)) return fallback;
      const Json& v = l.at(name);
      if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
      if (!v.is_number()) throw ConfigError("config key '" + where + "." + name + "' must be a number");
      return v.get<double>();
    };
    LiarField lf{field("scaled_penalty", 0.1), field("mass", 0.5), field("time", 1.0), field("goal", 0.0)};
    if (!(lf.scaled_penalty > 0.0))
      throw ConfigError("config key '" + where + ".scaled_penalty' must be positive");
    if (!(lf.mass >= 0.0)) throw ConfigError("config key '" + where + ".mass' must be non-negative");
    if (!(lf.time > 0.0)) throw ConfigError("config key '" + where + ".time' must be positive");
    if (!(lf.goal >= -1.0 && lf.goal <= 1.0)) throw ConfigError("config key '" + where + ".goal' must lie in [-1, 1]");
    f.liars.push_back(lf);
  }
  f.truth_time = positive(c, "fp.truth_time");
  f.noise_scale = c.number("fp.noise_scale");
  if (!(f.noise_scale >= 0.0)) throw ConfigError("config key 'fp.noise_scale' must be non-negative");
  f.diffusion = diffusion(c, "fp.diffusion");
  f.cells = positive_int(c, "fp.cells", 3);
  f.dt = c.number("fp.dt");
  if (!(f.dt >= 0.0)) throw ConfigError("config key 'fp.dt' must be non-negative (0 picks it automatically)");
  f.horizon = positive(c, "fp.horizon");
  const std::string init = c.text("fp.init");
  if (init == "uniform")
    f.init = UniformInit{};
  else if (init == "mixture") {
    GaussianMixtureInit g;
    for (const auto& e : c.get("fp.centres")) {
      if (!e.is_number()) throw ConfigError("config key 'fp.centres' must hold numbers");
      g.centres.push_back(e.get<double>());
    }
    if (g.centres.empty()) throw ConfigError("config key 'fp.centres' must not be empty for a mixture");
    g.sharpness = positive(c, "fp.sharpness");
    f.init = g;
  } else
    throw ConfigError("config key 'fp.init' must be uniform or mixture");
  f.snapshot_every = positive_int(c, "fp.snapshot_every", 0);
  f.curve_refine = positive_int(c, "fp.curve_refine", 0);
  f.curve_tol = positive(c, "fp.curve_tol");
  positive_int(c, "fp.series_every");
  if (std::holds_alternative<HardBounded>(f.kernel))
    for (std::size_t i = 0; i < f.liars.size(); ++i)
      if (std::isfinite(f.liars[i].scaled_penalty))
        throw ConfigError("config key 'fp.kernel': the hard kernel has no control curve; use smoothed");
  return f;
}

void validate(const Config& c) {
  c.seed();
  switch (c.experiment()) {
    case Experiment::micro: micro_config(c); break;
    case Experiment::nmpc: nmpc_config(c); break;
    case Experiment::kinetic_mc: mc_config(c); break;
    case Experiment::fp: {
      const auto f = fp_config(c);
      try {
        FvOperator op(f);
        if (f.dt > 0.0 && !op.admissible(f.dt))
          throw ConfigError("config key 'fp.dt' violates the stability rule; largest admissible step is about " +
                            std::to_string(op.stable_dt()));
      } catch (const liars::Error& e) {
        throw ConfigError(std::string("fp config rejected: ") + e.what());
      }
      break;
    }
  }
  if (!c.sweep_key().empty()) {
    if (c.sweep_key().rfind("sweep.", 0) == 0) throw ConfigError("config key 'sweep.key' cannot sweep itself");
    for (const auto& v : c.sweep_values()) {
      Config one = c;
      one.set(c.sweep_key(), v);
      one.set("sweep.key", "");
      validate(one);
    }
  }
}

}  // namespace liars::app
