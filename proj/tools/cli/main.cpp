#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liars/analysis.hpp"
#include "liars/csv.hpp"
#include "liars/errors.hpp"
#include "liars_app/app.hpp"

extern char** environ;

namespace {

using liars::app::Config;
using liars::app::ConfigError;

struct RunOptions {
  std::string config_file;
  std::string preset;
  std::vector<std::string> sets;
  std::string out = "out";
  long long seed = -1;
  int jobs = 0;
};

void add_run_options(CLI::App* sub, RunOptions& o) {
  sub->add_option("--config", o.config_file, "JSON config file");
  sub->add_option("--preset", o.preset, "named preset (see 'liars presets')");
  sub->add_option("--set", o.sets, "override, key=value (repeatable)");
  sub->add_option("--seed", o.seed, "RNG seed");
  sub->add_option("--out", o.out, "output directory");
}

Config assemble(const RunOptions& o, const std::string& experiment) {
  Config c;
  if (!o.preset.empty()) c = Config::preset(o.preset);
  if (!o.config_file.empty()) c.merge(Config::from_file(o.config_file));
  c.apply_env(environ);
  for (const auto& s : o.sets) c.set_assignment(s);
  if (o.seed >= 0) c.set("seed", o.seed);
  if (!experiment.empty()) {
    const auto wanted = liars::app::experiment_from(experiment);
    if (c.has("experiment") && c.experiment() != wanted)
      throw ConfigError("config key 'experiment' is '" + c.text("experiment") + "' but the subcommand is " +
                        experiment);
    c.set("experiment", liars::app::to_string(wanted));
  }
  return c;
}

double parse_penalty(const std::string& s) {
  if (s == "inf" || s == "infinity") return liars::infinite_penalty;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw ConfigError("--nu: expected a number or 'inf', got '" + s + "'");
  return v;
}

void print(double v) { std::cout << liars::csv::number(v) << '\n'; }

void report(const liars::app::RunReport& r) {
  std::cout << r.dir.string() << '\n';
  for (const auto& f : r.files) std::cout << "  " << f.filename().string() << '\n';
  std::cout << "  summary " << r.summary.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opinion dynamics with a strategic liar"};
  app.require_subcommand(1);

  RunOptions run_opts;
  std::string chosen;
  const std::vector<std::pair<std::string, std::string>> experiments = {
      {"micro", "agent-level simulation"},
      {"nmpc", "receding-horizon lying with PSO"},
      {"kinetic-mc", "Monte Carlo of the binary interaction model"},
      {"fp", "finite-volume Fokker-Planck solve"}};
  for (const auto& [name, help] : experiments) {
    auto* sub = app.add_subcommand(name, help);
    add_run_options(sub, run_opts);
    sub->callback([&chosen, n = name] { chosen = n; });
  }
  auto* sweep = app.add_subcommand("sweep", "run every value of sweep.key in parallel");
  add_run_options(sweep, run_opts);
  sweep->add_option("--jobs", run_opts.jobs, "parallel runs (0: hardware threads)");

  auto* show = app.add_subcommand("config", "print the resolved configuration");
  add_run_options(show, run_opts);
  app.add_subcommand("presets", "list preset names");

  auto* analysis = app.add_subcommand("analysis", "closed-form quantities");
  analysis->require_subcommand(1);

  double dt = 0.1, factor = 2.0, weight = 0.05, goal = 0.0;
  int agents = 50;
  std::string penalty_text = "1";
  auto* hl = analysis->add_subcommand("half-life", "time for the two-particle gap to halve");
  hl->add_option("--dt", dt);
  hl->add_option("--n", agents);
  hl->add_option("--nu,--penalty", penalty_text, "penalty, or inf for a truthful liar");
  auto* sp = analysis->add_subcommand("speedup", "penalty giving a requested half-life speed-up");
  sp->add_option("--dt", dt);
  sp->add_option("--n", agents);
  sp->add_option("--factor", factor);
  auto* osc = analysis->add_subcommand("oscillation", "penalty below which lies oscillate");
  osc->add_option("--dt", dt);
  osc->add_option("--n", agents);
  auto* bound = analysis->add_subcommand("lie-bound", "penalty above which lies stay in [-1, 1]");
  bound->add_option("--weight", weight);
  bound->add_option("--goal", goal);

  liars::KineticParams kp;
  double t = 1.0, m0 = 0.0;
  auto* mc = analysis->add_subcommand("mean-const", "mean opinion under a constant kernel");
  mc->add_option("--t", t);
  mc->add_option("--m0", m0);
  mc->add_option("--weight", kp.weight);
  mc->add_option("--strength", kp.strength);
  mc->add_option("--nu,--penalty", kp.penalty);
  mc->add_option("--liar-mass", kp.liar_mass);
  mc->add_option("--liar-rate", kp.liar_rate);
  mc->add_option("--goal", kp.goal);
  auto* qr = analysis->add_subcommand("quasi-rate", "mean relaxation rate in the quasi-invariant limit");
  qr->add_option("--strength", kp.strength);
  qr->add_option("--scaled-penalty", kp.scaled_penalty);
  qr->add_option("--liar-mass", kp.liar_mass);
  qr->add_option("--liar-time", kp.liar_time);
  std::vector<std::string> liar_args;
  auto* ml = analysis->add_subcommand("multi-liar", "long-time mean with several liars");
  ml->add_option("--liar", liar_args, "mass,rate,goal (repeatable)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand("presets")) {
      for (const auto& n : Config::preset_names()) std::cout << n << '\n';
    } else if (app.got_subcommand(show)) {
      std::cout << assemble(run_opts, "").resolved().dump(2) << '\n';
    } else if (app.got_subcommand(sweep)) {
      const Config c = assemble(run_opts, "");
      if (c.sweep_key().empty()) throw ConfigError("config key 'sweep.key' is not set");
      for (const auto& r : liars::app::run_sweep(c, run_opts.out, run_opts.jobs)) report(r);
    } else if (!chosen.empty()) {
      const Config c = assemble(run_opts, chosen);
      if (c.sweep_key().empty())
        report(liars::app::run(c, run_opts.out));
      else
        for (const auto& r : liars::app::run_sweep(c, run_opts.out)) report(r);
    } else if (hl->parsed()) {
      liars::TwoParticleParams p;
      p.dt = dt;
      p.agents = agents;
      p.penalty = parse_penalty(penalty_text);
      p.truthful_only = std::isinf(p.penalty);
      print(liars::half_life(p));
    } else if (sp->parsed()) {
      print(liars::penalty_for_speedup(dt, agents, factor));
    } else if (osc->parsed()) {
      print(liars::oscillation_threshold(dt, agents));
    } else if (bound->parsed()) {
      print(liars::lie_bound_penalty(weight, goal));
    } else if (mc->parsed()) {
      print(liars::mean_constant_kernel(t, m0, kp));
    } else if (qr->parsed()) {
      print(liars::quasi_mean_rate(kp));
    } else if (ml->parsed()) {
      std::vector<liars::LiarWeight> ws;
      for (const auto& arg : liar_args) {
        liars::LiarWeight w;
        char c1 = 0, c2 = 0;
        std::istringstream is(arg);
        if (!(is >> w.mass >> c1 >> w.rate >> c2 >> w.goal) || c1 != ',' || c2 != ',')
          throw ConfigError("--liar: expected mass,rate,goal, got '" + arg + "'");
        ws.push_back(w);
      }
      print(liars::multi_liar_mean_limit(ws));
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const liars::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
