#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <string_view>

#include "liars/errors.hpp"
#include "liars_app/app.hpp"

namespace liars::app {
namespace {

// Defaults double as the schema: a key is valid iff it appears here, and its
// value must have the same JSON kind as the default (integers pass for reals).
const Json& registry() {
  static const Json reg = [] {
    Json r = Json::object();
    r["experiment"] = "micro";
    r["seed"] = 1;
    r["sweep.key"] = "";
    r["sweep.values"] = Json::array();

    auto kernel = [&r](const std::string& ns, const char* type) {
      r[ns + ".kernel"] = type;
      r[ns + ".kernel_value"] = 1.0;
      r[ns + ".radius"] = 0.2;
      r[ns + ".inner"] = 0.1;
      r[ns + ".outer"] = 0.2;
      r[ns + ".blend"] = "quintic";
    };

    r["micro.agents"] = 50;
    r["micro.dt"] = 0.1;
    r["micro.horizon"] = 10.0;
    kernel("micro", "self-dependent");
    r["micro.regularisation"] = "none";
    r["micro.penalty"] = 1e-2;
    r["micro.init_rule"] = "no-reg";
    r["micro.goal"] = 0.0;
    r["micro.initial"] = Json::array();

    r["nmpc.agents"] = 11;
    r["nmpc.dt"] = 0.1;
    r["nmpc.horizon_time"] = 5.0;
    r["nmpc.horizon"] = 3;
    kernel("nmpc", "self-dependent");
    r["nmpc.penalty"] = 0.0155;
    r["nmpc.norm"] = "l1";
    r["nmpc.goal"] = 0.0;
    r["nmpc.initial"] = "reference";
    r["nmpc.swarm"] = 50;
    r["nmpc.iterations"] = 200;
    r["nmpc.inertia"] = 0.7298;
    r["nmpc.consensus_tol"] = 1e-3;

    r["mc.samples"] = 10000;
    r["mc.dt"] = 0.1;
    r["mc.steps"] = 100;
    r["mc.agents"] = 50;
    r["mc.penalty"] = 0.05;
    r["mc.goal"] = 0.0;
    kernel("mc", "constant");
    r["mc.diffusion"] = "zero";
    r["mc.noise_variance"] = 0.0;
    r["mc.histogram_bins"] = 200;

    kernel("fp", "constant");
    r["fp.liars"] = Json::array({Json{{"scaled_penalty", 0.1}, {"mass", 0.5}, {"time", 1.0}, {"goal", 0.0}}});
    r["fp.truth_time"] = 1.0;
    r["fp.noise_scale"] = 0.1;
    r["fp.diffusion"] = "one-minus-x-sq";
    r["fp.cells"] = 501;
    r["fp.dt"] = 0.0;
    r["fp.horizon"] = 1.0;
    r["fp.init"] = "uniform";
    r["fp.centres"] = Json::array();
    r["fp.sharpness"] = 100.0;
    r["fp.snapshot_every"] = 0;
    r["fp.series_every"] = 1;
    r["fp.curve_refine"] = 7;
    r["fp.curve_tol"] = 1e-8;
    return r;
  }();
  return reg;
}

bool same_kind(const Json& want, const Json& got) {
  if (want.is_number()) return got.is_number() || (got.is_string() && got.get<std::string>() == "inf");
  if (want.is_string()) return got.is_string();
  return want.type() == got.type();
}

void check_key(const std::string& key, const Json& value) {
  const auto& reg = registry();
  if (!reg.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  const Json& want = reg.at(key);
  // nmpc.initial takes either the fixture name or an explicit list
  if (key == "nmpc.initial" && value.is_array()) return;
  if (!same_kind(want, value))
    throw ConfigError("config key '" + key + "' expects a " + std::string(want.type_name()) + ", got " +
                      std::string(value.type_name()));
}

Json preset_doc(const std::string& name) {
  if (name == "fig-std-reg")
    return {{"experiment", "micro"},
            {"micro.agents", 50},
            {"micro.kernel", "self-dependent"},
            {"micro.regularisation", "classic"},
            {"micro.horizon", 10.0},
            {"sweep.key", "micro.penalty"},
            {"sweep.values", {1e-6, 1e-2}}};
  if (name == "no-reg")
    return {{"experiment", "micro"}, {"micro.agents", 50}, {"micro.regularisation", "none"}, {"micro.horizon", 10.0}};
  if (name == "bounded-confidence")
    return {{"experiment", "micro"},
            {"micro.kernel", "hard"},
            {"micro.radius", 0.2},
            {"micro.regularisation", "bounded-confidence"},
            {"micro.horizon", 50.0},
            {"sweep.key", "micro.penalty"},
            {"sweep.values", {1e-5, 1e-2}}};
  if (name == "sparse-nmpc")
    return {{"experiment", "nmpc"}, {"sweep.key", "nmpc.norm"}, {"sweep.values", {"l1", "l2"}}};
  if (name == "kinetic-mean")
    return {{"experiment", "mc"}, {"mc.penalty", 0.05}, {"mc.steps", 200}, {"mc.kernel", "constant"}};
  if (name == "multi-liar")
    return {{"experiment", "fp"},
            {"fp.kernel", "constant"},
            {"fp.cells", 201},
            {"fp.noise_scale", 0.05},
            {"fp.horizon", 30.0},
            {"fp.init", "mixture"},
            {"fp.centres", {0.7, -0.6}},
            {"fp.snapshot_every", 500},
            {"fp.series_every", 50},
            {"fp.liars",
             {{{"scaled_penalty", 0.1}, {"mass", 0.02}, {"time", 1.0}, {"goal", 0.5}},
              {{"scaled_penalty", 0.1}, {"mass", 0.1}, {"time", 1.0}, {"goal", -0.5}}}}};
  if (name == "fp-bounded")
    return {{"experiment", "fp"},
            {"fp.kernel", "smoothed"},
            {"fp.inner", 0.1},
            {"fp.outer", 0.2},
            {"fp.noise_scale", 0.01},
            {"fp.horizon", 10.0},
            {"fp.snapshot_every", 1000},
            {"fp.series_every", 100},
            {"fp.liars", {{{"scaled_penalty", 0.01}, {"mass", 0.5}, {"time", 1.0}, {"goal", -0.5}}}},
            {"sweep.key", "fp.liars"},
            {"sweep.values",
             {Json::array({{{"scaled_penalty", 0.01}, {"mass", 0.5}, {"time", 1.0}, {"goal", -0.5}}}),
              Json::array({{{"scaled_penalty", 1.0}, {"mass", 0.5}, {"time", 1.0}, {"goal", -0.5}}})}}};
  if (name == "steady-quad")
    return {{"experiment", "fp"},
            {"fp.kernel", "self-dependent"},
            {"fp.horizon", 2.0},
            {"fp.series_every", 100},
            {"fp.liars", {{{"scaled_penalty", 0.01}, {"mass", 0.5}, {"time", 1.0}, {"goal", 0.0}}}}};
  throw ConfigError("unknown preset '" + name + "'");
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::micro: return "micro";
    case Experiment::nmpc: return "nmpc";
    case Experiment::kinetic_mc: return "mc";
    case Experiment::fp: return "fp";
  }
  return "micro";
}

Experiment experiment_from(const std::string& name) {
  if (name == "micro") return Experiment::micro;
  if (name == "nmpc") return Experiment::nmpc;
  if (name == "mc" || name == "kinetic-mc") return Experiment::kinetic_mc;
  if (name == "fp" || name == "fokker-planck") return Experiment::fp;
  throw ConfigError("config key 'experiment': unknown experiment '" + name + "'");
}

Config Config::from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object of flat keys");
  Config c;
  for (const auto& [key, value] : doc.items()) c.set(key, value);
  return c;
}

Config Config::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return from_json(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

Config Config::preset(const std::string& name) { return from_json(preset_doc(name)); }

std::vector<std::string> Config::preset_names() {
  return {"fig-std-reg", "no-reg", "bounded-confidence", "sparse-nmpc", "kinetic-mean", "multi-liar", "fp-bounded",
          "steady-quad"};
}

void Config::merge(const Config& other) {
  for (const auto& [key, value] : other.values_.items()) values_[key] = value;
}

void Config::set(const std::string& key, const Json& value) {
  check_key(key, value);
  values_[key] = value;
}

void Config::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq), raw = assignment.substr(eq + 1);
  Json value = Json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  set(key, value);
}

std::string env_name(const std::string& key) {
  std::string out = "LIARS_";
  for (char ch : key) {
    if (ch == '.')
      out += "__";
    else
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return out;
}

void Config::apply_env(char** envp) {
  if (!envp) return;
  const auto& reg = registry();
  for (char** e = envp; *e; ++e) {
    const std::string_view entry(*e);
    if (!entry.starts_with("LIARS_")) continue;
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string name(entry.substr(0, eq));
    for (const auto& [key, unused] : reg.items())
      if (env_name(key) == name) set_assignment(key + "=" + std::string(entry.substr(eq + 1)));
  }
}

const Json& Config::get(const std::string& key) const {
  if (values_.contains(key)) return values_.at(key);
  const auto& reg = registry();
  if (!reg.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  return reg.at(key);
}

double Config::number(const std::string& key) const {
  const Json& v = get(key);
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t Config::integer(const std::string& key) const {
  const Json& v = get(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>())
    return static_cast<std::int64_t>(v.get<double>());
  throw ConfigError("config key '" + key + "' must be an integer");
}

std::string Config::text(const std::string& key) const {
  const Json& v = get(key);
  if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return lower(v.get<std::string>());
}

Experiment Config::experiment() const { return experiment_from(text("experiment")); }

std::uint64_t Config::seed() const {
  const auto s = integer("seed");
  if (s < 0) throw ConfigError("config key 'seed' must be non-negative");
  return static_cast<std::uint64_t>(s);
}

Json Config::resolved() const {
  std::map<std::string, Json> sorted;
  for (const auto& [key, value] : registry().items()) sorted[key] = value;
  for (const auto& [key, value] : values_.items()) sorted[key] = value;
  Json out = Json::object();
  for (auto& [key, value] : sorted) out[key] = value;
  return out;
}

std::string Config::sweep_key() const { return get("sweep.key").get<std::string>(); }

std::vector<Json> Config::sweep_values() const {
  const Json& v = get("sweep.values");
  return {v.begin(), v.end()};
}

}  // namespace liars::app
