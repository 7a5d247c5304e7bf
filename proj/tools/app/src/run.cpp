#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <thread>

#include "liars/csv.hpp"
#include "liars/errors.hpp"
#include "liars_app/app.hpp"

namespace liars::app {
namespace {

namespace fs = std::filesystem;

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  template <class F>
  void csv(const std::string& name, F&& body) {
    const auto path = dir_ / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + path.string());
    body(os);
    if (!os) throw ConfigError("write failed for " + path.string());
    files_.push_back(path);
  }

  void json(const std::string& name, const Json& doc) {
    csv(name, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

  const fs::path& dir() const { return dir_; }
  const std::vector<fs::path>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
};

Json run_micro(const Config& c, Writer& w) {
  const auto cfg = micro_config(c);
  const auto tr = simulate_micro(cfg);
  w.csv("trajectory.csv", [&](std::ostream& os) { csv::trajectory(os, tr); });
  double spread = 0.0, biggest = 0.0;
  for (double v : tr.states.back().x) spread = std::max(spread, std::abs(v - cfg.goal));
  for (const auto& ctrl : tr.controls)
    for (double y : ctrl.lies) biggest = std::max(biggest, std::abs(y - cfg.goal));
  return {{"final_max_distance", spread}, {"max_lie", biggest}, {"steps", tr.controls.size()}};
}

Json run_nmpc(const Config& c, Writer& w) {
  const auto cfg = nmpc_config(c);
  const auto r = nmpc_simulate(cfg);
  w.csv("trajectory.csv", [&](std::ostream& os) { csv::trajectory(os, r.trajectory); });
  w.csv("heatmap.csv", [&](std::ostream& os) { csv::heatmap(os, r.magnitudes); });
  w.json("heatmap.sidecar.json", {{"schema", csv::schema_version},
                                  {"rows", "agent"},
                                  {"columns", "step"},
                                  {"value", "|lie - goal|"},
                                  {"seed", cfg.seed},
                                  {"config", c.resolved()}});
  const auto m = sparsity_metrics(r.magnitudes, 1e-3);
  double spread = 0.0;
  for (double v : r.trajectory.states.back().x) spread = std::max(spread, std::abs(v - cfg.goal));
  return {{"fraction_zero", m.fraction_zero}, {"l1_total", m.l1_total}, {"final_max_distance", spread}};
}

Json run_mc(const Config& c, Writer& w) {
  const auto cfg = mc_config(c);
  const auto r = mc_run(cfg);
  w.csv("moments.csv", [&](std::ostream& os) { csv::moments(os, r); });
  if (cfg.histogram_bins > 0) w.csv("histogram.csv", [&](std::ostream& os) { csv::histogram(os, r); });
  return {{"final_mean", r.mean.back()}, {"final_second_moment", r.second_moment.back()}};
}

Json run_fp(const Config& c, Writer& w) {
  const auto cfg = fp_config(c);
  const auto r = fv_solve(cfg);
  const int every = static_cast<int>(c.integer("fp.series_every"));
  w.csv("density.csv", [&](std::ostream& os) { csv::density(os, r); });
  w.csv("series.csv", [&](std::ostream& os) { csv::fp_series(os, r, every); });
  for (std::size_t i = 0; i < r.curves.size(); ++i)
    w.csv("curve_" + std::to_string(i + 1) + ".csv", [&](std::ostream& os) { csv::curve(os, r.curves[i]); });
  return {{"final_mean", r.series.back().mean},
          {"target", r.target},
          {"dt", r.dt},
          {"max_mass_error", r.max_mass_error},
          {"min_value", r.min_value}};
}

std::string slug(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  std::string out;
  for (char ch : s) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '+')
      out += ch;
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  if (out.size() > 40) out.resize(40);
  return out;
}

}  // namespace

RunReport run(const Config& c, const std::filesystem::path& out) {
  if (!c.sweep_key().empty()) throw ConfigError("config has sweep.key set; use the sweep runner");
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  Writer w(out);
  Json summary;
  try {
    switch (c.experiment()) {
      case Experiment::micro: summary = run_micro(c, w); break;
      case Experiment::nmpc: summary = run_nmpc(c, w); break;
      case Experiment::kinetic_mc: summary = run_mc(c, w); break;
      case Experiment::fp: summary = run_fp(c, w); break;
    }
  } catch (const liars::Error& e) {
    throw ConfigError(to_string(c.experiment()) + " run failed: " + e.what());
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  w.json("config.resolved.json", c.resolved());

  Json files = Json::array();
  for (const auto& f : w.files())
    files.push_back({{"name", f.filename().string()}, {"bytes", std::filesystem::file_size(f)}});
  Json manifest = {{"schema", csv::schema_version},
                   {"experiment", to_string(c.experiment())},
                   {"seed", c.seed()},
                   {"inputs", c.explicit_values()},
                   {"files", files},
                   {"summary", summary},
                   {"wall_seconds", wall}};
  w.json("manifest.json", manifest);
  return {w.dir(), w.files(), wall, summary};
}

std::vector<RunReport> run_sweep(const Config& c, const std::filesystem::path& out, int jobs) {
  const std::string key = c.sweep_key();
  if (key.empty()) return {run(c, out)};
  validate(c);
  const auto values = c.sweep_values();
  if (values.empty()) throw ConfigError("config key 'sweep.values' is empty");
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  std::vector<Config> runs;
  for (const auto& v : values) {
    Config one = c;
    one.set(key, v);
    one.set("sweep.key", "");
    one.set("sweep.values", Json::array());
    runs.push_back(std::move(one));
  }
  std::vector<RunReport> reports(runs.size());
  for (std::size_t first = 0; first < runs.size(); first += static_cast<std::size_t>(jobs)) {
    std::vector<std::future<RunReport>> batch;
    const std::size_t last = std::min(runs.size(), first + static_cast<std::size_t>(jobs));
    for (std::size_t i = first; i < last; ++i) {
      const bool scalar = !values[i].is_structured();
      const auto dir = out / (std::to_string(i + 1) + (scalar ? "_" + slug(values[i]) : std::string{}));
      batch.push_back(std::async(std::launch::async, [&runs, i, dir] { return run(runs[i], dir); }));
    }
    for (std::size_t i = first; i < last; ++i) reports[i] = batch[i - first].get();
  }

  Json index = Json::array();
  for (std::size_t i = 0; i < reports.size(); ++i)
    index.push_back({{"value", values[i]}, {"dir", reports[i].dir.filename().string()}, {"summary", reports[i].summary}});
  std::ofstream os(out / "sweep.json");
  os << Json{{"key", key}, {"runs", index}}.dump(2) << '\n';
  return reports;
}

}  // namespace liars::app
