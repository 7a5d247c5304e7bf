#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "liars/fokker_planck.hpp"
#include "liars/kinetic.hpp"
#include "liars/micro.hpp"
#include "liars/nmpc.hpp"

namespace liars::app {

using Json = nlohmann::ordered_json;

// Bad key, bad value or a module precondition; the message names the key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Experiment { micro, nmpc, kinetic_mc, fp };

std::string to_string(Experiment e);
Experiment experiment_from(const std::string& name);

// A run description: flat keys such as "micro.agents" mapped to JSON values.
// Unset keys fall back to the registry defaults.
class Config {
 public:
  Config() = default;

  static Config from_json(const Json& doc);
  static Config from_file(const std::filesystem::path& path);
  static Config preset(const std::string& name);
  static std::vector<std::string> preset_names();

  // Later layers win: preset, then file, then env, then --set.
  void merge(const Config& other);
  void set(const std::string& key, const Json& value);
  // "key=value"; the value is parsed as JSON and kept as a string otherwise.
  void set_assignment(const std::string& assignment);
  // LIARS_MICRO__AGENTS=60 sets micro.agents.
  void apply_env(char** envp);

  bool has(const std::string& key) const { return values_.contains(key); }
  const Json& get(const std::string& key) const;
  double number(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::string text(const std::string& key) const;

  Experiment experiment() const;
  std::uint64_t seed() const;

  // Every registered key with its effective value, sorted by key.
  Json resolved() const;
  const Json& explicit_values() const { return values_; }

  // Sweep fan-out; empty when the config is a single run.
  std::string sweep_key() const;
  std::vector<Json> sweep_values() const;

 private:
  Json values_ = Json::object();
};

std::string env_name(const std::string& key);

MicroConfig micro_config(const Config& c);
NmpcConfig nmpc_config(const Config& c);
McConfig mc_config(const Config& c);
FpConfig fp_config(const Config& c);

// Checks everything the modules would reject, naming the key.
void validate(const Config& c);

struct RunReport {
  std::filesystem::path dir;
  std::vector<std::filesystem::path> files;
  double wall_seconds = 0.0;
  Json summary;  // a few headline numbers, also stored in the manifest
};

RunReport run(const Config& c, const std::filesystem::path& out);

// One run per sweep value, each in its own subdirectory; jobs <= 0 means
// hardware concurrency.
std::vector<RunReport> run_sweep(const Config& c, const std::filesystem::path& out, int jobs = 0);

}  // namespace liars::app
