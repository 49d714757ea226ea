#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oscbath/bath.hpp"
#include "oscbath/flows.hpp"

namespace oscbath {

/// Flat key/value configuration. Keys are "section.key"; text form is INI-like.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  /// Sorted INI text; parse(canonical()) == *this.
  std::string canonical() const;
  const std::map<std::string, std::string>& entries() const { return values_; }

  bool operator==(const Config&) const = default;

 private:
  std::map<std::string, std::string> values_;
};

/// Rebuilds a Config from the "# config: " lines of an emitted CSV.
Config config_from_echo(std::string_view csv_text);

enum class Scenario { Single, TwoCoupled, Driven };
enum class Experiment {
  VarianceTrajectory,
  FidelityVsTime,
  RecurrenceMap,
  CorrelationStudy,
  FactorizationDistance,
  TwoOscillatorSuite,
  DrivenSuite,
};
enum class InitialState { Vacuum, Thermal, Squeezed, Coherent };

const char* to_string(Scenario s);
const char* to_string(Experiment e);

/// Typed, validated view of one configuration point.
struct ScenarioConfig {
  Scenario scenario = Scenario::Single;
  Experiment experiment = Experiment::FidelityVsTime;

  double omega = 1.0;
  double omega2 = 1.0;
  double beta = 0.0;
  InitialState initial = InitialState::Vacuum;
  double t_s = 30.0;
  double r_sq = 0.5;
  double coherent_re = 0.0;
  double coherent_im = 0.0;

  double alpha = 0.002;
  double omega_c = 3.0;
  int modes = 150;
  RangeConvention range = RangeConvention::EqualTails;
  double omega_min = 0.5;
  double temperature = 0.0;
  double temperature2 = 0.0;

  double r = 0.0;
  double omega_L = 1.0;
  std::vector<RabiVariant> variants;

  double t_max = 50.0;
  int samples = 101;

  std::string sweep_param;  // empty when no sweep
  std::vector<double> sweep_values;
  std::vector<std::string> quantities;  // empty = all

  std::vector<std::string> warnings;

  std::vector<double> times() const;
};

/// Validates and types a configuration; throws ConfigError.
ScenarioConfig make_scenario(const Config& cfg);

/// Keys a sweep may vary.
const std::vector<std::string>& sweepable_keys();

}  // namespace oscbath
