#include "oscbath/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "oscbath/errors.hpp"

namespace oscbath {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "scenario.kind",      "scenario.experiment", "system.omega",     "system.omega2",
      "system.beta",        "system.initial",      "system.t_s",       "system.r_sq",
      "system.coherent_re", "system.coherent_im",  "bath.alpha",       "bath.omega_c",
      "bath.modes",         "bath.range",          "bath.omega_min",   "bath.temperature",
      "bath.temperature2",  "drive.r",             "drive.omega_L",    "drive.detuning",
      "drive.variant",      "time.t_max",          "time.samples",     "sweep.param",
      "sweep.values",       "output.quantities",   "oracle.cutoff",    "oracle.family"};
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    auto fail = [&](const std::string& what) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + what);
    };
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    if (section.empty()) fail("key outside of a [section]");
    const std::string key = section + "." + trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (known_keys().count(key) == 0) fail("unknown key '" + key + "'");
    if (cfg.values_.count(key) != 0) fail("duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::number(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

long Config::integer(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long v = 0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> Config::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(get(key))) out.push_back(parse_double(key, item));
  return out;
}

std::string Config::canonical() const {
  std::ostringstream out;
  std::string section;
  for (const auto& [key, value] : values_) {
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      out << "[" << sec << "]\n";
      section = sec;
    }
    out << key.substr(dot + 1) << " = " << value << "\n";
  }
  return out.str();
}

Config config_from_echo(std::string_view csv_text) {
  static constexpr std::string_view prefix = "# config: ";
  std::string ini;
  std::istringstream in{std::string(csv_text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) ini += line.substr(prefix.size()) + "\n";
  }
  return Config::parse(ini);
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Single: return "single";
    case Scenario::TwoCoupled: return "two_coupled";
    case Scenario::Driven: return "driven";
  }
  return "?";
}

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::VarianceTrajectory: return "variance_trajectory";
    case Experiment::FidelityVsTime: return "fidelity_vs_time";
    case Experiment::RecurrenceMap: return "recurrence_map";
    case Experiment::CorrelationStudy: return "correlation_study";
    case Experiment::FactorizationDistance: return "factorization_distance";
    case Experiment::TwoOscillatorSuite: return "two_oscillator_suite";
    case Experiment::DrivenSuite: return "driven_suite";
  }
  return "?";
}

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys = {
      "system.omega",   "system.beta",      "system.t_s",        "system.r_sq",
      "bath.alpha",     "bath.omega_c",     "bath.modes",        "bath.temperature",
      "bath.temperature2", "drive.r",       "drive.omega_L",     "drive.detuning"};
  return keys;
}

std::vector<double> ScenarioConfig::times() const {
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) t[static_cast<std::size_t>(k)] = t_max * k / (samples - 1);
  return t;
}

namespace {

template <typename E, std::size_t N>
E pick(const Config& cfg, const std::string& key, const std::string& fallback,
       const std::array<std::pair<const char*, E>, N>& options) {
  const std::string v = cfg.get(key, fallback);
  for (const auto& [name, e] : options) {
    if (v == name) return e;
  }
  std::string allowed;
  for (const auto& [name, e] : options) allowed += std::string(allowed.empty() ? "" : ", ") + name;
  throw ConfigError("config: '" + key + "' must be one of {" + allowed + "}, got '" + v + "'");
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError("config: " + msg);
}

}  // namespace

ScenarioConfig make_scenario(const Config& cfg) {
  ScenarioConfig s;
  s.scenario = pick<Scenario, 3>(cfg, "scenario.kind", "single",
                                 {{{"single", Scenario::Single},
                                   {"two_coupled", Scenario::TwoCoupled},
                                   {"driven", Scenario::Driven}}});
  s.experiment = pick<Experiment, 7>(
      cfg, "scenario.experiment", "fidelity_vs_time",
      {{{"variance_trajectory", Experiment::VarianceTrajectory},
        {"fidelity_vs_time", Experiment::FidelityVsTime},
        {"recurrence_map", Experiment::RecurrenceMap},
        {"correlation_study", Experiment::CorrelationStudy},
        {"factorization_distance", Experiment::FactorizationDistance},
        {"two_oscillator_suite", Experiment::TwoOscillatorSuite},
        {"driven_suite", Experiment::DrivenSuite}}});

  s.omega = cfg.number("system.omega", 1.0);
  s.omega2 = cfg.number("system.omega2", s.omega);
  s.beta = cfg.number("system.beta", 0.0);
  s.initial = pick<InitialState, 4>(cfg, "system.initial", "vacuum",
                                    {{{"vacuum", InitialState::Vacuum},
                                      {"thermal", InitialState::Thermal},
                                      {"squeezed", InitialState::Squeezed},
                                      {"coherent", InitialState::Coherent}}});
  s.t_s = cfg.number("system.t_s", 30.0);
  s.r_sq = cfg.number("system.r_sq", 0.5);
  s.coherent_re = cfg.number("system.coherent_re", 0.0);
  s.coherent_im = cfg.number("system.coherent_im", 0.0);

  s.alpha = cfg.number("bath.alpha", 0.002);
  s.omega_c = cfg.number("bath.omega_c", 3.0);
  s.modes = static_cast<int>(cfg.integer("bath.modes", 150));
  s.range = pick<RangeConvention, 2>(
      cfg, "bath.range", "equal_tails",
      {{{"equal_tails", RangeConvention::EqualTails}, {"floor", RangeConvention::Floor}}});
  s.omega_min = cfg.number("bath.omega_min", 0.5);
  s.temperature = cfg.number("bath.temperature", 0.0);
  s.temperature2 = cfg.number("bath.temperature2", s.temperature);

  s.r = cfg.number("drive.r", 0.0);
  s.omega_L = cfg.has("drive.detuning") ? s.omega - cfg.number("drive.detuning", 0.0)
                                        : cfg.number("drive.omega_L", s.omega);
  const std::string variant = cfg.get("drive.variant", "all");
  if (variant == "all") {
    s.variants = {RabiVariant::Plain, RabiVariant::OffResonant, RabiVariant::NoSecular};
  } else {
    s.variants = {pick<RabiVariant, 3>(cfg, "drive.variant", "all",
                                       {{{"plain", RabiVariant::Plain},
                                         {"off_resonant", RabiVariant::OffResonant},
                                         {"no_secular", RabiVariant::NoSecular}}})};
  }

  s.t_max = cfg.number("time.t_max", 50.0);
  s.samples = static_cast<int>(cfg.integer("time.samples", 101));

  s.sweep_param = cfg.get("sweep.param", "");
  if (!s.sweep_param.empty()) {
    const auto& keys = sweepable_keys();
    require(std::find(keys.begin(), keys.end(), s.sweep_param) != keys.end(),
            "sweep.param '" + s.sweep_param + "' is not a sweepable key");
    s.sweep_values = cfg.numbers("sweep.values");
    require(!s.sweep_values.empty(), "sweep.values must list at least one value");
  } else {
    require(!cfg.has("sweep.values"), "sweep.values given without sweep.param");
  }
  {
    std::stringstream in(cfg.get("output.quantities", ""));
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (!item.empty()) s.quantities.push_back(item);
    }
  }

  require(s.omega > 0, "system.omega must be positive");
  require(s.omega2 > 0, "system.omega2 must be positive");
  require(s.beta >= 0, "system.beta must be >= 0");
  require(s.t_s >= 0, "system.t_s must be >= 0");
  require(s.alpha >= 0, "bath.alpha must be >= 0");
  require(s.omega_c > 0, "bath.omega_c must be positive");
  require(s.modes == 0 || s.modes >= 2, "bath.modes must be 0 or at least 2");
  require(s.omega_min > 0, "bath.omega_min must be positive");
  require(s.temperature >= 0 && s.temperature2 >= 0, "bath temperatures must be >= 0");
  require(s.t_max > 0, "time.t_max must be positive");
  require(s.samples >= 2, "time.samples must be at least 2");
  if (s.range == RangeConvention::Floor) {
    require(s.omega_min < s.omega_c, "floor range convention needs bath.omega_min < bath.omega_c");
  }

  switch (s.experiment) {
    case Experiment::VarianceTrajectory:
    case Experiment::RecurrenceMap:
    case Experiment::FactorizationDistance:
      require(s.scenario == Scenario::Single,
              std::string(to_string(s.experiment)) + " requires scenario.kind = single");
      break;
    case Experiment::TwoOscillatorSuite:
      require(s.scenario == Scenario::TwoCoupled,
              "two_oscillator_suite requires scenario.kind = two_coupled");
      break;
    case Experiment::DrivenSuite:
      require(s.scenario == Scenario::Driven, "driven_suite requires scenario.kind = driven");
      break;
    default:
      break;
  }
  if (s.experiment == Experiment::FactorizationDistance) {
    require(s.modes <= 60, "factorization_distance needs bath.modes <= 60 (full-state fidelity)");
  }
  if (s.experiment == Experiment::RecurrenceMap || s.experiment == Experiment::FactorizationDistance) {
    require(s.modes >= 2 || s.sweep_param == "bath.modes",
            std::string(to_string(s.experiment)) + " needs a discretized bath (bath.modes >= 2)");
  }
  if (s.scenario == Scenario::TwoCoupled) {
    require(s.omega2 == s.omega,
            "two_coupled needs resonant oscillators (system.omega2 = system.omega)");
    require(s.beta < s.omega,
            "system.beta must be below system.omega: for beta >= omega the normal-mode "
            "frequency omega - beta is not positive and the eigenfrequencies become imaginary");
    if (s.beta > s.omega / 5) {
      s.warnings.push_back("beta > omega/5: the rotating-wave coupling is questionable");
    }
  }
  if (s.scenario == Scenario::Driven) {
    require(s.omega_L > 0, "drive.omega_L must be positive");
    // With a frequency sweep the base values are overridden point by point.
    const bool swept = s.sweep_param == "drive.detuning" || s.sweep_param == "drive.omega_L" ||
                       s.sweep_param == "system.omega";
    for (const auto v : swept ? std::vector<RabiVariant>{} : s.variants) {
      require(v == RabiVariant::Plain || s.omega_L != s.omega,
              std::string("drive.variant ") + to_string(v) + " requires drive.omega_L != system.omega");
    }
  }
  return s;
}

}  // namespace oscbath
