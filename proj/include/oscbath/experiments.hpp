#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oscbath/config.hpp"
#include "oscbath/exact.hpp"
#include "oscbath/flows.hpp"

namespace oscbath {

struct ResultRow {
  std::string quantity;
  std::optional<double> t;  // empty for summary rows
  double value = 0.0;
};

struct PointResult {
  std::optional<double> sweep_value;
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
};

/// Tidy table plus metadata header; rows are ordered by sweep point.
struct ExperimentResult {
  std::string sweep_param;
  std::vector<std::string> metadata;
  std::vector<PointResult> points;
};

inline constexpr const char* kToolVersion = "oscbath 1.0.0";

// One configuration point each; sweeps are handled by run_experiment.
PointResult run_variance_trajectory(const ScenarioConfig& s);
PointResult run_fidelity_vs_time(const ScenarioConfig& s);
PointResult run_recurrence_map(const ScenarioConfig& s);
PointResult run_correlation_study(const ScenarioConfig& s);
PointResult run_factorization_distance(const ScenarioConfig& s);
PointResult run_two_oscillator_suite(const ScenarioConfig& s);
PointResult run_driven_suite(const ScenarioConfig& s);
PointResult run_point(const ScenarioConfig& s);

/// Validates, expands the sweep and evaluates points on `threads` workers.
/// Output does not depend on the thread count.
ExperimentResult run_experiment(const Config& cfg, int threads = 1);

/// Spot check of the moment flow for the configured scenario against the
/// truncated Fock-space integration (keys oracle.cutoff, oracle.family).
ExperimentResult run_oracle(const Config& cfg);

void write_csv(const ExperimentResult& result, std::ostream& out);
std::string format_number(double v);

// Helpers shared with the analysis code.
OhmicSpectrum make_spectrum(const ScenarioConfig& s);
BathCouplings make_bath(const ScenarioConfig& s);
GaussianStated make_system_state(const ScenarioConfig& s, int n_modes);

/// First t beyond half the estimate where d exceeds 3x the median of d over
/// (0, estimate/2]; nullopt if it never does.
std::optional<double> recurrence_onset(const std::vector<double>& t, const std::vector<double>& d,
                                       double estimate);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace oscbath
