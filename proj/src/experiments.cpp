#include "oscbath/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "oscbath/errors.hpp"
#include "oscbath/fock.hpp"

namespace oscbath {

namespace {

using cd = std::complex<double>;

// Same operator content as generator_single and friends but accepting zero
// rates, so decoupled baths (alpha = 0) run through the same code path.
QuadraticGenerator local_generator(const std::vector<double>& omega_bar, double beta,
                                   const std::vector<double>& gamma,
                                   const std::vector<double>& nbar) {
  const auto n = static_cast<Eigen::Index>(omega_bar.size());
  QuadraticGenerator g;
  g.h = Eigen::MatrixXcd::Zero(n, n);
  g.f = Eigen::VectorXcd::Zero(n);
  g.k_emission = Eigen::MatrixXcd::Zero(n, n);
  g.k_absorption = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    g.h(j, j) = omega_bar[k];
    g.k_emission(j, j) = 2 * gamma[k] * (nbar[k] + 1);
    g.k_absorption(j, j) = 2 * gamma[k] * nbar[k];
  }
  if (n == 2) g.h(0, 1) = g.h(1, 0) = beta;
  return g;
}

struct SingleRates {
  double omega_bar, gamma, nbar;
};

SingleRates single_rates(const ScenarioConfig& s, double temperature) {
  const OhmicSpectrum sp = make_spectrum(s);
  return {s.omega + lamb_shift(sp, s.omega), decay_rate(sp, s.omega),
          bose_occupation(s.omega, temperature)};
}

MomentFlow markov_flow(const SingleRates& r) {
  return moment_flow(local_generator({r.omega_bar}, 0, {r.gamma}, {r.nbar}));
}

MomentFlow local_flow(const ScenarioConfig& s) {
  const SingleRates r1 = single_rates(s, s.temperature);
  const SingleRates r2 = single_rates(s, s.temperature2);
  return moment_flow(local_generator({r1.omega_bar, r2.omega_bar}, s.beta, {r1.gamma, r2.gamma},
                                     {r1.nbar, r2.nbar}));
}

MomentFlow normal_mode_flow(const ScenarioConfig& s, std::vector<std::string>& warnings) {
  const OhmicSpectrum sp = make_spectrum(s);
  const TwoBathCoefficients c =
      k_matrices(s.omega, s.beta, bath_rates(sp, s.temperature, s.omega, s.beta),
                 bath_rates(sp, s.temperature2, s.omega, s.beta));
  for (const auto& w : c.warnings) warnings.push_back(w);
  return moment_flow(generator_two_large_beta(c));
}

MomentFlow driven_flow(const ScenarioConfig& s, RabiVariant v, std::vector<std::string>& warnings) {
  const OhmicSpectrum sp = make_spectrum(s);
  const SingleRates r = single_rates(s, s.temperature);
  const cd r_bar = rabi_renormalization(sp, s.omega, s.omega_L, s.r, v, &warnings);
  QuadraticGenerator g = local_generator({r.omega_bar - s.omega_L}, 0, {r.gamma}, {r.nbar});
  g.f(0) = std::conj(r_bar);
  MomentFlow flow = moment_flow(g);
  flow.frame_frequency = s.omega_L;
  return flow;
}

CouplingMatrix coupling_matrix(const ScenarioConfig& s, const BathCouplings& bath) {
  if (s.scenario == Scenario::TwoCoupled) return build_two(s.omega, s.omega2, s.beta, bath, bath);
  return build_single(s.omega, bath);
}

std::vector<double> bath_temperatures(const ScenarioConfig& s) {
  if (s.scenario == Scenario::TwoCoupled) return {s.temperature, s.temperature2};
  return {s.temperature};
}

ExactSimulator make_simulator(const ScenarioConfig& s, const CouplingMatrix& cm,
                              const GaussianStated& system) {
  GaussianStated g0 = product_initial_state(cm, system, bath_temperatures(s));
  if (s.scenario == Scenario::Driven) {
    return ExactSimulator(cm, std::move(g0), AffineDrive{s.r, s.omega_L});
  }
  return ExactSimulator(cm, std::move(g0));
}

void add_series(PointResult& p, const std::string& q, const std::vector<double>& t,
                const std::vector<double>& v) {
  for (std::size_t k = 0; k < t.size(); ++k) p.rows.push_back({q, t[k], v[k]});
}

double mean_of(const std::vector<double>& v) {
  double acc = 0;
  for (const double x : v) acc += x;
  return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

}  // namespace

OhmicSpectrum make_spectrum(const ScenarioConfig& s) { return OhmicSpectrum(s.alpha, s.omega_c); }

BathCouplings make_bath(const ScenarioConfig& s) {
  if (s.modes == 0) return {};
  const OhmicSpectrum sp = make_spectrum(s);
  return discretize(sp, s.modes, omega_range(sp, s.range, s.omega_min));
}

GaussianStated make_system_state(const ScenarioConfig& s, int n_modes) {
  GaussianStated one;
  switch (s.initial) {
    case InitialState::Vacuum: one = make_vacuum(1); break;
    case InitialState::Thermal: one = make_thermal(std::vector<double>{s.omega}, s.t_s); break;
    case InitialState::Squeezed: one = make_squeezed_vacuum(s.r_sq); break;
    case InitialState::Coherent: one = make_coherent(cd(s.coherent_re, s.coherent_im)); break;
  }
  GaussianStated out = one;
  for (int k = 1; k < n_modes; ++k) out = tensor_product(out, one);
  return out;
}

std::optional<double> recurrence_onset(const std::vector<double>& t, const std::vector<double>& d,
                                       double estimate) {
  std::vector<double> base;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] > 0 && t[k] <= 0.5 * estimate) base.push_back(d[k]);
  }
  if (base.empty()) return std::nullopt;
  std::sort(base.begin(), base.end());
  const std::size_t m = base.size();
  const double median = m % 2 ? base[m / 2] : 0.5 * (base[m / 2 - 1] + base[m / 2]);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] > 0.5 * estimate && d[k] > 3 * median) return t[k];
  }
  return std::nullopt;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2 || x.size() != y.size()) throw DomainError("fit_line: need >= 2 points");
  const double mx = mean_of(x), my = mean_of(y);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

PointResult run_variance_trajectory(const ScenarioConfig& s) {
  PointResult p;
  const auto t = s.times();
  const GaussianStated sys = make_system_state(s, 1);
  const CouplingMatrix cm = coupling_matrix(s, make_bath(s));
  const ExactSimulator sim = make_simulator(s, cm, sys);
  SingleRates r = single_rates(s, s.temperature);
  const MomentFlow with_shift = markov_flow(r);
  r.omega_bar = s.omega;
  const MomentFlow no_shift = markov_flow(r);
  std::vector<double> ex, mk, mk0;
  for (const double tk : t) {
    ex.push_back(sim.system_state(tk).cov(0, 0));
    mk.push_back(evolve_flow(with_shift, sys, tk).cov(0, 0));
    mk0.push_back(evolve_flow(no_shift, sys, tk).cov(0, 0));
  }
  add_series(p, "cov_xx_exact", t, ex);
  add_series(p, "cov_xx_markov", t, mk);
  add_series(p, "cov_xx_markov_noshift", t, mk0);
  return p;
}

PointResult run_fidelity_vs_time(const ScenarioConfig& s) {
  PointResult p;
  const auto t = s.times();
  const int n = s.scenario == Scenario::TwoCoupled ? 2 : 1;
  const GaussianStated sys = make_system_state(s, n);
  const CouplingMatrix cm = coupling_matrix(s, make_bath(s));
  for (const auto& w : cm.warnings) p.warnings.push_back(w);
  const ExactSimulator sim = make_simulator(s, cm, sys);

  std::vector<std::pair<std::string, MomentFlow>> flows;
  switch (s.scenario) {
    case Scenario::Single:
      flows.emplace_back("fidelity_markov", markov_flow(single_rates(s, s.temperature)));
      break;
    case Scenario::TwoCoupled:
      flows.emplace_back("fidelity_local", local_flow(s));
      flows.emplace_back("fidelity_normal_mode", normal_mode_flow(s, p.warnings));
      break;
    case Scenario::Driven:
      for (const auto v : s.variants) {
        flows.emplace_back(std::string("fidelity_") + to_string(v), driven_flow(s, v, p.warnings));
      }
      break;
  }
  std::vector<GaussianStated> exact;
  for (const double tk : t) exact.push_back(sim.system_state(tk));
  for (const auto& [name, flow] : flows) {
    std::vector<double> f;
    for (std::size_t k = 0; k < t.size(); ++k) {
      f.push_back(fidelity(exact[k], evolve_flow(flow, sys, t[k])));
    }
    add_series(p, name, t, f);
  }
  return p;
}

PointResult run_recurrence_map(const ScenarioConfig& s) {
  PointResult p;
  const auto t = s.times();
  const GaussianStated sys = make_system_state(s, 1);
  const BathCouplings bath = make_bath(s);
  const ExactSimulator sim = make_simulator(s, coupling_matrix(s, bath), sys);
  const MomentFlow flow = markov_flow(single_rates(s, s.temperature));
  std::vector<double> d;
  for (const double tk : t) d.push_back(db_distance(sim.system_state(tk), evolve_flow(flow, sys, tk)));
  add_series(p, "db_distance", t, d);
  const double estimate = recurrence_time_estimate(bath);
  p.rows.push_back({"recurrence_estimate", std::nullopt, estimate});
  if (const auto onset = recurrence_onset(t, d, estimate)) {
    p.rows.push_back({"recurrence_onset", std::nullopt, *onset});
  } else {
    p.warnings.push_back("no recurrence onset detected within time.t_max");
  }
  return p;
}

PointResult run_correlation_study(const ScenarioConfig& s) {
  PointResult p;
  const auto lags = s.times();
  const OhmicSpectrum sp = make_spectrum(s);
  const double temp = s.temperature;
  std::vector<double> c0, ct, cd_sum;
  const BathCouplings bath = make_bath(s);
  for (const double lag : lags) {
    c0.push_back(std::abs(corr_c0(sp, lag)));
    if (temp > 0) ct.push_back(std::abs(corr_ct(sp, lag, temp)));
    if (bath.size() >= 2) cd_sum.push_back(std::abs(correlation_sum(bath, lag, temp)));
  }
  add_series(p, "abs_c0", lags, c0);
  if (temp > 0) add_series(p, "abs_ct", lags, ct);
  if (!cd_sum.empty()) add_series(p, "abs_c_discrete", lags, cd_sum);
  const double bound = 40 / s.omega_c + (temp > 0 ? 40 / temp : 0.0);
  p.rows.push_back({"fwhh_c0", std::nullopt,
                    fwhh([&](double x) { return std::abs(corr_c0(sp, x)); }, bound)});
  if (temp > 0) {
    p.rows.push_back({"peak_ct", std::nullopt, std::abs(corr_ct(sp, 0.0, temp))});
    p.rows.push_back({"fwhh_ct", std::nullopt,
                      fwhh([&](double x) { return std::abs(corr_ct(sp, x, temp)); }, bound)});
  }
  return p;
}

PointResult run_factorization_distance(const ScenarioConfig& s) {
  PointResult p;
  const auto t = s.times();
  const GaussianStated sys = make_system_state(s, 1);
  const BathCouplings bath = make_bath(s);
  const CouplingMatrix cm = coupling_matrix(s, bath);
  const GaussianStated g0 = product_initial_state(cm, sys, bath_temperatures(s));
  const ExactSimulator sim(cm, g0);
  std::vector<Eigen::Index> bath_modes;
  for (Eigen::Index j = 1; j < cm.dim(); ++j) bath_modes.push_back(j);
  const GaussianStated bath0 = partial_trace(g0, std::span<const Eigen::Index>(bath_modes));
  std::vector<double> d;
  for (const double tk : t) {
    const GaussianStated global = sim.global_state(tk);
    const GaussianStated ansatz = tensor_product(partial_trace(global, {0}), bath0);
    d.push_back(db_distance(global, ansatz));
  }
  add_series(p, "db_factorization", t, d);
  const double estimate = recurrence_time_estimate(bath);
  std::vector<double> tw, dw;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] <= 0.9 * estimate) {
      tw.push_back(t[k]);
      dw.push_back(d[k]);
    }
  }
  p.rows.push_back({"recurrence_estimate", std::nullopt, estimate});
  if (tw.size() >= 2) {
    p.rows.push_back({"slope_prerecurrence", std::nullopt, fit_line(tw, dw).slope});
  } else {
    p.warnings.push_back("fewer than two samples before the recurrence estimate");
  }
  return p;
}

PointResult run_two_oscillator_suite(const ScenarioConfig& s) {
  PointResult p;
  const auto t = s.times();
  const GaussianStated sys = make_system_state(s, 2);
  const CouplingMatrix cm = coupling_matrix(s, make_bath(s));
  for (const auto& w : cm.warnings) p.warnings.push_back(w);
  const ExactSimulator sim = make_simulator(s, cm, sys);
  const MomentFlow fa = local_flow(s);
  const MomentFlow fl = normal_mode_flow(s, p.warnings);
  std::vector<double> va, vl, vi;
  for (const double tk : t) {
    const GaussianStated ex = sim.system_state(tk);
    const GaussianStated a = evolve_flow(fa, sys, tk);
    const GaussianStated l = evolve_flow(fl, sys, tk);
    va.push_back(fidelity(ex, a));
    vl.push_back(fidelity(ex, l));
    vi.push_back(fidelity(a, l));
  }
  add_series(p, "fidelity_local", t, va);
  add_series(p, "fidelity_normal_mode", t, vl);
  add_series(p, "fidelity_inter", t, vi);
  p.rows.push_back({"fidelity_local_tmax", std::nullopt, va.back()});
  p.rows.push_back({"fidelity_normal_mode_tmax", std::nullopt, vl.back()});
  if (s.alpha > 0) {
    p.rows.push_back({"steady_fidelity_inter", std::nullopt,
                      fidelity(steady_state(fa), steady_state(fl))});
  }
  return p;
}

PointResult run_driven_suite(const ScenarioConfig& s) {
  PointResult p;
  const auto t = s.times();
  const GaussianStated sys = make_system_state(s, 1);
  const CouplingMatrix cm = coupling_matrix(s, make_bath(s));
  const ExactSimulator sim = make_simulator(s, cm, sys);
  std::vector<GaussianStated> exact;
  for (const double tk : t) exact.push_back(sim.system_state(tk));
  const OhmicSpectrum sp = make_spectrum(s);
  p.rows.push_back({"detuning", std::nullopt, s.omega - s.omega_L});
  p.rows.push_back({"gamma", std::nullopt, decay_rate(sp, s.omega)});
  for (const auto v : s.variants) {
    const MomentFlow flow = driven_flow(s, v, p.warnings);
    std::vector<double> f, d;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double fk = fidelity(exact[k], evolve_flow(flow, sys, t[k]));
      f.push_back(fk);
      d.push_back(db_distance_from_fidelity(fk));
    }
    const std::string name = to_string(v);
    add_series(p, "fidelity_" + name, t, f);
    p.rows.push_back({"fidelity_" + name + "_tmax", std::nullopt, f.back()});
    p.rows.push_back({"traj_error_" + name, std::nullopt, mean_of(d)});
  }
  return p;
}

PointResult run_point(const ScenarioConfig& s) {
  switch (s.experiment) {
    case Experiment::VarianceTrajectory: return run_variance_trajectory(s);
    case Experiment::FidelityVsTime: return run_fidelity_vs_time(s);
    case Experiment::RecurrenceMap: return run_recurrence_map(s);
    case Experiment::CorrelationStudy: return run_correlation_study(s);
    case Experiment::FactorizationDistance: return run_factorization_distance(s);
    case Experiment::TwoOscillatorSuite: return run_two_oscillator_suite(s);
    case Experiment::DrivenSuite: return run_driven_suite(s);
  }
  throw ConfigError("unknown experiment");
}

std::string format_number(double v) {
  // shortest text that parses back to the same double
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ExperimentResult run_experiment(const Config& cfg, int threads) {
  const ScenarioConfig base = make_scenario(cfg);
  std::vector<ScenarioConfig> points;
  if (base.sweep_param.empty()) {
    points.push_back(base);
  } else {
    for (const double v : base.sweep_values) {
      Config c = cfg;
      c.set(base.sweep_param, base.sweep_param == "bath.modes"
                                  ? std::to_string(static_cast<long>(std::llround(v)))
                                  : format_number(v));
      points.push_back(make_scenario(c));
    }
  }

  ExperimentResult result;
  result.sweep_param = base.sweep_param.empty() ? "none" : base.sweep_param;
  result.points.resize(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        result.points[i] = run_point(points[i]);
        for (const auto& w : points[i].warnings) result.points[i].warnings.push_back(w);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_workers = std::clamp(threads, 1, static_cast<int>(points.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::set<std::string> wanted(base.quantities.begin(), base.quantities.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& pr = result.points[i];
    if (!base.sweep_param.empty()) pr.sweep_value = base.sweep_values[i];
    if (!wanted.empty()) {
      std::erase_if(pr.rows, [&](const ResultRow& r) { return wanted.count(r.quantity) == 0; });
    }
  }

  // onset-vs-M fit across the sweep, reported with an empty sweep_value
  if (base.experiment == Experiment::RecurrenceMap && base.sweep_param == "bath.modes") {
    std::vector<double> m, onset;
    for (const auto& pr : result.points) {
      for (const auto& r : pr.rows) {
        if (r.quantity == "recurrence_onset") {
          m.push_back(*pr.sweep_value);
          onset.push_back(r.value);
        }
      }
    }
    if (m.size() >= 2) {
      const LineFit fit = fit_line(m, onset);
      PointResult agg;
      agg.rows = {{"onset_slope", std::nullopt, fit.slope},
                  {"onset_r_squared", std::nullopt, fit.r_squared}};
      result.points.push_back(std::move(agg));
    }
  }

  auto& meta = result.metadata;
  meta.push_back(kToolVersion);
  meta.push_back(std::string("experiment: ") + to_string(base.experiment) +
                 "; scenario: " + to_string(base.scenario));
  meta.push_back(
      "convention: x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)); "
      "covariance C = <{dR, dR}> so the vacuum is I; ordering (x..., p...)");
  if (base.scenario == Scenario::Driven) {
    meta.push_back("frame: rotating at omega_L (drive.omega_L); means are rotating-frame values");
  } else {
    meta.push_back("frame: laboratory");
  }
  std::istringstream canon(cfg.canonical());
  for (std::string line; std::getline(canon, line);) meta.push_back("config: " + line);
  return result;
}

namespace {

DensityMatrix fock_initial_one(const ScenarioConfig& s, int cutoff) {
  switch (s.initial) {
    case InitialState::Vacuum: return fock_thermal(0.0, cutoff);
    case InitialState::Thermal: return fock_thermal(bose_occupation(s.omega, s.t_s), cutoff);
    case InitialState::Squeezed: return fock_squeezed_vacuum(s.r_sq, cutoff);
    case InitialState::Coherent: return fock_coherent(cd(s.coherent_re, s.coherent_im), cutoff);
  }
  throw ConfigError("unknown initial state");
}

}  // namespace

ExperimentResult run_oracle(const Config& cfg) {
  const ScenarioConfig s = make_scenario(cfg);
  const int cutoff = static_cast<int>(cfg.integer("oracle.cutoff", 12));
  if (cutoff < 4) throw ConfigError("config: oracle.cutoff must be at least 4");
  PointResult p;
  QuadraticGenerator g;
  std::string family;
  switch (s.scenario) {
    case Scenario::Single: {
      family = "markov";
      const SingleRates r = single_rates(s, s.temperature);
      g = local_generator({r.omega_bar}, 0, {r.gamma}, {r.nbar});
      break;
    }
    case Scenario::TwoCoupled: {
      family = cfg.get("oracle.family", "normal_mode");
      if (family == "local") {
        const SingleRates r1 = single_rates(s, s.temperature);
        const SingleRates r2 = single_rates(s, s.temperature2);
        g = local_generator({r1.omega_bar, r2.omega_bar}, s.beta, {r1.gamma, r2.gamma},
                            {r1.nbar, r2.nbar});
      } else if (family == "normal_mode") {
        const OhmicSpectrum sp = make_spectrum(s);
        const TwoBathCoefficients c =
            k_matrices(s.omega, s.beta, bath_rates(sp, s.temperature, s.omega, s.beta),
                       bath_rates(sp, s.temperature2, s.omega, s.beta));
        g = generator_two_large_beta(c);
      } else {
        throw ConfigError("config: oracle.family must be local or normal_mode for two_coupled");
      }
      break;
    }
    case Scenario::Driven: {
      if (s.variants.size() != 1) throw ConfigError("config: oracle needs a single drive.variant");
      family = std::string("driven_") + to_string(s.variants.front());
      const SingleRates r = single_rates(s, s.temperature);
      const cd r_bar = rabi_renormalization(make_spectrum(s), s.omega, s.omega_L, s.r,
                                            s.variants.front(), &p.warnings);
      g = local_generator({r.omega_bar - s.omega_L}, 0, {r.gamma}, {r.nbar});
      g.f(0) = std::conj(r_bar);
      break;
    }
  }
  const int n = static_cast<int>(g.h.rows());
  const MomentFlow flow = moment_flow(g);
  DensityMatrix rho0 = fock_initial_one(s, cutoff);
  if (n == 2) rho0 = fock_kron(rho0, rho0);
  rho0 /= rho0.trace();
  const GaussianStated g0 = moments(rho0, n, cutoff).state;
  const Superoperator op = build_superoperator(spec_from_generator(g, cutoff));
  const auto t = s.times();
  const auto rhos = integrate(op, rho0, t);
  double worst = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const FockMoments fm = moments(rhos[k], n, cutoff);
    const GaussianStated fs = evolve_flow(flow, g0, t[k]);
    const double dm = (fm.state.mean - fs.mean).cwiseAbs().maxCoeff();
    const double dc = (fm.state.cov - fs.cov).cwiseAbs().maxCoeff();
    worst = std::max({worst, dm, dc});
    p.rows.push_back({"max_abs_mean_diff", t[k], dm});
    p.rows.push_back({"max_abs_cov_diff", t[k], dc});
    p.rows.push_back({"trace_error", t[k], std::abs(rhos[k].trace() - 1.0)});
    p.rows.push_back({"edge_population", t[k], fm.edge_population});
    for (const auto& w : fm.warnings) p.warnings.push_back("t = " + format_number(t[k]) + ": " + w);
  }
  p.rows.push_back({"max_abs_moment_diff", std::nullopt, worst});

  ExperimentResult result;
  result.sweep_param = "none";
  result.points.push_back(std::move(p));
  result.metadata.push_back(kToolVersion);
  result.metadata.push_back("oracle: " + family + ", cutoff " + std::to_string(cutoff));
  std::istringstream canon(cfg.canonical());
  for (std::string line; std::getline(canon, line);) result.metadata.push_back("config: " + line);
  return result;
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
  for (const auto& m : result.metadata) out << "# " << m << "\n";
  for (const auto& p : result.points) {
    for (const auto& w : p.warnings) {
      out << "# warning";
      if (p.sweep_value) out << " [" << result.sweep_param << " = " << format_number(*p.sweep_value) << "]";
      out << ": " << w << "\n";
    }
  }
  out << "sweep_param,sweep_value,t,quantity,value\n";
  for (const auto& p : result.points) {
    const std::string sv = p.sweep_value ? format_number(*p.sweep_value) : "";
    for (const auto& r : p.rows) {
      out << result.sweep_param << "," << sv << "," << (r.t ? format_number(*r.t) : "") << ","
          << r.quantity << "," << format_number(r.value) << "\n";
    }
  }
}

}  // namespace oscbath
