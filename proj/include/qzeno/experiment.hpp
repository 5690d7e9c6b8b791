#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "qzeno/models.hpp"
#include "qzeno/trajectory.hpp"

namespace qzeno {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kRngDescription = "mt19937_64, u=(x>>11)*2^-53";
inline constexpr int kMaxOrder = 6;

enum class RunMode { Exact, Effective, Qzd, Trajectories, Compare };
enum class ReportFormat { Csv, Json };

inline std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::Exact: return "exact";
    case RunMode::Effective: return "effective";
    case RunMode::Qzd: return "qzd";
    case RunMode::Trajectories: return "trajectories";
    case RunMode::Compare: return "compare";
  }
  return "?";
}

inline RunMode run_mode_from_string(const std::string& s) {
  if (s == "exact") return RunMode::Exact;
  if (s == "effective") return RunMode::Effective;
  if (s == "qzd") return RunMode::Qzd;
  if (s == "trajectories") return RunMode::Trajectories;
  if (s == "compare") return RunMode::Compare;
  throw ConfigError("mode: unknown value '" + s + "'");
}

inline std::string to_string(ReportFormat f) {
  return f == ReportFormat::Csv ? "csv" : "json";
}

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw ConfigError("format: unknown value '" + s + "'");
}

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Spin1Transverse: return "spin1-transverse";
    case ModelKind::XXChain: return "xx-chain";
    case ModelKind::BoseHubbard: return "bose-hubbard";
  }
  return "?";
}

inline ModelKind model_kind_from_string(const std::string& s) {
  if (s == "spin1-transverse") return ModelKind::Spin1Transverse;
  if (s == "xx-chain") return ModelKind::XXChain;
  if (s == "bose-hubbard") return ModelKind::BoseHubbard;
  throw ConfigError("model.kind: unknown value '" + s + "'");
}

inline std::string to_string(ObservableKind k) {
  switch (k) {
    case ObservableKind::RegionOccupation: return "region-occupation";
    case ObservableKind::RegionOccupationDifference:
      return "region-occupation-difference";
    case ObservableKind::RegionMagnetization: return "region-magnetization";
    case ObservableKind::AbsSz: return "abs-sz";
  }
  return "?";
}

inline ObservableKind observable_kind_from_string(const std::string& s) {
  if (s == "region-occupation") return ObservableKind::RegionOccupation;
  if (s == "region-occupation-difference")
    return ObservableKind::RegionOccupationDifference;
  if (s == "region-magnetization") return ObservableKind::RegionMagnetization;
  if (s == "abs-sz") return ObservableKind::AbsSz;
  throw ConfigError("observable.kind: unknown value '" + s + "'");
}

struct ExperimentConfig {
  ModelSpec model;
  ObservableSpec observable;
  std::string initial_label;               // one of label ...
  std::vector<Complex> initial_amplitudes;  // ... or amplitudes
  double dt = 1e-2;
  double tau = 1.0;
  int order = 2;
  RunMode mode = RunMode::Compare;
  int n_trajectories = 0;
  std::uint64_t seed = 1;
  std::string output_path = "run";
  ReportFormat format = ReportFormat::Csv;
};

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json model{{"kind", to_string(c.model.kind)},
                       {"lambda", c.model.lambda},
                       {"j", c.model.j},
                       {"u", c.model.u},
                       {"field_z", c.model.field_z},
                       {"coupling_zz", c.model.coupling_zz},
                       {"sites", c.model.sites},
                       {"total_particles", c.model.total_particles}};
  if (!c.model.edges.empty()) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : c.model.edges) edges.push_back({a, b});
    model["edges"] = edges;
  }
  nlohmann::json obs{{"kind", to_string(c.observable.kind)}};
  if (!c.observable.weights.empty()) obs["weights"] = c.observable.weights;

  nlohmann::json j{{"model", model},
                   {"observable", obs},
                   {"dt", c.dt},
                   {"tau", c.tau},
                   {"order", c.order},
                   {"mode", to_string(c.mode)},
                   {"seed", c.seed},
                   {"output", c.output_path},
                   {"format", to_string(c.format)}};
  if (c.mode == RunMode::Trajectories || c.n_trajectories > 0)
    j["n_trajectories"] = c.n_trajectories;
  if (!c.initial_label.empty()) {
    j["initial_state"] = c.initial_label;
  } else {
    nlohmann::json amps = nlohmann::json::array();
    for (const Complex& z : c.initial_amplitudes)
      amps.push_back({z.real(), z.imag()});
    j["initial_state"] = amps;
  }
  return j;
}

namespace detail {

template <typename T>
T json_field(const nlohmann::json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(key + ": invalid value");
  }
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentConfig c;

  if (!j.contains("model") || !j.at("model").is_object())
    throw ConfigError("model: missing section");
  const nlohmann::json& jm = j.at("model");
  c.model.kind = model_kind_from_string(
      detail::json_field<std::string>(jm, "kind", ""));
  c.model.lambda = detail::json_field<double>(jm, "lambda", 1.0);
  c.model.j = detail::json_field<double>(jm, "j", 1.0);
  c.model.u = detail::json_field<double>(jm, "u", 0.0);
  c.model.field_z = detail::json_field<double>(jm, "field_z", 0.0);
  c.model.coupling_zz = detail::json_field<double>(jm, "coupling_zz", 0.0);
  c.model.sites = detail::json_field<int>(jm, "sites", 1);
  c.model.total_particles =
      detail::json_field<int>(jm, "total_particles", 0);
  if (jm.contains("edges")) {
    if (!jm.at("edges").is_array())
      throw ConfigError("model.edges: expected an array of site pairs");
    for (const auto& e : jm.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw ConfigError("model.edges: expected an array of site pairs");
      c.model.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    }
  }
  if (!std::isfinite(c.model.lambda) || !std::isfinite(c.model.j) ||
      !std::isfinite(c.model.u))
    throw ConfigError("model: parameters must be finite");

  if (!j.contains("observable") || !j.at("observable").is_object())
    throw ConfigError("observable: missing section");
  const nlohmann::json& jo = j.at("observable");
  c.observable.kind = observable_kind_from_string(
      detail::json_field<std::string>(jo, "kind", ""));
  c.observable.weights =
      detail::json_field<std::vector<double>>(jo, "weights", {});

  if (!j.contains("initial_state"))
    throw ConfigError("initial_state: missing field");
  const nlohmann::json& js = j.at("initial_state");
  if (js.is_string()) {
    c.initial_label = js.get<std::string>();
  } else if (js.is_array()) {
    for (const auto& a : js) {
      if (a.is_number()) {
        c.initial_amplitudes.push_back(Complex(a.get<double>(), 0.0));
      } else if (a.is_array() && a.size() == 2) {
        c.initial_amplitudes.push_back(
            Complex(a.at(0).get<double>(), a.at(1).get<double>()));
      } else {
        throw ConfigError(
            "initial_state: amplitudes must be numbers or [re, im] pairs");
      }
    }
    if (c.initial_amplitudes.empty())
      throw ConfigError("initial_state: empty amplitude list");
  } else {
    throw ConfigError("initial_state: expected a label or amplitude list");
  }

  c.dt = detail::json_field<double>(j, "dt", c.dt);
  c.tau = detail::json_field<double>(j, "tau", c.tau);
  c.order = detail::json_field<int>(j, "order", c.order);
  c.mode = run_mode_from_string(
      detail::json_field<std::string>(j, "mode", "compare"));
  c.n_trajectories = detail::json_field<int>(j, "n_trajectories", 0);
  c.seed = detail::json_field<std::uint64_t>(j, "seed", 1);
  c.output_path = detail::json_field<std::string>(j, "output", "run");
  c.format = report_format_from_string(
      detail::json_field<std::string>(j, "format", "csv"));
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

// Number of measurements; tau must sit on the stroboscopic grid.
inline long long experiment_steps(const ExperimentConfig& c) {
  if (!(c.dt > 0) || !std::isfinite(c.dt))
    throw ConfigError("dt: must be > 0");
  if (!std::isfinite(c.tau) || c.tau < c.dt)
    throw ConfigError("tau: must satisfy tau >= dt");
  double ratio = c.tau / c.dt;
  long long n = (long long)std::llround(ratio);
  if (std::abs(ratio - (double)n) > 1e-9)
    throw ConfigError("tau: tau/dt must be an integer (within 1e-9)");
  return n;
}

struct ExperimentSetup {
  Basis basis;
  ComplexMatrix h;
  ComplexMatrix observable;
  ProjectorSet projset;
  StateVector psi0;
  int subspace = -1;
  std::vector<std::string> obs_columns;
  std::vector<RealVector> obs_diagonals;
};

inline ExperimentSetup prepare_experiment(const ExperimentConfig& c) {
  if (c.order < 1 || c.order > kMaxOrder)
    throw ConfigError("order: must be between 1 and " +
                      std::to_string(kMaxOrder));
  experiment_steps(c);
  if (c.mode == RunMode::Trajectories && c.n_trajectories < 1)
    throw ConfigError("n_trajectories: must be >= 1 in trajectories mode");

  ExperimentSetup s;
  try {
    s.basis = model_basis(c.model);
    SiteOperatorSet ops(s.basis);
    s.h = build_hamiltonian(c.model, ops);
    s.observable = build_observable(c.observable, ops);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("model/observable: ") + e.what());
  }
  s.projset = projectors_from_observable(s.observable);

  const int d = s.basis.dim();
  if (!c.initial_label.empty()) {
    int idx = s.basis.parse_label(c.initial_label);
    if (idx < 0)
      throw ConfigError("initial_state: unknown label '" + c.initial_label +
                        "'");
    s.psi0 = StateVector::Zero(d);
    s.psi0(idx) = 1.0;
  } else {
    if ((int)c.initial_amplitudes.size() != d)
      throw ConfigError("initial_state: expected " + std::to_string(d) +
                        " amplitudes");
    s.psi0 = StateVector(d);
    for (int k = 0; k < d; ++k) s.psi0(k) = c.initial_amplitudes[k];
    double norm = s.psi0.norm();
    if (norm < 1e-12)
      throw ConfigError("initial_state: amplitudes have zero norm");
    s.psi0 /= norm;
  }
  s.subspace = s.projset.subspace_of(s.psi0);
  if (s.subspace < 0)
    throw ConfigError(
        "initial_state: state must lie in a single measurement subspace");

  switch (s.basis.kind()) {
    case BasisKind::BosonFock:
      for (int i = 0; i < s.basis.sites(); ++i) {
        s.obs_columns.push_back("n" + std::to_string(i + 1));
        RealVector diag(d);
        for (int k = 0; k < d; ++k) diag(k) = s.basis.label(k)[i];
        s.obs_diagonals.push_back(diag);
      }
      break;
    case BasisKind::SpinHalfChain:
      for (int i = 0; i < s.basis.sites(); ++i) {
        s.obs_columns.push_back("sz" + std::to_string(i + 1));
        RealVector diag(d);
        for (int k = 0; k < d; ++k)
          diag(k) = s.basis.label(k)[i] != 0 ? 0.5 : -0.5;
        s.obs_diagonals.push_back(diag);
      }
      break;
    case BasisKind::Spin1Single: {
      const char* names[] = {"p_minus1", "p_zero", "p_plus1"};
      for (int i = 0; i < 3; ++i) {
        s.obs_columns.push_back(names[i]);
        RealVector diag = RealVector::Zero(3);
        diag(i) = 1.0;
        s.obs_diagonals.push_back(diag);
      }
      break;
    }
    default:
      throw ConfigError("initial_state: unsupported basis kind");
  }
  return s;
}

struct ReportSeries {
  std::string mode;
  std::vector<std::string> columns;  // includes "time" and trailing "survival"
  std::vector<std::vector<double>> rows;
};

struct RunReport {
  nlohmann::json metadata;
  std::vector<ReportSeries> series;
};

namespace detail {

inline std::vector<double> observable_row(const ExperimentSetup& s,
                                          const StateVector& psi,
                                          double time, double survival) {
  std::vector<double> row;
  row.reserve(s.obs_diagonals.size() + 2);
  row.push_back(time);
  double norm2 = psi.squaredNorm();
  for (const RealVector& diag : s.obs_diagonals) {
    double v = 0;
    if (norm2 > 0) {
      for (int k = 0; k < psi.size(); ++k)
        v += diag(k) * std::norm(psi(k));
      v /= norm2;
    }
    row.push_back(v);
  }
  row.push_back(survival);
  return row;
}

inline std::vector<std::string> series_columns(const ExperimentSetup& s) {
  std::vector<std::string> cols;
  cols.push_back("time");
  cols.insert(cols.end(), s.obs_columns.begin(), s.obs_columns.end());
  cols.push_back("survival");
  return cols;
}

inline ReportSeries exact_series(const ExperimentSetup& s, double dt,
                                 long long n) {
  ReportSeries series;
  series.mode = "exact";
  series.columns = series_columns(s);
  const ComplexMatrix step = s.projset.projectors[s.subspace] *
                             mat_exp(Complex(0.0, -dt) * s.h);
  StateVector psi = s.psi0;
  for (long long i = 1; i <= n; ++i) {
    psi = step * psi;
    series.rows.push_back(
        observable_row(s, psi, (double)i * dt, psi.squaredNorm()));
  }
  return series;
}

inline ReportSeries effective_series(const ExperimentSetup& s, double dt,
                                     long long n, int order,
                                     const std::string& label) {
  ReportSeries series;
  series.mode = label;
  series.columns = series_columns(s);
  QuasiZenoStack stack = effective_hamiltonian(
      s.h, s.projset, s.subspace, dt, order);
  const ComplexMatrix u_step = effective_evolution(stack, dt);
  StateVector psi = s.psi0;
  double survival = 1.0;
  for (long long i = 1; i <= n; ++i) {
    psi = u_step * psi;
    if (order >= 2) {
      StateVector unit = psi / psi.norm();
      double leak =
          (unit.adjoint() * (stack.h_z[1] * unit))(0).real() * dt * dt;
      if (leak < 0) leak = 0;
      survival *= (1.0 - leak);
    } else {
      survival = psi.squaredNorm();
    }
    series.rows.push_back(observable_row(s, psi, (double)i * dt, survival));
  }
  return series;
}

inline ReportSeries trajectory_series(const ExperimentSetup& s, double dt,
                                      long long n, int n_trajectories,
                                      std::uint64_t seed) {
  ReportSeries series;
  series.mode = "trajectories";
  series.columns = series_columns(s);
  const size_t n_obs = s.obs_diagonals.size();
  std::vector<std::vector<double>> obs_sum(n, std::vector<double>(n_obs, 0.0));
  std::vector<long long> no_jump(n, 0);

  for (int t = 0; t < n_trajectories; ++t) {
    Trajectory traj =
        sample_trajectory(s.h, s.projset, s.psi0, dt, n, seed + (std::uint64_t)t);
    bool intact = true;
    for (long long i = 0; i < n; ++i) {
      if (traj.outcomes[i] != s.subspace) intact = false;
      if (intact) no_jump[i] += 1;
      const StateVector& psi = traj.states[i];
      double norm2 = psi.squaredNorm();
      for (size_t o = 0; o < n_obs; ++o) {
        double v = 0;
        for (int k = 0; k < psi.size(); ++k)
          v += s.obs_diagonals[o](k) * std::norm(psi(k));
        obs_sum[i][o] += v / norm2;
      }
    }
  }
  for (long long i = 0; i < n; ++i) {
    std::vector<double> row;
    row.reserve(n_obs + 2);
    row.push_back((double)(i + 1) * dt);
    for (size_t o = 0; o < n_obs; ++o)
      row.push_back(obs_sum[i][o] / n_trajectories);
    row.push_back((double)no_jump[i] / n_trajectories);
    series.rows.push_back(std::move(row));
  }
  return series;
}

inline ReportSeries diff_series(const ExperimentSetup& s, double dt,
                                long long n, int order) {
  ReportSeries series;
  series.mode = "diff";
  series.columns = {"time", "err_effective", "err_qzd"};
  const ComplexMatrix& p = s.projset.projectors[s.subspace];
  const ComplexMatrix step = p * mat_exp(Complex(0.0, -dt) * s.h);
  const ComplexMatrix u_eff = effective_evolution(
      effective_hamiltonian(s.h, s.projset, s.subspace, dt, order), dt);
  const ComplexMatrix u_qzd = effective_evolution(
      effective_hamiltonian(s.h, s.projset, s.subspace, dt, 1), dt);
  const int d = s.basis.dim();
  ComplexMatrix m_ex = ComplexMatrix::Identity(d, d);
  ComplexMatrix m_eff = m_ex, m_qzd = m_ex;
  for (long long i = 1; i <= n; ++i) {
    m_ex = step * m_ex;
    m_eff = u_eff * m_eff;
    m_qzd = u_qzd * m_qzd;
    series.rows.push_back({(double)i * dt,
                           operator_norm(p * (m_ex - m_eff) * p),
                           operator_norm(p * (m_ex - m_qzd) * p)});
  }
  return series;
}

}  // namespace detail

inline RunReport run_experiment(const ExperimentConfig& config) {
  ExperimentSetup s = prepare_experiment(config);
  const long long n = experiment_steps(config);
  const double dt = config.dt;

  double metric = zeno_locking_metric(
      s.h, s.psi0, s.projset.projectors[s.subspace], dt);

  RunReport report;
  nlohmann::json warnings = nlohmann::json::array();
  if (metric > tol::kZenoLockingWarn)
    warnings.push_back(
        "zeno-locking metric " + std::to_string(metric) +
        " exceeds " + std::to_string(tol::kZenoLockingWarn) +
        "; dt is too coarse for the quasi-Zeno regime");
  report.metadata = {{"config", config_to_json(config)},
                     {"version", kVersion},
                     {"rng", kRngDescription},
                     {"n_steps", n},
                     {"zeno_locking_metric", metric},
                     {"warnings", warnings}};

  switch (config.mode) {
    case RunMode::Exact:
      report.series.push_back(detail::exact_series(s, dt, n));
      break;
    case RunMode::Effective:
      report.series.push_back(
          detail::effective_series(s, dt, n, config.order, "effective"));
      break;
    case RunMode::Qzd:
      report.series.push_back(detail::effective_series(s, dt, n, 1, "qzd"));
      break;
    case RunMode::Trajectories:
      report.series.push_back(detail::trajectory_series(
          s, dt, n, config.n_trajectories, config.seed));
      break;
    case RunMode::Compare:
      report.series.push_back(detail::exact_series(s, dt, n));
      report.series.push_back(
          detail::effective_series(s, dt, n, config.order, "effective"));
      report.series.push_back(detail::effective_series(s, dt, n, 1, "qzd"));
      report.series.push_back(detail::diff_series(s, dt, n, config.order));
      break;
  }
  return report;
}

}  // namespace qzeno
