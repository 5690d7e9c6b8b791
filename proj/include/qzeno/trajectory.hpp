#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qzeno/quasi_zeno.hpp"

namespace qzeno {

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;   // renormalized post-measurement
  std::vector<int> outcomes;         // subspace index per step
  std::vector<double> log_survival;  // cumulative log outcome probability
  std::uint64_t seed = 0;

  double survival_probability() const {
    return log_survival.empty() ? 1.0 : std::exp(log_survival.back());
  }
};

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_double(std::mt19937_64& gen) {
  return (double)(gen() >> 11) * 0x1.0p-53;
}

// Unitary step then Born-rule projective measurement, N times.
inline Trajectory sample_trajectory(const ComplexMatrix& h,
                                    const ProjectorSet& projset,
                                    const StateVector& psi0, double dt,
                                    long long n_steps, std::uint64_t seed) {
  require_hermitian(h, "sample_trajectory");
  if (projset.size() == 0)
    throw ConfigError("sample_trajectory: empty projector set");
  if (n_steps < 1) throw ConfigError("sample_trajectory: N must be >= 1");
  if (!(dt > 0)) throw ConfigError("sample_trajectory: dt must be > 0");
  if (std::abs(psi0.norm() - 1.0) > tol::kSubspaceSupport)
    throw NumericError("sample_trajectory: initial state must be normalized");

  const ComplexMatrix u = mat_exp(Complex(0.0, -dt) * h);
  std::mt19937_64 gen(seed);
  Trajectory traj;
  traj.seed = seed;
  traj.times.reserve(n_steps);
  traj.states.reserve(n_steps);
  traj.outcomes.reserve(n_steps);
  traj.log_survival.reserve(n_steps);

  StateVector psi = psi0;
  std::vector<double> probs(projset.size());
  std::vector<StateVector> projected(projset.size());
  double log_surv = 0.0;
  for (long long step = 1; step <= n_steps; ++step) {
    psi = u * psi;
    double total = 0.0;
    bool degenerate = true;
    for (int k = 0; k < projset.size(); ++k) {
      projected[k] = projset.projectors[k] * psi;
      probs[k] = projected[k].squaredNorm();
      if (probs[k] >= 1e-15) degenerate = false;
      total += probs[k];
    }
    if (degenerate)
      throw DegenerateStep("sample_trajectory: all outcome probabilities "
                           "vanished at step " +
                           std::to_string(step));
    double r = uniform_double(gen) * total;
    int outcome = projset.size() - 1;
    double acc = 0.0;
    for (int k = 0; k < projset.size(); ++k) {
      acc += probs[k];
      if (r < acc) {
        outcome = k;
        break;
      }
    }
    double p = probs[outcome] > 1.0 ? 1.0 : probs[outcome];
    log_surv += std::log(p);
    psi = projected[outcome] / std::sqrt(probs[outcome]);

    traj.times.push_back((double)step * dt);
    traj.states.push_back(psi);
    traj.outcomes.push_back(outcome);
    traj.log_survival.push_back(log_surv);
  }
  return traj;
}

}  // namespace qzeno
