#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "qzeno/eig.hpp"
#include "qzeno/expm.hpp"
#include "qzeno/projectors.hpp"

namespace qzeno {

inline ComplexMatrix matrix_power(ComplexMatrix m, long long n) {
  require_square_finite(m, "matrix_power");
  if (n < 0) throw ConfigError("matrix_power: negative exponent");
  ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
  while (n > 0) {
    if (n & 1) result = m * result;
    n >>= 1;
    if (n) m = m * m;
  }
  return result;
}

// H_Z^(k) = P·H·((I−P)·H)^(k−1)·P
inline ComplexMatrix quasi_zeno_hamiltonian(const ComplexMatrix& h,
                                            const ComplexMatrix& p, int k) {
  require_hermitian(h, "quasi_zeno_hamiltonian");
  require_projector(p, "quasi_zeno_hamiltonian");
  if (h.rows() != p.rows())
    throw Mismatch("quasi_zeno_hamiltonian: H and P dimensions differ");
  if (k < 1) throw ConfigError("quasi_zeno_hamiltonian: k must be >= 1");
  const ComplexMatrix qh =
      (ComplexMatrix::Identity(p.rows(), p.cols()) - p) * h;
  ComplexMatrix tail = p;
  for (int i = 1; i < k; ++i) tail = qh * tail;
  return p * (h * tail);
}

struct QuasiZenoStack {
  int subspace = -1;  // index into the originating ProjectorSet, if any
  ComplexMatrix projector;
  double dt = 0.0;
  std::vector<ComplexMatrix> h_z;  // h_z[k-1] = H_Z^(k)
  ComplexMatrix h_eff;

  int order() const { return (int)h_z.size(); }
};

// H_eff = Σ_{k=1..K} (−iδt)^(k−1)/k!·H_Z^(k)
inline QuasiZenoStack effective_hamiltonian(const ComplexMatrix& h,
                                            const ComplexMatrix& p, double dt,
                                            int order) {
  require_hermitian(h, "effective_hamiltonian");
  require_projector(p, "effective_hamiltonian");
  if (h.rows() != p.rows())
    throw Mismatch("effective_hamiltonian: H and P dimensions differ");
  if (!(dt >= 0)) throw ConfigError("effective_hamiltonian: dt must be >= 0");
  if (order < 1) throw ConfigError("effective_hamiltonian: order must be >= 1");

  QuasiZenoStack stack;
  stack.projector = p;
  stack.dt = dt;
  stack.h_eff = ComplexMatrix::Zero(h.rows(), h.cols());

  const ComplexMatrix qh =
      (ComplexMatrix::Identity(p.rows(), p.cols()) - p) * h;
  ComplexMatrix tail = p;
  Complex coeff(1.0, 0.0);  // (−iδt)^(k−1)
  double kfact = 1.0;
  for (int k = 1; k <= order; ++k) {
    kfact *= k;
    stack.h_z.push_back(p * (h * tail));
    stack.h_eff += (coeff / kfact) * stack.h_z.back();
    tail = qh * tail;
    coeff *= Complex(0.0, -dt);
  }
  return stack;
}

inline QuasiZenoStack effective_hamiltonian(const ComplexMatrix& h,
                                            const ProjectorSet& projset,
                                            int subspace, double dt,
                                            int order) {
  if (subspace < 0 || subspace >= projset.size())
    throw ConfigError("effective_hamiltonian: subspace index out of range");
  QuasiZenoStack stack =
      effective_hamiltonian(h, projset.projectors[subspace], dt, order);
  stack.subspace = subspace;
  return stack;
}

// U_eff(τ) = exp(−i·H_eff·τ); acts as the identity on the complement.
inline ComplexMatrix effective_evolution(const QuasiZenoStack& stack,
                                         double tau) {
  if (!(tau >= 0)) throw ConfigError("effective_evolution: tau must be >= 0");
  return mat_exp(Complex(0.0, -tau) * stack.h_eff);
}

// (P·exp(−iHδt))^N by repeated multiplication of the step operator.
inline ComplexMatrix exact_stroboscopic(const ComplexMatrix& h,
                                        const ComplexMatrix& p, double dt,
                                        long long n) {
  require_hermitian(h, "exact_stroboscopic");
  require_projector(p, "exact_stroboscopic");
  if (h.rows() != p.rows())
    throw Mismatch("exact_stroboscopic: H and P dimensions differ");
  if (n < 0) throw ConfigError("exact_stroboscopic: N must be >= 0");
  if (n == 0) return ComplexMatrix::Identity(h.rows(), h.cols());
  if (!(dt > 0))
    throw ConfigError("exact_stroboscopic: dt must be > 0 for N >= 1");
  const ComplexMatrix step = p * mat_exp(Complex(0.0, -dt) * h);
  return matrix_power(step, n);
}

namespace detail {

inline void check_state_support(const StateVector& psi, const ComplexMatrix& p,
                                const char* who) {
  double norm = psi.norm();
  if (norm == 0.0)
    throw StateOutsideSubspace(std::string(who) + ": state vector is zero");
  if ((psi - p * psi).norm() > tol::kSubspaceSupport * norm)
    throw StateOutsideSubspace(std::string(who) +
                               ": state not supported in the subspace");
}

inline void check_density_support(const ComplexMatrix& rho,
                                  const ComplexMatrix& p, const char* who) {
  double norm = rho.norm();
  if (norm == 0.0)
    throw StateOutsideSubspace(std::string(who) + ": density matrix is zero");
  if ((rho - p * rho * p).norm() > tol::kSubspaceSupport * norm)
    throw StateOutsideSubspace(std::string(who) +
                               ": density matrix not supported in the "
                               "subspace");
}

}  // namespace detail

// Tr((I−P)·H·ρ·H)·δt² = Tr(H_Z^(2)·ρ)·δt², the per-step leakage probability.
inline double zeno_locking_metric(const ComplexMatrix& h,
                                  const StateVector& psi,
                                  const ComplexMatrix& p, double dt) {
  require_hermitian(h, "zeno_locking_metric");
  require_projector(p, "zeno_locking_metric");
  detail::check_state_support(psi, p, "zeno_locking_metric");
  const StateVector w = h * psi;
  return (w - p * w).squaredNorm() * dt * dt;
}

inline double zeno_locking_metric(const ComplexMatrix& h,
                                  const ComplexMatrix& rho,
                                  const ComplexMatrix& p, double dt) {
  require_hermitian(h, "zeno_locking_metric");
  require_projector(p, "zeno_locking_metric");
  require_hermitian(rho, "zeno_locking_metric");
  detail::check_density_support(rho, p, "zeno_locking_metric");
  const ComplexMatrix q = ComplexMatrix::Identity(p.rows(), p.cols()) - p;
  double v = (q * h * rho * h).trace().real() * dt * dt;
  return v < 0 ? 0.0 : v;
}

// P(Q, t) = Tr(H·ρ·H·Q)·δt², the probability of switching into Q.
inline double transition_probability(const ComplexMatrix& h,
                                     const StateVector& psi,
                                     const ComplexMatrix& q, double dt) {
  require_hermitian(h, "transition_probability");
  require_projector(q, "transition_probability");
  return (q * (h * psi)).squaredNorm() * dt * dt;
}

inline double transition_probability(const ComplexMatrix& h,
                                     const ComplexMatrix& rho,
                                     const ComplexMatrix& q, double dt) {
  require_hermitian(h, "transition_probability");
  require_projector(q, "transition_probability");
  require_hermitian(rho, "transition_probability");
  double v = (h * rho * h * q).trace().real() * dt * dt;
  return v < 0 ? 0.0 : v;
}

// Route (a): exact survival ‖U_N ψ₀‖².
inline double survival_exact(const ComplexMatrix& h, const ComplexMatrix& p,
                             double dt, long long n, const StateVector& psi0) {
  return (exact_stroboscopic(h, p, dt, n) * psi0).squaredNorm();
}

// Route (b): Π_{n=1..N}(1 − P(P̄, nδt)) along the effective evolution with
// the leakage evaluated on the renormalized state. First-order-accurate in
// δt; route (a) is the exact reference.
inline double survival_product_formula(const QuasiZenoStack& stack,
                                       const StateVector& psi0, long long n) {
  if (n < 0) throw ConfigError("survival_product_formula: N must be >= 0");
  if (stack.order() < 2)
    throw Unsupported(
        "survival_product_formula: stack must carry H_Z^(2) (order >= 2)");
  detail::check_state_support(psi0, stack.projector,
                              "survival_product_formula");
  const ComplexMatrix& hz2 = stack.h_z[1];
  const ComplexMatrix u_step = effective_evolution(stack, stack.dt);
  StateVector psi = psi0 / psi0.norm();
  double survival = 1.0;
  for (long long i = 0; i < n; ++i) {
    psi = u_step * psi;
    psi /= psi.norm();
    double leak = (psi.adjoint() * (hz2 * psi))(0).real() * stack.dt * stack.dt;
    if (leak < 0) leak = 0;
    survival *= (1.0 - leak);
  }
  return survival;
}

// Ordered product Π_j exp(Σ_{k=1..K} (−iδt_j)^k/k!·H_Z^(k)), earliest step
// applied first (rightmost factor).
inline ComplexMatrix nonuniform_effective_evolution(
    const ComplexMatrix& h, const ComplexMatrix& p,
    const std::vector<double>& timesteps, int order) {
  QuasiZenoStack stack = effective_hamiltonian(h, p, 0.0, order);
  for (double dt : timesteps)
    if (!(dt > 0))
      throw ConfigError(
          "nonuniform_effective_evolution: every timestep must be > 0");

  std::map<double, ComplexMatrix> step_cache;
  ComplexMatrix u = ComplexMatrix::Identity(h.rows(), h.cols());
  for (double dt : timesteps) {
    auto it = step_cache.find(dt);
    if (it == step_cache.end()) {
      ComplexMatrix exponent = ComplexMatrix::Zero(h.rows(), h.cols());
      Complex coeff(1.0, 0.0);
      double kfact = 1.0;
      for (int k = 1; k <= order; ++k) {
        coeff *= Complex(0.0, -dt);
        kfact *= k;
        exponent += (coeff / kfact) * stack.h_z[k - 1];
      }
      it = step_cache.emplace(dt, mat_exp(exponent)).first;
    }
    u = it->second * u;
  }
  return u;
}

// K=2 closed form exp(−i·H_Z^(1)·τ − H_Z^(2)·Σ_j δt_j²/2).
inline ComplexMatrix nonuniform_closed_form(
    const ComplexMatrix& h, const ComplexMatrix& p,
    const std::vector<double>& timesteps) {
  QuasiZenoStack stack = effective_hamiltonian(h, p, 0.0, 2);
  double tau = 0, sum_sq = 0;
  for (double dt : timesteps) {
    if (!(dt > 0))
      throw ConfigError("nonuniform_closed_form: every timestep must be > 0");
    tau += dt;
    sum_sq += dt * dt;
  }
  return mat_exp(Complex(0.0, -tau) * stack.h_z[0] -
                 (sum_sq / 2.0) * stack.h_z[1]);
}

// Piecewise-constant Hamiltonian: one quasi-Zeno stack per step, time-ordered
// product with the earliest step applied first.
inline ComplexMatrix time_dependent_effective_evolution(
    const std::function<ComplexMatrix(int)>& h_of_step, const ComplexMatrix& p,
    const std::vector<double>& timesteps, int order) {
  require_projector(p, "time_dependent_effective_evolution");
  ComplexMatrix u = ComplexMatrix::Identity(p.rows(), p.cols());
  for (size_t j = 0; j < timesteps.size(); ++j) {
    double dt = timesteps[j];
    if (!(dt > 0))
      throw ConfigError(
          "time_dependent_effective_evolution: every timestep must be > 0");
    QuasiZenoStack stack = effective_hamiltonian(h_of_step((int)j), p, 0.0,
                                                 order);
    ComplexMatrix exponent = ComplexMatrix::Zero(p.rows(), p.cols());
    Complex coeff(1.0, 0.0);
    double kfact = 1.0;
    for (int k = 1; k <= order; ++k) {
      coeff *= Complex(0.0, -dt);
      kfact *= k;
      exponent += (coeff / kfact) * stack.h_z[k - 1];
    }
    u = mat_exp(exponent) * u;
  }
  return u;
}

struct StochasticTimestepSummary {
  double n_avg;                 // ⟨N⟩ = τ/⟨δt⟩
  double second_order_weight;   // ⟨N⟩·⟨δt²⟩/2, feeds the K=2 closed form
};

inline StochasticTimestepSummary stochastic_timestep_summary(double moment1,
                                                             double moment2,
                                                             double tau) {
  if (!(moment1 > 0))
    throw InvalidMoments("stochastic_timestep_summary: ⟨δt⟩ must be > 0");
  if (!(moment2 >= moment1 * moment1))
    throw InvalidMoments(
        "stochastic_timestep_summary: ⟨δt²⟩ must be >= ⟨δt⟩²");
  if (!(tau >= 0))
    throw InvalidMoments("stochastic_timestep_summary: tau must be >= 0");
  double n_avg = tau / moment1;
  return {n_avg, n_avg * moment2 / 2.0};
}

struct SteadyStateAnalysis {
  RealVector eigenvalues;       // H_Z^(2) spectrum inside the subspace
  ComplexMatrix eigenvectors;   // full-space columns supported in P
  std::vector<int> steady_states;  // lowest-eigenvalue cluster
};

// Spectrum of H_Z^(2) restricted to the measurement subspace; the lowest
// eigenvectors are the states the repeated measurement selects.
inline SteadyStateAnalysis steady_state_analysis(const QuasiZenoStack& stack) {
  if (stack.order() < 2)
    throw Unsupported("steady_state_analysis: stack must carry H_Z^(2)");
  EigenSystem pe = hermitian_eig(stack.projector);
  std::vector<int> cols;
  for (int k = 0; k < pe.eigenvalues.size(); ++k)
    if (pe.eigenvalues(k) > 0.5) cols.push_back(k);
  if (cols.empty())
    throw Unsupported("steady_state_analysis: projector has rank zero");
  ComplexMatrix span(stack.projector.rows(), cols.size());
  for (size_t k = 0; k < cols.size(); ++k)
    span.col(k) = pe.eigenvectors.col(cols[k]);

  EigenSystem es = hermitian_eig(span.adjoint() * stack.h_z[1] * span);
  SteadyStateAnalysis out;
  out.eigenvalues = es.eigenvalues;
  out.eigenvectors = span * es.eigenvectors;
  double scale = std::max(
      {std::abs(es.eigenvalues(0)),
       std::abs(es.eigenvalues(es.eigenvalues.size() - 1)), 1.0});
  for (int k = 0; k < es.eigenvalues.size(); ++k)
    if (es.eigenvalues(k) - es.eigenvalues(0) <= 1e-8 * scale)
      out.steady_states.push_back(k);
  return out;
}

// ψ → P_new·H·P_old·ψ, the unnormalized post-switch state.
inline StateVector subspace_switch(const StateVector& psi,
                                   const ComplexMatrix& p_old,
                                   const ComplexMatrix& p_new,
                                   const ComplexMatrix& h) {
  require_projector(p_old, "subspace_switch");
  require_projector(p_new, "subspace_switch");
  require_hermitian(h, "subspace_switch");
  if ((p_new * p_old).norm() > tol::kProjector * p_old.rows())
    throw Mismatch("subspace_switch: projectors are not orthogonal");
  detail::check_state_support(psi, p_old, "subspace_switch");
  StateVector out = p_new * (h * (p_old * psi));
  double scale = operator_norm(h) * psi.norm();
  if (out.norm() <= 1e-14 * std::max(scale, 1.0))
    throw ZeroVector("subspace_switch: matrix element vanishes");
  return out;
}

// ρ → M·ρ·M† through the eigendecomposition of ρ.
inline ComplexMatrix evolve_density(const ComplexMatrix& rho,
                                    const ComplexMatrix& m) {
  require_hermitian(rho, "evolve_density");
  if (rho.rows() != m.cols())
    throw Mismatch("evolve_density: dimension mismatch");
  EigenSystem es = hermitian_eig(rho);
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.rows());
  for (int k = 0; k < es.eigenvalues.size(); ++k) {
    StateVector v = m * es.eigenvectors.col(k);
    out += es.eigenvalues(k) * (v * v.adjoint());
  }
  return out;
}

}  // namespace qzeno
