#pragma once

#include <utility>
#include <vector>

#include "qzeno/site_ops.hpp"

namespace qzeno {

enum class ModelKind { Spin1Transverse, XXChain, BoseHubbard };

struct ModelSpec {
  ModelKind kind = ModelKind::Spin1Transverse;
  double lambda = 1.0;  // transverse field (three-level model)
  double j = 1.0;       // hopping / exchange strength
  double u = 0.0;       // on-site interaction
  double field_z = 0.0;     // optional S^Z bias per site (spin chains)
  double coupling_zz = 0.0; // optional S^Z·S^Z coupling on edges
  int sites = 1;
  int total_particles = 0;
  // explicit adjacency; empty means an open chain 0-1-2-...
  std::vector<std::pair<int, int>> edges;

  std::vector<std::pair<int, int>> geometry() const {
    std::vector<std::pair<int, int>> out = edges;
    if (out.empty())
      for (int i = 0; i + 1 < sites; ++i) out.push_back({i, i + 1});
    for (auto& [a, b] : out)
      if (a < 0 || b < 0 || a >= sites || b >= sites || a == b)
        throw ConfigError("model geometry references invalid sites");
    return out;
  }
};

enum class ObservableKind {
  RegionOccupation,
  RegionOccupationDifference,
  RegionMagnetization,
  AbsSz
};

struct ObservableSpec {
  ObservableKind kind = ObservableKind::AbsSz;
  // per-site weight, e.g. +1 on region A, −1 on region C, 0 elsewhere
  std::vector<double> weights;
};

inline Basis model_basis(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::Spin1Transverse:
      return spin1_basis();
    case ModelKind::XXChain:
      return spin_chain_basis(spec.sites);
    case ModelKind::BoseHubbard:
      return fock_basis(spec.sites, spec.total_particles);
  }
  throw ConfigError("model_basis: unknown model kind");
}

inline ComplexMatrix build_hamiltonian(const ModelSpec& spec,
                                       const SiteOperatorSet& ops) {
  const Basis& basis = ops.basis();
  const int d = basis.dim();
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  switch (spec.kind) {
    case ModelKind::Spin1Transverse:
      if (basis.kind() != BasisKind::Spin1Single)
        throw Mismatch("build_hamiltonian: Spin1Transverse needs the spin-1 "
                       "basis");
      return spec.lambda * ops.spin1_sx();

    case ModelKind::XXChain: {
      if (basis.kind() != BasisKind::SpinHalfChain ||
          basis.sites() != spec.sites)
        throw Mismatch("build_hamiltonian: XXChain basis mismatch");
      for (auto [a, b] : spec.geometry()) {
        h -= spec.j * (ops.spin_plus(a) * ops.spin_minus(b) +
                       ops.spin_plus(b) * ops.spin_minus(a));
        if (spec.coupling_zz != 0.0)
          h += spec.coupling_zz * ops.spin_z(a) * ops.spin_z(b);
      }
      if (spec.field_z != 0.0)
        for (int i = 0; i < spec.sites; ++i) h += spec.field_z * ops.spin_z(i);
      return h;
    }

    case ModelKind::BoseHubbard: {
      if (basis.kind() != BasisKind::BosonFock ||
          basis.sites() != spec.sites ||
          basis.total_particles() != spec.total_particles)
        throw Mismatch("build_hamiltonian: BoseHubbard basis mismatch");
      for (auto [a, b] : spec.geometry())
        h -= spec.j * (ops.hop(a, b) + ops.hop(b, a));
      if (spec.u != 0.0)
        for (int i = 0; i < spec.sites; ++i) {
          ComplexMatrix n = ops.number(i);
          h += spec.u * (n * n - n);  // b†b†bb = n(n−1)
        }
      return h;
    }
  }
  throw ConfigError("build_hamiltonian: unknown model kind");
}

inline ComplexMatrix build_observable(const ObservableSpec& spec,
                                      const SiteOperatorSet& ops) {
  const Basis& basis = ops.basis();
  const int d = basis.dim();

  if (spec.kind == ObservableKind::AbsSz) {
    if (basis.kind() != BasisKind::Spin1Single)
      throw Mismatch("build_observable: AbsSz needs the spin-1 basis");
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) a(k, k) = std::abs((double)basis.label(k)[0]);
    return a;
  }

  if ((int)spec.weights.size() != basis.sites())
    throw Mismatch("build_observable: need one weight per site");
  bool any = false;
  for (double w : spec.weights) {
    if (!std::isfinite(w))
      throw Mismatch("build_observable: weights must be finite");
    if (w != 0.0) any = true;
  }
  if (!any) throw Mismatch("build_observable: all weights are zero");

  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  switch (spec.kind) {
    case ObservableKind::RegionOccupation:
    case ObservableKind::RegionOccupationDifference:
      if (basis.kind() != BasisKind::BosonFock)
        throw Mismatch("build_observable: occupation observables need a Fock "
                       "basis");
      for (int k = 0; k < d; ++k) {
        double v = 0;
        for (int i = 0; i < basis.sites(); ++i)
          v += spec.weights[i] * basis.label(k)[i];
        a(k, k) = v;
      }
      return a;

    case ObservableKind::RegionMagnetization:
      if (basis.kind() != BasisKind::SpinHalfChain)
        throw Mismatch("build_observable: RegionMagnetization needs a "
                       "spin-1/2 chain basis");
      for (int k = 0; k < d; ++k) {
        double v = 0;
        for (int i = 0; i < basis.sites(); ++i)
          v += spec.weights[i] * (basis.label(k)[i] != 0 ? 0.5 : -0.5);
        a(k, k) = v;
      }
      return a;

    default:
      throw ConfigError("build_observable: unknown observable kind");
  }
}

}  // namespace qzeno
