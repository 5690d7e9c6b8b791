#pragma once

#include <cmath>

#include "qzeno/basis.hpp"
#include "qzeno/matrix.hpp"

namespace qzeno {

// Site-local operators over a fixed basis, built on access. Hopping on a
// constrained basis sends states that leave the constraint set to zero.
class SiteOperatorSet {
 public:
  explicit SiteOperatorSet(Basis basis) : basis_(std::move(basis)) {
    switch (basis_.kind()) {
      case BasisKind::BosonFock:
      case BasisKind::SpinHalfChain:
      case BasisKind::Spin1Single:
        break;
      default:
        throw Unsupported("build_site_operators: unsupported basis kind");
    }
  }

  const Basis& basis() const { return basis_; }

  // n_i
  ComplexMatrix number(int site) const {
    require_kind(BasisKind::BosonFock, "number");
    check_site(site);
    ComplexMatrix m = ComplexMatrix::Zero(basis_.dim(), basis_.dim());
    for (int k = 0; k < basis_.dim(); ++k)
      m(k, k) = (double)basis_.label(k)[site];
    return m;
  }

  // b†_to b_from with amplitude sqrt(n_to + 1)·sqrt(n_from)
  ComplexMatrix hop(int to, int from) const {
    require_kind(BasisKind::BosonFock, "hop");
    check_site(to);
    check_site(from);
    if (to == from) return number(to);
    ComplexMatrix m = ComplexMatrix::Zero(basis_.dim(), basis_.dim());
    for (int col = 0; col < basis_.dim(); ++col) {
      BasisLabel l = basis_.label(col);
      if (l[from] == 0) continue;
      double amp = std::sqrt((double)l[from]);
      l[from] -= 1;
      amp *= std::sqrt((double)(l[to] + 1));
      l[to] += 1;
      int row = basis_.index_of(l);
      if (row >= 0) m(row, col) = amp;
    }
    return m;
  }

  ComplexMatrix spin_plus(int site) const {
    require_kind(BasisKind::SpinHalfChain, "spin_plus");
    check_site(site);
    ComplexMatrix m = ComplexMatrix::Zero(basis_.dim(), basis_.dim());
    for (int col = 0; col < basis_.dim(); ++col) {
      BasisLabel l = basis_.label(col);
      if (l[site] != 0) continue;
      l[site] = 1;
      int row = basis_.index_of(l);
      if (row >= 0) m(row, col) = 1.0;
    }
    return m;
  }

  ComplexMatrix spin_minus(int site) const {
    return spin_plus(site).adjoint();
  }

  // S^Z with eigenvalues ±1/2
  ComplexMatrix spin_z(int site) const {
    require_kind(BasisKind::SpinHalfChain, "spin_z");
    check_site(site);
    ComplexMatrix m = ComplexMatrix::Zero(basis_.dim(), basis_.dim());
    for (int k = 0; k < basis_.dim(); ++k)
      m(k, k) = basis_.label(k)[site] != 0 ? 0.5 : -0.5;
    return m;
  }

  // S^X = (1/√2)(|−1⟩⟨0| + |0⟩⟨1| + h.c.)
  ComplexMatrix spin1_sx() const {
    require_kind(BasisKind::Spin1Single, "spin1_sx");
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    const double r = 1.0 / std::sqrt(2.0);
    m(0, 1) = r;
    m(1, 0) = r;
    m(1, 2) = r;
    m(2, 1) = r;
    return m;
  }

  ComplexMatrix spin1_sz() const {
    require_kind(BasisKind::Spin1Single, "spin1_sz");
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    for (int k = 0; k < 3; ++k) m(k, k) = (double)basis_.label(k)[0];
    return m;
  }

 private:
  void require_kind(BasisKind kind, const char* who) const {
    if (basis_.kind() != kind)
      throw Unsupported(std::string(who) +
                        ": operator not defined for this basis kind");
  }
  void check_site(int site) const {
    if (site < 0 || site >= basis_.sites())
      throw ConfigError("site index " + std::to_string(site) +
                        " out of range");
  }

  Basis basis_;
};

inline SiteOperatorSet build_site_operators(const Basis& basis) {
  return SiteOperatorSet(basis);
}

// b_site as a rectangular map between fixed-total Fock bases (N -> N−1).
inline ComplexMatrix boson_annihilation(const Basis& from, const Basis& to,
                                        int site) {
  if (from.kind() != BasisKind::BosonFock || to.kind() != BasisKind::BosonFock)
    throw Unsupported("boson_annihilation: Fock bases required");
  if (from.sites() != to.sites() ||
      to.total_particles() != from.total_particles() - 1)
    throw Mismatch("boson_annihilation: target basis must hold one particle "
                   "fewer on the same sites");
  if (site < 0 || site >= from.sites())
    throw ConfigError("site index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(to.dim(), from.dim());
  for (int col = 0; col < from.dim(); ++col) {
    BasisLabel l = from.label(col);
    if (l[site] == 0) continue;
    double amp = std::sqrt((double)l[site]);
    l[site] -= 1;
    int row = to.index_of(l);
    if (row >= 0) m(row, col) = amp;
  }
  return m;
}

// b†_site as a rectangular map (N -> N+1).
inline ComplexMatrix boson_creation(const Basis& from, const Basis& to,
                                    int site) {
  return boson_annihilation(to, from, site).adjoint();
}

}  // namespace qzeno
