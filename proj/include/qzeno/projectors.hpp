#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qzeno/eig.hpp"

namespace qzeno {

struct ProjectorSet {
  std::vector<double> eigenvalues;  // ascending, one per subspace
  std::vector<ComplexMatrix> projectors;
  // basis indices per subspace when the observable was exactly diagonal
  std::vector<std::vector<int>> members;

  int size() const { return (int)projectors.size(); }

  // Index of the single subspace carrying the state, -1 if the state
  // straddles subspaces beyond the tolerance.
  int subspace_of(const StateVector& psi,
                  double support_tol = tol::kSubspaceSupport) const {
    double norm2 = psi.squaredNorm();
    if (norm2 == 0.0) return -1;
    int best = -1;
    double best_weight = -1.0;
    for (int j = 0; j < size(); ++j) {
      double w = (projectors[j] * psi).squaredNorm();
      if (w > best_weight) {
        best_weight = w;
        best = j;
      }
    }
    if (best < 0) return -1;
    double defect = (psi - projectors[best] * psi).norm();
    if (defect > support_tol * std::sqrt(norm2)) return -1;
    return best;
  }
};

// Spectral projectors of a Hermitian observable, one per eigenvalue cluster.
// degeneracy_tol < 0 selects the default relative tolerance.
inline ProjectorSet projectors_from_observable(const ComplexMatrix& a,
                                               double degeneracy_tol = -1.0) {
  require_hermitian(a, "projectors_from_observable");
  const int d = (int)a.rows();

  // exactly diagonal input: group equal diagonal entries, keep exact 0/1
  // projectors so block sparsity survives downstream
  bool diagonal = true;
  for (int r = 0; r < d && diagonal; ++r)
    for (int c = 0; c < d; ++c)
      if (r != c && a(r, c) != 0.0) {
        diagonal = false;
        break;
      }

  ProjectorSet set;
  if (diagonal) {
    std::vector<double> values(d);
    double max_abs = 0;
    for (int k = 0; k < d; ++k) {
      values[k] = a(k, k).real();
      max_abs = std::max(max_abs, std::abs(values[k]));
    }
    double tol = degeneracy_tol >= 0 ? degeneracy_tol
                                     : tol::kDegeneracyRel * max_abs;
    std::vector<int> order(d);
    for (int k = 0; k < d; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return values[x] < values[y]; });
    for (int pos = 0; pos < d;) {
      int start = pos;
      while (pos + 1 < d &&
             values[order[pos + 1]] - values[order[pos]] <= tol)
        ++pos;
      ++pos;
      ComplexMatrix p = ComplexMatrix::Zero(d, d);
      std::vector<int> group(order.begin() + start, order.begin() + pos);
      std::sort(group.begin(), group.end());
      double sum = 0;
      for (int k : group) {
        p(k, k) = 1.0;
        sum += values[k];
      }
      set.eigenvalues.push_back(sum / (double)group.size());
      set.projectors.push_back(std::move(p));
      set.members.push_back(std::move(group));
    }
    return set;
  }

  EigenSystem es = hermitian_eig(a);
  double max_abs = 0;
  for (int k = 0; k < d; ++k)
    max_abs = std::max(max_abs, std::abs(es.eigenvalues(k)));
  double tol =
      degeneracy_tol >= 0 ? degeneracy_tol : tol::kDegeneracyRel * max_abs;
  for (int pos = 0; pos < d;) {
    int start = pos;
    while (pos + 1 < d &&
           es.eigenvalues(pos + 1) - es.eigenvalues(pos) <= tol)
      ++pos;
    ++pos;
    ComplexMatrix block = es.eigenvectors.middleCols(start, pos - start);
    set.eigenvalues.push_back(
        es.eigenvalues.segment(start, pos - start).mean());
    set.projectors.push_back(block * block.adjoint());
    set.members.push_back({});
  }
  return set;
}

}  // namespace qzeno
