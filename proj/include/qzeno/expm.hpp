#pragma once

#include <Eigen/LU>
#include <cmath>

#include "qzeno/matrix.hpp"

namespace qzeno {
namespace detail {

// Solve (V − U)·X = (V + U) for the Padé rational approximant.
inline ComplexMatrix pade_solve(const ComplexMatrix& u,
                                const ComplexMatrix& v) {
  return Eigen::PartialPivLU<ComplexMatrix>(v - u).solve(v + u);
}

inline ComplexMatrix pade3(const ComplexMatrix& a, const ComplexMatrix& id) {
  static const double b[] = {120., 60., 12., 1.};
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix u = a * (b[3] * a2 + b[1] * id);
  const ComplexMatrix v = b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

inline ComplexMatrix pade5(const ComplexMatrix& a, const ComplexMatrix& id) {
  static const double b[] = {30240., 15120., 3360., 420., 30., 1.};
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
  const ComplexMatrix v = b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

inline ComplexMatrix pade7(const ComplexMatrix& a, const ComplexMatrix& id) {
  static const double b[] = {17297280., 8648640., 1995840., 277200.,
                             25200.,    1512.,    56.,      1.};
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const ComplexMatrix v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

inline ComplexMatrix pade9(const ComplexMatrix& a, const ComplexMatrix& id) {
  static const double b[] = {17643225600., 8821612800., 2075673600.,
                             302702400.,   30270240.,   2162160.,
                             110880.,      3960.,       90.,
                             1.};
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix a8 = a6 * a2;
  const ComplexMatrix u =
      a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const ComplexMatrix v =
      b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

inline ComplexMatrix pade13(const ComplexMatrix& a, const ComplexMatrix& id) {
  static const double b[] = {64764752532480000., 32382376266240000.,
                             7771770303897600.,  1187353796428800.,
                             129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,
                             1323241920.,        40840800.,
                             960960.,            16380.,
                             182.,               1.};
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * id);
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                          b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

}  // namespace detail

// exp(M) by scaling-and-squaring with degree-optimal Padé approximants.
inline ComplexMatrix mat_exp(const ComplexMatrix& m) {
  require_square_finite(m, "mat_exp");
  const Eigen::Index n = m.rows();
  if (n == 0) return ComplexMatrix(0, 0);

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();

  if (norm1 <= 1.495585217958292e-2) return detail::pade3(m, id);
  if (norm1 <= 2.539398330063230e-1) return detail::pade5(m, id);
  if (norm1 <= 9.504178996162932e-1) return detail::pade7(m, id);
  if (norm1 <= 2.097847961257068) return detail::pade9(m, id);

  const double theta13 = 5.371920351148152;
  int squarings = 0;
  if (norm1 > theta13)
    squarings = (int)std::ceil(std::log2(norm1 / theta13));
  const double scale = std::ldexp(1.0, -squarings);
  ComplexMatrix x = detail::pade13(scale * m, id);
  for (int i = 0; i < squarings; ++i) x = x * x;
  return x;
}

}  // namespace qzeno
