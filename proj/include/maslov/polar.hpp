#pragma once

#include <cmath>

#include "maslov/linalg.hpp"
#include "maslov/space.hpp"

namespace maslov {

/// M = A U with A = exp(S) positive definite symplectic and U unitary
/// symplectic. Blocks are expressed in the orthonormal H+ ⊕ H- bases of the
/// normalized space: U = U11 ⊕ U22, S = [[0, S12], [S12^*, 0]].
struct PolarDecomposition {
  Mat a;
  Mat u;
  Mat s;
  Mat u11;
  Mat u22;
  Mat s12;
};

inline PolarDecomposition polar_decompose(const NormalizedSpace& space, const Mat& m) {
  SymplecticMatrix checked(space.base(), m);
  PolarDecomposition out;
  Mat mm = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> es((mm + mm.adjoint()) / 2.0);
  const Mat& v = es.eigenvalues().size() ? es.eigenvectors() : Mat();
  RealVec ev = es.eigenvalues();
  out.a = v * ev.cwiseSqrt().asDiagonal() * v.adjoint();
  out.s = v * ev.unaryExpr([](double x) { return 0.5 * std::log(x); }).asDiagonal() * v.adjoint();
  Mat a_inv = v * ev.cwiseSqrt().cwiseInverse().asDiagonal() * v.adjoint();
  out.u = a_inv * m;
  const Mat& qp = space.plus_basis();
  const Mat& qm = space.minus_basis();
  out.u11 = qp.adjoint() * out.u * qp;
  out.u22 = qm.adjoint() * out.u * qm;
  out.s12 = qp.adjoint() * out.s * qm;
  return out;
}

}  // namespace maslov
