#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/linalg.hpp"
#include "maslov/space.hpp"

namespace maslov {

/// exp(S) (U11 ⊕ U22) with Gaussian S12 (scaled) and Haar unitary blocks,
/// assembled in the H+ ⊕ H- coordinates of a normalized space.
inline Mat random_symplectic(const NormalizedSpace& space, Rng& rng, double scale = 0.5) {
  const Mat& qp = space.plus_basis();
  const Mat& qm = space.minus_basis();
  Mat s12 = gaussian_matrix(space.n_plus(), space.n_minus(), rng) * scale;
  Mat s = qp * s12 * qm.adjoint();
  s += s.adjoint().eval();
  Mat u = qp * haar_unitary(space.n_plus(), rng) * qp.adjoint() + qm * haar_unitary(space.n_minus(), rng) * qm.adjoint();
  Mat a = hermitian_function(s, [](double x) { return std::exp(x); });
  return a * u;
}

inline Mat random_symplectic(const NormalizedSpace& space, std::uint64_t seed, double scale = 0.5) {
  Rng rng(seed);
  return random_symplectic(space, rng, scale);
}

/// Random element of Sp(H, omega) for a general space, pulled back through
/// the transfer map of the normalisation.
inline Mat random_symplectic(const Normalization& norm, Rng& rng, double scale = 0.5) {
  return norm.unconjugate(random_symplectic(norm.space, rng, scale));
}

/// sp(H) = J^{-1} · Hermitian.
inline Mat random_algebra_element(const SymplecticSpace& space, Rng& rng, double scale = 1.0) {
  return space.structure_inverse() * random_hermitian(space.dim(), rng) * scale;
}

/// Algebra element J^{-1} H in the normalized space whose block-diagonal part
/// has eigenvalues in [-rotation, rotation] and whose H+ / H- coupling has
/// Gaussian entries of size `hyperbolic`. Keeps exp(tL) of moderate norm.
inline Mat random_bounded_generator(const NormalizedSpace& space, Rng& rng, double rotation = 2.0,
                                    double hyperbolic = 0.2) {
  const Mat& qp = space.plus_basis();
  const Mat& qm = space.minus_basis();
  auto block = [&](Index m) {
    Mat u = haar_unitary(m, rng);
    RealVec d(m);
    for (Index i = 0; i < m; ++i) d(i) = rng.uniform(-rotation, rotation);
    return Mat(u * d.cast<Complex>().asDiagonal() * u.adjoint());
  };
  Mat h = qp * block(space.n_plus()) * qp.adjoint() + qm * block(space.n_minus()) * qm.adjoint();
  Mat c = qp * gaussian_matrix(space.n_plus(), space.n_minus(), rng) * qm.adjoint() * hyperbolic;
  h += c + c.adjoint();
  return space.base().structure_inverse() * h;
}

inline Mat random_bounded_generator(const Normalization& norm, Rng& rng, double rotation = 2.0,
                                    double hyperbolic = 0.2) {
  return norm.unconjugate(random_bounded_generator(norm.space, rng, rotation, hyperbolic));
}

/// Generator L with -J L positive definite, so exp(tL) M is a positive path.
inline Mat random_positive_generator(const SymplecticSpace& space, Rng& rng, double floor = 0.2) {
  Mat g = gaussian_matrix(space.dim(), space.dim(), rng);
  Mat p = g * g.adjoint() / static_cast<double>(space.dim()) + floor * identity(space.dim());
  return -space.structure_inverse() * p;
}

/// Image of the reference Lagrangian under a random symplectic matrix.
inline Mat random_lagrangian(const Normalization& norm, Rng& rng, double scale = 0.5) {
  Mat m = random_symplectic(norm.space, rng, scale);
  return norm.transfer_inverse * (m * norm.space.reference_lagrangian());
}

}  // namespace maslov
