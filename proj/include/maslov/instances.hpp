#pragma once

#include <cmath>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/brake.hpp"
#include "maslov/linalg.hpp"
#include "maslov/path.hpp"
#include "maslov/random.hpp"
#include "maslov/space.hpp"

// Seeded instance generators shared by the campaign, the tests and the
// acceptance runner.

namespace maslov {

/// J = A* J0 A for a well-conditioned random A; with probability 1/3 the
/// canonical structure itself.
inline SymplecticSpace random_space(Index n, Rng& rng) {
  SymplecticSpace canonical = SymplecticSpace::canonical(n);
  if (rng.uniform(0.0, 1.0) < 1.0 / 3.0) return canonical;
  Mat g = gaussian_matrix(2 * n, 2 * n, rng) * 0.3;
  Mat a = identity(2 * n) + g;
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVec s = svd.singularValues().cwiseMax(0.5).cwiseMin(2.0);
  a = svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
  return SymplecticSpace::make(a.adjoint() * canonical.structure() * a);
}

struct PathRecipe {
  bool from_identity = true;
  /// When positive, gamma(end) gets an eigenvalue at a plant_order-th root of unity.
  int plant_order = 0;
  double rotation = 2.0;
  double hyperbolic = 0.2;
};

/// Q exp((t + beta) L) Q^{-1} on [0, 1] with L block diagonal in the
/// normalized space and one eigenvalue of gamma(1) equal to e^{2 pi i j / k}.
inline SymplecticPath planted_path(const SymplecticSpace& space, Rng& rng, const PathRecipe& r) {
  Normalization norm = normalize_space(space);
  const NormalizedSpace& ns = norm.space;
  const double beta = r.from_identity ? 0.0 : rng.uniform(-0.4, 0.4);
  const int k = r.plant_order;
  auto block = [&](Index m, bool plant) {
    Mat u = haar_unitary(m, rng);
    RealVec d(m);
    for (Index i = 0; i < m; ++i) d(i) = rng.uniform(-r.rotation, r.rotation);
    if (plant && m > 0) {
      int j = rng.uniform_int(0, k - 1);
      // sheet shift keeps the planted angle inside the sampled range
      int sheet = rng.uniform_int(-1, 1);
      d(0) = 2.0 * kPi * (j + sheet * k) / k / (1.0 + beta);
      if (std::abs(d(0)) > 2.0 * kPi) d(0) = 2.0 * kPi * j / k / (1.0 + beta);
    }
    return Mat(u * d.cast<Complex>().asDiagonal() * u.adjoint());
  };
  // one planted eigenvalue, sometimes a second one on the other side
  bool on_plus = rng.uniform(0.0, 1.0) < 0.5;
  bool both = rng.uniform(0.0, 1.0) < 0.5;
  Mat hp = block(ns.n_plus(), on_plus || both);
  Mat hm = block(ns.n_minus(), !on_plus || both);
  Mat h = ns.plus_basis() * hp * ns.plus_basis().adjoint() + ns.minus_basis() * hm * ns.minus_basis().adjoint();
  Mat l = norm.unconjugate(ns.base().structure_inverse() * h);
  Mat q = random_symplectic(norm, rng, 0.25);
  return left_multiply(q, right_multiply(exp_path(l, 0.0, 1.0, 1.0, beta), q.inverse()));
}

/// M0 exp(t L1) exp(t L2) on [0, 1] with bounded generators, or a planted path.
inline SymplecticPath random_path(const SymplecticSpace& space, Rng& rng, const PathRecipe& r = {}) {
  if (r.plant_order > 0) return planted_path(space, rng, r);
  Normalization norm = normalize_space(space);
  Mat l1 = random_bounded_generator(norm, rng, r.rotation, r.hyperbolic);
  Mat l2 = random_bounded_generator(norm, rng, r.rotation, r.hyperbolic);
  SymplecticPath g = product(exp_path(l1, 0.0, 1.0), exp_path(l2, 0.0, 1.0));
  if (r.from_identity) return g;
  Mat m0 = random_symplectic(norm, rng, 0.25);
  return left_multiply(m0, g);
}

/// Loop Q exp(2 pi t L) Q^{-1} on [0, 1] based at I: L = J^{-1} H with H block
/// diagonal in the normalized space and integer eigenvalues in [-2, 2].
inline SymplecticPath random_loop(const SymplecticSpace& space, Rng& rng) {
  Normalization norm = normalize_space(space);
  const NormalizedSpace& ns = norm.space;
  auto block = [&](Index m) {
    Mat u = haar_unitary(m, rng);
    RealVec d(m);
    for (Index i = 0; i < m; ++i) d(i) = rng.uniform_int(-2, 2);
    return Mat(u * d.cast<Complex>().asDiagonal() * u.adjoint());
  };
  Mat hp = block(ns.n_plus());
  Mat hm = block(ns.n_minus());
  Mat h = ns.plus_basis() * hp * ns.plus_basis().adjoint() + ns.minus_basis() * hm * ns.minus_basis().adjoint();
  Mat l = norm.unconjugate(ns.base().structure_inverse() * h) * (2.0 * kPi);
  Mat q = random_symplectic(norm, rng, 0.25);
  return left_multiply(q, right_multiply(exp_path(l, 0.0, 1.0), q.inverse()));
}

/// t -> exp(t L) M0 with -J L positive definite.
inline SymplecticPath random_positive_path(const SymplecticSpace& space, Rng& rng, double length = 1.0) {
  Normalization norm = normalize_space(space);
  Mat l = random_positive_generator(space, rng);
  Mat m0 = random_symplectic(norm, rng, 0.25);
  return right_multiply(exp_path(l, 0.0, length), m0);
}

/// Brake path gamma1(t) = G1(t) R(t phi) E(t) G2(t) on [0, 1], gamma1(0) = I.
/// G1, G2 commute with N, R rotates the special coordinates and E acts on the
/// generic ones, so N gamma1(1)^{-1} N gamma1(1) = G2^{-1} R(2 phi) N E^{-1} N E G2
/// has eigenvalues e^{+-2 i phi_j}.
inline SymplecticPath brake_path(const BrakeModel& model, Rng& rng, const std::vector<double>& phi,
                                 double generic_scale = 0.6, double mixer_scale = 0.4) {
  Mat g1 = model.mixer_generator(rng, mixer_scale);
  Mat g2 = model.mixer_generator(rng, mixer_scale);
  Mat e = model.generic_generator(rng, generic_scale);
  Mat r = model.rotation_generator(phi);
  return product(product(exp_path(g1, 0.0, 1.0), exp_path(r, 0.0, 1.0)),
                 product(exp_path(e, 0.0, 1.0), exp_path(g2, 0.0, 1.0)));
}

/// Rotation angles for the special coordinates, drawn from the angles that
/// make the brake k-iteration nullities nontrivial: j pi/(2k), j pi/(2k+1),
/// 0 and pi/2, or a generic angle.
inline std::vector<double> brake_angles(Index count, int k, Rng& rng) {
  std::vector<double> out;
  for (Index i = 0; i < count; ++i) {
    switch (rng.uniform_int(0, 4)) {
      case 0: out.push_back(kPi * rng.uniform_int(0, 2 * k) / (2.0 * k)); break;
      case 1: out.push_back(kPi * rng.uniform_int(0, 2 * k + 1) / (2.0 * k + 1.0)); break;
      case 2: out.push_back(0.0); break;
      case 3: out.push_back(kPi / 2.0); break;
      default: out.push_back(rng.uniform(0.1, 3.0)); break;
    }
  }
  return out;
}

/// Random brake-involutive endpoint P = G1 R(phi) E G2.
inline Mat brake_endpoint(const BrakeModel& model, Rng& rng, const std::vector<double>& phi) {
  return brake_path(model, rng, phi)(1.0);
}

}  // namespace maslov
