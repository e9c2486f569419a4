#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/instances.hpp"
#include "maslov/polar.hpp"
#include "maslov/random.hpp"
#include "maslov/space.hpp"

using namespace maslov;

namespace {

Mat diag2(Complex a, Complex b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Mat col(Complex a, Complex b) {
  Mat m(2, 1);
  m << a, b;
  return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Config;
}

}  // namespace

TEST(Space, CanonicalIsValidAndNormalized) {
  SymplecticSpace s = SymplecticSpace::canonical(2);
  EXPECT_EQ(s.dim(), 4);
  EXPECT_EQ(s.half_dim(), 2);
  EXPECT_TRUE(s.is_normalized());
  NormalizedSpace ns = NormalizedSpace::from(s);
  EXPECT_EQ(ns.n_plus(), 2);
  EXPECT_EQ(ns.n_minus(), 2);
}

TEST(Space, SignatureOfDiagII) {
  NormalizedSpace ns = NormalizedSpace::from(SymplecticSpace::make(diag2(kImag, kImag)));
  EXPECT_EQ(ns.n_plus(), 2);
  EXPECT_EQ(ns.n_minus(), 0);
  EXPECT_FALSE(ns.has_lagrangians());
}

TEST(Space, RealRotationIsAValidStructure) {
  Mat j(2, 2);
  j << 0.0, -1.0, 1.0, 0.0;
  SymplecticSpace s = SymplecticSpace::make(j);
  EXPECT_TRUE(s.is_normalized());
  NormalizedSpace ns = NormalizedSpace::from(s);
  EXPECT_EQ(ns.n_plus(), 1);
  EXPECT_EQ(ns.n_minus(), 1);
}

TEST(Space, RejectsBadStructures) {
  Mat herm(2, 2);
  herm << 0.0, 1.0, 1.0, 0.0;
  EXPECT_EQ(kind_of([&] { SymplecticSpace::make(herm); }), ErrorKind::NotSkewAdjoint);
  EXPECT_EQ(kind_of([&] { SymplecticSpace::make(diag2(kImag, 0.0)); }), ErrorKind::Singular);
  EXPECT_EQ(kind_of([&] { SymplecticSpace::make(Mat::Identity(3, 3) * kImag); }), ErrorKind::OddDimension);
  EXPECT_EQ(kind_of([&] { NormalizedSpace::from(SymplecticSpace::make(diag2(2.0 * kImag, -2.0 * kImag))); }),
            ErrorKind::NotNormalized);
}

TEST(Space, NormalizeDiag2i) {
  Normalization n = normalize_space(SymplecticSpace::make(diag2(2.0 * kImag, -2.0 * kImag)));
  EXPECT_LT((n.space.base().structure() - diag2(kImag, -kImag)).norm(), 1e-12);
  EXPECT_LT((n.transfer - std::sqrt(2.0) * identity(2)).norm(), 1e-12);
}

TEST(Space, NormalizationTransportsSymplecticGroup) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 3, rng);
    Normalization n = normalize_space(s);
    EXPECT_TRUE(n.space.base().is_normalized());
    // J1 = T^{-*} J T^{-1} up to the transfer, checked through the group.
    Mat m = random_symplectic(n, rng, 0.4);
    EXPECT_TRUE(s.is_symplectic(m));
    EXPECT_TRUE(n.space.base().is_symplectic(n.conjugate(m)));
  }
}

TEST(Space, SymplecticMatrixChecks) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  EXPECT_NO_THROW(SymplecticMatrix(s, diag2(std::polar(1.0, 0.3), std::polar(1.0, 1.2))));
  EXPECT_EQ(kind_of([&] { SymplecticMatrix(s, 2.0 * identity(2)); }), ErrorKind::NotSymplectic);
  EXPECT_EQ(kind_of([&] { SymplecticMatrix(s, identity(4)); }), ErrorKind::SpaceMismatch);
}

TEST(Space, AlgebraExponentiatesIntoGroup) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    SymplecticSpace s = random_space(2, rng);
    Mat l = random_algebra_element(s, rng, 0.5);
    EXPECT_TRUE(s.in_algebra(l));
    EXPECT_TRUE(s.is_symplectic(Mat(l.exp())));
  }
}

TEST(Space, Annihilator) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  EXPECT_TRUE(same_span(annihilator(s, col(1.0, 0.0)), col(0.0, 1.0), 1e-8));
  EXPECT_TRUE(is_lagrangian(s, col(1.0, 1.0)));
  EXPECT_FALSE(is_lagrangian(s, col(1.0, 0.0)));
  EXPECT_EQ(kind_of([&] { LagrangianFrame(s, col(1.0, 0.0)); }), ErrorKind::NotLagrangian);
}

TEST(Space, AnnihilatorDimensionOnRandomSpaces) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 3, rng);
    Index k = rng.uniform_int(1, static_cast<int>(s.dim()) - 1);
    Mat f = gaussian_matrix(s.dim(), k, rng);
    Mat a = annihilator(s, f);
    EXPECT_EQ(a.cols(), s.dim() - k);
    EXPECT_LT(s.omega_matrix(f, a).norm(), 1e-9 * std::max(1.0, f.norm() * a.norm() * s.structure().norm()));
  }
}

TEST(Space, RandomLagrangiansAreLagrangian) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 3, rng);
    Normalization n = normalize_space(s);
    Mat f = random_lagrangian(n, rng);
    EXPECT_TRUE(is_lagrangian(s, f));
    EXPECT_NO_THROW(LagrangianFrame(s, f));
  }
}

TEST(Space, PairIndex) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  PairIndex same = pair_index(s, col(1.0, 1.0), col(1.0, 1.0));
  EXPECT_EQ(same.dim_cap, 1);
  EXPECT_EQ(same.codim_sum, 1);
  EXPECT_EQ(same.index, 0);
  PairIndex transversal = pair_index(s, col(1.0, 1.0), col(1.0, -1.0));
  EXPECT_EQ(transversal.dim_cap, 0);
  EXPECT_EQ(transversal.codim_sum, 0);
  EXPECT_EQ(transversal.index, 0);
}

TEST(Polar, Fixtures) {
  NormalizedSpace ns = NormalizedSpace::from(SymplecticSpace::canonical(1));
  PolarDecomposition id = polar_decompose(ns, identity(2));
  EXPECT_LT((id.a - identity(2)).norm() + (id.u - identity(2)).norm() + id.s.norm(), 1e-12);

  Mat m(2, 2);
  m << std::cosh(1.0), std::sinh(1.0), std::sinh(1.0), std::cosh(1.0);
  PolarDecomposition h = polar_decompose(ns, m);
  EXPECT_LT((h.a - m).norm(), 1e-9);
  EXPECT_LT((h.u - identity(2)).norm(), 1e-9);
  EXPECT_NEAR(std::abs(h.s12(0, 0)), 1.0, 1e-9);

  Mat u = diag2(std::polar(1.0, 0.4), std::polar(1.0, -2.2));
  PolarDecomposition w = polar_decompose(ns, u);
  EXPECT_LT((w.a - identity(2)).norm(), 1e-12);
  EXPECT_LT((w.u - u).norm(), 1e-12);
  EXPECT_NEAR(std::arg(w.u11(0, 0)), 0.4, 1e-12);
  EXPECT_NEAR(std::arg(w.u22(0, 0)), -2.2, 1e-12);
}

TEST(Polar, RandomRoundTrip) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    NormalizedSpace ns = NormalizedSpace::from(SymplecticSpace::canonical(1 + trial % 3));
    const SymplecticSpace& s = ns.base();
    const Index d = s.dim();
    Mat m = random_symplectic(ns, rng, 0.8);
    PolarDecomposition p = polar_decompose(ns, m);
    double scale = m.norm();
    EXPECT_LT((p.a * p.u - m).norm() / scale, 1e-9);
    EXPECT_LT((p.u.adjoint() * p.u - identity(d)).norm(), 1e-9);
    EXPECT_LT((p.a - p.a.adjoint()).norm() / scale, 1e-9);
    EXPECT_GT(min_hermitian_eigenvalue(p.a), 0.0);
    EXPECT_TRUE(s.is_symplectic(p.a));
    EXPECT_TRUE(s.is_symplectic(p.u));
    EXPECT_TRUE(s.in_algebra(p.s));
    EXPECT_LT((Mat(p.s).exp() - p.a).norm() / scale, 1e-9);
    // U commutes with J: block diagonal in the splitting.
    EXPECT_LT((p.u * s.structure() - s.structure() * p.u).norm(), 1e-9);
    // S anticommutes with J: off-diagonal blocks only.
    EXPECT_LT((p.s * s.structure() + s.structure() * p.s).norm(), 1e-9 * std::max(1.0, p.s.norm()));
  }
}

TEST(Polar, RejectsNonSymplectic) {
  NormalizedSpace ns = NormalizedSpace::from(SymplecticSpace::canonical(1));
  EXPECT_EQ(kind_of([&] { polar_decompose(ns, 3.0 * identity(2)); }), ErrorKind::NotSymplectic);
}

TEST(Linalg, RankAmbiguityBand) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-8;
  EXPECT_EQ(kind_of([&] { numerical_rank(m, 1e-8); }), ErrorKind::RankAmbiguous);
  m(1, 1) = 1e-12;
  EXPECT_EQ(numerical_rank(m, 1e-8).rank, 1);
  m(1, 1) = 1e-3;
  EXPECT_EQ(numerical_rank(m, 1e-8).rank, 2);
}

TEST(Linalg, ScaleFloorForDifferences) {
  Mat noise = Mat::Zero(2, 2);
  noise(0, 0) = 1e-16;
  EXPECT_EQ(kernel_dim(noise, 1e-8, 1.0), 2);
}

TEST(Linalg, HaarUnitaryIsUnitary) {
  Rng rng(1);
  Mat u = haar_unitary(5, rng);
  EXPECT_LT((u.adjoint() * u - identity(5)).norm(), 1e-12);
}
