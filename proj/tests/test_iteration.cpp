#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/brake.hpp"
#include "maslov/chebyshev.hpp"
#include "maslov/instances.hpp"
#include "maslov/iteration.hpp"

using namespace maslov;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Config;
}

int hits(double w, double alpha, double t_end) {
  int count = 0;
  for (int m = -400; m <= 400; ++m) {
    double t = (alpha + 2 * kPi * m) / w;
    if (t > 1e-12 && t <= t_end + 1e-12) ++count;
  }
  return count;
}

// dim ker(M - z I) straight from an SVD, independent of the graph machinery.
int eigen_nullity(const Mat& m, Complex z) {
  return kernel_dim(m - z * identity(m.rows()), 1e-8, std::max(1.0, op_norm(m)));
}

}  // namespace

TEST(Bott, DiagonalClosedForm) {
  // gamma = diag(e^{i w t}, e^{-i m t}); both sides counted by hand.
  Rng rng(1);
  for (int trial = 0; trial < 12; ++trial) {
    SymplecticSpace s = SymplecticSpace::canonical(1);
    double w = rng.uniform(0.5, 3.0);
    double m = rng.uniform(0.5, 3.0);
    double t_end = rng.uniform(1.0, 4.0);
    int k = 1 + trial % 5;
    Mat l = Mat::Zero(2, 2);
    l(0, 0) = kImag * w;
    l(1, 1) = -kImag * m;
    VerdictReport v = verify_bott(s, exp_path(l, 0.0, t_end), k);
    EXPECT_EQ(v.lhs, hits(k * w, 0.0, t_end) + hits(-k * m, 0.0, t_end));
    ASSERT_EQ(v.rhs_terms.size(), static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      double alpha = 2 * kPi * j / k;
      EXPECT_EQ(v.rhs_terms[static_cast<std::size_t>(j)], hits(w, alpha, t_end) + hits(-m, alpha, t_end));
    }
    EXPECT_TRUE(v.match);
  }
}

TEST(Bott, RandomPaths) {
  Rng rng(2);
  int nonzero = 0;
  for (int trial = 0; trial < 12; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 3, rng);
    int k = 2 + trial % 4;
    SymplecticPath g = random_path(s, rng, PathRecipe{trial % 2 == 0, k});
    VerdictReport v = verify_bott(s, g, k);
    EXPECT_TRUE(v.match) << v.lhs << " vs " << v.rhs();
    nonzero += v.lhs != 0;
  }
  EXPECT_GT(nonzero, 0);
}

TEST(Bott, AIterationIdentities) {
  Rng rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 2, rng);
    Normalization norm = normalize_space(s);
    int k = 2 + trial % 3;
    SymplecticPath g = random_path(s, rng, PathRecipe{true, k});
    Mat a = trial % 2 == 0 ? identity(s.dim()) : random_symplectic(norm, rng, 0.3);
    EXPECT_TRUE(verify_bott_iterate(s, g, k, a).match);
    EXPECT_TRUE(verify_bott_iterate_nullity(s, g, k, a).match);
    EXPECT_TRUE(verify_delta_relation(s, g, k, a).match);
  }
}

TEST(Bott, IdentityIterationIsPointwisePowerForExponentials) {
  // For gamma = exp(tL) the I-iterate on [0, k tau] and exp(t L) on [0, k tau] coincide.
  Rng rng(4);
  SymplecticSpace s = random_space(2, rng);
  Mat l = random_bounded_generator(normalize_space(s), rng);
  SymplecticPath it = a_iterate(s, identity(s.dim()), 3, exp_path(l, 0.0, 1.0));
  EXPECT_LT((it(2.3) - Mat(l * 2.3).exp()).norm(), 1e-9 * it(2.3).norm());
  EXPECT_EQ(iz(s, it, 1.0), iz(s, exp_path(l, 0.0, 3.0), 1.0));
}

TEST(Bott, DeltaIsPathIndependent) {
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 2, rng);
    int k = 2 + trial % 3;
    SymplecticPath g = random_path(s, rng, PathRecipe{true, k});
    SymplecticPath loop = random_loop(s, rng);
    // g and loop * g share both endpoints.
    SymplecticPath h = product(loop, g);
    EXPECT_EQ(delta_from_path(s, g, k), delta_from_path(s, h, k));
    EXPECT_EQ(delta_from_path(s, g, k), delta_k(s, g(1.0), k));
  }
  SymplecticSpace c = SymplecticSpace::canonical(1);
  EXPECT_EQ(delta_k(c, identity(2), 2), 0);
}

TEST(Nullity, PowerSplitAgainstEigenspaces) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 3, rng);
    int k = 1 + trial % 6;
    Mat m = random_path(s, rng, PathRecipe{true, k})(1.0);
    PowerSplit p = split_nullity_power(s, m, k);
    EXPECT_EQ(p.lhs, eigen_nullity(matrix_power(m, k), 1.0));
    for (int j = 0; j < k; ++j)
      EXPECT_EQ(p.per_root[static_cast<std::size_t>(j)], eigen_nullity(m, root_of_unity(j, k)));
    EXPECT_EQ(p.lhs, p.lhs_tilde);
  }
}

TEST(Nullity, PowerSplitFixtures) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  PowerSplit i = split_nullity_power(s, identity(2), 2);
  EXPECT_EQ(i.lhs, 2);
  EXPECT_EQ(i.per_root, (std::vector<int>{2, 0}));
  PowerSplit m = split_nullity_power(s, -identity(2), 2);
  EXPECT_EQ(m.lhs, 2);
  EXPECT_EQ(m.per_root, (std::vector<int>{0, 2}));
  EXPECT_EQ(kind_of([&] { split_nullity_power(s, identity(2), 0); }), ErrorKind::InvalidArgument);
}

TEST(Cheb, ScalarValues) {
  EXPECT_NEAR(cheb::evaluate(cheb::first_kind(2), std::cos(kPi / 3)), -0.5, 1e-12);
  EXPECT_NEAR(cheb::evaluate(cheb::r_poly(1), std::cos(2 * kPi / 3)), 0.0, 1e-12);
  EXPECT_EQ(cheb::first_kind(3), (cheb::Poly{0, -3, 0, 4}));
  EXPECT_EQ(cheb::second_kind(2), (cheb::Poly{-1, 0, 4}));
  for (int k = 0; k <= 12; ++k)
    for (double a : {0.3, 1.1, 2.5}) {
      EXPECT_NEAR(cheb::evaluate(cheb::first_kind(k), std::cos(a)), std::cos(k * a), 1e-10);
      EXPECT_NEAR(cheb::evaluate(cheb::second_kind(k), std::cos(a)), std::sin((k + 1) * a) / std::sin(a), 1e-9);
    }
}

TEST(Cheb, MatrixPolynomialsMatchScalarOnDiagonal) {
  Mat x = Mat::Zero(3, 3);
  x(0, 0) = 0.3;
  x(1, 1) = -0.7;
  x(2, 2) = 1.4;
  for (int k = 1; k <= 8; ++k) {
    Mat t = cheb::first_kind(x, k);
    Mat u = cheb::second_kind(x, k);
    Mat r = cheb::r_matrix(x, k);
    for (Index i = 0; i < 3; ++i) {
      double xi = x(i, i).real();
      EXPECT_NEAR(t(i, i).real(), cheb::evaluate(cheb::first_kind(k), xi), 1e-9);
      EXPECT_NEAR(u(i, i).real(), cheb::evaluate(cheb::second_kind(k), xi), 1e-9);
      EXPECT_NEAR(r(i, i).real(), cheb::evaluate(cheb::r_poly(k), xi), 1e-9);
    }
  }
}

TEST(Cheb, BlockPowerMatchesDirectPower) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    BrakeModel model = BrakeModel::random(1 + trial % 3, trial % 2, rng);
    const BrakeSymmetry& brake = model.brake();
    Mat p = brake_endpoint(model, rng, brake_angles(model.special(), 4, rng));
    Mat m = brake.reflect(p);
    EXPECT_LT(block_identities(brake, m).max(), 1e-9);
    int k = 1 + trial % 12;
    Mat direct = matrix_power(m, k);
    EXPECT_LT((cheb_power(brake, m, k) - direct).norm(), 1e-8 * std::max(1.0, direct.norm()));
  }
}

TEST(Cheb, RejectsNonInvolutive) {
  Rng rng(8);
  BrakeModel model = BrakeModel::random(2, 0, rng);
  Mat m = model.random_symplectic(rng, 0.5);
  EXPECT_EQ(kind_of([&] { cheb_power(model.brake(), m, 3); }), ErrorKind::NotBrakeInvolution);
}

TEST(Brake, SymmetryValidation) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  EXPECT_EQ(kind_of([&] { BrakeSymmetry::make(s, identity(2)); }), ErrorKind::NotBrakeInvolution);
  Mat n(2, 2);
  n << 0.0, 1.0, 1.0, 0.0;  // N* J0 N = -J0, N^2 = I
  BrakeSymmetry b = BrakeSymmetry::make(s, n);
  EXPECT_EQ(b.u_plus().cols(), 1);
  EXPECT_TRUE(is_lagrangian(s, b.u_plus()));
  EXPECT_TRUE(is_lagrangian(s, b.u_minus()));
}

TEST(Brake, TwoTimesFormula) {
  Rng rng(9);
  int nonzero = 0;
  for (int trial = 0; trial < 10; ++trial) {
    BrakeModel model = BrakeModel::random(1 + trial % 2, trial % 3 == 0 ? 0 : 1, rng);
    const BrakeSymmetry& brake = model.brake();
    BrakeTwist twist = trial % 3 == 1 ? make_twist(brake, identity(brake.space().dim())) : model.random_twist(rng);
    SymplecticPath g = brake_path(model, rng, brake_angles(model.special(), 2, rng));
    VerdictReport a = verify_brake2(brake, twist, g);
    VerdictReport b = verify_brake2_iterate(brake, twist, g);
    EXPECT_TRUE(a.match) << a.lhs << " vs " << a.rhs();
    EXPECT_TRUE(b.match) << b.lhs << " vs " << b.rhs();
    EXPECT_EQ(a.lhs, b.lhs);
    nonzero += a.lhs != 0;
    TwistKernel tk = twist_kernel(brake, twist, g(1.0));
    EXPECT_LT(tk.block_residual, 1e-9);
    EXPECT_EQ(tk.ker, tk.ker_c + tk.ker_b);
  }
  EXPECT_GT(nonzero, 0);
}

TEST(Brake, KIterationIdentities) {
  Rng rng(10);
  for (BrakeIdentity id : {BrakeIdentity::Reflect, BrakeIdentity::Power, BrakeIdentity::Odd, BrakeIdentity::Iterate2,
                           BrakeIdentity::IIterate, BrakeIdentity::Iterate2k1}) {
    for (int trial = 0; trial < 4; ++trial) {
      int k = 1 + trial % 4;
      BrakeModel model = BrakeModel::random(1 + trial % 2, 1, rng);
      SymplecticPath g = brake_path(model, rng, brake_angles(model.special(), k, rng));
      VerdictReport v = verify_brake_k(model.brake(), id, g, k);
      EXPECT_TRUE(v.match) << to_string(id) << ": " << v.lhs << " vs " << v.rhs();
    }
  }
}

TEST(Brake, NullitySplitting) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 1 + trial % 5;
    BrakeModel model = BrakeModel::random(1 + trial % 3, trial % 2 ? 1 : 0, rng);
    const BrakeSymmetry& brake = model.brake();
    Mat p = brake_endpoint(model, rng, brake_angles(model.special(), k, rng));
    BrakeSplit s = split_nullity_brake(brake, p, k);
    EXPECT_TRUE(s.reflect.holds());
    EXPECT_TRUE(s.power.holds());
    EXPECT_TRUE(s.odd.holds());
    EXPECT_TRUE(s.kernel.holds());
    EXPECT_LT(s.triangular_residual, 1e-9);
    EXPECT_LT(s.r_relation_residual, 1e-8);
    // independent count of the kernel side through eigenspaces
    Mat m = brake.reflect(p);
    EXPECT_EQ(s.kernel.lhs, eigen_nullity(m, 1.0));
  }
}

TEST(Brake, FixturesForIdentityEndpoint) {
  Mat j(2, 2);
  j << 0.0, -1.0, 1.0, 0.0;
  Mat n = Mat::Zero(2, 2);
  n(0, 0) = -1.0;
  n(1, 1) = 1.0;
  BrakeSymmetry b = BrakeSymmetry::make(SymplecticSpace::make(j), n);
  BrakeSplit s = split_nullity_brake(b, identity(2), 3);
  EXPECT_EQ(s.reflect.lhs, 1);
  EXPECT_EQ(s.reflect.rhs, (std::vector<int>{1, 0}));
  SymplecticPath constant = constant_path(identity(2), 0.0, 1.0);
  for (BrakeIdentity id : {BrakeIdentity::Reflect, BrakeIdentity::Iterate2})
    EXPECT_EQ(verify_brake_k(b, id, constant, 2).lhs, 0);
}

TEST(Verdicts, ResidualVerdict) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  VerdictReport ok = residual_verdict("r", 1e-12, 1e-9, s);
  EXPECT_TRUE(ok.match);
  EXPECT_TRUE(ok.is_residual());
  EXPECT_FALSE(residual_verdict("r", 1e-6, 1e-9, s).match);
  EXPECT_FALSE(verdict("v", 1, {0, 0}, s).match);
  EXPECT_FALSE(verdict("v", 1, {0, 0}, s).is_residual());
}
