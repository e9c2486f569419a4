#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/brake.hpp"
#include "maslov/instances.hpp"
#include "maslov/iteration.hpp"
#include "maslov/lagrangian_path.hpp"
#include "maslov/path.hpp"

using namespace maslov;

namespace {

// central difference of the path values, used as the oracle for jets
Mat fd(const SymplecticPath& p, double t, double h = 1e-6) { return (p(t + h) - p(t - h)) / (2 * h); }

void expect_jet_matches(const SymplecticPath& p, double t, double tol = 1e-6) {
  Jet j = p.jet(t);
  EXPECT_LT((j.value - p(t)).norm(), 1e-12 * std::max(1.0, j.value.norm()));
  EXPECT_LT((j.derivative - fd(p, t)).norm(), tol * std::max(1.0, j.derivative.norm())) << "t = " << t;
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

TEST(Path, ExpNodeValuesAndJet) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  SymplecticPath p = exp_path(s.structure(), 0.0, 2 * kPi, 2.0, 0.5);
  for (double t : {0.1, 1.0, 2.5}) {
    Mat want = Mat(s.structure() * (2.0 * t + 0.5)).exp();
    EXPECT_LT((p(t) - want).norm(), 1e-12);
    expect_jet_matches(p, t);
  }
}

TEST(Path, ConstantNode) {
  Mat m = identity(2) * 2.0;
  SymplecticPath p = constant_path(m, -1.0, 1.0);
  EXPECT_LT((p(0.3) - m).norm(), 1e-15);
  EXPECT_EQ(p.jet(0.3).derivative.norm(), 0.0);
}

TEST(Path, ProductRule) {
  Rng rng(4);
  SymplecticSpace s = random_space(2, rng);
  SymplecticPath a = random_path(s, rng);
  SymplecticPath b = random_path(s, rng);
  SymplecticPath p = product(a, b);
  for (double t : {0.2, 0.5, 0.9}) {
    EXPECT_LT((p(t) - a(t) * b(t)).norm(), 1e-12 * p(t).norm());
    expect_jet_matches(p, t);
    EXPECT_TRUE(s.is_symplectic(p(t)));
  }
}

TEST(Path, ConcatAndJunction) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  SymplecticPath a = exp_path(s.structure(), 0.0, 1.0);
  SymplecticPath b = exp_path(s.structure(), 1.0, 2.0);
  SymplecticPath c = concat(a, b);
  EXPECT_EQ(c.begin(), 0.0);
  EXPECT_EQ(c.end(), 2.0);
  EXPECT_LT((c(1.5) - b(1.5)).norm(), 1e-15);
  SymplecticPath d = exp_path(-s.structure(), 1.0, 2.0);
  EXPECT_EQ(kind_of([&] { concat(a, d); }), ErrorKind::DiscontinuousJunction);
  EXPECT_EQ(kind_of([&] { concat(a, exp_path(s.structure(), 1.5, 2.0)); }), ErrorKind::InvalidArgument);
}

TEST(Path, ReverseAndRestrict) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  SymplecticPath p = exp_path(s.structure(), 0.0, 3.0);
  SymplecticPath r = reverse(p);
  EXPECT_LT((r(0.5) - p(2.5)).norm(), 1e-14);
  expect_jet_matches(r, 1.2);
  SymplecticPath q = p.restricted(1.0, 2.0);
  EXPECT_EQ(q.begin(), 1.0);
  EXPECT_LT((q(1.5) - p(1.5)).norm(), 1e-15);
  EXPECT_EQ(kind_of([&] { SymplecticPath(p.node(), 2.0, 1.0); }), ErrorKind::InvalidArgument);
}

TEST(Path, ConjugationAndPower) {
  Rng rng(6);
  SymplecticSpace s = random_space(2, rng);
  SymplecticPath p = random_path(s, rng);
  Mat n = random_symplectic(normalize_space(s), rng);
  SymplecticPath c = conjugation(n, p);
  SymplecticPath w = power(p, 3);
  for (double t : {0.3, 0.7}) {
    EXPECT_LT((c(t) - n * p(t).inverse() * n).norm(), 1e-10 * c(t).norm());
    EXPECT_LT((w(t) - p(t) * p(t) * p(t)).norm(), 1e-10 * w(t).norm());
    expect_jet_matches(c, t);
    expect_jet_matches(w, t);
  }
}

TEST(Path, SampledChartStaysSymplectic) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  std::vector<double> times{0.0, 0.5, 1.0};
  std::vector<Mat> mats;
  for (double t : times) mats.push_back(Mat(s.structure() * t).exp());
  SymplecticPath p = sampled_path(times, mats);
  EXPECT_TRUE(s.is_symplectic(p(0.3)));
  EXPECT_LT((p(0.3) - Mat(s.structure() * 0.3).exp()).norm(), 1e-12);
  EXPECT_LT((p.jet(0.3).derivative - s.structure() * p(0.3)).norm(), 1e-6);
}

TEST(Path, AIterateMatchesDefinition) {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 3, rng);
    Normalization norm = normalize_space(s);
    SymplecticPath g = random_path(s, rng);
    Mat a = random_symplectic(norm, rng, 0.2);
    int k = 1 + trial % 4;
    Mat gt = g(g.end());
    Mat p = a.inverse() * gt;
    SymplecticPath it = a_iterate(s, a, k, g);
    EXPECT_EQ(it.end(), k * g.end());
    for (int j = 0; j < k; ++j) {
      double t = j * g.end() + 0.37 * g.end();
      Mat want = matrix_power(a, j) * g(0.37 * g.end()) * matrix_power(p, j);
      EXPECT_LT((it(t) - want).norm(), 1e-9 * want.norm());
    }
    EXPECT_LT((it(it.end()) - matrix_power(a, k) * matrix_power(p, k)).norm(), 1e-9 * it(it.end()).norm());
    EXPECT_TRUE(s.is_symplectic(it(0.5 * it.end())));
  }
}

TEST(Path, IdentityIterateOfExponentialIsExponential) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  SymplecticPath it = a_iterate(s, identity(2), 3, exp_path(s.structure(), 0.0, 1.0));
  for (double t : {0.5, 1.5, 2.9}) EXPECT_LT((it(t) - Mat(s.structure() * t).exp()).norm(), 1e-12);
}

TEST(Path, IterationNeedsPTau) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  SymplecticPath off = exp_path(s.structure(), 0.0, 1.0, 1.0, 0.4);
  EXPECT_EQ(kind_of([&] { a_iterate(s, identity(2), 2, off); }), ErrorKind::InvalidArgument);
  SymplecticPath shifted = exp_path(s.structure(), 0.5, 1.0);
  EXPECT_EQ(kind_of([&] { a_iterate(s, identity(2), 2, shifted); }), ErrorKind::InvalidArgument);
}

TEST(Path, BrakeIterateEndpoints) {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    BrakeModel model = BrakeModel::random(1 + trial % 2, trial % 2, rng);
    const BrakeSymmetry& brake = model.brake();
    SymplecticPath g = brake_path(model, rng, brake_angles(model.special(), 3, rng));
    const Mat& n = brake.involution();
    Mat q = n * g(1.0).inverse() * n * g(1.0);
    SymplecticPath two = brake_iterate(brake, 2, g);
    EXPECT_LT((two(2.0) - q).norm(), 1e-9 * q.norm());
    SymplecticPath three = brake_iterate(brake, 3, g);
    EXPECT_LT((three(3.0) - g(1.0) * q).norm(), 1e-9 * q.norm());
    // odd segments are reflected copies
    EXPECT_LT((three(1.25) - n * g(0.75) * n * q).norm(), 1e-9 * q.norm());
    for (double t : {0.4, 1.6, 2.2}) EXPECT_TRUE(brake.space().is_symplectic(three(t)));
  }
}

TEST(LagrangianPath, GraphAndActing) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  SymplecticPath p = exp_path(s.structure(), 0.0, 1.0);
  LagrangianPath gr = graph_path(p);
  EXPECT_EQ(gr.rows(), 4);
  EXPECT_EQ(gr.cols(), 2);
  ProductSpace x(s);
  EXPECT_TRUE(is_lagrangian(x.space(), gr.frame(0.4)));
  Mat l0(2, 1);
  l0 << 1.0, 1.0;
  LagrangianPath a = acting(p, l0);
  EXPECT_TRUE(is_lagrangian(s, a.frame(0.6)));
  LagrangianPath r = reverse(a);
  EXPECT_LT((r.frame(0.25) - a.frame(0.75)).norm(), 1e-14);
  EXPECT_LT((r.jet(0.25).derivative + a.jet(0.75).derivative).norm(), 1e-14);
}
