#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/instances.hpp"
#include "maslov/maslov.hpp"

using namespace maslov;

namespace {

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

// Number of t in (0, T] with w t = alpha (mod 2 pi), w != 0.
int hits(double w, double alpha, double t_end) {
  // solutions t = (alpha + 2 pi m) / w
  int count = 0;
  for (int m = -200; m <= 200; ++m) {
    double t = (alpha + 2 * kPi * m) / w;
    if (t > 1e-12 && t <= t_end + 1e-12) ++count;
  }
  return count;
}

}  // namespace

TEST(Maslov, ModelPathPairs) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  Mat l0 = col(1.0, 1.0);
  auto model = [&](double b) { return acting(exp_path(s.structure(), 0.0, b), l0); };
  EXPECT_EQ(maslov_pairs(s, model(kPi), constant_lagrangian(l0, 0.0, kPi), 0.0, kPi).index, 1);
  EXPECT_EQ(maslov_pairs(s, model(2 * kPi), constant_lagrangian(l0, 0.0, 2 * kPi), 0.0, 2 * kPi).index, 2);
  EXPECT_EQ(maslov_pairs(s, model(kPi / 2), constant_lagrangian(l0, 0.0, kPi / 2), 0.0, kPi / 2).index, 0);
  EXPECT_EQ(maslov_pairs(s, reverse(model(kPi)), constant_lagrangian(l0, 0.0, kPi), 0.0, kPi).index, -1);
}

TEST(Maslov, CrossingFormOfModelPath) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  Mat l0 = col(1.0, 1.0);
  LagrangianPath p = acting(exp_path(s.structure(), -1.0, 1.0), l0);
  Mat q = crossing_form(s, p, 0.0, col(1.0, -1.0));
  ASSERT_EQ(q.rows(), 1);
  EXPECT_NEAR(q(0, 0).real(), 2.0, 1e-9);
  // any complement gives a congruent form
  Mat q2 = crossing_form(s, p, 0.0, col(1.0, std::polar(1.0, 0.3)));
  EXPECT_GT(q2(0, 0).real(), 0.0);
}

TEST(Maslov, DiagonalPositivePathsAgainstClosedForm) {
  // gamma(t) = diag(e^{i w_j t}, e^{-i m_j t}), w, m > 0, is a positive path and
  // i_z counts the arrivals at z of each eigenvalue over (0, T].
  Rng rng(2);
  for (int trial = 0; trial < 25; ++trial) {
    Index n = 1 + trial % 3;
    SymplecticSpace s = SymplecticSpace::canonical(n);
    Mat l = Mat::Zero(2 * n, 2 * n);
    std::vector<double> w, m;
    for (Index i = 0; i < n; ++i) {
      w.push_back(rng.uniform(0.5, 3.0));
      m.push_back(rng.uniform(0.5, 3.0));
      l(i, i) = kImag * w.back();
      l(n + i, n + i) = -kImag * m.back();
    }
    double t_end = rng.uniform(1.0, 6.0);
    double alpha = trial % 4 == 0 ? 0.0 : rng.uniform(-kPi, kPi);
    int expected = 0;
    for (Index i = 0; i < n; ++i) expected += hits(w[static_cast<std::size_t>(i)], alpha, t_end) +
                                              hits(-m[static_cast<std::size_t>(i)], alpha, t_end);
    SymplecticPath g = exp_path(l, 0.0, t_end);
    EXPECT_EQ(iz(s, g, std::polar(1.0, alpha)), expected) << "trial " << trial;
    // the arrival at b becomes a departure of the reversed path: exact sign flip
    EXPECT_EQ(iz(s, reverse(g), std::polar(1.0, alpha)), -expected) << "trial " << trial;
  }
}

TEST(Maslov, GraphIndexFixtures) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  const Mat& j = s.structure();
  EXPECT_EQ(iz(s, exp_path(j, 0.0, 2 * kPi), 1.0), 2);
  EXPECT_EQ(iz(s, exp_path(j, 0.0, kPi), 1.0), 0);
  EXPECT_EQ(iz(s, exp_path(j, 0.0, kPi), -1.0), 2);
  EXPECT_EQ(iz(s, constant_path(identity(2), 0.0, 1.0), 1.0), 0);
  EXPECT_EQ(index_vs_N(s, exp_path(j, 0.0, 2 * kPi), -identity(2)).direct, 2);
}

TEST(Maslov, SignFlipsUnderMinusJ) {
  Rng rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 2, rng);
    SymplecticSpace minus = SymplecticSpace::make(-s.structure());
    SymplecticPath g = random_path(s, rng, PathRecipe{true, 2});
    Complex z = trial % 3 == 0 ? Complex(1.0) : trial % 3 == 1 ? Complex(-1.0) : std::polar(1.0, rng.uniform(-kPi, kPi));
    // Sp(H, -J) = Sp(H, J); the index changes sign up to the endpoint terms,
    // which are exchanged between start and end.
    int plus = iz(s, g, z);
    int neg = iz(minus, g, z);
    int nu_a = nu_z(s, g(g.begin()), z);
    int nu_b = nu_z(s, g(g.end()), z);
    // i(-J) = -i(J) + (nu_b - nu_a) for the arrival convention
    EXPECT_EQ(neg, -plus + nu_b - nu_a) << "trial " << trial;
  }
}

TEST(Maslov, ConcatenationAdditivity) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 3, rng);
    SymplecticPath g = random_path(s, rng, PathRecipe{true, 3});
    Mat v = ProductSpace(s).graph_scalar(std::polar(1.0, 2 * kPi / 3));
    double c = rng.uniform(0.2, 0.8);
    int whole = index_v(s, g, v);
    int split = index_v(s, g.restricted(0.0, c), v) + index_v(s, g.restricted(c, 1.0), v);
    EXPECT_EQ(whole, split) << "trial " << trial;
  }
}

TEST(Maslov, SymplecticInvarianceOfPairs) {
  Rng rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 3, rng);
    Normalization norm = normalize_space(s);
    SymplecticPath g = random_path(s, rng);
    Mat lambda = random_lagrangian(norm, rng);
    Mat mu = random_lagrangian(norm, rng);
    Mat q = random_symplectic(norm, rng);
    int direct = maslov_pairs(s, acting(g, lambda), constant_lagrangian(mu, 0.0, 1.0), 0.0, 1.0).index;
    int moved = maslov_pairs(s, acting(left_multiply(q, g), lambda), constant_lagrangian(q * mu, 0.0, 1.0), 0.0, 1.0).index;
    EXPECT_EQ(direct, moved) << "trial " << trial;
  }
}

TEST(Maslov, HomotopyWithFixedEndpoints) {
  // exp(t L) and the reparametrised exp(t^2 L) share endpoints.
  Rng rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 2, rng);
    Mat l = random_bounded_generator(normalize_space(s), rng);
    SymplecticPath a = exp_path(l, 0.0, 1.0);
    std::vector<double> times;
    std::vector<Mat> mats;
    for (int i = 0; i <= 400; ++i) {
      double t = i / 400.0;
      times.push_back(t);
      mats.push_back(Mat(l * (t * t)).exp());
    }
    SymplecticPath b = sampled_path(times, mats);
    for (Complex z : {Complex(1.0), Complex(-1.0), std::polar(1.0, 1.0)}) EXPECT_EQ(iz(s, a, z), iz(s, b, z));
  }
}

TEST(Maslov, Nullities) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  ProductSpace x(s);
  Nullities i = nullities(s, identity(2), x.graph(identity(2)));
  EXPECT_EQ(i.nu, 2);
  EXPECT_EQ(i.nu_tilde, 2);
  Mat rot = Mat::Zero(2, 2);
  rot(0, 0) = std::polar(1.0, 1.0);
  rot(1, 1) = std::polar(1.0, -1.0);
  EXPECT_EQ(nullities(s, rot, x.graph(identity(2))).nu, 0);
  EXPECT_EQ(nu_z(s, rot, std::polar(1.0, 1.0)), 1);
  EXPECT_EQ(nu_z(s, Mat(s.structure() * kPi).exp(), -1.0), 2);
}

TEST(Maslov, IndexVsNThreeWays) {
  Rng rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 2, rng);
    SymplecticPath g = random_path(s, rng);
    Mat n = random_symplectic(normalize_space(s), rng, 0.3);
    EXPECT_NO_THROW(index_vs_N(s, g, n));
  }
}

TEST(Maslov, PushChangesIndexBySweptNullity) {
  Rng rng(13);
  int nontrivial = 0;
  for (int trial = 0; trial < 12; ++trial) {
    SymplecticSpace s = random_space(1 + trial % 2, rng);
    SymplecticPath g = random_path(s, rng, PathRecipe{trial % 2 == 0, 1 + trial % 3});
    Mat v = ProductSpace(s).graph(identity(s.dim()));
    for (double s0 : {0.05, -0.05}) {
      PushReport p = push_index(s, g, v, s0);
      EXPECT_EQ(p.after - p.before, p.swept()) << "trial " << trial << " s0 " << s0;
      nontrivial += p.swept() != 0;
    }
  }
  EXPECT_GT(nontrivial, 0);
}

TEST(Maslov, Positivity) {
  SymplecticSpace s = SymplecticSpace::canonical(2);
  PositivityReport p = is_positive_path(s, exp_path(s.structure(), 0.0, 1.0));
  EXPECT_TRUE(p.positive);
  EXPECT_NEAR(p.margin, 1.0, 1e-9);
  EXPECT_FALSE(is_positive_path(s, constant_path(identity(4), 0.0, 1.0)).positive);
  EXPECT_FALSE(is_positive_path(s, exp_path(-s.structure(), 0.0, 1.0)).positive);
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    SymplecticSpace r = random_space(2, rng);
    SymplecticPath a = random_positive_path(r, rng);
    SymplecticPath b = random_positive_path(r, rng);
    EXPECT_TRUE(is_positive_path(r, a).positive);
    EXPECT_TRUE(is_positive_path(r, product(a, b)).positive);
  }
}

TEST(Maslov, WindingPairs) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  WindingPair c = winding_pair(s, constant_path(identity(2), 0.0, 1.0));
  EXPECT_EQ(c.plus, 0);
  EXPECT_EQ(c.minus, 0);
  Mat l = Mat::Zero(2, 2);
  l(0, 0) = 2 * kPi * kImag;
  WindingPair w = winding_pair(s, exp_path(l, 0.0, 1.0));
  EXPECT_EQ(w.plus, 1);
  EXPECT_EQ(w.minus, 0);
  // e^{2 pi J0 t}: det U11 winds +1, det U22 winds -1
  WindingPair j = winding_pair(s, exp_path(2 * kPi * s.structure(), 0.0, 1.0));
  EXPECT_EQ(j.plus, 1);
  EXPECT_EQ(j.minus, -1);
  EXPECT_EQ(kind_of([&] { winding_pair(s, exp_path(s.structure(), 0.0, 1.0)); }), ErrorKind::NotALoop);
}

TEST(Maslov, WindingOfConjugatedLoop) {
  Rng rng(19);
  for (int trial = 0; trial < 6; ++trial) {
    SymplecticSpace s = SymplecticSpace::canonical(1 + trial % 2);
    Index n = s.half_dim();
    Mat l = Mat::Zero(2 * n, 2 * n);
    int plus = 0, minus = 0;
    for (Index i = 0; i < n; ++i) {
      int a = rng.uniform_int(-2, 2);
      int b = rng.uniform_int(-2, 2);
      plus += a;
      minus += b;
      l(i, i) = 2 * kPi * kImag * static_cast<double>(a);
      l(n + i, n + i) = 2 * kPi * kImag * static_cast<double>(b);
    }
    Mat q = random_symplectic(NormalizedSpace::from(s), rng, 0.3);
    SymplecticPath loop = left_multiply(q, right_multiply(exp_path(l, 0.0, 1.0), q.inverse()));
    WindingPair w = winding_pair(s, loop);
    EXPECT_EQ(w.plus, plus);
    EXPECT_EQ(w.minus, minus);
  }
}

TEST(Maslov, ErrorsForBadInput) {
  SymplecticSpace s = SymplecticSpace::canonical(1);
  SymplecticSpace def = SymplecticSpace::make(Mat(Mat::Identity(2, 2) * kImag));
  EXPECT_EQ(kind_of([&] { iz(s, exp_path(s.structure(), 0.0, 1.0), 2.0); }), ErrorKind::InvalidArgument);
  Mat l0 = col(1.0, 0.0);
  EXPECT_EQ(kind_of([&] {
              maslov_pairs(s, constant_lagrangian(l0, 0.0, 1.0), constant_lagrangian(l0, 0.0, 1.0), 0.0, 1.0);
            }),
            ErrorKind::NotLagrangian);
  EXPECT_EQ(kind_of([&] {
              maslov_pairs(def, constant_lagrangian(l0, 0.0, 1.0), constant_lagrangian(l0, 0.0, 1.0), 0.0, 1.0);
            }),
            ErrorKind::NoLagrangians);
}

TEST(Maslov, AbsurdToleranceSurfacesRankAmbiguity) {
  Tolerances tol;
  tol.rank = 0.1;
  SymplecticSpace s = SymplecticSpace::canonical(1, tol);
  Mat l = Mat::Zero(2, 2);
  l << 0.2 * kImag, 0.3, 0.3, -0.2 * kImag;
  EXPECT_THROW(
      {
        for (int i = 1; i < 40; ++i) nu_z(s, Mat((l * (0.1 * i)).exp()), 1.0);
      },
      Error);
}
