#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "maslov/brake.hpp"
#include "maslov/chebyshev.hpp"
#include "maslov/maslov.hpp"
#include "maslov/path.hpp"
#include "maslov/polar.hpp"

namespace maslov {

/// Outcome of checking one identity lhs = sum(rhs_terms) on one instance.
struct VerdictReport {
  std::string identity;
  int lhs = 0;
  std::vector<int> rhs_terms;
  bool match = false;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  Tolerances tolerances;
  std::string detail;
  /// Set for residual checks (lhs/rhs unused); NaN for integer identities.
  double residual = std::numeric_limits<double>::quiet_NaN();
  double residual_tol = std::numeric_limits<double>::quiet_NaN();

  int rhs() const { return std::accumulate(rhs_terms.begin(), rhs_terms.end(), 0); }
  bool is_residual() const { return !std::isnan(residual_tol); }
};

inline VerdictReport verdict(std::string identity, int lhs, std::vector<int> rhs, const SymplecticSpace& space) {
  VerdictReport v;
  v.identity = std::move(identity);
  v.lhs = lhs;
  v.rhs_terms = std::move(rhs);
  v.match = v.lhs == v.rhs();
  v.dims = {static_cast<int>(space.dim())};
  v.tolerances = space.tol();
  return v;
}

inline VerdictReport residual_verdict(std::string identity, double residual, double tol, const SymplecticSpace& space) {
  VerdictReport v = verdict(std::move(identity), 0, {}, space);
  v.residual = residual;
  v.residual_tol = tol;
  v.match = residual <= tol;
  return v;
}

inline Complex root_of_unity(int j, int k) { return std::polar(1.0, 2.0 * kPi * j / k); }

// ---- constructors ------------------------------------------------------------

inline void check_p_tau(const SymplecticSpace& space, const SymplecticPath& gamma) {
  if (gamma.dim() != space.dim()) fail(ErrorKind::SpaceMismatch, "path does not live in the space");
  if (gamma.begin() != 0.0 || !(gamma.end() > 0.0)) fail(ErrorKind::InvalidArgument, "path must be defined on [0, tau]");
  Mat g0 = gamma(0.0);
  if ((g0 - identity(space.dim())).norm() > 1e-9 * std::sqrt(static_cast<double>(space.dim())))
    fail(ErrorKind::InvalidArgument, "path must start at the identity");
}

/// A^{-1} gamma(tau).
inline Mat poincare_map(const Mat& a, const SymplecticPath& gamma) { return a.inverse() * gamma(gamma.end()); }

/// k-th A-iteration of gamma in P_tau, defined on [0, k tau].
inline SymplecticPath a_iterate(const SymplecticSpace& space, const Mat& a, int k, const SymplecticPath& gamma,
                                double tol = 1e-9) {
  check_p_tau(space, gamma);
  SymplecticMatrix checked(space, a);
  double tau = gamma.end();
  return SymplecticPath(std::make_shared<AIterateNode>(a, k, tau, gamma.node(), tol), 0.0, k * tau);
}

/// k-th N-brake iteration of gamma in P_tau, defined on [0, k tau].
inline SymplecticPath brake_iterate(const BrakeSymmetry& brake, int k, const SymplecticPath& gamma,
                                    double tol = 1e-9) {
  check_p_tau(brake.space(), gamma);
  double tau = gamma.end();
  return SymplecticPath(std::make_shared<BrakeIterateNode>(brake.involution(), k, tau, gamma.node(), tol), 0.0,
                        k * tau);
}

/// t -> N gamma1(t)^{-1} N gamma1(t); satisfies (N gamma(t))^2 = I.
inline SymplecticPath brake_square(const BrakeSymmetry& brake, const SymplecticPath& gamma1) {
  return product(conjugation(brake.involution(), gamma1), gamma1);
}

// ---- nullity splittings --------------------------------------------------------

struct PowerSplit {
  int lhs = 0;                 // nu_1(M^k)
  std::vector<int> per_root;   // nu_z(M), z = exp(2 pi i j / k)
  int lhs_tilde = 0;
  std::vector<int> per_root_tilde;
};

/// nu_1(M^k) = sum over k-th roots z of nu_z(M).
inline PowerSplit split_nullity_power(const SymplecticSpace& space, const Mat& m, int k) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "k must be positive");
  SymplecticMatrix checked(space, m);
  ProductSpace x(space);
  PowerSplit out;
  Nullities l = nullities(space, matrix_power(m, k), x.graph(identity(space.dim())));
  out.lhs = l.nu;
  out.lhs_tilde = l.nu_tilde;
  for (int j = 0; j < k; ++j) {
    Nullities r = nullities(space, m, x.graph_scalar(root_of_unity(j, k)));
    out.per_root.push_back(r.nu);
    out.per_root_tilde.push_back(r.nu_tilde);
  }
  int sum = std::accumulate(out.per_root.begin(), out.per_root.end(), 0);
  int sum_t = std::accumulate(out.per_root_tilde.begin(), out.per_root_tilde.end(), 0);
  if (sum != out.lhs || sum_t != out.lhs_tilde) {
    std::ostringstream os;
    os << "nu_1(M^" << k << ") = " << out.lhs << " but the roots of unity give " << sum;
    fail(ErrorKind::IdentityViolated, os.str());
  }
  return out;
}

/// One nullity identity lhs = sum(rhs) together with its co-nullity twin.
struct NullitySplit {
  std::string identity;
  int lhs = 0;
  std::vector<int> rhs;
  int lhs_tilde = 0;
  std::vector<int> rhs_tilde;
  bool holds() const {
    return lhs == std::accumulate(rhs.begin(), rhs.end(), 0) &&
           lhs_tilde == std::accumulate(rhs_tilde.begin(), rhs_tilde.end(), 0);
  }
};

struct BrakeSplit {
  NullitySplit reflect;     // nu_{U+xU+}(M) = nu_{U+xU+}(P) + nu_{U+xU-}(P), M = N P^{-1} N P
  NullitySplit power;       // nu_{U+xU+}(M^k) = nu_{U+xU+}(M) + sum_{j<k} nu_{e^{i j pi/k}}(M)
  NullitySplit odd;         // nu_{U+xU+}(P M^k) = nu_{U+xU+}(P) + sum_{j<=k} nu_{e^{2 i j pi/(2k+1)}}(M)
  NullitySplit kernel;      // dim ker(K - S) = dim ker C + dim ker B (S = I unless given)
  double triangular_residual = 0.0;  // (I - l^{-1} M N)(M - l I) against its block form
  double r_relation_residual = 0.0;  // B3 - B1 R_k(D)
  std::vector<std::pair<int, int>> eigen_counts;  // (dim ker(D - cos a), dim ker(M - e^{ia}))
};

/// Nullity identities for brake-involutive M = N P^{-1} N P.
inline BrakeSplit split_nullity_brake(const BrakeSymmetry& brake, const Mat& p, int k) {
  const SymplecticSpace& space = brake.space();
  SymplecticMatrix checked(space, p);
  if (k < 1) fail(ErrorKind::InvalidArgument, "k must be positive");
  ProductSpace x(space);
  const Mat pp = brake.plus_plus();
  const Mat pm = brake.plus_minus();
  const Mat m = brake.reflect(p);
  const Index d = space.dim();
  BrakeSplit out;

  auto nz = [&](const Mat& mat, Complex z) { return nullities(space, mat, x.graph_scalar(z)); };

  {
    Nullities l = nullities(space, m, pp);
    Nullities r1 = nullities(space, p, pp);
    Nullities r2 = nullities(space, p, pm);
    out.reflect = {"nu_{U+xU+}(NP^-1NP)", l.nu, {r1.nu, r2.nu}, l.nu_tilde, {r1.nu_tilde, r2.nu_tilde}};
  }
  {
    Nullities l = nullities(space, matrix_power(m, k), pp);
    Nullities r0 = nullities(space, m, pp);
    out.power = {"nu_{U+xU+}(M^k)", l.nu, {r0.nu}, l.nu_tilde, {r0.nu_tilde}};
    for (int j = 1; j < k; ++j) {
      Nullities r = nz(m, std::polar(1.0, kPi * j / k));
      out.power.rhs.push_back(r.nu);
      out.power.rhs_tilde.push_back(r.nu_tilde);
    }
  }
  {
    Nullities l = nullities(space, p * matrix_power(m, k), pp);
    Nullities r0 = nullities(space, p, pp);
    out.odd = {"nu_{U+xU+}(PM^k)", l.nu, {r0.nu}, l.nu_tilde, {r0.nu_tilde}};
    for (int j = 1; j <= k; ++j) {
      Nullities r = nz(m, std::polar(1.0, 2.0 * kPi * j / (2 * k + 1)));
      out.odd.rhs.push_back(r.nu);
      out.odd.rhs_tilde.push_back(r.nu_tilde);
    }
  }
  {
    // S = I: V+- = U+-, blocks of M: U+ ⊕ U- -> U+ ⊕ U-.
    Mat kk = brake.involution() * p.inverse() * brake.involution() * p;
    Blocks b = brake.blocks(p);  // adapted order U-, U+: B maps U+ -> U-, C maps U- -> U+
    int lhs = kernel_dim(kk - identity(d), space.tol().rank, std::max(1.0, op_norm(kk)));
    double pscale = std::max(1.0, op_norm(brake.to_adapted(p)));
    int ker_c = kernel_dim(b.c, space.tol().rank, pscale);
    int ker_b = kernel_dim(b.b, space.tol().rank, pscale);
    out.kernel = {"dim ker(NP^-1NP - I)", lhs, {ker_c, ker_b}, lhs, {ker_c, ker_b}};
  }
  {
    Blocks mb = brake.blocks(m);
    const Index n = mb.a.rows();
    for (int j = 1; j < k; ++j) {
      double alpha = kPi * j / k;
      Complex l = std::polar(1.0, alpha);
      Mat n_mat = brake.involution();
      Mat lhs = brake.to_adapted((identity(d) - m * n_mat / l) * (m - l * identity(d)));
      Mat expect = Mat::Zero(d, d);
      expect.topLeftCorner(n, n) = -2.0 * kImag * std::sin(alpha) * identity(n);
      expect.topRightCorner(n, n) = 2.0 * mb.b;
      expect.bottomRightCorner(n, n) = 2.0 * (mb.d - std::cos(alpha) * identity(n));
      out.triangular_residual =
          std::max(out.triangular_residual, (lhs - expect).norm() / std::max(1.0, expect.norm()));
      out.eigen_counts.push_back({kernel_dim(mb.d - std::cos(alpha) * identity(n), space.tol().rank, std::max(1.0, op_norm(mb.d))),
                                  kernel_dim(m - l * identity(d), space.tol().rank, std::max(1.0, op_norm(m)))});
    }
    Blocks pb = brake.blocks(p);
    Blocks p3 = brake.blocks(p * matrix_power(m, k));
    Mat rel = pb.b * cheb::r_matrix(mb.d, k);
    out.r_relation_residual = (p3.b - rel).norm() / std::max(1.0, p3.b.norm());
  }
  for (const NullitySplit* s : {&out.reflect, &out.power, &out.odd, &out.kernel}) {
    if (!s->holds()) {
      std::ostringstream os;
      os << s->identity << ": " << s->lhs << " != " << std::accumulate(s->rhs.begin(), s->rhs.end(), 0);
      fail(ErrorKind::IdentityViolated, os.str());
    }
  }
  for (auto [a, b] : out.eigen_counts)
    if (a != b) fail(ErrorKind::IdentityViolated, "dim ker(D - cos a) != dim ker(M - e^{ia})");
  return out;
}

// ---- index identities -----------------------------------------------------------

/// i_1(gamma^k) = sum over k-th roots z of i_z(gamma), gamma^k the pointwise power.
inline VerdictReport verify_bott(const SymplecticSpace& space, const SymplecticPath& gamma, int k,
                                 const IndexOptions& opt = {}) {
  int lhs = iz(space, power(gamma, k), 1.0, opt);
  std::vector<int> rhs;
  for (int j = 0; j < k; ++j) rhs.push_back(iz(space, gamma, root_of_unity(j, k), opt));
  return verdict("bott:i_1(gamma^k)=sum_z i_z(gamma)", lhs, rhs, space);
}

/// i_1(gamma, k, A) = sum_z i_z(gamma, 1, A), where i_z(gamma, k, A) = i_{z A^k}(gamma~).
inline VerdictReport verify_bott_iterate(const SymplecticSpace& space, const SymplecticPath& gamma, int k,
                                         const Mat& a, const IndexOptions& opt = {}) {
  ProductSpace x(space);
  SymplecticPath it = a_iterate(space, a, k, gamma);
  int lhs = index_v(space, it, x.graph(matrix_power(a, k)), opt);
  std::vector<int> rhs;
  for (int j = 0; j < k; ++j) rhs.push_back(index_v(space, gamma, x.graph(root_of_unity(j, k) * a), opt));
  return verdict("a-iteration:i_1(gamma,k,A)=sum_z i_z(gamma,1,A)", lhs, rhs, space);
}

/// nu_1(gamma, k, A) = sum_z nu_z(gamma, 1, A).
inline VerdictReport verify_bott_iterate_nullity(const SymplecticSpace& space, const SymplecticPath& gamma, int k,
                                                 const Mat& a) {
  ProductSpace x(space);
  SymplecticPath it = a_iterate(space, a, k, gamma);
  int lhs = nullities(space, it(it.end()), x.graph(matrix_power(a, k))).nu;
  std::vector<int> rhs;
  for (int j = 0; j < k; ++j) rhs.push_back(nullities(space, gamma(gamma.end()), x.graph(root_of_unity(j, k) * a)).nu);
  return verdict("a-iteration:nu_1(gamma,k,A)=sum_z nu_z(gamma,1,A)", lhs, rhs, space);
}

/// Canonical path in P_1 from I to M: t -> exp(t S') exp(t L'), where
/// M = exp(S) U is the polar decomposition in the normalized space, L the
/// principal logarithm of U, and S', L' their pull-backs.
inline SymplecticPath reference_path(const SymplecticSpace& space, const Mat& m) {
  SymplecticMatrix checked(space, m);
  Normalization norm = normalize_space(space);
  PolarDecomposition pd = polar_decompose(norm.space, norm.conjugate(m));
  Mat l = unitary_log(pd.u);
  Mat s = norm.unconjugate(pd.s);
  Mat lg = norm.unconjugate(l);
  return product(exp_path(s, 0.0, 1.0), exp_path(lg, 0.0, 1.0));
}

/// i_1(gamma~_k) - k i_1(gamma) for gamma in P_tau, gamma~ the k-th I-iteration.
inline int delta_from_path(const SymplecticSpace& space, const SymplecticPath& gamma, int k,
                           const IndexOptions& opt = {}) {
  SymplecticPath it = a_iterate(space, identity(space.dim()), k, gamma);
  return iz(space, it, 1.0, opt) - k * iz(space, gamma, 1.0, opt);
}

inline int delta_k(const SymplecticSpace& space, const Mat& m, int k, const IndexOptions& opt = {}) {
  return delta_from_path(space, reference_path(space, m), k, opt);
}

/// i_1(gamma,k,A) - k i_1(gamma,1,A) = delta_k(A^{-1} gamma(tau)) - delta_k(A^{-1}).
inline VerdictReport verify_delta_relation(const SymplecticSpace& space, const SymplecticPath& gamma, int k,
                                           const Mat& a, const IndexOptions& opt = {}) {
  ProductSpace x(space);
  SymplecticPath it = a_iterate(space, a, k, gamma);
  int ik = index_v(space, it, x.graph(matrix_power(a, k)), opt);
  int i1 = index_v(space, gamma, x.graph(a), opt);
  Mat a_inv = a.inverse();
  int d1 = delta_k(space, a_inv * gamma(gamma.end()), k, opt);
  int d0 = delta_k(space, a_inv, k, opt);
  return verdict("a-iteration:i_1(gamma,k,A)-k*i_1(gamma,1,A)=delta_k(P)-delta_k(A^-1)", ik - k * i1, {d1, -d0}, space);
}

/// i_S(N gamma^{-1} N gamma) = i_{V+xU+}(gamma) + i_{V-xU-}(gamma).
inline VerdictReport verify_brake2(const BrakeSymmetry& brake, const BrakeTwist& twist, const SymplecticPath& gamma,
                                   const IndexOptions& opt = {}) {
  const SymplecticSpace& space = brake.space();
  ProductSpace x(space);
  int lhs = index_v(space, brake_square(brake, gamma), x.graph(twist.s), opt);
  int r1 = index_v(space, gamma, x.product(twist.v_plus, brake.u_plus()), opt);
  int r2 = index_v(space, gamma, x.product(twist.v_minus, brake.u_minus()), opt);
  return verdict("brake2:i_S(Ng^-1Ng)=i_{V+xU+}(g)+i_{V-xU-}(g)", lhs, {r1, r2}, space);
}

/// i_S(gamma^(2)) = i_{V+xU+}(gamma) + i_{V-xU-}(gamma), gamma in P_tau.
inline VerdictReport verify_brake2_iterate(const BrakeSymmetry& brake, const BrakeTwist& twist,
                                           const SymplecticPath& gamma, const IndexOptions& opt = {}) {
  const SymplecticSpace& space = brake.space();
  ProductSpace x(space);
  int lhs = index_v(space, brake_iterate(brake, 2, gamma), x.graph(twist.s), opt);
  int r1 = index_v(space, gamma, x.product(twist.v_plus, brake.u_plus()), opt);
  int r2 = index_v(space, gamma, x.product(twist.v_minus, brake.u_minus()), opt);
  return verdict("brake2:i_S(g^(2))=i_{V+xU+}(g)+i_{V-xU-}(g)", lhs, {r1, r2}, space);
}

/// MN(K - S) = NM - MNS has blocks [[0, 2B], [-2C, 0]] (V+ ⊕ V- -> U+ ⊕ U-) and
/// dim ker(K - S) = dim ker C + dim ker B, with K = N M^{-1} N M.
struct TwistKernel {
  double block_residual = 0.0;
  int ker = 0;
  int ker_c = 0;
  int ker_b = 0;
};

inline TwistKernel twist_kernel(const BrakeSymmetry& brake, const BrakeTwist& twist, const Mat& m) {
  const SymplecticSpace& space = brake.space();
  const Mat& n = brake.involution();
  Mat k = n * m.inverse() * n * m;
  Mat lhs = m * n * (k - twist.s);
  Mat rhs = n * m - m * n * twist.s;
  Mat from = hstack(twist.v_plus, twist.v_minus);
  Mat to = hstack(brake.u_plus(), brake.u_minus());
  Mat mb = to.inverse() * m * from;
  Mat eb = to.inverse() * lhs * from;
  const Index h = space.half_dim();
  Mat b = mb.topRightCorner(h, h);
  Mat c = mb.bottomLeftCorner(h, h);
  Mat expect = Mat::Zero(2 * h, 2 * h);
  expect.topRightCorner(h, h) = 2.0 * b;
  expect.bottomLeftCorner(h, h) = -2.0 * c;
  TwistKernel out;
  double scale = std::max(1.0, expect.norm());
  out.block_residual = std::max((lhs - rhs).norm(), (eb - expect).norm()) / scale;
  out.ker = kernel_dim(k - twist.s, space.tol().rank, std::max({1.0, op_norm(k), op_norm(twist.s)}));
  double mscale = std::max(1.0, op_norm(mb));
  out.ker_c = kernel_dim(c, space.tol().rank, mscale);
  out.ker_b = kernel_dim(b, space.tol().rank, mscale);
  return out;
}

enum class BrakeIdentity { Reflect, Power, Odd, Iterate2, IIterate, Iterate2k1 };

inline const char* to_string(BrakeIdentity id) {
  switch (id) {
    case BrakeIdentity::Reflect: return "brake-k:i_{U+xU+}(Ng1^-1Ng1)=i_{U+xU+}(g1)+i_{U+xU-}(g1)";
    case BrakeIdentity::Power: return "brake-k:i_{U+xU+}(g^k)=i_{U+xU+}(g)+sum_j i_{e^{ij pi/k}}(g)";
    case BrakeIdentity::Odd: return "brake-k:i_{U+xU+}(g1 g^k)=i_{U+xU+}(g1)+sum_j i_{e^{2ij pi/(2k+1)}}(g)";
    case BrakeIdentity::Iterate2: return "brake-k:i_{U+xU+}(g^(2))=i_{U+xU+}(g)+i_{U+xU-}(g)";
    case BrakeIdentity::IIterate: return "brake-k:i_{U+xU+}(g~)=i_{U+xU+}(g)+sum_j i_{e^{ij pi/k}}(g)";
    case BrakeIdentity::Iterate2k1: return "brake-k:i_{U+xU+}(g^(2k+1))=i_{U+xU+}(g)+sum_j i_{e^{2ij pi/(2k+1)}}(g^(2))";
  }
  return "brake-k";
}

/// Brake iteration identities. For Reflect, Power and Odd the input is gamma1
/// and gamma = N gamma1^{-1} N gamma1 is built internally; for IIterate the
/// input is gamma1 in P_tau and the identity is applied to gamma = N gamma1^{-1} N gamma1
/// (which satisfies (N gamma(tau))^2 = I); for Iterate2 and Iterate2k1 the
/// input is a path in P_tau.
inline VerdictReport verify_brake_k(const BrakeSymmetry& brake, BrakeIdentity id, const SymplecticPath& input, int k,
                                    const IndexOptions& opt = {}) {
  const SymplecticSpace& space = brake.space();
  ProductSpace x(space);
  const Mat pp = brake.plus_plus();
  const Mat pm = brake.plus_minus();
  auto i_pp = [&](const SymplecticPath& g) { return index_v(space, g, pp, opt); };
  auto i_pm = [&](const SymplecticPath& g) { return index_v(space, g, pm, opt); };
  int lhs = 0;
  std::vector<int> rhs;
  switch (id) {
    case BrakeIdentity::Reflect: {
      lhs = i_pp(brake_square(brake, input));
      rhs = {i_pp(input), i_pm(input)};
      break;
    }
    case BrakeIdentity::Power: {
      SymplecticPath g = brake_square(brake, input);
      lhs = i_pp(power(g, k));
      rhs = {i_pp(g)};
      for (int j = 1; j < k; ++j) rhs.push_back(iz(space, g, std::polar(1.0, kPi * j / k), opt));
      break;
    }
    case BrakeIdentity::Odd: {
      SymplecticPath g = brake_square(brake, input);
      lhs = i_pp(product(input, power(g, k)));
      rhs = {i_pp(input)};
      for (int j = 1; j <= k; ++j) rhs.push_back(iz(space, g, std::polar(1.0, 2.0 * kPi * j / (2 * k + 1)), opt));
      break;
    }
    case BrakeIdentity::Iterate2: {
      lhs = i_pp(brake_iterate(brake, 2, input));
      rhs = {i_pp(input), i_pm(input)};
      break;
    }
    case BrakeIdentity::IIterate: {
      SymplecticPath g = brake_square(brake, input);
      lhs = i_pp(a_iterate(space, identity(space.dim()), k, g));
      rhs = {i_pp(g)};
      for (int j = 1; j < k; ++j) rhs.push_back(iz(space, g, std::polar(1.0, kPi * j / k), opt));
      break;
    }
    case BrakeIdentity::Iterate2k1: {
      lhs = i_pp(brake_iterate(brake, 2 * k + 1, input));
      rhs = {i_pp(input)};
      SymplecticPath g2 = brake_iterate(brake, 2, input);
      for (int j = 1; j <= k; ++j) rhs.push_back(iz(space, g2, std::polar(1.0, 2.0 * kPi * j / (2 * k + 1)), opt));
      break;
    }
  }
  VerdictReport v = verdict(to_string(id), lhs, rhs, space);
  return v;
}

}  // namespace maslov
