#pragma once

#include <optional>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/chebyshev.hpp"
#include "maslov/lagrangian_path.hpp"
#include "maslov/linalg.hpp"
#include "maslov/random.hpp"
#include "maslov/space.hpp"

namespace maslov {

/// 2x2 block split of a 2n x 2n matrix along U- ⊕ U+ (first n coordinates, then n).
struct Blocks {
  Mat a;
  Mat b;
  Mat c;
  Mat d;
};

inline Blocks split_blocks(const Mat& m) {
  const Index n = m.rows() / 2;
  return {m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n), m.bottomRightCorner(n, n)};
}

inline Mat join_blocks(const Blocks& b) {
  const Index n = b.a.rows();
  Mat m(2 * n, 2 * n);
  m << b.a, b.b, b.c, b.d;
  return m;
}

/// Antisymplectic involution N (N^2 = I, N* J N = -J) with its Lagrangian
/// eigenspaces U+- = ker(N -+ I). Adapted coordinates use the basis
/// [U- U+]; there N = (-I) ⊕ I and J = [[0, -K*], [K, 0]].
class BrakeSymmetry {
 public:
  static BrakeSymmetry make(const SymplecticSpace& space, const Mat& n) {
    const Index d = space.dim();
    if (n.rows() != d || n.cols() != d) fail(ErrorKind::SpaceMismatch, "N does not match the space");
    double scale = std::max(1.0, n.norm());
    if ((n * n - identity(d)).norm() > space.tol().structure * scale * scale * 10.0)
      fail(ErrorKind::NotBrakeInvolution, "N^2 != I");
    if ((n.adjoint() * space.structure() * n + space.structure()).norm() >
        space.tol().structure * scale * scale * std::max(1.0, space.structure().norm()) * 10.0)
      fail(ErrorKind::NotBrakeInvolution, "N* J N != -J");
    BrakeSymmetry out(space, n);
    out.u_minus_ = null_space(n + identity(d), space.tol().rank, scale);
    out.u_plus_ = null_space(n - identity(d), space.tol().rank, scale);
    if (out.u_minus_.cols() != space.half_dim() || out.u_plus_.cols() != space.half_dim())
      fail(ErrorKind::NotBrakeInvolution, "eigenspaces of N are not of dimension n");
    if (!is_lagrangian(space, out.u_minus_) || !is_lagrangian(space, out.u_plus_))
      fail(ErrorKind::NotBrakeInvolution, "eigenspaces of N are not Lagrangian");
    out.basis_ = hstack(out.u_minus_, out.u_plus_);
    out.basis_inv_ = out.basis_.inverse();
    Mat jp = out.basis_.adjoint() * space.structure() * out.basis_;
    out.k_ = jp.bottomLeftCorner(space.half_dim(), space.half_dim());
    return out;
  }

  const SymplecticSpace& space() const { return space_; }
  const Mat& involution() const { return n_; }
  const Mat& u_plus() const { return u_plus_; }
  const Mat& u_minus() const { return u_minus_; }
  const Mat& k_map() const { return k_; }
  Index half_dim() const { return space_.half_dim(); }

  /// Change of coordinates to [U- U+].
  Mat to_adapted(const Mat& m) const { return basis_inv_ * m * basis_; }
  Mat from_adapted(const Mat& m) const { return basis_ * m * basis_inv_; }
  Blocks blocks(const Mat& m) const { return split_blocks(to_adapted(m)); }

  /// Product Lagrangians of H × H.
  Mat plus_plus() const { return block_diag(u_plus_, u_plus_); }
  Mat plus_minus() const { return block_diag(u_plus_, u_minus_); }

  /// N P^{-1} N P.
  Mat reflect(const Mat& p) const { return n_ * p.inverse() * n_ * p; }

 private:
  BrakeSymmetry(SymplecticSpace space, Mat n) : space_(std::move(space)), n_(std::move(n)) {}

  SymplecticSpace space_;
  Mat n_;
  Mat u_minus_;
  Mat u_plus_;
  Mat basis_;
  Mat basis_inv_;
  Mat k_;
};

/// S symplectic with (NS)^2 = I and V+- = ker(NS -+ I).
struct BrakeTwist {
  Mat s;
  Mat v_plus;
  Mat v_minus;
};

inline BrakeTwist make_twist(const BrakeSymmetry& brake, const Mat& s) {
  const SymplecticSpace& space = brake.space();
  SymplecticMatrix checked(space, s);
  Mat ns = brake.involution() * s;
  double scale = std::max(1.0, ns.norm());
  if ((ns * ns - identity(space.dim())).norm() > 1e-8 * scale * scale)
    fail(ErrorKind::NotBrakeInvolution, "(NS)^2 != I");
  BrakeTwist out{s, null_space(ns - identity(space.dim()), space.tol().rank, scale),
                 null_space(ns + identity(space.dim()), space.tol().rank, scale)};
  if (!is_lagrangian(space, out.v_plus) || !is_lagrangian(space, out.v_minus))
    fail(ErrorKind::NotBrakeInvolution, "eigenspaces of NS are not Lagrangian");
  return out;
}

/// Brake data in adapted coordinates: J = [[0, -K*], [K, 0]], N = (-I) ⊕ I.
/// The first `special` coordinate pairs (i, n + i) carry a diagonal K so that
/// exact rotations with prescribed eigenvalues can be planted there.
class BrakeModel {
 public:
  static BrakeModel random(Index n, Index special, Rng& rng) {
    if (special > n) fail(ErrorKind::InvalidArgument, "more special coordinates than n");
    Mat k = Mat::Zero(n, n);
    std::vector<double> c;
    for (Index i = 0; i < special; ++i) {
      c.push_back(rng.uniform(0.5, 2.0));
      k(i, i) = c.back();
    }
    const Index g = n - special;
    if (g > 0) {
      Mat kg = gaussian_matrix(g, g, rng);
      Eigen::JacobiSVD<Mat> svd(kg, Eigen::ComputeFullU | Eigen::ComputeFullV);
      RealVec s = svd.singularValues().cwiseMax(0.1);
      k.bottomRightCorner(g, g) = svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
    }
    return BrakeModel(n, k, c);
  }

  static BrakeModel from_k(const Mat& k) { return BrakeModel(k.rows(), k, {}); }

  const SymplecticSpace& space() const { return space_; }
  const BrakeSymmetry& brake() const { return brake_; }
  Index half_dim() const { return n_; }
  Index special() const { return static_cast<Index>(c_.size()); }

  /// exp(J D) with D = theta_i / c_i on the pair (i, n + i): a rotation by
  /// theta_i there, eigenvalues exp(+-i theta_i), and (N R)^2 = I.
  Mat rotation(const std::vector<double>& theta) const {
    Mat r = identity(2 * n_);
    for (std::size_t i = 0; i < theta.size() && i < c_.size(); ++i) {
      const Index p = static_cast<Index>(i);
      double cs = std::cos(theta[i]);
      double sn = std::sin(theta[i]);
      r(p, p) = cs;
      r(p, n_ + p) = -sn;
      r(n_ + p, p) = sn;
      r(n_ + p, n_ + p) = cs;
    }
    return r;
  }

  /// Generator of rotation(theta): exp of it is the rotation.
  Mat rotation_generator(const std::vector<double>& theta) const {
    Mat l = Mat::Zero(2 * n_, 2 * n_);
    for (std::size_t i = 0; i < theta.size() && i < c_.size(); ++i) {
      const Index p = static_cast<Index>(i);
      l(p, n_ + p) = -theta[i];
      l(n_ + p, p) = theta[i];
    }
    return l;
  }

  /// exp(J^{-1} H) with H Hermitian and supported on the generic coordinates.
  Mat generic_symplectic(Rng& rng, double scale = 0.6) const { return Mat(generic_generator(rng, scale)).exp(); }

  Mat generic_generator(Rng& rng, double scale = 0.6) const {
    const Index g = n_ - special();
    if (g == 0) return Mat::Zero(2 * n_, 2 * n_);
    std::vector<Index> idx;
    for (Index i = special(); i < n_; ++i) idx.push_back(i);
    for (Index i = special(); i < n_; ++i) idx.push_back(n_ + i);
    Mat hs = random_hermitian(static_cast<Index>(idx.size()), rng) * scale;
    Mat h = Mat::Zero(2 * n_, 2 * n_);
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) h(idx[r], idx[c]) = hs(static_cast<Index>(r), static_cast<Index>(c));
    return capped(space_.structure_inverse() * h, scale);
  }

  /// exp(J^{-1} [[0, H12], [H12*, 0]]): symplectic and commuting with N.
  Mat mixer(Rng& rng, double scale = 0.4) const { return Mat(mixer_generator(rng, scale)).exp(); }

  Mat mixer_generator(Rng& rng, double scale = 0.4) const {
    Mat h = Mat::Zero(2 * n_, 2 * n_);
    Mat h12 = gaussian_matrix(n_, n_, rng) * scale;
    h.topRightCorner(n_, n_) = h12;
    h.bottomLeftCorner(n_, n_) = h12.adjoint();
    return capped(space_.structure_inverse() * h, scale);
  }

  Mat random_symplectic(Rng& rng, double scale = 0.5) const {
    return maslov::random_symplectic(norm_, rng, scale);
  }

  /// S = N Q N Q^{-1} for random symplectic Q.
  BrakeTwist random_twist(Rng& rng) const {
    Mat q = random_symplectic(rng);
    return make_twist(brake_, brake_.involution() * q * brake_.involution() * q.inverse());
  }

  const Normalization& normalization() const { return norm_; }

 private:
  static Mat structure(Index n, const Mat& k) {
    Mat j = Mat::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = -k.adjoint();
    j.bottomLeftCorner(n, n) = k;
    return j;
  }
  static Mat involution(Index n) { return block_diag(-identity(n), identity(n)); }
  // J^{-1} amplifies by 1/sigma_min(K); rescale so that |L| <= 2 scale.
  static Mat capped(const Mat& l, double scale) {
    double norm = op_norm(l);
    return norm > 2.0 * scale ? Mat(l * (2.0 * scale / norm)) : l;
  }

  BrakeModel(Index n, const Mat& k, std::vector<double> c)
      : n_(n),
        c_(std::move(c)),
        space_(SymplecticSpace::make(structure(n, k))),
        brake_(BrakeSymmetry::make(space_, involution(n))),
        norm_(normalize_space(space_)) {}

  Index n_;
  std::vector<double> c_;
  SymplecticSpace space_;
  BrakeSymmetry brake_;
  Normalization norm_;
};

// ---- block algebra of brake-involutive matrices ----------------------------

struct BlockIdentityResiduals {
  double ka_dk = 0;   // K A - D* K
  double kb_bk = 0;   // K B - B* K*
  double kc_ck = 0;   // K* C - C* K
  double ab_bd = 0;   // A B - B D
  double ca_dc = 0;   // C A - D C
  double a2_bc = 0;   // A^2 - B C - I
  double d2_cb = 0;   // D^2 - C B - I
  double max() const { return std::max({ka_dk, kb_bk, kc_ck, ab_bd, ca_dc, a2_bc, d2_cb}); }
};

inline double involution_residual(const BrakeSymmetry& brake, const Mat& m) {
  Mat nm = brake.involution() * m;
  return (nm * nm - identity(m.rows())).norm() / std::max(1.0, nm.squaredNorm());
}

/// Block identities satisfied by M with (NM)^2 = I, in adapted coordinates.
inline BlockIdentityResiduals block_identities(const BrakeSymmetry& brake, const Mat& m) {
  Blocks b = brake.blocks(m);
  const Mat& k = brake.k_map();
  const Index n = b.a.rows();
  Mat i = identity(n);
  double s = std::max(1.0, b.a.norm() + b.b.norm() + b.c.norm() + b.d.norm());
  double s2 = s * s;
  BlockIdentityResiduals r;
  r.ka_dk = (k * b.a - b.d.adjoint() * k).norm() / (s * std::max(1.0, k.norm()));
  r.kb_bk = (k * b.b - b.b.adjoint() * k.adjoint()).norm() / (s * std::max(1.0, k.norm()));
  r.kc_ck = (k.adjoint() * b.c - b.c.adjoint() * k).norm() / (s * std::max(1.0, k.norm()));
  r.ab_bd = (b.a * b.b - b.b * b.d).norm() / s2;
  r.ca_dc = (b.c * b.a - b.d * b.c).norm() / s2;
  r.a2_bc = (b.a * b.a - b.b * b.c - i).norm() / s2;
  r.d2_cb = (b.d * b.d - b.c * b.b - i).norm() / s2;
  return r;
}

/// M^k = [[T_k(A), U_{k-1}(A) B], [C U_{k-1}(A), T_k(D)]] in adapted coordinates,
/// mapped back to the original coordinates. Checks against the direct power.
inline Mat cheb_power(const BrakeSymmetry& brake, const Mat& m, int k, double rel_tol = 1e-8) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "power must be positive");
  double inv = involution_residual(brake, m);
  if (inv > 1e-8) {
    std::ostringstream os;
    os << "(NM)^2 != I (residual " << inv << ")";
    fail(ErrorKind::NotBrakeInvolution, os.str());
  }
  BlockIdentityResiduals r = block_identities(brake, m);
  if (r.max() > 1e-7) {
    std::ostringstream os;
    os << "block identities violated (residual " << r.max() << ")";
    fail(ErrorKind::BlockIdentityViolated, os.str());
  }
  Blocks b = brake.blocks(m);
  Mat u = cheb::second_kind(b.a, k - 1);
  Blocks p{cheb::first_kind(b.a, k), u * b.b, b.c * u, cheb::first_kind(b.d, k)};
  Mat out = brake.from_adapted(join_blocks(p));
  Mat direct = Mat::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) direct = direct * m;
  if ((out - direct).norm() > rel_tol * std::max(1.0, direct.norm())) {
    std::ostringstream os;
    os << "Chebyshev power differs from M^" << k << " by " << (out - direct).norm() / std::max(1.0, direct.norm());
    fail(ErrorKind::BlockIdentityViolated, os.str());
  }
  return out;
}

}  // namespace maslov
