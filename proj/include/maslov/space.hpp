#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "maslov/linalg.hpp"
#include "maslov/types.hpp"

namespace maslov {

/// A finite-dimensional complex symplectic space (C^{2n}, omega) with
/// omega(x, y) = <Jx, y>, J skew-adjoint and invertible.
class SymplecticSpace {
 public:
  /// Validates J: square, even size, J* = -J, smallest singular value above tolerance.
  static SymplecticSpace make(const Mat& j, Tolerances tol = {}) {
    if (j.rows() != j.cols()) fail(ErrorKind::InvalidArgument, "structure map must be square");
    if (j.rows() == 0 || j.rows() % 2 != 0) fail(ErrorKind::OddDimension, "dimension must be even and positive");
    const double scale = std::max(op_norm(j), 1e-300);
    if ((j.adjoint() + j).norm() > tol.structure * scale * std::sqrt(static_cast<double>(j.rows())))
      fail(ErrorKind::NotSkewAdjoint, "J* + J is not zero");
    Eigen::JacobiSVD<Mat> svd(j);
    const RealVec& s = svd.singularValues();
    if (s(s.size() - 1) <= tol.structure * scale) fail(ErrorKind::Singular, "J is not injective");
    return SymplecticSpace(j, tol);
  }

  /// J0 = diag(i I_n, -i I_n).
  static SymplecticSpace canonical(Index n, Tolerances tol = {}) {
    Mat j = Mat::Zero(2 * n, 2 * n);
    for (Index i = 0; i < n; ++i) {
      j(i, i) = kImag;
      j(n + i, n + i) = -kImag;
    }
    return make(j, tol);
  }

  Index dim() const { return j_.rows(); }
  Index half_dim() const { return j_.rows() / 2; }
  const Mat& structure() const { return j_; }
  const Mat& structure_inverse() const { return j_inv_; }
  const Tolerances& tol() const { return tol_; }
  SymplecticSpace with_tolerances(Tolerances tol) const { return SymplecticSpace(j_, tol); }

  /// omega(x, y) = <Jx, y> = (Jx)^* y.
  Complex omega(const Vec& x, const Vec& y) const { return (j_ * x).dot(y); }

  /// Gram matrix of omega between the columns of F and G: [omega(F_i, G_j)].
  Mat omega_matrix(const Mat& f, const Mat& g) const { return (j_ * f).adjoint() * g; }

  double symplectic_residual(const Mat& m) const {
    return (m.adjoint() * j_ * m - j_).norm() / j_.norm();
  }
  bool is_symplectic(const Mat& m) const {
    return m.rows() == dim() && m.cols() == dim() && symplectic_residual(m) <= tol_.symplectic * std::max(1.0, m.squaredNorm() / static_cast<double>(dim()));
  }
  bool in_algebra(const Mat& m) const {
    return (m.adjoint() * j_ + j_ * m).norm() <= tol_.structure * std::max(1.0, m.norm() * j_.norm());
  }
  bool is_normalized() const {
    return (j_ * j_ + identity(dim())).norm() <= tol_.structure * static_cast<double>(dim());
  }

  bool same_as(const SymplecticSpace& other) const {
    return dim() == other.dim() && (j_ - other.j_).norm() <= tol_.structure * std::max(1.0, j_.norm());
  }

 private:
  SymplecticSpace(Mat j, Tolerances tol) : j_(std::move(j)), tol_(tol) { j_inv_ = j_.inverse(); }

  Mat j_;
  Mat j_inv_;
  Tolerances tol_;
};

/// A space with J^2 = -I together with orthonormal bases of
/// H+ = ker(J - i) and H- = ker(J + i).
class NormalizedSpace {
 public:
  static NormalizedSpace from(const SymplecticSpace& space) {
    if (!space.is_normalized()) fail(ErrorKind::NotNormalized, "J^2 != -I");
    // -iJ is Hermitian with eigenvalues +1 on H+ and -1 on H-.
    Mat h = -kImag * space.structure();
    h = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const RealVec& ev = es.eigenvalues();
    Index n_minus = 0;
    for (Index i = 0; i < ev.size(); ++i) {
      if (std::abs(std::abs(ev(i)) - 1.0) > 1e-6) fail(ErrorKind::NotNormalized, "-iJ eigenvalue away from +-1");
      if (ev(i) < 0) ++n_minus;
    }
    const Index d = space.dim();
    NormalizedSpace out(space);
    out.minus_ = es.eigenvectors().leftCols(n_minus);
    out.plus_ = es.eigenvectors().rightCols(d - n_minus);
    return out;
  }

  const SymplecticSpace& base() const { return base_; }
  const Mat& plus_basis() const { return plus_; }
  const Mat& minus_basis() const { return minus_; }
  Index n_plus() const { return plus_.cols(); }
  Index n_minus() const { return minus_.cols(); }
  bool has_lagrangians() const { return n_plus() == n_minus(); }

  /// Unitary change of coordinates to H+ ⊕ H-.
  Mat splitting() const { return hstack(plus_, minus_); }

  /// Reference Lagrangian: graph of the identity H+ -> H- in the fixed bases.
  Mat reference_lagrangian() const {
    if (!has_lagrangians()) fail(ErrorKind::NoLagrangians, "n+ != n-");
    return plus_ + minus_;
  }

 private:
  explicit NormalizedSpace(SymplecticSpace base) : base_(std::move(base)) {}

  SymplecticSpace base_;
  Mat plus_;
  Mat minus_;
};

/// Result of normalising a space: J1 = (-J^2)^{-1/2} J and the symplectic
/// transfer map T = (-J^2)^{1/4}, with omega1(Tx, Ty) = omega(x, y).
struct Normalization {
  NormalizedSpace space;
  Mat transfer;
  Mat transfer_inverse;

  /// Sp(H, omega) -> Sp(H, omega1), M -> T M T^{-1}.
  Mat conjugate(const Mat& m) const { return transfer * m * transfer_inverse; }
  Mat unconjugate(const Mat& m) const { return transfer_inverse * m * transfer; }
  Mat map_frame(const Mat& f) const { return transfer * f; }
};

inline Normalization normalize_space(const SymplecticSpace& space) {
  const Mat& j = space.structure();
  // -J^2 = J* J is positive definite because J is injective.
  Mat minus_j2 = j.adjoint() * j;
  Eigen::SelfAdjointEigenSolver<Mat> es((minus_j2 + minus_j2.adjoint()) / 2.0);
  const RealVec& ev = es.eigenvalues();
  if (ev(0) <= space.tol().structure * ev(ev.size() - 1)) fail(ErrorKind::Singular, "-J^2 not positive definite");
  const Mat& v = es.eigenvectors();
  Mat inv_sqrt = v * ev.cwiseSqrt().cwiseInverse().asDiagonal() * v.adjoint();
  Mat quarter = v * ev.cwiseSqrt().cwiseSqrt().asDiagonal() * v.adjoint();
  Mat quarter_inv = v * ev.cwiseSqrt().cwiseSqrt().cwiseInverse().asDiagonal() * v.adjoint();
  Mat j1 = inv_sqrt * j;
  j1 = (j1 - j1.adjoint()) / 2.0;
  return Normalization{NormalizedSpace::from(SymplecticSpace::make(j1, space.tol())), quarter, quarter_inv};
}

/// M with M* J M = J.
class SymplecticMatrix {
 public:
  SymplecticMatrix(const SymplecticSpace& space, Mat m) : m_(std::move(m)) {
    if (m_.rows() != space.dim() || m_.cols() != space.dim())
      fail(ErrorKind::SpaceMismatch, "matrix size does not match the space");
    if (!space.is_symplectic(m_)) {
      std::ostringstream os;
      os << "residual " << space.symplectic_residual(m_);
      fail(ErrorKind::NotSymplectic, os.str());
    }
  }
  const Mat& matrix() const { return m_; }
  operator const Mat&() const { return m_; }

 private:
  Mat m_;
};

/// Element of sp(H): M* J + J M = 0.
class SpAlgebraElement {
 public:
  SpAlgebraElement(const SymplecticSpace& space, Mat m) : m_(std::move(m)) {
    if (!space.in_algebra(m_)) fail(ErrorKind::InvalidArgument, "matrix is not in sp(H)");
  }
  const Mat& matrix() const { return m_; }
  operator const Mat&() const { return m_; }

 private:
  Mat m_;
};

/// Frame (2n x n, full column rank) of a Lagrangian subspace. Frames are
/// only meaningful up to right multiplication by invertible n x n matrices.
class LagrangianFrame {
 public:
  LagrangianFrame(const SymplecticSpace& space, Mat f) : f_(std::move(f)) {
    if (f_.rows() != space.dim()) fail(ErrorKind::SpaceMismatch, "frame row count does not match the space");
    if (f_.cols() != space.half_dim()) fail(ErrorKind::NotLagrangian, "frame must have n columns");
    Eigen::JacobiSVD<Mat> svd(f_);
    const RealVec& s = svd.singularValues();
    if (s(s.size() - 1) <= space.tol().lagrangian * s(0)) fail(ErrorKind::NotLagrangian, "frame is rank deficient");
    Mat q = orthonormal_frame(f_);
    if (space.omega_matrix(q, q).norm() > space.tol().lagrangian * std::max(1.0, space.structure().norm()) * 10.0)
      fail(ErrorKind::NotLagrangian, "frame is not isotropic");
  }
  const Mat& matrix() const { return f_; }
  operator const Mat&() const { return f_; }

 private:
  Mat f_;
};

/// Frame of lambda^omega = { y : omega(x, y) = 0 for all x in span F }.
inline Mat annihilator(const SymplecticSpace& space, const Mat& f) {
  if (f.rows() != space.dim()) fail(ErrorKind::SpaceMismatch, "frame row count does not match the space");
  if (f.cols() > 0) {
    RankInfo info = numerical_rank(f, space.tol().rank);
    if (info.rank < f.cols()) fail(ErrorKind::RankDeficient, "frame columns are dependent");
  }
  // omega(F a, y) = -(F a)^* J y, so lambda^omega = ker(F^* J).
  return null_space(f.adjoint() * space.structure(), space.tol().rank);
}

inline bool is_lagrangian(const SymplecticSpace& space, const Mat& f) {
  if (f.cols() != space.half_dim()) return false;
  return same_span(f, annihilator(space, f), space.tol().rank);
}

struct PairIndex {
  int dim_cap = 0;
  int codim_sum = 0;
  int index = 0;
};

/// index(lambda, mu) = dim(lambda ∩ mu) - dim V / (lambda + mu); always 0
/// for a Lagrangian pair in finite dimension.
inline PairIndex pair_index(const SymplecticSpace& space, const Mat& lambda, const Mat& mu) {
  if (lambda.rows() != space.dim() || mu.rows() != space.dim())
    fail(ErrorKind::SpaceMismatch, "frames do not belong to the space");
  LagrangianFrame l(space, lambda);
  LagrangianFrame m(space, mu);
  Mat ql = orthonormal_frame(lambda);
  Mat qm = orthonormal_frame(mu);
  int r = numerical_rank(hstack(ql, qm), space.tol().rank).rank;
  PairIndex out;
  out.dim_cap = static_cast<int>(ql.cols() + qm.cols()) - r;
  out.codim_sum = static_cast<int>(space.dim()) - r;
  out.index = out.dim_cap - out.codim_sum;
  if (out.index != 0) fail(ErrorKind::IdentityViolated, "Lagrangian pair with nonzero Fredholm index");
  return out;
}

}  // namespace maslov
