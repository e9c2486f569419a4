#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "maslov/types.hpp"

namespace maslov {

/// Deterministic random source. Everything random in the library is drawn
/// from one of these so a seed reproduces an instance exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::uint64_t next() { return engine_(); }

  Complex complex_normal() { return {normal() / std::sqrt(2.0), normal() / std::sqrt(2.0)}; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finaliser; used to derive per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Mat identity(Index n) { return Mat::Identity(n, n); }

inline double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

inline Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

inline Mat vstack(const Mat& top, const Mat& bottom) {
  Mat out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

inline Mat hstack(const Mat& left, const Mat& right) {
  Mat out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

inline Mat gaussian_matrix(Index rows, Index cols, Rng& rng) {
  Mat m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

inline Mat random_hermitian(Index n, Rng& rng) {
  Mat g = gaussian_matrix(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phases of
/// diag(R) folded back into Q.
inline Mat haar_unitary(Index n, Rng& rng) {
  Mat g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * identity(n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

/// Numerical rank with an ambiguity band. A singular value inside
/// (0.1 tau, 10 tau), tau = rel_tol * sigma_max, makes the rank undecidable
/// and raises RankAmbiguous instead of returning a guess.
struct RankInfo {
  int rank = 0;
  RealVec singular_values;
  double threshold = 0.0;
};

/// Rank with threshold rel_tol * max(sigma_max, scale). Pass the size of the
/// operands as `scale` when m is a difference such as M - zI, so that a
/// vanishing difference is not measured against its own rounding noise.
inline RankInfo numerical_rank(const Mat& m, double rel_tol, double scale = 0.0) {
  RankInfo info;
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<Mat> svd(m);
  info.singular_values = svd.singularValues();
  double smax = std::max(info.singular_values(0), scale);
  if (smax == 0.0) return info;
  info.threshold = rel_tol * smax;
  for (Index i = 0; i < info.singular_values.size(); ++i) {
    double s = info.singular_values(i);
    if (s > 0.1 * info.threshold && s < 10.0 * info.threshold) {
      std::ostringstream os;
      os << "singular value " << s << " within band of threshold " << info.threshold;
      fail(ErrorKind::RankAmbiguous, os.str());
    }
    if (s >= 10.0 * info.threshold) ++info.rank;
  }
  return info;
}

/// Orthonormal basis of the column span.
inline Mat orthonormal_basis(const Mat& f, double rel_tol) {
  if (f.cols() == 0) return Mat(f.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(f, Eigen::ComputeThinU);
  RankInfo info = numerical_rank(f, rel_tol);
  return svd.matrixU().leftCols(info.rank);
}

/// Orthonormal basis of the span of a frame known to have full column rank
/// (graph and Lagrangian frames). No rank decision is made, so large but
/// well-defined frames such as [I; M] with big M are handled exactly.
inline Mat orthonormal_frame(const Mat& f) {
  if (f.cols() == 0) return Mat(f.rows(), 0);
  Eigen::HouseholderQR<Mat> qr(f);
  return qr.householderQ() * Mat::Identity(f.rows(), f.cols());
}

/// Orthonormal basis of ker(m).
inline Mat null_space(const Mat& m, double rel_tol, double scale = 0.0) {
  const Index cols = m.cols();
  if (m.rows() == 0) return identity(cols);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  RankInfo info = numerical_rank(m, rel_tol, scale);
  return svd.matrixV().rightCols(cols - info.rank);
}

inline int kernel_dim(const Mat& m, double rel_tol, double scale = 0.0) {
  return static_cast<int>(m.cols()) - numerical_rank(m, rel_tol, scale).rank;
}

/// dim(span F ∩ span G) for full-rank frames, from the rank of the stacked
/// orthonormalised frames.
inline int intersection_dim(const Mat& f, const Mat& g, double rel_tol) {
  Mat qf = orthonormal_frame(f);
  Mat qg = orthonormal_frame(g);
  int r = numerical_rank(hstack(qf, qg), rel_tol).rank;
  return static_cast<int>(qf.cols() + qg.cols()) - r;
}

inline bool same_span(const Mat& f, const Mat& g, double rel_tol) {
  Mat qf = orthonormal_frame(f);
  Mat qg = orthonormal_frame(g);
  if (qf.cols() != qg.cols()) return false;
  return numerical_rank(hstack(qf, qg), rel_tol).rank == qf.cols();
}

/// f(H) for Hermitian H by spectral calculus.
inline Mat hermitian_function(const Mat& h, const std::function<double(double)>& f) {
  Mat sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  RealVec d = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline double min_hermitian_eigenvalue(const Mat& h) {
  Mat sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Principal logarithm of a unitary matrix (skew-Hermitian result). When an
/// eigenvalue sits within 1e-6 of -1 the spectrum is rotated first so the
/// branch cut is never straddled by a cluster.
inline Mat unitary_log(const Mat& u) {
  const Index n = u.rows();
  if (n == 0) return u;
  Eigen::ComplexSchur<Mat> schur(u);
  Mat z = schur.matrixU();
  Mat t = schur.matrixT();
  double shift = 0.0;
  for (Index i = 0; i < n; ++i)
    if (std::abs(t(i, i) + 1.0) < 1e-6) shift = 1e-6;
  Mat d = Mat::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    Complex lam = t(i, i) * std::exp(kImag * shift);
    d(i, i) = kImag * (std::arg(lam) - shift);
  }
  return z * d * z.adjoint();
}

/// Eigenvalue arguments of a (numerically) unitary matrix, sorted ascending in [-pi, pi).
inline std::vector<double> unitary_angles(const Mat& w) {
  Eigen::ComplexEigenSolver<Mat> es(w, false);
  std::vector<double> angles(static_cast<std::size_t>(w.rows()));
  for (Index i = 0; i < w.rows(); ++i) {
    double a = std::arg(es.eigenvalues()(i));
    if (a >= kPi) a -= 2 * kPi;
    angles[static_cast<std::size_t>(i)] = a;
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

/// Wrap an angle into [-pi, pi).
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  return a - kPi;
}

/// Signature (positive, zero, negative) of a Hermitian matrix; eigenvalues
/// with magnitude at most zero_band count as zero.
struct Signature {
  int positive = 0;
  int zero = 0;
  int negative = 0;
};

inline Signature signature(const Mat& h, double zero_band) {
  Signature sig;
  if (h.rows() == 0) return sig;
  Mat sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  const RealVec& ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= zero_band)
      ++sig.zero;
    else if (ev(i) > 0)
      ++sig.positive;
    else
      ++sig.negative;
  }
  return sig;
}

}  // namespace maslov
