#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "maslov/linalg.hpp"
#include "maslov/path.hpp"
#include "maslov/space.hpp"

namespace maslov {

/// X = H × H with J~ = (-J) ⊕ J, so omega~((x1,x2),(y1,y2)) = -omega(x1,y1) + omega(x2,y2).
class ProductSpace {
 public:
  explicit ProductSpace(const SymplecticSpace& base)
      : base_(base), space_(SymplecticSpace::make(block_diag(-base.structure(), base.structure()), base.tol())) {}

  const SymplecticSpace& base() const { return base_; }
  const SymplecticSpace& space() const { return space_; }
  Index base_dim() const { return base_.dim(); }

  /// Gr(M) = {(x, Mx)} as the frame [I; M].
  Mat graph(const Mat& m) const {
    if (m.rows() != base_.dim() || m.cols() != base_.dim())
      fail(ErrorKind::SpaceMismatch, "matrix size does not match the space");
    return vstack(identity(base_.dim()), m);
  }
  Mat graph_scalar(Complex z) const { return graph(z * identity(base_.dim())); }

  /// lambda × mu for frames of subspaces of H.
  Mat product(const Mat& lambda, const Mat& mu) const {
    if (lambda.rows() != base_.dim() || mu.rows() != base_.dim())
      fail(ErrorKind::SpaceMismatch, "frames do not belong to the base space");
    return block_diag(lambda, mu);
  }

 private:
  SymplecticSpace base_;
  SymplecticSpace space_;
};

/// A differentiable path of Lagrangian frames on [begin, end].
class LagrangianPath {
 public:
  using JetFn = std::function<Jet(double)>;

  LagrangianPath(JetFn jet, double a, double b, Index rows, Index cols)
      : jet_(std::move(jet)), a_(a), b_(b), rows_(rows), cols_(cols) {}

  Mat frame(double t) const { return jet_(t).value; }
  Jet jet(double t) const { return jet_(t); }
  double begin() const { return a_; }
  double end() const { return b_; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

 private:
  JetFn jet_;
  double a_;
  double b_;
  Index rows_;
  Index cols_;
};

inline LagrangianPath constant_lagrangian(const Mat& f, double a, double b) {
  Mat copy = f;
  return LagrangianPath([copy](double) { return Jet{copy, Mat::Zero(copy.rows(), copy.cols())}; }, a, b, f.rows(),
                        f.cols());
}

/// t -> gamma(t) F.
inline LagrangianPath acting(const SymplecticPath& gamma, const Mat& f) {
  if (f.rows() != gamma.dim()) fail(ErrorKind::SpaceMismatch, "frame does not match the path");
  NodePtr node = gamma.node();
  Mat copy = f;
  return LagrangianPath(
      [node, copy](double t) {
        Jet j = node->jet(t);
        return Jet{j.value * copy, j.derivative * copy};
      },
      gamma.begin(), gamma.end(), f.rows(), f.cols());
}

/// t -> Gr(gamma(t)) = [I; gamma(t)] in the product space.
inline LagrangianPath graph_path(const SymplecticPath& gamma) {
  NodePtr node = gamma.node();
  const Index d = gamma.dim();
  return LagrangianPath(
      [node, d](double t) {
        Jet j = node->jet(t);
        return Jet{vstack(identity(d), j.value), vstack(Mat::Zero(d, d), j.derivative)};
      },
      gamma.begin(), gamma.end(), 2 * d, d);
}

/// Pointwise direct sum lambda1(t) ⊕ lambda2(t) in H1 × H2.
inline LagrangianPath direct_sum(const LagrangianPath& first, const LagrangianPath& second) {
  return LagrangianPath(
      [first, second](double t) {
        Jet x = first.jet(t);
        Jet y = second.jet(t);
        return Jet{block_diag(x.value, y.value), block_diag(x.derivative, y.derivative)};
      },
      std::max(first.begin(), second.begin()), std::min(first.end(), second.end()), first.rows() + second.rows(),
      first.cols() + second.cols());
}

/// t -> lambda(a + b - t).
inline LagrangianPath reverse(const LagrangianPath& path) {
  const double s = path.begin() + path.end();
  return LagrangianPath(
      [path, s](double t) {
        Jet j = path.jet(s - t);
        return Jet{j.value, -j.derivative};
      },
      path.begin(), path.end(), path.rows(), path.cols());
}

inline LagrangianPath restrict(const LagrangianPath& path, double a, double b) {
  return LagrangianPath([path](double t) { return path.jet(t); }, a, b, path.rows(), path.cols());
}

}  // namespace maslov
