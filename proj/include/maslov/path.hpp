#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/linalg.hpp"
#include "maslov/types.hpp"

namespace maslov {

/// Value and first derivative of a matrix path at one time.
struct Jet {
  Mat value;
  Mat derivative;
};

inline Mat matrix_power(const Mat& m, int k) {
  Mat out = identity(m.rows());
  Mat base = m;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

/// Node of a path expression tree. Nodes are immutable and shared.
class PathNode {
 public:
  virtual ~PathNode() = default;
  virtual Index dim() const = 0;
  virtual Jet jet(double t) const = 0;
  virtual Mat value(double t) const { return jet(t).value; }
  /// Largest interval on which the node is defined.
  virtual std::pair<double, double> domain() const {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
};

using NodePtr = std::shared_ptr<const PathNode>;

class ConstantNode final : public PathNode {
 public:
  explicit ConstantNode(Mat m) : m_(std::move(m)) {}
  Index dim() const override { return m_.rows(); }
  Jet jet(double) const override { return {m_, Mat::Zero(m_.rows(), m_.cols())}; }
  Mat value(double) const override { return m_; }
  const Mat& matrix() const { return m_; }

 private:
  Mat m_;
};

/// t -> exp((alpha t + beta) L).
class ExpNode final : public PathNode {
 public:
  ExpNode(Mat generator, double alpha, double beta) : l_(std::move(generator)), alpha_(alpha), beta_(beta) {}
  Index dim() const override { return l_.rows(); }
  Jet jet(double t) const override {
    Mat v = value(t);
    return {v, alpha_ * l_ * v};
  }
  Mat value(double t) const override { return Mat((alpha_ * t + beta_) * l_).exp(); }
  const Mat& generator() const { return l_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  Mat l_;
  double alpha_;
  double beta_;
};

class ProductNode final : public PathNode {
 public:
  ProductNode(NodePtr left, NodePtr right) : left_(std::move(left)), right_(std::move(right)) {
    if (left_->dim() != right_->dim()) fail(ErrorKind::SpaceMismatch, "product of paths of different size");
  }
  Index dim() const override { return left_->dim(); }
  Jet jet(double t) const override {
    Jet l = left_->jet(t);
    Jet r = right_->jet(t);
    return {l.value * r.value, l.derivative * r.value + l.value * r.derivative};
  }
  Mat value(double t) const override { return left_->value(t) * right_->value(t); }
  std::pair<double, double> domain() const override {
    auto a = left_->domain();
    auto b = right_->domain();
    return {std::max(a.first, b.first), std::min(a.second, b.second)};
  }
  const NodePtr& left() const { return left_; }
  const NodePtr& right() const { return right_; }

 private:
  NodePtr left_;
  NodePtr right_;
};

/// first on [., junction], second on [junction, .].
class ConcatNode final : public PathNode {
 public:
  ConcatNode(NodePtr first, NodePtr second, double junction, double tol)
      : first_(std::move(first)), second_(std::move(second)), junction_(junction) {
    if (first_->dim() != second_->dim()) fail(ErrorKind::SpaceMismatch, "concatenation of paths of different size");
    Mat l = first_->value(junction_);
    Mat r = second_->value(junction_);
    double mismatch = (l - r).norm() / std::max(1.0, l.norm());
    if (mismatch > tol) {
      std::ostringstream os;
      os << "paths disagree at junction " << junction_ << " (" << mismatch << ")";
      fail(ErrorKind::DiscontinuousJunction, os.str());
    }
  }
  Index dim() const override { return first_->dim(); }
  Jet jet(double t) const override { return t <= junction_ ? first_->jet(t) : second_->jet(t); }
  Mat value(double t) const override { return t <= junction_ ? first_->value(t) : second_->value(t); }
  std::pair<double, double> domain() const override { return {first_->domain().first, second_->domain().second}; }
  const NodePtr& first() const { return first_; }
  const NodePtr& second() const { return second_; }
  double junction() const { return junction_; }

 private:
  NodePtr first_;
  NodePtr second_;
  double junction_;
};

/// t -> child(a + b - t).
class ReverseNode final : public PathNode {
 public:
  ReverseNode(NodePtr child, double a, double b) : child_(std::move(child)), a_(a), b_(b) {}
  Index dim() const override { return child_->dim(); }
  Jet jet(double t) const override {
    Jet j = child_->jet(a_ + b_ - t);
    return {j.value, -j.derivative};
  }
  Mat value(double t) const override { return child_->value(a_ + b_ - t); }
  std::pair<double, double> domain() const override { return {a_, b_}; }
  const NodePtr& child() const { return child_; }
  double begin() const { return a_; }
  double end() const { return b_; }

 private:
  NodePtr child_;
  double a_;
  double b_;
};

/// t -> N child(t)^{-1} N.
class ConjugationNode final : public PathNode {
 public:
  ConjugationNode(Mat n, NodePtr child) : n_(std::move(n)), child_(std::move(child)) {}
  Index dim() const override { return child_->dim(); }
  Jet jet(double t) const override {
    Jet j = child_->jet(t);
    Mat inv = j.value.inverse();
    return {n_ * inv * n_, -(n_ * inv * j.derivative * inv * n_)};
  }
  Mat value(double t) const override { return n_ * child_->value(t).inverse() * n_; }
  std::pair<double, double> domain() const override { return child_->domain(); }
  const Mat& involution() const { return n_; }
  const NodePtr& child() const { return child_; }

 private:
  Mat n_;
  NodePtr child_;
};

/// Pointwise power t -> child(t)^k.
class PowerNode final : public PathNode {
 public:
  PowerNode(NodePtr child, int k) : child_(std::move(child)), k_(k) {
    if (k_ < 1) fail(ErrorKind::InvalidArgument, "power must be positive");
  }
  Index dim() const override { return child_->dim(); }
  Jet jet(double t) const override {
    Jet j = child_->jet(t);
    std::vector<Mat> powers(static_cast<std::size_t>(k_));
    powers[0] = identity(j.value.rows());
    for (int i = 1; i < k_; ++i) powers[static_cast<std::size_t>(i)] = powers[static_cast<std::size_t>(i - 1)] * j.value;
    Mat d = Mat::Zero(j.value.rows(), j.value.cols());
    for (int i = 0; i < k_; ++i)
      d += powers[static_cast<std::size_t>(i)] * j.derivative * powers[static_cast<std::size_t>(k_ - 1 - i)];
    return {powers[static_cast<std::size_t>(k_ - 1)] * j.value, d};
  }
  Mat value(double t) const override { return matrix_power(child_->value(t), k_); }
  std::pair<double, double> domain() const override { return child_->domain(); }
  const NodePtr& child() const { return child_; }
  int exponent() const { return k_; }

 private:
  NodePtr child_;
  int k_;
};

/// k-th A-iteration of a path on [0, tau]:
/// t -> A^j child(t - j tau) (A^{-1} child(tau))^j on [j tau, (j+1) tau].
class AIterateNode final : public PathNode {
 public:
  AIterateNode(Mat a, int k, double tau, NodePtr child, double tol)
      : a_(std::move(a)), k_(k), tau_(tau), child_(std::move(child)) {
    if (k_ < 1 || !(tau_ > 0)) fail(ErrorKind::InvalidArgument, "iteration needs k >= 1 and tau > 0");
    poincare_ = a_.inverse() * child_->value(tau_);
    a_pow_.push_back(identity(a_.rows()));
    p_pow_.push_back(identity(a_.rows()));
    for (int j = 1; j < k_; ++j) {
      a_pow_.push_back(a_pow_.back() * a_);
      p_pow_.push_back(p_pow_.back() * poincare_);
    }
    for (int j = 1; j < k_; ++j) {
      Mat left = a_pow_[idx(j - 1)] * child_->value(tau_) * p_pow_[idx(j - 1)];
      Mat right = a_pow_[idx(j)] * child_->value(0.0) * p_pow_[idx(j)];
      double mismatch = (left - right).norm() / std::max(1.0, left.norm());
      junction_mismatch_ = std::max(junction_mismatch_, mismatch);
      if (mismatch > tol) {
        std::ostringstream os;
        os << "A-iteration discontinuous at t = " << j * tau_ << " (" << mismatch << ")";
        fail(ErrorKind::DiscontinuousJunction, os.str());
      }
    }
  }
  Index dim() const override { return a_.rows(); }
  Jet jet(double t) const override {
    int j = segment(t);
    Jet c = child_->jet(t - j * tau_);
    return {a_pow_[idx(j)] * c.value * p_pow_[idx(j)], a_pow_[idx(j)] * c.derivative * p_pow_[idx(j)]};
  }
  Mat value(double t) const override {
    int j = segment(t);
    return a_pow_[idx(j)] * child_->value(t - j * tau_) * p_pow_[idx(j)];
  }
  std::pair<double, double> domain() const override { return {0.0, k_ * tau_}; }
  const Mat& poincare_map() const { return poincare_; }
  double junction_mismatch() const { return junction_mismatch_; }
  const Mat& matrix() const { return a_; }
  int iterations() const { return k_; }
  double period() const { return tau_; }
  const NodePtr& child() const { return child_; }

 private:
  static std::size_t idx(int j) { return static_cast<std::size_t>(j); }
  int segment(double t) const { return std::clamp(static_cast<int>(std::floor(t / tau_)), 0, k_ - 1); }

  Mat a_;
  int k_;
  double tau_;
  NodePtr child_;
  Mat poincare_;
  std::vector<Mat> a_pow_;
  std::vector<Mat> p_pow_;
  double junction_mismatch_ = 0.0;
};

/// k-th N-brake iteration of a path on [0, tau], with
/// gamma(2 tau) = N gamma(tau)^{-1} N gamma(tau):
///   [2j tau, (2j+1) tau]:   gamma(t - 2j tau) gamma(2tau)^j
///   [(2j-1) tau, 2j tau]:   N gamma(2j tau - t) N gamma(2tau)^j
class BrakeIterateNode final : public PathNode {
 public:
  BrakeIterateNode(Mat n, int k, double tau, NodePtr child, double tol)
      : n_(std::move(n)), k_(k), tau_(tau), child_(std::move(child)) {
    if (k_ < 1 || !(tau_ > 0)) fail(ErrorKind::InvalidArgument, "iteration needs k >= 1 and tau > 0");
    Mat g = child_->value(tau_);
    period_map_ = n_ * g.inverse() * n_ * g;
    q_pow_.push_back(identity(g.rows()));
    for (int j = 1; j <= k_ / 2 + 1; ++j) q_pow_.push_back(q_pow_.back() * period_map_);
    for (int m = 1; m < k_; ++m) {
      double t = m * tau_;
      Mat left = eval_segment(m - 1, t);
      Mat right = eval_segment(m, t);
      double mismatch = (left - right).norm() / std::max(1.0, left.norm());
      junction_mismatch_ = std::max(junction_mismatch_, mismatch);
      if (mismatch > tol) {
        std::ostringstream os;
        os << "brake iteration discontinuous at t = " << t << " (" << mismatch << ")";
        fail(ErrorKind::DiscontinuousJunction, os.str());
      }
    }
  }
  Index dim() const override { return n_.rows(); }
  Jet jet(double t) const override {
    int m = segment(t);
    if (m % 2 == 0) {
      int j = m / 2;
      Jet c = child_->jet(t - 2 * j * tau_);
      return {c.value * q_pow_[idx(j)], c.derivative * q_pow_[idx(j)]};
    }
    int j = (m + 1) / 2;
    Jet c = child_->jet(2 * j * tau_ - t);
    return {n_ * c.value * n_ * q_pow_[idx(j)], -(n_ * c.derivative * n_ * q_pow_[idx(j)])};
  }
  Mat value(double t) const override { return eval_segment(segment(t), t); }
  std::pair<double, double> domain() const override { return {0.0, k_ * tau_}; }
  /// gamma(2 tau) = N gamma(tau)^{-1} N gamma(tau).
  const Mat& period_map() const { return period_map_; }
  double junction_mismatch() const { return junction_mismatch_; }
  const Mat& involution() const { return n_; }
  int iterations() const { return k_; }
  double period() const { return tau_; }
  const NodePtr& child() const { return child_; }

 private:
  static std::size_t idx(int j) { return static_cast<std::size_t>(j); }
  int segment(double t) const { return std::clamp(static_cast<int>(std::floor(t / tau_)), 0, k_ - 1); }
  Mat eval_segment(int m, double t) const {
    if (m % 2 == 0) {
      int j = m / 2;
      return child_->value(t - 2 * j * tau_) * q_pow_[idx(j)];
    }
    int j = (m + 1) / 2;
    return n_ * child_->value(2 * j * tau_ - t) * n_ * q_pow_[idx(j)];
  }

  Mat n_;
  int k_;
  double tau_;
  NodePtr child_;
  Mat period_map_;
  std::vector<Mat> q_pow_;
  double junction_mismatch_ = 0.0;
};

/// Piecewise path through sampled matrices. With chart interpolation the
/// segment between M_i and M_{i+1} is M_i exp(s log(M_i^{-1} M_{i+1})), which
/// stays in Sp; otherwise entries are interpolated linearly. Derivatives are
/// symmetric finite differences with step (b - a) 1e-5.
class SampledNode final : public PathNode {
 public:
  SampledNode(std::vector<double> times, std::vector<Mat> matrices, bool chart)
      : times_(std::move(times)), mats_(std::move(matrices)), chart_(chart) {
    if (times_.size() < 2 || times_.size() != mats_.size())
      fail(ErrorKind::InvalidArgument, "sampled path needs at least two (time, matrix) pairs");
    for (std::size_t i = 1; i < times_.size(); ++i)
      if (!(times_[i] > times_[i - 1])) fail(ErrorKind::InvalidArgument, "sample times must increase");
    if (chart_)
      for (std::size_t i = 0; i + 1 < mats_.size(); ++i) logs_.push_back(Mat(mats_[i].inverse() * mats_[i + 1]).log());
    step_ = (times_.back() - times_.front()) * 1e-5;
  }
  Index dim() const override { return mats_.front().rows(); }
  Mat value(double t) const override {
    std::size_t i = segment(t);
    double s = (t - times_[i]) / (times_[i + 1] - times_[i]);
    if (chart_) return mats_[i] * Mat(s * logs_[i]).exp();
    return (1.0 - s) * mats_[i] + s * mats_[i + 1];
  }
  Jet jet(double t) const override {
    double lo = std::max(times_.front(), t - step_);
    double hi = std::min(times_.back(), t + step_);
    if (!(hi > lo)) fail(ErrorKind::DerivativeUnavailable, "finite-difference stencil is empty");
    return {value(t), (value(hi) - value(lo)) / (hi - lo)};
  }
  std::pair<double, double> domain() const override { return {times_.front(), times_.back()}; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<Mat>& matrices() const { return mats_; }
  bool chart() const { return chart_; }

 private:
  std::size_t segment(double t) const {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
    return std::min(i, times_.size() - 2);
  }

  std::vector<double> times_;
  std::vector<Mat> mats_;
  std::vector<Mat> logs_;
  bool chart_;
  double step_;
};

/// A path t -> M(t) in Sp(H) over [begin, end], backed by an expression tree.
class SymplecticPath {
 public:
  SymplecticPath(NodePtr node, double a, double b) : node_(std::move(node)), a_(a), b_(b) {
    if (!node_) fail(ErrorKind::InvalidArgument, "empty path");
    if (!(b_ >= a_)) fail(ErrorKind::InvalidArgument, "path domain must satisfy a <= b");
    auto d = node_->domain();
    double slack = 1e-12 * std::max(1.0, std::abs(a_) + std::abs(b_));
    if (a_ < d.first - slack || b_ > d.second + slack)
      fail(ErrorKind::InvalidArgument, "path domain exceeds the domain of its expression");
  }

  double begin() const { return a_; }
  double end() const { return b_; }
  Index dim() const { return node_->dim(); }
  const NodePtr& node() const { return node_; }

  Mat operator()(double t) const { return node_->value(t); }
  Jet jet(double t) const { return node_->jet(t); }

  SymplecticPath restricted(double a, double b) const { return SymplecticPath(node_, a, b); }

 private:
  NodePtr node_;
  double a_;
  double b_;
};

// ---- builders ------------------------------------------------------------

inline SymplecticPath constant_path(const Mat& m, double a, double b) {
  return SymplecticPath(std::make_shared<ConstantNode>(m), a, b);
}

/// t -> exp((alpha t + beta) L) on [a, b].
inline SymplecticPath exp_path(const Mat& generator, double a, double b, double alpha = 1.0, double beta = 0.0) {
  return SymplecticPath(std::make_shared<ExpNode>(generator, alpha, beta), a, b);
}

inline SymplecticPath product(const SymplecticPath& left, const SymplecticPath& right) {
  double a = std::max(left.begin(), right.begin());
  double b = std::min(left.end(), right.end());
  return SymplecticPath(std::make_shared<ProductNode>(left.node(), right.node()), a, b);
}

inline SymplecticPath left_multiply(const Mat& m, const SymplecticPath& path) {
  return SymplecticPath(std::make_shared<ProductNode>(std::make_shared<ConstantNode>(m), path.node()), path.begin(),
                        path.end());
}

inline SymplecticPath right_multiply(const SymplecticPath& path, const Mat& m) {
  return SymplecticPath(std::make_shared<ProductNode>(path.node(), std::make_shared<ConstantNode>(m)), path.begin(),
                        path.end());
}

inline SymplecticPath concat(const SymplecticPath& first, const SymplecticPath& second, double tol = 1e-9) {
  if (std::abs(first.end() - second.begin()) > 1e-12 * std::max(1.0, std::abs(first.end())))
    fail(ErrorKind::InvalidArgument, "concatenated domains do not meet");
  return SymplecticPath(std::make_shared<ConcatNode>(first.node(), second.node(), first.end(), tol), first.begin(),
                        second.end());
}

inline SymplecticPath reverse(const SymplecticPath& path) {
  return SymplecticPath(std::make_shared<ReverseNode>(path.node(), path.begin(), path.end()), path.begin(),
                        path.end());
}

/// t -> N path(t)^{-1} N.
inline SymplecticPath conjugation(const Mat& n, const SymplecticPath& path) {
  return SymplecticPath(std::make_shared<ConjugationNode>(n, path.node()), path.begin(), path.end());
}

inline SymplecticPath power(const SymplecticPath& path, int k) {
  return SymplecticPath(std::make_shared<PowerNode>(path.node(), k), path.begin(), path.end());
}

inline SymplecticPath sampled_path(std::vector<double> times, std::vector<Mat> matrices, bool chart = true) {
  double a = times.front();
  double b = times.back();
  return SymplecticPath(std::make_shared<SampledNode>(std::move(times), std::move(matrices), chart), a, b);
}

}  // namespace maslov
