#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "maslov/lagrangian_path.hpp"
#include "maslov/linalg.hpp"
#include "maslov/path.hpp"
#include "maslov/polar.hpp"
#include "maslov/space.hpp"

namespace maslov {

/// Index convention used by every computation in this library.
///
/// Each Lagrangian of the normalized space is the graph of a unitary
/// U: H+ -> H-. For a pair (lambda, mu) put W = U_lambda^* U_mu; then
/// dim ker(W - I) = dim(lambda ∩ mu). The index counts eigenvalues of W(t)
/// passing the gauge point exp(-i eps) counter-clockwise, minus those passing
/// clockwise. With this choice a positive path picks up dim(lambda(t) ∩ mu)
/// at every crossing t in (a, b]: a crossing at t = a contributes -m-, an
/// interior crossing m+ - m-, a crossing at t = b contributes m+.
inline constexpr const char* kConvention = "souriau-gauge(-eps):arrival";

struct IndexOptions {
  int initial_steps = 48;
  int max_depth = 40;
  /// ||W(t2) W(t1)^* - I||_F bound for accepting a step.
  double step_bound = 0.5;
  /// Largest eigenangle displacement allowed by the matching.
  double match_bound = 0.6;
  /// Grid doublings tried before GaugeUnstable.
  int refinements = 3;
  bool keep_trace = false;
  // crossing-form oracle
  int scan_points = 600;
  double crossing_threshold = 1e-7;
  double signature_band = 1e-6;
};

struct CrossingRecord {
  double time = 0.0;
  Mat intersection;
  Mat form;
  Signature signature;
  int contribution = 0;
};

struct Passage {
  double t_lo = 0.0;
  double t_hi = 0.0;
  int sign = 0;
};

struct TraceSample {
  double t = 0.0;
  std::vector<double> angles;
};

struct IndexReport {
  int index = 0;
  std::string method;
  std::vector<CrossingRecord> crossings;
  std::vector<Passage> passages;
  int depth = 0;
  double epsilon = 0.0;
  int samples = 0;
  int nullity_begin = 0;
  int nullity_end = 0;
  std::string convention = kConvention;
  std::vector<TraceSample> trace;
};

/// Lagrangian -> unitary H+ -> H- in the orthonormal bases of a normalized copy of the space.
class SouriauChart {
 public:
  explicit SouriauChart(const SymplecticSpace& space) : norm_(normalize_space(space)), identity_(space.is_normalized()) {
    if (!norm_.space.has_lagrangians()) fail(ErrorKind::NoLagrangians, "n+ != n-: the space has no Lagrangian subspaces");
  }

  Mat unitary(const Mat& frame) const {
    Mat q = orthonormal_frame(identity_ ? frame : norm_.map_frame(frame));
    Mat fp = norm_.space.plus_basis().adjoint() * q;
    Mat fm = norm_.space.minus_basis().adjoint() * q;
    // U = fm fp^{-1}
    return fp.transpose().partialPivLu().solve(fm.transpose()).transpose();
  }

  /// U_lambda^* U_mu.
  Mat relative(const Mat& lambda, const Mat& mu) const { return unitary(lambda).adjoint() * unitary(mu); }

  const Normalization& normalization() const { return norm_; }

 private:
  Normalization norm_;
  bool identity_;
};

namespace detail {

struct WindingSample {
  double t;
  Mat w;
  std::vector<double> angles;
};

struct WindingStep {
  std::size_t left;
  std::size_t right;
  int shift;
};

inline std::pair<int, double> best_cyclic_shift(const std::vector<double>& a, const std::vector<double>& b) {
  const int n = static_cast<int>(a.size());
  int best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s) {
    double cost = 0.0;
    for (int i = 0; i < n; ++i)
      cost = std::max(cost, std::abs(wrap_angle(b[static_cast<std::size_t>((i + s) % n)] - a[static_cast<std::size_t>(i)])));
    if (cost < best_cost) {
      best_cost = cost;
      best = s;
    }
  }
  return {best, best_cost};
}

/// Signed passages of one eigenangle moving from t1 to t2 through gauge g.
inline int passage(double theta1, double theta2, double gauge) {
  double phi1 = wrap_angle(theta1 - gauge);
  double phi2 = phi1 + wrap_angle(theta2 - theta1);
  if (phi1 < 0 && phi2 >= 0) return 1;
  if (phi1 >= 0 && phi2 < 0) return -1;
  return 0;
}

class WindingEngine {
 public:
  WindingEngine(const SouriauChart& chart, const LagrangianPath& lambda, const LagrangianPath& mu,
                const IndexOptions& opt)
      : chart_(chart), lambda_(lambda), mu_(mu), opt_(opt) {}

  std::size_t sample(double t) {
    WindingSample s{t, chart_.relative(lambda_.frame(t), mu_.frame(t)), {}};
    s.angles = unitary_angles(s.w);
    samples_.push_back(std::move(s));
    return samples_.size() - 1;
  }

  void run(double a, double b, int steps) {
    samples_.clear();
    steps_.clear();
    depth_ = 0;
    std::vector<std::size_t> grid;
    for (int i = 0; i <= steps; ++i) grid.push_back(sample(i == steps ? b : a + (b - a) * i / steps));
    for (int i = 0; i < steps; ++i) refine(grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(i + 1)], 0);
  }

  int count(double gauge, std::vector<Passage>* out = nullptr) const {
    int total = 0;
    for (const auto& st : steps_) {
      const auto& l = samples_[st.left];
      const auto& r = samples_[st.right];
      const int n = static_cast<int>(l.angles.size());
      int local = 0;
      for (int i = 0; i < n; ++i)
        local += passage(l.angles[static_cast<std::size_t>(i)], r.angles[static_cast<std::size_t>((i + st.shift) % n)], gauge);
      if (local != 0 && out) out->push_back({l.t, r.t, local});
      total += local;
    }
    return total;
  }

  int depth() const { return depth_; }
  std::size_t sample_count() const { return samples_.size(); }
  const std::vector<WindingSample>& samples() const { return samples_; }

 private:
  void refine(std::size_t left, std::size_t right, int depth) {
    // Iterative bisection; each sample is evaluated once so adjacent steps share endpoints exactly.
    struct Item {
      std::size_t l, r;
      int d;
    };
    std::vector<Item> stack{{left, right, depth}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      depth_ = std::max(depth_, it.d);
      const Mat& wl = samples_[it.l].w;
      const Mat& wr = samples_[it.r].w;
      double motion = (wr * wl.adjoint() - identity(wl.rows())).norm();
      auto [shift, cost] = best_cyclic_shift(samples_[it.l].angles, samples_[it.r].angles);
      if (motion < opt_.step_bound && cost < opt_.match_bound) {
        steps_.push_back({it.l, it.r, shift});
        continue;
      }
      if (it.d >= opt_.max_depth) {
        std::ostringstream os;
        os << "no admissible step near t = " << samples_[it.l].t << " after " << opt_.max_depth << " bisections";
        fail(ErrorKind::SubdivisionLimit, os.str());
      }
      double tm = 0.5 * (samples_[it.l].t + samples_[it.r].t);
      std::size_t m = sample(tm);
      // push right half first so steps come out in time order
      stack.push_back({m, it.r, it.d + 1});
      stack.push_back({it.l, m, it.d + 1});
    }
  }

  const SouriauChart& chart_;
  const LagrangianPath& lambda_;
  const LagrangianPath& mu_;
  IndexOptions opt_;
  std::vector<WindingSample> samples_;
  std::vector<WindingStep> steps_;
  int depth_ = 0;
};

/// Smallest |angle| among the angles that do not belong to the kernel.
inline double smallest_nonzero_angle(std::vector<double> angles, int nullity, double* largest_zero) {
  std::sort(angles.begin(), angles.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  *largest_zero = nullity > 0 ? std::abs(angles[static_cast<std::size_t>(nullity - 1)]) : 0.0;
  if (static_cast<std::size_t>(nullity) >= angles.size()) return kPi;
  return std::abs(angles[static_cast<std::size_t>(nullity)]);
}

inline void check_same_space(const SymplecticSpace& space, const LagrangianPath& lambda, const LagrangianPath& mu) {
  if (lambda.rows() != space.dim() || mu.rows() != space.dim())
    fail(ErrorKind::SpaceMismatch, "Lagrangian paths do not live in the given space");
  if (lambda.cols() != space.half_dim() || mu.cols() != space.half_dim())
    fail(ErrorKind::NotLagrangian, "Lagrangian frames must have n columns");
}

}  // namespace detail

/// dim(lambda ∩ mu) by the shared rank rule.
inline int intersection_nullity(const SymplecticSpace& space, const Mat& lambda, const Mat& mu) {
  return intersection_dim(lambda, mu, space.tol().rank);
}

/// Maslov index of (lambda(t), mu(t)) over [a, b] by gauge winding of W(t).
inline IndexReport maslov_pairs(const SymplecticSpace& space, const LagrangianPath& lambda, const LagrangianPath& mu,
                                double a, double b, const IndexOptions& opt = {}) {
  detail::check_same_space(space, lambda, mu);
  if (!(b >= a)) fail(ErrorKind::InvalidArgument, "interval must satisfy a <= b");
  SouriauChart chart(space);
  IndexReport report;
  report.method = "winding";
  for (double t : {a, b}) {
    LagrangianFrame check_l(space, lambda.frame(t));
    LagrangianFrame check_m(space, mu.frame(t));
  }
  report.nullity_begin = intersection_nullity(space, lambda.frame(a), mu.frame(a));
  report.nullity_end = intersection_nullity(space, lambda.frame(b), mu.frame(b));
  if (a == b) return report;

  std::vector<double> ang_a = unitary_angles(chart.relative(lambda.frame(a), mu.frame(a)));
  std::vector<double> ang_b = unitary_angles(chart.relative(lambda.frame(b), mu.frame(b)));
  double zero_a = 0.0;
  double zero_b = 0.0;
  double gap = std::min(detail::smallest_nonzero_angle(ang_a, report.nullity_begin, &zero_a),
                        detail::smallest_nonzero_angle(ang_b, report.nullity_end, &zero_b));
  double eps = std::min(1e-3, 0.5 * gap);
  if (std::max(zero_a, zero_b) > 0.25 * eps) {
    std::ostringstream os;
    os << "endpoint eigenangles do not separate from the kernel (gap " << gap << ")";
    fail(ErrorKind::GaugeUnstable, os.str());
  }
  report.epsilon = eps;

  detail::WindingEngine engine(chart, lambda, mu, opt);
  int steps = std::max(1, opt.initial_steps);
  for (int attempt = 0;; ++attempt) {
    engine.run(a, b, steps);
    int c1 = engine.count(-eps);
    int c2 = engine.count(-0.5 * eps);
    if (c1 == c2) {
      report.index = c1;
      engine.count(-eps, &report.passages);
      break;
    }
    if (attempt >= opt.refinements) {
      std::ostringstream os;
      os << "index differs between gauge " << eps << " and " << eps / 2 << " (" << c1 << " vs " << c2 << ")";
      fail(ErrorKind::GaugeUnstable, os.str());
    }
    steps *= 2;
  }
  report.depth = engine.depth();
  report.samples = static_cast<int>(engine.sample_count());
  if (opt.keep_trace) {
    for (const auto& s : engine.samples()) report.trace.push_back({s.t, s.angles});
    std::sort(report.trace.begin(), report.trace.end(), [](const TraceSample& x, const TraceSample& y) { return x.t < y.t; });
  }
  return report;
}

/// Hermitian crossing form of lambda at t0 in the coordinates of the frame
/// lambda(t0), computed with the curve y(s) in lambda(s), y(s) - y in mu'.
inline Mat crossing_form(const SymplecticSpace& space, const LagrangianPath& lambda, double t0, const Mat& complement) {
  Jet j = lambda.jet(t0);
  const Mat& f = j.value;
  if (f.rows() != space.dim() || complement.rows() != space.dim())
    fail(ErrorKind::SpaceMismatch, "frames do not belong to the space");
  LagrangianFrame check(space, complement);
  Mat basis = hstack(f, complement);
  if (numerical_rank(basis, space.tol().rank).rank != space.dim())
    fail(ErrorKind::NotComplement, "complement does not span H together with lambda(t0)");
  if (!j.derivative.allFinite()) fail(ErrorKind::DerivativeUnavailable, "path derivative is not finite");
  // F(s) = F(t0) G(s) + mu' H(s); y(s) = F(s) G(s)^{-1} b, so y'(t0) = (F' - F G') b.
  Mat coeff = basis.partialPivLu().solve(j.derivative);
  Mat g_dot = coeff.topRows(f.cols());
  Mat y_dot = j.derivative - f * g_dot;
  Mat q = -(f.adjoint() * space.structure() * y_dot);
  return (q + q.adjoint()) / 2.0;
}

namespace detail {

inline Mat orth_columns(const Mat& f) { return orthonormal_frame(f); }

inline double pair_distance(const LagrangianPath& lambda, const LagrangianPath& mu, double t) {
  Mat s = hstack(orth_columns(lambda.frame(t)), orth_columns(mu.frame(t)));
  Eigen::JacobiSVD<Mat> svd(s);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline double golden_minimum(const LagrangianPath& lambda, const LagrangianPath& mu, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = pair_distance(lambda, mu, x1);
  double f2 = pair_distance(lambda, mu, x2);
  for (int it = 0; it < 90 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = pair_distance(lambda, mu, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = pair_distance(lambda, mu, x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

/// Crossing data of the pair at t0: basis of lambda ∩ mu and the relative form q_lambda - q_mu on it.
inline CrossingRecord crossing_record(const SymplecticSpace& space, const LagrangianPath& lambda,
                                      const LagrangianPath& mu, double t0, const IndexOptions& opt) {
  Jet jl = lambda.jet(t0);
  Jet jm = mu.jet(t0);
  const Index n = jl.value.cols();
  Mat stacked = hstack(jl.value, -jm.value);
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const RealVec& sv = svd.singularValues();
  int dim = 0;
  double cut = 1e-6 * sv(0);
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= cut) ++dim;
  dim += static_cast<int>(stacked.cols() - sv.size());
  Mat v = svd.matrixV().rightCols(dim);
  Mat ca = v.topRows(n);
  Mat cb = v.bottomRows(n);
  Mat ql = -(jl.value.adjoint() * space.structure() * jl.derivative);
  Mat qm = -(jm.value.adjoint() * space.structure() * jm.derivative);
  Mat form = ca.adjoint() * ql * ca - cb.adjoint() * qm * cb;
  CrossingRecord rec;
  rec.time = t0;
  rec.intersection = jl.value * ca;
  rec.form = (form + form.adjoint()) / 2.0;
  double scale = std::max(1.0, ql.norm() + qm.norm());
  rec.signature = signature(rec.form, opt.signature_band * scale);
  return rec;
}

}  // namespace detail

/// Independent oracle: locate crossings by scanning the smallest singular
/// value of [lambda(t) mu(t)], then sum crossing-form signatures with the
/// endpoint rule of kConvention. Requires isolated, nondegenerate crossings.
inline IndexReport maslov_pairs_crossingform(const SymplecticSpace& space, const LagrangianPath& lambda,
                                             const LagrangianPath& mu, double a, double b,
                                             const IndexOptions& opt = {}) {
  detail::check_same_space(space, lambda, mu);
  if (!(b >= a)) fail(ErrorKind::InvalidArgument, "interval must satisfy a <= b");
  IndexReport report;
  report.method = "crossing-form";
  report.nullity_begin = intersection_nullity(space, lambda.frame(a), mu.frame(a));
  report.nullity_end = intersection_nullity(space, lambda.frame(b), mu.frame(b));
  if (a == b) return report;

  const int m = std::max(8, opt.scan_points);
  std::vector<double> ts(static_cast<std::size_t>(m + 1));
  std::vector<double> ds(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    ts[static_cast<std::size_t>(i)] = i == m ? b : a + (b - a) * i / m;
    ds[static_cast<std::size_t>(i)] = detail::pair_distance(lambda, mu, ts[static_cast<std::size_t>(i)]);
  }
  const double thr = opt.crossing_threshold;
  for (int i = 0; i < m; ++i) {
    if (ds[static_cast<std::size_t>(i)] < 1e-6 && ds[static_cast<std::size_t>(i + 1)] < 1e-6) {
      std::ostringstream os;
      os << "pair stays intersecting on [" << ts[static_cast<std::size_t>(i)] << ", " << ts[static_cast<std::size_t>(i + 1)] << "]";
      fail(ErrorKind::NonIsolatedCrossing, os.str());
    }
  }
  std::vector<double> times;
  auto add_time = [&](double t) {
    for (double s : times)
      if (std::abs(s - t) <= 1e-6 * (b - a)) return;
    times.push_back(t);
  };
  if (ds.front() < thr) add_time(a);
  if (ds.back() < thr) add_time(b);
  for (int i = 0; i <= m; ++i) {
    double d = ds[static_cast<std::size_t>(i)];
    double left = i > 0 ? ds[static_cast<std::size_t>(i - 1)] : std::numeric_limits<double>::infinity();
    double right = i < m ? ds[static_cast<std::size_t>(i + 1)] : std::numeric_limits<double>::infinity();
    if (!(d <= left && d <= right)) continue;
    double lo = ts[static_cast<std::size_t>(std::max(0, i - 1))];
    double hi = ts[static_cast<std::size_t>(std::min(m, i + 1))];
    double t = detail::golden_minimum(lambda, mu, lo, hi);
    double dt = detail::pair_distance(lambda, mu, t);
    if (dt >= thr) continue;
    if (t - a <= 1e-9 * (b - a) && ds.front() < thr) continue;
    if (b - t <= 1e-9 * (b - a) && ds.back() < thr) continue;
    add_time(t);
  }
  std::sort(times.begin(), times.end());
  for (double t : times) {
    CrossingRecord rec = detail::crossing_record(space, lambda, mu, t, opt);
    if (rec.signature.zero > 0) {
      std::ostringstream os;
      os << "crossing form at t = " << t << " has a kernel of dimension " << rec.signature.zero;
      fail(ErrorKind::DegenerateCrossing, os.str());
    }
    if (t == a)
      rec.contribution = -rec.signature.negative;
    else if (t == b)
      rec.contribution = rec.signature.positive;
    else
      rec.contribution = rec.signature.positive - rec.signature.negative;
    report.index += rec.contribution;
    report.crossings.push_back(std::move(rec));
  }
  report.samples = m + 1;
  return report;
}

// ---- graph indices --------------------------------------------------------

/// i_V(gamma) = Mas{Gr(gamma), V} over the domain of gamma.
inline IndexReport graph_index(const SymplecticSpace& space, const SymplecticPath& gamma, const Mat& v,
                               const IndexOptions& opt = {}) {
  if (gamma.dim() != space.dim()) fail(ErrorKind::SpaceMismatch, "path does not live in the space");
  ProductSpace x(space);
  LagrangianFrame check(x.space(), v);
  return maslov_pairs(x.space(), graph_path(gamma), constant_lagrangian(v, gamma.begin(), gamma.end()), gamma.begin(),
                      gamma.end(), opt);
}

inline IndexReport graph_index_crossingform(const SymplecticSpace& space, const SymplecticPath& gamma, const Mat& v,
                                            const IndexOptions& opt = {}) {
  ProductSpace x(space);
  LagrangianFrame check(x.space(), v);
  return maslov_pairs_crossingform(x.space(), graph_path(gamma), constant_lagrangian(v, gamma.begin(), gamma.end()),
                                   gamma.begin(), gamma.end(), opt);
}

inline int index_v(const SymplecticSpace& space, const SymplecticPath& gamma, const Mat& v, const IndexOptions& opt = {}) {
  return graph_index(space, gamma, v, opt).index;
}

/// i_z(gamma) = i_{Gr(zI)}(gamma).
inline int iz(const SymplecticSpace& space, const SymplecticPath& gamma, Complex z, const IndexOptions& opt = {}) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "z must lie on the unit circle");
  return index_v(space, gamma, ProductSpace(space).graph_scalar(z), opt);
}

struct Nullities {
  int nu = 0;
  int nu_tilde = 0;
};

/// nu_V(M) = dim(Gr(M) ∩ V), nu~_V(M) = dim X / (Gr(M) + V).
inline Nullities nullities(const SymplecticSpace& space, const Mat& m, const Mat& v) {
  ProductSpace x(space);
  Mat gr = x.graph(m);
  if (v.rows() != x.space().dim()) fail(ErrorKind::SpaceMismatch, "V does not live in H × H");
  double tol = space.tol().rank;
  Mat qg = orthonormal_frame(gr);
  Mat qv = orthonormal_frame(v);
  int r = numerical_rank(hstack(qg, qv), tol).rank;
  Nullities out;
  out.nu = static_cast<int>(qg.cols() + qv.cols()) - r;
  out.nu_tilde = static_cast<int>(x.space().dim()) - r;
  if (out.nu > out.nu_tilde) fail(ErrorKind::IdentityViolated, "nullity exceeds co-nullity");
  if (qv.cols() == space.dim() && out.nu != out.nu_tilde)
    fail(ErrorKind::IdentityViolated, "nullity and co-nullity differ for a Lagrangian V");
  return out;
}

inline int nu_z(const SymplecticSpace& space, const Mat& m, Complex z) {
  return nullities(space, m, ProductSpace(space).graph_scalar(z)).nu;
}

struct IndexVsN {
  int direct = 0;
  int right = 0;
  int left = 0;
};

/// i_N(gamma) three ways: against Gr(N), as i_1(gamma N^{-1}) and as i_1(N^{-1} gamma).
inline IndexVsN index_vs_N(const SymplecticSpace& space, const SymplecticPath& gamma, const Mat& n,
                           const IndexOptions& opt = {}) {
  SymplecticMatrix checked(space, n);
  ProductSpace x(space);
  Mat n_inv = n.inverse();
  IndexVsN out;
  out.direct = index_v(space, gamma, x.graph(n), opt);
  out.right = index_v(space, right_multiply(gamma, n_inv), x.graph(identity(space.dim())), opt);
  out.left = index_v(space, left_multiply(n_inv, gamma), x.graph(identity(space.dim())), opt);
  if (out.direct != out.right || out.direct != out.left) {
    std::ostringstream os;
    os << "i_N computed three ways disagrees: " << out.direct << ", " << out.right << ", " << out.left;
    fail(ErrorKind::IdentityMismatch, os.str());
  }
  return out;
}

// ---- deformation by e^{Js} --------------------------------------------------

struct PushReport {
  double s0 = 0.0;
  int before = 0;   // i_V(gamma)
  int after = 0;    // i_V(e^{J s0} gamma)
  int nu_begin = 0; // nu_V(gamma(a))
  int nu_end = 0;   // nu_V(gamma(b))
  /// Nullity swept by the deformation: nothing for s0 > 0, nu(a) - nu(b) for s0 < 0.
  int swept() const { return s0 < 0.0 ? nu_begin - nu_end : 0; }
};

/// Deform gamma to e^{J s0} gamma. |s0| is halved from |s_max| until
/// s -> e^{Js} gamma(a) and s -> e^{Js} gamma(b) on [-|s0|, |s0|] meet V at
/// s = 0 only, so that the boundary of the homotopy square carries nothing
/// but the endpoint nullities.
inline PushReport push_index(const SymplecticSpace& space, const SymplecticPath& gamma, const Mat& v, double s_max,
                             const IndexOptions& opt = {}) {
  if (s_max == 0.0) fail(ErrorKind::InvalidArgument, "push length must be nonzero");
  PushReport out;
  const Mat& j = space.structure();
  Mat ma = gamma(gamma.begin());
  Mat mb = gamma(gamma.end());
  out.nu_begin = nullities(space, ma, v).nu;
  out.nu_end = nullities(space, mb, v).nu;
  double s = std::abs(s_max);
  for (int i = 0;; ++i) {
    if (i > 30) fail(ErrorKind::SubdivisionLimit, "no crossing-free push length found");
    bool clean = index_v(space, right_multiply(exp_path(j, -s, s), ma), v, opt) == out.nu_begin &&
                 index_v(space, right_multiply(exp_path(j, -s, s), mb), v, opt) == out.nu_end &&
                 nullities(space, Mat((j * s).exp()) * ma, v).nu == 0 &&
                 nullities(space, Mat((-j * s).exp()) * ma, v).nu == 0 &&
                 nullities(space, Mat((j * s).exp()) * mb, v).nu == 0 &&
                 nullities(space, Mat((-j * s).exp()) * mb, v).nu == 0;
    if (clean) break;
    s /= 2.0;
  }
  out.s0 = s_max < 0.0 ? -s : s;
  out.before = index_v(space, gamma, v, opt);
  out.after = index_v(space, left_multiply(Mat((j * out.s0).exp()), gamma), v, opt);
  return out;
}

// ---- positivity and winding -----------------------------------------------

struct PositivityReport {
  bool positive = false;
  double margin = 0.0;
  double hermitian_residual = 0.0;
};

/// -J gamma'(t) gamma(t)^{-1} selfadjoint positive definite at the grid points.
inline PositivityReport is_positive_path(const SymplecticSpace& space, const SymplecticPath& gamma, int grid = 64) {
  PositivityReport out;
  out.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    double t = i == grid ? gamma.end() : gamma.begin() + (gamma.end() - gamma.begin()) * i / grid;
    Jet j = gamma.jet(t);
    if (!j.derivative.allFinite()) fail(ErrorKind::DerivativeUnavailable, "path derivative is not finite");
    Mat p = -(space.structure() * j.derivative * j.value.inverse());
    double scale = std::max(1e-300, p.norm());
    out.hermitian_residual = std::max(out.hermitian_residual, (p - p.adjoint()).norm() / scale);
    out.margin = std::min(out.margin, min_hermitian_eigenvalue(p));
  }
  out.positive = out.margin > 0.0 && out.hermitian_residual <= 1e-8;
  return out;
}

struct WindingPair {
  int plus = 0;
  int minus = 0;
};

/// Winding numbers of det U11(t) and det U22(t) for a closed loop, using
/// the polar factor in a normalized copy of the space.
inline WindingPair winding_pair(const SymplecticSpace& space, const SymplecticPath& loop, int max_depth = 40) {
  Mat ma = loop(loop.begin());
  Mat mb = loop(loop.end());
  if ((ma - mb).norm() > 1e-9 * std::max(1.0, ma.norm())) fail(ErrorKind::NotALoop, "path does not close up");
  Normalization norm = normalize_space(space);
  const bool same = space.is_normalized();
  auto phases = [&](double t) {
    Mat m = loop(t);
    PolarDecomposition pd = polar_decompose(norm.space, same ? m : norm.conjugate(m));
    Complex dp = pd.u11.size() ? pd.u11.determinant() : Complex(1.0);
    Complex dm = pd.u22.size() ? pd.u22.determinant() : Complex(1.0);
    return std::pair<double, double>{std::arg(dp), std::arg(dm)};
  };
  double total_p = 0.0;
  double total_m = 0.0;
  struct Item {
    double t1, t2;
    std::pair<double, double> p1, p2;
    int d;
  };
  const int steps = 32;
  std::vector<Item> stack;
  std::vector<std::pair<double, std::pair<double, double>>> grid;
  for (int i = 0; i <= steps; ++i) {
    double t = i == steps ? loop.end() : loop.begin() + (loop.end() - loop.begin()) * i / steps;
    grid.push_back({t, phases(t)});
  }
  for (int i = steps - 1; i >= 0; --i)
    stack.push_back({grid[static_cast<std::size_t>(i)].first, grid[static_cast<std::size_t>(i + 1)].first,
                     grid[static_cast<std::size_t>(i)].second, grid[static_cast<std::size_t>(i + 1)].second, 0});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    double dp = wrap_angle(it.p2.first - it.p1.first);
    double dm = wrap_angle(it.p2.second - it.p1.second);
    if (std::abs(dp) < kPi / 2 && std::abs(dm) < kPi / 2) {
      total_p += dp;
      total_m += dm;
      continue;
    }
    if (it.d >= max_depth) fail(ErrorKind::SubdivisionLimit, "phase of det U jumps under bisection");
    double tm = 0.5 * (it.t1 + it.t2);
    auto pm = phases(tm);
    stack.push_back({tm, it.t2, pm, it.p2, it.d + 1});
    stack.push_back({it.t1, tm, it.p1, pm, it.d + 1});
  }
  return {static_cast<int>(std::lround(total_p / (2 * kPi))), static_cast<int>(std::lround(total_m / (2 * kPi)))};
}

}  // namespace maslov
