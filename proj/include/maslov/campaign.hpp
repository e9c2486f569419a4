#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "maslov/brake.hpp"
#include "maslov/instances.hpp"
#include "maslov/iteration.hpp"
#include "maslov/maslov.hpp"
#include "maslov/serialize.hpp"

namespace maslov {

struct Range {
  int lo = 1;
  int hi = 1;
};

struct CampaignSettings {
  std::string suite = "all";
  int trials = 100;
  int first_trial = 0;
  std::uint64_t master_seed = 1;
  /// Overrides of the per-suite defaults for n and k.
  std::optional<Range> dims;
  std::optional<Range> k;
  Tolerances tol;
  unsigned threads = 0;  // 0: hardware concurrency, capped by MASLOV_ITER_THREADS
};

enum class TrialStatus { Pass, Mismatch, Numerical };

inline const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Pass: return "pass";
    case TrialStatus::Mismatch: return "mismatch";
    case TrialStatus::Numerical: return "numerical";
  }
  return "unknown";
}

struct TrialResult {
  std::string suite;
  int trial = 0;
  std::uint64_t seed = 0;
  TrialStatus status = TrialStatus::Pass;
  std::vector<VerdictReport> verdicts;
  std::string error;
};

struct CampaignReport {
  CampaignSettings settings;
  std::vector<TrialResult> results;
  int passed = 0;
  int mismatched = 0;
  int numerical = 0;
  int verdicts = 0;
  int verdicts_matched = 0;
  unsigned threads = 1;
  double elapsed = 0.0;

  int exit_code() const { return mismatched ? 1 : numerical ? 3 : 0; }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bott", "brake2", "brake-k", "nullity", "chebyshev", "convention"};
  return names;
}

inline bool valid_suite(const std::string& s) {
  return s == "all" || std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end();
}

/// Errors that signal a broken identity rather than numerical trouble.
inline bool is_identity_error(ErrorKind k) {
  return k == ErrorKind::IdentityViolated || k == ErrorKind::IdentityMismatch || k == ErrorKind::BlockIdentityViolated;
}

namespace suites {

struct Context {
  std::uint64_t seed;
  Range dims;
  Range k;
  Tolerances tol;
};

inline Range default_dims(const std::string& suite) { return suite == "brake-k" ? Range{1, 2} : Range{1, 3}; }

inline Range default_k(const std::string& suite) {
  if (suite == "brake-k") return {1, 5};
  if (suite == "chebyshev") return {1, 12};
  return {1, 6};
}

inline SymplecticSpace with_tol(const SymplecticSpace& s, const Tolerances& tol) {
  return SymplecticSpace::make(s.structure(), tol);
}

/// Positive-definiteness margin as a residual check: residual = -margin must stay below zero.
inline VerdictReport margin_verdict(std::string name, const PositivityReport& p, const SymplecticSpace& space) {
  VerdictReport v = residual_verdict(std::move(name), -p.margin, 0.0, space);
  v.match = p.positive;
  v.detail = "margin " + std::to_string(p.margin);
  return v;
}

inline VerdictReport tag(VerdictReport v, const Context& c, std::vector<int> dims) {
  v.seed = c.seed;
  v.dims = std::move(dims);
  return v;
}

/// Bott iteration (pointwise powers and A-iteration), the A-iteration
/// nullity identity and the delta_k relations.
inline std::vector<VerdictReport> bott(const Context& c) {
  Rng rng(c.seed);
  const Index n = rng.uniform_int(c.dims.lo, c.dims.hi);
  const int k = rng.uniform_int(c.k.lo, c.k.hi);
  SymplecticSpace space = with_tol(random_space(n, rng), c.tol);
  std::vector<int> dims{static_cast<int>(n), k};
  std::vector<VerdictReport> out;

  PathRecipe general;
  general.from_identity = rng.uniform(0.0, 1.0) < 0.5;
  general.plant_order = rng.uniform(0.0, 1.0) < 0.5 ? k : 0;
  SymplecticPath gamma = random_path(space, rng, general);
  out.push_back(tag(verify_bott(space, gamma, k), c, dims));

  PathRecipe based;
  based.plant_order = rng.uniform(0.0, 1.0) < 0.5 ? k : 0;
  SymplecticPath gp = random_path(space, rng, based);
  // A = I, A random, or A = gamma(tau) Q^{-1} with Q carrying a planted root of unity
  Mat a;
  double pick = rng.uniform(0.0, 1.0);
  if (pick < 0.25) {
    a = identity(space.dim());
  } else if (pick < 0.6) {
    a = random_symplectic(normalize_space(space), rng, 0.25);
  } else {
    PathRecipe q;
    q.plant_order = k;
    a = gp(gp.end()) * random_path(space, rng, q)(1.0).inverse();
  }
  out.push_back(tag(verify_bott_iterate(space, gp, k, a), c, dims));
  out.push_back(tag(verify_bott_iterate_nullity(space, gp, k, a), c, dims));
  out.push_back(tag(verify_delta_relation(space, gp, k, a), c, dims));

  // delta_k along a path in another homotopy class and along the reference path
  SymplecticPath other = product(gp, random_loop(space, rng));
  int d1 = delta_from_path(space, gp, k);
  out.push_back(tag(verdict("delta:path-independence(loop)", d1, {delta_from_path(space, other, k)}, space), c, dims));
  out.push_back(tag(verdict("delta:path-independence(reference)", d1, {delta_k(space, gp(gp.end()), k)}, space), c,
                    dims));
  return out;
}

inline std::vector<VerdictReport> brake2(const Context& c) {
  Rng rng(c.seed);
  const Index n = rng.uniform_int(c.dims.lo, c.dims.hi);
  const Index special = rng.uniform_int(0, static_cast<int>(n));
  BrakeModel model = BrakeModel::random(n, special, rng);
  std::vector<double> phi = brake_angles(special, 2, rng);
  SymplecticPath g1 = brake_path(model, rng, phi);
  const bool plain = rng.uniform(0.0, 1.0) < 1.0 / 3.0;
  BrakeTwist twist = plain ? make_twist(model.brake(), identity(2 * n)) : model.random_twist(rng);
  std::vector<int> dims{static_cast<int>(n), plain ? 1 : 0};
  std::vector<VerdictReport> out;
  out.push_back(tag(verify_brake2(model.brake(), twist, g1), c, dims));
  out.push_back(tag(verify_brake2_iterate(model.brake(), twist, g1), c, dims));
  const SymplecticSpace& space = model.space();
  TwistKernel tk = twist_kernel(model.brake(), twist, g1(1.0));
  out.push_back(tag(verdict("brake2:dim ker(K-S)=dim ker C+dim ker B", tk.ker, {tk.ker_c, tk.ker_b}, space), c, dims));
  out.push_back(tag(residual_verdict("brake2:MN(K-S)=NM-MNS block form", tk.block_residual, 1e-9, space), c, dims));
  return out;
}

inline std::vector<VerdictReport> brake_k(const Context& c) {
  Rng rng(c.seed);
  const Index n = rng.uniform_int(c.dims.lo, c.dims.hi);
  const int k = rng.uniform_int(c.k.lo, c.k.hi);
  const Index special = rng.uniform_int(0, static_cast<int>(n));
  BrakeModel model = BrakeModel::random(n, special, rng);
  std::vector<double> phi = brake_angles(special, k, rng);
  SymplecticPath g1 = brake_path(model, rng, phi);
  std::vector<int> dims{static_cast<int>(n), k};
  std::vector<VerdictReport> out;
  for (BrakeIdentity id : {BrakeIdentity::Reflect, BrakeIdentity::Power, BrakeIdentity::Odd, BrakeIdentity::Iterate2,
                           BrakeIdentity::IIterate, BrakeIdentity::Iterate2k1})
    out.push_back(tag(verify_brake_k(model.brake(), id, g1, k), c, dims));
  return out;
}

inline VerdictReport from_split(const NullitySplit& s, const SymplecticSpace& space, bool tilde) {
  return tilde ? verdict("nullity~:" + s.identity, s.lhs_tilde, s.rhs_tilde, space)
               : verdict("nullity:" + s.identity, s.lhs, s.rhs, space);
}

inline std::vector<VerdictReport> nullity(const Context& c) {
  Rng rng(c.seed);
  const Index n = rng.uniform_int(c.dims.lo, c.dims.hi);
  const int k = rng.uniform_int(c.k.lo, c.k.hi);
  std::vector<int> dims{static_cast<int>(n), k};
  std::vector<VerdictReport> out;

  SymplecticSpace space = with_tol(random_space(n, rng), c.tol);
  PathRecipe r;
  r.plant_order = k;
  r.from_identity = false;
  Mat m = random_path(space, rng, r)(1.0);
  PowerSplit ps = split_nullity_power(space, m, k);
  out.push_back(tag(verdict("nullity:nu_1(M^k)=sum_z nu_z(M)", ps.lhs, ps.per_root, space), c, dims));
  out.push_back(tag(verdict("nullity~:nu_1(M^k)=sum_z nu_z(M)", ps.lhs_tilde, ps.per_root_tilde, space), c, dims));

  const Index special = rng.uniform_int(0, static_cast<int>(n));
  BrakeModel model = BrakeModel::random(n, special, rng);
  std::vector<double> phi = brake_angles(special, k, rng);
  Mat p = brake_endpoint(model, rng, phi);
  BrakeSplit bs = split_nullity_brake(model.brake(), p, k);
  const SymplecticSpace& bspace = model.space();
  for (const NullitySplit* s : {&bs.reflect, &bs.power, &bs.odd, &bs.kernel}) {
    out.push_back(tag(from_split(*s, bspace, false), c, dims));
    out.push_back(tag(from_split(*s, bspace, true), c, dims));
  }
  for (auto [dk, mk] : bs.eigen_counts)
    out.push_back(tag(verdict("nullity:dim ker(D-cos a)=dim ker(M-e^{ia})", dk, {mk}, bspace), c, dims));
  out.push_back(tag(residual_verdict("nullity:(I-l^-1 MN)(M-l) block form", bs.triangular_residual, 1e-9, bspace), c,
                    dims));
  out.push_back(tag(residual_verdict("nullity:B3=B1 R_k(D)", bs.r_relation_residual, 1e-8, bspace), c, dims));
  return out;
}

inline std::vector<VerdictReport> chebyshev(const Context& c) {
  Rng rng(c.seed);
  const Index n = rng.uniform_int(c.dims.lo, c.dims.hi);
  const int k = rng.uniform_int(c.k.lo, c.k.hi);
  const Index special = rng.uniform_int(0, static_cast<int>(n));
  BrakeModel model = BrakeModel::random(n, special, rng);
  std::vector<double> phi = brake_angles(special, k, rng);
  Mat p = brake_endpoint(model, rng, phi);
  Mat m = model.brake().reflect(p);
  std::vector<int> dims{static_cast<int>(n), k};
  const SymplecticSpace& space = model.space();
  std::vector<VerdictReport> out;
  Mat direct = matrix_power(m, k);
  Mat cheb = cheb_power(model.brake(), m, k, 1.0);
  double rel = (cheb - direct).norm() / std::max(1.0, direct.norm());
  out.push_back(tag(residual_verdict("chebyshev:cheb_power=M^k", rel, 1e-8, space), c, dims));
  double inv = involution_residual(model.brake(), m);
  BlockIdentityResiduals br = block_identities(model.brake(), m);
  VerdictReport bv = residual_verdict("chebyshev:block identities", br.max(), 1e-9, space);
  bv.detail = "involution residual " + std::to_string(inv);
  out.push_back(tag(bv, c, dims));
  return out;
}

/// Convention-level properties: oracle equivalence, e^{Js} deformation,
/// positivity closures, additivity, frame and complement independence.
inline std::vector<VerdictReport> convention(const Context& c) {
  Rng rng(c.seed);
  const Index n = rng.uniform_int(c.dims.lo, c.dims.hi);
  SymplecticSpace space = with_tol(random_space(n, rng), c.tol);
  ProductSpace x(space);
  Normalization norm = normalize_space(space);
  std::vector<int> dims{static_cast<int>(n)};
  std::vector<VerdictReport> out;

  // winding against the crossing-form oracle; degenerate draws are redrawn
  {
    PathRecipe r;
    r.from_identity = false;
    for (int attempt = 0;; ++attempt) {
      SymplecticPath g = random_path(space, rng, r);
      Mat v = x.graph(random_symplectic(norm, rng, 0.25));
      try {
        int w = graph_index(space, g, v).index;
        int q = graph_index_crossingform(space, g, v).index;
        out.push_back(tag(verdict("convention:winding=crossing-form", w, {q}, space), c, dims));
        break;
      } catch (const Error& e) {
        bool redraw = e.kind() == ErrorKind::DegenerateCrossing || e.kind() == ErrorKind::NonIsolatedCrossing;
        if (!redraw || attempt >= 4) throw;
      }
    }
  }
  // deformation by e^{J s0}
  {
    PathRecipe r;
    r.plant_order = rng.uniform_int(1, 4);
    r.from_identity = rng.uniform(0.0, 1.0) < 0.5;
    SymplecticPath g = random_path(space, rng, r);
    // V = Gr(z) with z = 1 or the eigenvalue of gamma(1) closest to the circle
    Complex z = 1.0;
    if (rng.uniform(0.0, 1.0) < 0.5) {
      Eigen::ComplexEigenSolver<Mat> es(g(1.0));
      Index best = 0;
      for (Index i = 1; i < es.eigenvalues().size(); ++i)
        if (std::abs(std::abs(es.eigenvalues()(i)) - 1.0) < std::abs(std::abs(es.eigenvalues()(best)) - 1.0)) best = i;
      z = es.eigenvalues()(best) / std::abs(es.eigenvalues()(best));
    }
    double s0 = (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * 0.05;
    PushReport p = push_index(space, g, x.graph_scalar(z), s0);
    std::vector<int> rhs = p.s0 < 0.0 ? std::vector<int>{p.nu_begin, -p.nu_end} : std::vector<int>{};
    out.push_back(tag(verdict("convention:i(e^{Js0}g)-i(g)=swept nullity", p.after - p.before, rhs, space), c, dims));
  }
  // positivity closures: products of positive paths, and N g^{-1} N
  {
    SymplecticPath g1 = random_positive_path(space, rng);
    SymplecticPath g2 = random_positive_path(space, rng);
    PositivityReport pr = is_positive_path(space, product(g1, g2));
    out.push_back(tag(margin_verdict("convention:positive*positive margin>0", pr, space), c, dims));
    const Index special = rng.uniform_int(0, static_cast<int>(n));
    BrakeModel model = BrakeModel::random(n, special, rng);
    SymplecticPath g = random_positive_path(model.space(), rng);
    PositivityReport pn = is_positive_path(model.space(), conjugation(model.brake().involution(), g));
    out.push_back(tag(margin_verdict("convention:Ng^-1N positive margin>0", pn, space), c, dims));
  }
  // concatenation additivity and frame equivalence of V
  {
    PathRecipe r;
    r.from_identity = rng.uniform(0.0, 1.0) < 0.5;
    SymplecticPath g = random_path(space, rng, r);
    Mat v = x.graph_scalar(std::polar(1.0, rng.uniform(-kPi, kPi)));
    double mid = rng.uniform(0.2, 0.8);
    int whole = index_v(space, g, v);
    out.push_back(tag(verdict("convention:concatenation additivity", whole,
                              {index_v(space, g.restricted(0.0, mid), v), index_v(space, g.restricted(mid, 1.0), v)},
                              space),
                      c, dims));
    Mat gmat = gaussian_matrix(v.cols(), v.cols(), rng) + 2.0 * identity(v.cols());
    out.push_back(tag(verdict("convention:V frame equivalence", whole, {index_v(space, g, v * gmat)}, space), c, dims));
    Mat nmat = random_symplectic(norm, rng, 0.25);
    IndexVsN iv = index_vs_N(space, g, nmat);
    out.push_back(tag(verdict("convention:i_N=i_1(gN^-1)", iv.direct, {iv.right}, space), c, dims));
    out.push_back(tag(verdict("convention:i_N=i_1(N^-1g)", iv.direct, {iv.left}, space), c, dims));
  }
  // direct-sum additivity over H1 x H2
  {
    SymplecticSpace s2 = with_tol(random_space(rng.uniform_int(1, 2), rng), c.tol);
    ProductSpace x2(s2);
    SymplecticPath g1 = random_path(space, rng);
    SymplecticPath g2 = random_path(s2, rng);
    Mat v1 = x.graph(identity(space.dim()));
    Mat v2 = x2.graph(random_symplectic(normalize_space(s2), rng, 0.25));
    SymplecticSpace sum = SymplecticSpace::make(block_diag(x.space().structure(), x2.space().structure()), c.tol);
    LagrangianPath lam = direct_sum(graph_path(g1), graph_path(g2));
    LagrangianPath mu = constant_lagrangian(block_diag(v1, v2), 0.0, 1.0);
    int total = maslov_pairs(sum, lam, mu, 0.0, 1.0).index;
    out.push_back(tag(verdict("convention:direct-sum additivity", total, {index_v(space, g1, v1), index_v(s2, g2, v2)},
                              space),
                      c, dims));
  }
  // crossing form independent of the complement
  {
    SymplecticPath g = random_path(space, rng);
    LagrangianPath lam = graph_path(g);
    double t0 = rng.uniform(0.0, 1.0);
    Mat f = lam.frame(t0);
    auto complement = [&]() {
      for (;;) {
        Mat cand = random_lagrangian(normalize_space(x.space()), rng);
        if (intersection_dim(f, cand, c.tol.rank) == 0) return cand;
      }
    };
    Mat c1 = complement();
    Mat c2 = complement();
    Mat q1 = crossing_form(x.space(), lam, t0, c1);
    Mat q2 = crossing_form(x.space(), lam, t0, c2);
    double rel = (q1 - q2).norm() / std::max(1.0, q1.norm());
    out.push_back(tag(residual_verdict("convention:crossing form complement independence", rel, 1e-8, space), c, dims));
  }
  return out;
}

inline std::function<std::vector<VerdictReport>(const Context&)> runner(const std::string& suite) {
  if (suite == "bott") return bott;
  if (suite == "brake2") return brake2;
  if (suite == "brake-k") return brake_k;
  if (suite == "nullity") return nullity;
  if (suite == "chebyshev") return chebyshev;
  if (suite == "convention") return convention;
  fail(ErrorKind::Config, "unknown suite " + suite);
}

}  // namespace suites

/// Seed of trial i of a suite: independent of thread scheduling and of the
/// other suites selected alongside it.
inline std::uint64_t trial_seed(std::uint64_t master, const std::string& suite, int trial) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : suite) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
  return mix_seed(mix_seed(master, h), static_cast<std::uint64_t>(trial));
}

inline TrialResult run_trial(const std::string& suite, int trial, const CampaignSettings& s) {
  TrialResult r;
  r.suite = suite;
  r.trial = trial;
  r.seed = trial_seed(s.master_seed, suite, trial);
  suites::Context ctx{r.seed, s.dims.value_or(suites::default_dims(suite)), s.k.value_or(suites::default_k(suite)),
                      s.tol};
  try {
    r.verdicts = suites::runner(suite)(ctx);
    bool ok = std::all_of(r.verdicts.begin(), r.verdicts.end(), [](const VerdictReport& v) { return v.match; });
    r.status = ok ? TrialStatus::Pass : TrialStatus::Mismatch;
  } catch (const Error& e) {
    r.status = is_identity_error(e.kind()) ? TrialStatus::Mismatch : TrialStatus::Numerical;
    r.error = e.what();
  }
  return r;
}

inline unsigned campaign_threads(unsigned requested) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MASLOV_ITER_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) t = std::min(t, static_cast<unsigned>(cap));
  }
  return std::max(1u, t);
}

inline CampaignReport run_campaign(const CampaignSettings& s) {
  if (s.trials < 1) fail(ErrorKind::Config, "trials must be at least 1");
  if (!valid_suite(s.suite)) fail(ErrorKind::Config, "unknown suite " + s.suite);
  if (s.dims && (s.dims->lo < 1 || s.dims->hi < s.dims->lo)) fail(ErrorKind::Config, "bad dims range");
  if (s.k && (s.k->lo < 1 || s.k->hi < s.k->lo)) fail(ErrorKind::Config, "bad k range");
  auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, int>> jobs;
  std::vector<std::string> selected = s.suite == "all" ? suite_names() : std::vector<std::string>{s.suite};
  for (const std::string& name : selected)
    for (int i = 0; i < s.trials; ++i) jobs.push_back({name, s.first_trial + i});

  CampaignReport report;
  report.settings = s;
  report.results.resize(jobs.size());
  report.threads = std::min<unsigned>(campaign_threads(s.threads), static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++)
      report.results[i] = run_trial(jobs[i].first, jobs[i].second, s);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < report.threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const TrialResult& r : report.results) {
    report.passed += r.status == TrialStatus::Pass;
    report.mismatched += r.status == TrialStatus::Mismatch;
    report.numerical += r.status == TrialStatus::Numerical;
    report.verdicts += static_cast<int>(r.verdicts.size());
    for (const VerdictReport& v : r.verdicts) report.verdicts_matched += v.match;
  }
  report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline Json to_json(const TrialResult& r) {
  Json verdicts = Json::array();
  for (const VerdictReport& v : r.verdicts) verdicts.push_back(to_json(v));
  Json out = {{"suite", r.suite}, {"trial", r.trial}, {"seed", r.seed}, {"status", to_string(r.status)},
              {"verdicts", verdicts}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

inline Json to_json(const CampaignReport& c) {
  const CampaignSettings& s = c.settings;
  Json per_suite = Json::object();
  Json results = Json::array();
  Json failures = Json::array();
  for (const TrialResult& r : c.results) {
    Json& entry = per_suite[r.suite];
    if (entry.is_null()) entry = {{"pass", 0}, {"mismatch", 0}, {"numerical", 0}};
    entry[to_string(r.status)] = entry[to_string(r.status)].get<int>() + 1;
    results.push_back(to_json(r));
    if (r.status != TrialStatus::Pass)
      failures.push_back({{"reproduce",
                           {{"schema_version", kSchemaVersion},
                            {"suite", r.suite},
                            {"master_seed", s.master_seed},
                            {"first_trial", r.trial},
                            {"trials", 1},
                            {"tolerances", to_json(s.tol)}}},
                          {"seed", r.seed},
                          {"status", to_string(r.status)}});
  }
  Json settings = {{"suite", s.suite}, {"trials", s.trials}, {"first_trial", s.first_trial},
                   {"master_seed", s.master_seed}, {"tolerances", to_json(s.tol)}};
  if (s.dims) settings["dims"] = {s.dims->lo, s.dims->hi};
  if (s.k) settings["k"] = {s.k->lo, s.k->hi};
  return {{"schema_version", kSchemaVersion},
          {"kind", "campaign"},
          {"convention", kConvention},
          {"settings", settings},
          {"environment",
           {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"threads", c.threads},
            {"cxx", __cplusplus}}},
          {"summary",
           {{"trials", static_cast<int>(c.results.size())},
            {"pass", c.passed},
            {"mismatch", c.mismatched},
            {"numerical", c.numerical},
            {"verdicts", c.verdicts},
            {"verdicts_matched", c.verdicts_matched},
            {"per_suite", per_suite}}},
          {"elapsed_seconds", c.elapsed},
          {"failures", failures},
          {"results", results}};
}

}  // namespace maslov
