// maslov_iter: index computation, identity campaigns, polar decomposition
// and canonical self-tests from the command line.
//
// Exit codes: 0 all pass, 1 identity violation, 2 usage/config, 3 numerical.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "maslov/campaign.hpp"
#include "maslov/selftest.hpp"
#include "maslov/serialize.hpp"

using namespace maslov;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> first_trial;
  std::optional<std::string> suite;
  std::string out;
  std::optional<double> tol;
  std::string csv_traces;
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::IdentityViolated:
    case ErrorKind::IdentityMismatch:
    case ErrorKind::BlockIdentityViolated:
      return 1;
    case ErrorKind::RankAmbiguous:
    case ErrorKind::GaugeUnstable:
    case ErrorKind::SubdivisionLimit:
    case ErrorKind::DegenerateCrossing:
    case ErrorKind::NonIsolatedCrossing:
    case ErrorKind::DerivativeUnavailable:
    case ErrorKind::DiscontinuousJunction:
    case ErrorKind::RankDeficient:
    case ErrorKind::NotSymplectic:
      return 3;
    default:
      return 2;
  }
}

Json load_config(const Flags& f) { return f.config.empty() ? Json::object() : read_json_file(f.config); }

void check_schema(const Json& cfg) {
  if (!cfg.is_object()) config_error("config must be a JSON object");
  if (cfg.contains("schema_version") && cfg.at("schema_version") != kSchemaVersion)
    config_error("unsupported schema_version " + cfg.at("schema_version").dump());
}

Tolerances tolerances(const Json& cfg, const Flags& f) {
  Tolerances t;
  if (cfg.contains("tolerances")) t = tolerances_from_json(cfg.at("tolerances"), t);
  if (f.tol) {
    if (!(*f.tol > 0.0)) config_error("--tol must be positive");
    t.rank = *f.tol;
  }
  return t;
}

void emit(const Json& j, const std::string& out) {
  std::string text = j.dump(2);
  if (out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream file(out);
  if (!file) config_error("cannot write " + out);
  file << text << "\n";
}

int cmd_index(const Flags& f) {
  Json cfg = load_config(f);
  check_schema(cfg);
  if (!cfg.contains("space") || !cfg.contains("path")) config_error("index config needs space and path");
  Tolerances tol = tolerances(cfg, f);
  SymplecticSpace space = space_from_json(cfg.at("space"), tol);
  SymplecticPath gamma = path_from_json(cfg.at("path"), space);
  std::optional<BrakeSymmetry> brake;
  if (cfg.contains("involution")) brake = BrakeSymmetry::make(space, matrix_from_json(cfg.at("involution")));
  Mat v = cfg.contains("V") ? lagrangian_from_json(cfg.at("V"), space, brake)
                            : ProductSpace(space).graph(identity(space.dim()));
  IndexOptions opt;
  opt.keep_trace = !f.csv_traces.empty();
  IndexReport r = graph_index(space, gamma, v, opt);
  Json out = to_json(r);
  // crossing table from the independent method, when the crossings are regular
  try {
    IndexReport c = graph_index_crossingform(space, gamma, v);
    out["crossings"] = to_json(c)["crossings"];
    out["crossing_form_index"] = c.index;
  } catch (const Error& e) {
    out["crossing_form_index"] = nullptr;
    out["crossing_form_note"] = e.what();
  }
  if (cfg.contains("expected_index")) out["expected_index"] = cfg.at("expected_index");
  emit(out, f.out);
  if (!f.csv_traces.empty()) {
    std::ofstream csv(f.csv_traces);
    if (!csv) config_error("cannot write " + f.csv_traces);
    csv << trace_csv(r);
  }
  if (cfg.contains("expected_index") && cfg.at("expected_index") != r.index) return 1;
  return 0;
}

std::optional<Range> range_from(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) return std::nullopt;
  const Json& r = cfg.at(key);
  if (r.is_number_integer()) return Range{r.get<int>(), r.get<int>()};
  if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
    config_error(std::string(key) + " must be an integer or [lo, hi]");
  return Range{r[0].get<int>(), r[1].get<int>()};
}

int cmd_verify(const Flags& f) {
  Json cfg = load_config(f);
  check_schema(cfg);
  CampaignSettings s;
  s.tol = tolerances(cfg, f);
  if (cfg.contains("suite")) s.suite = cfg.at("suite").get<std::string>();
  if (cfg.contains("trials")) s.trials = cfg.at("trials").get<int>();
  if (cfg.contains("first_trial")) s.first_trial = cfg.at("first_trial").get<int>();
  if (cfg.contains("master_seed")) s.master_seed = cfg.at("master_seed").get<std::uint64_t>();
  if (cfg.contains("threads")) s.threads = cfg.at("threads").get<unsigned>();
  s.dims = range_from(cfg, "dims");
  s.k = range_from(cfg, "k");
  if (f.suite) s.suite = *f.suite;
  if (f.trials) s.trials = *f.trials;
  if (f.first_trial) s.first_trial = *f.first_trial;
  if (f.seed) s.master_seed = *f.seed;
  std::string out = f.out.empty() && cfg.contains("out") ? cfg.at("out").get<std::string>() : f.out;

  CampaignReport report = run_campaign(s);
  Json j = to_json(report);
  for (const auto& [suite, counts] : j["summary"]["per_suite"].items())
    std::printf("%-11s pass %4d  mismatch %4d  numerical %4d\n", suite.c_str(), counts["pass"].get<int>(),
                counts["mismatch"].get<int>(), counts["numerical"].get<int>());
  std::printf("total       %d/%d trials passed in %.1f s (%u threads)\n", report.passed,
              static_cast<int>(report.results.size()), report.elapsed, report.threads);
  for (const TrialResult& r : report.results)
    if (r.status != TrialStatus::Pass)
      std::printf("  %s trial %d (seed %llu): %s%s%s\n", r.suite.c_str(), r.trial,
                  static_cast<unsigned long long>(r.seed), to_string(r.status), r.error.empty() ? "" : ": ",
                  r.error.c_str());
  if (!out.empty()) emit(j, out);
  return report.exit_code();
}

int cmd_decompose(const Flags& f) {
  Json cfg = load_config(f);
  check_schema(cfg);
  if (!cfg.contains("space")) config_error("decompose config needs a space");
  Tolerances tol = tolerances(cfg, f);
  SymplecticSpace space = space_from_json(cfg.at("space"), tol);
  std::optional<SymplecticPath> loop;
  Mat m;
  if (cfg.contains("matrix")) {
    m = matrix_from_json(cfg.at("matrix"));
  } else if (cfg.contains("path")) {
    SymplecticPath p = path_from_json(cfg.at("path"), space);
    m = p(p.end());
    Mat m0 = p(p.begin());
    if ((m - m0).norm() <= 1e-9 * std::max(1.0, m0.norm())) loop = p;
  } else {
    config_error("decompose config needs a matrix or a path");
  }
  if (m.rows() != space.dim() || m.cols() != space.dim()) config_error("matrix does not match the space");

  Normalization norm = normalize_space(space);
  Mat mn = norm.conjugate(m);
  PolarDecomposition p = polar_decompose(norm.space, mn);
  const Index d = space.dim();
  const Mat& j1 = norm.space.base().structure();
  double scale = std::max(1.0, mn.norm());
  Json residuals = {
      {"product", (p.a * p.u - mn).norm() / scale},
      {"unitary", (p.u.adjoint() * p.u - identity(d)).norm()},
      {"hermitian", (p.a - p.a.adjoint()).norm() / scale},
      {"exp_s", (Mat(p.s).exp() - p.a).norm() / scale},
      {"symplectic_a", (p.a.adjoint() * j1 * p.a - j1).norm() / scale},
      {"symplectic_u", (p.u.adjoint() * j1 * p.u - j1).norm()},
  };
  Json out = {{"schema_version", kSchemaVersion}, {"kind", "decompose"}, {"M", to_json(m)}};
  out["normalized"] = space.is_normalized();
  if (!space.is_normalized()) {
    out["transfer"] = to_json(norm.transfer);
    out["normalized_structure"] = to_json(j1);
  }
  out["n_plus"] = norm.space.n_plus();
  out["n_minus"] = norm.space.n_minus();
  out["polar"] = to_json(p);
  out["residuals"] = residuals;
  if (loop) {
    WindingPair w = winding_pair(space, *loop);
    out["winding_pair"] = {w.plus, w.minus};
  }
  emit(out, f.out);
  return 0;
}

int cmd_selftest(const Flags& f) {
  Tolerances tol;
  if (f.tol) {
    if (!(*f.tol > 0.0)) config_error("--tol must be positive");
    tol.rank = *f.tol;
  }
  std::vector<FixtureResult> results = run_fixtures(tol);
  int failed = 0;
  int numerical = 0;
  std::size_t width = 0;
  for (const FixtureResult& r : results) width = std::max(width, r.name.size());
  for (const FixtureResult& r : results) {
    const char* tag = r.status == FixtureStatus::Pass ? "PASS" : r.status == FixtureStatus::Fail ? "FAIL" : "NUMERICAL";
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << r.name << tag;
    if (r.status != FixtureStatus::Pass) std::cout << "  " << r.detail;
    std::cout << "\n";
    failed += r.status == FixtureStatus::Fail;
    numerical += r.status == FixtureStatus::Numerical;
  }
  std::cout << results.size() - failed - numerical << "/" << results.size() << " fixtures passed\n";
  if (!f.out.empty()) {
    Json j = Json::array();
    for (const FixtureResult& r : results)
      j.push_back({{"name", r.name},
                   {"status", r.status == FixtureStatus::Pass ? "pass" : r.status == FixtureStatus::Fail ? "fail" : "numerical"},
                   {"detail", r.detail}});
    emit({{"schema_version", kSchemaVersion}, {"kind", "selftest"}, {"fixtures", j}}, f.out);
  }
  return failed ? 1 : numerical ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maslov-type index computations and iteration identity checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", f.seed, "master seed");
  app.add_option("--trials", f.trials, "trials per suite");
  app.add_option("--first-trial", f.first_trial, "index of the first trial");
  app.add_option("--suite", f.suite, "bott, brake2, brake-k, nullity, chebyshev, convention or all");
  app.add_option("--out", f.out, "write the JSON report here instead of stdout");
  app.add_option("--tol", f.tol, "relative rank tolerance");
  app.add_option("--csv-traces", f.csv_traces, "write eigenangle traces (index)");

  int code = 0;
  auto run = [&](int (*cmd)(const Flags&)) { return [&, cmd] { code = cmd(f); }; };
  app.add_subcommand("index", "i_V of a path")->callback(run(cmd_index));
  app.add_subcommand("verify", "randomized identity campaign")->callback(run(cmd_verify));
  app.add_subcommand("decompose", "polar decomposition of a symplectic matrix")->callback(run(cmd_decompose));
  app.add_subcommand("selftest", "canonical fixtures")->callback(run(cmd_selftest));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
