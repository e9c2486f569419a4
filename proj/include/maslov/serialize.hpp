#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maslov/brake.hpp"
#include "maslov/iteration.hpp"
#include "maslov/lagrangian_path.hpp"
#include "maslov/maslov.hpp"
#include "maslov/path.hpp"
#include "maslov/polar.hpp"
#include "maslov/space.hpp"

// JSON I/O. Matrices are row-major arrays of rows whose entries are
// [re, im] pairs (plain numbers are accepted as real entries on input).
// Paths are {"domain": [a, b], "node": <node>} with nodes
//   {"type": "constant", "matrix": M}
//   {"type": "exp", "generator": L | "J", "alpha": 1, "beta": 0}
//   {"type": "product", "children": [n1, n2, ...]}            left to right
//   {"type": "concat", "junction": t, "children": [n1, n2]}
//   {"type": "reverse", "domain": [a, b], "children": [n]}
//   {"type": "conjugation", "matrix": N, "children": [n]}      N n(t)^{-1} N
//   {"type": "power", "k": k, "children": [n]}
//   {"type": "a_iterate", "matrix": A, "k": k, "tau": tau, "children": [n]}
//   {"type": "brake_iterate", "matrix": N, "k": k, "tau": tau, "children": [n]}
//   {"type": "sampled", "times": [...], "matrices": [M...], "chart": true}

namespace maslov {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

[[noreturn]] inline void config_error(const std::string& what) { fail(ErrorKind::Config, what); }

// ---- matrices ------------------------------------------------------------------

inline Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  config_error("matrix entry must be a number or a [re, im] pair, got " + j.dump());
}

inline Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) config_error("matrix must be a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) config_error("matrix rows must be arrays");
  const Index cols = static_cast<Index>(j[0].size());
  Mat m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) config_error("ragged matrix rows");
    for (Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

// ---- spaces --------------------------------------------------------------------

/// "canonical:n", {"J": M} or a bare matrix.
inline SymplecticSpace space_from_json(const Json& j, const Tolerances& tol = {}) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::string prefix = "canonical:";
    if (s.rfind(prefix, 0) != 0) config_error("space string must look like canonical:n");
    int n = 0;
    try {
      n = std::stoi(s.substr(prefix.size()));
    } catch (const std::exception&) {
      config_error("bad dimension in " + s);
    }
    if (n < 1) config_error("canonical space needs n >= 1");
    return SymplecticSpace::canonical(n, tol);
  }
  if (j.is_object() && j.contains("J")) return SymplecticSpace::make(matrix_from_json(j.at("J")), tol);
  if (j.is_array()) return SymplecticSpace::make(matrix_from_json(j), tol);
  config_error("space must be \"canonical:n\", {\"J\": matrix} or a matrix");
}

// ---- paths ---------------------------------------------------------------------

namespace detail {

inline double number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) config_error(std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

inline int integer(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) config_error(std::string(key) + " must be an integer");
  return j.at(key).get<int>();
}

inline const Json& children(const Json& j, std::size_t count) {
  if (!j.contains("children") || !j.at("children").is_array()) config_error("node needs a children array");
  const Json& c = j.at("children");
  if (count && c.size() != count) config_error("node has the wrong number of children");
  if (c.empty()) config_error("node needs at least one child");
  return c;
}

inline NodePtr node_from_json(const Json& j, const SymplecticSpace& space) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) config_error("path node needs a type");
  const std::string type = j.at("type").get<std::string>();
  if (type == "constant") return std::make_shared<ConstantNode>(matrix_from_json(j.at("matrix")));
  if (type == "exp") {
    if (!j.contains("generator")) config_error("exp node needs a generator");
    const Json& g = j.at("generator");
    Mat l = g.is_string() && g.get<std::string>() == "J" ? space.structure() : matrix_from_json(g);
    return std::make_shared<ExpNode>(l, number(j, "alpha", 1.0), number(j, "beta", 0.0));
  }
  if (type == "product") {
    const Json& c = children(j, 0);
    NodePtr acc = node_from_json(c[0], space);
    for (std::size_t i = 1; i < c.size(); ++i) acc = std::make_shared<ProductNode>(acc, node_from_json(c[i], space));
    return acc;
  }
  if (type == "concat") {
    const Json& c = children(j, 2);
    return std::make_shared<ConcatNode>(node_from_json(c[0], space), node_from_json(c[1], space),
                                        number(j, "junction", 0.0), space.tol().junction);
  }
  if (type == "reverse") {
    const Json& d = j.at("domain");
    if (!d.is_array() || d.size() != 2) config_error("reverse needs a domain [a, b]");
    return std::make_shared<ReverseNode>(node_from_json(children(j, 1)[0], space), d[0].get<double>(),
                                         d[1].get<double>());
  }
  if (type == "conjugation")
    return std::make_shared<ConjugationNode>(matrix_from_json(j.at("matrix")), node_from_json(children(j, 1)[0], space));
  if (type == "power") return std::make_shared<PowerNode>(node_from_json(children(j, 1)[0], space), integer(j, "k"));
  if (type == "a_iterate")
    return std::make_shared<AIterateNode>(matrix_from_json(j.at("matrix")), integer(j, "k"), number(j, "tau", 1.0),
                                          node_from_json(children(j, 1)[0], space), space.tol().junction);
  if (type == "brake_iterate")
    return std::make_shared<BrakeIterateNode>(matrix_from_json(j.at("matrix")), integer(j, "k"),
                                              number(j, "tau", 1.0), node_from_json(children(j, 1)[0], space),
                                              space.tol().junction);
  if (type == "sampled") {
    std::vector<double> times = j.at("times").get<std::vector<double>>();
    std::vector<Mat> mats;
    for (const Json& m : j.at("matrices")) mats.push_back(matrix_from_json(m));
    bool chart = j.value("chart", true);
    return std::make_shared<SampledNode>(std::move(times), std::move(mats), chart);
  }
  config_error("unknown path node type " + type);
}

inline Json node_to_json(const NodePtr& node) {
  const PathNode* p = node.get();
  if (auto c = dynamic_cast<const ConstantNode*>(p)) return {{"type", "constant"}, {"matrix", to_json(c->matrix())}};
  if (auto e = dynamic_cast<const ExpNode*>(p))
    return {{"type", "exp"}, {"generator", to_json(e->generator())}, {"alpha", e->alpha()}, {"beta", e->beta()}};
  if (auto q = dynamic_cast<const ProductNode*>(p))
    return {{"type", "product"}, {"children", {node_to_json(q->left()), node_to_json(q->right())}}};
  if (auto q = dynamic_cast<const ConcatNode*>(p))
    return {{"type", "concat"},
            {"junction", q->junction()},
            {"children", {node_to_json(q->first()), node_to_json(q->second())}}};
  if (auto r = dynamic_cast<const ReverseNode*>(p))
    return {{"type", "reverse"}, {"domain", {r->begin(), r->end()}}, {"children", {node_to_json(r->child())}}};
  if (auto c = dynamic_cast<const ConjugationNode*>(p))
    return {{"type", "conjugation"}, {"matrix", to_json(c->involution())}, {"children", {node_to_json(c->child())}}};
  if (auto w = dynamic_cast<const PowerNode*>(p))
    return {{"type", "power"}, {"k", w->exponent()}, {"children", {node_to_json(w->child())}}};
  if (auto a = dynamic_cast<const AIterateNode*>(p))
    return {{"type", "a_iterate"},
            {"matrix", to_json(a->matrix())},
            {"k", a->iterations()},
            {"tau", a->period()},
            {"children", {node_to_json(a->child())}}};
  if (auto b = dynamic_cast<const BrakeIterateNode*>(p))
    return {{"type", "brake_iterate"},
            {"matrix", to_json(b->involution())},
            {"k", b->iterations()},
            {"tau", b->period()},
            {"children", {node_to_json(b->child())}}};
  if (auto s = dynamic_cast<const SampledNode*>(p)) {
    Json mats = Json::array();
    for (const Mat& m : s->matrices()) mats.push_back(to_json(m));
    return {{"type", "sampled"}, {"times", s->times()}, {"matrices", mats}, {"chart", s->chart()}};
  }
  fail(ErrorKind::InvalidArgument, "path node has no JSON form");
}

}  // namespace detail

inline SymplecticPath path_from_json(const Json& j, const SymplecticSpace& space) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("node")) config_error("path needs domain and node");
  const Json& d = j.at("domain");
  if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
    config_error("path domain must be [a, b]");
  SymplecticPath path(detail::node_from_json(j.at("node"), space), d[0].get<double>(), d[1].get<double>());
  if (path.dim() != space.dim()) config_error("path dimension does not match the space");
  return path;
}

inline Json to_json(const SymplecticPath& path) {
  return {{"domain", {path.begin(), path.end()}}, {"node", detail::node_to_json(path.node())}};
}

// ---- Lagrangians of H x H ---------------------------------------------------------

/// {"type": "graph", "matrix": M}, {"type": "identity"}, {"type": "z", "re": x, "im": y}
/// or {"type": "z", "angle": a}, {"type": "frame", "matrix": F}, and
/// {"type": "product", "first": f, "second": g} with f, g frames of H or the
/// strings "U+" / "U-" (eigenspaces of the brake involution, which must be given).
inline Mat lagrangian_from_json(const Json& j, const SymplecticSpace& space,
                                const std::optional<BrakeSymmetry>& brake = std::nullopt) {
  ProductSpace x(space);
  if (!j.is_object() || !j.contains("type")) config_error("V must be an object with a type");
  const std::string type = j.at("type").get<std::string>();
  Mat v;
  if (type == "graph") {
    v = x.graph(matrix_from_json(j.at("matrix")));
  } else if (type == "identity") {
    v = x.graph(identity(space.dim()));
  } else if (type == "z") {
    Complex z = j.contains("angle") ? std::polar(1.0, j.at("angle").get<double>())
                                    : Complex(detail::number(j, "re", 1.0), detail::number(j, "im", 0.0));
    if (std::abs(std::abs(z) - 1.0) > 1e-12) config_error("z must lie on the unit circle");
    v = x.graph_scalar(z);
  } else if (type == "frame") {
    v = matrix_from_json(j.at("matrix"));
  } else if (type == "product") {
    auto factor = [&](const Json& f) -> Mat {
      if (f.is_string()) {
        if (!brake) config_error("U+ / U- need a brake involution in the config");
        const std::string s = f.get<std::string>();
        if (s == "U+") return brake->u_plus();
        if (s == "U-") return brake->u_minus();
        config_error("unknown frame name " + s);
      }
      return matrix_from_json(f);
    };
    Mat first = factor(j.at("first"));
    Mat second = factor(j.at("second"));
    v = x.product(first, second);
  } else {
    config_error("unknown V type " + type);
  }
  if (v.rows() != x.space().dim()) config_error("V does not live in H x H");
  if (!is_lagrangian(x.space(), v)) config_error("V is not Lagrangian in H x H");
  return v;
}

// ---- reports -------------------------------------------------------------------

inline Json to_json(const Tolerances& t) {
  return {{"structure", t.structure},
          {"symplectic", t.symplectic},
          {"lagrangian", t.lagrangian},
          {"rank", t.rank},
          {"junction", t.junction}};
}

inline Tolerances tolerances_from_json(const Json& j, Tolerances t = {}) {
  if (!j.is_object()) config_error("tolerances must be an object");
  t.structure = detail::number(j, "structure", t.structure);
  t.symplectic = detail::number(j, "symplectic", t.symplectic);
  t.lagrangian = detail::number(j, "lagrangian", t.lagrangian);
  t.rank = detail::number(j, "rank", t.rank);
  t.junction = detail::number(j, "junction", t.junction);
  return t;
}

inline Json to_json(const IndexReport& r) {
  Json crossings = Json::array();
  for (const CrossingRecord& c : r.crossings)
    crossings.push_back({{"time", c.time},
                         {"dim", c.intersection.cols()},
                         {"signature", {c.signature.positive, c.signature.zero, c.signature.negative}},
                         {"contribution", c.contribution}});
  Json passages = Json::array();
  for (const Passage& p : r.passages) passages.push_back({{"t_lo", p.t_lo}, {"t_hi", p.t_hi}, {"sign", p.sign}});
  return {{"schema_version", kSchemaVersion},
          {"kind", "index"},
          {"index", r.index},
          {"method", r.method},
          {"convention", r.convention},
          {"epsilon", r.epsilon},
          {"depth", r.depth},
          {"samples", r.samples},
          {"nullity_begin", r.nullity_begin},
          {"nullity_end", r.nullity_end},
          {"crossings", crossings},
          {"passages", passages}};
}

/// t, angle_1, ..., angle_n per line.
inline std::string trace_csv(const IndexReport& r) {
  std::ostringstream os;
  os.precision(17);
  std::size_t width = 0;
  for (const TraceSample& s : r.trace) width = std::max(width, s.angles.size());
  os << "t";
  for (std::size_t i = 0; i < width; ++i) os << ",angle_" << i;
  os << "\n";
  for (const TraceSample& s : r.trace) {
    os << s.t;
    for (double a : s.angles) os << "," << a;
    os << "\n";
  }
  return os.str();
}

inline Json to_json(const VerdictReport& v) {
  Json out = {{"identity", v.identity},
              {"lhs", v.lhs},
              {"rhs_terms", v.rhs_terms},
              {"match", v.match},
              {"seed", v.seed},
              {"dims", v.dims},
              {"tolerances", to_json(v.tolerances)}};
  if (v.is_residual()) {
    out["residual"] = v.residual;
    out["residual_tol"] = v.residual_tol;
  }
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

inline Json to_json(const PolarDecomposition& p) {
  return {{"A", to_json(p.a)},   {"U", to_json(p.u)},     {"S", to_json(p.s)},
          {"S12", to_json(p.s12)}, {"U11", to_json(p.u11)}, {"U22", to_json(p.u22)}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    config_error(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

}  // namespace maslov
