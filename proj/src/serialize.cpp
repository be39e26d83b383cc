#include "qmut/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "qmut/canonical.hpp"
#include "qmut/errors.hpp"

namespace qmut {

namespace {

Entry entry_from_json(const Json& v, const char* what) {
  if (v.is_number_integer() && !v.is_number_unsigned()) return v.get<std::int64_t>();
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<Entry>::max())) {
      throw ResourceError(std::string(what) + " exceeds the 64-bit range");
    }
    return static_cast<Entry>(u);
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && std::floor(d) == d && std::fabs(d) >= 9.2e18) {
      throw ResourceError(std::string(what) + " exceeds the 64-bit range");
    }
  }
  throw UsageError(std::string(what) + " must be an integer");
}

int int_from_json(const Json& v, const char* what) {
  const Entry e = entry_from_json(v, what);
  if (e < std::numeric_limits<int>::min() || e > std::numeric_limits<int>::max()) {
    throw UsageError(std::string(what) + " out of range");
  }
  return static_cast<int>(e);
}

std::vector<std::vector<Entry>> rows_from_json(const Json& v, std::size_t width, const char* what) {
  if (!v.is_array()) throw UsageError(std::string(what) + " must be a list of rows");
  std::vector<std::vector<Entry>> rows;
  for (const auto& r : v) {
    if (!r.is_array() || r.size() != width) {
      throw UsageError(std::string(what) + " rows must have " + std::to_string(width) + " entries");
    }
    std::vector<Entry> row;
    for (const auto& x : r) row.push_back(entry_from_json(x, "matrix entry"));
    rows.push_back(std::move(row));
  }
  return rows;
}

IceQuiver quiver_from_arrows(int n, const Json& doc) {
  int frozen = 0;
  if (doc.contains("frozen")) frozen = int_from_json(doc["frozen"], "frozen");
  if (frozen < 0) throw UsageError("frozen must be nonnegative");
  const int total = n + frozen;
  // (s, t) -> multiplicity, both endpoints 0-based
  std::map<std::pair<int, int>, Entry> arrows;
  for (const auto& a : doc["arrows"]) {
    if (!a.is_array() || a.size() != 3) throw UsageError("arrows must be [source, target, multiplicity]");
    const int s = int_from_json(a[0], "arrow source") - 1;
    const int t = int_from_json(a[1], "arrow target") - 1;
    const Entry m = entry_from_json(a[2], "arrow multiplicity");
    if (s < 0 || s >= total || t < 0 || t >= total) throw UsageError("arrow endpoint out of range");
    if (s == t) throw UsageError("loop at vertex " + std::to_string(s + 1));
    if (m <= 0) throw UsageError("arrow multiplicity must be positive");
    if (arrows.count({t, s})) {
      throw UsageError("2-cycle between " + std::to_string(s + 1) + " and " + std::to_string(t + 1));
    }
    Entry& slot = arrows[{s, t}];
    slot = detail::checked_add(slot, m);
  }
  ExchangeMatrix b(n);
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(frozen), std::vector<Entry>(n, 0));
  for (const auto& [st, m] : arrows) {
    const auto [s, t] = st;
    if (s < n && t < n) {
      b.set_arrows(s, t, m);
    } else if (s < n) {
      rows[t - n][s] = m;
    } else if (t < n) {
      rows[s - n][t] = -m;
    }
  }
  return IceQuiver(b, rows);
}

Json arc_json(int i, int j) { return Json::array({i + 1, j + 1}); }

Json vertices_json(const std::vector<int>& vs) {
  Json out = Json::array();
  for (int v : vs) out.push_back(v + 1);
  return out;
}

Json refutation_json(const ColoringRefutation& r) {
  Json cycles = Json::array();
  for (const auto& c : r.cycles) cycles.push_back(to_json(c));
  return cycles;
}

Json la_node_json(const LaNode& node) {
  Json out;
  out["seed"] = to_json(node.seed);
  out["labels"] = vertices_json(node.labels);
  Json seq = Json::array();
  for (int k : node.path) seq.push_back(node.labels[k] + 1);
  out["sequence"] = seq;
  if (node.is_leaf()) {
    out["type"] = "leaf";
    return out;
  }
  out["type"] = "split";
  out["arrow"] = arc_json(node.labels[node.arrow->first], node.labels[node.arrow->second]);
  out["freeze_tail"] = la_node_json(node.children[0]);
  out["freeze_head"] = la_node_json(node.children[1]);
  return out;
}

}  // namespace

IceQuiver quiver_from_json(const Json& doc) {
  if (!doc.is_object()) throw UsageError("quiver document must be an object");
  if (!doc.contains("n")) throw UsageError("quiver document needs field 'n'");
  const int n = int_from_json(doc["n"], "n");
  if (n < 0) throw UsageError("n must be nonnegative");
  const bool has_matrix = doc.contains("matrix");
  const bool has_arrows = doc.contains("arrows");
  if (has_matrix == has_arrows) throw UsageError("quiver document needs exactly one of 'matrix' or 'arrows'");
  if (has_arrows) return quiver_from_arrows(n, doc);

  const auto rows = rows_from_json(doc["matrix"], static_cast<std::size_t>(n), "matrix");
  if (static_cast<int>(rows.size()) != n) throw UsageError("matrix must have n rows");
  for (int i = 0; i < n; ++i) {
    if (rows[i][i] != 0) throw UsageError("loop at vertex " + std::to_string(i + 1));
  }
  const ExchangeMatrix b = ExchangeMatrix::from_rows(rows);
  std::vector<std::vector<Entry>> frozen;
  if (doc.contains("frozen_rows")) frozen = rows_from_json(doc["frozen_rows"], static_cast<std::size_t>(n), "frozen_rows");
  return IceQuiver(b, frozen);
}

IceQuiver parse_quiver(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed quiver document: ") + e.what());
  }
  return quiver_from_json(doc);
}

IceQuiver load_quiver(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quiver(ss.str());
}

ExchangeMatrix exchange_matrix_from_json(const Json& doc) {
  const IceQuiver q = quiver_from_json(doc);
  if (q.frozen_count() != 0) throw UsageError("expected a quiver without frozen vertices");
  return q.principal();
}

Json to_json(const ExchangeMatrix& b) {
  Json rows = Json::array();
  for (int i = 0; i < b.size(); ++i) rows.push_back(Json(std::vector<Entry>(b.row(i).begin(), b.row(i).end())));
  return Json{{"n", b.size()}, {"matrix", rows}};
}

Json to_json(const IceQuiver& q) {
  Json out = to_json(q.principal());
  if (q.frozen_count() > 0) out["frozen_rows"] = q.frozen_rows();
  return out;
}

Json to_json(const MutationSequence& s) { return vertices_json(s.steps()); }

MutationSequence sequence_from_json(const Json& doc, int n) {
  if (doc.is_string()) return MutationSequence::parse(doc.get<std::string>(), n);
  if (!doc.is_array()) throw UsageError("sequence must be a list of vertices");
  std::vector<int> steps;
  for (const auto& v : doc) {
    const int k = int_from_json(v, "sequence element");
    if (k < 1 || k > n) throw UsageError("sequence element " + std::to_string(k) + " out of range");
    steps.push_back(k - 1);
  }
  return MutationSequence(std::move(steps));
}

Json to_json(const std::vector<VertexStatus>& colors) {
  Json out = Json::array();
  for (auto c : colors) out.push_back(c == VertexStatus::Green ? "green" : "red");
  return out;
}

Json to_json(const ChordlessCycle& c) {
  return Json{{"vertices", vertices_json(c.vertices)}, {"oriented", c.oriented}};
}

Json to_json(const ColoringResult& r, const ExchangeMatrix& b) {
  if (const auto* col = std::get_if<Coloring>(&r)) {
    Json arcs = Json::array();
    for (const auto& [i, j] : col->arcs) arcs.push_back(arc_json(i, j));
    return Json{{"kind", "coloring"}, {"quiver", to_json(b)}, {"arcs", arcs}, {"values", col->values}};
  }
  return Json{{"kind", "coloring_refutation"},
              {"quiver", to_json(b)},
              {"cycles", refutation_json(std::get<ColoringRefutation>(r))}};
}

Json to_json(const NoMgsCertificate& c) {
  Json out{{"kind", "no_mgs"}, {"quiver", to_json(c.quiver)}};
  if (const auto* cyc = std::get_if<MultipleArrowCycle>(&c.kind)) {
    out["variant"] = "multiple_arrow_cycle";
    out["cycle"] = vertices_json(cyc->vertices);
  } else {
    const auto& cl = std::get<ClassLevelObstruction>(c.kind);
    out["variant"] = "class_level";
    out["column_gcds"] = cl.column_gcds;
    out["cycles"] = refutation_json(cl.refutation);
  }
  return out;
}

Json to_json(const LaNode& root) {
  return Json{{"kind", "local_acyclicity"}, {"quiver", to_json(root.seed)}, {"root", la_node_json(root)}};
}

Json covering_pairs_json(const IceQuiver& q, const std::vector<Arc>& pairs) {
  Json arcs = Json::array();
  for (const auto& [i, j] : pairs) arcs.push_back(arc_json(i, j));
  return Json{{"kind", "covering_pairs"}, {"quiver", to_json(q)}, {"pairs", arcs}};
}

Json sequence_certificate(std::string_view kind, const ExchangeMatrix& b, const MutationSequence& s) {
  return Json{{"kind", std::string(kind)}, {"quiver", to_json(b)}, {"sequence", to_json(s)}};
}

Json to_json(const SearchOutcome& r, const ExchangeMatrix& b, std::string_view kind) {
  if (const auto* f = std::get_if<Found>(&r)) {
    const char* cert = kind == "mgs" ? "maximal_green" : "green_to_red";
    return Json{{"outcome", "found"},
                {"sequence", to_json(f->sequence)},
                {"certificate", sequence_certificate(cert, b, f->sequence)}};
  }
  if (const auto* e = std::get_if<ExhaustedToDepth>(&r)) {
    return Json{{"outcome", "exhausted"}, {"depth", e->depth}};
  }
  return Json{{"outcome", "obstructed"}, {"certificate", to_json(std::get<Obstructed>(r).certificate)}};
}

Json to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    terms.push_back(Json{{"c", t.coeff.get_str()},
                         {"x", std::vector<std::int32_t>(t.exp.begin(), t.exp.begin() + p.nx())},
                         {"y", std::vector<std::int32_t>(t.exp.begin() + p.nx(), t.exp.end())}});
  }
  return Json{{"nx", p.nx()}, {"ny", p.ny()}, {"terms", terms}};
}

LaurentPoly laurent_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("nx") || !doc.contains("ny") || !doc.contains("terms")) {
    throw UsageError("Laurent document needs nx, ny and terms");
  }
  const int nx = int_from_json(doc["nx"], "nx");
  const int ny = int_from_json(doc["ny"], "ny");
  if (nx < 0 || ny < 0) throw UsageError("variable counts must be nonnegative");
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : doc["terms"]) {
    if (!t.contains("c") || !t["c"].is_string()) throw UsageError("term coefficient must be a decimal string");
    LaurentPoly::Term term;
    if (term.coeff.set_str(t["c"].get<std::string>(), 10) != 0) throw UsageError("bad coefficient");
    const auto& xs = t.at("x");
    const auto& ys = t.at("y");
    if (xs.size() != static_cast<std::size_t>(nx) || ys.size() != static_cast<std::size_t>(ny)) {
      throw UsageError("term exponent vector has the wrong length");
    }
    for (const auto& e : xs) term.exp.push_back(int_from_json(e, "exponent"));
    for (const auto& e : ys) term.exp.push_back(int_from_json(e, "exponent"));
    terms.push_back(std::move(term));
  }
  return LaurentPoly::from_terms(nx, ny, std::move(terms));
}

Json class_index_json(const MutationClass& c) {
  Json reps = Json::array();
  for (std::size_t r = 0; r < c.representatives.size(); ++r) {
    reps.push_back(Json{{"index", r + 1},
                        {"hash", canonical_hash(c.representatives[r])},
                        {"file", "rep_" + std::to_string(r + 1) + ".quiver"}});
  }
  Json edges = Json::array();
  for (const auto& row : c.edges) {
    Json e = Json::array();
    for (int t : row) {
      if (t < 0) {
        e.push_back(nullptr);
      } else {
        e.push_back(t + 1);
      }
    }
    edges.push_back(e);
  }
  return Json{{"size", c.representatives.size()}, {"complete", c.complete}, {"representatives", reps}, {"edges", edges}};
}

void write_class_dump(const MutationClass& c, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t r = 0; r < c.representatives.size(); ++r) {
    std::ofstream out(dir / ("rep_" + std::to_string(r + 1) + ".quiver"));
    out << to_json(c.representatives[r]).dump() << '\n';
  }
  std::ofstream idx(dir / "index.json");
  idx << class_index_json(c).dump(2) << '\n';
  if (!idx) throw UsageError("cannot write class dump to " + dir.string());
}

}  // namespace qmut
