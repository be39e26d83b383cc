#include "qmut/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "qmut/canonical.hpp"
#include "qmut/certificate_check.hpp"
#include "qmut/class_explorer.hpp"
#include "qmut/cluster_engine.hpp"
#include "qmut/errors.hpp"
#include "qmut/obstructions.hpp"
#include "qmut/sequence_engine.hpp"
#include "qmut/serialize.hpp"
#include "qmut/service.hpp"

namespace qmut {

std::string data_dir() {
  if (const char* env = std::getenv("QMUT_DATA")) return env;
  return QMUT_DATA_DIR;
}

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

int default_depth() {
  if (const char* env = std::getenv("QMUT_MAX_DEPTH")) {
    try {
      const int d = std::stoi(env);
      if (d >= 0) return d;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("QMUT_MAX_DEPTH must be a nonnegative integer, got '") + env + "'");
  }
  return 10;
}

struct Output {
  std::ostream& out;
  bool structured = false;

  // Structured mode prints the document; text mode prints the lines.
  void emit(const Json& doc, const std::vector<std::string>& lines) const {
    if (structured) {
      out << doc.dump() << '\n';
    } else {
      for (const auto& l : lines) out << l << '\n';
    }
  }
};

std::string join(const std::vector<int>& vs, const char* sep = ",") {
  std::string s;
  for (std::size_t t = 0; t < vs.size(); ++t) s += (t ? sep : "") + std::to_string(vs[t] + 1);
  return s;
}

template <class T>
std::string join_values(const std::vector<T>& vs) {
  std::string s;
  for (std::size_t t = 0; t < vs.size(); ++t) s += (t ? "," : "") + std::to_string(vs[t]);
  return s;
}

std::vector<std::string> matrix_lines(const IceQuiver& q) {
  std::vector<std::string> lines;
  for (int r = 0; r < q.row_count(); ++r) {
    std::string line = r < q.mutable_count() ? "  " : "* ";
    for (int c = 0; c < q.mutable_count(); ++c) {
      std::string e = std::to_string(q(r, c));
      line += std::string(e.size() < 4 ? 4 - e.size() : 1, ' ') + e;
    }
    lines.push_back(line);
  }
  return lines;
}

std::string colors_text(const std::vector<VertexStatus>& cs) {
  std::string s;
  for (auto c : cs) s += c == VertexStatus::Green ? 'G' : 'R';
  return s;
}

std::string verdict(bool ok) { return ok ? "yes" : "no"; }

LaurentPoly read_poly(const std::string& text, const std::string& file, int n) {
  std::string src = text;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    src = ss.str();
  }
  if (src.empty()) throw UsageError("a polynomial is required (--poly or --poly-file)");
  const auto first = src.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && src[first] == '{') {
    LaurentPoly p = laurent_from_json(Json::parse(src));
    if (p.nx() != n || p.ny() != n) throw UsageError("polynomial variables do not match the quiver");
    return p;
  }
  return parse_laurent(src, n, n);
}

std::vector<Entry> parse_degrees(const std::string& text) {
  std::vector<Entry> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad degree '" + tok + "'");
    }
  }
  return out;
}

Json check_json(const Json& cert) {
  const CheckResult r = check_certificate(cert);
  Json out{{"ok", r.ok}};
  if (!r.ok) out["reason"] = r.reason;
  return out;
}

// ---------------------------------------------------------------------------
// Reproduction cases

int reproduce_qce(const Output& o) {
  const ExchangeMatrix b = load_quiver(data_dir() + "/qce.quiver").principal();
  const auto seq = MutationSequence::parse("1,4,3,4,2,4", b.size());

  const auto cert = no_mgs_certificate(b);
  const Json cert_doc = cert ? to_json(*cert) : Json();
  const bool cert_ok = cert && check_certificate(cert_doc).ok;

  const auto la = local_acyclicity_certificate(IceQuiver(b));
  const Json la_doc = la ? to_json(*la) : Json();
  const bool la_ok = la && check_certificate(la_doc).ok;

  const bool g2r = verify_green_to_red(b, seq);
  const Json g2r_doc = sequence_certificate("green_to_red", b, seq);
  const bool g2r_ok = g2r && check_certificate(g2r_doc).ok;

  const auto cls = class_no_mgs_certificate(b);
  const Json cls_doc = cls ? to_json(*cls) : Json();
  const bool cls_ok = cls && check_certificate(cls_doc).ok;

  std::vector<std::string> lines;
  lines.push_back("no-MGS certificate: " +
                  (cert ? "multiple-arrow cycle (" + join_values(cert_doc["cycle"].get<std::vector<int>>()) + ")"
                        : std::string("none")) +
                  ", checker " + (cert_ok ? "passed" : "failed"));
  if (la) {
    lines.push_back("local-acyclicity certificate: root covering arrow (" +
                    join_values(la_doc["root"]["arrow"].get<std::vector<int>>()) + "), checker " +
                    (la_ok ? "passed" : "failed"));
  } else {
    lines.push_back("local-acyclicity certificate: unknown within caps");
  }
  lines.push_back("green-to-red replay of " + seq.to_string() + ": " + (g2r ? "all vertices red" : "not all red"));
  lines.push_back("class-level no-MGS certificate: " +
                  (cls ? "column gcds (" + join_values(cls_doc["column_gcds"].get<std::vector<Entry>>()) + "), " +
                             "coloring refuted by " + std::to_string(cls_doc["cycles"].size()) + " chordless cycles"
                       : std::string("none")) +
                  ", checker " + (cls_ok ? "passed" : "failed"));
  const bool ok = cert_ok && la_ok && g2r_ok && cls_ok;
  lines.push_back(ok ? "verdict: no quiver mutation-equivalent to Q_ce has a maximal green sequence"
                     : "verdict: reproduction incomplete");

  o.emit(Json{{"case", "qce"},
              {"no_mgs", {{"certificate", cert_doc}, {"check", cert_ok}}},
              {"local_acyclicity", {{"certificate", la_doc}, {"check", la_ok}}},
              {"green_to_red", {{"certificate", g2r_doc}, {"check", g2r_ok}}},
              {"class_no_mgs", {{"certificate", cls_doc}, {"check", cls_ok}}},
              {"ok", ok}},
         lines);
  return ok ? 0 : kExitNegative;
}

int reproduce_x7(const Output& o) {
  const ExchangeMatrix b1 = load_quiver(data_dir() + "/x7_b1.quiver").principal();
  const ExchangeMatrix b2 = load_quiver(data_dir() + "/x7_b2.quiver").principal();
  const MutationClass cls = enumerate_class(b1);
  const auto c2 = canonical_form(b2).matrix;
  bool b2_in_class = false;
  bool coprime_class = true;
  for (const auto& r : cls.representatives) {
    b2_in_class |= r == c2;
    coprime_class &= is_coprime_matrix(r);
  }
  const bool coprime = is_coprime_matrix(b1) && is_coprime_matrix(b2);

  std::ifstream zin(data_dir() + "/x7_z.txt");
  std::string ztext;
  std::getline(zin, ztext);
  const LaurentPoly z = parse_laurent(ztext, 7, 7);
  const auto membership = adjacent_membership(z, b1);
  bool all_dirs = true;
  for (bool m : membership) all_dirs &= m;
  const GradingVector d{{2, 1, 1, 1, 1, 1, 1}};
  const bool grading = grading_check(b1, d);
  const auto deg = degree(z, d);

  std::vector<std::string> lines;
  lines.push_back("mutation class of B1: " + std::to_string(cls.representatives.size()) + " quivers" +
                  (cls.complete ? "" : " (incomplete)") + ", contains B2: " + verdict(b2_in_class));
  lines.push_back("B1 and B2 coprime: " + verdict(coprime) + "; coprime over the enumerated class: " +
                  verdict(coprime_class && cls.complete));
  std::string dirs;
  for (std::size_t k = 0; k < membership.size(); ++k) {
    if (k > 0) dirs += ' ';
    dirs += std::to_string(k + 1) + (membership[k] ? ":yes" : ":no");
  }
  lines.push_back("Z = " + ztext + " in adjacent Laurent rings: " + dirs);
  lines.push_back("grading d=(2,1,1,1,1,1,1) valid: " + verdict(grading) + "; deg(Z) = " +
                  (deg ? std::to_string(*deg) : std::string("not homogeneous")));
  const bool ok = cls.complete && cls.representatives.size() == 2 && b2_in_class && coprime && all_dirs &&
                  grading && deg && *deg <= 0;
  lines.push_back(ok ? "verdict: reproduced" : "verdict: not reproduced");

  o.emit(Json{{"case", "x7"},
              {"class", class_index_json(cls)},
              {"b2_in_class", b2_in_class},
              {"coprime", coprime},
              {"coprime_over_enumerated_class", coprime_class && cls.complete},
              {"z", to_json(z)},
              {"z_membership", membership},
              {"grading_valid", grading},
              {"degree", deg ? Json(*deg) : Json(nullptr)},
              {"ok", ok}},
         lines);
  return ok ? 0 : kExitNegative;
}

int reproduce_markov(const Output& o) {
  const ExchangeMatrix b = load_quiver(data_dir() + "/markov.quiver").principal();
  const auto cycle = multiple_arrow_cycle(b);
  const SearchOutcome s = search_mgs(b, default_depth());
  const bool obstructed = std::holds_alternative<Obstructed>(s);
  const auto pairs = covering_pairs(b);
  const auto la = local_acyclicity_certificate(IceQuiver(b));
  const MutationClass cls = enumerate_class(b);

  std::vector<std::string> lines;
  lines.push_back("multiple-arrow cycle: " + (cycle ? "(" + join(*cycle) + ")" : std::string("none")));
  lines.push_back("maximal green sequence search: " + std::string(obstructed ? "obstructed" : "not obstructed"));
  lines.push_back("covering pairs: " + std::to_string(pairs.size()));
  lines.push_back("local-acyclicity certificate: " + std::string(la ? "found" : "unknown"));
  lines.push_back("mutation class size: " + std::to_string(cls.representatives.size()));
  const bool ok = cycle && obstructed;
  o.emit(Json{{"case", "markov"},
              {"cycle", cycle ? to_json(MutationSequence(*cycle)) : Json(nullptr)},
              {"search", to_json(s, b, "mgs")},
              {"covering_pairs", pairs.size()},
              {"local_acyclicity", la.has_value()},
              {"class_size", cls.representatives.size()},
              {"ok", ok}},
         lines);
  return ok ? 0 : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quiver mutation, green sequences and cluster algebra certificates", "qmut"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  app.set_help_all_flag("--help-all");

  std::string quiver_path;
  std::string seq_text;
  std::string kind;
  int max_depth = -1;
  unsigned threads = 1;
  std::string strategy = "bfs";
  bool no_prune = false;
  bool no_obstructions = false;
  std::size_t max_quivers = ClassCaps{}.max_quivers;
  std::string dump_dir;
  std::string poly_text;
  std::string poly_file;
  std::string degrees_text;
  int direction = 0;
  int la_depth = LaCaps{}.mutation_depth;
  std::string cert_path;
  std::string case_name;
  std::string host = "127.0.0.1";
  int port = 8080;

  auto add_quiver = [&](CLI::App* c) { c->add_option("--quiver", quiver_path, "Quiver document")->required(); };
  auto add_seq = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--seq", seq_text, "Mutation sequence, e.g. 1,4,3");
    if (required) opt->required();
  };

  auto* mutate_cmd = app.add_subcommand("mutate", "Mutate a quiver along a sequence");
  add_quiver(mutate_cmd);
  add_seq(mutate_cmd, true);

  auto* frame_cmd = app.add_subcommand("frame", "Print the framed quiver");
  add_quiver(frame_cmd);

  auto* replay_cmd = app.add_subcommand("replay", "Replay a sequence from the framed quiver");
  add_quiver(replay_cmd);
  add_seq(replay_cmd, true);

  auto* verify_cmd = app.add_subcommand("verify", "Check a green, maximal green or green-to-red sequence");
  add_quiver(verify_cmd);
  add_seq(verify_cmd, true);
  verify_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"green", "mgs", "g2r"}));

  auto* search_cmd = app.add_subcommand("search", "Search for a maximal green or green-to-red sequence");
  add_quiver(search_cmd);
  search_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"mgs", "g2r"}));
  search_cmd->add_option("--max-depth", max_depth, "Depth cap (default $QMUT_MAX_DEPTH or 10)");
  search_cmd->add_option("--threads", threads)->check(CLI::Range(1U, 256U));
  search_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"bfs", "iddfs"}));
  search_cmd->add_flag("--no-prune", no_prune, "Do not skip heads of multiple arrows");
  search_cmd->add_flag("--no-obstructions", no_obstructions, "Skip the no-MGS certificates");

  auto* class_cmd = app.add_subcommand("class", "Mutation class operations");
  class_cmd->require_subcommand(1);
  auto* class_enum = class_cmd->add_subcommand("enumerate", "Enumerate the mutation class");
  add_quiver(class_enum);
  class_enum->add_option("--max-quivers", max_quivers);
  class_enum->add_option("--dump", dump_dir, "Write one document per representative and an index");
  auto* class_finite = class_cmd->add_subcommand("finite", "Decide mutation finiteness");
  add_quiver(class_finite);
  auto* class_gcds = class_cmd->add_subcommand("gcds", "Column gcds");
  add_quiver(class_gcds);
  auto* class_acyclic = class_cmd->add_subcommand("acyclic", "Look for an acyclic quiver in the class");
  add_quiver(class_acyclic);
  class_acyclic->add_option("--max-quivers", max_quivers);
  auto* class_coprime = class_cmd->add_subcommand("coprime", "Coprimality over the enumerated class");
  add_quiver(class_coprime);
  class_coprime->add_option("--max-quivers", max_quivers);

  auto* obstruct_cmd = app.add_subcommand("obstruct", "Obstructions");
  obstruct_cmd->require_subcommand(1);
  auto* ob_coloring = obstruct_cmd->add_subcommand("coloring", "Admissible coloring or refutation");
  add_quiver(ob_coloring);
  auto* ob_cycle = obstruct_cmd->add_subcommand("cycle", "Oriented cycle of multiple arrows");
  add_quiver(ob_cycle);
  auto* ob_nomgs = obstruct_cmd->add_subcommand("no-mgs", "No-MGS certificate");
  add_quiver(ob_nomgs);
  auto* ob_class = obstruct_cmd->add_subcommand("class-no-mgs", "Class-level no-MGS certificate");
  add_quiver(ob_class);

  auto* cover_cmd = app.add_subcommand("cover", "Covering pairs and local acyclicity");
  cover_cmd->require_subcommand(1);
  auto* cover_pairs = cover_cmd->add_subcommand("pairs", "Covering pair arrows");
  add_quiver(cover_pairs);
  auto* cover_cert = cover_cmd->add_subcommand("certificate", "Local-acyclicity certificate");
  add_quiver(cover_cert);
  cover_cert->add_option("--mutation-depth", la_depth);

  auto* upper_cmd = app.add_subcommand("upper", "Upper cluster algebra tools");
  upper_cmd->require_subcommand(1);
  auto* upper_check = upper_cmd->add_subcommand("check", "Depth-1 upper cluster algebra membership");
  add_quiver(upper_check);
  upper_check->add_option("--poly", poly_text, "Laurent expression in x1..xn, y1..yn");
  upper_check->add_option("--poly-file", poly_file, "Expression or Laurent document");
  upper_check->add_option("--direction", direction, "Single direction (1-based)");
  auto* upper_grading = upper_cmd->add_subcommand("grading", "Grading validity and degree");
  add_quiver(upper_grading);
  upper_grading->add_option("--degrees", degrees_text)->required();
  upper_grading->add_option("--poly", poly_text);
  upper_grading->add_option("--poly-file", poly_file);

  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster variables");
  cluster_cmd->require_subcommand(1);
  auto* cluster_var = cluster_cmd->add_subcommand("variable", "Last mutated cluster variable");
  add_quiver(cluster_var);
  add_seq(cluster_var, false);

  auto* check_cmd = app.add_subcommand("check", "Re-validate a certificate document");
  check_cmd->add_option("--certificate", cert_path)->required();

  auto* paper_cmd = app.add_subcommand("paper", "Reproduction cases");
  paper_cmd->require_subcommand(1);
  auto* reproduce = paper_cmd->add_subcommand("reproduce", "Run a shipped case");
  reproduce->add_option("case", case_name)->required()->check(CLI::IsMember({"qce", "x7", "markov"}));

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP session service");
  serve_cmd->add_option("--port", port)->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const Output o{out, format == "structured"};
  try {
    auto quiver = [&] { return load_quiver(quiver_path); };
    auto matrix = [&] { return quiver().principal(); };

    if (*mutate_cmd) {
      IceQuiver q = quiver();
      const auto seq = MutationSequence::parse(seq_text, q.mutable_count());
      for (int k : seq.steps()) q = mutate(q, k);
      o.emit(to_json(q), matrix_lines(q));
      return 0;
    }
    if (*frame_cmd) {
      const IceQuiver q = frame(matrix());
      o.emit(to_json(q), matrix_lines(q));
      return 0;
    }
    if (*replay_cmd) {
      const ExchangeMatrix b = matrix();
      const auto seq = MutationSequence::parse(seq_text, b.size());
      const ReplayTrace t = replay(b, seq);
      Json steps = Json::array();
      std::vector<std::string> lines{"start  " + colors_text(t.statuses[0])};
      for (std::size_t s = 0; s < seq.size(); ++s) {
        const auto& f = t.flags[s];
        steps.push_back(Json{{"vertex", seq.steps()[s] + 1},
                             {"green", f.mutated_green},
                             {"head_of_multiple_arrow", f.head_of_multiple_arrow},
                             {"colors", to_json(t.statuses[s + 1])}});
        lines.push_back("mu" + std::to_string(seq.steps()[s] + 1) + (f.mutated_green ? " green " : " red   ") +
                        colors_text(t.statuses[s + 1]) + (f.head_of_multiple_arrow ? "  (head of multiple arrow)" : ""));
      }
      o.emit(Json{{"steps", steps}, {"final", to_json(t.states.back())}}, lines);
      return 0;
    }
    if (*verify_cmd) {
      const ExchangeMatrix b = matrix();
      const auto seq = MutationSequence::parse(seq_text, b.size());
      const bool ok = kind == "green" ? verify_green(b, seq)
                      : kind == "mgs" ? verify_maximal_green(b, seq)
                                      : verify_green_to_red(b, seq);
      const char* name = kind == "green" ? "green" : kind == "mgs" ? "maximal green" : "green-to-red";
      o.emit(Json{{"kind", kind}, {"sequence", to_json(seq)}, {"valid", ok}},
             {seq.to_string() + (ok ? " is a " : " is not a ") + name + " sequence"});
      return ok ? 0 : kExitNegative;
    }
    if (*search_cmd) {
      const ExchangeMatrix b = matrix();
      SearchOptions opt;
      opt.threads = threads;
      opt.prune_bad_heads = !no_prune;
      opt.check_obstructions = !no_obstructions;
      opt.strategy = strategy == "iddfs" ? SearchStrategy::IterativeDeepening : SearchStrategy::BreadthFirst;
      const int depth = max_depth >= 0 ? max_depth : default_depth();
      const SearchOutcome r = kind == "mgs" ? search_mgs(b, depth, opt) : search_g2r(b, depth, opt);
      const Json doc = to_json(r, b, kind);
      std::string line;
      if (const auto* f = std::get_if<Found>(&r)) {
        line = "found: " + f->sequence.to_string();
      } else if (std::holds_alternative<ExhaustedToDepth>(r)) {
        line = "none up to depth " + std::to_string(depth);
      } else {
        const auto& c = std::get<Obstructed>(r).certificate;
        line = std::holds_alternative<MultipleArrowCycle>(c.kind)
                   ? "obstructed: multiple-arrow cycle (" + join(std::get<MultipleArrowCycle>(c.kind).vertices) + ")"
                   : std::string("obstructed: class-level certificate");
      }
      o.emit(doc, {line});
      return std::holds_alternative<Found>(r) ? 0 : kExitNegative;
    }
    if (*class_enum) {
      const MutationClass c = enumerate_class(matrix(), {max_quivers, ClassCaps{}.max_multiplicity});
      if (!dump_dir.empty()) write_class_dump(c, dump_dir);
      std::vector<std::string> lines{std::to_string(c.representatives.size()) + " quivers" +
                                     (c.complete ? "" : " (incomplete: cap reached)")};
      for (std::size_t r = 0; r < c.representatives.size(); ++r) {
        lines.push_back("#" + std::to_string(r + 1) + " " + canonical_hash(c.representatives[r]));
      }
      o.emit(class_index_json(c), lines);
      return 0;
    }
    if (*class_finite) {
      const bool f = is_mutation_finite(matrix());
      o.emit(Json{{"mutation_finite", f}}, {std::string("mutation finite: ") + verdict(f)});
      return 0;
    }
    if (*class_gcds) {
      const IceQuiver q = quiver();
      const auto g = q.frozen_count() ? column_gcds(q) : column_gcds(q.principal());
      o.emit(Json{{"column_gcds", g}}, {"column gcds: " + join_values(g)});
      return 0;
    }
    if (*class_acyclic) {
      const ExchangeMatrix b = matrix();
      const auto r = class_contains_acyclic(b, {max_quivers, ClassCaps{}.max_multiplicity});
      if (const auto* f = std::get_if<AcyclicFound>(&r)) {
        o.emit(Json{{"outcome", "found"}, {"sequence", to_json(MutationSequence(f->sequence))}, {"quiver", to_json(f->endpoint)}},
               {"acyclic after mutating " + (f->sequence.empty() ? std::string("nothing") : join(f->sequence))});
        return 0;
      }
      if (const auto* ref = std::get_if<ImpossibleByColoring>(&r)) {
        o.emit(Json{{"outcome", "impossible"}, {"refutation", to_json(ColoringResult(ref->refutation), b)}},
               {"no acyclic quiver in the class: no admissible coloring"});
        return kExitNegative;
      }
      o.emit(Json{{"outcome", "not_within_cap"}}, {"no acyclic quiver found within the cap"});
      return kExitNegative;
    }
    if (*class_coprime) {
      const MutationClass c = enumerate_class(matrix(), {max_quivers, ClassCaps{}.max_multiplicity});
      bool all = true;
      for (const auto& r : c.representatives) all &= is_coprime_matrix(r);
      const std::string label = c.complete ? "verified over enumerated class" : "checked over a partial class";
      o.emit(Json{{"coprime", all}, {"complete", c.complete}, {"quivers", c.representatives.size()}, {"label", label}},
             {std::string("coprime: ") + verdict(all) + " (" + label + ", " + std::to_string(c.representatives.size()) +
              " quivers)"});
      return all ? 0 : kExitNegative;
    }
    if (*ob_coloring) {
      const ExchangeMatrix b = matrix();
      const ColoringResult r = admissible_coloring(b);
      std::vector<std::string> lines;
      if (const auto* c = std::get_if<Coloring>(&r)) {
        for (std::size_t t = 0; t < c->arcs.size(); ++t) {
          lines.push_back(std::to_string(c->arcs[t].first + 1) + "->" + std::to_string(c->arcs[t].second + 1) + " " +
                          std::to_string(c->values[t]));
        }
        if (lines.empty()) lines.push_back("empty coloring (no arcs)");
      } else {
        lines.push_back("no admissible coloring; contradictory cycles:");
        for (const auto& cyc : std::get<ColoringRefutation>(r).cycles) {
          lines.push_back("  (" + join(cyc.vertices) + ")" + (cyc.oriented ? " oriented" : ""));
        }
      }
      o.emit(to_json(r, b), lines);
      return std::holds_alternative<Coloring>(r) ? 0 : kExitNegative;
    }
    if (*ob_cycle) {
      const auto c = multiple_arrow_cycle(matrix());
      o.emit(Json{{"cycle", c ? to_json(MutationSequence(*c)) : Json(nullptr)}},
             {c ? "multiple-arrow cycle (" + join(*c) + ")" : std::string("no multiple-arrow cycle")});
      return c ? 0 : kExitNegative;
    }
    if (*ob_nomgs || *ob_class) {
      const ExchangeMatrix b = matrix();
      const auto c = *ob_nomgs ? no_mgs_certificate(b) : class_no_mgs_certificate(b);
      if (!c) {
        o.emit(Json{{"certificate", nullptr}}, {"no certificate"});
        return kExitNegative;
      }
      std::string line;
      if (const auto* m = std::get_if<MultipleArrowCycle>(&c->kind)) {
        line = "multiple-arrow cycle (" + join(m->vertices) + ")";
      } else {
        const auto& cl = std::get<ClassLevelObstruction>(c->kind);
        line = "class level: column gcds (" + join_values(cl.column_gcds) + "), " +
               std::to_string(cl.refutation.cycles.size()) + " contradictory cycles";
      }
      o.emit(to_json(*c), {line});
      return 0;
    }
    if (*cover_pairs) {
      const IceQuiver q = quiver();
      const auto pairs = covering_pairs(q);
      std::vector<std::string> lines;
      for (const auto& [i, j] : pairs) lines.push_back(std::to_string(i + 1) + "->" + std::to_string(j + 1));
      if (lines.empty()) lines.push_back("no covering pairs");
      o.emit(covering_pairs_json(q, pairs), lines);
      return 0;
    }
    if (*cover_cert) {
      LaCaps caps;
      caps.mutation_depth = la_depth;
      const auto la = local_acyclicity_certificate(quiver(), caps);
      if (!la) {
        o.emit(Json{{"certificate", nullptr}}, {"unknown: no certificate within the caps"});
        return kExitNegative;
      }
      std::vector<std::string> lines;
      std::function<void(const LaNode&, int)> walk = [&](const LaNode& node, int depth) {
        std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
        std::vector<int> path;
        for (int k : node.path) path.push_back(node.labels[k]);
        const std::string mut = path.empty() ? "" : " after mutating " + join(path);
        if (node.is_leaf()) {
          lines.push_back(pad + "acyclic" + mut);
          return;
        }
        lines.push_back(pad + "covering arrow " + std::to_string(node.labels[node.arrow->first] + 1) + "->" +
                        std::to_string(node.labels[node.arrow->second] + 1) + mut);
        walk(node.children[0], depth + 1);
        walk(node.children[1], depth + 1);
      };
      walk(*la, 0);
      o.emit(to_json(*la), lines);
      return 0;
    }
    if (*upper_check) {
      const ExchangeMatrix b = matrix();
      const LaurentPoly p = read_poly(poly_text, poly_file, b.size());
      std::vector<bool> verdicts;
      if (direction != 0) {
        if (direction < 1 || direction > b.size()) throw UsageError("direction out of range");
        verdicts.push_back(in_adjacent_laurent_ring(p, b, direction - 1));
      } else {
        verdicts = adjacent_membership(p, b);
      }
      bool all = true;
      std::vector<std::string> lines;
      for (std::size_t k = 0; k < verdicts.size(); ++k) {
        const int dir = direction != 0 ? direction : static_cast<int>(k) + 1;
        lines.push_back("direction " + std::to_string(dir) + ": " + verdict(verdicts[k]));
        all &= verdicts[k];
      }
      lines.push_back(std::string("member: ") + verdict(all));
      o.emit(Json{{"directions", verdicts}, {"member", all}}, lines);
      return all ? 0 : kExitNegative;
    }
    if (*upper_grading) {
      const ExchangeMatrix b = matrix();
      const GradingVector d{parse_degrees(degrees_text)};
      const bool valid = grading_check(b, d);
      Json doc{{"valid", valid}};
      std::vector<std::string> lines{std::string("grading valid: ") + verdict(valid)};
      if (!poly_text.empty() || !poly_file.empty()) {
        const auto deg = degree(read_poly(poly_text, poly_file, b.size()), d);
        doc["degree"] = deg ? Json(*deg) : Json(nullptr);
        lines.push_back("degree: " + (deg ? std::to_string(*deg) : std::string("not homogeneous")));
      }
      o.emit(doc, lines);
      return valid ? 0 : kExitNegative;
    }
    if (*cluster_var) {
      const ExchangeMatrix b = matrix();
      const auto seq = MutationSequence::parse(seq_text, b.size());
      const LaurentPoly v = cluster_variable(b, seq);
      o.emit(to_json(v), {v.to_string()});
      return 0;
    }
    if (*check_cmd) {
      std::ifstream in(cert_path);
      if (!in) throw UsageError("cannot read " + cert_path);
      Json cert;
      try {
        cert = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw UsageError(std::string("malformed certificate: ") + e.what());
      }
      const Json r = check_json(cert);
      o.emit(r, {r["ok"].get<bool>() ? "certificate valid" : "certificate rejected: " + r["reason"].get<std::string>()});
      return r["ok"].get<bool>() ? 0 : kExitNegative;
    }
    if (*reproduce) {
      if (case_name == "qce") return reproduce_qce(o);
      if (case_name == "x7") return reproduce_x7(o);
      return reproduce_markov(o);
    }
    if (*serve_cmd) {
      SessionStore store;
      Service service(store, default_depth());
      err << "serving on " << host << ":" << port << '\n';
      if (!service.listen(host, port)) {
        err << "error: cannot listen on " << host << ":" << port << '\n';
        return kExitNegative;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNegative;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace qmut
