// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "properties.hpp"
#include "qmut/canonical.hpp"
#include "qmut/certificate_check.hpp"
#include "qmut/class_explorer.hpp"
#include "qmut/cluster_engine.hpp"
#include "qmut/obstructions.hpp"
#include "qmut/sequence_engine.hpp"
#include "qmut/serialize.hpp"

using namespace qmut;

namespace {

// Time limits in seconds.
constexpr double kG2rLimit = 1.0;
constexpr double kClassLevelLimit = 1.0;
constexpr double kLocalAcyclicityLimit = 5.0;
constexpr double kX7Limit = 30.0;
constexpr double kMarkovLimit = 1.0;
constexpr double kSuiteLimit = 60.0;
constexpr double kAcyclicMgsLimit = 120.0;
constexpr double kG2rInvarianceLimit = 120.0;

// Minimum case counts.
constexpr int kInvolutionCases = 1000;
constexpr int kSignCoherenceCases = 500;
constexpr int kGcdCases = 500;
constexpr int kLaurentCases = 200;
constexpr int kQuiverRuleCases = 500;
constexpr int kAcyclicQuivers = 50;

constexpr int kG2rDepth = 10;

ExchangeMatrix load(const char* name) {
  return load_quiver(std::filesystem::path(QMUT_DATA_DIR) / name).principal();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double limit, const std::function<Verdict()>& body) {
  props::Timer timer;
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = timer.seconds();
  const bool ok = v.pass && secs < limit;
  if (!ok) ++failures;
  std::ostringstream line;
  line << (ok ? "PASS " : "FAIL ") << name << " [" << secs << " s, limit " << limit << " s] " << v.detail;
  std::cout << line.str() << std::endl;
}

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<Entry>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

int main() {
  const ExchangeMatrix bce = load("qce.quiver");

  criterion("qce green-to-red replay", kG2rLimit, [&] {
    const auto s = MutationSequence::parse("1,4,3,4,2,4", 4);
    const ReplayTrace t = replay(bce, s);
    const bool red = all_red(t.states.back());
    const bool checked = check_certificate(sequence_certificate("green_to_red", bce, s)).ok;
    return Verdict{red && checked, "1,4,3,4,2,4 all red: " + yn(red) + ", checker: " + yn(checked)};
  });

  criterion("qce class-level no-MGS certificate", kClassLevelLimit, [&] {
    const auto cert = class_no_mgs_certificate(bce);
    if (!cert) return Verdict{false, "no certificate"};
    const auto& lvl = std::get<ClassLevelObstruction>(cert->kind);
    const bool gcds = lvl.column_gcds == std::vector<Entry>{2, 2, 2, 2};
    const auto& cycles = lvl.refutation.cycles;
    const bool triangles = cycles.size() == 4 && std::all_of(cycles.begin(), cycles.end(), [](const ChordlessCycle& c) {
                             return c.vertices.size() == 3;
                           });
    const bool checked = check_certificate(to_json(*cert)).ok;
    return Verdict{gcds && triangles && checked, "gcds (" + join(lvl.column_gcds) + "), witness of " +
                                                     std::to_string(cycles.size()) + " cycles, triangles: " +
                                                     yn(triangles) + ", checker: " + yn(checked)};
  });

  criterion("qce local-acyclicity certificate", kLocalAcyclicityLimit, [&] {
    const auto la = local_acyclicity_certificate(IceQuiver(bce));
    if (!la) return Verdict{false, "no certificate within caps"};
    const bool root = la->arrow == Arc{0, 1} && la->children.size() == 2;
    if (!root) return Verdict{false, "unexpected root"};
    const LaNode& at1 = la->children[0];
    const LaNode& at2 = la->children[1];
    const bool leaf2 = at2.is_leaf() && at2.path.empty();
    const bool leaf1 = at1.is_leaf() && at1.path.size() <= 2;
    const bool checked = check_certificate(to_json(*la)).ok;
    return Verdict{leaf1 && leaf2 && checked,
                   "root arrow 1->2, freeze at 2 acyclic immediately: " + yn(leaf2) + ", freeze at 1 acyclic after " +
                       std::to_string(at1.path.size()) + " mutations, checker: " + yn(checked)};
  });

  criterion("X7 suite", kX7Limit, [&] {
    const ExchangeMatrix b1 = load("x7_b1.quiver");
    const ExchangeMatrix b2 = load("x7_b2.quiver");
    const MutationClass cls = enumerate_class(b1);
    const bool two = cls.complete && cls.representatives.size() == 2;
    const ExchangeMatrix c2 = canonical_form(b2).matrix;
    const bool has_b2 = std::find(cls.representatives.begin(), cls.representatives.end(), c2) != cls.representatives.end();
    const bool coprime = is_coprime_matrix(b1) && is_coprime_matrix(b2);

    std::ifstream zin(std::filesystem::path(QMUT_DATA_DIR) / "x7_z.txt");
    std::string ztext;
    std::getline(zin, ztext);
    const LaurentPoly z = parse_laurent(ztext, 7, 7);
    const auto dirs = adjacent_membership(z, b1);
    const bool upper = depth1_upper_membership(z, b1);
    std::string dir_text;
    for (std::size_t k = 0; k < dirs.size(); ++k) dir_text += (dirs[k] ? "T" : "F");

    const GradingVector d{{2, 1, 1, 1, 1, 1, 1}};
    const bool grading = grading_check(b1, d);
    const auto deg = degree(z, d);
    const bool deg_ok = deg && *deg <= 0;
    const bool pass = two && has_b2 && coprime && upper && grading && deg_ok;
    return Verdict{pass, "class size " + std::to_string(cls.representatives.size()) + " (B2 in class: " +
                             yn(has_b2) + "), coprime: " + yn(coprime) + ", Z directions 1-7: " + dir_text +
                             ", grading valid: " + yn(grading) + ", deg(Z) = " +
                             (deg ? std::to_string(*deg) : std::string("not homogeneous"))};
  });

  criterion("Markov obstruction", kMarkovLimit, [&] {
    const ExchangeMatrix m = load("markov.quiver");
    const auto cyc = multiple_arrow_cycle(m);
    const bool cycle = cyc && *cyc == std::vector<int>{0, 1, 2};
    const bool obstructed = std::holds_alternative<Obstructed>(search_mgs(m, kG2rDepth));
    return Verdict{cycle && obstructed, "cycle (1,2,3): " + yn(cycle) + ", search obstructed: " + yn(obstructed)};
  });

  {
    // Each suite has its own limit; the criterion line covers all five.
    props::Timer timer;
    const std::vector<std::pair<props::SuiteResult, int>> suites = {
        {props::involution_suite(1, kInvolutionCases), kInvolutionCases},
        {props::sign_coherence_suite(2, kSignCoherenceCases), kSignCoherenceCases},
        {props::gcd_invariance_suite(3, kGcdCases), kGcdCases},
        {props::laurent_suite(4, kLaurentCases), kLaurentCases},
        {props::quiver_rule_suite(5, kQuiverRuleCases), kQuiverRuleCases},
    };
    const double total = timer.seconds();
    criterion("property suites", kSuiteLimit, [&] {
      bool all = true;
      std::string detail;
      for (const auto& [r, min] : suites) {
        all &= r.ok(min, kSuiteLimit);
        detail += (detail.empty() ? "" : "; ") + r.summary();
      }
      return Verdict{all, detail + " (total " + std::to_string(total) + " s)"};
    });
  }

  criterion("acyclic MGS corpus", kAcyclicMgsLimit, [&] {
    const props::SuiteResult r = props::acyclic_mgs_suite(6, kAcyclicQuivers);
    return Verdict{r.violations == 0 && r.cases >= kAcyclicQuivers, r.summary()};
  });

  criterion("g2r class invariance sampling", kG2rInvarianceLimit, [&] {
    bool all = true;
    std::string detail;
    for (int k = 0; k < 4; ++k) {
      const ExchangeMatrix m = mutate(bce, k);
      const auto r = search_g2r(m, kG2rDepth);
      const auto* f = std::get_if<Found>(&r);
      const bool ok = f != nullptr && verify_green_to_red(m, f->sequence);
      all &= ok;
      detail += (k ? "; " : "") + std::string("mu") + std::to_string(k + 1) + ": " +
                (ok ? f->sequence.to_string() : std::string("not found"));
    }
    return Verdict{all, detail};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
