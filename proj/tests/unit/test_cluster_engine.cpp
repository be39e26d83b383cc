#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "qmut/cluster_engine.hpp"
#include "qmut/errors.hpp"

using namespace qmut;

namespace {

const ExchangeMatrix kA2 = ExchangeMatrix::from_rows({{0, 1}, {-1, 0}});

const ExchangeMatrix kB1 = ExchangeMatrix::from_rows({{0, 1, -1, 1, -1, 1, -1},
                                                      {-1, 0, 2, 0, 0, 0, 0},
                                                      {1, -2, 0, 0, 0, 0, 0},
                                                      {-1, 0, 0, 0, 2, 0, 0},
                                                      {1, 0, 0, -2, 0, 0, 0},
                                                      {-1, 0, 0, 0, 0, 0, 2},
                                                      {1, 0, 0, 0, 0, -2, 0}});
const ExchangeMatrix kB2 = ExchangeMatrix::from_rows({{0, -1, 1, -1, 1, -1, 1},
                                                      {1, 0, 1, 0, -1, 0, -1},
                                                      {-1, -1, 0, 1, 0, 1, 0},
                                                      {1, 0, -1, 0, 1, 0, -1},
                                                      {-1, 1, 0, -1, 0, 1, 0},
                                                      {1, 0, -1, 0, -1, 0, 1},
                                                      {-1, 1, 0, 1, 0, -1, 0}});

std::vector<Rational> point(std::mt19937_64& rng, int n) {
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) {
    out.emplace_back(static_cast<long>(1 + rng() % 7), static_cast<unsigned long>(1 + rng() % 5));
    out.back().canonicalize();
  }
  return out;
}

}  // namespace

TEST_CASE("A2 exchange relation") {
  const Seed s = initial_seed(kA2);
  CHECK(s.cluster.size() == 2);
  CHECK(s.ice == frame(kA2));
  const auto [out, in] = exchange_terms(s, 0);
  CHECK(out == parse_laurent("y1*x2", 2, 2));
  CHECK(in == parse_laurent("1", 2, 2));
  const Seed m = seed_mutate(s, 0);
  CHECK(m.cluster[0] == parse_laurent("(y1*x2+1)/x1", 2, 2));
  CHECK(m.cluster[1] == s.cluster[1]);
  CHECK(m.ice == mutate(s.ice, 0));
}

TEST_CASE("A2 cluster variables") {
  CHECK(cluster_variable(kA2, MutationSequence::parse("", 2)) == parse_laurent("x2", 2, 2));
  CHECK(cluster_variable(kA2, MutationSequence::parse("1,2", 2)) == parse_laurent("(x1 + y1*y2*x2 + y2)/(x1*x2)", 2, 2));
  // The pentagon closes: five alternating mutations return the initial variables.
  Seed s = initial_seed(kA2);
  for (int k : {0, 1, 0, 1, 0}) s = seed_mutate(s, k);
  CHECK(s.cluster[0] == parse_laurent("x2", 2, 2));
  CHECK(s.cluster[1] == parse_laurent("x1", 2, 2));
}

TEST_CASE("initial seed on an arbitrary ice quiver") {
  const IceQuiver q(kA2, {{0, -1}});  // 1* -> 2
  const Seed s = initial_seed(q);
  CHECK(s.cluster[0].ny() == 1);
  const auto [out, in] = exchange_terms(s, 1);
  CHECK(out == parse_laurent("1", 2, 1));
  CHECK(in == parse_laurent("x1*y1", 2, 1));
}

TEST_CASE("non-Laurent exchange is reported") {
  Seed s = initial_seed(kA2);
  s.cluster[0] = s.cluster[0] + LaurentPoly::constant(2, 2, 1);
  CHECK_THROWS_AS(seed_mutate(s, 0), LaurentViolation);
}

TEST_CASE("randomized: cluster variables match numeric exchange") {
  const auto cases = corpus::laurent_corpus(77, 80);
  std::mt19937_64 rng(1);
  for (const auto& c : cases.cases) {
    const int n = c.b.size();
    const auto xs = point(rng, n);
    const auto ys = point(rng, n);
    const LaurentPoly v = cluster_variable(c.b, MutationSequence(c.sequence));
    const auto expect = oracle::numeric_cluster(c.b, c.sequence, xs, ys);
    const int last = c.sequence.empty() ? n - 1 : c.sequence.back();
    REQUIRE(v.evaluate(xs, ys) == expect[last]);
  }
}

TEST_CASE("coprimality") {
  CHECK(is_coprime_matrix(kA2));
  CHECK(is_coprime_matrix(kB1));
  CHECK(is_coprime_matrix(kB2));
  CHECK_FALSE(is_coprime_matrix(ExchangeMatrix(2)));
  CHECK_FALSE(is_coprime_matrix(ExchangeMatrix::from_rows({{0, 1, 1}, {-1, 0, 0}, {-1, 0, 0}})));
  CHECK(is_coprime_matrix(frame(ExchangeMatrix(2))));
}

TEST_CASE("adjacent Laurent rings") {
  const LaurentPoly x1 = LaurentPoly::x(2, 2, 0);
  CHECK(adjacent_membership(x1, kA2) == std::vector<bool>{true, true});
  const LaurentPoly inv = parse_laurent("x1^-1", 2, 2);
  CHECK(adjacent_membership(inv, kA2) == std::vector<bool>{false, true});
  const LaurentPoly x1p = parse_laurent("(y1*x2+1)/x1", 2, 2);
  CHECK(in_adjacent_laurent_ring(x1p, kA2, 0));
  CHECK(initial_exchange_binomial(kA2, 0) == parse_laurent("y1*x2+1", 2, 2));
  CHECK(depth1_upper_membership(x1p, kA2));
  CHECK_FALSE(depth1_upper_membership(inv, kA2));
}

TEST_CASE("Z on the X7 quiver") {
  const LaurentPoly z = parse_laurent("(y2*y3*x2^2+x3^2+y2*x1)/(x1*x2)", 7, 7);
  CHECK(adjacent_membership(z, kB1) == std::vector<bool>{false, false, true, true, true, true, true});
  CHECK_FALSE(depth1_upper_membership(z, kB1));
  CHECK(initial_exchange_binomial(kB1, 0) == parse_laurent("y1*x2*x4*x6 + x3*x5*x7", 7, 7));
}

TEST_CASE("grading") {
  const GradingVector d{{2, 1, 1, 1, 1, 1, 1}};
  CHECK(grading_check(kB1, d));
  CHECK(grading_check(kB2, GradingVector{{1, 1, 1, 1, 1, 1, 1}}));
  CHECK_FALSE(grading_check(kB1, GradingVector{{1, 1, 1, 1, 1, 1, 1}}));
  const LaurentPoly z = parse_laurent("(y2*y3*x2^2+x3^2+y2*x1)/(x1*x2)", 7, 7);
  CHECK(degree(z, d) == -1);
  CHECK_FALSE(degree(parse_laurent("x1 + x2", 7, 7), d));
  CHECK_FALSE(degree(LaurentPoly(7, 7), d));
}

TEST_CASE("oriented triangle along 1,2,3,1,2,3") {
  const auto tri = ExchangeMatrix::from_rows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
  const std::vector<int> seq{0, 1, 2, 0, 1, 2};
  const LaurentPoly v = cluster_variable(tri, MutationSequence(seq));
  for (const auto& t : v.terms()) CHECK(t.coeff > 0);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const auto xs = point(rng, 3);
    const auto ys = point(rng, 3);
    CHECK(v.evaluate(xs, ys) == oracle::numeric_cluster(tri, seq, xs, ys)[2]);
  }
}
