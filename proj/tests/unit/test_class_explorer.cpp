#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qmut/class_explorer.hpp"
#include "qmut/errors.hpp"

using namespace qmut;

namespace {

const ExchangeMatrix kBce = ExchangeMatrix::from_rows({{0, 2, 2, 4}, {-2, 0, -6, 2}, {-2, 6, 0, -2}, {-4, -2, 2, 0}});
const ExchangeMatrix kMarkov = ExchangeMatrix::from_rows({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
const ExchangeMatrix kA3 = ExchangeMatrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});

const ExchangeMatrix kB1 = ExchangeMatrix::from_rows({{0, 1, -1, 1, -1, 1, -1},
                                                      {-1, 0, 2, 0, 0, 0, 0},
                                                      {1, -2, 0, 0, 0, 0, 0},
                                                      {-1, 0, 0, 0, 2, 0, 0},
                                                      {1, 0, 0, -2, 0, 0, 0},
                                                      {-1, 0, 0, 0, 0, 0, 2},
                                                      {1, 0, 0, 0, 0, -2, 0}});

}  // namespace

TEST_CASE("A3 class matches brute-force enumeration") {
  const MutationClass c = enumerate_class(kA3);
  CHECK(c.complete);
  CHECK(c.representatives.size() == 4);
  CHECK(oracle::brute_class(kA3, 100).size() == 4);
  REQUIRE(c.edges.size() == 4);
  for (const auto& row : c.edges) {
    REQUIRE(row.size() == 3);
    for (int e : row) CHECK((e >= 0 && e < 4));
  }
}

TEST_CASE("Markov quiver is alone in its class") {
  const MutationClass c = enumerate_class(kMarkov);
  CHECK(c.complete);
  CHECK(c.representatives.size() == 1);
  CHECK(c.edges[0] == std::vector<int>{0, 0, 0});
  CHECK(is_mutation_finite(kMarkov));
}

TEST_CASE("X7 class has two quivers") {
  const MutationClass c = enumerate_class(kB1);
  CHECK(c.complete);
  CHECK(c.representatives.size() == 2);
  CHECK(is_mutation_finite(kB1));
}

TEST_CASE("caps produce a partial class") {
  ClassCaps caps;
  caps.max_quivers = 50;
  const MutationClass c = enumerate_class(kBce, caps);
  CHECK_FALSE(c.complete);
  CHECK(c.representatives.size() <= 50);
  CHECK_FALSE(is_mutation_finite(kBce));
}

TEST_CASE("finiteness of small quivers") {
  CHECK(is_mutation_finite(ExchangeMatrix::from_rows({{0, 7}, {-7, 0}})));
  CHECK(is_mutation_finite(ExchangeMatrix(5)));
  const auto k3 = ExchangeMatrix::from_rows({{0, 3, 0}, {-3, 0, 1}, {0, -1, 0}});
  CHECK_FALSE(is_mutation_finite(k3));
  // Two disjoint finite pieces stay finite.
  ExchangeMatrix two(5);
  two.set_arrows(0, 1, 1);
  two.set_arrows(1, 2, 1);
  two.set_arrows(3, 4, 5);
  CHECK(is_mutation_finite(two));
}

TEST_CASE("randomized: rank 3 class sizes agree with brute force") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const ExchangeMatrix b = oracle::random_matrix(rng, 3, 2);
    ClassCaps caps;
    caps.max_quivers = 60;
    const MutationClass c = enumerate_class(b, caps);
    const auto brute = oracle::brute_class(b, 61);
    if (c.complete) {
      CHECK(c.representatives.size() == brute.size());
    } else {
      CHECK(brute.size() > 60);
    }
  }
}

TEST_CASE("acyclic representative search") {
  const auto r = class_contains_acyclic(kA3);
  REQUIRE(std::holds_alternative<AcyclicFound>(r));
  CHECK(std::get<AcyclicFound>(r).sequence.empty());

  const auto cyc = ExchangeMatrix::from_rows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
  const auto rc = class_contains_acyclic(cyc);
  REQUIRE(std::holds_alternative<AcyclicFound>(rc));
  ExchangeMatrix e = cyc;
  for (int k : std::get<AcyclicFound>(rc).sequence) e = mutate(e, k);
  CHECK(e == std::get<AcyclicFound>(rc).endpoint);
  CHECK(is_acyclic(e));

  CHECK(std::holds_alternative<ImpossibleByColoring>(class_contains_acyclic(kBce)));
  // The Markov class is complete at one quiver and admits a coloring.
  CHECK(std::holds_alternative<NotWithinCap>(class_contains_acyclic(kMarkov)));
}

TEST_CASE("column gcds") {
  CHECK(column_gcds(kBce) == std::vector<Entry>{2, 2, 2, 2});
  CHECK(column_gcds(kA3) == std::vector<Entry>{1, 1, 1});
  CHECK(column_gcds(ExchangeMatrix(2)) == std::vector<Entry>{0, 0});
  CHECK(column_gcds(frame(kBce)) == std::vector<Entry>{1, 1, 1, 1});
}

TEST_CASE("randomized: column gcds are mutation invariant") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 4);
    ExchangeMatrix b = oracle::random_matrix(rng, n, 3);
    const auto g = column_gcds(b);
    for (int s = 0; s < 4; ++s) {
      b = mutate(b, static_cast<int>(rng() % n));
      REQUIRE(column_gcds(b) == g);
    }
  }
}
