#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "pairwalk/lattice.hpp"

using namespace pairwalk;

TEST_CASE("chain config validation") {
  CHECK_NOTHROW(ChainConfig{7, 4, 5}.validate());
  CHECK_NOTHROW(ChainConfig{25, 11, 13}.validate());
  CHECK_NOTHROW(ChainConfig{4, 2, 3}.validate());
  CHECK_THROWS_AS((ChainConfig{7, 1, 5}.validate()), std::invalid_argument);  // a > 1
  CHECK_THROWS_AS((ChainConfig{7, 5, 5}.validate()), std::invalid_argument);  // a < b
  CHECK_THROWS_AS((ChainConfig{7, 5, 4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ChainConfig{7, 4, 7}.validate()), std::invalid_argument);  // b < s
  CHECK_THROWS_AS((ChainConfig{3, 1, 2}.validate()), std::invalid_argument);  // s >= 4
}

TEST_CASE("site counts") {
  CHECK(enumerate_sites({7, 4, 5}).total() == 21);
  CHECK(enumerate_sites({25, 11, 13}).total() == 300);
}

TEST_CASE("s=4 exhaustive enumeration") {
  const SiteIndexing idx = enumerate_sites({4, 2, 3});
  const std::vector<PairState> want{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  REQUIRE(idx.total() == 6);
  CHECK(idx.states() == want);  // lexicographic order is part of the contract
}

TEST_CASE("index round trip and containment") {
  const SiteIndexing idx = enumerate_sites({7, 4, 5});
  for (int i = 0; i < idx.total(); ++i) CHECK(idx.index_of(idx.state_of(i)) == i);
  CHECK(idx.contains({1, 2}));
  CHECK(idx.contains({6, 7}));
  CHECK_FALSE(idx.contains({3, 3}));
  CHECK_FALSE(idx.contains({5, 3}));
  CHECK_FALSE(idx.contains({0, 2}));
  CHECK_FALSE(idx.contains({6, 8}));
  CHECK_THROWS_AS(idx.index_of({3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(idx.state_of(21), std::out_of_range);
  CHECK_THROWS_AS(idx.state_of(-1), std::out_of_range);
}

TEST_CASE("neighbour examples") {
  const ChainConfig cfg{7, 4, 5};
  CHECK(neighbours({1, 2}, cfg) == std::vector<PairState>{{1, 3}});
  CHECK(neighbours({3, 5}, cfg) ==
        std::vector<PairState>{{2, 5}, {4, 5}, {3, 4}, {3, 6}});
  CHECK(neighbours({6, 7}, cfg) == std::vector<PairState>{{5, 7}});
}

TEST_CASE("neighbour structure is symmetric with the right edge count") {
  for (const int s : {4, 7, 25}) {
    const ChainConfig cfg{s, 2, 3};
    const SiteIndexing idx = enumerate_sites(cfg);
    int degree_sum = 0;
    for (const PairState& p : idx.states()) {
      const auto nb = neighbours(p, cfg);
      degree_sum += static_cast<int>(nb.size());
      for (const PairState& q : nb) {
        CHECK(q.x1 < q.x2);
        CHECK(idx.contains(q));
        const auto back = neighbours(q, cfg);
        CHECK(std::find(back.begin(), back.end(), p) != back.end());
        CHECK(std::abs(q.x1 - p.x1) + std::abs(q.x2 - p.x2) == 1);
      }
      const std::set<PairState> dedup(nb.begin(), nb.end());
      CHECK(dedup.size() == nb.size());
    }
    // Interior x2-hops: (s-1)(s-2)/2 per direction of each coordinate; the
    // closed form for the triangular lattice is (s-1)(s-2) undirected edges.
    CHECK(degree_sum == 2 * (s - 1) * (s - 2));
  }
}
