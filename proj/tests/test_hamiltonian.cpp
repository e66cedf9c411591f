#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "doctest.h"
#include "pairwalk/hamiltonian.hpp"

using namespace pairwalk;

namespace {

double entry_between(const ReducedHamiltonian& h, PairState p, PairState q) {
  return h.entry(h.indexing.index_of(p), h.indexing.index_of(q));
}

}  // namespace

TEST_CASE("reduced matrix entries") {
  const ReducedHamiltonian h = build_reduced({7, 4, 5});
  CHECK(entry_between(h, {2, 5}, {2, 6}) == 0.5);
  CHECK(entry_between(h, {1, 2}, {1, 3}) == -0.5);
  CHECK(entry_between(h, {1, 2}, {1, 2}) == 0.0);
  CHECK(entry_between(h, {5, 6}, {5, 7}) == -0.5);   // x1 > a: no flip
  CHECK(entry_between(h, {1, 3}, {2, 3}) == -0.5);   // x1-hop: never flipped
  CHECK(entry_between(h, {1, 3}, {1, 5}) == 0.0);    // not adjacent

  const ReducedHamiltonian h35 = build_reduced({7, 3, 5});
  CHECK(entry_between(h35, {4, 5}, {4, 6}) == -0.5);  // x1 > a=3
  CHECK(entry_between(h35, {3, 5}, {3, 6}) == 0.5);

  const ReducedHamiltonian hf = build_reduced({7, 4, 5, true});
  CHECK(entry_between(hf, {2, 5}, {2, 6}) == -0.5);
}

TEST_CASE("reduced matrix is bitwise symmetric with zero diagonal") {
  for (const bool free_case : {false, true}) {
    const ReducedHamiltonian h = build_reduced({7, 3, 5, free_case});
    const Eigen::MatrixXd m = h.dense();
    for (int i = 0; i < h.dimension(); ++i) {
      CHECK(m(i, i) == 0.0);
      for (int j = 0; j < h.dimension(); ++j) CHECK(m(i, j) == m(j, i));
    }
  }
}

TEST_CASE("flipped edges") {
  const auto edges45 = flipped_edges({7, 4, 5});
  REQUIRE(edges45.size() == 4);
  for (int x1 = 1; x1 <= 4; ++x1) {
    CHECK(edges45[static_cast<std::size_t>(x1 - 1)] ==
          std::pair<PairState, PairState>{{x1, 5}, {x1, 6}});
  }
  CHECK(flipped_edges({7, 3, 5}).size() == 3);
  CHECK(flipped_edges({7, 4, 5, true}).empty());
}

TEST_CASE("positive entries match flipped_edges exactly") {
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{4, 5}, {3, 5}, {2, 6}}) {
    const ChainConfig cfg{7, a, b};
    const ReducedHamiltonian h = build_reduced(cfg);
    std::vector<std::pair<PairState, PairState>> positive;
    for (int i = 0; i < h.dimension(); ++i)
      for (const auto& e : h.rows[static_cast<std::size_t>(i)])
        if (e.value > 0.0 && i < e.site)
          positive.push_back({h.indexing.state_of(i), h.indexing.state_of(e.site)});
    CHECK(positive == flipped_edges(cfg));
    CHECK(positive.size() == static_cast<std::size_t>(a));
  }
}

TEST_CASE("dressing sign") {
  const DressingSign zeta({7, 4, 5});
  CHECK(zeta({1, 2}) == 1);    // both <= a
  CHECK(zeta({5, 6}) == 1);    // both > a
  CHECK(zeta({3, 5}) == -1);   // straddles a
  CHECK(zeta({4, 5}) == -1);
  CHECK(zeta({1, 4}) == 1);    // boundary: x2 = a has theta(0) = 0

  const DressingSign zeta_free({7, 4, 5, true});
  CHECK(zeta_free({3, 5}) == 1);  // free variant: register never rotates
}

TEST_CASE("sector hops act on the register as expected") {
  const ChainConfig cfg{7, 4, 5};
  const SectorHamiltonian sector = build_sector(cfg);
  const SiteIndexing idx = enumerate_sites(cfg);
  const int i_45 = idx.index_of({4, 6});   // hop 4->5 of x1 crosses link a=4
  const int i_56 = idx.index_of({5, 6});
  // sigma_1 at link a: zeta flips, amplitude -1/2 off the register diagonal.
  CHECK(sector.matrix(sector.index_of(i_45, +1), sector.index_of(i_56, -1)) == -0.5);
  CHECK(sector.matrix(sector.index_of(i_45, +1), sector.index_of(i_56, +1)) == 0.0);
  // sigma_3 at link b=5: diagonal in zeta with the register eigenvalue.
  const int i_b0 = idx.index_of({2, 5});
  const int i_b1 = idx.index_of({2, 6});
  CHECK(sector.matrix(sector.index_of(i_b0, +1), sector.index_of(i_b1, +1)) == -0.5);
  CHECK(sector.matrix(sector.index_of(i_b0, -1), sector.index_of(i_b1, -1)) == 0.5);
  // Plain link: -1/2 times the register identity.
  const int i_12 = idx.index_of({1, 2});
  const int i_13 = idx.index_of({1, 3});
  CHECK(sector.matrix(sector.index_of(i_12, +1), sector.index_of(i_13, +1)) == -0.5);
  CHECK(sector.matrix(sector.index_of(i_12, -1), sector.index_of(i_13, -1)) == -0.5);
  CHECK(sector.matrix(sector.index_of(i_12, +1), sector.index_of(i_13, -1)) == 0.0);
}

TEST_CASE("free sector is block diagonal") {
  const SectorHamiltonian sector = build_sector({7, 4, 5, true});
  const int n = sector.pair_dimension;
  CHECK(sector.matrix.block(0, n, n, n).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sector.matrix.block(n, 0, n, n).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sector.matrix.block(0, 0, n, n) == sector.matrix.block(n, n, n, n));
}

TEST_CASE("embedding isometry") {
  const ChainConfig cfg{7, 4, 5};
  const SiteIndexing idx = enumerate_sites(cfg);
  const DressingSign zeta(cfg);
  const Eigen::MatrixXd e = embed_plus(zeta, idx);
  REQUIRE(e.rows() == 2 * idx.total());
  REQUIRE(e.cols() == idx.total());
  const Eigen::MatrixXd gram = e.transpose() * e;
  CHECK((gram - Eigen::MatrixXd::Identity(idx.total(), idx.total()))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  // Column of (1,2) sits in the zeta=+1 block, of (3,5) in the -1 block.
  CHECK(e(idx.index_of({1, 2}), idx.index_of({1, 2})) == 1.0);
  CHECK(e(idx.total() + idx.index_of({3, 5}), idx.index_of({3, 5})) == 1.0);
}

TEST_CASE("projector conservation and compression") {
  for (const ChainConfig cfg :
       {ChainConfig{7, 4, 5}, ChainConfig{7, 3, 5}, ChainConfig{7, 4, 5, true},
        ChainConfig{9, 3, 7}}) {
    const ConservationReport report = verify_conservation(cfg);
    CHECK(report.pass);
    CHECK(report.commutator_norm < 1e-12);
    CHECK(report.embedding_residual < 1e-12);
  }
  CHECK_THROWS_AS(verify_conservation({50, 11, 13}), std::invalid_argument);
}

TEST_CASE("spectral radius within the Gershgorin bound") {
  for (const bool free_case : {false, true}) {
    const ReducedHamiltonian h = build_reduced({25, 11, 13, free_case});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
    CHECK(solver.eigenvalues().cwiseAbs().maxCoeff() <= 3.0);
  }
}

TEST_CASE("adjacent impurities are gauge equivalent to the free chain") {
  for (const ChainConfig cfg : {ChainConfig{7, 4, 5}, ChainConfig{7, 2, 3},
                                ChainConfig{10, 5, 6}, ChainConfig{25, 12, 13}}) {
    CHECK(gauge_residual(cfg) == 0.0);
  }
  CHECK_THROWS_AS(gauge_residual({7, 3, 5}), std::invalid_argument);       // b != a+1
  CHECK_THROWS_AS(gauge_residual({7, 4, 5, true}), std::invalid_argument); // free
}
