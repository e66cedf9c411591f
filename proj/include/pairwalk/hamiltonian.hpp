#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <utility>
#include <vector>

#include "pairwalk/lattice.hpp"

namespace pairwalk {

// Reduced two-walker Hamiltonian on the pair lattice, stored as an
// adjacency list over dense site indices. Every entry is -1/2 except the
// edges {(x1,b),(x1,b+1)} with x1 <= a, which carry +1/2; the free variant
// is the plain -1/2 finite-difference Laplacian.
struct ReducedHamiltonian {
  struct Entry {
    int site = 0;
    double value = 0.0;
  };

  ChainConfig config;
  SiteIndexing indexing;
  std::vector<std::vector<Entry>> rows;  // rows[i]: nonzeros of row i

  explicit ReducedHamiltonian(const ChainConfig& cfg)
      : config(cfg), indexing(cfg) {}

  int dimension() const { return indexing.total(); }
  double entry(int i, int j) const;  // 0 if no edge
  Eigen::MatrixXd dense() const;
};

ReducedHamiltonian build_reduced(const ChainConfig& config);

// The undirected edges carrying +1/2: {(x1,b),(x1,b+1)} for x1 = 1..a.
// Empty in the free case.
std::vector<std::pair<PairState, PairState>> flipped_edges(const ChainConfig& config);

// Register eigenvalue paired with each pair state in the conserved sector:
// zeta(x1,x2) = (-1)^(theta(x1-a)+theta(x2-a)), theta(x) = 1 if x > 0 else 0.
// +1 when both coordinates are <= a or both > a, -1 otherwise. The free
// variant has no impurity, so its dressing is identically +1.
class DressingSign {
 public:
  explicit DressingSign(const ChainConfig& config);
  int operator()(PairState p) const;

 private:
  int a_ = 0;
  bool trivial_ = false;
};

// Two-excitation sector Hamiltonian with the ancilla register kept
// explicit, basis |(x1,x2), zeta>, zeta in {-1,+1}. Layout: the zeta=+1
// block occupies indices [0, n), the zeta=-1 block [n, 2n). A hop across
// link a flips zeta, a hop across link b multiplies by zeta, every other
// hop carries -1/2 times the identity on the register.
struct SectorHamiltonian {
  ChainConfig config;
  int pair_dimension = 0;
  Eigen::MatrixXd matrix;

  int index_of(int site_index, int zeta) const {
    return zeta == +1 ? site_index : pair_dimension + site_index;
  }
};

SectorHamiltonian build_sector(const ChainConfig& config);

// Isometry from the reduced basis into the sector basis: column p maps to
// the basis vector |p, zeta(p)>. Columns are orthonormal.
Eigen::MatrixXd embed_plus(const DressingSign& sign, const SiteIndexing& idx);

// Dense verification that the dressed projector commutes with the sector
// Hamiltonian and that its compression reproduces the reduced matrix.
struct ConservationReport {
  double commutator_norm = 0.0;      // ||[H_sector, P+]||_F
  double embedding_residual = 0.0;   // ||E^T H_sector E - h+||_F
  double threshold = 1e-12;
  bool pass = false;
};

ConservationReport verify_conservation(const ChainConfig& config);

// For b = a+1 the sign change D = diag((-1)^theta(x2-b)) maps the reduced
// matrix exactly onto the free Laplacian; returns max|D h D - L|.
double gauge_residual(const ChainConfig& config);

// Coordinate-list dump (row,col,value), one line per nonzero.
void dump_coo(const ReducedHamiltonian& h, std::ostream& os);

}  // namespace pairwalk
