#pragma once

#include <compare>
#include <vector>

namespace pairwalk {

// Open spin chain of length s with impurity links a and b, 1 < a < b < s.
// The `free_case` flag selects the variant with identity operators on every
// link; a and b are still carried along (they locate the target site).
struct ChainConfig {
  int s = 7;
  int a = 4;
  int b = 5;
  bool free_case = false;

  void validate() const;  // throws std::invalid_argument
};

// Ordered walker pair (x1, x2) with 1 <= x1 < x2 <= s. Coinciding walkers
// are excluded at the type level; the basis contains only x1 < x2.
struct PairState {
  int x1 = 0;
  int x2 = 0;

  friend bool operator==(const PairState&, const PairState&) = default;
  friend auto operator<=>(const PairState&, const PairState&) = default;
};

// Dense bijective indexing of all pair states, lexicographic by (x1, x2).
// The ordering is stable: amplitude vectors, matrices and output files all
// share it.
class SiteIndexing {
 public:
  explicit SiteIndexing(const ChainConfig& config);

  int total() const { return static_cast<int>(states_.size()); }
  int chain_length() const { return s_; }

  int index_of(PairState p) const;          // throws on invalid state
  PairState state_of(int index) const;      // throws on out-of-range index
  bool contains(PairState p) const;

  const std::vector<PairState>& states() const { return states_; }

 private:
  int s_ = 0;
  std::vector<PairState> states_;
  std::vector<int> table_;  // (x1-1)*s + (x2-1) -> dense index, -1 if invalid
};

SiteIndexing enumerate_sites(const ChainConfig& config);

// Pair states reachable by moving one coordinate by +-1 while keeping
// 1 <= x1 < x2 <= s. Order: (x1-1,x2), (x1+1,x2), (x1,x2-1), (x1,x2+1),
// skipping moves that leave the lattice or would collide the walkers.
std::vector<PairState> neighbours(PairState p, const ChainConfig& config);

}  // namespace pairwalk
