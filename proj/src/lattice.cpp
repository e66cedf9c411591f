#include "pairwalk/lattice.hpp"

#include <stdexcept>
#include <string>

namespace pairwalk {

void ChainConfig::validate() const {
  if (s < 4)
    throw std::invalid_argument("chain length s must be >= 4, got " +
                                std::to_string(s));
  if (!(1 < a && a < b && b < s))
    throw std::invalid_argument("impurity positions must satisfy 1 < a < b < s, got a=" +
                                std::to_string(a) + " b=" + std::to_string(b) +
                                " s=" + std::to_string(s));
}

SiteIndexing::SiteIndexing(const ChainConfig& config) : s_(config.s) {
  config.validate();
  states_.reserve(static_cast<std::size_t>(s_) * (s_ - 1) / 2);
  table_.assign(static_cast<std::size_t>(s_) * s_, -1);
  for (int x1 = 1; x1 <= s_; ++x1) {
    for (int x2 = x1 + 1; x2 <= s_; ++x2) {
      table_[static_cast<std::size_t>(x1 - 1) * s_ + (x2 - 1)] =
          static_cast<int>(states_.size());
      states_.push_back(PairState{x1, x2});
    }
  }
}

bool SiteIndexing::contains(PairState p) const {
  return 1 <= p.x1 && p.x1 < p.x2 && p.x2 <= s_;
}

int SiteIndexing::index_of(PairState p) const {
  if (!contains(p))
    throw std::invalid_argument("invalid pair state (" + std::to_string(p.x1) +
                                "," + std::to_string(p.x2) + ") for s=" +
                                std::to_string(s_));
  return table_[static_cast<std::size_t>(p.x1 - 1) * s_ + (p.x2 - 1)];
}

PairState SiteIndexing::state_of(int index) const {
  if (index < 0 || index >= total())
    throw std::out_of_range("site index " + std::to_string(index) +
                            " out of range [0," + std::to_string(total()) + ")");
  return states_[static_cast<std::size_t>(index)];
}

SiteIndexing enumerate_sites(const ChainConfig& config) {
  return SiteIndexing(config);
}

std::vector<PairState> neighbours(PairState p, const ChainConfig& config) {
  const int s = config.s;
  std::vector<PairState> out;
  out.reserve(4);
  if (p.x1 - 1 >= 1) out.push_back({p.x1 - 1, p.x2});
  if (p.x1 + 1 < p.x2) out.push_back({p.x1 + 1, p.x2});
  if (p.x2 - 1 > p.x1) out.push_back({p.x1, p.x2 - 1});
  if (p.x2 + 1 <= s) out.push_back({p.x1, p.x2 + 1});
  return out;
}

}  // namespace pairwalk
