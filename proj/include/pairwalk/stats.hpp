#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pairwalk/lattice.hpp"
#include "pairwalk/process.hpp"

namespace pairwalk {

// Earliest arrival time of the trajectory at `target` within (0, window).
// Arrivals are jump events: presence at the start site at t=0 does not
// count, a revisit does.
std::optional<double> first_passage_time(const Trajectory& tr, PairState target,
                                         double window);
std::optional<double> first_passage_time(const Trajectory& tr, PairState target);

// Lebesgue measure of {t in (0, window): state(t) = target}. Includes the
// initial holding interval when the trajectory starts at the target.
double sojourn_time(const Trajectory& tr, PairState target, double window);
double sojourn_time(const Trajectory& tr, PairState target);

struct PassageRecord {
  int traj_index = 0;
  bool hit = false;
  std::optional<double> first_passage;
  std::optional<double> sojourn;
};

PassageRecord passage_record(const Trajectory& tr, PairState target, double window,
                             int traj_index);

// Right-continuous empirical step CDF over a sorted sample.
class EmpiricalCDF {
 public:
  explicit EmpiricalCDF(std::vector<double> samples);  // throws if empty

  double operator()(double x) const;  // fraction of samples <= x
  double quantile(double q) const;    // linear interpolation between order stats
  double mean() const;
  double median() const { return quantile(0.5); }
  double iqr() const { return quantile(0.75) - quantile(0.25); }
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& sorted() const { return samples_; }

 private:
  std::vector<double> samples_;
};

struct EmptySubsample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// First-passage and sojourn CDFs over the subsample of trajectories that
// hit the target within (0, window).
struct ConditionalStats {
  EmpiricalCDF fpt;
  EmpiricalCDF sojourn;
  double hit_fraction = 0.0;
  int hits = 0;
};

ConditionalStats conditional_cdfs(const std::vector<Trajectory>& ensemble,
                                  PairState target, double window);

// Percentile bootstrap interval for stat(a) - stat(b) at the given two-sided
// confidence level. Resampling is deterministic in the seed.
struct BootstrapInterval {
  double lo = 0.0;
  double hi = 0.0;
  double point = 0.0;
};

BootstrapInterval bootstrap_difference(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       const std::function<double(std::vector<double>&)>& stat,
                                       int n_resamples, double confidence,
                                       std::uint64_t seed);

// Statistics for bootstrap_difference; both may reorder their argument.
double mean_of(std::vector<double>& sample);
double iqr_of(std::vector<double>& sample);

}  // namespace pairwalk
