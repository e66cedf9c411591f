#include "pairwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pairwalk/rng.hpp"

namespace pairwalk {

std::optional<double> first_passage_time(const Trajectory& tr, PairState target,
                                         double window) {
  for (const Jump& j : tr.jumps) {
    if (j.time >= window) break;
    if (j.site == target) return j.time;
  }
  return std::nullopt;
}

std::optional<double> first_passage_time(const Trajectory& tr, PairState target) {
  return first_passage_time(tr, target, tr.horizon);
}

double sojourn_time(const Trajectory& tr, PairState target, double window) {
  double total = 0.0;
  PairState site = tr.start;
  double seg_start = 0.0;
  for (const Jump& j : tr.jumps) {
    if (site == target) total += std::min(j.time, window) - std::min(seg_start, window);
    site = j.site;
    seg_start = j.time;
    if (seg_start >= window) break;
  }
  if (site == target && seg_start < window) total += window - seg_start;
  return total;
}

double sojourn_time(const Trajectory& tr, PairState target) {
  return sojourn_time(tr, target, tr.horizon);
}

PassageRecord passage_record(const Trajectory& tr, PairState target, double window,
                             int traj_index) {
  PassageRecord rec;
  rec.traj_index = traj_index;
  rec.first_passage = first_passage_time(tr, target, window);
  rec.hit = rec.first_passage.has_value();
  if (rec.hit) rec.sojourn = sojourn_time(tr, target, window);
  return rec;
}

EmpiricalCDF::EmpiricalCDF(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw EmptySubsample("empirical CDF needs a nonempty sample");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCDF::operator()(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

double EmpiricalCDF::quantile(double q) const {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile level outside [0,1]");
  const std::size_t n = samples_.size();
  if (n == 1) return samples_[0];
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return samples_[n - 1];
  const double frac = h - static_cast<double>(lo);
  return samples_[lo] + frac * (samples_[lo + 1] - samples_[lo]);
}

double EmpiricalCDF::mean() const {
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

ConditionalStats conditional_cdfs(const std::vector<Trajectory>& ensemble,
                                  PairState target, double window) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  std::vector<double> fpt;
  std::vector<double> sojourn;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const PassageRecord rec =
        passage_record(ensemble[i], target, window, static_cast<int>(i));
    if (!rec.hit) continue;
    fpt.push_back(*rec.first_passage);
    sojourn.push_back(*rec.sojourn);
  }
  if (fpt.empty())
    throw EmptySubsample("no trajectory hits the target within the window");
  const int hits = static_cast<int>(fpt.size());
  return ConditionalStats{EmpiricalCDF(std::move(fpt)),
                          EmpiricalCDF(std::move(sojourn)),
                          static_cast<double>(hits) / static_cast<double>(ensemble.size()),
                          hits};
}

BootstrapInterval bootstrap_difference(
    const std::vector<double>& a, const std::vector<double>& b,
    const std::function<double(std::vector<double>&)>& stat, int n_resamples,
    double confidence, std::uint64_t seed) {
  if (a.empty() || b.empty()) throw EmptySubsample("bootstrap needs nonempty samples");
  if (n_resamples < 1) throw std::invalid_argument("need at least one resample");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("confidence must lie in (0,1)");

  std::vector<double> wa = a;
  std::vector<double> wb = b;
  BootstrapInterval out;
  out.point = stat(wa) - stat(wb);

  std::uint64_t rng = seed;
  std::vector<double> diffs(static_cast<std::size_t>(n_resamples));
  for (int r = 0; r < n_resamples; ++r) {
    for (std::size_t i = 0; i < a.size(); ++i)
      wa[i] = a[splitmix64(rng) % a.size()];
    for (std::size_t i = 0; i < b.size(); ++i)
      wb[i] = b[splitmix64(rng) % b.size()];
    diffs[static_cast<std::size_t>(r)] = stat(wa) - stat(wb);
  }

  EmpiricalCDF cdf(std::move(diffs));
  const double alpha = (1.0 - confidence) / 2.0;
  out.lo = cdf.quantile(alpha);
  out.hi = cdf.quantile(1.0 - alpha);
  return out;
}

double mean_of(std::vector<double>& sample) {
  return std::accumulate(sample.begin(), sample.end(), 0.0) /
         static_cast<double>(sample.size());
}

double iqr_of(std::vector<double>& sample) {
  EmpiricalCDF cdf(sample);
  return cdf.iqr();
}

}  // namespace pairwalk
