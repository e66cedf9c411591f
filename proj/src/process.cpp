#include "pairwalk/process.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "pairwalk/rng.hpp"

namespace pairwalk {

namespace {

// 1 + sin(dphi + Arg h) with Arg h in {0, pi} folded into the sign of sin.
inline double direction_factor(double dphi, double sign) {
  return std::max(0.0, 1.0 + sign * std::sin(dphi));
}

}  // namespace

RateField rate_field(const ReducedHamiltonian& h, const Wavefunction& psi,
                     double zero_threshold) {
  const int n = h.dimension();
  if (psi.amplitudes.size() != n)
    throw std::invalid_argument("wavefunction dimension mismatch");

  RateField field;
  field.time = psi.time;
  field.rates.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& row = h.rows[static_cast<std::size_t>(i)];
    auto& out = field.rates[static_cast<std::size_t>(i)];
    out.assign(row.size(), 0.0);
    const std::complex<double> ax = psi.amplitudes(i);
    const double mod_x = std::abs(ax);
    if (mod_x <= zero_threshold) continue;  // hold at nodes
    const double phase_x = std::arg(ax);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::complex<double> ay = psi.amplitudes(row[k].site);
      const double sign = row[k].value > 0.0 ? 1.0 : -1.0;
      out[k] = std::abs(row[k].value) * (std::abs(ay) / mod_x) *
               direction_factor(phase_x - std::arg(ay), sign);
    }
  }
  return field;
}

double continuity_residual(const ReducedHamiltonian& h, const Wavefunction& before,
                           const Wavefunction& at, const Wavefunction& after) {
  const double d1 = at.time - before.time;
  const double d2 = after.time - at.time;
  if (d1 <= 0.0 || std::abs(d2 - d1) > 1e-9 * std::max(1.0, d1))
    throw std::invalid_argument("continuity stencil must be symmetric around the centre time");

  const int n = h.dimension();
  const RateField field = rate_field(h, at);
  const Eigen::VectorXd p0 = probability_profile(at);
  const Eigen::VectorXd ddt =
      (probability_profile(after) - probability_profile(before)) / (d1 + d2);

  Eigen::VectorXd flux = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = h.rows[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < row.size(); ++k) {
      const double outflow = field.rates[static_cast<std::size_t>(i)][k] * p0(i);
      flux(row[k].site) += outflow;
      flux(i) -= outflow;
    }
  }

  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    if (std::abs(at.amplitudes(i)) > 1e-6)
      worst = std::max(worst, std::abs(ddt(i) - flux(i)));
  return worst;
}

void SamplerSettings::validate() const {
  if (dt <= 0.0) throw std::invalid_argument("sampler dt must be positive");
  if (horizon < 0.0) throw std::invalid_argument("sampler horizon must be nonnegative");
  if (n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
  if (!(max_step_prob > 0.0 && max_step_prob < 1.0))
    throw std::invalid_argument("max_step_prob must lie in (0,1)");
  if (zero_threshold < 0.0) throw std::invalid_argument("zero_threshold must be nonnegative");
  if (n_workers < 0) throw std::invalid_argument("n_workers must be nonnegative");
  const double steps = horizon / dt;
  if (std::abs(steps - std::llround(steps)) > 1e-6)
    throw std::invalid_argument("horizon must be a whole number of dt steps");
}

PairState Trajectory::state_at(double t) const {
  PairState s = start;
  for (const Jump& j : jumps) {
    if (j.time > t) break;
    s = j.site;
  }
  return s;
}

JumpProcessSampler::JumpProcessSampler(const ReducedHamiltonian& h,
                                       const WavefunctionGrid& grid,
                                       const SamplerSettings& settings)
    : settings_(settings), start_{1, 2} {
  settings.validate();
  n_steps_ = static_cast<int>(std::llround(settings.horizon / settings.dt));
  if (grid.dt != settings.dt)
    throw std::invalid_argument("wavefunction grid step does not match sampler dt");
  if (grid.n_steps < n_steps_)
    throw std::invalid_argument("wavefunction grid does not cover the sampler horizon");
  if (grid.psi.rows() != h.dimension())
    throw std::invalid_argument("wavefunction grid dimension mismatch");

  start_index_ = h.indexing.index_of(start_);
  site_of_ = h.indexing.states();

  const int n = h.dimension();
  edges_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (const auto& e : h.rows[static_cast<std::size_t>(i)])
      edges_[static_cast<std::size_t>(i)].push_back(
          {e.site, std::abs(e.value), e.value > 0.0 ? 1.0 : -1.0});

  modulus_ = grid.psi.leftCols(n_steps_ + 1).cwiseAbs();
  phase_.resize(n, n_steps_ + 1);
  for (int k = 0; k <= n_steps_; ++k)
    for (int i = 0; i < n; ++i)
      phase_(i, k) = std::arg(grid.psi(i, k));
}

void JumpProcessSampler::advance(int& site, int step, double t0, double len,
                                 int depth, Trajectory& out,
                                 std::uint64_t& rng_state) const {
  const double mod_x = modulus_(site, step);
  if (mod_x <= settings_.zero_threshold) {
    ++out.node_holds;
    return;
  }

  const auto& edges = edges_[static_cast<std::size_t>(site)];
  const double phase_x = phase_(site, step);
  double rates[4];
  double total = 0.0;
  const int ne = static_cast<int>(edges.size());
  for (int k = 0; k < ne; ++k) {
    const Edge& e = edges[static_cast<std::size_t>(k)];
    rates[k] = e.abs_h * (modulus_(e.target, step) / mod_x) *
               direction_factor(phase_x - phase_(e.target, step), e.sign);
    total += rates[k];
  }

  if (total * len > settings_.max_step_prob) {
    if (depth < kMaxSubdivisionDepth) {
      advance(site, step, t0, len * 0.5, depth + 1, out, rng_state);
      advance(site, step, t0 + len * 0.5, len * 0.5, depth + 1, out, rng_state);
      return;
    }
    ++out.subdivision_overflows;  // proceed with the oversized substep
  }

  const double u = uniform01(rng_state);
  double acc = 0.0;
  for (int k = 0; k < ne; ++k) {
    acc += rates[k] * len;
    if (u < acc) {
      site = edges[static_cast<std::size_t>(k)].target;
      const double t_jump = t0 + len;
      if (t_jump < settings_.horizon)
        out.jumps.push_back({t_jump, site_of_[static_cast<std::size_t>(site)]});
      return;
    }
  }
}

Trajectory JumpProcessSampler::sample(int traj_index) const {
  Trajectory out;
  out.start = start_;
  out.horizon = settings_.horizon;
  std::uint64_t rng = stream_seed(settings_.seed, static_cast<std::uint64_t>(traj_index));
  int site = start_index_;
  for (int k = 0; k < n_steps_; ++k)
    advance(site, k, k * settings_.dt, settings_.dt, 0, out, rng);
  return out;
}

std::vector<Trajectory> JumpProcessSampler::run() const {
  const int n = settings_.n_traj;
  std::vector<Trajectory> out(static_cast<std::size_t>(n));
  int workers = settings_.n_workers > 0
                    ? settings_.n_workers
                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);

  if (workers <= 1) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sample(i);
    return out;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&]() {
    try {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        out[static_cast<std::size_t>(i)] = sample(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failed) std::rethrow_exception(error);
  return out;
}

Trajectory sample_trajectory(const ReducedHamiltonian& h, const WavefunctionGrid& grid,
                             const SamplerSettings& settings, int traj_index) {
  return JumpProcessSampler(h, grid, settings).sample(traj_index);
}

std::vector<Trajectory> ensemble(const ReducedHamiltonian& h, const WavefunctionGrid& grid,
                                 const SamplerSettings& settings) {
  return JumpProcessSampler(h, grid, settings).run();
}

}  // namespace pairwalk
