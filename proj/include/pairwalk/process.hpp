#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pairwalk/hamiltonian.hpp"
#include "pairwalk/propagator.hpp"

namespace pairwalk {

// Jump rates v_t(y|x) on directed lattice edges at a fixed time, stored
// parallel to the Hamiltonian adjacency: rates[i][k] belongs to the edge
// h.rows[i][k]. Rates out of sites with |psi| below the zero threshold are 0.
struct RateField {
  double time = 0.0;
  std::vector<std::vector<double>> rates;
};

// v_t(y|x) = |h(x,y)| |psi(y)/psi(x)| [1 + sin(Arg psi(x) - Arg psi(y) + Arg h(x,y))]
// with Arg h = 0 for +1/2 entries and pi for -1/2 entries.
RateField rate_field(const ReducedHamiltonian& h, const Wavefunction& psi,
                     double zero_threshold = 1e-12);

// Max over sites x with |psi(x)| > 1e-6 of the mismatch between the central
// difference of |psi(x)|^2 and the net probability flux of the rate field.
// The three states must form a symmetric stencil (t-d, t, t+d).
double continuity_residual(const ReducedHamiltonian& h, const Wavefunction& before,
                           const Wavefunction& at, const Wavefunction& after);

struct SamplerSettings {
  double dt = 0.005;
  double horizon = 25.0;
  int n_traj = 10000;
  std::uint64_t seed = 12345;
  double max_step_prob = 0.1;   // cap on the summed per-step jump probability
  double zero_threshold = 1e-12;
  int n_workers = 0;            // 0: one thread per hardware core

  void validate() const;
};

struct Jump {
  double time = 0.0;
  PairState site;
};

// Piecewise-constant sample path: state(t) is the start site until the
// first jump, then the site of the latest jump with time <= t.
struct Trajectory {
  PairState start{1, 2};
  std::vector<Jump> jumps;
  double horizon = 0.0;
  int subdivision_overflows = 0;  // step-halving hit the depth cap
  int node_holds = 0;             // steps held at a site with |psi| below threshold

  PairState state_at(double t) const;
};

// First-order scheme for the time-inhomogeneous jump process: at step k the
// walker at x jumps to neighbour y with probability v_{k dt}(y|x) dt. Steps
// whose summed jump probability exceeds the cap are halved recursively (the
// rate field stays frozen at the grid time within a step). Each trajectory
// draws from its own counter-seeded RNG stream, so results are independent
// of scheduling and worker count.
class JumpProcessSampler {
 public:
  JumpProcessSampler(const ReducedHamiltonian& h, const WavefunctionGrid& grid,
                     const SamplerSettings& settings);

  Trajectory sample(int traj_index) const;
  std::vector<Trajectory> run() const;  // n_traj trajectories, merged by index

  static constexpr int kMaxSubdivisionDepth = 20;

 private:
  struct Edge {
    int target = 0;
    double abs_h = 0.0;
    double sign = 0.0;  // +1 for positive entries, -1 for negative
  };

  void advance(int& site, int step, double t0, double len, int depth,
               Trajectory& out, std::uint64_t& rng_state) const;

  SamplerSettings settings_;
  PairState start_;
  int start_index_ = 0;
  int n_steps_ = 0;
  std::vector<std::vector<Edge>> edges_;
  std::vector<PairState> site_of_;
  Eigen::MatrixXd modulus_;  // dimension x (n_steps+1)
  Eigen::MatrixXd phase_;
};

// One-shot conveniences over JumpProcessSampler.
Trajectory sample_trajectory(const ReducedHamiltonian& h, const WavefunctionGrid& grid,
                             const SamplerSettings& settings, int traj_index);
std::vector<Trajectory> ensemble(const ReducedHamiltonian& h, const WavefunctionGrid& grid,
                                 const SamplerSettings& settings);

}  // namespace pairwalk
