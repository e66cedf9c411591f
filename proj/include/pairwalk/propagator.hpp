#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pairwalk/hamiltonian.hpp"
#include "pairwalk/lattice.hpp"

namespace pairwalk {

// Complex amplitude vector over dense site indices at a fixed time; the
// register label is suppressed (the state stays in the dressed sector).
struct Wavefunction {
  double time = 0.0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// Amplitudes cached on the uniform grid {0, dt, ..., n_steps*dt}; column k
// holds the state at time k*dt.
struct WavefunctionGrid {
  double dt = 0.0;
  int n_steps = 0;
  Eigen::MatrixXcd psi;  // dimension x (n_steps+1)

  double time_at(int k) const { return k * dt; }
};

struct AmplitudeSample {
  double t = 0.0;
  std::complex<double> amplitude;
};

// Unitary evolution psi_t = V exp(-i Lambda t) V^T psi_0 through the exact
// spectral decomposition of the reduced Hamiltonian. Immutable after
// construction; evolve is pure and callable concurrently.
class Propagator {
 public:
  explicit Propagator(const ReducedHamiltonian& h);

  const SpectralDecomposition& decomposition() const { return decomp_; }
  int dimension() const { return static_cast<int>(decomp_.eigenvalues.size()); }

  Wavefunction evolve(const Wavefunction& psi0, double t) const;
  WavefunctionGrid evolve_grid(const Wavefunction& psi0, double dt, int n_steps) const;
  std::vector<AmplitudeSample> amplitude_series(const Wavefunction& psi0,
                                                const std::vector<double>& times,
                                                PairState site) const;

 private:
  Eigen::VectorXcd phases(const Eigen::VectorXcd& modes, double dt) const;

  SpectralDecomposition decomp_;
  Eigen::MatrixXcd vectors_c_;
  SiteIndexing indexing_;
};

// |psi_0> localized at (1,2); the suppressed register label is +1, matching
// the dressing sign of (1,2).
Wavefunction initial_state(const SiteIndexing& idx);

// |psi(x)|^2 per site; sums to 1 for a normalized state.
Eigen::VectorXd probability_profile(const Wavefunction& psi);

}  // namespace pairwalk
