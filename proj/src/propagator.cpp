#include "pairwalk/propagator.hpp"

#include <stdexcept>

namespace pairwalk {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};
}

Propagator::Propagator(const ReducedHamiltonian& h) : indexing_(h.config) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition of the reduced Hamiltonian failed");
  decomp_.eigenvalues = solver.eigenvalues();
  decomp_.eigenvectors = solver.eigenvectors();
  vectors_c_ = decomp_.eigenvectors.cast<std::complex<double>>();
}

Eigen::VectorXcd Propagator::phases(const Eigen::VectorXcd& modes, double dt) const {
  return (decomp_.eigenvalues.array().cast<std::complex<double>>() * (-kImag * dt))
      .exp()
      .matrix()
      .cwiseProduct(modes);
}

Wavefunction Propagator::evolve(const Wavefunction& psi0, double t) const {
  if (psi0.amplitudes.size() != dimension())
    throw std::invalid_argument("wavefunction dimension mismatch");
  const Eigen::VectorXcd modes = vectors_c_.transpose() * psi0.amplitudes;
  Wavefunction out;
  out.time = t;
  out.amplitudes = vectors_c_ * phases(modes, t - psi0.time);
  return out;
}

WavefunctionGrid Propagator::evolve_grid(const Wavefunction& psi0, double dt,
                                         int n_steps) const {
  if (dt <= 0.0) throw std::invalid_argument("grid step must be positive");
  if (n_steps < 0) throw std::invalid_argument("negative step count");
  const int n = dimension();
  const Eigen::VectorXcd modes = vectors_c_.transpose() * psi0.amplitudes;

  Eigen::MatrixXcd phased(n, n_steps + 1);
  for (int k = 0; k <= n_steps; ++k)
    phased.col(k) = phases(modes, k * dt - psi0.time);

  WavefunctionGrid grid;
  grid.dt = dt;
  grid.n_steps = n_steps;
  grid.psi = vectors_c_ * phased;
  return grid;
}

std::vector<AmplitudeSample> Propagator::amplitude_series(
    const Wavefunction& psi0, const std::vector<double>& times, PairState site) const {
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw std::invalid_argument("time grid must be strictly increasing");
  const int site_index = indexing_.index_of(site);
  std::vector<AmplitudeSample> series;
  series.reserve(times.size());
  for (const double t : times) {
    const Wavefunction psi = evolve(psi0, t);
    series.push_back({t, psi.amplitudes(site_index)});
  }
  return series;
}

Wavefunction initial_state(const SiteIndexing& idx) {
  Wavefunction psi;
  psi.time = 0.0;
  psi.amplitudes = Eigen::VectorXcd::Zero(idx.total());
  psi.amplitudes(idx.index_of(PairState{1, 2})) = 1.0;
  return psi;
}

Eigen::VectorXd probability_profile(const Wavefunction& psi) {
  return psi.amplitudes.cwiseAbs2();
}

}  // namespace pairwalk
