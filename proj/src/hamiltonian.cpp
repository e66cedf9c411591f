#include "pairwalk/hamiltonian.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "pairwalk/io.hpp"

namespace pairwalk {

namespace {

inline int theta(int x) { return x > 0 ? 1 : 0; }

// True for the interference-corrected edges {(x1,b),(x1,b+1)}, x1 <= a.
bool flipped_edge(PairState p, PairState q, const ChainConfig& cfg) {
  if (cfg.free_case) return false;
  if (p.x1 != q.x1 || p.x1 > cfg.a) return false;
  const int lo = std::min(p.x2, q.x2);
  const int hi = std::max(p.x2, q.x2);
  return lo == cfg.b && hi == cfg.b + 1;
}

}  // namespace

double ReducedHamiltonian::entry(int i, int j) const {
  for (const Entry& e : rows[static_cast<std::size_t>(i)])
    if (e.site == j) return e.value;
  return 0.0;
}

Eigen::MatrixXd ReducedHamiltonian::dense() const {
  const int n = dimension();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (const Entry& e : rows[static_cast<std::size_t>(i)])
      m(i, e.site) = e.value;
  return m;
}

ReducedHamiltonian build_reduced(const ChainConfig& config) {
  config.validate();
  ReducedHamiltonian h(config);
  const int n = h.dimension();
  h.rows.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const PairState p = h.indexing.state_of(i);
    for (const PairState q : neighbours(p, config)) {
      const double v = flipped_edge(p, q, config) ? 0.5 : -0.5;
      h.rows[static_cast<std::size_t>(i)].push_back({h.indexing.index_of(q), v});
    }
  }
  return h;
}

std::vector<std::pair<PairState, PairState>> flipped_edges(const ChainConfig& config) {
  config.validate();
  std::vector<std::pair<PairState, PairState>> edges;
  if (config.free_case) return edges;
  for (int x1 = 1; x1 <= config.a; ++x1)
    edges.emplace_back(PairState{x1, config.b}, PairState{x1, config.b + 1});
  return edges;
}

DressingSign::DressingSign(const ChainConfig& config)
    : a_(config.a), trivial_(config.free_case) {
  config.validate();
}

int DressingSign::operator()(PairState p) const {
  if (trivial_) return +1;
  return (theta(p.x1 - a_) + theta(p.x2 - a_)) % 2 == 0 ? +1 : -1;
}

SectorHamiltonian build_sector(const ChainConfig& config) {
  config.validate();
  SectorHamiltonian sector;
  sector.config = config;
  const SiteIndexing idx(config);
  const int n = idx.total();
  sector.pair_dimension = n;
  sector.matrix = Eigen::MatrixXd::Zero(2 * n, 2 * n);

  for (int i = 0; i < n; ++i) {
    const PairState p = idx.state_of(i);
    for (const PairState q : neighbours(p, config)) {
      const int j = idx.index_of(q);
      // link crossed by the hop: {x,x+1} labelled by x
      const int link = p.x2 == q.x2 ? std::min(p.x1, q.x1) : std::min(p.x2, q.x2);
      for (const int zeta : {+1, -1}) {
        if (!config.free_case && link == config.a) {
          sector.matrix(sector.index_of(j, -zeta), sector.index_of(i, zeta)) += -0.5;
        } else if (!config.free_case && link == config.b) {
          sector.matrix(sector.index_of(j, zeta), sector.index_of(i, zeta)) += -0.5 * zeta;
        } else {
          sector.matrix(sector.index_of(j, zeta), sector.index_of(i, zeta)) += -0.5;
        }
      }
    }
  }
  return sector;
}

Eigen::MatrixXd embed_plus(const DressingSign& sign, const SiteIndexing& idx) {
  const int n = idx.total();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    const int zeta = sign(idx.state_of(i));
    e(zeta == +1 ? i : n + i, i) = 1.0;
  }
  return e;
}

ConservationReport verify_conservation(const ChainConfig& config) {
  config.validate();
  if (config.s > 40)
    throw std::invalid_argument("verify_conservation uses dense algebra, s <= 40 required");

  const SectorHamiltonian sector = build_sector(config);
  const ReducedHamiltonian reduced = build_reduced(config);
  const Eigen::MatrixXd e = embed_plus(DressingSign(config), reduced.indexing);
  const Eigen::MatrixXd p = e * e.transpose();

  ConservationReport report;
  report.commutator_norm = (sector.matrix * p - p * sector.matrix).norm();
  report.embedding_residual =
      (e.transpose() * sector.matrix * e - reduced.dense()).norm();
  report.pass = report.commutator_norm < report.threshold &&
                report.embedding_residual < report.threshold;
  return report;
}

double gauge_residual(const ChainConfig& config) {
  config.validate();
  if (config.free_case || config.b != config.a + 1)
    throw std::invalid_argument("gauge identity requires an interacting config with b = a+1");

  const ReducedHamiltonian h = build_reduced(config);
  ChainConfig free_cfg = config;
  free_cfg.free_case = true;
  const ReducedHamiltonian laplacian = build_reduced(free_cfg);

  const int n = h.dimension();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i)
    d(i) = theta(h.indexing.state_of(i).x2 - config.b) % 2 == 0 ? 1.0 : -1.0;

  const Eigen::MatrixXd residual =
      d.asDiagonal() * h.dense() * d.asDiagonal() - laplacian.dense();
  return residual.cwiseAbs().maxCoeff();
}

void dump_coo(const ReducedHamiltonian& h, std::ostream& os) {
  os << "row,col,value\n";
  for (int i = 0; i < h.dimension(); ++i)
    for (const ReducedHamiltonian::Entry& e : h.rows[static_cast<std::size_t>(i)])
      os << i << "," << e.site << "," << format_double(e.value) << "\n";
}

}  // namespace pairwalk
