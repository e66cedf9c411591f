#include "pairwalk/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pairwalk/io.hpp"
#include "pairwalk/propagator.hpp"
#include "pairwalk/rng.hpp"
#include "pairwalk/stats.hpp"

namespace pairwalk {

namespace {

using ordered_json = nlohmann::ordered_json;

// Runs `emit` against stdout when path is empty, else against a fresh file.
template <typename Emit>
void with_output(const std::string& path, Emit&& emit) {
  if (path.empty()) {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  emit(os);
  os.flush();
  if (!os) throw IoError("write failed: " + path);
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

struct Check {
  std::string name;
  bool pass = false;
  double threshold = 0.0;
  ordered_json detail;
};

void print_check(const Check& c) {
  std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
  for (const auto& [key, value] : c.detail.items())
    std::cout << " " << key << "=" << (value.is_number_float() ? sci(value.get<double>())
                                                               : value.dump());
  std::cout << " threshold=" << sci(c.threshold) << "\n";
}

int grid_steps(double t_max, double dt) {
  return static_cast<int>(std::floor(t_max / dt + 1e-9));
}

WavefunctionGrid sampler_grid(const Propagator& prop, const SiteIndexing& idx,
                              const SamplerSettings& settings) {
  const int n_steps = static_cast<int>(std::llround(settings.horizon / settings.dt));
  return prop.evolve_grid(initial_state(idx), settings.dt, n_steps);
}

std::vector<Trajectory> sampled_ensemble(const ChainConfig& chain,
                                         const SamplerSettings& settings) {
  const ReducedHamiltonian h = build_reduced(chain);
  const Propagator prop(h);
  const WavefunctionGrid grid = sampler_grid(prop, h.indexing, settings);
  return JumpProcessSampler(h, grid, settings).run();
}

void write_cdf_csv(const std::string& path, const EmpiricalCDF& cdf) {
  with_output(path, [&](std::ostream& os) {
    os << "value,cumulative_fraction\n";
    const auto& sorted = cdf.sorted();
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      os << format_double(sorted[i]) << ',' << format_double((i + 1) / n) << '\n';
  });
}

ordered_json cdf_summary(const EmpiricalCDF& cdf) {
  return ordered_json{{"mean", cdf.mean()},
                      {"median", cdf.median()},
                      {"iqr", cdf.iqr()}};
}

ordered_json side_summary(const ConditionalStats& cs, int n) {
  return ordered_json{{"n", n},
                      {"hits", cs.hits},
                      {"hit_fraction", cs.hit_fraction},
                      {"first_passage", cdf_summary(cs.fpt)},
                      {"sojourn", cdf_summary(cs.sojourn)}};
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
  ChainConfig chain = chain_of(cfg);
  std::vector<Check> checks;

  const auto conservation_check = [&](ChainConfig c, const std::string& name) {
    const ConservationReport report = verify_conservation(c);
    Check check{name, report.pass, report.threshold, {}};
    check.detail["commutator_norm"] = report.commutator_norm;
    check.detail["embedding_residual"] = report.embedding_residual;
    checks.push_back(check);
  };

  ChainConfig interacting = chain;
  interacting.free_case = false;
  ChainConfig free_chain = chain;
  free_chain.free_case = true;
  conservation_check(interacting, "conservation-interacting");
  conservation_check(free_chain, "conservation-free");

  // The companion chain with the impurities adjacent, where the reduced
  // matrix is exactly sign-equivalent to the free Laplacian.
  {
    ChainConfig companion = interacting;
    companion.b = companion.a + 1;
    const double residual = gauge_residual(companion);
    Check check{"gauge-companion", residual < 1e-12, 1e-12, {}};
    check.detail["b"] = companion.b;
    check.detail["max_residual"] = residual;
    checks.push_back(check);
  }

  const auto continuity_check = [&](const ChainConfig& c, const std::string& name) {
    const ReducedHamiltonian h = build_reduced(c);
    const Propagator prop(h);
    const Wavefunction psi0 = initial_state(h.indexing);
    std::uint64_t rng = stream_seed(*cfg.seed, 0);
    const double delta = 1e-4;
    double worst = 0.0;
    const int n_probes = 10;
    for (int k = 0; k < n_probes; ++k) {
      const double t = 0.5 + 10.0 * uniform01(rng);
      const double residual =
          continuity_residual(h, prop.evolve(psi0, t - delta), prop.evolve(psi0, t),
                              prop.evolve(psi0, t + delta));
      worst = std::max(worst, residual);
    }
    Check check{name, worst < 1e-5, 1e-5, {}};
    check.detail["probes"] = n_probes;
    check.detail["max_residual"] = worst;
    checks.push_back(check);
  };

  continuity_check(interacting, "continuity-interacting");
  continuity_check(free_chain, "continuity-free");

  bool all_pass = true;
  for (const Check& c : checks) {
    print_check(c);
    all_pass = all_pass && c.pass;
  }
  std::cout << "verify: " << (all_pass ? "PASS" : "FAIL") << " ("
            << checks.size() << " checks)\n";

  if (!cfg.out.empty()) {
    ordered_json report;
    report["chain"] = {{"s", chain.s}, {"a", chain.a}, {"b", chain.b},
                       {"free", chain.free_case}};
    report["checks"] = ordered_json::array();
    for (const Check& c : checks) {
      ordered_json jc;
      jc["name"] = c.name;
      jc["pass"] = c.pass;
      jc["threshold"] = c.threshold;
      for (const auto& [key, value] : c.detail.items()) jc[key] = value;
      report["checks"].push_back(jc);
    }
    report["pass"] = all_pass;
    write_text_file(cfg.out, report.dump(2) + "\n");
  }
  return all_pass ? kExitOk : kExitCheckFailure;
}

int cmd_amplitude(const RunConfig& cfg) {
  ChainConfig chain = chain_of(cfg);
  chain.free_case = false;
  ChainConfig free_chain = chain;
  free_chain.free_case = true;
  const PairState site = target_of(cfg);

  const int n_steps = grid_steps(*cfg.t_max, *cfg.dt);
  std::vector<double> times(static_cast<std::size_t>(n_steps) + 1);
  for (int k = 0; k <= n_steps; ++k) times[static_cast<std::size_t>(k)] = k * *cfg.dt;

  const ReducedHamiltonian h = build_reduced(chain);
  const ReducedHamiltonian h_free = build_reduced(free_chain);
  const Propagator prop(h);
  const Propagator prop_free(h_free);
  const auto series = prop.amplitude_series(initial_state(h.indexing), times, site);
  const auto series_free =
      prop_free.amplitude_series(initial_state(h_free.indexing), times, site);

  // Impurity columns carry the sign-inverted amplitude -psi_t(site); the
  // free columns carry psi0_t(site) itself. With the impurities adjacent
  // (b = a+1) the two sets of columns then coincide.
  with_output(cfg.out, [&](std::ostream& os) {
    const bool json = cfg.format == "json";
    if (!json) os << "t,re,im,abs,re_free,im_free,abs_free\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
      const std::complex<double> amp = -series[k].amplitude;
      const std::complex<double> amp_free = series_free[k].amplitude;
      if (json) {
        ordered_json rec{{"t", times[k]},
                         {"re", amp.real()},
                         {"im", amp.imag()},
                         {"abs", std::abs(amp)},
                         {"re_free", amp_free.real()},
                         {"im_free", amp_free.imag()},
                         {"abs_free", std::abs(amp_free)}};
        os << rec.dump() << '\n';
      } else {
        os << format_double(times[k]) << ',' << format_double(amp.real()) << ','
           << format_double(amp.imag()) << ',' << format_double(std::abs(amp)) << ','
           << format_double(amp_free.real()) << ',' << format_double(amp_free.imag())
           << ',' << format_double(std::abs(amp_free)) << '\n';
      }
    }
  });
  return kExitOk;
}

void write_trajectories(std::ostream& os, const std::vector<Trajectory>& trajectories,
                        const std::vector<int>& indices, const std::string& format) {
  if (format == "json") {
    for (const int i : indices) {
      const Trajectory& tr = trajectories[static_cast<std::size_t>(i)];
      ordered_json rec;
      rec["traj"] = i;
      ordered_json path = ordered_json::array();
      path.push_back({0.0, tr.start.x1, tr.start.x2});
      for (const Jump& j : tr.jumps) path.push_back({j.time, j.site.x1, j.site.x2});
      rec["path"] = path;
      os << rec.dump() << '\n';
    }
    return;
  }
  for (const int i : indices) {
    const Trajectory& tr = trajectories[static_cast<std::size_t>(i)];
    os << i << ",0," << tr.start.x1 << ',' << tr.start.x2;
    for (const Jump& j : tr.jumps)
      os << ',' << format_double(j.time) << ',' << j.site.x1 << ',' << j.site.x2;
    os << '\n';
  }
}

std::vector<Trajectory> read_trajectories(const std::string& path, double horizon) {
  const std::string text = read_text_file(path);
  std::vector<Trajectory> out;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;

  const auto fail = [&](const std::string& what) -> IoError {
    return IoError(path + ":" + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    Trajectory tr;
    tr.horizon = horizon;
    std::vector<double> fields;

    if (line.front() == '{') {
      ordered_json rec;
      try {
        rec = ordered_json::parse(line);
      } catch (const std::exception& e) {
        throw fail(e.what());
      }
      if (!rec.contains("path") || !rec["path"].is_array())
        throw fail("record has no 'path' array");
      for (const auto& triple : rec["path"]) {
        if (!triple.is_array() || triple.size() != 3)
          throw fail("path entries must be [t,x1,x2] triples");
        for (const auto& v : triple) fields.push_back(v.get<double>());
      }
    } else {
      std::istringstream ls(line);
      std::string token;
      bool first = true;
      while (std::getline(ls, token, ',')) {
        if (first) {  // leading trajectory index; not needed downstream
          first = false;
          continue;
        }
        try {
          std::size_t pos = 0;
          fields.push_back(std::stod(token, &pos));
          if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
          throw fail("bad number '" + token + "'");
        }
      }
      if (fields.size() % 3 != 0) throw fail("expected (t,x1,x2) triples");
    }

    if (fields.size() < 3) throw fail("empty trajectory record");
    tr.start = {static_cast<int>(fields[1]), static_cast<int>(fields[2])};
    for (std::size_t k = 3; k + 2 < fields.size(); k += 3)
      tr.jumps.push_back({fields[k], {static_cast<int>(fields[k + 1]),
                                      static_cast<int>(fields[k + 2])}});
    out.push_back(std::move(tr));
  }
  if (out.empty()) throw IoError(path + ": no trajectory records");
  return out;
}

int cmd_sample(const RunConfig& cfg) {
  const ChainConfig chain = chain_of(cfg);
  const SamplerSettings settings = sampler_of(cfg);
  const PairState target = target_of(cfg);

  const std::vector<Trajectory> trajectories = sampled_ensemble(chain, settings);

  std::vector<int> indices;
  indices.reserve(trajectories.size());
  int hits = 0;
  long overflows = 0;
  long holds = 0;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const Trajectory& tr = trajectories[i];
    overflows += tr.subdivision_overflows;
    holds += tr.node_holds;
    const bool hit = first_passage_time(tr, target, settings.horizon).has_value();
    if (hit) ++hits;
    if (!cfg.hits_only || hit) indices.push_back(static_cast<int>(i));
  }

  with_output(cfg.out, [&](std::ostream& os) {
    write_trajectories(os, trajectories, indices, cfg.format);
  });

  std::cerr << "sample: " << trajectories.size() << " trajectories, " << hits
            << " hit (" << target.x1 << "," << target.x2 << ") within (0,"
            << format_double(settings.horizon) << "); hit_fraction="
            << format_double(static_cast<double>(hits) /
                             static_cast<double>(trajectories.size()))
            << "; emitted=" << indices.size()
            << "; subdivision_overflows=" << overflows << "; node_holds=" << holds
            << "\n";
  return kExitOk;
}

int cmd_stats(const RunConfig& cfg) {
  const PairState target = target_of(cfg);
  const double window = *cfg.horizon;

  const auto load = [&](bool free_case, std::uint64_t seed, const std::string& file) {
    if (!file.empty()) return read_trajectories(file, window);
    ChainConfig chain = chain_of(cfg);
    chain.free_case = free_case;
    SamplerSettings settings = sampler_of(cfg);
    settings.seed = seed;
    return sampled_ensemble(chain, settings);
  };

  // The free ensemble draws from the shifted seed so the two samples are
  // independent even when every other setting matches.
  const std::vector<Trajectory> interacting = load(false, *cfg.seed, cfg.traj_file);
  const std::vector<Trajectory> free_tr = load(true, *cfg.seed + 1, cfg.traj_file_free);

  const ConditionalStats ci = conditional_cdfs(interacting, target, window);
  const ConditionalStats cf = conditional_cdfs(free_tr, target, window);

  const std::string prefix = cfg.out.empty() ? "stats" : cfg.out;
  write_cdf_csv(prefix + "_fpt_interacting.csv", ci.fpt);
  write_cdf_csv(prefix + "_fpt_free.csv", cf.fpt);
  write_cdf_csv(prefix + "_sojourn_interacting.csv", ci.sojourn);
  write_cdf_csv(prefix + "_sojourn_free.csv", cf.sojourn);

  ordered_json summary;
  summary["target"] = {target.x1, target.x2};
  summary["window"] = window;
  summary["interacting"] = side_summary(ci, static_cast<int>(interacting.size()));
  summary["free"] = side_summary(cf, static_cast<int>(free_tr.size()));
  write_text_file(prefix + "_summary.json", summary.dump(2) + "\n");

  std::cout << "stats: target (" << target.x1 << "," << target.x2 << "), window (0,"
            << format_double(window) << ")\n"
            << "stats: interacting hits " << ci.hits << "/" << interacting.size()
            << ", mean fpt " << format_double(ci.fpt.mean()) << ", mean sojourn "
            << format_double(ci.sojourn.mean()) << "\n"
            << "stats: free        hits " << cf.hits << "/" << free_tr.size()
            << ", mean fpt " << format_double(cf.fpt.mean()) << ", mean sojourn "
            << format_double(cf.sojourn.mean()) << "\n"
            << "stats: wrote " << prefix << "_{fpt,sojourn}_{interacting,free}.csv and "
            << prefix << "_summary.json\n";
  return kExitOk;
}

int run_command(const RunConfig& cfg) {
  try {
    const RunConfig resolved = resolve_defaults(cfg);
    switch (resolved.mode) {
      case RunMode::verify: return cmd_verify(resolved);
      case RunMode::amplitude: return cmd_amplitude(resolved);
      case RunMode::sample: return cmd_sample(resolved);
      case RunMode::stats: return cmd_stats(resolved);
    }
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const EmptySubsample& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}

}  // namespace pairwalk
