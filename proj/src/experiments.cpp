#include "crossnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crossnet/error.hpp"
#include "crossnet/parallel.hpp"
#include "crossnet/rng.hpp"

namespace crossnet {

std::string_view to_string(SweepParameter s) {
  switch (s) {
    case SweepParameter::k: return "k";
    case SweepParameter::n: return "n";
    case SweepParameter::p: return "p";
  }
  return "k";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "k") return SweepParameter::k;
  if (name == "n") return SweepParameter::n;
  if (name == "p") return SweepParameter::p;
  throw ParameterError("unknown sweep parameter '" + std::string(name) + "' (expected k, n or p)");
}

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::triangular: return "triangular";
    case LatticeKind::square: return "square";
    case LatticeKind::hexagonal: return "hexagonal";
  }
  return "square";
}

void SweepSpec::validate() const {
  if (realizations == 0) throw ParameterError("sweep: realizations must be >= 1");
  for (double v : values) {
    if (swept != SweepParameter::p && (v < 0.0 || v != std::floor(v)))
      throw ParameterError("sweep: values of '" + std::string(to_string(swept)) +
                           "' must be nonnegative integers");
    at(v).validate();
  }
  params.validate();
}

GraphSpec SweepSpec::at(double value) const {
  GraphSpec g = base;
  switch (swept) {
    case SweepParameter::k: g.k = static_cast<std::size_t>(value); break;
    case SweepParameter::n: g.n = static_cast<std::size_t>(value); break;
    case SweepParameter::p: g.p = value; break;
  }
  return g;
}

std::vector<RingSweepRow> ring_sweep(const SweepSpec& spec) {
  if (spec.base.family != GraphFamily::ring)
    throw ParameterError("ring_sweep: base family must be ring");
  if (spec.values.empty()) throw ParameterError("ring_sweep: empty value list");
  spec.validate();
  const Equilibrium eq = skt_equilibrium(spec.params);
  const InstabilityReport rep = instability_region(spec.params, eq);

  std::vector<RingSweepRow> rows;
  for (double value : spec.values) {
    const GraphSpec g = spec.at(value);
    RingSweepRow row;
    row.n = g.n;
    row.k = g.k;
    row.spectrum = ring_spectrum_closed_form(g.n, g.k);
    row.lambda_star = rep.lambda_star;
    row.region = rep.region;
    row.unstable_count = classify_modes(row.spectrum, rep).size();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LatticeDims> default_lattice_dims() {
  return {{LatticeKind::triangular, 10, 11},
          {LatticeKind::square, 10, 11},
          {LatticeKind::hexagonal, 10, 11}};
}

std::vector<LatticeResult> lattice_comparison(std::span<const LatticeDims> dims,
                                              const SktParams& params) {
  if (dims.empty()) throw ParameterError("lattice_comparison: no lattices given");
  const Equilibrium eq = skt_equilibrium(params);
  const InstabilityReport rep = instability_region(params, eq);
  std::vector<LatticeResult> out;
  for (const LatticeDims& d : dims) {
    LatticeResult r;
    r.dims = d;
    r.spectrum = eig_symmetric(build_laplacian(gen_lattice(d.kind, d.rows, d.cols)), false).eigenvalues;
    r.unstable_modes = classify_modes(r.spectrum, rep);
    out.push_back(std::move(r));
  }
  return out;
}

EnsembleReport ensemble_report(const SweepSpec& spec, unsigned threads) {
  if (!is_random_family(spec.base.family))
    throw ParameterError("ensemble_report: family '" + std::string(to_string(spec.base.family)) +
                         "' is not random");
  spec.validate();
  EnsembleReport report;
  const Equilibrium eq = skt_equilibrium(spec.params);
  report.stability = instability_region(spec.params, eq);

  std::vector<std::optional<double>> values;
  for (double v : spec.values) values.emplace_back(v);
  if (values.empty()) values.emplace_back(std::nullopt);

  for (std::size_t point = 0; point < values.size(); ++point) {
    EnsemblePoint ep;
    ep.spec = values[point] ? spec.at(*values[point]) : spec.base;
    ep.value = values[point].value_or(0.0);
    // Each sweep point gets its own stream of realizations.
    const std::uint64_t point_seed = derive_seed(spec.master_seed, 0x5EED0000ULL + point);
    const auto spectra = ensemble_spectra(ep.spec, spec.realizations, point_seed, threads);
    ep.stats = spectral_stats(spectra);
    for (const auto& s : spectra)
      if (!classify_modes(s, report.stability).empty()) ++ep.unstable_realizations;
    ep.unstable_fraction =
        static_cast<double>(ep.unstable_realizations) / static_cast<double>(spectra.size());
    for (std::size_t i = 1; i < ep.stats.mean.size(); ++i)
      if (report.stability.region &&
          report.stability.region->contains_strictly(ep.stats.mean[i], kBoundaryMargin))
        ep.mean_intersects_region = true;
    report.points.push_back(std::move(ep));
  }
  return report;
}

SimulationReport simulate_and_report(const Graph& graph, const SktParams& params,
                                     std::span<const std::uint64_t> seeds,
                                     const SimulationOptions& options) {
  if (seeds.empty()) throw ParameterError("simulate: at least one seed is required");
  SimulationReport report;
  report.graph = graph;
  report.equilibrium = skt_equilibrium(params);
  report.stability = instability_region(params, report.equilibrium);
  const Coexistence coex{report.equilibrium.u_star, report.equilibrium.v_star};

  const LaplacianMatrix laplacian = build_laplacian(graph);
  const Spectrum spectrum = eig_symmetric(laplacian, true);
  report.stability.unstable_modes = classify_modes(spectrum.eigenvalues, report.stability);
  const SktNetwork system(params, laplacian);

  report.runs.resize(seeds.size());
  parallel_for(seeds.size(), options.threads, [&](std::size_t i) {
    SimulationRun& run = report.runs[i];
    run.seed = seeds[i];
    const NetworkState init =
        perturb_homogeneous(coex, graph.n_nodes(), options.perturbation, seeds[i]);
    run.result = integrate(system, init, options.integrator);
    run.metrics = pattern_metrics(run.result.final_state, coex);
    const auto amps = mode_amplitudes(run.result.final_state, coex, spectrum);
    // Power is summed over each (numerically) degenerate eigenspace.
    const auto& ev = spectrum.eigenvalues;
    double best = -1.0;
    for (std::size_t a = 1; a < amps.size();) {
      std::size_t b = a;
      double power = 0.0;
      while (b < amps.size() && std::abs(ev[b] - ev[a]) <= 1e-8 * std::max(1.0, ev[a])) {
        power += amps[b].first * amps[b].first + amps[b].second * amps[b].second;
        ++b;
      }
      if (power > best) {
        best = power;
        run.dominant_mode = a;
      }
      a = b;
    }
    run.dominant_eigenvalue = amps.size() > 1 ? spectrum.eigenvalues[run.dominant_mode] : 0.0;
  });
  return report;
}

SimulationReport simulate_and_report(const GraphSpec& spec, const SktParams& params,
                                     std::span<const std::uint64_t> seeds,
                                     const SimulationOptions& options) {
  return simulate_and_report(generate(spec), params, seeds, options);
}

}  // namespace crossnet
