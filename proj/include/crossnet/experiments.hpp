#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crossnet/dynamics.hpp"
#include "crossnet/graph.hpp"
#include "crossnet/spectra.hpp"
#include "crossnet/stability.hpp"

namespace crossnet {

enum class SweepParameter { k, n, p };

std::string_view to_string(SweepParameter s);
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepSpec {
  GraphSpec base;  // family and fixed parameters
  SweepParameter swept = SweepParameter::k;
  std::vector<double> values;
  SktParams params;
  std::uint64_t master_seed = 0;
  std::size_t realizations = 1;

  void validate() const;
  // base with the swept parameter set to `value`.
  GraphSpec at(double value) const;
};

struct RingSweepRow {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> spectrum;
  std::optional<double> lambda_star;
  std::optional<Interval> region;
  std::size_t unstable_count = 0;
};

// Closed-form ring spectra classified against the instability region.
std::vector<RingSweepRow> ring_sweep(const SweepSpec& spec);

struct LatticeDims {
  LatticeKind kind = LatticeKind::square;
  std::size_t rows = 10;
  std::size_t cols = 11;
};

std::string_view to_string(LatticeKind kind);

// Triangular, square and hexagonal lattices on 10 x 11 = 110 nodes.
std::vector<LatticeDims> default_lattice_dims();

struct LatticeResult {
  LatticeDims dims;
  std::vector<double> spectrum;
  std::vector<std::size_t> unstable_modes;
};

std::vector<LatticeResult> lattice_comparison(std::span<const LatticeDims> dims,
                                              const SktParams& params);

struct EnsemblePoint {
  double value = 0.0;
  GraphSpec spec;
  SpectralStats stats;
  std::size_t unstable_realizations = 0;  // realizations with >= 1 unstable mode
  double unstable_fraction = 0.0;
  bool mean_intersects_region = false;  // some mean eigenvalue lies inside the region
};

struct EnsembleReport {
  InstabilityReport stability;
  std::vector<EnsemblePoint> points;
};

// Spectral statistics and instability frequency for each swept value. With an
// empty value list, the base spec is evaluated once.
EnsembleReport ensemble_report(const SweepSpec& spec, unsigned threads = 1);

struct SimulationRun {
  std::uint64_t seed = 0;
  SimulationResult result;
  PatternMetrics metrics;
  // First index of the nonconstant eigenspace carrying the most final power.
  std::size_t dominant_mode = 0;
  double dominant_eigenvalue = 0.0;
};

struct SimulationReport {
  Graph graph;
  Equilibrium equilibrium;
  InstabilityReport stability;
  std::vector<SimulationRun> runs;
};

struct SimulationOptions {
  double perturbation = 1e-2;
  IntegratorConfig integrator;
  unsigned threads = 1;
};

SimulationReport simulate_and_report(const Graph& graph, const SktParams& params,
                                     std::span<const std::uint64_t> seeds,
                                     const SimulationOptions& options);
SimulationReport simulate_and_report(const GraphSpec& spec, const SktParams& params,
                                     std::span<const std::uint64_t> seeds,
                                     const SimulationOptions& options);

}  // namespace crossnet
