#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crossnet/config.hpp"
#include "crossnet/error.hpp"
#include "crossnet/experiments.hpp"
#include "crossnet/pde_bridge.hpp"
#include "crossnet/report_io.hpp"
#include "crossnet/spectra.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace crossnet;

namespace {

struct Flags {
  std::string config_path;
  std::string out;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

RunConfig resolve(const Flags& f) {
  RunConfig cfg = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
  apply_environment(cfg);
  for (const auto& s : f.sets) apply_override(cfg, s);
  if (f.seed) cfg.seed = *f.seed;
  if (f.threads) cfg.threads = *f.threads;
  if (!f.out.empty()) cfg.output_dir = f.out;
  cfg.validate();
  return cfg;
}

json manifest(const char* command, const RunConfig& cfg) {
  return {{"command", command},
          {"seed", cfg.seed},
          {"graph", graph_spec_json(cfg.graph_spec())},
          {"params", skt_params_json(cfg.skt)},
          {"config", to_json(cfg)}};
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.output_dir);
  ensure_directory(dir);
  return dir;
}

bool has_closed_form(GraphFamily f) { return f == GraphFamily::ring || f == GraphFamily::path; }

std::vector<double> graph_spectrum(const RunConfig& cfg, const Graph& g) {
  const GraphSpec spec = cfg.graph_spec();
  const std::string& method = cfg.experiment.spectrum_method;
  const bool closed = method == "closed-form" || (method == "auto" && has_closed_form(spec.family));
  if (!closed) return eig_symmetric(build_laplacian(g), false).eigenvalues;
  if (spec.family == GraphFamily::ring) return ring_spectrum_closed_form(spec.n, spec.k);
  if (spec.family == GraphFamily::path) return path_spectrum_closed_form(spec.n);
  throw ParameterError("closed-form spectrum is available only for ring and path graphs");
}

int cmd_graph(const RunConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const Graph g = generate(cfg.graph_spec());
  std::ofstream os(dir / "graph.edges", std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + (dir / "graph.edges").string() + "' for writing");
  write_edge_list(os, g);
  if (!os) throw IoError("write to graph.edges failed");
  json m = manifest("graph gen", cfg);
  m["edges"] = g.n_edges();
  m["connected"] = is_connected(g);
  write_json(dir / "manifest.json", m);
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const auto eig = graph_spectrum(cfg, generate(cfg.graph_spec()));
  write_text(dir / "spectrum.csv", spectrum_csv(eig));
  write_json(dir / "manifest.json", manifest("spectrum", cfg));
  return 0;
}

int cmd_stability(const RunConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const Equilibrium eq = skt_equilibrium(cfg.skt);
  InstabilityReport rep = instability_region(cfg.skt, eq);
  const auto eig = graph_spectrum(cfg, generate(cfg.graph_spec()));
  rep.unstable_modes = classify_modes(eig, rep);
  json r = stability_json(rep);
  r["unstable_eigenvalues"] = json::array();
  for (std::size_t i : rep.unstable_modes) r["unstable_eigenvalues"].push_back(eig[i]);
  write_json(dir / "report.json", r);
  write_json(dir / "manifest.json", manifest("stability", cfg));
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  Graph graph;
  SktParams params = cfg.skt;
  json m = manifest("simulate", cfg);
  if (cfg.pde) {
    const DiscretizedSkt disc = discretize_skt_1d(cfg.pde_params());
    graph = disc.path;
    params = disc.params;
    m["graph"] = {{"family", "path"}, {"nodes", graph.n_nodes()}, {"mesh_size", disc.h}};
    m["params"] = skt_params_json(params);
  } else {
    graph = generate(cfg.graph_spec());
  }
  SimulationOptions opt;
  opt.perturbation = cfg.experiment.perturbation;
  opt.integrator = cfg.integrator;
  opt.threads = cfg.thread_count();
  const SimulationReport rep = simulate_and_report(graph, params, cfg.experiment.seeds, opt);

  write_text(dir / "spectrum.csv",
             spectrum_csv(eig_symmetric(build_laplacian(graph), false).eigenvalues));
  const bool single = rep.runs.size() == 1;
  json runs = json::array();
  for (const SimulationRun& run : rep.runs) {
    fs::path rd = dir;
    if (!single) {
      rd /= "seed-" + std::to_string(run.seed);
      ensure_directory(rd);
    }
    write_text(rd / "trajectory.csv", trajectory_csv(run.result.trajectory));
    write_text(rd / "final_state.csv", final_state_csv(run.result.final_state));
    runs.push_back({{"seed", run.seed},
                    {"convergence", convergence_json(run.result)},
                    {"metrics", metrics_json(run.metrics)},
                    {"dominant_mode", run.dominant_mode},
                    {"dominant_eigenvalue", run.dominant_eigenvalue}});
  }
  json report{{"stability", stability_json(rep.stability)}, {"runs", runs}};
  write_json(dir / "report.json", report);
  m["runs"] = runs;
  write_json(dir / "manifest.json", m);
  return 0;
}

SweepSpec sweep_spec(const RunConfig& cfg) {
  SweepSpec s;
  s.base = cfg.graph_spec();
  s.swept = parse_sweep_parameter(cfg.experiment.sweep);
  s.values = cfg.experiment.values;
  s.params = cfg.skt;
  s.master_seed = cfg.seed;
  s.realizations = cfg.experiment.realizations;
  return s;
}

// Degree-type parameters are also reported halved, matching the K/2 axis convention.
json sweep_value_json(SweepParameter swept, double value) {
  json j{{"parameter", std::string(to_string(swept))}, {"value", value}};
  if (swept == SweepParameter::k) j["k_half"] = value / 2.0;
  return j;
}

int cmd_ensemble(const RunConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const SweepSpec spec = sweep_spec(cfg);
  const EnsembleReport rep = ensemble_report(spec, cfg.thread_count());
  const bool single = rep.points.size() == 1;
  json points = json::array();
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const EnsemblePoint& p = rep.points[i];
    fs::path pd = dir;
    if (!single) {
      pd /= "point-" + std::to_string(i);
      ensure_directory(pd);
    }
    write_text(pd / "ensemble.csv", ensemble_csv(p.stats));
    json pj = spec.values.empty() ? json{{"parameter", nullptr}} : sweep_value_json(spec.swept, p.value);
    pj["graph"] = graph_spec_json(p.spec);
    pj["realizations"] = p.stats.realizations;
    pj["unstable_realizations"] = p.unstable_realizations;
    pj["unstable_fraction"] = p.unstable_fraction;
    pj["mean_intersects_region"] = p.mean_intersects_region;
    if (!single) pj["directory"] = pd.filename().string();
    points.push_back(std::move(pj));
  }
  write_json(dir / "report.json", {{"stability", stability_json(rep.stability)}, {"points", points}});
  write_json(dir / "manifest.json", manifest("ensemble", cfg));
  return 0;
}

int cmd_sweep_ring(const RunConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  SweepSpec spec = sweep_spec(cfg);
  if (spec.values.empty()) spec.values = {static_cast<double>(spec.swept == SweepParameter::n ? spec.base.n : spec.base.k)};
  const auto rows = ring_sweep(spec);
  std::string summary = "value,n,k,k_half,unstable_count\n";
  std::string spectra = "value,index,eigenvalue\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string v = format_double(spec.values[r]);
    summary += v + "," + std::to_string(row.n) + "," + std::to_string(row.k) + "," +
               format_double(row.k / 2.0) + "," + std::to_string(row.unstable_count) + "\n";
    for (std::size_t i = 0; i < row.spectrum.size(); ++i)
      spectra += v + "," + std::to_string(i) + "," + format_double(row.spectrum[i]) + "\n";
  }
  write_text(dir / "ring_sweep.csv", summary);
  write_text(dir / "spectrum.csv", spectra);
  const Equilibrium eq = skt_equilibrium(cfg.skt);
  write_json(dir / "report.json", {{"stability", stability_json(instability_region(cfg.skt, eq))}});
  write_json(dir / "manifest.json", manifest("sweep ring", cfg));
  return 0;
}

int cmd_sweep_lattice(const RunConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const auto dims = default_lattice_dims();
  const auto results = lattice_comparison(dims, cfg.skt);
  std::string summary = "kind,rows,cols,nodes,unstable_count\n";
  std::string spectra = "kind,index,eigenvalue\n";
  json lattices = json::array();
  for (const auto& r : results) {
    const std::string kind(to_string(r.dims.kind));
    summary += kind + "," + std::to_string(r.dims.rows) + "," + std::to_string(r.dims.cols) + "," +
               std::to_string(r.spectrum.size()) + "," + std::to_string(r.unstable_modes.size()) +
               "\n";
    for (std::size_t i = 0; i < r.spectrum.size(); ++i)
      spectra += kind + "," + std::to_string(i) + "," + format_double(r.spectrum[i]) + "\n";
    lattices.push_back({{"kind", kind},
                        {"rows", r.dims.rows},
                        {"cols", r.dims.cols},
                        {"unstable_modes", r.unstable_modes}});
  }
  write_text(dir / "lattices.csv", summary);
  write_text(dir / "spectrum.csv", spectra);
  const Equilibrium eq = skt_equilibrium(cfg.skt);
  write_json(dir / "report.json",
             {{"stability", stability_json(instability_region(cfg.skt, eq))}, {"lattices", lattices}});
  json m = manifest("sweep lattice", cfg);
  m["lattices"] = lattices;
  write_json(dir / "manifest.json", m);
  return 0;
}

int fail(const char* kind, const std::string& message, int code) {
  json e{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  std::cerr << e.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-diffusion instability analysis of two-species competition on networks"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("-c,--config", flags.config_path, "JSON config file");
  app.add_option("-o,--out", flags.out, "Output directory (overrides output_dir)");
  app.add_option("--set", flags.sets, "Override a config value: block.key=value")->take_all();
  app.add_option("--seed", flags.seed, "Master seed (overrides config and CROSSNET_SEED)");
  app.add_option("--threads", flags.threads, "Worker threads, 0 = available cores");

  std::function<int(const RunConfig&)> action;
  auto bind = [&](CLI::App* sub, int (*fn)(const RunConfig&)) {
    sub->callback([&action, fn] { action = fn; });
  };

  auto* graph = app.add_subcommand("graph", "Graph generation")->require_subcommand(1);
  bind(graph->add_subcommand("gen", "Write the configured graph as an edge list"), cmd_graph);

  std::string method;
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum of the configured graph");
  spectrum->add_option("--method", method, "auto, numeric or closed-form")
      ->check(CLI::IsMember({"auto", "numeric", "closed-form"}));
  bind(spectrum, cmd_spectrum);

  bind(app.add_subcommand("stability", "Equilibrium, instability region and unstable modes"),
       cmd_stability);
  bind(app.add_subcommand("simulate", "Integrate the network system from perturbed equilibria"),
       cmd_simulate);
  bind(app.add_subcommand("ensemble", "Spectral statistics over random-graph realizations"),
       cmd_ensemble);

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps")->require_subcommand(1);
  bind(sweep->add_subcommand("ring", "Closed-form ring spectra over the swept parameter"),
       cmd_sweep_ring);
  bind(sweep->add_subcommand("lattice", "Triangular, square and hexagonal lattice comparison"),
       cmd_sweep_lattice);

  bool dump = false;
  auto* config = app.add_subcommand("config", "Configuration utilities")->require_subcommand(1);
  config->add_subcommand("dump", "Print the fully resolved configuration")->callback([&] {
    dump = true;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (!method.empty()) flags.sets.push_back("experiment.spectrum_method=\"" + method + "\"");
    const RunConfig cfg = resolve(flags);
    if (dump) {
      std::cout << to_json(cfg).dump(2) << "\n";
      return 0;
    }
    return action(cfg);
  } catch (const ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const ParameterError& e) {
    return fail("parameter", e.what(), 2);
  } catch (const NumericalError& e) {
    return fail("numerical", e.what(), 3);
  } catch (const IoError& e) {
    return fail("io", e.what(), 4);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}
