#include <doctest.h>

#include "crossnet/error.hpp"
#include "crossnet/experiments.hpp"

using namespace crossnet;

namespace {

SweepSpec ring_spec(std::vector<double> ks) {
  SweepSpec s;
  s.base.family = GraphFamily::ring;
  s.base.n = 100;
  s.swept = SweepParameter::k;
  s.values = std::move(ks);
  return s;
}

}  // namespace

TEST_CASE("sweep parameter names") {
  CHECK(parse_sweep_parameter("p") == SweepParameter::p);
  CHECK(to_string(SweepParameter::n) == "n");
  CHECK_THROWS_AS(parse_sweep_parameter("q"), ParameterError);
}

TEST_CASE("ring sweep at N = 100") {
  const auto rows = ring_sweep(ring_spec({1, 2, 10, 15, 20, 26, 30, 40, 49}));
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].unstable_count == 0);
  CHECK(rows[1].unstable_count == 0);
  CHECK(rows[2].unstable_count > 0);
  CHECK(rows[3].unstable_count > 0);
  CHECK(rows[4].unstable_count > 0);
  for (std::size_t i = 5; i < rows.size(); ++i) CHECK(rows[i].unstable_count == 0);
  CHECK(rows[2].k == 10);
  CHECK(rows[2].spectrum.size() == 100);
  REQUIRE(rows[2].region);
  CHECK(rows[2].lambda_star);
}

TEST_CASE("larger rings put more eigenvalues in the region") {
  SweepSpec s = ring_spec({100, 200, 400});
  s.base.k = 10;
  s.swept = SweepParameter::n;
  const auto rows = ring_sweep(s);
  CHECK(rows[0].unstable_count < rows[1].unstable_count);
  CHECK(rows[1].unstable_count < rows[2].unstable_count);
}

TEST_CASE("ring sweep input checks") {
  CHECK_THROWS_AS(ring_sweep(ring_spec({})), ParameterError);
  CHECK_THROWS_AS(ring_sweep(ring_spec({60})), ParameterError);
  CHECK_THROWS_AS(ring_sweep(ring_spec({2.5})), ParameterError);
  SweepSpec s = ring_spec({3});
  s.base.family = GraphFamily::path;
  CHECK_THROWS_AS(ring_sweep(s), ParameterError);
}

TEST_CASE("lattice comparison") {
  const auto dims = default_lattice_dims();
  const auto res = lattice_comparison(dims, SktParams::reference());
  REQUIRE(res.size() == 3);
  for (const auto& r : res) CHECK(r.spectrum.size() == 110);
  CHECK(res[0].dims.kind == LatticeKind::triangular);
  CHECK_FALSE(res[0].unstable_modes.empty());
  CHECK_FALSE(res[1].unstable_modes.empty());
  CHECK(res[2].unstable_modes.empty());
  CHECK_THROWS_AS(lattice_comparison({}, SktParams::reference()), ParameterError);
}

TEST_CASE("ensemble report") {
  SweepSpec s;
  s.base.family = GraphFamily::regular_random;
  s.base.n = 50;
  s.swept = SweepParameter::k;
  s.values = {4, 30};
  s.realizations = 10;
  s.master_seed = 5;
  const EnsembleReport a = ensemble_report(s, 1);
  const EnsembleReport b = ensemble_report(s, 3);
  REQUIRE(a.points.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(a.points[i].stats.mean == b.points[i].stats.mean);
    CHECK(a.points[i].stats.variance == b.points[i].stats.variance);
    CHECK(a.points[i].unstable_realizations == b.points[i].unstable_realizations);
  }
  CHECK(a.points[0].spec.k == 4);
  CHECK(a.points[0].mean_intersects_region);
  CHECK_FALSE(a.points[1].mean_intersects_region);
  CHECK(a.points[1].unstable_fraction == 0.0);

  s.values.clear();
  s.base.k = 8;
  CHECK(ensemble_report(s).points.size() == 1);

  s.base.family = GraphFamily::ring;
  CHECK_THROWS_AS(ensemble_report(s), ParameterError);
}

TEST_CASE("simulation report") {
  SktParams p = SktParams::reference();
  SimulationOptions opt;
  opt.threads = 2;
  const std::vector<std::uint64_t> seeds{1, 2};
  const auto rep = simulate_and_report(gen_ring(40, 4), p, seeds, opt);
  REQUIRE(rep.runs.size() == 2);
  CHECK(rep.runs[0].seed == 1);
  for (const auto& run : rep.runs) {
    CHECK(run.result.converged);
    CHECK(run.metrics.heterogeneity > 1e-2);
    CHECK(run.dominant_mode > 0);
  }
  const auto again = simulate_and_report(gen_ring(40, 4), p, seeds, SimulationOptions{});
  CHECK(again.runs[1].result.final_state.u == rep.runs[1].result.final_state.u);

  p.d12 = p.d21 = 0;
  const auto flat = simulate_and_report(gen_ring(40, 4), p, seeds, opt);
  for (const auto& run : flat.runs) CHECK(run.metrics.heterogeneity < 1e-6);

  CHECK_THROWS_AS(simulate_and_report(gen_ring(10, 1), p, std::vector<std::uint64_t>{}, opt),
                  ParameterError);
}

TEST_CASE("zero perturbation stays homogeneous") {
  SimulationOptions opt;
  opt.perturbation = 0;
  GraphSpec g;
  g.n = 30;
  g.k = 3;
  const auto rep = simulate_and_report(g, SktParams::reference(), std::vector<std::uint64_t>{7}, opt);
  CHECK(rep.runs[0].result.converged);
  CHECK(*rep.runs[0].result.convergence_time == 0.0);
  CHECK(rep.runs[0].metrics.heterogeneity == 0.0);
}
