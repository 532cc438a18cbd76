#include <doctest.h>

#include <cstdlib>
#include <limits>

#include "crossnet/config.hpp"
#include "crossnet/error.hpp"
#include "crossnet/report_io.hpp"

using namespace crossnet;

TEST_CASE("defaults round-trip through json") {
  const RunConfig c;
  const RunConfig r = config_from_json(to_json(c));
  CHECK(to_json(r) == to_json(c));
  CHECK(r.skt == SktParams::reference());
  CHECK(to_json(c).contains("pde"));
  CHECK(to_json(c)["pde"].is_null());
  c.validate();
}

TEST_CASE("partial configs keep defaults") {
  const RunConfig c = parse_config(R"({"seed": 9, "graph": {"family": "erdos-renyi", "p": 0.3}})");
  CHECK(c.seed == 9);
  CHECK(c.graph.family == GraphFamily::erdos_renyi);
  CHECK(c.graph.p == 0.3);
  CHECK(c.graph.n == 100);
  CHECK(c.graph_spec().seed == 9);
  CHECK(c.skt.d12 == 3.0);
}

TEST_CASE("strict parsing") {
  CHECK_THROWS_AS(parse_config(R"({"sed": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"graph": {"familly": "ring"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"graph": {"family": "torus"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"graph": {"n": "ten"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"graph": {"n": -3}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"graph": 5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seed": 1,)"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("semantic validation") {
  RunConfig c = parse_config(R"({"graph": {"k": 60}})");
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = parse_config(R"({"experiment": {"sweep": "q"}})");
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = parse_config(R"({"experiment": {"perturbation": 1.5}})");
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = parse_config(R"({"pde": {"ell": -1}})");
  CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("overrides") {
  RunConfig c;
  apply_override(c, "graph.family=watts-strogatz");
  apply_override(c, "graph.p=0.05");
  apply_override(c, "experiment.seeds=[3,4]");
  apply_override(c, "seed=42");
  CHECK(c.graph.family == GraphFamily::watts_strogatz);
  CHECK(c.graph.p == 0.05);
  CHECK(c.experiment.seeds == std::vector<std::uint64_t>{3, 4});
  CHECK(c.seed == 42);
  apply_override(c, "pde.n=33");
  REQUIRE(c.pde);
  CHECK(c.pde->n == 33);
  CHECK(c.pde->ell == 1.0);
  apply_override(c, "pde=null");
  CHECK_FALSE(c.pde);
  CHECK_THROWS_AS(apply_override(c, "graph.q=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "nothing=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "graph=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "graph.n"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "graph.n=abc"), ConfigError);
}

TEST_CASE("seed from the environment") {
  RunConfig c;
  setenv("CROSSNET_SEED", "1234", 1);
  apply_environment(c);
  CHECK(c.seed == 1234);
  setenv("CROSSNET_SEED", "12x", 1);
  CHECK_THROWS_AS(apply_environment(c), ConfigError);
  setenv("CROSSNET_SEED", "-5", 1);
  CHECK_THROWS_AS(apply_environment(c), ConfigError);
  unsetenv("CROSSNET_SEED");
  c.seed = 7;
  apply_environment(c);
  CHECK(c.seed == 7);
}

TEST_CASE("pde parameters come from the skt block") {
  RunConfig c = parse_config(R"({"skt": {"d12": 2.5}, "pde": {"ell": 3, "n": 20}})");
  const PdeParams p = c.pde_params();
  CHECK(p.d12 == 2.5);
  CHECK(p.ell == 3.0);
  CHECK(p.n == 20);
  CHECK_THROWS_AS(RunConfig{}.pde_params(), ConfigError);
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, -2.5e17, 0.0})
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  CHECK(format_double(4.0) == "4");
}

TEST_CASE("csv layouts") {
  CHECK(spectrum_csv(std::vector<double>{0, 2.5}) == "index,eigenvalue\n0,0\n1,2.5\n");
  SpectralStats st{{0, 1}, {0, 0.25}, 3};
  CHECK(ensemble_csv(st) == "index,mean,variance,realizations\n0,0,0,3\n1,1,0.25,3\n");
  const NetworkState s({1, 2}, {3, 4}, 0.5);
  CHECK(final_state_csv(s) == "node,u,v\n0,1,3\n1,2,4\n");
  const std::vector<NetworkState> tr{s};
  CHECK(trajectory_csv(tr) == "t,u_0,u_1,v_0,v_1\n0.5,1,2,3,4\n");
}

TEST_CASE("stability json") {
  InstabilityReport r;
  r.u_star = 1.625;
  auto j = stability_json(r);
  CHECK(j["u_star"] == 1.625);
  CHECK(j["lambda_star"].is_null());
  CHECK(j["lambda_star_1"].is_null());
  CHECK(j["lambda_star_2"].is_null());
  CHECK(j["unstable_modes"].is_array());
  r.lambda_star = 2.0;
  r.region = Interval{3.0, std::numeric_limits<double>::infinity()};
  j = stability_json(r);
  CHECK(j["lambda_star_1"] == 3.0);
  CHECK(j["lambda_star_2"].is_null());
  CHECK(j["region_unbounded"] == true);
}
