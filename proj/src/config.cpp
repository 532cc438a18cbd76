#include "crossnet/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "crossnet/error.hpp"
#include "crossnet/parallel.hpp"

namespace crossnet {

using nlohmann::json;

namespace {

// Reads typed fields out of one JSON object and rejects anything left over.
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(label() + ": expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = read<T>(*it);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(label() + "." + key + ": wrong type");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(label() + ": unknown key '" + it.key() + "'");
  }

 private:
  template <typename T>
  static T read(const json& v) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw std::invalid_argument("bool");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw std::invalid_argument("string");
      return v.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw std::invalid_argument("number");
      return v.get<T>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_unsigned()) throw std::invalid_argument("unsigned");
      return v.get<T>();
    } else {
      if (!v.is_array()) throw std::invalid_argument("array");
      T out;
      for (const auto& e : v) out.push_back(read<typename T::value_type>(e));
      return out;
    }
  }

  std::string label() const { return path_.empty() ? "config" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

GraphSpec RunConfig::graph_spec() const {
  GraphSpec g = graph;
  g.seed = seed;
  return g;
}

unsigned RunConfig::thread_count() const { return threads == 0 ? default_thread_count() : threads; }

PdeParams RunConfig::pde_params() const {
  if (!pde) throw ConfigError("config has no pde block");
  PdeParams p;
  p.d1 = skt.d1;
  p.d2 = skt.d2;
  p.d11 = skt.d11;
  p.d22 = skt.d22;
  p.d12 = skt.d12;
  p.d21 = skt.d21;
  p.r1 = skt.r1;
  p.r2 = skt.r2;
  p.a1 = skt.a1;
  p.a2 = skt.a2;
  p.b1 = skt.b1;
  p.b2 = skt.b2;
  p.ell = pde->ell;
  p.n = pde->n;
  return p;
}

void RunConfig::validate() const {
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  graph_spec().validate();
  skt.validate();
  integrator.validate();
  if (experiment.sweep != "k" && experiment.sweep != "n" && experiment.sweep != "p")
    throw ConfigError("experiment.sweep must be one of k, n, p");
  if (experiment.realizations == 0) throw ParameterError("experiment.realizations must be >= 1");
  if (!(experiment.perturbation >= 0.0 && experiment.perturbation < 1.0))
    throw ParameterError("experiment.perturbation must lie in [0, 1)");
  if (experiment.seeds.empty()) throw ParameterError("experiment.seeds must not be empty");
  const auto& m = experiment.spectrum_method;
  if (m != "auto" && m != "numeric" && m != "closed-form")
    throw ConfigError("experiment.spectrum_method must be auto, numeric or closed-form");
  if (pde) pde_params().validate();
}

json to_json(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["output_dir"] = c.output_dir;
  j["graph"] = {
      {"family", std::string(to_string(c.graph.family))},
      {"n", c.graph.n},
      {"k", c.graph.k},
      {"p", c.graph.p},
      {"rows", c.graph.rows},
      {"cols", c.graph.cols},
      {"require_connected", c.graph.require_connected},
      {"max_connect_retries", c.graph.max_connect_retries},
  };
  const SktParams& s = c.skt;
  j["skt"] = {{"r1", s.r1},   {"r2", s.r2},   {"a1", s.a1},   {"a2", s.a2},
              {"b1", s.b1},   {"b2", s.b2},   {"d1", s.d1},   {"d2", s.d2},
              {"d11", s.d11}, {"d22", s.d22}, {"d12", s.d12}, {"d21", s.d21}};
  const IntegratorConfig& ic = c.integrator;
  j["integrator"] = {
      {"rel_tol", ic.rel_tol},
      {"abs_tol", ic.abs_tol},
      {"t_max", ic.t_max},
      {"steady_state_tol", ic.steady_state_tol},
      {"max_steps", ic.max_steps},
      {"sample_interval", ic.sample_interval},
      {"stop_at_steady_state", ic.stop_at_steady_state},
  };
  const ExperimentConfig& e = c.experiment;
  j["experiment"] = {
      {"sweep", e.sweep},
      {"values", e.values},
      {"realizations", e.realizations},
      {"perturbation", e.perturbation},
      {"seeds", e.seeds},
      {"spectrum_method", e.spectrum_method},
  };
  if (c.pde)
    j["pde"] = {{"ell", c.pde->ell}, {"n", c.pde->n}};
  else
    j["pde"] = nullptr;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  Block top(j, "");
  top.get("seed", c.seed);
  top.get("threads", c.threads);
  top.get("output_dir", c.output_dir);

  if (const json* g = top.child("graph")) {
    Block b(*g, "graph");
    std::string family(to_string(c.graph.family));
    b.get("family", family);
    try {
      c.graph.family = parse_graph_family(family);
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("graph.family: ") + e.what());
    }
    b.get("n", c.graph.n);
    b.get("k", c.graph.k);
    b.get("p", c.graph.p);
    b.get("rows", c.graph.rows);
    b.get("cols", c.graph.cols);
    b.get("require_connected", c.graph.require_connected);
    b.get("max_connect_retries", c.graph.max_connect_retries);
    b.finish();
  }
  if (const json* s = top.child("skt")) {
    Block b(*s, "skt");
    SktParams& p = c.skt;
    b.get("r1", p.r1);
    b.get("r2", p.r2);
    b.get("a1", p.a1);
    b.get("a2", p.a2);
    b.get("b1", p.b1);
    b.get("b2", p.b2);
    b.get("d1", p.d1);
    b.get("d2", p.d2);
    b.get("d11", p.d11);
    b.get("d22", p.d22);
    b.get("d12", p.d12);
    b.get("d21", p.d21);
    b.finish();
  }
  if (const json* i = top.child("integrator")) {
    Block b(*i, "integrator");
    IntegratorConfig& ic = c.integrator;
    b.get("rel_tol", ic.rel_tol);
    b.get("abs_tol", ic.abs_tol);
    b.get("t_max", ic.t_max);
    b.get("steady_state_tol", ic.steady_state_tol);
    b.get("max_steps", ic.max_steps);
    b.get("sample_interval", ic.sample_interval);
    b.get("stop_at_steady_state", ic.stop_at_steady_state);
    b.finish();
  }
  if (const json* e = top.child("experiment")) {
    Block b(*e, "experiment");
    ExperimentConfig& x = c.experiment;
    b.get("sweep", x.sweep);
    b.get("values", x.values);
    b.get("realizations", x.realizations);
    b.get("perturbation", x.perturbation);
    b.get("seeds", x.seeds);
    b.get("spectrum_method", x.spectrum_method);
    b.finish();
  }
  if (const json* p = top.child("pde"); p && !p->is_null()) {
    Block b(*p, "pde");
    PdeBlock pb;
    b.get("ell", pb.ell);
    b.get("n", pb.n);
    b.finish();
    c.pde = pb;
  }
  top.finish();
  return c;
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

RunConfig load_config(const std::string& path) { return parse_config(read_text(path)); }

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("override '" + std::string(assignment) + "' must look like block.key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }

  json j = to_json(cfg);
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    if (!j.contains(key) || (j[key].is_object() && key != "pde"))
      throw ConfigError("override: unknown key '" + key + "'");
    j[key] = value;
  } else {
    const std::string block = key.substr(0, dot);
    const std::string field = key.substr(dot + 1);
    if (!j.contains(block)) throw ConfigError("override: unknown block '" + block + "'");
    // Setting a pde field when the block is null creates it with defaults.
    if (block == "pde" && j[block].is_null()) j[block] = {{"ell", PdeBlock{}.ell}, {"n", PdeBlock{}.n}};
    if (!j[block].is_object() || !j[block].contains(field))
      throw ConfigError("override: unknown key '" + key + "'");
    j[block][field] = value;
  }
  cfg = config_from_json(j);
}

void apply_environment(RunConfig& cfg) {
  const char* s = std::getenv("CROSSNET_SEED");
  if (s == nullptr || *s == '\0') return;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || *s == '-')
    throw ConfigError(std::string("CROSSNET_SEED is not an unsigned integer: '") + s + "'");
  cfg.seed = v;
}

}  // namespace crossnet
