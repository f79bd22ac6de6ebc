#include "app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include "ggavqe/hamiltonians.hpp"
#include "ggavqe/landscape.hpp"
#include "ggavqe/pools.hpp"

namespace ggavqe::app {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"problem", {"kind", "n_qubits", "h", "j", "hx", "hz", "jx", "jy", "jz", "file"}},
      {"pool", {"name"}},
      {"initial", {"state"}},
      {"driver", {"name", "plan", "threads", "max_sweeps", "sweep_tolerance", "reference", "dense_limit"}},
      {"stop", {"max_operators", "gradient_epsilon", "min_energy_decrease"}},
      {"backend", {"mode", "shots", "seed"}},
      {"overlap", {"method", "target", "threshold"}},
      {"output", {"dir", "prefix"}},
  };
  return s;
}

void check_key(const std::string& section, const std::string& key) {
  const auto it = schema().find(section);
  if (it == schema().end()) throw ConfigError(section, "unknown section");
  if (!it->second.count(key)) throw ConfigError(section + "." + key, "unknown key");
}

template <class T>
std::optional<T> get(const ptree& t, const std::string& key) {
  const auto raw = t.get_optional<std::string>(key);
  if (!raw) return std::nullopt;
  const std::string s = boost::trim_copy(*raw);
  if constexpr (std::is_same_v<T, std::string>) {
    return s;
  } else {
    if (std::is_unsigned_v<T> && !s.empty() && s.front() == '-')
      throw ConfigError(key, "expected a non-negative integer, got '" + s + "'");
    try {
      return boost::lexical_cast<T>(s);
    } catch (const boost::bad_lexical_cast&) {
      throw ConfigError(key, "cannot parse '" + s + "'");
    }
  }
}

template <class T>
T get_or(const ptree& t, const std::string& key, T fallback) {
  return get<T>(t, key).value_or(std::move(fallback));
}

template <class T>
T require(const ptree& t, const std::string& key) {
  auto v = get<T>(t, key);
  if (!v) throw ConfigError(key, "required");
  return *v;
}

std::vector<double> get_list(const ptree& t, const std::string& key) {
  std::vector<double> out;
  const auto raw = get<std::string>(t, key);
  if (!raw) return out;
  std::vector<std::string> parts;
  boost::split(parts, *raw, boost::is_any_of(", \t"), boost::token_compress_on);
  for (const auto& p : parts) {
    if (p.empty()) continue;
    try {
      out.push_back(boost::lexical_cast<double>(p));
    } catch (const boost::bad_lexical_cast&) {
      throw ConfigError(key, "cannot parse list entry '" + p + "'");
    }
  }
  return out;
}

// Runs f, rethrowing library argument errors as config errors on `field`.
template <class F>
auto as_field(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::pair<std::string, std::string> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError(text, "override must look like section.key=value");
  std::string key = boost::trim_copy(text.substr(0, eq));
  const auto dot = key.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == key.size())
    throw ConfigError(key, "override key must look like section.key");
  return {key, boost::trim_copy(text.substr(eq + 1))};
}

ptree load_tree(const fs::path& path, const Overrides& overrides) {
  ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config", e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError(section, "keys must sit inside a [section]");
    if (!schema().count(section)) throw ConfigError(section, "unknown section");
    for (const auto& kv : body) check_key(section, kv.first);
  }
  for (const auto& [key, value] : overrides) {
    const auto dot = key.find('.');
    check_key(key.substr(0, dot), key.substr(dot + 1));
    tree.put(key, value);
  }
  return tree;
}

Backend RunConfig::make_backend() const {
  return backend_mode == "sampled" ? Backend::sampled(shots, seed) : Backend::exact();
}

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [section, body] : tree)
    for (const auto& [key, value] : body) j[section][key] = value.data();
  return j;
}

RunConfig build_run_config(const ptree& tree, const fs::path& base_dir) {
  RunConfig c;
  c.tree = tree;
  c.base_dir = base_dir;

  c.driver = get_or<std::string>(tree, "driver.name", "gga");
  if (c.driver != "gga" && c.driver != "adapt" && c.driver != "overlap" && c.driver != "gga2d")
    throw ConfigError("driver.name", "unknown driver '" + c.driver + "' (expected gga, adapt, overlap or gga2d)");

  // Problem.
  c.problem_kind = get_or<std::string>(tree, "problem.kind", c.driver == "overlap" ? "none" : "");
  std::optional<FermionIntegrals> ints;
  if (c.problem_kind == "ising") {
    IsingSpec s;
    s.n_qubits = require<int>(tree, "problem.n_qubits");
    s.h = get_or(tree, "problem.h", s.h);
    s.j = get_or(tree, "problem.j", s.j);
    c.hamiltonian = as_field("problem.n_qubits", [&] { return build_ising(s); });
  } else if (c.problem_kind == "general_chain") {
    GeneralChainSpec s;
    s.n_qubits = require<int>(tree, "problem.n_qubits");
    s.hx = get_list(tree, "problem.hx");
    s.hz = get_list(tree, "problem.hz");
    s.jx = get_list(tree, "problem.jx");
    s.jy = get_list(tree, "problem.jy");
    s.jz = get_list(tree, "problem.jz");
    c.hamiltonian = as_field("problem", [&] { return build_general_chain(s); });
  } else if (c.problem_kind == "pauli_file") {
    const auto file = resolve(base_dir, require<std::string>(tree, "problem.file"));
    const int n = get_or(tree, "problem.n_qubits", 0);
    c.hamiltonian = as_field("problem.file", [&] { return load_pauli_sum(file, n); });
    if (!c.hamiltonian->is_hermitian()) throw ConfigError("problem.file", "Hamiltonian is not Hermitian");
  } else if (c.problem_kind == "integrals") {
    const auto file = resolve(base_dir, require<std::string>(tree, "problem.file"));
    ints = as_field("problem.file", [&] { return load_integrals(file); });
    c.hamiltonian = as_field("problem.file", [&] { return map_molecular_hamiltonian(*ints); });
  } else if (c.problem_kind == "none") {
    if (c.driver != "overlap") throw ConfigError("problem.kind", "a Hamiltonian is required for this driver");
  } else {
    throw ConfigError("problem.kind", c.problem_kind.empty()
                                          ? std::string("required")
                                          : "unknown problem '" + c.problem_kind +
                                                "' (expected ising, general_chain, pauli_file or integrals)");
  }

  // Overlap target, which also fixes the register when there is no problem.
  c.options.overlap_method =
      as_field("overlap.method", [&] { return parse_overlap_method(get_or<std::string>(tree, "overlap.method", "exact")); });
  c.options.overlap_gain_threshold = get_or(tree, "overlap.threshold", c.options.overlap_gain_threshold);
  if (c.options.overlap_gain_threshold < 0) throw ConfigError("overlap.threshold", "must be >= 0");
  if (c.driver == "overlap") {
    const auto file = resolve(base_dir, require<std::string>(tree, "overlap.target"));
    c.target = as_field("overlap.target", [&] { return load_ansatz(file); });
  }
  c.n_qubits = c.hamiltonian ? c.hamiltonian->n_qubits() : c.target->n_qubits();
  if (c.target && c.target->n_qubits() != c.n_qubits)
    throw ConfigError("overlap.target", "target register differs from the problem register");

  // Initial state.
  std::string default_initial;
  if (c.problem_kind == "integrals")
    default_initial = "hf " + std::to_string(ints->n_electrons) + " " + std::to_string(c.n_qubits);
  else if (c.problem_kind == "pauli_file")
    default_initial = "basis " + std::string(static_cast<std::size_t>(c.n_qubits), '0');
  else if (c.problem_kind == "none")
    default_initial = c.target->initial().spec();
  else
    default_initial = "minus " + std::to_string(c.n_qubits);
  c.initial = as_field("initial.state", [&] {
    return InitialState::parse(get_or<std::string>(tree, "initial.state", default_initial));
  });
  if (c.initial.n_qubits() != c.n_qubits)
    throw ConfigError("initial.state", "register has " + std::to_string(c.initial.n_qubits()) +
                                           " qubits, problem has " + std::to_string(c.n_qubits));

  // Pool.
  const std::string pool_name = require<std::string>(tree, "pool.name");
  std::string pool_spec = pool_name;
  if (boost::starts_with(pool_spec, "custom:"))
    pool_spec = "custom:" + resolve(base_dir, pool_spec.substr(7)).string();
  c.pool = as_field("pool.name", [&] { return pool_from_spec(pool_spec, c.n_qubits); });
  if (c.pool.size() == 0) throw ConfigError("pool.name", "pool is empty");

  // Driver options.
  c.options.plan = as_field("driver.plan", [&] { return parse_plan_choice(get_or<std::string>(tree, "driver.plan", "auto")); });
  c.options.threads = get_or(tree, "driver.threads", 1);
  if (c.options.threads < 1) throw ConfigError("driver.threads", "must be >= 1");
  c.options.max_sweeps = get_or(tree, "driver.max_sweeps", c.options.max_sweeps);
  if (c.options.max_sweeps < 1) throw ConfigError("driver.max_sweeps", "must be >= 1");
  c.options.sweep_tolerance = get_or(tree, "driver.sweep_tolerance", c.options.sweep_tolerance);
  c.reference = get_or<std::string>(tree, "driver.reference", "auto");
  if (c.reference != "auto" && c.reference != "ground_state" && c.reference != "none")
    throw ConfigError("driver.reference", "expected auto, ground_state or none");
  c.dense_limit = get_or(tree, "driver.dense_limit", c.dense_limit);

  c.options.stop.max_operators = get<int>(tree, "stop.max_operators");
  c.options.stop.gradient_epsilon = get<double>(tree, "stop.gradient_epsilon");
  c.options.stop.min_energy_decrease = get<double>(tree, "stop.min_energy_decrease");
  if (c.driver != "overlap") as_field("stop", [&] { c.options.stop.validate(); });
  if (c.driver == "gga2d") {
    if (c.pool.size() < 2) throw ConfigError("pool.name", "gga2d needs at least two generators");
    if (!c.pool.all_involutory()) throw ConfigError("pool.name", "gga2d needs an involutory pool");
  }
  if (c.hamiltonian && c.driver != "overlap")
    as_field("driver.plan", [&] { (void)choose_plan(*c.hamiltonian, c.pool, c.options.plan); });

  // Backend.
  c.backend_mode = get_or<std::string>(tree, "backend.mode", "exact");
  if (c.backend_mode != "exact" && c.backend_mode != "sampled")
    throw ConfigError("backend.mode", "expected exact or sampled");
  c.shots = get_or(tree, "backend.shots", c.shots);
  if (c.shots < 1) throw ConfigError("backend.shots", "must be >= 1");
  c.seed = get_or<std::uint64_t>(tree, "backend.seed", 0);
  if (c.driver == "overlap" && c.options.overlap_method == OverlapMethod::SwapTest &&
      2 * c.n_qubits + 1 > kMaxSimulatorQubits)
    throw ConfigError("overlap.method", "swap_test register exceeds the simulator limit");

  // Output.
  if (const auto dir = get<std::string>(tree, "output.dir")) {
    c.output_dir = resolve(base_dir, *dir);
  } else if (const char* env = std::getenv("GGAVQE_OUTPUT_DIR"); env && *env) {
    c.output_dir = env;
  } else {
    c.output_dir = "ggavqe-out";
  }
  c.prefix = get_or<std::string>(tree, "output.prefix", c.prefix);
  if (c.prefix.empty() || c.prefix.find('/') != std::string::npos)
    throw ConfigError("output.prefix", "must be a plain file name");
  return c;
}

RunConfig load_run_config(const fs::path& path, const Overrides& overrides) {
  const ptree tree = load_tree(path, overrides);
  return build_run_config(tree, path.parent_path());
}

Ansatz load_ansatz(const fs::path& path) {
  std::string text = read_text_file(path);
  if (path.extension() == ".json") {
    try {
      text = nlohmann::json::parse(text).at("final").at("ansatz").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": not a run trace (" + e.what() + ")", 0);
    }
  }
  try {
    return parse_ansatz(text, [](const std::string& spec, int n) { return pool_from_spec(spec, n); });
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

RunTrace execute(const RunConfig& cfg) {
  DriverOptions opt = cfg.options;
  const bool want_reference =
      cfg.reference == "ground_state" || (cfg.reference == "auto" && cfg.n_qubits <= cfg.dense_limit);
  if (cfg.hamiltonian && cfg.driver != "overlap" && want_reference)
    opt.reference = exact_ground_state(*cfg.hamiltonian, cfg.dense_limit).state;
  const Backend backend = cfg.make_backend();
  RunTrace tr;
  if (cfg.driver == "gga") tr = gga_vqe(*cfg.hamiltonian, cfg.pool, cfg.initial, backend, opt);
  else if (cfg.driver == "adapt") tr = adapt_vqe(*cfg.hamiltonian, cfg.pool, cfg.initial, backend, opt);
  else if (cfg.driver == "gga2d") tr = gga_vqe_2d(*cfg.hamiltonian, cfg.pool, cfg.initial, backend, opt);
  else tr = overlap_gga_vqe(*cfg.target, cfg.pool, cfg.initial, backend, opt);
  tr.config = cfg.echo();
  return tr;
}

fs::path write_outputs(const RunConfig& cfg, const RunTrace& trace) {
  fs::create_directories(cfg.output_dir);
  const fs::path json_path = cfg.output_dir / (cfg.prefix + ".json");
  const fs::path csv_path = cfg.output_dir / (cfg.prefix + ".csv");
  std::ofstream(json_path) << to_json(trace).dump(2) << "\n";
  std::ofstream(csv_path) << convergence_csv(trace);
  return json_path;
}

std::string landscape_csv(const RunConfig& cfg, int generator_id, int n_points,
                          const std::optional<Ansatz>& prefix) {
  if (!cfg.hamiltonian) throw ConfigError("problem.kind", "landscape needs a Hamiltonian");
  if (generator_id < 0 || generator_id >= static_cast<int>(cfg.pool.size()))
    throw ConfigError("--generator", "no generator " + std::to_string(generator_id) + " in a pool of " +
                                         std::to_string(cfg.pool.size()));
  if (n_points < 2) throw ConfigError("--points", "need at least 2 points");
  const Generator& g = cfg.pool.at(generator_id);
  const StateVector state = prefix ? prefix->prepare() : cfg.initial.prepare();
  const Backend backend = cfg.make_backend();
  const double e0 = measure_expectation(backend, state, *cfg.hamiltonian, nullptr, {0, 1u << 30, 0});
  std::uint64_t node = 0;
  const auto model = reconstruct_landscape(
      g.algebraic_class(), e0,
      [&](double t) {
        return measure_expectation(backend, apply_exp_generator(state, g, t), *cfg.hamiltonian, nullptr,
                                   {0, static_cast<std::uint64_t>(g.id()), node++});
      },
      g.angle_scale());
  std::string out = "theta,textbook_theta,reconstructed,exact\n";
  for (int k = 0; k < n_points; ++k) {
    const double t = -std::numbers::pi + 2.0 * std::numbers::pi * k / n_points;
    const double exact = expectation(apply_exp_generator(state, g, t), *cfg.hamiltonian);
    out += fmt(t) + "," + fmt(g.textbook_angle(t)) + "," + fmt(model.evaluate(t)) + "," + fmt(exact) + "\n";
  }
  return out;
}

nlohmann::ordered_json ground_truth(const RunConfig& cfg, const std::optional<Ansatz>& ansatz) {
  if (!cfg.hamiltonian) throw ConfigError("problem.kind", "ground-truth needs a Hamiltonian");
  const GroundState gs = exact_ground_state(*cfg.hamiltonian, cfg.dense_limit);
  nlohmann::ordered_json j;
  j["n_qubits"] = cfg.n_qubits;
  j["ground_energy"] = gs.energy;
  const StateVector init = cfg.initial.prepare();
  j["initial"] = {{"energy", expectation(init, *cfg.hamiltonian)}, {"fidelity", fidelity(gs.state, init)}};
  if (ansatz) {
    if (ansatz->n_qubits() != cfg.n_qubits) throw ConfigError("--ansatz", "register size differs from the problem");
    const StateVector s = ansatz->prepare();
    j["ansatz"] = {{"n_operators", ansatz->size()},
                   {"energy", expectation(s, *cfg.hamiltonian)},
                   {"fidelity", fidelity(gs.state, s)}};
  }
  return j;
}

std::string describe_pool(const Pool& pool) {
  std::ostringstream os;
  os << "# pool " << pool.spec << ", " << pool.size() << " generators\n";
  os << "id\tlabel\tclass\tterms\tscale\n";
  for (const auto& g : pool.generators)
    os << g.id() << '\t' << g.label() << '\t' << to_string(g.algebraic_class()) << '\t' << g.body().size()
       << '\t' << g.angle_scale() << '\n';
  return os.str();
}

}  // namespace ggavqe::app
