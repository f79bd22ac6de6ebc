#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "app.hpp"
#include "ggavqe/hamiltonians.hpp"
#include "ggavqe/pools.hpp"

namespace fs = std::filesystem;
using namespace ggavqe;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string backend, output_dir;
  std::optional<int> shots, threads;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd, bool run_flags) {
    cmd->add_option("config", config, "configuration file (INI)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--set", sets, "override a config value, section.key=value");
    cmd->add_option("--backend", backend, "exact or sampled");
    cmd->add_option("--shots", shots, "shots per measured group");
    cmd->add_option("--seed", seed, "sampling seed");
    if (run_flags) {
      cmd->add_option("--threads", threads, "screening worker threads");
      cmd->add_option("--output-dir", output_dir, "directory for trace files");
    }
  }

  app::RunConfig load() const {
    app::Overrides ov;
    for (const auto& s : sets) ov.push_back(app::parse_override(s));
    if (!backend.empty()) ov.emplace_back("backend.mode", backend);
    if (shots) ov.emplace_back("backend.shots", std::to_string(*shots));
    if (seed) ov.emplace_back("backend.seed", std::to_string(*seed));
    if (threads) ov.emplace_back("driver.threads", std::to_string(*threads));
    if (!output_dir.empty()) ov.emplace_back("output.dir", fs::absolute(output_dir).string());
    return app::load_run_config(config, ov);
  }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Greedy gradient-free adaptive VQE on a state-vector simulator"};
  cli.require_subcommand(1);

  Common run_args;
  auto* run = cli.add_subcommand("run", "run a driver and write the trace JSON and CSV");
  run_args.attach(run, true);
  bool quiet = false;
  run->add_flag("-q,--quiet", quiet, "no summary on stdout");

  Common land_args;
  int generator = 0, points = 201;
  std::string land_ansatz, land_out;
  auto* land = cli.add_subcommand("landscape", "CSV of the reconstructed and exact landscape of one generator");
  land_args.attach(land, false);
  land->add_option("-g,--generator", generator, "generator id")->required();
  land->add_option("-n,--points", points, "angles in [-pi, pi)");
  land->add_option("--ansatz", land_ansatz, "prepare this ansatz first (text or trace JSON)")->check(CLI::ExistingFile);
  land->add_option("-o,--out", land_out, "output file (default stdout)");

  Common gt_args;
  std::string gt_ansatz, gt_out;
  auto* gt = cli.add_subcommand("ground-truth", "exact ground energy and fidelity of an ansatz");
  gt_args.attach(gt, false);
  gt->add_option("--ansatz", gt_ansatz, "ansatz text or trace JSON")->check(CLI::ExistingFile);
  gt->add_option("-o,--out", gt_out, "output file (default stdout)");

  auto* pool = cli.add_subcommand("pool", "operator pools");
  pool->require_subcommand(1);
  std::string pd_config, pd_spec;
  int pd_qubits = 0;
  auto* describe = pool->add_subcommand("describe", "list id, label, class, terms and scale");
  describe->add_option("config", pd_config, "configuration file; its pool.name is used")->check(CLI::ExistingFile);
  describe->add_option("--pool", pd_spec, "pool spec, e.g. minimal, hwe, qeb:nocc=2, pairs:4-0,5-1");
  describe->add_option("--qubits", pd_qubits, "register size for --pool");

  auto* ham = cli.add_subcommand("ham", "Hamiltonians");
  ham->require_subcommand(1);
  Common hb_args;
  std::string hb_out;
  auto* build = ham->add_subcommand("build", "write the configured Hamiltonian as a Pauli sum");
  hb_args.attach(build, false);
  build->add_option("-o,--out", hb_out, "output file (default stdout)");
  std::string jw_file, jw_out;
  auto* jw = ham->add_subcommand("jw", "Jordan-Wigner map an integral file");
  jw->add_option("integrals", jw_file, "integral file")->required()->check(CLI::ExistingFile);
  jw->add_option("-o,--out", jw_out, "output file (default stdout)");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      const auto cfg = run_args.load();
      const RunTrace trace = app::execute(cfg);
      const fs::path out = app::write_outputs(cfg, trace);
      if (!quiet) {
        std::printf("driver %s: %s after %d iterations, %zu operators\n", trace.driver.c_str(),
                    trace.status.c_str(), static_cast<int>(trace.iterations.size()), trace.n_operators());
        std::printf("final %s %.12f\n", trace.objective == "overlap" ? "overlap" : "energy", trace.final_exact);
        if (trace.final_fidelity) std::printf("final fidelity %.6f\n", *trace.final_fidelity);
        std::printf("circuits %llu, shots %llu\n", static_cast<unsigned long long>(trace.accounting.circuits),
                    static_cast<unsigned long long>(trace.accounting.shots));
        std::printf("wrote %s\n", out.string().c_str());
      }
    } else if (*land) {
      const auto cfg = land_args.load();
      std::optional<Ansatz> prefix;
      if (!land_ansatz.empty()) prefix = app::load_ansatz(land_ansatz);
      emit(app::landscape_csv(cfg, generator, points, prefix), land_out);
    } else if (*gt) {
      const auto cfg = gt_args.load();
      std::optional<Ansatz> a;
      if (!gt_ansatz.empty()) a = app::load_ansatz(gt_ansatz);
      emit(app::ground_truth(cfg, a).dump(2) + "\n", gt_out);
    } else if (*describe) {
      Pool p;
      if (!pd_spec.empty()) {
        if (pd_qubits < 1) throw app::ConfigError("--qubits", "required with --pool");
        try {
          p = pool_from_spec(pd_spec, pd_qubits);
        } catch (const std::invalid_argument& e) {
          throw app::ConfigError("--pool", e.what());
        }
      } else if (!pd_config.empty()) {
        p = app::load_run_config(pd_config).pool;
      } else {
        throw app::ConfigError("pool", "give a config file or --pool with --qubits");
      }
      std::cout << app::describe_pool(p);
    } else if (*build) {
      const auto cfg = hb_args.load();
      if (!cfg.hamiltonian) throw app::ConfigError("problem.kind", "no Hamiltonian configured");
      emit(format_pauli_sum(*cfg.hamiltonian), hb_out);
    } else if (*jw) {
      FermionIntegrals ints;
      try {
        ints = load_integrals(jw_file);
      } catch (const ParseError& e) {
        throw app::ConfigError("integrals", e.what());
      }
      emit(format_pauli_sum(map_molecular_hamiltonian(ints)), jw_out);
    }
  } catch (const app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
