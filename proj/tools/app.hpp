#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "ggavqe/drivers.hpp"

namespace ggavqe::app {

/// Bad or missing configuration; field is "section.key". Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// "section.key=value" -> pair; throws ConfigError on a malformed override.
std::pair<std::string, std::string> parse_override(const std::string& text);

/// INI text plus overrides; unknown sections or keys are rejected.
boost::property_tree::ptree load_tree(const std::filesystem::path& path, const Overrides& overrides);

struct RunConfig {
  boost::property_tree::ptree tree;
  std::filesystem::path base_dir;  // relative file paths resolve here

  std::string problem_kind;  // ising, general_chain, pauli_file, integrals, none
  std::optional<PauliSum> hamiltonian;
  int n_qubits = 0;
  Pool pool;
  InitialState initial = InitialState::uniform_minus(1);
  std::string driver;  // gga, adapt, overlap, gga2d
  DriverOptions options;
  std::string backend_mode = "exact";
  int shots = kDefaultShots;
  std::uint64_t seed = 0;
  std::optional<Ansatz> target;
  std::string reference = "auto";  // auto, ground_state, none
  int dense_limit = kDefaultDenseLimit;
  std::filesystem::path output_dir;
  std::string prefix = "run";

  Backend make_backend() const;
  /// Every key of the effective configuration, in file order, as strings.
  nlohmann::ordered_json echo() const;
};

/// Validates everything that can be checked before a driver starts.
RunConfig build_run_config(const boost::property_tree::ptree& tree, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path, const Overrides& overrides = {});

/// Ansatz text file or a RunTrace JSON (its final ansatz).
Ansatz load_ansatz(const std::filesystem::path& path);

/// Runs the configured driver and fills in the config echo.
RunTrace execute(const RunConfig& cfg);

/// Writes <prefix>.json and <prefix>.csv; returns the JSON path.
std::filesystem::path write_outputs(const RunConfig& cfg, const RunTrace& trace);

/// Table of theta, textbook theta, reconstructed and exact L for one generator.
std::string landscape_csv(const RunConfig& cfg, int generator_id, int n_points,
                          const std::optional<Ansatz>& prefix);

/// Exact ground energy, plus energy and fidelity of an ansatz when given.
nlohmann::ordered_json ground_truth(const RunConfig& cfg, const std::optional<Ansatz>& ansatz);

/// id, label, class, terms, scale per generator.
std::string describe_pool(const Pool& pool);

}  // namespace ggavqe::app
