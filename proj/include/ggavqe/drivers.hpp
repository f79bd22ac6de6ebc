#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ggavqe/ansatz.hpp"
#include "ggavqe/landscape.hpp"
#include "ggavqe/measurement.hpp"

namespace ggavqe {

/// At least one field must be set; the first rule that fires ends the run.
struct StopRule {
  std::optional<int> max_operators;
  /// ADAPT: stop when max |dL/dtheta(0)| over the pool falls below this.
  std::optional<double> gradient_epsilon;
  /// Stop when the best predicted per-iteration improvement falls below this.
  std::optional<double> min_energy_decrease;

  void validate() const;
};

enum class PlanChoice { Auto, None, Ising, GeneralChain };
enum class OverlapMethod { Exact, ComputeUncompute, SwapTest };

std::string_view to_string(PlanChoice p);
std::string_view to_string(OverlapMethod m);
PlanChoice parse_plan_choice(std::string_view s);
OverlapMethod parse_overlap_method(std::string_view s);

struct DriverOptions {
  StopRule stop;
  PlanChoice plan = PlanChoice::Auto;
  /// Overlap mode: stop once no generator promises a larger gain.
  double overlap_gain_threshold = 1e-4;
  OverlapMethod overlap_method = OverlapMethod::Exact;
  /// ADAPT reoptimization sweeps.
  int max_sweeps = 50;
  double sweep_tolerance = 1e-10;
  /// Worker threads for pool screening; results do not depend on this.
  int threads = 1;
  /// When set, per-iteration fidelity against this state is recorded.
  std::optional<StateVector> reference;
};

/// One row of the pool screening table.
struct ScreenEntry {
  int id = 0;
  std::string label;
  LandscapeModel model;
  double theta = 0.0;      // optimal body angle
  double predicted = 0.0;  // model value at theta
  double gain = 0.0;       // improvement over the current value (>= 0)
};

struct SelectedStep {
  int id = 0;
  std::string label;
  double angle = 0.0;
  double textbook_angle = 0.0;
};

struct IterationRecord {
  int iteration = 0;  // 1-based
  bool appended = false;
  std::vector<SelectedStep> selected;
  double current = 0.0;    // measured value before this iteration (e0)
  double predicted = 0.0;  // landscape optimum
  double exact = 0.0;      // exact replay: energy, or overlap with the target
  std::optional<double> fidelity;
  int sweeps = 0;          // ADAPT only
  std::vector<ScreenEntry> screening;
  Accounting accounting;        // cumulative after this iteration
  Accounting accounting_delta;  // spent in this iteration
};

struct RunTrace {
  std::string driver;
  std::string status;
  std::string plan_kind = "none";
  std::size_t plan_groups = 0;
  std::string objective = "energy";  // or "overlap"
  double initial_exact = 0.0;
  std::optional<double> initial_fidelity;
  std::vector<IterationRecord> iterations;
  Ansatz final_ansatz{InitialState::uniform_minus(1)};
  double final_exact = 0.0;
  std::optional<double> final_fidelity;
  Accounting accounting;
  std::string backend_mode;
  int shots = 0;
  std::uint64_t seed = 0;
  /// Free-form configuration echo filled in by the caller.
  nlohmann::ordered_json config = nlohmann::ordered_json::object();

  /// Appended operators only.
  std::size_t n_operators() const { return final_ansatz.size(); }
};

nlohmann::ordered_json to_json(const RunTrace& t);
/// iteration,n_operators,exact,predicted,fidelity,circuits,shots
std::string convergence_csv(const RunTrace& t);

/// Resolves PlanChoice::Auto: a plan is used only when the pool is all
/// involutory and the plan covers every screening observable of h.
std::optional<MeasurementPlan> choose_plan(const PauliSum& h, const Pool& pool, PlanChoice choice,
                                           std::string* kind = nullptr);

/// Greedy energy sorting with a frozen core.
RunTrace gga_vqe(const PauliSum& h, const Pool& pool, const InitialState& initial,
                 const Backend& backend, const DriverOptions& opt);

/// Gradient selection plus Rotoselect-style forward/backward sweeps over all angles.
RunTrace adapt_vqe(const PauliSum& h, const Pool& pool, const InitialState& initial,
                   const Backend& backend, const DriverOptions& opt);

/// Greedy maximization of |<target|psi>|^2 with a frozen core.
RunTrace overlap_gga_vqe(const Ansatz& target, const Pool& pool, const InitialState& initial,
                         const Backend& backend, const DriverOptions& opt);

/// Top two generators of the 1-D ranking optimized jointly each iteration.
RunTrace gga_vqe_2d(const PauliSum& h, const Pool& pool, const InitialState& initial,
                    const Backend& backend, const DriverOptions& opt);

}  // namespace ggavqe
