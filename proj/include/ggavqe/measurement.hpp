#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ggavqe/ansatz.hpp"
#include "ggavqe/generator.hpp"
#include "ggavqe/pauli.hpp"
#include "ggavqe/simulator.hpp"

namespace ggavqe {

inline constexpr int kDefaultShots = 2500;

/// Counter-based RNG: an mt19937_64 seeded by hashing (seed, key...).
std::mt19937_64 stream_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> key);
/// Uniform double in [0, 1) with 53 random bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

/// Identifies one logical measurement so sampled results do not depend on call order.
struct StreamKey {
  std::uint64_t iteration = 0;
  std::uint64_t item = 0;    // generator id, pair index, ...
  std::uint64_t sample = 0;  // landscape node, sweep step, ...
};

struct Accounting {
  /// Circuit-equivalents: one per full-observable evaluation without a plan,
  /// one per measured group with a plan, one per overlap circuit.
  std::uint64_t circuits = 0;
  /// Distinct basis-rotated circuits actually sampled (Sampled mode only).
  std::uint64_t group_circuits = 0;
  std::uint64_t shots = 0;
  /// Sampled SWAP-test estimates clamped back into [0, 1].
  std::uint64_t overlap_clamps = 0;
};

/// Expectation source shared by the drivers. Copies are handles onto the same
/// atomic accounting counters.
class Backend {
 public:
  enum class Mode { Exact, Sampled };

  static Backend exact();
  static Backend sampled(int shots, std::uint64_t seed);

  Mode mode() const noexcept { return mode_; }
  bool sampled_mode() const noexcept { return mode_ == Mode::Sampled; }
  int shots() const noexcept { return shots_; }
  std::uint64_t seed() const noexcept { return seed_; }

  Accounting accounting() const;
  void reset_accounting();
  void charge(std::uint64_t circuits, std::uint64_t group_circuits, std::uint64_t shots) const;
  void note_clamp() const;

 private:
  Backend(Mode m, int shots, std::uint64_t seed);
  struct Counters {
    std::atomic<std::uint64_t> circuits{0}, group_circuits{0}, shots{0}, clamps{0};
  };
  Mode mode_;
  int shots_;
  std::uint64_t seed_;
  std::shared_ptr<Counters> counters_;
};

/// One jointly measurable set: a per-qubit basis letter (Z: none, X: H, Y: S^dagger then H).
struct MeasurementGroup {
  std::string basis;
  std::vector<PauliString> members;
};

struct MeasurementPlan {
  int n_qubits = 0;
  std::vector<MeasurementGroup> groups;

  /// Index of the group holding s; identity strings need no group.
  std::optional<std::size_t> group_of(const PauliString& s) const;
  bool covers(const std::vector<PauliString>& strings) const;
};

/// True if s is diagonal after rotating every qubit into `basis`.
bool basis_measures(const std::string& basis, const PauliString& s);

/// Distinct non-identity strings of H, i[B,H] and BHB over all involutory generators.
std::vector<PauliString> screening_observables(const PauliSum& h, const Pool& pool);

/// Every string is placed in the first group whose basis measures it.
MeasurementPlan assign_to_bases(int n_qubits, const std::vector<std::string>& bases,
                                const std::vector<PauliString>& strings);

/// Five fixed bases for the transverse-field Ising model and the minimal pool.
MeasurementPlan plan_ising_screening(int n_qubits);
/// Minimum cover of the general spin chain's screening strings by periodic bases.
MeasurementPlan plan_general_chain_screening(int n_qubits);
/// Greedy qubit-wise commuting grouping, first-fit in canonical order.
MeasurementPlan greedy_qwc_plan(int n_qubits, const std::vector<PauliString>& strings);

/// Estimated <s> for every member of the measured groups.
using StringEstimates = std::map<PauliString, double, PauliOrder>;

/// Measures every group of the plan once (charging one circuit-equivalent per group).
StringEstimates measure_plan(const Backend& backend, const StateVector& state,
                             const MeasurementPlan& plan, const StreamKey& key);

/// Combines estimates linearly; throws std::invalid_argument on a coverage gap.
double combine_estimates(const PauliSum& h, const StringEstimates& est);

/**
 * <state|h|state>. Exact mode delegates to the simulator. Sampled mode
 * measures each group with `shots` samples, using `plan` when given and a
 * greedy qubit-wise grouping of h otherwise. Without a plan the call counts
 * as one circuit-equivalent; with a plan each touched group counts once.
 */
double measure_expectation(const Backend& backend, const StateVector& state, const PauliSum& h,
                           const MeasurementPlan* plan = nullptr, const StreamKey& key = {});

/// |<a|b>|^2 via the all-zeros probability of U_a^dagger U_b |0>.
double overlap_compute_uncompute(const Backend& backend, const Ansatz& a, const Ansatz& b,
                                 const StreamKey& key = {});

/// Ancilla-controlled SWAP on |0>|a>|b>; returns 2 p(0) - 1.
double overlap_swap_test(const Backend& backend, const Ansatz& a, const Ansatz& b,
                         const StreamKey& key = {});

/// p(0) of the explicit SWAP-test circuit, exposed for checking p(0) = (1 + F) / 2.
double swap_test_p0(const StateVector& a, const StateVector& b);

}  // namespace ggavqe
