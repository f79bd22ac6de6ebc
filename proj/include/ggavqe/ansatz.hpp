#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ggavqe/generator.hpp"
#include "ggavqe/simulator.hpp"

namespace ggavqe {

/// Named preparation of the reference register.
class InitialState {
 public:
  struct Basis {
    std::string bits;  // qubit 0 first
  };
  struct UniformMinus {
    int n_qubits;
  };
  struct Vector {
    StateVector state;
  };

  static InitialState basis(std::string bits);
  static InitialState hartree_fock(int n_electrons, int n_qubits);
  static InitialState uniform_minus(int n_qubits);
  static InitialState vector(StateVector state);

  int n_qubits() const;
  StateVector prepare() const;
  /// Applies the inverse of the preparation unitary to `state` in place.
  /// Vector preparations use the Householder reflection that swaps |0> and
  /// the (phase-aligned) target, which is its own inverse.
  void unprepare(StateVector& state) const;

  /// "basis 1100", "minus 4", or "vector <n> <re> <im> ..."
  std::string spec() const;
  static InitialState parse(std::string_view spec);

  const std::variant<Basis, UniformMinus, Vector>& kind() const noexcept { return kind_; }

 private:
  explicit InitialState(std::variant<Basis, UniformMinus, Vector> k) : kind_(std::move(k)) {}
  std::variant<Basis, UniformMinus, Vector> kind_;
};

struct AnsatzStep {
  Generator generator;
  double angle;  // body angle, wrapped into [-pi, pi)
};

/// exp(-i theta_m B_m) ... exp(-i theta_1 B_1) |initial>
class Ansatz {
 public:
  explicit Ansatz(InitialState initial, std::string pool_spec = {})
      : initial_(std::move(initial)), pool_spec_(std::move(pool_spec)) {}

  const InitialState& initial() const noexcept { return initial_; }
  const std::vector<AnsatzStep>& steps() const noexcept { return steps_; }
  const std::string& pool_spec() const noexcept { return pool_spec_; }
  std::size_t size() const noexcept { return steps_.size(); }
  int n_qubits() const { return initial_.n_qubits(); }

  void append(const Generator& g, double angle);
  void set_angle(std::size_t k, double angle);

  /// Replays all steps on the prepared initial state.
  StateVector prepare() const;
  /// Replays steps [0, k) only.
  StateVector prepare_prefix(std::size_t k) const;
  /// U^dagger |state>: inverse steps in reverse order, then the inverse preparation.
  StateVector apply_inverse(const StateVector& state) const;

 private:
  InitialState initial_;
  std::string pool_spec_;
  std::vector<AnsatzStep> steps_;
};

/// Wraps into [-pi, pi).
double wrap_angle(double theta);

// Text format:
//   # ggavqe ansatz
//   initial <initial spec>
//   pool <pool spec>
//   <generator id> <angle, 17 significant digits>   # label
std::string format_ansatz(const Ansatz& a);

/// Resolves generator ids via the pool built from the file's `pool` line.
using PoolResolver = std::function<Pool(const std::string& spec, int n_qubits)>;
Ansatz parse_ansatz(std::string_view text, const PoolResolver& resolve);

}  // namespace ggavqe
