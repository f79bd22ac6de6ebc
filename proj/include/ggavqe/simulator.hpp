#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ggavqe/generator.hpp"
#include "ggavqe/pauli.hpp"

namespace ggavqe {

inline constexpr int kMaxSimulatorQubits = 26;
inline constexpr int kDefaultDenseLimit = 12;

/**
 * Dense 2^n amplitude vector.
 *
 * Qubit 0 is the least significant bit of the amplitude index, so the
 * amplitude of |q0 q1 ... q_{n-1}> sits at index sum_k q_k 2^k. Bit strings
 * passed as text are written qubit 0 first: "1100" sets qubits 0 and 1.
 */
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<cplx> amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Computational basis state from a qubit-0-first bit string.
  static StateVector from_bits(std::string_view bits);
  /// |->^{\otimes n}
  static StateVector uniform_minus(int n_qubits);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  StateVector normalized() const;

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

std::uint64_t bits_to_index(std::string_view bits);

StateVector apply_pauli_string(const StateVector& state, const PauliString& s);
/// p|state>, not normalized in general.
StateVector apply_pauli_sum(const StateVector& state, const PauliSum& p);

/// exp(-i theta B)|state> via the closed form of B's algebraic class.
StateVector apply_exp_generator(const StateVector& state, const Generator& g, double theta);

/// <state|s|state>, real because Pauli strings are Hermitian.
double expectation_string(const StateVector& state, const PauliString& s);

/// <state|h|state>. Throws std::invalid_argument for non-Hermitian h.
double expectation(const StateVector& state, const PauliSum& h);

cplx inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

/// Applies a 2x2 unitary (row-major) to one qubit.
void apply_single_qubit(StateVector& state, int qubit, const std::array<cplx, 4>& u);

/// Dense matrix of a Pauli sum in the little-endian basis.
Eigen::MatrixXcd to_dense(const PauliSum& p);

struct GroundState {
  double energy;
  StateVector state;
};

/// Lowest eigenpair of the dense Hermitian matrix of h.
GroundState exact_ground_state(const PauliSum& h, int dense_limit = kDefaultDenseLimit);

}  // namespace ggavqe
