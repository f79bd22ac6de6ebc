#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ggavqe/generator.hpp"

namespace ggavqe {

/**
 * Optional restriction of the QEB pool.
 *
 * With `n_occupied` set, only excitations between the first n_occupied
 * qubits and the rest survive: singles need one index on each side, doubles
 * need (p,q) occupied and (r,s) virtual. With `conserve_spin`, qubit k is
 * taken to carry spin k % 2 and the excitation must preserve total spin.
 */
struct QebFilter {
  std::optional<int> n_occupied;
  bool conserve_spin = false;
};

/// Singles A_pq for p<q, then doubles A_pqrs with p<q, r<s, (p,q)<(r,s), all indices distinct.
Pool qeb_pool(int n_qubits, const QebFilter& filter = {});

/// Singles X_q Y_p for both orders of each pair, then three doubles per index pairing.
Pool qubit_hardware_efficient_pool(int n_qubits);

/// {Y_p} then {Z_p Y_{p+1}}, p = 0..N-2.
Pool minimal_hardware_efficient_pool(int n_qubits);

/// One involutory X_a Y_b generator per listed qubit pair (a, b), angle scale 1/2.
Pool pair_pool(int n_qubits, const std::vector<std::pair<int, int>>& pairs);

/// The seven pairs used by the ten-qubit Hartree-Fock overlap experiment.
const std::vector<std::pair<int, int>>& hf_toy_pairs();

// Custom pool file: blocks introduced by
//   generator <label> [involutory|tripotent|auto] [scale <s>]
// followed by Pauli-sum lines in the Hamiltonian text format.
Pool parse_custom_pool(std::string_view text, int n_qubits);
Pool load_custom_pool(const std::filesystem::path& path, int n_qubits);

/**
 * Builds a pool from its recipe string:
 *   minimal | qeb[:nocc=<k>][,spin] | hwe | pairs:<a>-<b>,... | hf_pairs | custom:<path>
 * Long names (minimal_hardware_efficient, qubit_hardware_efficient) are
 * accepted too. Throws std::invalid_argument for anything else.
 */
Pool pool_from_spec(const std::string& spec, int n_qubits);

}  // namespace ggavqe
