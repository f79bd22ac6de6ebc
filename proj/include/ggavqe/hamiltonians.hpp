#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ggavqe/pauli.hpp"
#include "ggavqe/simulator.hpp"

namespace ggavqe {

struct IsingSpec {
  int n_qubits = 2;
  double h = 0.5;
  double j = 0.2;
};

/// h * sum_p X_p + J * sum_p Z_p Z_{p+1}, open boundary.
PauliSum build_ising(const IsingSpec& spec);

/**
 * Open chain with per-site fields and per-bond couplings:
 * sum hx_k X_k + hz_k Z_k + sum jx_k X_k X_{k+1} + jy_k Y_k Y_{k+1} + jz_k Z_k Z_{k+1}.
 *
 * Field arrays have length N and bond arrays N-1. An empty array means all
 * zeros, which keeps hand-written configs short.
 */
struct GeneralChainSpec {
  int n_qubits = 2;
  std::vector<double> hx, hz;
  std::vector<double> jx, jy, jz;
};

PauliSum build_general_chain(const GeneralChainSpec& spec);

/// a_p (or a_p^dagger) = Z_0 ... Z_{p-1} (X_p +/- i Y_p) / 2.
PauliSum jordan_wigner(int p, bool dagger, int n_qubits);

/**
 * One- and two-body coefficients consumed exactly as
 *   H = sum h_pq a_p^dag a_q + sum h_pqrs a_p^dag a_q^dag a_r a_s.
 * Qubit index equals spin-orbital index; no reordering happens here.
 */
struct FermionIntegrals {
  int n_spin_orbitals = 0;
  int n_electrons = 0;
  double constant = 0.0;
  std::map<std::array<int, 2>, double> one_body;
  std::map<std::array<int, 4>, double> two_body;
};

/// Throws std::invalid_argument if the mapped operator is not Hermitian.
PauliSum map_molecular_hamiltonian(const FermionIntegrals& ints);

// Integral text format:
//   norb <n>
//   nelec <n>
//   [const <value>]
//   PQ <p> <q> <value>
//   PQRS <p> <q> <r> <s> <value>
// '#' starts a comment. Repeated entries accumulate.
FermionIntegrals parse_integrals(std::string_view text);
std::string format_integrals(const FermionIntegrals& ints);
FermionIntegrals load_integrals(const std::filesystem::path& path);

PauliSum load_pauli_sum(const std::filesystem::path& path, int n_qubits = 0);
void save_pauli_sum(const std::filesystem::path& path, const PauliSum& h);

/// |1...10...0> with the first n_electrons qubits occupied.
StateVector hartree_fock_state(int n_electrons, int n_qubits);

/// Whole file as a string; throws std::runtime_error naming the path.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace ggavqe
