#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ggavqe/pauli.hpp"

namespace ggavqe {

/// Algebraic class of a pool generator; decides the closed-form exponential.
enum class AlgebraicClass {
  Involutory,  // B^2 = I
  Tripotent,   // B^3 = B
};

std::string_view to_string(AlgebraicClass c);

/**
 * Hermitian pool element B, exponentiated as exp(-i theta B).
 *
 * The class is verified symbolically at construction. For generators whose
 * textbook form carries a prefactor (1/2 X_q Y_p, 1/8 XYXX, ...) the body is
 * the bare unit-involutory string and the prefactor is kept in
 * `angle_scale`, so exp(-i theta_textbook * scale * P) == exp(-i theta * P)
 * with theta = scale * theta_textbook. Angles stored in an ansatz are always
 * the body angle theta.
 */
class Generator {
 public:
  Generator(int id, std::string label, PauliSum body, AlgebraicClass cls,
            double angle_scale = 1.0);

  int id() const noexcept { return id_; }
  const std::string& label() const noexcept { return label_; }
  const PauliSum& body() const noexcept { return body_; }
  AlgebraicClass algebraic_class() const noexcept { return class_; }
  double angle_scale() const noexcept { return angle_scale_; }
  int n_qubits() const noexcept { return body_.n_qubits(); }

  /// Converts a body angle to the textbook-prefactor convention.
  double textbook_angle(double body_angle) const { return body_angle / angle_scale_; }

  Generator with_id(int id) const;

  /// Checks the declared class against B^2 or B^3 computed symbolically.
  static bool verify_class(const PauliSum& body, AlgebraicClass cls, double tol = 1e-12);

 private:
  int id_;
  std::string label_;
  PauliSum body_;
  AlgebraicClass class_;
  double angle_scale_;
};

enum class PoolKind { Qeb, QubitHardwareEfficient, MinimalHardwareEfficient, Custom };

std::string_view to_string(PoolKind k);

/// Ordered generator list; ids are 0..M-1 in enumeration order.
struct Pool {
  PoolKind kind = PoolKind::Custom;
  /// Recipe that rebuilds this pool via pool_from_spec(); written into ansatz files.
  std::string spec;
  std::vector<Generator> generators;

  std::size_t size() const noexcept { return generators.size(); }
  int n_qubits() const { return generators.empty() ? 0 : generators.front().n_qubits(); }
  const Generator& at(int id) const;
  bool all_involutory() const;
};

}  // namespace ggavqe
