#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ggavqe {

using cplx = std::complex<double>;

/// Thrown when two operands act on registers of different sizes.
class SizeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by text parsers; carries the 1-based line number of the bad input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline constexpr int kMaxPauliQubits = 64;

/**
 * Phase-free Pauli word on n qubits stored as (x-mask, z-mask).
 *
 * The letter on qubit k is I (x=0,z=0), X (1,0), Z (0,1) or Y (1,1). The
 * string denotes the Hermitian operator i^{|x&z|} X^x Z^z, so every word is
 * Hermitian and squares to the identity. Phases produced by products live in
 * the coefficient, never in the string.
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits, std::uint64_t x = 0, std::uint64_t z = 0);

  /// Parses "X0 Z1", "Z0 Y3", or "I". Repeated qubit indices are rejected.
  static PauliString parse(int n_qubits, std::string_view text);
  /// Single letter on one qubit, e.g. single(4, 'Y', 2) == Y2.
  static PauliString single(int n_qubits, char letter, int qubit);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  char letter(int qubit) const;
  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
  int weight() const noexcept;
  /// Number of Y letters; the dense matrix is real iff this is even.
  int y_count() const noexcept;

  /// "X0 Z1" style label; identity prints as "I".
  std::string label() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Canonical order: lexicographic on (z-mask, x-mask).
struct PauliOrder {
  bool operator()(const PauliString& a, const PauliString& b) const noexcept {
    if (a.z_mask() != b.z_mask()) return a.z_mask() < b.z_mask();
    return a.x_mask() < b.x_mask();
  }
};

struct PauliProduct {
  cplx phase;  // one of +1, -1, +i, -i
  PauliString product;
};

PauliProduct multiply(const PauliString& a, const PauliString& b);

bool commutes(const PauliString& a, const PauliString& b);

/// True iff on every qubit the letters agree or at least one is I.
bool qubitwise_commutes(const PauliString& a, const PauliString& b);

inline constexpr double kDefaultDropTolerance = 1e-14;

/**
 * Complex-weighted sum of Pauli strings on a fixed register.
 *
 * Terms are kept in canonical order and simplified: after any public
 * operation no coefficient has magnitude below the drop tolerance.
 */
class PauliSum {
 public:
  using TermMap = std::map<PauliString, cplx, PauliOrder>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}
  PauliSum(const PauliString& s, cplx coeff = 1.0);

  static PauliSum identity(int n_qubits, cplx coeff = 1.0);

  int n_qubits() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Coefficient of s, zero if absent.
  cplx coefficient(const PauliString& s) const;

  /// Adds coeff * s and re-simplifies that entry.
  PauliSum& add(const PauliString& s, cplx coeff);

  /// Drops coefficients with |c| < tol. Idempotent.
  PauliSum& simplify(double tol = kDefaultDropTolerance);

  /// Every coefficient real within tol (Pauli strings are Hermitian).
  bool is_hermitian(double tol = 1e-12) const;

  /// Coefficients' imaginary parts set to zero; use after is_hermitian().
  PauliSum real_part() const;

  /// Hermitian adjoint: conjugated coefficients.
  PauliSum adjoint() const;

  double one_norm() const;

  std::vector<PauliString> strings() const;

  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator-=(const PauliSum& o);
  PauliSum& operator*=(cplx c);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx c) { return a *= c; }
  friend PauliSum operator*(cplx c, PauliSum a) { return a *= c; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// Exact equality of the simplified term maps.
  friend bool operator==(const PauliSum& a, const PauliSum& b);
  /// Same term set and coefficients within tol.
  bool approx_equal(const PauliSum& o, double tol = 1e-12) const;

 private:
  int n_ = 0;
  TermMap terms_;
};

PauliSum commutator(const PauliSum& a, const PauliSum& b);
PauliSum anticommutator(const PauliSum& a, const PauliSum& b);

/// b * h * b, simplified.
PauliSum conjugate_by(const PauliSum& h, const PauliSum& b);

// Text format, one term per line:
//   <real> [<imag>] <LETTER><index> ...     e.g. "0.2 Z0 Z1", "1.5 I"
// '#' starts a comment line. A "# n_qubits <N>" comment pins the register
// size; otherwise it is one past the largest index seen.
std::string format_pauli_sum(const PauliSum& p);
PauliSum parse_pauli_sum(std::string_view text, int n_qubits = 0);

std::ostream& operator<<(std::ostream& os, const PauliString& s);
std::ostream& operator<<(std::ostream& os, const PauliSum& p);

}  // namespace ggavqe
