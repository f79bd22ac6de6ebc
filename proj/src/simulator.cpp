#include "ggavqe/simulator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ggavqe {

namespace {

constexpr cplx kIPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void check_same(int a, int b, const char* what) {
  if (a != b)
    throw SizeMismatch(std::string(what) + ": register sizes differ (" + std::to_string(a) +
                       " vs " + std::to_string(b) + ")");
}

void check_sim_qubits(int n) {
  if (n <= 0 || n > kMaxSimulatorQubits)
    throw std::invalid_argument("simulator supports 1.." + std::to_string(kMaxSimulatorQubits) +
                                " qubits, got " + std::to_string(n));
}

// s|i> = i^{|x&z|} (-1)^{|i&z|} |i ^ x>
inline cplx string_phase(const PauliString& s, std::uint64_t i, cplx base) {
  return (std::popcount(i & s.z_mask()) & 1) ? -base : base;
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  check_sim_qubits(n_qubits);
  amps_.assign(std::size_t{1} << n_qubits, cplx{});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  check_sim_qubits(n_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("amplitude vector length " + std::to_string(amps_.size()) +
                                " does not match 2^" + std::to_string(n_qubits));
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index outside register");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

std::uint64_t bits_to_index(std::string_view bits) {
  std::uint64_t idx = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1')
      idx |= std::uint64_t{1} << q;
    else if (bits[q] != '0')
      throw std::invalid_argument("bit string may only contain 0 and 1: '" + std::string(bits) +
                                  "'");
  }
  return idx;
}

StateVector StateVector::from_bits(std::string_view bits) {
  return basis(static_cast<int>(bits.size()), bits_to_index(bits));
}

StateVector StateVector::uniform_minus(int n_qubits) {
  StateVector s(n_qubits);
  const double amp = std::pow(2.0, -0.5 * n_qubits);
  for (std::size_t i = 0; i < s.dim(); ++i)
    s.amps_[i] = (std::popcount(i) & 1) ? -amp : amp;
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  StateVector out = *this;
  for (auto& a : out.amps_) a /= nrm;
  return out;
}

StateVector apply_pauli_string(const StateVector& state, const PauliString& s) {
  check_same(state.n_qubits(), s.n_qubits(), "apply_pauli_string");
  StateVector out = state;
  const cplx base = kIPowers[s.y_count() & 3];
  const auto in = state.amplitudes();
  auto dst = out.amplitudes();
  for (std::uint64_t i = 0; i < state.dim(); ++i)
    dst[i ^ s.x_mask()] = string_phase(s, i, base) * in[i];
  return out;
}

StateVector apply_pauli_sum(const StateVector& state, const PauliSum& p) {
  check_same(state.n_qubits(), p.n_qubits(), "apply_pauli_sum");
  std::vector<cplx> acc(state.dim(), cplx{});
  const auto in = state.amplitudes();
  for (const auto& [s, c] : p.terms()) {
    const cplx base = c * kIPowers[s.y_count() & 3];
    for (std::uint64_t i = 0; i < state.dim(); ++i)
      acc[i ^ s.x_mask()] += string_phase(s, i, base) * in[i];
  }
  return StateVector(state.n_qubits(), std::move(acc));
}

StateVector apply_exp_generator(const StateVector& state, const Generator& g, double theta) {
  check_same(state.n_qubits(), g.n_qubits(), "apply_exp_generator");
  const double c = std::cos(theta), s = std::sin(theta);
  const StateVector b1 = apply_pauli_sum(state, g.body());
  StateVector out = state;
  auto dst = out.amplitudes();
  const auto bpsi = b1.amplitudes();
  const cplx minus_i_sin{0.0, -s};
  if (g.algebraic_class() == AlgebraicClass::Involutory) {
    for (std::size_t i = 0; i < out.dim(); ++i) dst[i] = c * dst[i] + minus_i_sin * bpsi[i];
  } else {
    const StateVector b2 = apply_pauli_sum(b1, g.body());
    const auto b2psi = b2.amplitudes();
    for (std::size_t i = 0; i < out.dim(); ++i)
      dst[i] += (c - 1.0) * b2psi[i] + minus_i_sin * bpsi[i];
  }
  return out;
}

double expectation_string(const StateVector& state, const PauliString& s) {
  check_same(state.n_qubits(), s.n_qubits(), "expectation_string");
  const cplx base = kIPowers[s.y_count() & 3];
  const auto a = state.amplitudes();
  cplx acc{};
  for (std::uint64_t i = 0; i < state.dim(); ++i)
    acc += std::conj(a[i ^ s.x_mask()]) * string_phase(s, i, base) * a[i];
  return acc.real();
}

double expectation(const StateVector& state, const PauliSum& h) {
  check_same(state.n_qubits(), h.n_qubits(), "expectation");
  if (!h.is_hermitian()) throw std::invalid_argument("expectation requires a Hermitian operator");
  double acc = 0.0;
  for (const auto& [s, c] : h.terms()) acc += c.real() * expectation_string(state, s);
  return acc;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  check_same(a.n_qubits(), b.n_qubits(), "inner_product");
  cplx acc{};
  const auto x = a.amplitudes(), y = b.amplitudes();
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

void apply_single_qubit(StateVector& state, int qubit, const std::array<cplx, 4>& u) {
  if (qubit < 0 || qubit >= state.n_qubits()) throw std::out_of_range("qubit outside register");
  const std::uint64_t stride = std::uint64_t{1} << qubit;
  auto a = state.amplitudes();
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if (i & stride) continue;
    const cplx a0 = a[i], a1 = a[i | stride];
    a[i] = u[0] * a0 + u[1] * a1;
    a[i | stride] = u[2] * a0 + u[3] * a1;
  }
}

Eigen::MatrixXcd to_dense(const PauliSum& p) {
  check_sim_qubits(p.n_qubits());
  const Eigen::Index dim = Eigen::Index{1} << p.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : p.terms()) {
    const cplx base = c * kIPowers[s.y_count() & 3];
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i)
      m(static_cast<Eigen::Index>(i ^ s.x_mask()), static_cast<Eigen::Index>(i)) +=
          string_phase(s, i, base);
  }
  return m;
}

GroundState exact_ground_state(const PauliSum& h, int dense_limit) {
  if (h.n_qubits() > dense_limit)
    throw std::invalid_argument("exact_ground_state: " + std::to_string(h.n_qubits()) +
                                " qubits exceeds the dense limit of " +
                                std::to_string(dense_limit));
  if (!h.is_hermitian())
    throw std::invalid_argument("exact_ground_state requires a Hermitian operator");
  const Eigen::MatrixXcd m = to_dense(h);
  const std::size_t dim = static_cast<std::size_t>(m.rows());
  std::vector<cplx> amps(dim);
  double energy = 0.0;
  bool real = true;
  for (const auto& [s, c] : h.terms()) real = real && (s.y_count() % 2 == 0);
  if (real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen solver failed");
    energy = es.eigenvalues()(0);
    for (std::size_t i = 0; i < dim; ++i) amps[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), 0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen solver failed");
    energy = es.eigenvalues()(0);
    for (std::size_t i = 0; i < dim; ++i) amps[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), 0);
  }
  return {energy, StateVector(h.n_qubits(), std::move(amps)).normalized()};
}

}  // namespace ggavqe
