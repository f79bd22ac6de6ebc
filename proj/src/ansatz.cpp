#include "ggavqe/ansatz.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace ggavqe {

namespace {

constexpr double kHalfSqrt2 = 0.70710678118654752440;

void apply_hadamard(StateVector& s, int q) {
  apply_single_qubit(s, q, {kHalfSqrt2, kHalfSqrt2, kHalfSqrt2, -kHalfSqrt2});
}

void apply_x(StateVector& s, int q) { apply_single_qubit(s, q, {0.0, 1.0, 1.0, 0.0}); }

std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta + std::numbers::pi, two_pi);
  if (t < 0.0) t += two_pi;
  t -= std::numbers::pi;
  return t >= std::numbers::pi ? t - two_pi : t;
}

// --------------------------------------------------------------- InitialState

InitialState InitialState::basis(std::string bits) {
  bits_to_index(bits);  // validates
  if (bits.empty()) throw std::invalid_argument("basis state needs at least one qubit");
  return InitialState(Basis{std::move(bits)});
}

InitialState InitialState::hartree_fock(int n_electrons, int n_qubits) {
  if (n_qubits <= 0 || n_electrons < 0 || n_electrons > n_qubits)
    throw std::invalid_argument("hartree_fock: need 0 <= n_electrons <= n_qubits, got " +
                                std::to_string(n_electrons) + " electrons in " +
                                std::to_string(n_qubits) + " qubits");
  return basis(std::string(static_cast<std::size_t>(n_electrons), '1') +
               std::string(static_cast<std::size_t>(n_qubits - n_electrons), '0'));
}

InitialState InitialState::uniform_minus(int n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("uniform_minus needs n_qubits >= 1");
  return InitialState(UniformMinus{n_qubits});
}

InitialState InitialState::vector(StateVector state) {
  return InitialState(Vector{state.normalized()});
}

int InitialState::n_qubits() const {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Basis>) return static_cast<int>(k.bits.size());
        else if constexpr (std::is_same_v<T, UniformMinus>) return k.n_qubits;
        else return k.state.n_qubits();
      },
      kind_);
}

StateVector InitialState::prepare() const {
  return std::visit(
      [](const auto& k) -> StateVector {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Basis>) return StateVector::from_bits(k.bits);
        else if constexpr (std::is_same_v<T, UniformMinus>) return StateVector::uniform_minus(k.n_qubits);
        else return k.state;
      },
      kind_);
}

void InitialState::unprepare(StateVector& state) const {
  if (state.n_qubits() != n_qubits()) throw SizeMismatch("unprepare: register size mismatch");
  if (const auto* b = std::get_if<Basis>(&kind_)) {
    for (std::size_t q = 0; q < b->bits.size(); ++q)
      if (b->bits[q] == '1') apply_x(state, static_cast<int>(q));
  } else if (std::holds_alternative<UniformMinus>(kind_)) {
    // Preparation is X then H on every qubit.
    for (int q = 0; q < state.n_qubits(); ++q) {
      apply_hadamard(state, q);
      apply_x(state, q);
    }
  } else {
    const StateVector& v = std::get<Vector>(kind_).state;
    const cplx v0 = v[0];
    const cplx align = std::abs(v0) > 0.0 ? std::conj(v0) / std::abs(v0) : cplx{1.0};
    // w = |0> - e^{-i arg v0} |v>; R = I - 2 w w^dag / |w|^2
    std::vector<cplx> w(v.dim());
    double wnorm2 = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      w[i] = (i == 0 ? 1.0 : 0.0) - align * v[i];
      wnorm2 += std::norm(w[i]);
    }
    if (wnorm2 < 1e-28) return;
    cplx proj{};
    for (std::size_t i = 0; i < v.dim(); ++i) proj += std::conj(w[i]) * state[i];
    const cplx scale = 2.0 * proj / wnorm2;
    for (std::size_t i = 0; i < v.dim(); ++i) state[i] -= scale * w[i];
  }
}

std::string InitialState::spec() const {
  if (const auto* b = std::get_if<Basis>(&kind_)) return "basis " + b->bits;
  if (const auto* m = std::get_if<UniformMinus>(&kind_)) return "minus " + std::to_string(m->n_qubits);
  const StateVector& v = std::get<Vector>(kind_).state;
  std::string out = "vector " + std::to_string(v.n_qubits());
  for (std::size_t i = 0; i < v.dim(); ++i) out += " " + fmt17(v[i].real()) + " " + fmt17(v[i].imag());
  return out;
}

InitialState InitialState::parse(std::string_view spec) {
  std::istringstream is{std::string(spec)};
  std::string kind;
  is >> kind;
  if (kind == "basis") {
    std::string bits;
    if (!(is >> bits)) throw std::invalid_argument("basis initial state needs a bit string");
    return basis(bits);
  }
  if (kind == "hf") {
    int ne = -1, nq = -1;
    if (!(is >> ne >> nq)) throw std::invalid_argument("hf initial state needs '<n_electrons> <n_qubits>'");
    return hartree_fock(ne, nq);
  }
  if (kind == "minus") {
    int n = 0;
    if (!(is >> n)) throw std::invalid_argument("minus initial state needs a qubit count");
    return uniform_minus(n);
  }
  if (kind == "vector") {
    int n = 0;
    if (!(is >> n) || n <= 0) throw std::invalid_argument("vector initial state needs a qubit count");
    std::vector<cplx> amps(std::size_t{1} << n);
    for (auto& a : amps) {
      double re = 0, im = 0;
      if (!(is >> re >> im)) throw std::invalid_argument("vector initial state is truncated");
      a = {re, im};
    }
    return vector(StateVector(n, std::move(amps)));
  }
  throw std::invalid_argument("unknown initial state '" + std::string(spec) + "'");
}

// --------------------------------------------------------------------- Ansatz

void Ansatz::append(const Generator& g, double angle) {
  if (g.n_qubits() != n_qubits()) throw SizeMismatch("ansatz step acts on a different register");
  steps_.push_back({g, wrap_angle(angle)});
}

void Ansatz::set_angle(std::size_t k, double angle) { steps_.at(k).angle = wrap_angle(angle); }

StateVector Ansatz::prepare() const { return prepare_prefix(steps_.size()); }

StateVector Ansatz::prepare_prefix(std::size_t k) const {
  StateVector s = initial_.prepare();
  for (std::size_t i = 0; i < k && i < steps_.size(); ++i)
    s = apply_exp_generator(s, steps_[i].generator, steps_[i].angle);
  return s;
}

StateVector Ansatz::apply_inverse(const StateVector& state) const {
  StateVector s = state;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it)
    s = apply_exp_generator(s, it->generator, -it->angle);
  initial_.unprepare(s);
  return s;
}

std::string format_ansatz(const Ansatz& a) {
  std::ostringstream os;
  os << "# ggavqe ansatz\n";
  os << "initial " << a.initial().spec() << "\n";
  os << "pool " << a.pool_spec() << "\n";
  for (const auto& st : a.steps())
    os << st.generator.id() << ' ' << fmt17(st.angle) << "   # " << st.generator.label() << "\n";
  return os.str();
}

Ansatz parse_ansatz(std::string_view text, const PoolResolver& resolve) {
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<InitialState> initial;
  std::optional<Pool> pool;
  std::string pool_spec;
  int pool_line = 0;
  struct Step {
    int id;
    double angle;
    int line;
  };
  std::vector<Step> steps;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    try {
      if (head == "initial") {
        std::string rest;
        std::getline(ls, rest);
        initial = InitialState::parse(rest);
      } else if (head == "pool") {
        std::getline(ls, pool_spec);
        const auto first = pool_spec.find_first_not_of(" \t");
        pool_spec = first == std::string::npos ? "" : pool_spec.substr(first);
        pool_line = line_no;
      } else {
        int id = 0;
        auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), id);
        double angle = 0.0;
        if (ec != std::errc() || ptr != head.data() + head.size() || !(ls >> angle))
          throw std::invalid_argument("expected '<generator id> <angle>'");
        steps.push_back({id, angle, line_no});
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!initial) throw ParseError("ansatz file has no 'initial' line", 0);
  Ansatz out(*initial, pool_spec);
  if (!steps.empty() && pool_spec.empty()) throw ParseError("ansatz file has steps but no 'pool' line", 0);
  if (!pool_spec.empty()) {
    try {
      pool = resolve(pool_spec, initial->n_qubits());
    } catch (const std::exception& e) {
      throw ParseError(e.what(), pool_line);
    }
    for (const auto& st : steps) {
      try {
        out.append(pool->at(st.id), st.angle);
      } catch (const std::exception& e) {
        throw ParseError(e.what(), st.line);
      }
    }
  }
  return out;
}

}  // namespace ggavqe
