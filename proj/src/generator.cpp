#include "ggavqe/generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace ggavqe {

std::string_view to_string(AlgebraicClass c) {
  return c == AlgebraicClass::Involutory ? "involutory" : "tripotent";
}

std::string_view to_string(PoolKind k) {
  switch (k) {
    case PoolKind::Qeb: return "qeb";
    case PoolKind::QubitHardwareEfficient: return "qubit_hardware_efficient";
    case PoolKind::MinimalHardwareEfficient: return "minimal_hardware_efficient";
    case PoolKind::Custom: return "custom";
  }
  return "custom";
}

bool Generator::verify_class(const PauliSum& body, AlgebraicClass cls, double tol) {
  const PauliSum sq = body * body;
  if (cls == AlgebraicClass::Involutory)
    return sq.approx_equal(PauliSum::identity(body.n_qubits()), tol);
  return (sq * body).approx_equal(body, tol);
}

Generator::Generator(int id, std::string label, PauliSum body, AlgebraicClass cls,
                     double angle_scale)
    : id_(id), label_(std::move(label)), body_(std::move(body)), class_(cls),
      angle_scale_(angle_scale) {
  if (body_.empty()) throw std::invalid_argument("generator '" + label_ + "' has an empty body");
  if (!body_.is_hermitian())
    throw std::invalid_argument("generator '" + label_ + "' is not Hermitian");
  if (!(angle_scale_ > 0.0))
    throw std::invalid_argument("generator '" + label_ + "' needs a positive angle scale");
  if (!verify_class(body_, class_))
    throw std::invalid_argument("generator '" + label_ + "' does not satisfy the declared " +
                                std::string(to_string(class_)) + " relation");
  body_ = body_.real_part();
}

Generator Generator::with_id(int id) const {
  Generator g = *this;
  g.id_ = id;
  return g;
}

const Generator& Pool::at(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= generators.size())
    throw std::out_of_range("generator id " + std::to_string(id) + " not in pool of size " +
                            std::to_string(generators.size()));
  return generators[static_cast<std::size_t>(id)];
}

bool Pool::all_involutory() const {
  return std::all_of(generators.begin(), generators.end(), [](const Generator& g) {
    return g.algebraic_class() == AlgebraicClass::Involutory;
  });
}

}  // namespace ggavqe
