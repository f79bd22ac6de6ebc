#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <bit>

#include "ggavqe/drivers.hpp"
#include "ggavqe/hamiltonians.hpp"
#include "ggavqe/pools.hpp"

namespace py = pybind11;
using namespace ggavqe;

namespace {

StateVector to_state(const Eigen::VectorXcd& v) {
  const auto dim = static_cast<std::uint64_t>(v.size());
  if (dim == 0 || !std::has_single_bit(dim)) throw std::invalid_argument("state length must be a power of two");
  return StateVector(std::countr_zero(dim), std::vector<cplx>(v.data(), v.data() + v.size()));
}

Eigen::VectorXcd to_numpy(const StateVector& s) {
  const auto a = s.amplitudes();
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

Ansatz parse_ansatz_text(const std::string& text) { return parse_ansatz(text, pool_from_spec); }

DriverOptions make_options(std::optional<int> max_operators, std::optional<double> gradient_epsilon,
                           std::optional<double> min_energy_decrease, const std::string& plan, int threads,
                           const std::optional<Eigen::VectorXcd>& reference) {
  DriverOptions opt;
  opt.stop.max_operators = max_operators;
  opt.stop.gradient_epsilon = gradient_epsilon;
  opt.stop.min_energy_decrease = min_energy_decrease;
  opt.plan = parse_plan_choice(plan);
  opt.threads = threads;
  if (reference) opt.reference = to_state(*reference);
  return opt;
}

Backend make_backend(const std::string& mode, int shots, std::uint64_t seed) {
  if (mode == "exact") return Backend::exact();
  if (mode == "sampled") return Backend::sampled(shots, seed);
  throw std::invalid_argument("backend must be 'exact' or 'sampled'");
}

py::dict model_dict(const LandscapeModel& m) {
  py::dict d;
  d["class"] = std::string(to_string(m.cls));
  d["e0"] = m.e0;
  d["g"] = m.g;
  d["b"] = m.b;
  d["c0"] = m.c0;
  d["c1"] = m.c1;
  d["c2"] = m.c2;
  d["angle_scale"] = m.angle_scale;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Greedy gradient-free adaptive VQE on a state-vector simulator";

  py::class_<PauliSum>(m, "PauliSum")
      .def_static("parse", [](const std::string& text, int n) { return parse_pauli_sum(text, n); },
                  py::arg("text"), py::arg("n_qubits") = 0)
      .def_property_readonly("n_qubits", &PauliSum::n_qubits)
      .def("__len__", &PauliSum::size)
      .def("is_hermitian", &PauliSum::is_hermitian, py::arg("tol") = 1e-12)
      .def("dense", [](const PauliSum& p) { return to_dense(p); })
      .def("__str__", [](const PauliSum& p) { return format_pauli_sum(p); })
      .def("__repr__", [](const PauliSum& p) {
        return "<PauliSum n_qubits=" + std::to_string(p.n_qubits()) + " terms=" + std::to_string(p.size()) + ">";
      });

  m.def("ising", [](int n, double h, double j) { return build_ising({n, h, j}); }, py::arg("n_qubits"),
        py::arg("h") = 0.5, py::arg("j") = 0.2);
  m.def(
      "general_chain",
      [](int n, std::vector<double> hx, std::vector<double> hz, std::vector<double> jx, std::vector<double> jy,
         std::vector<double> jz) { return build_general_chain({n, hx, hz, jx, jy, jz}); },
      py::arg("n_qubits"), py::arg("hx") = std::vector<double>{}, py::arg("hz") = std::vector<double>{},
      py::arg("jx") = std::vector<double>{}, py::arg("jy") = std::vector<double>{},
      py::arg("jz") = std::vector<double>{});
  m.def("molecular", [](const std::string& text) { return map_molecular_hamiltonian(parse_integrals(text)); },
        py::arg("integrals_text"));

  py::class_<Generator>(m, "Generator")
      .def_property_readonly("id", &Generator::id)
      .def_property_readonly("label", &Generator::label)
      .def_property_readonly("body", &Generator::body)
      .def_property_readonly("algebraic_class",
                             [](const Generator& g) { return std::string(to_string(g.algebraic_class())); })
      .def_property_readonly("angle_scale", &Generator::angle_scale);

  py::class_<Pool>(m, "Pool")
      .def(py::init([](const std::string& spec, int n) { return pool_from_spec(spec, n); }), py::arg("spec"),
           py::arg("n_qubits"))
      .def_readonly("spec", &Pool::spec)
      .def_property_readonly("n_qubits", &Pool::n_qubits)
      .def("__len__", &Pool::size)
      .def("__getitem__", [](const Pool& p, int id) { return p.at(id); })
      .def_property_readonly("labels", [](const Pool& p) {
        std::vector<std::string> out;
        for (const auto& g : p.generators) out.push_back(g.label());
        return out;
      });

  py::class_<InitialState>(m, "InitialState")
      .def(py::init([](const std::string& spec) { return InitialState::parse(spec); }), py::arg("spec"))
      .def_static("from_vector", [](const Eigen::VectorXcd& v) { return InitialState::vector(to_state(v)); })
      .def_property_readonly("n_qubits", &InitialState::n_qubits)
      .def_property_readonly("spec", &InitialState::spec)
      .def("prepare", [](const InitialState& s) { return to_numpy(s.prepare()); });

  py::class_<Ansatz>(m, "Ansatz")
      .def_static("parse", &parse_ansatz_text, py::arg("text"))
      .def("__len__", &Ansatz::size)
      .def_property_readonly("n_qubits", &Ansatz::n_qubits)
      .def("prepare", [](const Ansatz& a) { return to_numpy(a.prepare()); })
      .def("__str__", [](const Ansatz& a) { return format_ansatz(a); });

  m.def("apply_generator", [](const Eigen::VectorXcd& v, const Generator& g, double theta) {
    return to_numpy(apply_exp_generator(to_state(v), g, theta));
  });
  m.def("expectation", [](const Eigen::VectorXcd& v, const PauliSum& h) { return expectation(to_state(v), h); });
  m.def("ground_state", [](const PauliSum& h) {
    const auto gs = exact_ground_state(h);
    return py::make_tuple(gs.energy, to_numpy(gs.state));
  });

  m.def(
      "landscape",
      [](const PauliSum& h, const Generator& g, const Eigen::VectorXcd& v) {
        const StateVector phi = to_state(v);
        const auto model = reconstruct_landscape(
            g.algebraic_class(), expectation(phi, h),
            [&](double t) { return expectation(apply_exp_generator(phi, g, t), h); }, g.angle_scale());
        py::dict d = model_dict(model);
        const auto lo = minimize(model);
        d["theta_min"] = lo.theta;
        d["value_min"] = lo.value;
        return d;
      },
      py::arg("hamiltonian"), py::arg("generator"), py::arg("state"),
      "Coefficients of the single-generator energy landscape and its global minimum.");

  m.def(
      "run_energy",
      [](const std::string& driver, const PauliSum& h, const Pool& pool, const InitialState& initial,
         const std::string& backend, int shots, std::uint64_t seed, std::optional<int> max_operators,
         std::optional<double> gradient_epsilon, std::optional<double> min_energy_decrease, const std::string& plan,
         int threads, const std::optional<Eigen::VectorXcd>& reference) {
        const auto opt =
            make_options(max_operators, gradient_epsilon, min_energy_decrease, plan, threads, reference);
        const Backend b = make_backend(backend, shots, seed);
        py::gil_scoped_release nogil;
        RunTrace t;
        if (driver == "gga")
          t = gga_vqe(h, pool, initial, b, opt);
        else if (driver == "adapt")
          t = adapt_vqe(h, pool, initial, b, opt);
        else if (driver == "gga2d")
          t = gga_vqe_2d(h, pool, initial, b, opt);
        else
          throw std::invalid_argument("driver must be gga, adapt or gga2d");
        return to_json(t).dump();
      },
      py::arg("driver"), py::arg("hamiltonian"), py::arg("pool"), py::arg("initial"), py::arg("backend") = "exact",
      py::arg("shots") = 1000, py::arg("seed") = 0, py::arg("max_operators") = py::none(),
      py::arg("gradient_epsilon") = py::none(), py::arg("min_energy_decrease") = py::none(),
      py::arg("plan") = "auto", py::arg("threads") = 1, py::arg("reference") = py::none());

  m.def(
      "run_overlap",
      [](const Ansatz& target, const Pool& pool, const InitialState& initial, const std::string& method,
         double gain_threshold, const std::string& backend, int shots, std::uint64_t seed,
         std::optional<int> max_operators, int threads) {
        DriverOptions opt;
        opt.stop.max_operators = max_operators;
        opt.overlap_method = parse_overlap_method(method);
        opt.overlap_gain_threshold = gain_threshold;
        opt.threads = threads;
        const Backend b = make_backend(backend, shots, seed);
        py::gil_scoped_release nogil;
        return to_json(overlap_gga_vqe(target, pool, initial, b, opt)).dump();
      },
      py::arg("target"), py::arg("pool"), py::arg("initial"), py::arg("method") = "exact",
      py::arg("gain_threshold") = 1e-4, py::arg("backend") = "exact", py::arg("shots") = 1000,
      py::arg("seed") = 0, py::arg("max_operators") = py::none(), py::arg("threads") = 1);

  m.def("ising_plan", [](int n) {
    std::vector<std::string> out;
    for (const auto& g : plan_ising_screening(n).groups) out.push_back(g.basis);
    return out;
  });
}
