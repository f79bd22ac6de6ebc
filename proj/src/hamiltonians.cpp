#include "ggavqe/hamiltonians.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ggavqe {

namespace {

PauliString pair_string(int n, char a, int p, char b, int q) {
  // distinct qubits, so the product phase is +1
  return multiply(PauliString::single(n, a, p), PauliString::single(n, b, q)).product;
}

void check_len(const std::vector<double>& v, std::size_t want, const char* name) {
  if (!v.empty() && v.size() != want)
    throw std::invalid_argument(std::string("general chain: '") + name + "' has length " +
                                std::to_string(v.size()) + ", expected " + std::to_string(want));
}

double at_or_zero(const std::vector<double>& v, std::size_t k) { return v.empty() ? 0.0 : v[k]; }

void check_orbital(int p, int n, const char* what) {
  if (p < 0 || p >= n)
    throw std::out_of_range(std::string(what) + ": orbital index " + std::to_string(p) +
                            " outside 0.." + std::to_string(n - 1));
}

}  // namespace

PauliSum build_ising(const IsingSpec& spec) {
  if (spec.n_qubits < 2) throw std::invalid_argument("Ising chain needs at least 2 qubits");
  const int n = spec.n_qubits;
  PauliSum h(n);
  for (int p = 0; p < n; ++p) h.add(PauliString::single(n, 'X', p), spec.h);
  for (int p = 0; p + 1 < n; ++p) h.add(pair_string(n, 'Z', p, 'Z', p + 1), spec.j);
  return h;
}

PauliSum build_general_chain(const GeneralChainSpec& spec) {
  const int n = spec.n_qubits;
  if (n < 2) throw std::invalid_argument("spin chain needs at least 2 qubits");
  const auto sites = static_cast<std::size_t>(n), bonds = sites - 1;
  check_len(spec.hx, sites, "hx");
  check_len(spec.hz, sites, "hz");
  check_len(spec.jx, bonds, "jx");
  check_len(spec.jy, bonds, "jy");
  check_len(spec.jz, bonds, "jz");
  PauliSum h(n);
  for (std::size_t k = 0; k < sites; ++k) {
    const int q = static_cast<int>(k);
    h.add(PauliString::single(n, 'X', q), at_or_zero(spec.hx, k));
    h.add(PauliString::single(n, 'Z', q), at_or_zero(spec.hz, k));
  }
  for (std::size_t k = 0; k < bonds; ++k) {
    const int q = static_cast<int>(k);
    h.add(pair_string(n, 'X', q, 'X', q + 1), at_or_zero(spec.jx, k));
    h.add(pair_string(n, 'Y', q, 'Y', q + 1), at_or_zero(spec.jy, k));
    h.add(pair_string(n, 'Z', q, 'Z', q + 1), at_or_zero(spec.jz, k));
  }
  return h;
}

PauliSum jordan_wigner(int p, bool dagger, int n_qubits) {
  check_orbital(p, n_qubits, "jordan_wigner");
  const std::uint64_t parity = (std::uint64_t{1} << p) - 1;
  const std::uint64_t bit = std::uint64_t{1} << p;
  PauliSum out(n_qubits);
  out.add(PauliString(n_qubits, bit, parity), 0.5);
  out.add(PauliString(n_qubits, bit, parity | bit), cplx{0.0, dagger ? -0.5 : 0.5});
  return out;
}

PauliSum map_molecular_hamiltonian(const FermionIntegrals& ints) {
  const int n = ints.n_spin_orbitals;
  if (n <= 0) throw std::invalid_argument("integrals: norb must be positive");
  std::vector<PauliSum> a, ad;
  for (int p = 0; p < n; ++p) {
    a.push_back(jordan_wigner(p, false, n));
    ad.push_back(jordan_wigner(p, true, n));
  }
  PauliSum h(n);
  if (ints.constant != 0.0) h.add(PauliString(n), ints.constant);
  for (const auto& [pq, v] : ints.one_body) {
    check_orbital(pq[0], n, "PQ");
    check_orbital(pq[1], n, "PQ");
    if (v != 0.0) h += v * (ad[pq[0]] * a[pq[1]]);
  }
  for (const auto& [pqrs, v] : ints.two_body) {
    for (int idx : pqrs) check_orbital(idx, n, "PQRS");
    if (v != 0.0) h += v * (ad[pqrs[0]] * ad[pqrs[1]] * a[pqrs[2]] * a[pqrs[3]]);
  }
  h.simplify(1e-12);
  if (!h.is_hermitian(1e-10))
    throw std::invalid_argument(
        "mapped molecular Hamiltonian is not Hermitian; check the integral symmetries");
  return h.real_part();
}

FermionIntegrals parse_integrals(std::string_view text) {
  FermionIntegrals out;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_norb = false, have_nelec = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& why) -> void { throw ParseError(why, line_no); };
    if (key == "norb") {
      if (!(ls >> out.n_spin_orbitals) || out.n_spin_orbitals <= 0) fail("norb needs a positive integer");
      have_norb = true;
    } else if (key == "nelec") {
      if (!(ls >> out.n_electrons) || out.n_electrons < 0) fail("nelec needs a non-negative integer");
      have_nelec = true;
    } else if (key == "const") {
      double v = 0;
      if (!(ls >> v)) fail("const needs a value");
      out.constant += v;
    } else if (key == "PQ") {
      std::array<int, 2> idx{};
      double v = 0;
      if (!(ls >> idx[0] >> idx[1] >> v)) fail("PQ needs '<p> <q> <value>'");
      if (!have_norb) fail("PQ entry before norb");
      for (int i : idx)
        if (i < 0 || i >= out.n_spin_orbitals) fail("orbital index out of range");
      out.one_body[idx] += v;
    } else if (key == "PQRS") {
      std::array<int, 4> idx{};
      double v = 0;
      if (!(ls >> idx[0] >> idx[1] >> idx[2] >> idx[3] >> v)) fail("PQRS needs '<p> <q> <r> <s> <value>'");
      if (!have_norb) fail("PQRS entry before norb");
      for (int i : idx)
        if (i < 0 || i >= out.n_spin_orbitals) fail("orbital index out of range");
      out.two_body[idx] += v;
    } else {
      fail("unknown integral record '" + key + "'");
    }
  }
  if (!have_norb) throw ParseError("integral file has no norb line", 0);
  if (!have_nelec) throw ParseError("integral file has no nelec line", 0);
  if (out.n_electrons > out.n_spin_orbitals) throw ParseError("nelec exceeds norb", 0);
  return out;
}

std::string format_integrals(const FermionIntegrals& ints) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "norb " << ints.n_spin_orbitals << "\nnelec " << ints.n_electrons << "\n";
  if (ints.constant != 0.0) os << "const " << ints.constant << "\n";
  for (const auto& [k, v] : ints.one_body) os << "PQ " << k[0] << ' ' << k[1] << ' ' << v << "\n";
  for (const auto& [k, v] : ints.two_body)
    os << "PQRS " << k[0] << ' ' << k[1] << ' ' << k[2] << ' ' << k[3] << ' ' << v << "\n";
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FermionIntegrals load_integrals(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_integrals(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

PauliSum load_pauli_sum(const std::filesystem::path& path, int n_qubits) {
  const std::string text = read_text_file(path);
  try {
    return parse_pauli_sum(text, n_qubits);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void save_pauli_sum(const std::filesystem::path& path, const PauliSum& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << format_pauli_sum(h);
}

StateVector hartree_fock_state(int n_electrons, int n_qubits) {
  if (n_qubits <= 0 || n_electrons < 0 || n_electrons > n_qubits)
    throw std::invalid_argument("hartree_fock_state: need 0 <= n_electrons <= n_qubits");
  return StateVector::basis(n_qubits, (std::uint64_t{1} << n_electrons) - 1);
}

}  // namespace ggavqe
