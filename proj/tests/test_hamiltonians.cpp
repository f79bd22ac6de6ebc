#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ggavqe/hamiltonians.hpp"
#include "oracles.hpp"

using namespace ggavqe;

namespace {

// Annihilator on occupation-number basis states |n_0 n_1 ...>, bit p = orbital p,
// with the sign of the orbitals below p. Built without any Pauli algebra.
oracle::Mat fermion_annihilator(int p, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  oracle::Mat a = oracle::Mat::Zero(d, d);
  for (Eigen::Index s = 0; s < d; ++s) {
    if (!((s >> p) & 1)) continue;
    int below = 0;
    for (int k = 0; k < p; ++k) below += (s >> k) & 1;
    a(s ^ (Eigen::Index{1} << p), s) = (below % 2) ? -1.0 : 1.0;
  }
  return a;
}

double mdist(const oracle::Mat& a, const oracle::Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

FermionIntegrals random_integrals(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> c(0.0, 0.3);
  FermionIntegrals f;
  f.n_spin_orbitals = n;
  f.n_electrons = 2;
  f.constant = 0.7;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      const double v = c(rng);
      f.one_body[{p, q}] += v;
      if (p != q) f.one_body[{q, p}] += v;
    }
  // h_pqrs a_p^ a_q^ a_r a_s plus its Hermitian partner h_srqp.
  for (int k = 0; k < 6; ++k) {
    std::uniform_int_distribution<int> idx(0, n - 1);
    const int p = idx(rng), q = idx(rng), r = idx(rng), s = idx(rng);
    const double v = c(rng);
    f.two_body[{p, q, r, s}] += v;
    f.two_body[{s, r, q, p}] += v;
  }
  return f;
}

}  // namespace

TEST(Ising, MatchesDenseDefinition) {
  const int n = 4;
  const auto h = build_ising({n, 0.5, 0.2});
  oracle::Mat want = oracle::Mat::Zero(16, 16);
  for (int p = 0; p < n; ++p) {
    std::string x(n, 'I');
    x[static_cast<std::size_t>(p)] = 'X';
    want += 0.5 * oracle::dense_letters(x);
    if (p + 1 < n) {
      std::string zz(n, 'I');
      zz[static_cast<std::size_t>(p)] = zz[static_cast<std::size_t>(p) + 1] = 'Z';
      want += 0.2 * oracle::dense_letters(zz);
    }
  }
  EXPECT_LT(mdist(oracle::dense(h), want), 1e-15);
  EXPECT_EQ(h.size(), 7u);
}

TEST(Ising, TwoSiteGroundEnergy) {
  // h(X0 + X1) + J Z0Z1 on two sites: lowest eigenvalue -sqrt(4h^2 + J^2).
  const auto gs = exact_ground_state(build_ising({2, 0.5, 0.2}));
  EXPECT_NEAR(gs.energy, -std::sqrt(1.0 + 0.04), 1e-12);
}

TEST(GeneralChain, ReducesToIsingAndChecksLengths) {
  GeneralChainSpec s;
  s.n_qubits = 5;
  s.hx.assign(5, 0.5);
  s.jz.assign(4, 0.2);
  EXPECT_TRUE(build_general_chain(s).approx_equal(build_ising({5, 0.5, 0.2})));
  s.jy = {1.0};
  EXPECT_THROW(build_general_chain(s), std::invalid_argument);
}

TEST(JordanWigner, MatchesOccupationBasisOperators) {
  const int n = 4;
  for (int p = 0; p < n; ++p) {
    EXPECT_LT(mdist(oracle::dense(jordan_wigner(p, false, n)), fermion_annihilator(p, n)), 1e-15);
    EXPECT_LT(mdist(oracle::dense(jordan_wigner(p, true, n)), fermion_annihilator(p, n).adjoint()), 1e-15);
  }
}

TEST(JordanWigner, CanonicalAnticommutation) {
  const int n = 4;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const auto ap = jordan_wigner(p, false, n), aq_dag = jordan_wigner(q, true, n);
      auto acomm = anticommutator(ap, aq_dag).simplify();
      if (p == q) EXPECT_TRUE(acomm.approx_equal(PauliSum::identity(n)));
      else EXPECT_TRUE(acomm.empty());
      EXPECT_TRUE(anticommutator(ap, jordan_wigner(q, false, n)).simplify().empty());
    }
}

TEST(MolecularHamiltonian, MatchesSecondQuantizedDense) {
  std::mt19937_64 rng(12);
  const int n = 4;
  const auto ints = random_integrals(n, rng);
  const auto h = map_molecular_hamiltonian(ints);
  EXPECT_TRUE(h.is_hermitian());
  const Eigen::Index d = Eigen::Index{1} << n;
  oracle::Mat want = ints.constant * oracle::Mat::Identity(d, d);
  std::vector<oracle::Mat> a;
  for (int p = 0; p < n; ++p) a.push_back(fermion_annihilator(p, n));
  for (const auto& [k, v] : ints.one_body) want += v * a[k[0]].adjoint() * a[k[1]];
  for (const auto& [k, v] : ints.two_body) want += v * a[k[0]].adjoint() * a[k[1]].adjoint() * a[k[2]] * a[k[3]];
  EXPECT_LT(mdist(oracle::dense(h), want), 1e-12);
}

TEST(MolecularHamiltonian, RejectsNonHermitianIntegrals) {
  FermionIntegrals f;
  f.n_spin_orbitals = 2;
  f.one_body[{0, 1}] = 1.0;
  EXPECT_THROW(map_molecular_hamiltonian(f), std::invalid_argument);
}

TEST(Integrals, TextRoundTripAndErrors) {
  std::mt19937_64 rng(1);
  const auto ints = random_integrals(4, rng);
  const auto back = parse_integrals(format_integrals(ints));
  EXPECT_EQ(back.n_spin_orbitals, 4);
  EXPECT_EQ(back.n_electrons, 2);
  EXPECT_TRUE(map_molecular_hamiltonian(back).approx_equal(map_molecular_hamiltonian(ints), 1e-15));
  EXPECT_THROW(parse_integrals("norb 2\nPQ 0 5 1.0\n"), ParseError);
  EXPECT_THROW(parse_integrals("nelec 1\n"), ParseError);
  try {
    parse_integrals("norb 2\nnelec 1\nPQRS 0 1 x 1 0.5\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Files, PauliSumSaveLoadAndMissingPath) {
  const auto dir = std::filesystem::temp_directory_path() / "ggavqe_test_ham";
  std::filesystem::create_directories(dir);
  const auto h = build_ising({3, 0.5, 0.2});
  save_pauli_sum(dir / "h.txt", h);
  EXPECT_TRUE(load_pauli_sum(dir / "h.txt").approx_equal(h, 0.0));
  EXPECT_THROW(load_pauli_sum(dir / "missing.txt"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST(HartreeFock, OccupiesLowestOrbitals) {
  const auto s = hartree_fock_state(2, 4);
  EXPECT_EQ(s[0b0011], cplx(1.0));
  EXPECT_THROW(hartree_fock_state(5, 4), std::invalid_argument);
}
