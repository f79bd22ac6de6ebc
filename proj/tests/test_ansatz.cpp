#include <gtest/gtest.h>

#include <numbers>

#include "ggavqe/ansatz.hpp"
#include "ggavqe/pools.hpp"
#include "oracles.hpp"

using namespace ggavqe;

namespace {

Pool resolve(const std::string& spec, int n) { return pool_from_spec(spec, n); }

Ansatz random_ansatz(const Pool& pool, const InitialState& init, int steps, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  Ansatz a(init, pool.spec);
  for (int k = 0; k < steps; ++k) a.append(pool.generators[pick(rng)], ang(rng));
  return a;
}

bool is_zero_state(const StateVector& s, double tol) {
  return std::abs(std::abs(s[0]) - 1.0) < tol;
}

}  // namespace

TEST(WrapAngle, IntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.5), 0.5);
  EXPECT_NEAR(wrap_angle(std::numbers::pi), -std::numbers::pi, 1e-15);
  EXPECT_NEAR(wrap_angle(3 * std::numbers::pi + 0.25), -std::numbers::pi + 0.25, 1e-12);
  EXPECT_NEAR(wrap_angle(-std::numbers::pi - 0.25), std::numbers::pi - 0.25, 1e-12);
}

TEST(InitialState, PrepareAndSpec) {
  EXPECT_EQ(InitialState::basis("1100").prepare()[3], cplx(1.0));
  EXPECT_EQ(InitialState::hartree_fock(2, 4).prepare()[3], cplx(1.0));
  EXPECT_EQ(InitialState::hartree_fock(2, 4).spec(), "basis 1100");
  EXPECT_EQ(InitialState::parse("minus 3").n_qubits(), 3);
  EXPECT_NEAR(std::abs(InitialState::uniform_minus(2).prepare()[1] + 0.5), 0.0, 1e-15);
  EXPECT_THROW(InitialState::parse("ghz 3"), std::invalid_argument);
  EXPECT_THROW(InitialState::hartree_fock(5, 4), std::invalid_argument);
}

TEST(InitialState, UnprepareInvertsPrepare) {
  std::mt19937_64 rng(21);
  std::vector<InitialState> states = {InitialState::basis("1011"), InitialState::hartree_fock(2, 4),
                                      InitialState::uniform_minus(4),
                                      InitialState::vector(oracle::random_state(4, rng))};
  for (const auto& init : states) {
    StateVector s = init.prepare();
    init.unprepare(s);
    EXPECT_TRUE(is_zero_state(s, 1e-12)) << init.spec().substr(0, 20);
    EXPECT_EQ(InitialState::parse(init.spec()).prepare().dim(), init.prepare().dim());
  }
}

TEST(InitialState, VectorSpecRoundTripsExactly) {
  std::mt19937_64 rng(2);
  const auto init = InitialState::vector(oracle::random_state(3, rng));
  const auto back = InitialState::parse(init.spec());
  EXPECT_NEAR(fidelity(init.prepare(), back.prepare()), 1.0, 1e-15);
}

TEST(Ansatz, PrepareReplaysStepsInOrder) {
  std::mt19937_64 rng(4);
  const Pool pool = qeb_pool(4);
  const auto a = random_ansatz(pool, InitialState::hartree_fock(2, 4), 5, rng);
  oracle::Vec v = oracle::vec(a.initial().prepare());
  for (const auto& st : a.steps()) v = oracle::expm_minus_i(oracle::dense(st.generator.body()), st.angle) * v;
  EXPECT_LT((oracle::vec(a.prepare()) - v).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((oracle::vec(a.prepare_prefix(0)) - oracle::vec(a.initial().prepare())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Ansatz, ApplyInverseUndoesPrepare) {
  std::mt19937_64 rng(6);
  for (const auto& spec : {"minimal", "hwe", "qeb"}) {
    const Pool pool = pool_from_spec(spec, 4);
    for (const auto& init : {InitialState::uniform_minus(4), InitialState::basis("0110")}) {
      const auto a = random_ansatz(pool, init, 6, rng);
      EXPECT_TRUE(is_zero_state(a.apply_inverse(a.prepare()), 1e-12)) << spec;
    }
  }
}

TEST(Ansatz, TextRoundTrip) {
  std::mt19937_64 rng(8);
  const Pool pool = qubit_hardware_efficient_pool(4);
  const auto a = random_ansatz(pool, InitialState::uniform_minus(4), 7, rng);
  const std::string text = format_ansatz(a);
  const Ansatz back = parse_ansatz(text, resolve);
  ASSERT_EQ(back.size(), a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(back.steps()[k].generator.id(), a.steps()[k].generator.id());
    EXPECT_EQ(back.steps()[k].angle, a.steps()[k].angle);
  }
  EXPECT_EQ(format_ansatz(back), text);
}

TEST(Ansatz, ParseErrorsCarryLineNumbers) {
  try {
    parse_ansatz("# ggavqe ansatz\ninitial minus 2\npool minimal\n9 0.1\n", resolve);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(parse_ansatz("initial minus 2\npool nope\n", resolve), ParseError);
}

TEST(Ansatz, AppendRejectsWrongRegister) {
  Ansatz a(InitialState::uniform_minus(3));
  EXPECT_THROW(a.append(minimal_hardware_efficient_pool(4).generators[0], 0.1), SizeMismatch);
}
