// Acceptance checks, one PASS/FAIL line per criterion. Exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>

#include "ggavqe/drivers.hpp"
#include "ggavqe/hamiltonians.hpp"
#include "ggavqe/pools.hpp"
#include "oracles.hpp"

using namespace ggavqe;

namespace {

constexpr double kPi = std::numbers::pi;
const oracle::cplx kI{0, 1};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double mdist(const oracle::Mat& a, const oracle::Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

struct Spectral {
  Eigen::VectorXd lambda;
  oracle::Mat v;
  explicit Spectral(const oracle::Mat& b) {
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(b);
    lambda = es.eigenvalues();
    v = es.eigenvectors();
  }
  oracle::Vec apply(const oracle::Vec& x, double theta) const {
    oracle::Vec c = v.adjoint() * x;
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) *= std::exp(oracle::cplx{0, -theta * lambda(j)});
    return v * c;
  }
};

// ------------------------------------------------------------------------ 1

Outcome landscape_equivalence() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  int generators = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const int n = 2 + inst % 5;  // 2..6
    const auto h = oracle::random_hermitian(n, 4 * n, rng);
    const auto phi = oracle::random_state(n, rng);
    const oracle::Mat hd = oracle::dense(h);
    const oracle::Vec pv = oracle::vec(phi);
    for (const auto& spec : {"minimal", "hwe", "qeb"}) {
      const Pool pool = pool_from_spec(spec, n);
      for (const auto& g : pool.generators) {
        const auto m = reconstruct_landscape(
            g.algebraic_class(), expectation(phi, h),
            [&](double t) { return expectation(apply_exp_generator(phi, g, t), h); }, g.angle_scale());
        const Spectral sb(oracle::dense(g.body()));
        for (int k = 0; k < 128; ++k) {
          const double t = -kPi + 2 * kPi * k / 128;
          worst = std::max(worst, std::abs(m.evaluate(t) - oracle::expect(sb.apply(pv, t), hd)));
        }
        ++generators;
      }
    }
  }
  return {worst <= 1e-9, std::to_string(generators) + " generators x 128 angles, max error " + fmt("%.2e", worst)};
}

// ------------------------------------------------------------------------ 2

Outcome algebraic_classes() {
  bool ok = true;
  double worst = 0.0;
  int checked = 0;
  for (int n = 2; n <= 4; ++n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    const oracle::Mat id = oracle::Mat::Identity(d, d);
    for (const auto& spec : {"minimal", "hwe"})
      for (const auto& g : pool_from_spec(spec, n).generators) {
        ok = ok && Generator::verify_class(g.body(), AlgebraicClass::Involutory);
        const oracle::Mat b = oracle::dense(g.body());
        worst = std::max(worst, mdist(b * b, id));
        ++checked;
      }
    for (const auto& g : qeb_pool(n).generators) {
      ok = ok && Generator::verify_class(g.body(), AlgebraicClass::Tripotent);
      const oracle::Mat b = oracle::dense(g.body());
      worst = std::max(worst, mdist(b * b * b, b));
      ++checked;
      if (g.body().size() != 8) continue;
      // Doubles: every basis state is either annihilated or sent to +-i times
      // the state with all four support bits flipped, from a 1100/0011 pattern.
      std::uint64_t support = 0;
      for (const auto& [s, c] : g.body().terms()) support |= s.x_mask() | s.z_mask();
      for (Eigen::Index col = 0; col < d; ++col) {
        const oracle::Vec out = b.col(col);
        if (out.norm() < 1e-12) continue;
        const auto target = static_cast<Eigen::Index>(static_cast<std::uint64_t>(col) ^ support);
        ok = ok && std::abs(std::abs(out(target)) - 1.0) < 1e-12 && std::abs(out(target).real()) < 1e-12;
        ok = ok && std::popcount(static_cast<std::uint64_t>(col) & support) == 2;
      }
    }
  }
  // A(0,1,2,3) swaps |1100> and |0011> with phase i.
  bool found = false;
  for (const auto& g : qeb_pool(4).generators) {
    if (g.label() != "A(0,1,2,3)") continue;
    found = true;
    const auto s = apply_pauli_sum(StateVector::from_bits("1100"), g.body());
    const auto back = apply_pauli_sum(StateVector::from_bits("0011"), g.body());
    ok = ok && std::abs(s[bits_to_index("0011")] - kI) < 1e-12 && std::abs(back[bits_to_index("1100")] + kI) < 1e-12;
  }
  ok = ok && found;
  ok = ok && worst <= 1e-12;
  return {ok, std::to_string(checked) + " generators, dense residual " + fmt("%.1e", worst)};
}

// ------------------------------------------------------------------------ 3

// Per-site coefficients, distinct so no two terms can be confused.
double hc(int k) { return 0.37 + 0.11 * k; }
double jc(int k) { return 0.23 + 0.07 * k; }

PauliSum field(int n, char c) {
  PauliSum h(n);
  for (int k = 0; k < n; ++k) {
    h.add(PauliString::parse(n, std::string(1, c) + std::to_string(k)), hc(k));
  }
  return h;
}

PauliSum coupling(int n, char c) {
  PauliSum h(n);
  for (int k = 0; k + 1 < n; ++k)
    h.add(PauliString::parse(n, std::string(1, c) + std::to_string(k) + " " + c + std::to_string(k + 1)), jc(k));
  return h;
}

// Builds sum of coef * word; a word touching a site outside the chain, or a
// coefficient index outside its range, is dropped (the boundary delta).
class Expect {
 public:
  Expect(int n, PauliSum base) : n_(n), acc_(std::move(base)) {}
  void add(oracle::cplx c, std::vector<std::pair<char, int>> word) {
    std::string text;
    for (auto [l, q] : word) {
      if (q < 0 || q >= n_) return;
      text += std::string(1, l) + std::to_string(q) + " ";
    }
    acc_.add(PauliString::parse(n_, text), c);
  }
  PauliSum result() { return acc_.simplify(); }

 private:
  int n_;
  PauliSum acc_;
};

Outcome commutator_tables() {
  // Each entry: H builder, row (commutator/conjugation, Y_i or Z_iY_{i+1}),
  // corrected expected value, and whether the printed entry agrees with it.
  using Add = std::function<void(oracle::cplx, std::vector<std::pair<char, int>>)>;
  struct Entry {
    const char* name;
    char kind;  // 'f' field, 'c' coupling
    char letter;
    bool zy, comm, printed_ok;
    std::function<void(int i, const Add&)> body;
  };
  // Coefficient out of range: J_k exists for 0 <= k <= n-2.
  auto J = [](int n, int k) { return (k >= 0 && k + 1 < n) ? jc(k) : 0.0; };
  auto H = [](int n, int k) { return (k >= 0 && k < n) ? hc(k) : 0.0; };
  int n_cur = 0;
  auto j = [&](int k) { return J(n_cur, k); };
  auto h = [&](int k) { return H(n_cur, k); };
  const oracle::cplx i2{0, 2};
  std::vector<Entry> entries = {
      {"[Y_i, hX]", 'f', 'X', false, true, true, [&](int i, const Add& a) { a(-i2 * h(i), {{'Z', i}}); }},
      {"Y_i hX Y_i", 'f', 'X', false, false, true, [&](int i, const Add& a) { a(-2 * h(i), {{'X', i}}); }},
      {"[ZY, hX]", 'f', 'X', true, true, false, [&](int i, const Add& a) {
         a(-i2 * h(i + 1), {{'Z', i}, {'Z', i + 1}});
         a(i2 * h(i), {{'Y', i}, {'Y', i + 1}});
       }},
      {"ZY hX ZY", 'f', 'X', true, false, false, [&](int i, const Add& a) {
         a(-2 * h(i + 1), {{'X', i + 1}});
         a(-2 * h(i), {{'X', i}});
       }},
      {"[Y_i, hY]", 'f', 'Y', false, true, true, [&](int, const Add&) {}},
      {"Y_i hY Y_i", 'f', 'Y', false, false, true, [&](int, const Add&) {}},
      {"[ZY, hY]", 'f', 'Y', true, true, true, [&](int i, const Add& a) { a(-i2 * h(i), {{'X', i}, {'Y', i + 1}}); }},
      {"ZY hY ZY", 'f', 'Y', true, false, false, [&](int i, const Add& a) { a(-2 * h(i), {{'Y', i}}); }},
      {"[Y_i, hZ]", 'f', 'Z', false, true, true, [&](int i, const Add& a) { a(i2 * h(i), {{'X', i}}); }},
      {"Y_i hZ Y_i", 'f', 'Z', false, false, false, [&](int i, const Add& a) { a(-2 * h(i), {{'Z', i}}); }},
      {"[ZY, hZ]", 'f', 'Z', true, true, true, [&](int i, const Add& a) { a(i2 * h(i + 1), {{'Z', i}, {'X', i + 1}}); }},
      {"ZY hZ ZY", 'f', 'Z', true, false, false, [&](int i, const Add& a) { a(-2 * h(i + 1), {{'Z', i + 1}}); }},
      {"[Y_i, JXX]", 'c', 'X', false, true, false, [&](int i, const Add& a) {
         a(-i2 * j(i), {{'Z', i}, {'X', i + 1}});
         a(-i2 * j(i - 1), {{'X', i - 1}, {'Z', i}});
       }},
      {"Y_i JXX Y_i", 'c', 'X', false, false, false, [&](int i, const Add& a) {
         a(-2 * j(i), {{'X', i}, {'X', i + 1}});
         a(-2 * j(i - 1), {{'X', i - 1}, {'X', i}});
       }},
      {"[ZY, JXX]", 'c', 'X', true, true, false, [&](int i, const Add& a) {
         a(-i2 * j(i + 1), {{'Z', i}, {'Z', i + 1}, {'X', i + 2}});
         a(i2 * j(i - 1), {{'X', i - 1}, {'Y', i}, {'Y', i + 1}});
       }},
      {"ZY JXX ZY", 'c', 'X', true, false, false, [&](int i, const Add& a) {
         a(-2 * j(i - 1), {{'X', i - 1}, {'X', i}});
         a(-2 * j(i + 1), {{'X', i + 1}, {'X', i + 2}});
       }},
      {"[Y_i, JYY]", 'c', 'Y', false, true, true, [&](int, const Add&) {}},
      {"Y_i JYY Y_i", 'c', 'Y', false, false, true, [&](int, const Add&) {}},
      {"[ZY, JYY]", 'c', 'Y', true, true, true, [&](int i, const Add& a) {
         a(-i2 * j(i), {{'X', i}});
         a(-i2 * j(i - 1), {{'Y', i - 1}, {'X', i}, {'Y', i + 1}});
       }},
      {"ZY JYY ZY", 'c', 'Y', true, false, true, [&](int i, const Add& a) {
         a(-2 * j(i), {{'Y', i}, {'Y', i + 1}});
         a(-2 * j(i - 1), {{'Y', i - 1}, {'Y', i}});
       }},
      {"[Y_i, JZZ]", 'c', 'Z', false, true, true, [&](int i, const Add& a) {
         a(i2 * j(i), {{'X', i}, {'Z', i + 1}});
         a(i2 * j(i - 1), {{'Z', i - 1}, {'X', i}});
       }},
      {"Y_i JZZ Y_i", 'c', 'Z', false, false, true, [&](int i, const Add& a) {
         a(-2 * j(i), {{'Z', i}, {'Z', i + 1}});
         a(-2 * j(i - 1), {{'Z', i - 1}, {'Z', i}});
       }},
      {"[ZY, JZZ]", 'c', 'Z', true, true, true, [&](int i, const Add& a) {
         a(i2 * j(i), {{'X', i + 1}});
         a(i2 * j(i + 1), {{'Z', i}, {'X', i + 1}, {'Z', i + 2}});
       }},
      {"ZY JZZ ZY", 'c', 'Z', true, false, true, [&](int i, const Add& a) {
         a(-2 * j(i + 1), {{'Z', i + 1}, {'Z', i + 2}});
         a(-2 * j(i), {{'Z', i}, {'Z', i + 1}});
       }},
  };

  int verified = 0, printed_ok = 0;
  std::string bad;
  for (const auto& e : entries) {
    bool all_sites = true;
    for (int n : {3, 4, 6}) {
      n_cur = n;
      const PauliSum ham = e.kind == 'f' ? field(n, e.letter) : coupling(n, e.letter);
      // Y_i for i <= n-2 and Z_i Y_{i+1} for i <= n-2, as in the minimal pool.
      for (int i = 0; i + 1 < n; ++i) {
        const PauliSum b(e.zy ? PauliString::parse(n, "Z" + std::to_string(i) + " Y" + std::to_string(i + 1))
                              : PauliString::parse(n, "Y" + std::to_string(i)));
        const PauliSum got = e.comm ? commutator(b, ham).simplify() : conjugate_by(ham, b).simplify();
        Expect want(n, e.comm ? PauliSum(n) : ham);
        e.body(i, [&](oracle::cplx c, std::vector<std::pair<char, int>> w) {
          if (c != 0.0) want.add(c, std::move(w));
        });
        if (!got.approx_equal(want.result(), 1e-14)) all_sites = false;
      }
    }
    verified += all_sites;
    printed_ok += e.printed_ok;
    if (!all_sites) bad += std::string(" ") + e.name;
  }
  Outcome o;
  o.pass = verified == 24 && printed_ok == 24;
  o.detail = std::to_string(verified) + "/24 corrected entries verified at all sites incl. chain ends (N=3,4,6); " +
             std::to_string(printed_ok) + "/24 printed entries verbatim, the other " +
             std::to_string(24 - printed_ok) + " are errata";
  if (!bad.empty()) o.detail += "; mismatched:" + bad;
  return o;
}

// ------------------------------------------------------------------------ 4

bool audit_cover(const MeasurementPlan& plan, const std::vector<PauliString>& strings) {
  for (const auto& s : strings) {
    bool hit = false;
    for (const auto& g : plan.groups) {
      bool ok = true;
      for (int q = 0; q < s.n_qubits(); ++q)
        if (s.letter(q) != 'I' && s.letter(q) != g.basis[static_cast<std::size_t>(q)]) ok = false;
      hit = hit || ok;
    }
    if (!hit) return false;
  }
  return true;
}

double grouped_vs_ungrouped(const PauliSum& h, const Pool& pool, const MeasurementPlan& plan, std::mt19937_64& rng) {
  const auto psi = oracle::random_state(h.n_qubits(), rng);
  const auto est = measure_plan(Backend::exact(), psi, plan, {});
  double worst = 0.0;
  auto check = [&](const PauliSum& op) {
    worst = std::max(worst, std::abs(combine_estimates(op, est) - expectation(psi, op)));
  };
  check(h);
  for (const auto& g : pool.generators) {
    check((kI * commutator(g.body(), h)).real_part().simplify());
    check(conjugate_by(h, g.body()).real_part().simplify());
  }
  return worst;
}

Outcome five_circuit_claim() {
  std::mt19937_64 rng(404);
  bool ok = true;
  double worst = 0.0;
  std::string sizes;
  for (int n : {4, 8, 12}) {
    const auto h = build_ising({n, 0.5, 0.2});
    const Pool pool = minimal_hardware_efficient_pool(n);
    const auto plan = plan_ising_screening(n);
    ok = ok && plan.groups.size() == 5 && audit_cover(plan, screening_observables(h, pool));
    worst = std::max(worst, grouped_vs_ungrouped(h, pool, plan, rng));

    std::normal_distribution<double> c(0.0, 1.0);
    GeneralChainSpec s{n, {}, {}, {}, {}, {}};
    for (int k = 0; k < n; ++k) s.hx.push_back(c(rng)), s.hz.push_back(c(rng));
    for (int k = 0; k + 1 < n; ++k) s.jx.push_back(c(rng)), s.jy.push_back(c(rng)), s.jz.push_back(c(rng));
    const auto g = build_general_chain(s);
    const auto gplan = plan_general_chain_screening(n);
    ok = ok && gplan.groups.size() <= 10 && audit_cover(gplan, screening_observables(g, pool));
    worst = std::max(worst, grouped_vs_ungrouped(g, pool, gplan, rng));
    sizes += (sizes.empty() ? "" : ",") + std::to_string(gplan.groups.size());
  }
  ok = ok && worst <= 1e-12;
  return {ok, "Ising plan 5 groups; general-chain groups " + sizes + "; grouped vs ungrouped " + fmt("%.1e", worst)};
}

// ------------------------------------------------------------------------ 5

Outcome gga_convergence() {
  bool ok = true;
  std::string fids;
  for (int n : {4, 6, 8, 10}) {
    const auto h = build_ising({n, 0.5, 0.2});
    DriverOptions o;
    o.stop.max_operators = 2 * n - 2;
    o.reference = exact_ground_state(h).state;
    const auto tr = gga_vqe(h, minimal_hardware_efficient_pool(n), InitialState::uniform_minus(n), Backend::exact(), o);
    double prev = tr.initial_exact;
    for (const auto& r : tr.iterations) {
      ok = ok && r.exact <= prev + 1e-12;
      prev = r.exact;
    }
    ok = ok && tr.final_fidelity && *tr.final_fidelity >= 0.98 && tr.n_operators() <= static_cast<std::size_t>(2 * n - 2);
    fids += " N=" + std::to_string(n) + ":" + fmt("%.4f", tr.final_fidelity.value_or(0.0));
  }
  return {ok, "fidelity" + fids + ", energies monotone"};
}

// ------------------------------------------------------------------------ 6

Outcome shot_noise() {
  const int n = 6;
  const auto h = build_ising({n, 0.5, 0.2});
  const auto gs = exact_ground_state(h).state;
  int good = 0;
  double lowest = 1.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    DriverOptions o;
    o.stop.max_operators = 2 * n - 2;
    const auto tr = gga_vqe(h, minimal_hardware_efficient_pool(n), InitialState::uniform_minus(n),
                            Backend::sampled(2500, seed), o);
    // Hybrid evaluation: replay the noisily built ansatz exactly.
    const double f = fidelity(tr.final_ansatz.prepare(), gs);
    good += f >= 0.95;
    lowest = std::min(lowest, f);
  }
  return {good >= 8, std::to_string(good) + "/10 seeds with replay fidelity >= 0.95 (lowest " + fmt("%.4f", lowest) + ")"};
}

// ------------------------------------------------------------------------ 7

Outcome accounting() {
  std::mt19937_64 rng(7);
  const int n = 4;
  const auto h = oracle::random_hermitian(n, 12, rng);
  const auto init = InitialState::basis("1010");
  DriverOptions o;
  o.stop.max_operators = 4;
  bool ok = true;
  auto all = [&](const RunTrace& tr, const std::function<bool(std::uint64_t)>& pred) {
    for (const auto& r : tr.iterations) ok = ok && pred(r.accounting_delta.circuits);
  };
  const Pool hwe = qubit_hardware_efficient_pool(n), qeb = qeb_pool(n);
  all(gga_vqe(h, hwe, init, Backend::exact(), o), [&](std::uint64_t c) { return c == 2 * hwe.size() + 1; });
  all(gga_vqe(h, qeb, init, Backend::exact(), o), [&](std::uint64_t c) { return c == 4 * qeb.size() + 1; });
  const int m = 6;
  all(gga_vqe(build_ising({m, 0.5, 0.2}), minimal_hardware_efficient_pool(m), InitialState::uniform_minus(m),
              Backend::sampled(2500, 1), o),
      [](std::uint64_t c) { return c == 5; });
  all(gga_vqe_2d(h, hwe, init, Backend::exact(), o), [&](std::uint64_t c) { return c <= 9 * hwe.size(); });
  return {ok, "involutory 2M+1 (M=" + std::to_string(hwe.size()) + "), tripotent 4M+1 (M=" +
                  std::to_string(qeb.size()) + "), Ising plan 5, d=2 <= 9M"};
}

// ------------------------------------------------------------------------ 8

Outcome overlap_toy() {
  const Pool pool = pool_from_spec("hf_pairs", 10);
  const auto hf = InitialState::basis("1111111100");
  Ansatz target(hf, pool.spec);
  target.append(pool.generators[4], 0.6);  // P(5,0)
  bool ok = true;
  std::vector<double> exact;
  for (auto method : {OverlapMethod::Exact, OverlapMethod::ComputeUncompute, OverlapMethod::SwapTest}) {
    DriverOptions o;
    o.overlap_method = method;
    const auto tr = overlap_gga_vqe(target, pool, hf, Backend::exact(), o);
    ok = ok && tr.iterations.size() == 2 && tr.n_operators() == 1 && tr.final_exact >= 0.99;
    if (tr.iterations.size() == 2)
      for (const auto& e : tr.iterations[1].screening) ok = ok && e.gain < o.overlap_gain_threshold;
    exact.push_back(tr.final_exact);

    if (method == OverlapMethod::Exact) continue;
    // Sampled: capped at two operators, since shot noise near F = 1 can keep
    // promising spurious gains.
    o.stop.max_operators = 2;
    const auto st = overlap_gga_vqe(target, pool, hf, Backend::sampled(2500, 8), o);
    ok = ok && st.iterations[0].selected[0].id == 4 && st.iterations[0].exact >= 0.99;
    // Sampled current-overlap estimates against the exact fidelity.
    for (const auto& r : st.iterations) {
      const double f = r.iteration == 1 ? st.initial_exact : st.iterations[static_cast<std::size_t>(r.iteration) - 2].exact;
      const double p = method == OverlapMethod::SwapTest ? (1 + f) / 2 : f;
      const double sigma = (method == OverlapMethod::SwapTest ? 2 : 1) * std::sqrt(p * (1 - p) / 2500);
      ok = ok && std::abs(r.current - f) <= 3 * sigma + 1e-12;
    }
  }
  const double spread = std::max(std::abs(exact[1] - exact[0]), std::abs(exact[2] - exact[0]));
  ok = ok && spread <= 1e-12;
  return {ok, "1 iteration, fidelity " + fmt("%.6f", exact[0]) + " with all methods (spread " + fmt("%.1e", spread) +
                  "); iteration-2 gains below threshold"};
}

// ------------------------------------------------------------------------ 9

Outcome overlap_identities() {
  std::mt19937_64 rng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 4;
    const Pool pool = qubit_hardware_efficient_pool(n);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    Ansatz a(InitialState::uniform_minus(n), pool.spec), b(InitialState::uniform_minus(n), pool.spec);
    for (int k = 0; k < 4; ++k) a.append(pool.generators[pick(rng)], ang(rng)), b.append(pool.generators[pick(rng)], ang(rng));
    const double f = std::norm(oracle::vec(a.prepare()).dot(oracle::vec(b.prepare())));
    const Backend ex = Backend::exact();
    worst = std::max(worst, std::abs(overlap_compute_uncompute(ex, a, b) - f));
    worst = std::max(worst, std::abs(overlap_swap_test(ex, a, b) - f));
    worst = std::max(worst, std::abs(swap_test_p0(a.prepare(), b.prepare()) - (1 + f) / 2));
  }
  return {worst <= 1e-12, "50 pairs, max deviation " + fmt("%.1e", worst)};
}

// ----------------------------------------------------------------------- 10

Outcome two_dimensional() {
  std::mt19937_64 rng(1010);
  double worst9 = 0.0, worst7 = 0.0, slice = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 3;
    const auto h = oracle::random_hermitian(n, 10, rng);
    const auto phi = oracle::random_state(n, rng);
    const Pool pool = trial % 2 ? qubit_hardware_efficient_pool(n) : minimal_hardware_efficient_pool(n);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const Generator& g1 = pool.generators[pick(rng)];
    const Generator& g2 = pool.generators[pick(rng)];
    auto sample = [&](double t1, double t2) {
      return expectation(apply_exp_generator(apply_exp_generator(phi, g1, t1), g2, t2), h);
    };
    const auto m = reconstruct_landscape_2d(sample);
    const Spectral s1(oracle::dense(g1.body())), s2(oracle::dense(g2.body()));
    const oracle::Mat hd = oracle::dense(h);
    const oracle::Vec pv = oracle::vec(phi);

    // The printed seven-term form: 1, c1, c1c2, c1s2, s1, s1c2, s1s2 with
    // c = cos 2t, s = sin 2t, fitted through seven grid nodes.
    const double nodes[3] = {0.0, kPi / 4, -kPi / 4};
    const int pick7[7][2] = {{0, 0}, {1, 0}, {2, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    auto basis7 = [](double t1, double t2) {
      const double c1 = std::cos(2 * t1), s1 = std::sin(2 * t1), c2 = std::cos(2 * t2), s2 = std::sin(2 * t2);
      Eigen::Matrix<double, 7, 1> r;
      r << 1, c1, c1 * c2, c1 * s2, s1, s1 * c2, s1 * s2;
      return r;
    };
    Eigen::Matrix<double, 7, 7> a7;
    Eigen::Matrix<double, 7, 1> y7;
    for (int r = 0; r < 7; ++r) {
      const double t1 = nodes[pick7[r][0]], t2 = nodes[pick7[r][1]];
      a7.row(r) = basis7(t1, t2).transpose();
      y7(r) = sample(t1, t2);
    }
    const Eigen::Matrix<double, 7, 1> coef7 = a7.fullPivLu().solve(y7);

    for (int i = 0; i < 64; ++i)
      for (int k = 0; k < 64; ++k) {
        const double t1 = -kPi + 2 * kPi * i / 64, t2 = -kPi + 2 * kPi * k / 64;
        const double want = oracle::expect(s2.apply(s1.apply(pv, t1), t2), hd);
        worst9 = std::max(worst9, std::abs(m.evaluate(t1, t2) - want));
        worst7 = std::max(worst7, std::abs(basis7(t1, t2).dot(coef7) - want));
      }
    const auto one = reconstruct_landscape(AlgebraicClass::Involutory, expectation(phi, h),
                                           [&](double t) { return sample(t, 0.0); });
    for (int k = 0; k < 64; ++k) {
      const double t = -kPi + 2 * kPi * k / 64;
      slice = std::max(slice, std::abs(m.slice_first().evaluate(t) - one.evaluate(t)));
    }
  }
  // Seven samples cannot pin down the nine coefficients of f(t1)^T A f(t2).
  const double nodes[3] = {0.0, kPi / 4, -kPi / 4};
  const int pick7[7][2] = {{0, 0}, {1, 0}, {2, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
  Eigen::MatrixXd design(7, 9);
  for (int r = 0; r < 7; ++r) {
    const double t1 = nodes[pick7[r][0]], t2 = nodes[pick7[r][1]];
    const double u[3] = {1.0, std::cos(2 * t1), std::sin(2 * t1)}, v[3] = {1.0, std::cos(2 * t2), std::sin(2 * t2)};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) design(r, 3 * i + k) = u[i] * v[k];
  }
  const auto rank = Eigen::FullPivLU<Eigen::MatrixXd>(design).rank();
  Outcome o;
  o.pass = worst7 <= 1e-9 && worst9 <= 1e-9 && slice <= 1e-9;
  o.detail = "7-sample form max error " + fmt("%.2e", worst7) + " (design rank " + std::to_string(rank) +
             " < 9 coefficients); " +
             "9-node grid max error " + fmt("%.1e", worst9) + ", slices " + fmt("%.1e", slice);
  return o;
}

// ----------------------------------------------------------------------- 11

Outcome determinism() {
  bool ok = true;
  for (int threads : {1, 4}) {
    DriverOptions o;
    o.stop.max_operators = 6;
    o.threads = threads;
    const auto h = build_ising({6, 0.5, 0.2});
    const auto pool = minimal_hardware_efficient_pool(6);
    const auto a = to_json(gga_vqe(h, pool, InitialState::uniform_minus(6), Backend::sampled(500, 17), o)).dump(2);
    const auto b = to_json(gga_vqe(h, pool, InitialState::uniform_minus(6), Backend::sampled(500, 17), o)).dump(2);
    o.plan = PlanChoice::None;
    const auto c = to_json(adapt_vqe(h, pool, InitialState::uniform_minus(6), Backend::sampled(500, 17), o)).dump(2);
    const auto d = to_json(adapt_vqe(h, pool, InitialState::uniform_minus(6), Backend::sampled(500, 17), o)).dump(2);
    ok = ok && a == b && c == d;
  }
  return {ok, "sampled gga and adapt traces byte-identical on rerun (1 and 4 threads)"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;  // 0: none
    Outcome (*run)();
  };
  const Criterion all[] = {
      {1, "landscape theorem equivalence", 60, landscape_equivalence},
      {2, "algebraic classes by machine", 10, algebraic_classes},
      {3, "commutator tables", 5, commutator_tables},
      {4, "Ising five-circuit plan", 0, five_circuit_claim},
      {5, "GGA-VQE Ising convergence", 120, gga_convergence},
      {6, "shot-noise robustness", 300, shot_noise},
      {7, "measurement accounting", 0, accounting},
      {8, "overlap toy", 0, overlap_toy},
      {9, "overlap estimator identities", 0, overlap_identities},
      {10, "2-D landscape", 0, two_dimensional},
      {11, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", c.limit_s) + " s budget";
    }
    failed += !o.pass;
    std::printf("criterion %2d: %s  %s: %s [%.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(std::size(all)) - failed, std::size(all));
  return failed ? 1 : 0;
}
