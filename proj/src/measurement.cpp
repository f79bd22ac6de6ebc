#include "ggavqe/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "ggavqe/hamiltonians.hpp"
#include "ggavqe/pools.hpp"

namespace ggavqe {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Rotates each qubit so its basis letter becomes Z.
void rotate_into(StateVector& s, const std::string& basis) {
  static const std::array<cplx, 4> h{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  // H S^dagger
  static const std::array<cplx, 4> hsdg{cplx{kInvSqrt2, 0}, cplx{0, -kInvSqrt2}, cplx{kInvSqrt2, 0},
                                        cplx{0, kInvSqrt2}};
  for (int q = 0; q < s.n_qubits(); ++q) {
    const char b = basis[static_cast<std::size_t>(q)];
    if (b == 'X') apply_single_qubit(s, q, h);
    else if (b == 'Y') apply_single_qubit(s, q, hsdg);
  }
}

char letter_at(const PauliString& s, int q) { return s.letter(q); }

// Parity estimates of every member from `shots` computational-basis samples.
void sample_group(const StateVector& state, const MeasurementGroup& g, int shots,
                  std::mt19937_64& rng, StringEstimates& out) {
  StateVector rotated = state;
  rotate_into(rotated, g.basis);
  std::vector<double> cum(rotated.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < rotated.dim(); ++i) {
    acc += std::norm(rotated[i]);
    cum[i] = acc;
  }
  std::vector<std::uint64_t> outcomes(static_cast<std::size_t>(shots));
  for (auto& o : outcomes) {
    const double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    o = static_cast<std::uint64_t>(it - cum.begin());
  }
  for (const auto& m : g.members) {
    const std::uint64_t support = m.x_mask() | m.z_mask();
    long long sum = 0;
    for (auto o : outcomes) sum += (std::popcount(o & support) & 1) ? -1 : 1;
    out[m] = static_cast<double>(sum) / shots;
  }
}

std::uint64_t bernoulli_count(double p, int shots, std::mt19937_64& rng) {
  std::uint64_t k = 0;
  for (int i = 0; i < shots; ++i) k += uniform01(rng) < p ? 1 : 0;
  return k;
}

}  // namespace

std::mt19937_64 stream_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = splitmix64(seed);
  for (auto k : key) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return std::mt19937_64(h);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// -------------------------------------------------------------------- Backend

Backend::Backend(Mode m, int shots, std::uint64_t seed)
    : mode_(m), shots_(shots), seed_(seed), counters_(std::make_shared<Counters>()) {}

Backend Backend::exact() { return Backend(Mode::Exact, 0, 0); }

Backend Backend::sampled(int shots, std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("sampled backend needs a positive shot count");
  return Backend(Mode::Sampled, shots, seed);
}

Accounting Backend::accounting() const {
  return {counters_->circuits.load(), counters_->group_circuits.load(), counters_->shots.load(),
          counters_->clamps.load()};
}

void Backend::reset_accounting() {
  counters_->circuits = 0;
  counters_->group_circuits = 0;
  counters_->shots = 0;
  counters_->clamps = 0;
}

void Backend::charge(std::uint64_t circuits, std::uint64_t group_circuits, std::uint64_t shots) const {
  counters_->circuits += circuits;
  counters_->group_circuits += group_circuits;
  counters_->shots += shots;
}

void Backend::note_clamp() const { ++counters_->clamps; }

// ---------------------------------------------------------------------- plans

std::optional<std::size_t> MeasurementPlan::group_of(const PauliString& s) const {
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (const auto& m : groups[g].members)
      if (m == s) return g;
  return std::nullopt;
}

bool MeasurementPlan::covers(const std::vector<PauliString>& strings) const {
  return std::all_of(strings.begin(), strings.end(),
                     [&](const PauliString& s) { return s.is_identity() || group_of(s).has_value(); });
}

bool basis_measures(const std::string& basis, const PauliString& s) {
  for (int q = 0; q < s.n_qubits(); ++q) {
    const char l = letter_at(s, q);
    if (l != 'I' && l != basis[static_cast<std::size_t>(q)]) return false;
  }
  return true;
}

std::vector<PauliString> screening_observables(const PauliSum& h, const Pool& pool) {
  std::set<PauliString, PauliOrder> acc;
  auto take = [&](const PauliSum& p) {
    for (const auto& [s, c] : p.terms())
      if (!s.is_identity()) acc.insert(s);
  };
  take(h);
  for (const auto& g : pool.generators) {
    if (g.algebraic_class() != AlgebraicClass::Involutory) continue;
    take(commutator(g.body(), h));
    take(conjugate_by(h, g.body()));
  }
  return {acc.begin(), acc.end()};
}

MeasurementPlan assign_to_bases(int n_qubits, const std::vector<std::string>& bases,
                                const std::vector<PauliString>& strings) {
  MeasurementPlan plan;
  plan.n_qubits = n_qubits;
  for (const auto& b : bases) plan.groups.push_back({b, {}});
  for (const auto& s : strings) {
    if (s.is_identity()) continue;
    bool placed = false;
    for (auto& g : plan.groups)
      if (basis_measures(g.basis, s)) {
        g.members.push_back(s);
        placed = true;
        break;
      }
    if (!placed) throw std::logic_error("no basis measures " + s.label());
  }
  return plan;
}

MeasurementPlan plan_ising_screening(int n) {
  if (n < 3) throw std::invalid_argument("Ising screening plan needs N >= 3");
  const auto strings =
      screening_observables(build_ising({n, 0.7, 0.3}), minimal_hardware_efficient_pool(n));
  std::string z(n, 'Z'), x(n, 'X'), y(n, 'Y'), even(n, 'Z'), odd(n, 'Z');
  for (int q = 0; q < n; ++q) (q % 2 ? odd : even)[static_cast<std::size_t>(q)] = 'X';
  return assign_to_bases(n, {z, x, y, even, odd}, strings);
}

MeasurementPlan plan_general_chain_screening(int n) {
  if (n < 3) throw std::invalid_argument("general-chain screening plan needs N >= 3");
  GeneralChainSpec spec{n, {}, {}, {}, {}, {}};
  // Distinct, generic magnitudes so no structural term cancels by accident.
  for (int k = 0; k < n; ++k) {
    spec.hx.push_back(0.31 + 0.013 * k);
    spec.hz.push_back(0.27 + 0.017 * k);
  }
  for (int k = 0; k + 1 < n; ++k) {
    spec.jx.push_back(0.23 + 0.011 * k);
    spec.jy.push_back(0.19 + 0.007 * k);
    spec.jz.push_back(0.17 + 0.005 * k);
  }
  const auto strings =
      screening_observables(build_general_chain(spec), minimal_hardware_efficient_pool(n));

  // Candidate bases repeat a pattern of period 1..4 along the chain.
  std::vector<std::string> candidates;
  std::set<std::string> seen;
  for (int period = 1; period <= 4; ++period) {
    int count = 1;
    for (int i = 0; i < period; ++i) count *= 3;
    for (int code = 0; code < count; ++code) {
      std::string pat;
      for (int i = 0, c = code; i < period; ++i, c /= 3) pat += "ZXY"[c % 3];
      std::string b;
      for (int q = 0; q < n; ++q) b += pat[static_cast<std::size_t>(q % period)];
      if (seen.insert(b).second) candidates.push_back(b);
    }
  }
  // Exact minimum cover by iterative deepening; branch on the string with the
  // fewest covering bases. Greedy alone overshoots ten groups on short chains.
  const std::size_t m = strings.size();
  std::vector<std::vector<std::size_t>> coverers(m);
  for (std::size_t c = 0; c < candidates.size(); ++c)
    for (std::size_t i = 0; i < m; ++i)
      if (basis_measures(candidates[c], strings[i])) coverers[i].push_back(c);
  std::vector<int> cover_count(m, 0);
  std::vector<std::size_t> picked;
  std::function<bool(std::size_t)> dfs = [&](std::size_t budget) -> bool {
    std::size_t pick = m, fewest = SIZE_MAX;
    for (std::size_t i = 0; i < m; ++i)
      if (cover_count[i] == 0 && coverers[i].size() < fewest) {
        fewest = coverers[i].size();
        pick = i;
      }
    if (pick == m) return true;
    if (picked.size() == budget) return false;
    for (std::size_t c : coverers[pick]) {
      picked.push_back(c);
      for (std::size_t i = 0; i < m; ++i)
        if (basis_measures(candidates[c], strings[i])) ++cover_count[i];
      if (dfs(budget)) return true;
      for (std::size_t i = 0; i < m; ++i)
        if (basis_measures(candidates[c], strings[i])) --cover_count[i];
      picked.pop_back();
    }
    return false;
  };
  std::size_t budget = 1;
  while (!dfs(budget)) ++budget;
  std::vector<std::string> chosen;
  for (std::size_t c : picked) chosen.push_back(candidates[c]);
  return assign_to_bases(n, chosen, strings);
}

MeasurementPlan greedy_qwc_plan(int n, const std::vector<PauliString>& strings) {
  MeasurementPlan plan;
  plan.n_qubits = n;
  for (const auto& s : strings) {
    if (s.is_identity()) continue;
    MeasurementGroup* home = nullptr;
    for (auto& g : plan.groups) {
      bool ok = true;
      for (int q = 0; q < n && ok; ++q) {
        const char l = s.letter(q), b = g.basis[static_cast<std::size_t>(q)];
        ok = l == 'I' || b == '.' || b == l;
      }
      if (ok) {
        home = &g;
        break;
      }
    }
    if (!home) {
      plan.groups.push_back({std::string(static_cast<std::size_t>(n), '.'), {}});
      home = &plan.groups.back();
    }
    for (int q = 0; q < n; ++q)
      if (s.letter(q) != 'I') home->basis[static_cast<std::size_t>(q)] = s.letter(q);
    home->members.push_back(s);
  }
  for (auto& g : plan.groups) std::replace(g.basis.begin(), g.basis.end(), '.', 'Z');
  return plan;
}

// ---------------------------------------------------------------- measurement

namespace {

void measure_groups(const Backend& backend, const StateVector& state, const MeasurementPlan& plan,
                    const std::vector<std::size_t>& which, const StreamKey& key, StringEstimates& out) {
  if (plan.n_qubits != state.n_qubits()) throw SizeMismatch("measurement plan: register size mismatch");
  for (std::size_t g : which) {
    const auto& grp = plan.groups[g];
    if (backend.sampled_mode()) {
      auto rng = stream_rng(backend.seed(), {key.iteration, key.item, key.sample, g});
      sample_group(state, grp, backend.shots(), rng, out);
      backend.charge(1, 1, static_cast<std::uint64_t>(backend.shots()));
    } else {
      for (const auto& m : grp.members) out[m] = expectation_string(state, m);
      backend.charge(1, 0, 0);
    }
  }
}

}  // namespace

StringEstimates measure_plan(const Backend& backend, const StateVector& state,
                             const MeasurementPlan& plan, const StreamKey& key) {
  std::vector<std::size_t> all(plan.groups.size());
  for (std::size_t g = 0; g < all.size(); ++g) all[g] = g;
  StringEstimates out;
  measure_groups(backend, state, plan, all, key, out);
  return out;
}

double combine_estimates(const PauliSum& h, const StringEstimates& est) {
  double acc = 0.0;
  for (const auto& [s, c] : h.terms()) {
    if (s.is_identity()) {
      acc += c.real();
      continue;
    }
    auto it = est.find(s);
    if (it == est.end())
      throw std::invalid_argument("measurement plan does not cover " + s.label());
    acc += c.real() * it->second;
  }
  return acc;
}

double measure_expectation(const Backend& backend, const StateVector& state, const PauliSum& h,
                           const MeasurementPlan* plan, const StreamKey& key) {
  if (!h.is_hermitian()) throw std::invalid_argument("measure_expectation requires a Hermitian operator");
  if (plan) {
    // Only the groups h touches are measured.
    std::set<std::size_t> used;
    for (const auto& [s, c] : h.terms()) {
      if (s.is_identity()) continue;
      auto g = plan->group_of(s);
      if (!g) throw std::invalid_argument("measurement plan does not cover " + s.label());
      used.insert(*g);
    }
    StringEstimates est;
    measure_groups(backend, state, *plan, {used.begin(), used.end()}, key, est);
    return combine_estimates(h, est);
  }
  if (!backend.sampled_mode()) {
    backend.charge(1, 0, 0);
    return expectation(state, h);
  }
  const auto groups = greedy_qwc_plan(h.n_qubits(), h.strings());
  StringEstimates est;
  for (std::size_t g = 0; g < groups.groups.size(); ++g) {
    auto rng = stream_rng(backend.seed(), {key.iteration, key.item, key.sample, g});
    sample_group(state, groups.groups[g], backend.shots(), rng, est);
  }
  backend.charge(1, groups.groups.size(),
                 groups.groups.size() * static_cast<std::uint64_t>(backend.shots()));
  return combine_estimates(h, est);
}

// -------------------------------------------------------------------- overlap

double overlap_compute_uncompute(const Backend& backend, const Ansatz& a, const Ansatz& b,
                                 const StreamKey& key) {
  if (a.n_qubits() != b.n_qubits()) throw SizeMismatch("compute-uncompute: register sizes differ");
  const StateVector s = a.apply_inverse(b.prepare());
  const double p0 = std::min(1.0, std::norm(s[0]));
  if (!backend.sampled_mode()) {
    backend.charge(1, 0, 0);
    return p0;
  }
  auto rng = stream_rng(backend.seed(), {key.iteration, key.item, key.sample, 0xC0C0});
  const auto k = bernoulli_count(p0, backend.shots(), rng);
  backend.charge(1, 1, static_cast<std::uint64_t>(backend.shots()));
  return static_cast<double>(k) / backend.shots();
}

double swap_test_p0(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw SizeMismatch("SWAP test: register sizes differ");
  const int n = a.n_qubits();
  const int total = 2 * n + 1;
  if (total > kMaxSimulatorQubits)
    throw std::invalid_argument("SWAP test needs " + std::to_string(total) +
                                " qubits, above the simulator limit of " +
                                std::to_string(kMaxSimulatorQubits));
  // qubit 0: ancilla, 1..n: |a>, n+1..2n: |b>
  std::vector<cplx> amps(std::size_t{1} << total, cplx{});
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.dim(); ++j) amps[(i << 1) | (j << (n + 1))] = a[i] * b[j];
  }
  StateVector reg(total, std::move(amps));
  const std::array<cplx, 4> h{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  apply_single_qubit(reg, 0, h);
  for (int k = 0; k < n; ++k) {
    const std::uint64_t lo = std::uint64_t{1} << (1 + k), hi = std::uint64_t{1} << (n + 1 + k);
    for (std::uint64_t idx = 1; idx < reg.dim(); idx += 2)  // ancilla set
      if ((idx & lo) && !(idx & hi)) std::swap(reg[idx], reg[idx ^ lo ^ hi]);
  }
  apply_single_qubit(reg, 0, h);
  double p0 = 0.0;
  for (std::uint64_t idx = 0; idx < reg.dim(); idx += 2) p0 += std::norm(reg[idx]);
  return p0;
}

double overlap_swap_test(const Backend& backend, const Ansatz& a, const Ansatz& b,
                         const StreamKey& key) {
  const double p0 = std::clamp(swap_test_p0(a.prepare(), b.prepare()), 0.0, 1.0);
  if (!backend.sampled_mode()) {
    backend.charge(1, 0, 0);
    return 2 * p0 - 1;
  }
  auto rng = stream_rng(backend.seed(), {key.iteration, key.item, key.sample, 0x5A5A});
  const auto k = bernoulli_count(p0, backend.shots(), rng);
  backend.charge(1, 1, static_cast<std::uint64_t>(backend.shots()));
  const double est = 2.0 * static_cast<double>(k) / backend.shots() - 1.0;
  if (est < 0.0 || est > 1.0) {
    backend.note_clamp();
    return std::clamp(est, 0.0, 1.0);
  }
  return est;
}

}  // namespace ggavqe
