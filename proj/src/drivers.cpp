#include "ggavqe/drivers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "ggavqe/hamiltonians.hpp"

namespace ggavqe {

namespace {

// Stream-key items outside the generator-id range.
constexpr std::uint64_t kCurrentItem = std::uint64_t{1} << 40;
constexpr std::uint64_t kPlanItem = kCurrentItem + 1;
constexpr std::uint64_t kPairItem = kCurrentItem + 2;
constexpr std::uint64_t kSweepItem = std::uint64_t{1} << 41;

constexpr double kExhausted = 1e-12;

template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> workers;
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  for (std::size_t w = 0; w < count; ++w)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

Accounting minus(const Accounting& a, const Accounting& b) {
  return {a.circuits - b.circuits, a.group_circuits - b.group_circuits, a.shots - b.shots,
          a.overlap_clamps - b.overlap_clamps};
}

// Largest gain wins; gains within 1e-12 go to the smaller id.
std::size_t select_best(const std::vector<ScreenEntry>& rows) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double d = rows[i].gain - rows[best].gain;
    if (d > kExhausted || (std::abs(d) <= kExhausted && rows[i].id < rows[best].id)) best = i;
  }
  return best;
}

std::vector<std::size_t> ranking(const std::vector<ScreenEntry>& rows) {
  std::vector<std::size_t> idx(rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double d = rows[a].gain - rows[b].gain;
    if (std::abs(d) > kExhausted) return d > 0;
    return rows[a].id < rows[b].id;
  });
  return idx;
}

SelectedStep step_of(const Generator& g, double angle) {
  return {g.id(), g.label(), angle, g.textbook_angle(angle)};
}

void init_trace(RunTrace& tr, const char* driver, const Backend& backend, const Ansatz& a) {
  tr.driver = driver;
  tr.backend_mode = backend.sampled_mode() ? "sampled" : "exact";
  tr.shots = backend.shots();
  tr.seed = backend.seed();
  tr.final_ansatz = a;
}

std::optional<double> fidelity_to(const DriverOptions& opt, const StateVector& s) {
  if (!opt.reference) return std::nullopt;
  return fidelity(*opt.reference, s);
}

/// Energy landscapes for every pool generator on one state.
class EnergyScreener {
 public:
  EnergyScreener(const PauliSum& h, const Pool& pool, const Backend& backend,
                 std::optional<MeasurementPlan> plan, int threads)
      : h_(h), pool_(pool), backend_(backend), plan_(std::move(plan)), threads_(threads) {
    if (plan_)
      for (const auto& g : pool_.generators) {
        gobs_.push_back((cplx{0.0, 1.0} * commutator(g.body(), h_)).real_part());
        bobs_.push_back(conjugate_by(h_, g.body()).real_part());
      }
  }

  bool uses_plan() const { return plan_.has_value(); }

  double measure(const StateVector& s, StreamKey key) const {
    return measure_expectation(backend_, s, h_, nullptr, key);
  }

  std::vector<ScreenEntry> run(const StateVector& state, std::uint64_t iteration, double& e0) const {
    std::vector<ScreenEntry> rows(pool_.size());
    if (plan_) {
      const auto est = measure_plan(backend_, state, *plan_, {iteration, kPlanItem, 0});
      e0 = combine_estimates(h_, est);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        LandscapeModel m;
        m.e0 = e0;
        m.g = combine_estimates(gobs_[i], est);
        m.b = combine_estimates(bobs_[i], est);
        m.angle_scale = pool_.generators[i].angle_scale();
        rows[i] = finish(pool_.generators[i], m, e0);
      }
      return rows;
    }
    e0 = measure(state, {iteration, kCurrentItem, 0});
    const double shared = e0;
    parallel_for(rows.size(), threads_, [&](std::size_t i) {
      const Generator& g = pool_.generators[i];
      std::uint64_t node = 0;
      const auto m = reconstruct_landscape(
          g.algebraic_class(), shared,
          [&](double t) {
            return measure(apply_exp_generator(state, g, t),
                           {iteration, static_cast<std::uint64_t>(g.id()), node++});
          },
          g.angle_scale());
      rows[i] = finish(g, m, shared);
    });
    return rows;
  }

 private:
  static ScreenEntry finish(const Generator& g, const LandscapeModel& m, double e0) {
    const Extremum ext = minimize(m);
    return {g.id(), g.label(), m, ext.theta, ext.value, std::max(0.0, e0 - ext.value)};
  }

  const PauliSum& h_;
  const Pool& pool_;
  const Backend& backend_;
  std::optional<MeasurementPlan> plan_;
  int threads_;
  std::vector<PauliSum> gobs_, bobs_;
};

// Common stop checks on a finished screening. Returns a status or empty.
std::string screening_stop(const StopRule& stop, const std::vector<ScreenEntry>& rows,
                           const ScreenEntry& best) {
  if (best.gain < kExhausted) return "pool exhausted";
  if (stop.min_energy_decrease && best.gain < *stop.min_energy_decrease) return "converged";
  if (stop.gradient_epsilon) {
    double gmax = 0.0;
    for (const auto& r : rows) gmax = std::max(gmax, std::abs(r.model.g));
    if (gmax < *stop.gradient_epsilon) return "gradient below threshold";
  }
  return {};
}

nlohmann::ordered_json accounting_json(const Accounting& a) {
  return {{"circuits", a.circuits},
          {"group_circuits", a.group_circuits},
          {"shots", a.shots},
          {"overlap_clamps", a.overlap_clamps}};
}

nlohmann::ordered_json model_json(const LandscapeModel& m) {
  nlohmann::ordered_json j;
  j["class"] = std::string(to_string(m.cls));
  j["e0"] = m.e0;
  j["g"] = m.g;
  if (m.cls == AlgebraicClass::Involutory) {
    j["b"] = m.b;
  } else {
    j["c0"] = m.c0;
    j["c1"] = m.c1;
    j["c2"] = m.c2;
  }
  return j;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void StopRule::validate() const {
  if (!max_operators && !gradient_epsilon && !min_energy_decrease)
    throw std::invalid_argument("stop rule: set at least one of max_operators, gradient_epsilon, "
                                "min_energy_decrease");
  if (max_operators && *max_operators < 0) throw std::invalid_argument("stop rule: max_operators < 0");
  if (gradient_epsilon && *gradient_epsilon < 0) throw std::invalid_argument("stop rule: gradient_epsilon < 0");
  if (min_energy_decrease && *min_energy_decrease < 0)
    throw std::invalid_argument("stop rule: min_energy_decrease < 0");
}

std::string_view to_string(PlanChoice p) {
  switch (p) {
    case PlanChoice::Auto: return "auto";
    case PlanChoice::None: return "none";
    case PlanChoice::Ising: return "ising";
    case PlanChoice::GeneralChain: return "general_chain";
  }
  return "auto";
}

std::string_view to_string(OverlapMethod m) {
  switch (m) {
    case OverlapMethod::Exact: return "exact";
    case OverlapMethod::ComputeUncompute: return "compute_uncompute";
    case OverlapMethod::SwapTest: return "swap_test";
  }
  return "exact";
}

PlanChoice parse_plan_choice(std::string_view s) {
  for (auto p : {PlanChoice::Auto, PlanChoice::None, PlanChoice::Ising, PlanChoice::GeneralChain})
    if (s == to_string(p)) return p;
  throw std::invalid_argument("unknown measurement plan '" + std::string(s) +
                              "' (expected auto, none, ising or general_chain)");
}

OverlapMethod parse_overlap_method(std::string_view s) {
  for (auto m : {OverlapMethod::Exact, OverlapMethod::ComputeUncompute, OverlapMethod::SwapTest})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown overlap method '" + std::string(s) +
                              "' (expected exact, compute_uncompute or swap_test)");
}

std::optional<MeasurementPlan> choose_plan(const PauliSum& h, const Pool& pool, PlanChoice choice,
                                           std::string* kind) {
  if (kind) *kind = "none";
  if (choice == PlanChoice::None) return std::nullopt;
  const int n = h.n_qubits();
  auto fits = [&](const MeasurementPlan& p) {
    return pool.all_involutory() && p.covers(screening_observables(h, pool));
  };
  auto attempt = [&](PlanChoice which) -> std::optional<MeasurementPlan> {
    if (n < 3) return std::nullopt;
    MeasurementPlan p = which == PlanChoice::Ising ? plan_ising_screening(n)
                                                   : plan_general_chain_screening(n);
    if (!fits(p)) return std::nullopt;
    if (kind) *kind = std::string(to_string(which));
    return p;
  };
  if (choice == PlanChoice::Auto) {
    if (auto p = attempt(PlanChoice::Ising)) return p;
    return attempt(PlanChoice::GeneralChain);
  }
  auto p = attempt(choice);
  if (!p)
    throw std::invalid_argument("the " + std::string(to_string(choice)) +
                                " plan does not cover this Hamiltonian and pool");
  return p;
}

// ------------------------------------------------------------------- GGA-VQE

RunTrace gga_vqe(const PauliSum& h, const Pool& pool, const InitialState& initial,
                 const Backend& backend, const DriverOptions& opt) {
  opt.stop.validate();
  if (pool.size() == 0) throw std::invalid_argument("gga_vqe: empty pool");
  if (!h.is_hermitian()) throw std::invalid_argument("gga_vqe: Hamiltonian is not Hermitian");
  Ansatz ansatz(initial, pool.spec);
  RunTrace tr;
  init_trace(tr, "gga", backend, ansatz);
  auto plan = choose_plan(h, pool, opt.plan, &tr.plan_kind);
  tr.plan_groups = plan ? plan->groups.size() : 0;
  const EnergyScreener screener(h, pool, backend, std::move(plan), opt.threads);

  StateVector state = ansatz.prepare();
  tr.initial_exact = expectation(state, h);
  tr.initial_fidelity = fidelity_to(opt, state);
  for (int it = 1;; ++it) {
    if (opt.stop.max_operators && static_cast<int>(ansatz.size()) >= *opt.stop.max_operators) {
      tr.status = "max operators";
      break;
    }
    const Accounting before = backend.accounting();
    IterationRecord rec;
    rec.iteration = it;
    rec.screening = screener.run(state, static_cast<std::uint64_t>(it), rec.current);
    const ScreenEntry& best = rec.screening[select_best(rec.screening)];
    rec.predicted = best.predicted;
    const std::string stop = screening_stop(opt.stop, rec.screening, best);
    if (stop.empty()) {
      const Generator& g = pool.at(best.id);
      ansatz.append(g, best.theta);
      rec.appended = true;
      rec.selected.push_back(step_of(g, ansatz.steps().back().angle));
      state = apply_exp_generator(state, g, ansatz.steps().back().angle);
    }
    rec.exact = expectation(state, h);
    rec.fidelity = fidelity_to(opt, state);
    rec.accounting = backend.accounting();
    rec.accounting_delta = minus(rec.accounting, before);
    tr.iterations.push_back(std::move(rec));
    if (!stop.empty()) {
      tr.status = stop;
      break;
    }
  }
  tr.final_ansatz = ansatz;
  tr.final_exact = expectation(state, h);
  tr.final_fidelity = fidelity_to(opt, state);
  tr.accounting = backend.accounting();
  return tr;
}

// ----------------------------------------------------------------- ADAPT-VQE

RunTrace adapt_vqe(const PauliSum& h, const Pool& pool, const InitialState& initial,
                   const Backend& backend, const DriverOptions& opt) {
  opt.stop.validate();
  if (pool.size() == 0) throw std::invalid_argument("adapt_vqe: empty pool");
  Ansatz ansatz(initial, pool.spec);
  RunTrace tr;
  init_trace(tr, "adapt", backend, ansatz);
  auto plan = choose_plan(h, pool, opt.plan, &tr.plan_kind);
  tr.plan_groups = plan ? plan->groups.size() : 0;
  const EnergyScreener screener(h, pool, backend, std::move(plan), opt.threads);

  StateVector state = ansatz.prepare();
  tr.initial_exact = expectation(state, h);
  tr.initial_fidelity = fidelity_to(opt, state);
  for (int it = 1;; ++it) {
    if (opt.stop.max_operators && static_cast<int>(ansatz.size()) >= *opt.stop.max_operators) {
      tr.status = "max operators";
      break;
    }
    const Accounting before = backend.accounting();
    IterationRecord rec;
    rec.iteration = it;
    rec.screening = screener.run(state, static_cast<std::uint64_t>(it), rec.current);
    // Largest |dL/dtheta(0)|, ties to the smaller id.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < rec.screening.size(); ++i)
      if (std::abs(rec.screening[i].model.g) > std::abs(rec.screening[pick].model.g) + kExhausted)
        pick = i;
    const double gmax = std::abs(rec.screening[pick].model.g);
    std::string stop;
    if (opt.stop.gradient_epsilon && gmax < *opt.stop.gradient_epsilon) stop = "gradient below threshold";
    else if (gmax < kExhausted) stop = "gradient vanished";

    if (stop.empty()) {
      const Generator& g = pool.at(rec.screening[pick].id);
      ansatz.append(g, 0.0);
      double current = rec.current;
      const double start = current;
      const std::size_t k_max = ansatz.size();
      for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        const double sweep_start = current;
        std::vector<std::size_t> order;
        for (std::size_t k = 0; k < k_max; ++k) order.push_back(k);
        for (std::size_t k = k_max; k-- > 1;) order.push_back(k - 1);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
          const std::size_t k = order[pos];
          const AnsatzStep step = ansatz.steps()[k];
          std::uint64_t node = 0;
          const std::uint64_t item =
              kSweepItem + static_cast<std::uint64_t>(sweep) * 4096 + static_cast<std::uint64_t>(pos);
          const auto m = reconstruct_landscape(
              step.generator.algebraic_class(), current,
              [&](double d) {
                Ansatz trial = ansatz;
                trial.set_angle(k, step.angle + d);
                return screener.measure(trial.prepare(), {static_cast<std::uint64_t>(it), item, node++});
              },
              step.generator.angle_scale());
          const Extremum ext = minimize(m);
          if (ext.value < current) {
            ansatz.set_angle(k, step.angle + ext.theta);
            current = ext.value;
          }
        }
        ++rec.sweeps;
        if (sweep_start - current < opt.sweep_tolerance) break;
      }
      rec.predicted = current;
      rec.appended = true;
      rec.selected.push_back(step_of(g, ansatz.steps().back().angle));
      state = ansatz.prepare();
      if (opt.stop.min_energy_decrease && start - current < *opt.stop.min_energy_decrease)
        stop = "converged";
    }
    rec.exact = expectation(state, h);
    rec.fidelity = fidelity_to(opt, state);
    rec.accounting = backend.accounting();
    rec.accounting_delta = minus(rec.accounting, before);
    tr.iterations.push_back(std::move(rec));
    if (!stop.empty()) {
      tr.status = stop;
      break;
    }
  }
  tr.final_ansatz = ansatz;
  tr.final_exact = expectation(state, h);
  tr.final_fidelity = fidelity_to(opt, state);
  tr.accounting = backend.accounting();
  return tr;
}

// ----------------------------------------------------------- Overlap-GGA-VQE

RunTrace overlap_gga_vqe(const Ansatz& target, const Pool& pool, const InitialState& initial,
                         const Backend& backend, const DriverOptions& opt) {
  if (pool.size() == 0) throw std::invalid_argument("overlap_gga_vqe: empty pool");
  if (target.n_qubits() != initial.n_qubits())
    throw SizeMismatch("overlap_gga_vqe: target and initial state differ in size");
  if (opt.overlap_method == OverlapMethod::SwapTest && 2 * target.n_qubits() + 1 > kMaxSimulatorQubits)
    throw std::invalid_argument("swap_test needs 2N+1 qubits, above the simulator limit");
  Ansatz ansatz(initial, pool.spec);
  RunTrace tr;
  init_trace(tr, "overlap", backend, ansatz);
  tr.objective = "overlap";
  const StateVector target_state = target.prepare();

  auto overlap = [&](const Ansatz& trial, const StreamKey& key) -> double {
    switch (opt.overlap_method) {
      case OverlapMethod::ComputeUncompute: return overlap_compute_uncompute(backend, target, trial, key);
      case OverlapMethod::SwapTest: return overlap_swap_test(backend, target, trial, key);
      case OverlapMethod::Exact: break;
    }
    backend.charge(1, 0, 0);
    return fidelity(target_state, trial.prepare());
  };

  StateVector state = ansatz.prepare();
  tr.initial_exact = fidelity(target_state, state);
  tr.initial_fidelity = tr.initial_exact;
  for (int it = 1;; ++it) {
    if (opt.stop.max_operators && static_cast<int>(ansatz.size()) >= *opt.stop.max_operators) {
      tr.status = "max operators";
      break;
    }
    const Accounting before = backend.accounting();
    IterationRecord rec;
    rec.iteration = it;
    const auto iter = static_cast<std::uint64_t>(it);
    rec.current = overlap(ansatz, {iter, kCurrentItem, 0});
    const double e0 = rec.current;
    rec.screening.resize(pool.size());
    parallel_for(pool.size(), opt.threads, [&](std::size_t i) {
      const Generator& g = pool.generators[i];
      std::uint64_t node = 0;
      const auto m = reconstruct_landscape(
          g.algebraic_class(), e0,
          [&](double t) {
            Ansatz trial = ansatz;
            trial.append(g, t);
            return overlap(trial, {iter, static_cast<std::uint64_t>(g.id()), node++});
          },
          g.angle_scale());
      const Extremum ext = maximize(m);
      rec.screening[i] = {g.id(), g.label(), m, ext.theta, ext.value, std::max(0.0, ext.value - e0)};
    });
    const ScreenEntry& best = rec.screening[select_best(rec.screening)];
    rec.predicted = best.predicted;
    std::string stop;
    if (best.gain < opt.overlap_gain_threshold) stop = "converged";
    if (stop.empty()) {
      const Generator& g = pool.at(best.id);
      ansatz.append(g, best.theta);
      rec.appended = true;
      rec.selected.push_back(step_of(g, ansatz.steps().back().angle));
      state = apply_exp_generator(state, g, ansatz.steps().back().angle);
    }
    rec.exact = fidelity(target_state, state);
    rec.fidelity = rec.exact;
    rec.accounting = backend.accounting();
    rec.accounting_delta = minus(rec.accounting, before);
    tr.iterations.push_back(std::move(rec));
    if (!stop.empty()) {
      tr.status = stop;
      break;
    }
  }
  tr.final_ansatz = ansatz;
  tr.final_exact = fidelity(target_state, state);
  tr.final_fidelity = tr.final_exact;
  tr.accounting = backend.accounting();
  return tr;
}

// ------------------------------------------------------------ GGA-VQE (d = 2)

RunTrace gga_vqe_2d(const PauliSum& h, const Pool& pool, const InitialState& initial,
                    const Backend& backend, const DriverOptions& opt) {
  opt.stop.validate();
  if (pool.size() < 2) throw std::invalid_argument("gga_vqe_2d: pool needs at least two generators");
  if (!pool.all_involutory()) throw std::invalid_argument("gga_vqe_2d: pool must be involutory");
  Ansatz ansatz(initial, pool.spec);
  RunTrace tr;
  init_trace(tr, "gga2d", backend, ansatz);
  auto plan = choose_plan(h, pool, opt.plan, &tr.plan_kind);
  tr.plan_groups = plan ? plan->groups.size() : 0;
  const EnergyScreener screener(h, pool, backend, std::move(plan), opt.threads);

  StateVector state = ansatz.prepare();
  tr.initial_exact = expectation(state, h);
  tr.initial_fidelity = fidelity_to(opt, state);
  for (int it = 1;; ++it) {
    const int room = opt.stop.max_operators ? *opt.stop.max_operators - static_cast<int>(ansatz.size())
                                            : 2;
    if (room <= 0) {
      tr.status = "max operators";
      break;
    }
    const Accounting before = backend.accounting();
    IterationRecord rec;
    rec.iteration = it;
    const auto iter = static_cast<std::uint64_t>(it);
    rec.screening = screener.run(state, iter, rec.current);
    const auto order = ranking(rec.screening);
    const ScreenEntry& first = rec.screening[order[0]];
    const ScreenEntry& second = rec.screening[order[1]];
    std::string stop = screening_stop(opt.stop, rec.screening, first);
    if (stop.empty() && room == 1) {
      const Generator& g = pool.at(first.id);
      ansatz.append(g, first.theta);
      rec.selected.push_back(step_of(g, ansatz.steps().back().angle));
      rec.predicted = first.predicted;
      rec.appended = true;
    } else if (stop.empty()) {
      const Generator& g1 = pool.at(first.id);
      const Generator& g2 = pool.at(second.id);
      // Row and column through the origin come from the 1-D screening.
      const double nodes[3] = {0.0, std::numbers::pi / 4, -std::numbers::pi / 4};
      std::array<std::array<double, 3>, 3> grid{};
      for (int i = 0; i < 3; ++i) {
        grid[static_cast<std::size_t>(i)][0] = first.model.evaluate(nodes[i]);
        grid[0][static_cast<std::size_t>(i)] = second.model.evaluate(nodes[i]);
      }
      grid[0][0] = rec.current;
      std::uint64_t node = 0;
      for (int i = 1; i < 3; ++i)
        for (int k = 1; k < 3; ++k) {
          const StateVector s =
              apply_exp_generator(apply_exp_generator(state, g1, nodes[i]), g2, nodes[k]);
          grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
              screener.measure(s, {iter, kPairItem, node++});
        }
      const LandscapeModel2D m2 = solve_landscape_2d(grid);
      Extremum2D ext = minimize_2d(m2);
      if (ext.value > first.predicted) ext = {first.theta, 0.0, first.predicted};
      ansatz.append(g1, ext.theta1);
      rec.selected.push_back(step_of(g1, ansatz.steps().back().angle));
      ansatz.append(g2, ext.theta2);
      rec.selected.push_back(step_of(g2, ansatz.steps().back().angle));
      rec.predicted = ext.value;
      rec.appended = true;
    }
    if (rec.appended) state = ansatz.prepare();
    rec.exact = expectation(state, h);
    rec.fidelity = fidelity_to(opt, state);
    rec.accounting = backend.accounting();
    rec.accounting_delta = minus(rec.accounting, before);
    tr.iterations.push_back(std::move(rec));
    if (!stop.empty()) {
      tr.status = stop;
      break;
    }
  }
  tr.final_ansatz = ansatz;
  tr.final_exact = expectation(state, h);
  tr.final_fidelity = fidelity_to(opt, state);
  tr.accounting = backend.accounting();
  return tr;
}

// --------------------------------------------------------------- serializing

nlohmann::ordered_json to_json(const RunTrace& t) {
  using json = nlohmann::ordered_json;
  json j;
  j["driver"] = t.driver;
  j["status"] = t.status;
  j["objective"] = t.objective;
  j["config"] = t.config;
  j["measurement"] = {{"backend", t.backend_mode},
                      {"shots", t.shots},
                      {"seed", t.seed},
                      {"shots_allocation", "per_group"},
                      {"plan", t.plan_kind},
                      {"plan_groups", t.plan_groups}};
  j["initial"] = {{"exact", t.initial_exact}};
  if (t.initial_fidelity) j["initial"]["fidelity"] = *t.initial_fidelity;
  json iters = json::array();
  for (const auto& r : t.iterations) {
    json it;
    it["iteration"] = r.iteration;
    it["appended"] = r.appended;
    json sel = json::array();
    for (const auto& s : r.selected)
      sel.push_back({{"id", s.id}, {"label", s.label}, {"angle", s.angle}, {"textbook_angle", s.textbook_angle}});
    it["selected"] = sel;
    it["current"] = r.current;
    it["predicted"] = r.predicted;
    it["exact"] = r.exact;
    if (r.fidelity) it["fidelity"] = *r.fidelity;
    if (t.driver == "adapt") it["sweeps"] = r.sweeps;
    json rows = json::array();
    for (const auto& e : r.screening)
      rows.push_back({{"id", e.id},
                      {"label", e.label},
                      {"theta", e.theta},
                      {"predicted", e.predicted},
                      {"gain", e.gain},
                      {"model", model_json(e.model)}});
    it["screening"] = rows;
    it["accounting"] = accounting_json(r.accounting);
    it["accounting_delta"] = accounting_json(r.accounting_delta);
    iters.push_back(std::move(it));
  }
  j["iterations"] = iters;
  j["final"] = {{"exact", t.final_exact}, {"n_operators", t.n_operators()}};
  if (t.final_fidelity) j["final"]["fidelity"] = *t.final_fidelity;
  j["final"]["ansatz"] = format_ansatz(t.final_ansatz);
  j["accounting"] = accounting_json(t.accounting);
  return j;
}

std::string convergence_csv(const RunTrace& t) {
  std::string out = "iteration,n_operators,exact,predicted,fidelity,circuits,shots\n";
  out += "0,0," + fmt(t.initial_exact) + "," + fmt(t.initial_exact) + "," +
         (t.initial_fidelity ? fmt(*t.initial_fidelity) : "") + ",0,0\n";
  std::size_t n_ops = 0;
  for (const auto& r : t.iterations) {
    n_ops += r.selected.size();
    out += std::to_string(r.iteration) + "," + std::to_string(n_ops) + "," + fmt(r.exact) + "," +
           fmt(r.predicted) + "," + (r.fidelity ? fmt(*r.fidelity) : "") + "," +
           std::to_string(r.accounting.circuits) + "," + std::to_string(r.accounting.shots) + "\n";
  }
  return out;
}

}  // namespace ggavqe
