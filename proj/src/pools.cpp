#include "ggavqe/pools.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ggavqe/hamiltonians.hpp"

namespace ggavqe {

namespace {

// Product of single-qubit letters on distinct qubits; the phase is always +1.
PauliString word(int n, std::initializer_list<std::pair<char, int>> letters) {
  PauliString s(n);
  for (auto [c, q] : letters) s = multiply(s, PauliString::single(n, c, q)).product;
  return s;
}

std::string idx_label(const char* name, std::initializer_list<int> idx) {
  std::string out = std::string(name) + "(";
  bool first = true;
  for (int i : idx) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + ")";
}

struct Pairing {
  int p, q, r, s;
};

// p<q, r<s, (p,q)<(r,s), all distinct.
std::vector<Pairing> pairings(int n) {
  std::vector<Pairing> out;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      for (int r = p + 1; r < n; ++r)
        for (int s = r + 1; s < n; ++s)
          if (r != q && s != q) out.push_back({p, q, r, s});
  return out;
}

PauliSum qeb_single(int n, int p, int q) {
  PauliSum b(n);
  b.add(word(n, {{'X', q}, {'Y', p}}), 0.5);
  b.add(word(n, {{'Y', q}, {'X', p}}), -0.5);
  return b;
}

PauliSum qeb_double(int n, const Pairing& t) {
  const auto [p, q, r, s] = t;
  struct Term {
    char r, s, p, q;
    double sign;
  };
  static constexpr Term terms[] = {
      {'X', 'Y', 'X', 'X', +1}, {'Y', 'X', 'X', 'X', +1}, {'Y', 'Y', 'Y', 'X', +1},
      {'Y', 'Y', 'X', 'Y', +1}, {'X', 'X', 'Y', 'X', -1}, {'X', 'X', 'X', 'Y', -1},
      {'Y', 'X', 'Y', 'Y', -1}, {'X', 'Y', 'Y', 'Y', -1},
  };
  PauliSum b(n);
  for (const auto& k : terms) b.add(word(n, {{k.r, r}, {k.s, s}, {k.p, p}, {k.q, q}}), k.sign / 8.0);
  return b;
}

void need_qubits(int n, int min, const char* pool) {
  if (n < min)
    throw std::invalid_argument(std::string(pool) + " pool needs at least " + std::to_string(min) +
                                " qubits, got " + std::to_string(n));
}

void renumber(Pool& pool) {
  for (std::size_t i = 0; i < pool.generators.size(); ++i)
    pool.generators[i] = pool.generators[i].with_id(static_cast<int>(i));
}

bool parse_int(std::string_view t, int& out) {
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

}  // namespace

Pool qeb_pool(int n, const QebFilter& filter) {
  need_qubits(n, 2, "QEB");
  Pool pool;
  pool.kind = PoolKind::Qeb;
  pool.spec = "qeb";
  if (filter.n_occupied || filter.conserve_spin) {
    pool.spec += ":";
    if (filter.n_occupied) pool.spec += "nocc=" + std::to_string(*filter.n_occupied);
    if (filter.conserve_spin) pool.spec += filter.n_occupied ? ",spin" : "spin";
  }
  auto occ = [&](int k) { return filter.n_occupied && k < *filter.n_occupied; };
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (filter.n_occupied && occ(p) == occ(q)) continue;
      if (filter.conserve_spin && p % 2 != q % 2) continue;
      pool.generators.emplace_back(0, idx_label("A", {p, q}), qeb_single(n, p, q),
                                   AlgebraicClass::Tripotent);
    }
  for (const auto& t : pairings(n)) {
    if (filter.n_occupied && !(occ(t.p) && occ(t.q) && !occ(t.r) && !occ(t.s))) continue;
    if (filter.conserve_spin && (t.p % 2 + t.q % 2) != (t.r % 2 + t.s % 2)) continue;
    pool.generators.emplace_back(0, idx_label("A", {t.p, t.q, t.r, t.s}), qeb_double(n, t),
                                 AlgebraicClass::Tripotent);
  }
  renumber(pool);
  return pool;
}

Pool qubit_hardware_efficient_pool(int n) {
  need_qubits(n, 2, "qubit hardware-efficient");
  Pool pool;
  pool.kind = PoolKind::QubitHardwareEfficient;
  pool.spec = "hwe";
  auto add = [&](PauliString s, double scale) {
    pool.generators.emplace_back(0, s.label(), PauliSum(s), AlgebraicClass::Involutory, scale);
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      add(word(n, {{'X', b}, {'Y', a}}), 0.5);
      add(word(n, {{'X', a}, {'Y', b}}), 0.5);
    }
  // One representative per global-rotation class: X^(1), X^(3), X^(5).
  // Different pairings of the same four qubits can give the same string;
  // only the first copy is kept.
  std::set<PauliString, PauliOrder> seen;
  auto add_once = [&](PauliString s) {
    if (seen.insert(s).second) add(s, 0.125);
  };
  for (const auto& [p, q, r, s] : pairings(n)) {
    add_once(word(n, {{'X', r}, {'Y', s}, {'X', p}, {'X', q}}));
    add_once(word(n, {{'Y', r}, {'Y', s}, {'Y', p}, {'X', q}}));
    add_once(word(n, {{'X', r}, {'X', s}, {'Y', p}, {'X', q}}));
  }
  renumber(pool);
  return pool;
}

Pool minimal_hardware_efficient_pool(int n) {
  need_qubits(n, 2, "minimal hardware-efficient");
  Pool pool;
  pool.kind = PoolKind::MinimalHardwareEfficient;
  pool.spec = "minimal";
  for (int p = 0; p + 1 < n; ++p) {
    const auto s = PauliString::single(n, 'Y', p);
    pool.generators.emplace_back(0, s.label(), PauliSum(s), AlgebraicClass::Involutory);
  }
  for (int p = 0; p + 1 < n; ++p) {
    const auto s = word(n, {{'Z', p}, {'Y', p + 1}});
    pool.generators.emplace_back(0, s.label(), PauliSum(s), AlgebraicClass::Involutory);
  }
  renumber(pool);
  return pool;
}

Pool pair_pool(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("pair pool needs at least one pair");
  Pool pool;
  pool.kind = PoolKind::Custom;
  pool.spec = "pairs:";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw std::invalid_argument("pair (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") is not a pair of distinct qubits in a " + std::to_string(n) +
                                  "-qubit register");
    pool.spec += (i ? "," : "") + std::to_string(a) + "-" + std::to_string(b);
    pool.generators.emplace_back(0, idx_label("P", {a, b}), PauliSum(word(n, {{'X', a}, {'Y', b}})),
                                 AlgebraicClass::Involutory, 0.5);
  }
  renumber(pool);
  return pool;
}

const std::vector<std::pair<int, int>>& hf_toy_pairs() {
  static const std::vector<std::pair<int, int>> p{{4, 0}, {8, 0}, {5, 1}, {9, 1},
                                                  {5, 0}, {7, 0}, {7, 1}};
  return p;
}

Pool parse_custom_pool(std::string_view text, int n_qubits) {
  struct Block {
    std::string label;
    std::string cls = "auto";
    double scale = 1.0;
    std::string body;
    int line = 0;
  };
  std::vector<Block> blocks;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "generator") {
      Block b;
      b.line = line_no;
      if (!(ls >> b.label)) throw ParseError("generator needs a label", line_no);
      std::string tok;
      while (ls >> tok) {
        if (tok == "involutory" || tok == "tripotent" || tok == "auto") {
          b.cls = tok;
        } else if (tok == "scale") {
          if (!(ls >> b.scale)) throw ParseError("scale needs a value", line_no);
        } else {
          throw ParseError("unexpected '" + tok + "' in generator header", line_no);
        }
      }
      blocks.push_back(std::move(b));
    } else if (head[0] == '#') {
      continue;
    } else {
      if (blocks.empty()) throw ParseError("Pauli term before the first 'generator' line", line_no);
      blocks.back().body += line + "\n";
    }
  }
  if (blocks.empty()) throw ParseError("custom pool file defines no generators", 0);
  Pool pool;
  pool.kind = PoolKind::Custom;
  for (const auto& b : blocks) {
    PauliSum body(n_qubits);
    try {
      body = parse_pauli_sum("# n_qubits " + std::to_string(n_qubits) + "\n" + b.body, n_qubits);
    } catch (const std::exception& e) {
      throw ParseError("generator '" + b.label + "': " + e.what(), b.line);
    }
    AlgebraicClass cls = AlgebraicClass::Involutory;
    if (b.cls == "tripotent") {
      cls = AlgebraicClass::Tripotent;
    } else if (b.cls == "auto") {
      if (Generator::verify_class(body, AlgebraicClass::Involutory)) cls = AlgebraicClass::Involutory;
      else if (Generator::verify_class(body, AlgebraicClass::Tripotent)) cls = AlgebraicClass::Tripotent;
      else throw ParseError("generator '" + b.label + "' is neither involutory nor tripotent", b.line);
    }
    try {
      pool.generators.emplace_back(0, b.label, body, cls, b.scale);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), b.line);
    }
  }
  renumber(pool);
  return pool;
}

Pool load_custom_pool(const std::filesystem::path& path, int n_qubits) {
  Pool pool = parse_custom_pool(read_text_file(path), n_qubits);
  pool.spec = "custom:" + path.string();
  return pool;
}

Pool pool_from_spec(const std::string& spec, int n_qubits) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto no_args = [&] {
    if (!args.empty()) throw std::invalid_argument("pool '" + name + "' takes no options");
  };
  if (name == "minimal" || name == "minimal_hardware_efficient") {
    no_args();
    return minimal_hardware_efficient_pool(n_qubits);
  }
  if (name == "hwe" || name == "qubit_hardware_efficient") {
    no_args();
    return qubit_hardware_efficient_pool(n_qubits);
  }
  if (name == "qeb") {
    QebFilter f;
    std::istringstream as(args);
    std::string opt;
    while (std::getline(as, opt, ',')) {
      int k = 0;
      if (opt == "spin") f.conserve_spin = true;
      else if (opt.rfind("nocc=", 0) == 0 && parse_int(std::string_view(opt).substr(5), k) && k >= 0)
        f.n_occupied = k;
      else if (!opt.empty())
        throw std::invalid_argument("unknown qeb option '" + opt + "'");
    }
    return qeb_pool(n_qubits, f);
  }
  if (name == "hf_pairs") {
    no_args();
    Pool p = pair_pool(n_qubits, hf_toy_pairs());
    p.spec = "hf_pairs";
    return p;
  }
  if (name == "pairs") {
    std::vector<std::pair<int, int>> pairs;
    std::istringstream as(args);
    std::string item;
    while (std::getline(as, item, ',')) {
      const auto dash = item.find('-');
      int a = 0, b = 0;
      if (dash == std::string::npos || !parse_int(std::string_view(item).substr(0, dash), a) ||
          !parse_int(std::string_view(item).substr(dash + 1), b))
        throw std::invalid_argument("pair '" + item + "' is not of the form <a>-<b>");
      pairs.emplace_back(a, b);
    }
    return pair_pool(n_qubits, pairs);
  }
  if (name == "custom") {
    if (args.empty()) throw std::invalid_argument("custom pool needs a path: custom:<file>");
    return load_custom_pool(args, n_qubits);
  }
  throw std::invalid_argument("unknown pool '" + spec +
                              "' (expected minimal, qeb, hwe, pairs:..., hf_pairs or custom:<file>)");
}

}  // namespace ggavqe
