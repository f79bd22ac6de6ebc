#include "ggavqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ggavqe {

namespace {

constexpr cplx kIPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void check_qubits(int n) {
  if (n <= 0 || n > kMaxPauliQubits)
    throw std::invalid_argument("n_qubits must be in [1, 64], got " + std::to_string(n));
}

void check_same(int a, int b, const char* what) {
  if (a != b)
    throw SizeMismatch(std::string(what) + ": register sizes differ (" + std::to_string(a) +
                       " vs " + std::to_string(b) + ")");
}

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

bool parse_double(std::string_view tok, double& out) {
  // from_chars for double is available in libstdc++ 11.
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Parses "X12" into (letter, index); returns false on malformed tokens.
bool parse_factor(std::string_view tok, char& letter, int& qubit) {
  if (tok.size() < 2) return false;
  letter = tok[0];
  if (letter != 'X' && letter != 'Y' && letter != 'Z') return false;
  auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), qubit);
  return ec == std::errc() && ptr == tok.data() + tok.size() && qubit >= 0;
}

}  // namespace

// ---------------------------------------------------------------- PauliString

PauliString::PauliString(int n_qubits, std::uint64_t x, std::uint64_t z)
    : n_(n_qubits), x_(x), z_(z) {
  check_qubits(n_qubits);
  const std::uint64_t valid = n_qubits == 64 ? ~std::uint64_t{0} : bit(n_qubits) - 1;
  if ((x & ~valid) || (z & ~valid))
    throw std::invalid_argument("Pauli masks exceed register of " + std::to_string(n_qubits) +
                                " qubits");
}

PauliString PauliString::single(int n_qubits, char letter, int qubit) {
  check_qubits(n_qubits);
  if (qubit < 0 || qubit >= n_qubits)
    throw std::out_of_range("qubit " + std::to_string(qubit) + " outside register");
  switch (letter) {
    case 'I': return PauliString(n_qubits);
    case 'X': return PauliString(n_qubits, bit(qubit), 0);
    case 'Y': return PauliString(n_qubits, bit(qubit), bit(qubit));
    case 'Z': return PauliString(n_qubits, 0, bit(qubit));
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
}

PauliString PauliString::parse(int n_qubits, std::string_view text) {
  check_qubits(n_qubits);
  std::uint64_t x = 0, z = 0, seen = 0;
  for (auto tok : split_ws(text)) {
    if (tok == "I") continue;
    char letter = 0;
    int q = -1;
    if (!parse_factor(tok, letter, q))
      throw std::invalid_argument("bad Pauli factor '" + std::string(tok) + "'");
    if (q >= n_qubits)
      throw std::out_of_range("qubit index " + std::to_string(q) + " outside register of " +
                              std::to_string(n_qubits));
    if (seen & bit(q))
      throw std::invalid_argument("qubit " + std::to_string(q) + " repeated in Pauli word");
    seen |= bit(q);
    if (letter != 'Z') x |= bit(q);
    if (letter != 'X') z |= bit(q);
  }
  return PauliString(n_qubits, x, z);
}

char PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("qubit outside register");
  const bool xb = x_ & bit(qubit), zb = z_ & bit(qubit);
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }
int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

std::string PauliString::label() const {
  std::string out;
  for (int q = 0; q < n_; ++q) {
    const char c = letter(q);
    if (c == 'I') continue;
    if (!out.empty()) out += ' ';
    out += c;
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  check_same(a.n_qubits(), b.n_qubits(), "multiply");
  const std::uint64_t xc = a.x_mask() ^ b.x_mask();
  const std::uint64_t zc = a.z_mask() ^ b.z_mask();
  // a b = i^{|xa&za|+|xb&zb|} X^xa Z^za X^xb Z^zb and Z^za X^xb = (-1)^{|za&xb|} X^xb Z^za.
  int power = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) -
              std::popcount(xc & zc) + 2 * std::popcount(a.z_mask() & b.x_mask());
  power = ((power % 4) + 4) % 4;
  return {kIPowers[power], PauliString(a.n_qubits(), xc, zc)};
}

bool commutes(const PauliString& a, const PauliString& b) {
  check_same(a.n_qubits(), b.n_qubits(), "commutes");
  const int sym = std::popcount(a.x_mask() & b.z_mask()) + std::popcount(a.z_mask() & b.x_mask());
  return sym % 2 == 0;
}

bool qubitwise_commutes(const PauliString& a, const PauliString& b) {
  check_same(a.n_qubits(), b.n_qubits(), "qubitwise_commutes");
  const std::uint64_t both = (a.x_mask() | a.z_mask()) & (b.x_mask() | b.z_mask());
  return ((a.x_mask() ^ b.x_mask()) & both) == 0 && ((a.z_mask() ^ b.z_mask()) & both) == 0;
}

// ------------------------------------------------------------------- PauliSum

PauliSum::PauliSum(const PauliString& s, cplx coeff) : n_(s.n_qubits()) { add(s, coeff); }

PauliSum PauliSum::identity(int n_qubits, cplx coeff) {
  return PauliSum(PauliString(n_qubits), coeff);
}

cplx PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? cplx{} : it->second;
}

PauliSum& PauliSum::add(const PauliString& s, cplx coeff) {
  if (n_ == 0) n_ = s.n_qubits();
  check_same(n_, s.n_qubits(), "PauliSum::add");
  auto [it, inserted] = terms_.try_emplace(s, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < kDefaultDropTolerance) terms_.erase(it);
  return *this;
}

PauliSum& PauliSum::simplify(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
  return *this;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

PauliSum PauliSum::real_part() const {
  PauliSum out(n_);
  for (const auto& [s, c] : terms_) out.add(s, c.real());
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [s, c] : terms_) out.terms_.emplace(s, std::conj(c));
  return out;
}

double PauliSum::one_norm() const {
  double acc = 0.0;
  for (const auto& [s, c] : terms_) acc += std::abs(c);
  return acc;
}

std::vector<PauliString> PauliSum::strings() const {
  std::vector<PauliString> out;
  out.reserve(terms_.size());
  for (const auto& [s, c] : terms_) out.push_back(s);
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  if (n_ == 0) n_ = o.n_;
  if (o.n_ != 0) check_same(n_, o.n_, "PauliSum +");
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& o) {
  if (n_ == 0) n_ = o.n_;
  if (o.n_ != 0) check_same(n_, o.n_, "PauliSum -");
  for (const auto& [s, c] : o.terms_) add(s, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx c) {
  for (auto& [s, v] : terms_) v *= c;
  return simplify();
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  check_same(a.n_, b.n_, "PauliSum *");
  PauliSum out(a.n_);
  for (const auto& [sa, ca] : a.terms_)
    for (const auto& [sb, cb] : b.terms_) {
      auto [phase, prod] = multiply(sa, sb);
      auto [it, inserted] = out.terms_.try_emplace(prod, phase * ca * cb);
      if (!inserted) it->second += phase * ca * cb;
    }
  return out.simplify();
}

bool operator==(const PauliSum& a, const PauliSum& b) {
  return a.n_ == b.n_ && a.terms_ == b.terms_;
}

bool PauliSum::approx_equal(const PauliSum& o, double tol) const {
  if (n_ != o.n_) return false;
  PauliSum diff = *this - o;
  for (const auto& [s, c] : diff.terms_)
    if (std::abs(c) > tol) return false;
  return true;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  check_same(a.n_qubits(), b.n_qubits(), "commutator");
  PauliSum out(a.n_qubits());
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      if (commutes(sa, sb)) continue;
      auto [phase, prod] = multiply(sa, sb);
      out.add(prod, 2.0 * phase * ca * cb);
    }
  return out.simplify();
}

PauliSum anticommutator(const PauliSum& a, const PauliSum& b) {
  check_same(a.n_qubits(), b.n_qubits(), "anticommutator");
  PauliSum out(a.n_qubits());
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      if (!commutes(sa, sb)) continue;
      auto [phase, prod] = multiply(sa, sb);
      out.add(prod, 2.0 * phase * ca * cb);
    }
  return out.simplify();
}

PauliSum conjugate_by(const PauliSum& h, const PauliSum& b) {
  check_same(h.n_qubits(), b.n_qubits(), "conjugate_by");
  if (b.size() == 1) {
    // Single string: P h P flips the sign of every anticommuting term.
    const auto& [p, c] = *b.terms().begin();
    const cplx scale = c * c;
    PauliSum out(h.n_qubits());
    for (const auto& [s, v] : h.terms()) out.add(s, (commutes(p, s) ? 1.0 : -1.0) * scale * v);
    return out.simplify();
  }
  return b * h * b;
}

// -------------------------------------------------------------- text format

std::string format_pauli_sum(const PauliSum& p) {
  std::ostringstream os;
  os << "# n_qubits " << p.n_qubits() << "\n";
  for (const auto& [s, c] : p.terms()) {
    os << format_double(c.real());
    if (c.imag() != 0.0) os << ' ' << format_double(c.imag());
    os << ' ' << s.label() << '\n';
  }
  return os.str();
}

PauliSum parse_pauli_sum(std::string_view text, int n_qubits) {
  struct Raw {
    cplx coeff;
    std::vector<std::pair<char, int>> factors;
  };
  std::vector<Raw> raw;
  int declared = 0;
  int max_index = -1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (toks[0].front() == '#') {
      if (toks.size() == 3 && toks[0] == "#" && toks[1] == "n_qubits") {
        int v = 0;
        auto [ptr, ec] = std::from_chars(toks[2].data(), toks[2].data() + toks[2].size(), v);
        if (ec != std::errc() || v <= 0) throw ParseError("bad n_qubits directive", line_no);
        declared = v;
      }
      if (end == text.size()) break;
      continue;
    }
    Raw r;
    double re = 0.0, im = 0.0;
    if (!parse_double(toks[0], re)) throw ParseError("expected coefficient, got '" + std::string(toks[0]) + "'", line_no);
    std::size_t k = 1;
    if (k < toks.size() && parse_double(toks[k], im)) ++k;
    r.coeff = {re, im};
    if (k == toks.size()) throw ParseError("term has no Pauli word (use 'I' for identity)", line_no);
    std::uint64_t seen = 0;
    for (; k < toks.size(); ++k) {
      if (toks[k] == "I") continue;
      char letter = 0;
      int q = -1;
      if (!parse_factor(toks[k], letter, q) || q >= kMaxPauliQubits)
        throw ParseError("bad Pauli factor '" + std::string(toks[k]) + "'", line_no);
      if (seen & bit(q)) throw ParseError("qubit " + std::to_string(q) + " repeated", line_no);
      seen |= bit(q);
      r.factors.emplace_back(letter, q);
      max_index = std::max(max_index, q);
    }
    raw.push_back(std::move(r));
    if (end == text.size()) break;
  }
  int n = n_qubits > 0 ? n_qubits : (declared > 0 ? declared : max_index + 1);
  if (n <= 0) n = 1;
  if (max_index >= n)
    throw ParseError("qubit index " + std::to_string(max_index) + " exceeds register of " +
                         std::to_string(n), 0);
  PauliSum out(n);
  for (const auto& r : raw) {
    std::uint64_t x = 0, z = 0;
    for (auto [letter, q] : r.factors) {
      if (letter != 'Z') x |= bit(q);
      if (letter != 'X') z |= bit(q);
    }
    out.add(PauliString(n, x, z), r.coeff);
  }
  return out.simplify();
}

std::ostream& operator<<(std::ostream& os, const PauliString& s) { return os << s.label(); }

std::ostream& operator<<(std::ostream& os, const PauliSum& p) {
  bool first = true;
  for (const auto& [s, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i) " << s.label();
  }
  if (first) os << '0';
  return os;
}

}  // namespace ggavqe
