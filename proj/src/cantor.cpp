#include "treecs/cantor.hpp"

#include <algorithm>
#include <array>
#include <span>

#include "treecs/error.hpp"

namespace treecs {

BinWord BinWord::parse(std::string_view bits) {
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("binary word '" + std::string(bits) + "' has a non-bit character");
  }
  return BinWord(std::string(bits));
}

BinWord BinWord::appended(int bit) const {
  BinWord out = *this;
  out.push_back(bit);
  return out;
}

bool BinWord::is_prefix_of(const BinWord& other) const {
  return bits_.size() <= other.bits_.size() && other.bits_.compare(0, bits_.size(), bits_) == 0;
}

bool BinWord::is_strict_prefix_of(const BinWord& other) const {
  return bits_.size() < other.bits_.size() && is_prefix_of(other);
}

CantorPoint::CantorPoint(BinWord prefix, int tail) : prefix_(std::move(prefix)), tail_(tail ? 1 : 0) {
  if (tail != 0 && tail != 1) throw DomainError("tail bit must be 0 or 1");
  // Strip trailing copies of the tail bit.
  std::string bits = prefix_.bits();
  const char t = tail_ ? '1' : '0';
  while (!bits.empty() && bits.back() == t) bits.pop_back();
  prefix_ = BinWord::parse(bits);
}

bool CantorPoint::in_cylinder(const BinWord& w) const {
  for (std::size_t k = 0; k < w.length(); ++k) {
    if (w[k] != bit(k)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

StepFunction StepFunction::indicator(const BinWord& w, const Rational& c) {
  StepFunction f;
  f.add_term(w, c);
  return f;
}

void StepFunction::add_term(const BinWord& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

StepFunction& StepFunction::operator+=(const StepFunction& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

StepFunction& StepFunction::operator-=(const StepFunction& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

StepFunction& StepFunction::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= k;
  return *this;
}

// ---------------------------------------------------------------------------

namespace {

struct Entry {
  const BinWord* word;
  const Rational* coeff;
  int source;
};

std::vector<Entry> merged_entries(const StepFunction& f, const StepFunction* g) {
  std::vector<Entry> out;
  for (const auto& [w, c] : f.terms()) out.push_back({&w, &c, 0});
  if (g != nullptr) {
    for (const auto& [w, c] : g->terms()) out.push_back({&w, &c, 1});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return *a.word < *b.word; });
  }
  return out;
}

// Walks the trie of all words below `cur`; `acc` holds the value each function
// takes on [cur] from words that are prefixes of cur. Sibling cells with equal
// results are merged back into their parent.
template <class Op>
void walk(const BinWord& cur, std::span<const Entry> es, std::array<Rational, 2> acc, Op& op,
          std::vector<Atom>& out) {
  std::size_t i = 0;
  while (i < es.size() && es[i].word->length() == cur.length()) {
    acc[static_cast<std::size_t>(es[i].source)] += *es[i].coeff;
    ++i;
  }
  es = es.subspan(i);
  if (es.empty()) {
    out.push_back({cur, op(acc[0], acc[1])});
    return;
  }
  const std::size_t depth = cur.length();
  const auto mid = std::partition_point(es.begin(), es.end(),
                                        [depth](const Entry& e) { return (*e.word)[depth] == 0; });
  const auto split = static_cast<std::size_t>(mid - es.begin());
  const std::size_t before = out.size();
  walk(cur.appended(0), es.first(split), acc, op, out);
  walk(cur.appended(1), es.subspan(split), acc, op, out);
  if (out.size() == before + 2 && out[before].value == out[before + 1].value) {
    Rational v = out[before].value;
    out.resize(before);
    out.push_back({cur, std::move(v)});
  }
}

template <class Op>
std::vector<Atom> combine(const StepFunction& f, const StepFunction* g, Op op) {
  const auto entries = merged_entries(f, g);
  std::vector<Atom> out;
  walk(BinWord{}, std::span<const Entry>(entries), {Rational(0), Rational(0)}, op, out);
  return out;
}

StepFunction from_atoms(const std::vector<Atom>& cells) {
  StepFunction f;
  for (const Atom& a : cells) f.add_term(a.word, a.value);
  return f;
}

}  // namespace

std::vector<Atom> atoms(const StepFunction& f) {
  return combine(f, nullptr, [](const Rational& x, const Rational&) { return x; });
}

StepFunction canonical(const StepFunction& f) { return from_atoms(atoms(f)); }

bool same_function(const StepFunction& f, const StepFunction& g) { return atoms(f) == atoms(g); }

BinWord q_encode(const Node& s) {
  BinWord w;
  for (std::uint64_t e : s.entries()) {
    for (std::uint64_t k = 0; k < e; ++k) w.push_back(1);
    w.push_back(0);
  }
  return w;
}

CantorPoint r_encode(const Node& s) { return CantorPoint(q_encode(s), 1); }

Rational cantor_metric(const CantorPoint& x, const CantorPoint& y) {
  const std::size_t n = std::max(x.prefix().length(), y.prefix().length());
  std::size_t k = 0;
  while (k < n && x.bit(k) == y.bit(k)) ++k;
  if (k == n && x.tail() == y.tail()) return Rational(0);
  mpz_class denom(1);
  denom <<= static_cast<mp_bitcnt_t>(k);
  return Rational(mpz_class(1), denom);
}

Rational step_eval(const StepFunction& f, const CantorPoint& x) {
  Rational sum(0);
  for (const auto& [w, c] : f.terms()) {
    if (x.in_cylinder(w)) sum += c;
  }
  return sum;
}

Rational step_sup_norm(const StepFunction& f) {
  Rational best(0);
  for (const Atom& a : atoms(f)) best = max_of(best, abs_value(a.value));
  return best;
}

StepFunction step_pos_part(const StepFunction& f) {
  return from_atoms(combine(f, nullptr, [](const Rational& x, const Rational&) { return positive_part(x); }));
}

StepFunction step_lattice_sup(const StepFunction& f, const StepFunction& g) {
  return from_atoms(combine(f, &g, [](const Rational& x, const Rational& y) { return max_of(x, y); }));
}

bool step_leq(const StepFunction& f, const StepFunction& g) {
  const auto cells = combine(f, &g, [](const Rational& x, const Rational& y) { return Rational(y - x); });
  return std::all_of(cells.begin(), cells.end(), [](const Atom& a) { return a.value >= 0; });
}

StepFunction embed(const Element& a) {
  if (!a.schema().is_full() || a.order() != 1) {
    throw DomainError("Cantor embedding needs the full tree with order 1, got " + a.schema().to_string() +
                      "^" + std::to_string(a.order()));
  }
  StepFunction f;
  for (const auto& [s, c] : a.copy_coeffs(1)) f.add_term(q_encode(s), c);
  return f;
}

namespace {

bool proper_prefix_of_some(const StepFunction::Terms& cells, const BinWord& u) {
  auto it = cells.lower_bound(u);
  if (it != cells.end() && it->first == u) ++it;
  return it != cells.end() && u.is_strict_prefix_of(it->first);
}

void collect(const StepFunction& f, const StepFunction::Terms& cells, const Node& p,
             const Rational& value_at_p, Element& out) {
  BinWord u = q_encode(p);
  for (std::uint64_t k = 0; proper_prefix_of_some(cells, u); ++k) {
    const Node s = p.child(k);
    const Rational value_at_s = step_eval(f, r_encode(s));
    out.set(s, 1, value_at_s - value_at_p);
    collect(f, cells, s, value_at_s, out);
    u.push_back(1);
  }
}

}  // namespace

Element inverse_embed(const StepFunction& f) {
  const StepFunction cells = canonical(f);
  Element out(TreeSchema::full(), 1);
  const Rational root_value = step_eval(cells, r_encode(Node::root()));
  out.set(Node::root(), 1, root_value);
  collect(cells, cells.terms(), Node::root(), root_value, out);
  return out;
}

DualityValues duality_check(const Node& s, const Node& t) {
  const Element chi = Element::chi(TreeSchema::full(), 1, t);
  return {delta_eval(chi, s), step_eval(embed(chi), r_encode(s))};
}

bool cylinders_disjoint(const BinWord& u, const BinWord& v) {
  return !u.is_prefix_of(v) && !v.is_prefix_of(u);
}

}  // namespace treecs
