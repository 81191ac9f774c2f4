#include "treecs/treespace.hpp"

#include <algorithm>

#include "treecs/error.hpp"

namespace treecs {

Element::Element(TreeSchema schema, unsigned order) : schema_(std::move(schema)) {
  if (order == 0) throw DomainError("element order must be at least 1");
  copies_.resize(order);
}

Element Element::chi(const TreeSchema& schema, unsigned order, const Node& s, unsigned copy) {
  Element e(schema, order);
  e.set(s, copy, Rational(1));
  return e;
}

void Element::check_slot(const Node& s, unsigned copy) const {
  if (copy < 1 || copy > copies_.size()) {
    throw DomainError("copy index " + std::to_string(copy) + " outside 1.." +
                      std::to_string(copies_.size()));
  }
  if (!schema_.contains(s)) {
    throw DomainError("node " + s.to_string() + " lies outside " + schema_.to_string());
  }
}

Rational Element::coefficient(const Node& s, unsigned copy) const {
  if (copy < 1 || copy > copies_.size()) return Rational(0);
  const auto& m = copies_[copy - 1];
  auto it = m.find(s);
  return it == m.end() ? Rational(0) : it->second;
}

void Element::set(const Node& s, unsigned copy, const Rational& value) {
  check_slot(s, copy);
  auto& m = copies_[copy - 1];
  if (value == 0) {
    m.erase(s);
  } else {
    m[s] = value;
  }
}

void Element::add_to(const Node& s, unsigned copy, const Rational& value) {
  if (value == 0) return;
  check_slot(s, copy);
  auto& m = copies_[copy - 1];
  auto [it, inserted] = m.try_emplace(s, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) m.erase(it);
  }
}

const Element::CopyCoeffs& Element::copy_coeffs(unsigned copy) const {
  if (copy < 1 || copy > copies_.size()) throw DomainError("copy index out of range");
  return copies_[copy - 1];
}

bool Element::is_zero() const {
  return std::all_of(copies_.begin(), copies_.end(), [](const auto& m) { return m.empty(); });
}

std::size_t Element::support_size() const {
  std::size_t n = 0;
  for (const auto& m : copies_) n += m.size();
  return n;
}

std::size_t Element::support_depth() const {
  std::size_t d = 0;
  for (const auto& m : copies_) {
    for (const auto& [s, v] : m) d = std::max(d, s.length());
  }
  return d;
}

void Element::require_compatible(const Element& other) const {
  if (!(schema_ == other.schema_) || copies_.size() != other.copies_.size()) {
    throw DomainError("elements live on different spaces: " + schema_.to_string() + "^" +
                      std::to_string(copies_.size()) + " vs " + other.schema_.to_string() + "^" +
                      std::to_string(other.copies_.size()));
  }
}

Element& Element::operator+=(const Element& other) {
  require_compatible(other);
  for (unsigned i = 1; i <= order(); ++i) {
    for (const auto& [s, v] : other.copies_[i - 1]) add_to(s, i, v);
  }
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_compatible(other);
  for (unsigned i = 1; i <= order(); ++i) {
    for (const auto& [s, v] : other.copies_[i - 1]) add_to(s, i, -v);
  }
  return *this;
}

Element& Element::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    for (auto& m : copies_) m.clear();
    return *this;
  }
  for (auto& m : copies_) {
    for (auto& [s, v] : m) v *= scalar;
  }
  return *this;
}

Element Element::operator-() const {
  Element out = *this;
  for (auto& m : out.copies_) {
    for (auto& [s, v] : m) v = -v;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::set<Node> closure_of(const Element::CopyCoeffs& coeffs) {
  std::set<Node> out{Node::root()};
  for (const auto& [s, v] : coeffs) {
    for (std::size_t k = 0; k <= s.length(); ++k) out.insert(s.prefix(k));
  }
  return out;
}

std::set<Node> closure_of(const Element::CopyCoeffs& a, const Element::CopyCoeffs& b) {
  std::set<Node> out = closure_of(a);
  for (const auto& [s, v] : b) {
    for (std::size_t k = 0; k <= s.length(); ++k) out.insert(s.prefix(k));
  }
  return out;
}

// Rebuilds coefficients from partial sums transformed by `f`:
//   c_t = f(S(t)) - f(S(pred t)),  c_root = f(S(root)).
template <class F>
void coefficients_from_sums(Element& out, unsigned copy, const std::map<Node, Rational>& sums,
                            F&& f) {
  for (const auto& [t, sum] : sums) {
    Rational c = f(sum);
    if (!t.is_root()) c -= f(sums.at(t.pred()));
    out.set(t, copy, c);
  }
}

}  // namespace

std::map<Node, Rational> partial_sums(const Element::CopyCoeffs& coeffs,
                                      const std::set<Node>& closure) {
  std::map<Node, Rational> sums;
  // std::set<Node> orders every prefix before its extensions.
  for (const Node& t : closure) {
    auto it = coeffs.find(t);
    Rational s = it == coeffs.end() ? Rational(0) : it->second;
    if (!t.is_root()) s += sums.at(t.pred());
    sums.emplace_hint(sums.end(), t, std::move(s));
  }
  return sums;
}

Rational delta_eval(const Element& a, const Node& s, unsigned copy) {
  if (copy < 1 || copy > a.order()) throw DomainError("copy index out of range");
  if (!a.schema().contains(s)) {
    throw DomainError("node " + s.to_string() + " lies outside " + a.schema().to_string());
  }
  Rational sum(0);
  for (std::size_t k = 0; k <= s.length(); ++k) sum += a.coefficient(s.prefix(k), copy);
  return sum;
}

Rational lambda_norm(const Element& a) {
  Rational best(0);
  for (unsigned i = 1; i <= a.order(); ++i) {
    const auto& coeffs = a.copy_coeffs(i);
    if (coeffs.empty()) continue;
    for (const auto& [t, s] : partial_sums(coeffs, closure_of(coeffs))) {
      if (abs_value(s) > best) best = abs_value(s);
    }
  }
  return best;
}

Rational pos_part_norm(const Element& a) {
  Rational best(0);
  for (unsigned i = 1; i <= a.order(); ++i) {
    const auto& coeffs = a.copy_coeffs(i);
    if (coeffs.empty()) continue;
    for (const auto& [t, s] : partial_sums(coeffs, closure_of(coeffs))) {
      if (s > best) best = s;
    }
  }
  return best;
}

bool leq(const Element& a, const Element& b) {
  a.require_compatible(b);
  for (unsigned i = 1; i <= a.order(); ++i) {
    const auto& ca = a.copy_coeffs(i);
    const auto& cb = b.copy_coeffs(i);
    // Past the joint closure partial sums repeat those of the deepest closure
    // ancestor, so the closure decides the order.
    const auto closure = closure_of(ca, cb);
    const auto sa = partial_sums(ca, closure);
    const auto sb = partial_sums(cb, closure);
    for (const Node& t : closure) {
      if (sa.at(t) > sb.at(t)) return false;
    }
  }
  return true;
}

namespace {

template <class Pick>
Element lattice_combine(const Element& a, const Element& b, Pick pick) {
  a.require_compatible(b);
  Element out(a.schema(), a.order());
  for (unsigned i = 1; i <= a.order(); ++i) {
    const auto& ca = a.copy_coeffs(i);
    const auto& cb = b.copy_coeffs(i);
    if (ca.empty() && cb.empty()) continue;
    const auto closure = closure_of(ca, cb);
    const auto sa = partial_sums(ca, closure);
    const auto sb = partial_sums(cb, closure);
    std::map<Node, Rational> joint;
    for (const Node& t : closure) joint.emplace_hint(joint.end(), t, pick(sa.at(t), sb.at(t)));
    coefficients_from_sums(out, i, joint, [](const Rational& x) { return x; });
  }
  return out;
}

template <class F>
Element transform_sums(const Element& a, F f) {
  Element out(a.schema(), a.order());
  for (unsigned i = 1; i <= a.order(); ++i) {
    const auto& ca = a.copy_coeffs(i);
    if (ca.empty()) continue;
    coefficients_from_sums(out, i, partial_sums(ca, closure_of(ca)), f);
  }
  return out;
}

}  // namespace

Element lattice_sup(const Element& a, const Element& b) {
  return lattice_combine(a, b, [](const Rational& x, const Rational& y) { return max_of(x, y); });
}

Element lattice_inf(const Element& a, const Element& b) {
  return lattice_combine(a, b, [](const Rational& x, const Rational& y) { return x < y ? x : y; });
}

Element pos_part(const Element& a) {
  return transform_sums(a, [](const Rational& x) { return positive_part(x); });
}

Element neg_part(const Element& a) {
  return transform_sums(a, [](const Rational& x) { return negative_part(x); });
}

Element abs_val(const Element& a) {
  return transform_sums(a, [](const Rational& x) { return abs_value(x); });
}

// ---------------------------------------------------------------------------

Region Region::trunk(const Trunk& t) { return Region(Kind::NodeSet, t.nodes(), Node{}, 0); }
Region Region::subtree(const Node& s) { return Region(Kind::Subtree, {}, s, 0); }
Region Region::levels_at_least(std::size_t n) { return Region(Kind::LevelsAtLeast, {}, Node{}, n); }
Region Region::nodes(std::set<Node> set) { return Region(Kind::NodeSet, std::move(set), Node{}, 0); }

bool Region::contains(const Node& s) const {
  switch (kind_) {
    case Kind::NodeSet:
      return set_.contains(s);
    case Kind::Subtree:
      return root_.is_prefix_of(s);
    case Kind::LevelsAtLeast:
      return s.length() >= level_;
  }
  return false;
}

Element restrict(const Element& a, const Region& region,
                 const std::optional<std::set<unsigned>>& copies) {
  Element out(a.schema(), a.order());
  for (unsigned i = 1; i <= a.order(); ++i) {
    if (copies && !copies->contains(i)) continue;
    for (const auto& [s, v] : a.copy_coeffs(i)) {
      if (region.contains(s)) out.set(s, i, v);
    }
  }
  return out;
}

namespace {

// Norm of the restriction of one copy to the subtree rooted at u.
Rational subtree_norm(const Element::CopyCoeffs& coeffs, const Node& u) {
  Element::CopyCoeffs sub;
  for (auto it = coeffs.lower_bound(u); it != coeffs.end() && u.is_prefix_of(it->first); ++it) {
    sub.emplace_hint(sub.end(), it->first, it->second);
  }
  if (sub.empty()) return Rational(0);
  Rational best(0);
  for (const auto& [t, s] : partial_sums(sub, closure_of(sub))) {
    if (abs_value(s) > best) best = abs_value(s);
  }
  return best;
}

Rational deep_tail_norm(const Element::CopyCoeffs& coeffs, std::size_t n) {
  Element::CopyCoeffs tail;
  for (const auto& [s, v] : coeffs) {
    if (s.length() > n) tail.emplace(s, v);
  }
  if (tail.empty()) return Rational(0);
  Rational best(0);
  for (const auto& [t, s] : partial_sums(tail, closure_of(tail))) {
    if (abs_value(s) > best) best = abs_value(s);
  }
  return best;
}

}  // namespace

Trunk trunk_approx(const Element& a, const Rational& eps) {
  if (eps <= 0) throw DomainError("trunk approximation needs eps > 0");
  Trunk result;
  for (unsigned i = 1; i <= a.order(); ++i) {
    const auto& coeffs = a.copy_coeffs(i);
    if (coeffs.empty()) continue;

    std::size_t n = 1;
    while (!(deep_tail_norm(coeffs, n) < eps / 4)) ++n;
    const Rational threshold = eps / (4 * static_cast<long>(n));

    std::set<Node> frontier{Node::root()};
    for (std::size_t k = 1; k <= n && !frontier.empty(); ++k) {
      std::set<Node> next;
      for (const Node& t : frontier) {
        // Only children on the way to a support node can reach the threshold.
        std::set<Node> children;
        for (auto it = coeffs.lower_bound(t); it != coeffs.end() && t.is_prefix_of(it->first);
             ++it) {
          if (it->first.length() > t.length()) children.insert(it->first.prefix(t.length() + 1));
        }
        for (const Node& c : children) {
          if (!(subtree_norm(coeffs, c) < threshold)) next.insert(c);
        }
      }
      for (const Node& c : next) result.insert_with_ancestors(c);
      frontier = std::move(next);
    }
  }
  return result;
}

SeqIdentity seq_pos_sup_identity(std::span<const Rational> xs) {
  if (xs.empty()) throw DomainError("sequence must be nonempty");
  SeqIdentity out{Rational(0), Rational(0)};
  Rational running(0);
  for (const Rational& x : xs) {
    running += x;
    out.lhs = max_of(out.lhs, positive_part(running));
  }
  Rational tail_sup(0);
  running = 0;
  for (std::size_t n = 1; n < xs.size(); ++n) {
    running += xs[n];
    tail_sup = max_of(tail_sup, positive_part(running));
  }
  out.rhs = positive_part(xs[0] + tail_sup);
  return out;
}

}  // namespace treecs
