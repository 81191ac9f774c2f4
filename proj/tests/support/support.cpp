#include "support.hpp"

#include <set>

namespace treecs::testing {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

Rational random_rational(Rng& rng, std::int64_t max_num, std::int64_t max_den) {
  std::int64_t num = 0;
  while (num == 0) num = uniform(rng, -max_num, max_num);
  Rational q(static_cast<long>(num), static_cast<unsigned long>(uniform(rng, 1, max_den)));
  q.canonicalize();
  return q;
}

namespace {

Node random_node(Rng& rng, std::size_t max_depth, std::uint64_t max_entry) {
  const auto len = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(max_depth)));
  std::vector<std::uint64_t> e;
  for (std::size_t k = 0; k < len; ++k) e.push_back(static_cast<std::uint64_t>(uniform(rng, 0, static_cast<std::int64_t>(max_entry))));
  return Node(std::move(e));
}

}  // namespace

Element random_full_element(Rng& rng, std::size_t max_support, std::size_t max_depth, std::uint64_t max_entry,
                            std::int64_t max_num) {
  Element a(TreeSchema::full(), 1);
  const auto n = uniform(rng, 0, static_cast<std::int64_t>(max_support));
  for (std::int64_t k = 0; k < n; ++k) {
    a.set(random_node(rng, max_depth, max_entry), 1, random_rational(rng, max_num, 12));
  }
  return a;
}

StepFunction random_step_function(Rng& rng, std::size_t max_words, std::size_t max_len, std::int64_t max_num) {
  StepFunction f;
  const auto n = uniform(rng, 0, static_cast<std::int64_t>(max_words));
  for (std::int64_t k = 0; k < n; ++k) {
    const auto len = uniform(rng, 0, static_cast<std::int64_t>(max_len));
    std::string bits;
    for (std::int64_t i = 0; i < len; ++i) bits.push_back(rng() % 2 ? '1' : '0');
    f.add_term(BinWord::parse(bits), random_rational(rng, max_num, 6));
  }
  return f;
}

Trunk random_trunk(Rng& rng, const TreeSchema& schema, std::size_t max_nodes, std::uint64_t max_entry) {
  Trunk t;
  const auto target = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_nodes)));
  for (int attempt = 0; t.size() < target && attempt < 200; ++attempt) {
    const auto& nodes = t.nodes();
    auto it = nodes.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng() % nodes.size()));
    const Node parent = *it;
    if (schema.is_leaf(parent)) continue;
    const Node c = parent.child(static_cast<std::uint64_t>(uniform(rng, 0, static_cast<std::int64_t>(max_entry))));
    t.insert_with_ancestors(c);
  }
  return t;
}

Element random_element_on(Rng& rng, const TreeSchema& schema, unsigned order, const Trunk& trunk,
                          std::int64_t max_num) {
  Element a(schema, order);
  for (unsigned i = 1; i <= order; ++i) {
    for (const Node& s : trunk.nodes()) {
      if (rng() % 3 == 0) continue;
      a.set(s, i, random_rational(rng, max_num, 4));
    }
  }
  return a;
}

std::vector<Element> all_elements(const TreeSchema& schema, const std::vector<Node>& nodes, int lo, int hi) {
  std::vector<Element> out;
  std::vector<int> digits(nodes.size(), lo);
  while (true) {
    Element a(schema, 1);
    for (std::size_t k = 0; k < nodes.size(); ++k) a.set(nodes[k], 1, Rational(digits[k]));
    out.push_back(std::move(a));
    std::size_t k = 0;
    while (k < digits.size() && digits[k] == hi) digits[k++] = lo;
    if (k == digits.size()) break;
    ++digits[k];
  }
  return out;
}

namespace {

void box_walk(const Element& a, const Node& s, const Rational& above, std::size_t max_len,
              std::uint64_t max_entry, Rational& best) {
  const Rational here = above + a.coefficient(s, 1);
  if (abs(here) > best) best = abs(here);
  if (s.length() == max_len) return;
  for (std::uint64_t n = 0; n <= max_entry; ++n) box_walk(a, s.child(n), here, max_len, max_entry, best);
}

}  // namespace

Rational brute_norm(const Element& a, std::size_t max_len, std::uint64_t max_entry) {
  Rational best(0);
  box_walk(a, Node::root(), Rational(0), max_len, max_entry, best);
  return best;
}

std::optional<Triple> to_triple(const Ordinal& a) {
  Triple t;
  for (const auto& term : a.terms()) {
    if (!term.exponent.is_finite()) return std::nullopt;
    switch (term.exponent.to_natural()) {
      case 0: t.z = term.coefficient; break;
      case 1: t.y = term.coefficient; break;
      case 2: t.x = term.coefficient; break;
      default: return std::nullopt;
    }
  }
  return t;
}

Ordinal from_triple(const Triple& t) {
  std::vector<Ordinal::Term> terms;
  if (t.x) terms.push_back({Ordinal::natural(2), t.x});
  if (t.y) terms.push_back({Ordinal::natural(1), t.y});
  if (t.z) terms.push_back({Ordinal{}, t.z});
  return Ordinal::from_terms(std::move(terms));
}

Triple triple_add(const Triple& a, const Triple& b) {
  if (b.x) return {a.x + b.x, b.y, b.z};
  if (b.y) return {a.x, a.y + b.y, b.z};
  return {a.x, a.y, a.z + b.z};
}

DerivativeOracle derivative_oracle(const Triple& g) {
  DerivativeOracle out;
  Triple cur = g;
  while (cur != Triple{}) {
    ++out.height;
    if (cur.x == 0 && cur.y == 0) {
      // [1, z] is discrete: this derivative is the last one.
      out.last_size = cur.z;
      break;
    }
    // Keep the limit points w^2 x + w y (z = 0) and divide by w.
    cur = {0, cur.x, cur.y};
  }
  return out;
}

std::uint64_t cb_rank_oracle(const Triple& p) {
  std::uint64_t rank = 0;
  Triple cur = p;
  while (cur.z == 0) {
    ++rank;
    cur = {0, cur.x, cur.y};
  }
  return rank;
}

}  // namespace treecs::testing
