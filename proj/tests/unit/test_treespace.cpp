#include <doctest.h>

#include <vector>

#include "support.hpp"
#include "treecs/error.hpp"
#include "treecs/treespace.hpp"

using namespace treecs;
using namespace treecs::testing;

namespace {

const TreeSchema full = TreeSchema::full();

Element chi(const Node& s) { return Element::chi(full, 1, s); }
Rational q(const char* t) { return parse_rational(t); }

Element make(std::initializer_list<std::pair<Node, int>> entries) {
  Element a(full, 1);
  for (const auto& [s, v] : entries) a.set(s, 1, Rational(v));
  return a;
}

// Partial sum by walking the prefixes directly.
Rational prefix_sum(const Element& a, const Node& t, unsigned copy = 1) {
  Rational sum(0);
  std::vector<std::uint64_t> e;
  sum += a.coefficient(Node{}, copy);
  for (std::size_t k = 0; k < t.length(); ++k) {
    e.push_back(t[k]);
    sum += a.coefficient(Node(e), copy);
  }
  return sum;
}

// Every node of length <= 6 and entries <= 7 reachable from the support, plus one layer.
std::vector<Node> probe_nodes(const Element& a, const Element& b) {
  std::set<Node> out{Node{}};
  for (const Element* x : {&a, &b}) {
    for (const auto& [s, v] : x->copy_coeffs(1)) {
      Node cur;
      out.insert(cur);
      for (std::size_t k = 0; k < s.length(); ++k) {
        for (std::uint64_t n = 0; n <= 7; ++n) out.insert(cur.child(n));
        cur = cur.child(s[k]);
        out.insert(cur);
      }
      for (std::uint64_t n = 0; n <= 7; ++n) out.insert(s.child(n));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("element basics") {
  Element a(full, 1);
  CHECK(a.is_zero());
  a.set(Node{0}, 1, Rational(3));
  a.set(Node{0}, 1, Rational(0));
  CHECK(a.is_zero());
  CHECK(a.support_size() == 0);
  a.add_to(Node{1, 2}, 1, Rational(2));
  CHECK(a.support_depth() == 2);
  CHECK_THROWS_AS(Element::chi(TreeSchema::canonical(Ordinal::parse("0")), 1, Node{0}), DomainError);
  CHECK_THROWS_AS(a.set(Node{}, 2, Rational(1)), DomainError);
  CHECK_THROWS_AS(a + Element(full, 2), DomainError);
}

TEST_CASE("lambda norm examples") {
  CHECK(lambda_norm(chi(Node{})) == 1);
  CHECK(lambda_norm(chi(Node{4, 2})) == 1);
  CHECK(lambda_norm(make({{Node{}, 1}, {Node{0}, -2}, {Node{0, 0}, 3}})) == 2);
  CHECK(lambda_norm(Element(full, 1)) == 0);
  Element m(full, 2);
  m.set(Node{}, 1, Rational(1));
  m.set(Node{3}, 2, Rational(-5));
  CHECK(lambda_norm(m) == 5);
}

TEST_CASE("positive part norm examples") {
  CHECK(pos_part_norm(-chi(Node{})) == 0);
  CHECK(pos_part_norm(make({{Node{}, -1}, {Node{0}, 2}})) == 1);
}

TEST_CASE("norm agrees with brute force") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Element a = random_full_element(rng, 8, 4, 5, 30);
    CHECK(lambda_norm(a) == brute_norm(a, 5, 6));
    CHECK(pos_part_norm(a) == lambda_norm(pos_part(a)));
  }
}

TEST_CASE("norm axioms") {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const Element a = random_full_element(rng);
    const Element b = random_full_element(rng);
    const Rational k = random_rational(rng, 7, 5);
    CHECK(lambda_norm(a + b) <= lambda_norm(a) + lambda_norm(b));
    CHECK(lambda_norm(k * a) == abs_value(k) * lambda_norm(a));
    CHECK((lambda_norm(a) == 0) == a.is_zero());
    CHECK(lambda_norm(a) == max_of(lambda_norm(pos_part(a)), lambda_norm(neg_part(a))));
  }
}

TEST_CASE("order examples") {
  CHECK(leq(Element(full, 1), chi(Node{})));
  CHECK(leq(chi(Node{0}), chi(Node{})));
  CHECK_FALSE(leq(chi(Node{}), chi(Node{0})));
  CHECK(leq(chi(Node{2}), chi(Node{2})));
}

TEST_CASE("lattice examples") {
  CHECK(lattice_sup(chi(Node{}), -chi(Node{})) == chi(Node{}));
  const Element a = make({{Node{}, 1}, {Node{0}, -2}});
  CHECK(lattice_sup(a, a) == a);
  CHECK(lattice_sup(make({{Node{}, 1}}), make({{Node{0}, 2}})) == make({{Node{}, 1}, {Node{0}, 1}}));
  CHECK(pos_part(make({{Node{}, -1}, {Node{0}, 2}})) == make({{Node{0}, 1}}));
  CHECK(abs_val(Rational(-3) * chi(Node{1})) == Rational(3) * chi(Node{1}));
}

TEST_CASE("lattice operations act pointwise on partial sums") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Element a = random_full_element(rng, 6, 3, 4, 20);
    const Element b = random_full_element(rng, 6, 3, 4, 20);
    const Element s = lattice_sup(a, b);
    const Element i = lattice_inf(a, b);
    const Element p = pos_part(a);
    const Element n = neg_part(a);
    const Element v = abs_val(a);
    bool a_le_b = true;
    for (const Node& t : probe_nodes(a, b)) {
      const Rational x = prefix_sum(a, t), y = prefix_sum(b, t);
      CHECK(prefix_sum(s, t) == max_of(x, y));
      CHECK(prefix_sum(i, t) == (x < y ? x : y));
      CHECK(prefix_sum(p, t) == positive_part(x));
      CHECK(prefix_sum(n, t) == negative_part(x));
      CHECK(prefix_sum(v, t) == abs_value(x));
      if (x > y) a_le_b = false;
    }
    CHECK(leq(a, b) == a_le_b);
    CHECK(a == p - n);
    CHECK(v == p + n);
    CHECK(lattice_sup(a, b) + lattice_inf(a, b) == a + b);
  }
}

TEST_CASE("restrict examples") {
  const Element a = make({{Node{}, 2}, {Node{0}, 3}, {Node{0, 1}, -1}});
  CHECK(restrict(a, Region::levels_at_least(3)).is_zero());
  CHECK(restrict(chi(Node{}) + chi(Node{0}), Region::subtree(Node{0})) == chi(Node{0}));
  CHECK(restrict(a, Region::trunk(Trunk())) == Rational(2) * chi(Node{}));
  CHECK(restrict(a, Region::levels_at_least(1)) == make({{Node{0}, 3}, {Node{0, 1}, -1}}));
  CHECK(restrict(a, Region::nodes({Node{0, 1}})) == -chi(Node{0, 1}));

  Element m(full, 2);
  m.set(Node{}, 1, Rational(1));
  m.set(Node{}, 2, Rational(4));
  Element only2(full, 2);
  only2.set(Node{}, 2, Rational(4));
  CHECK(restrict(m, Region::trunk(Trunk()), std::set<unsigned>{2}) == only2);
}

TEST_CASE("positive part commutes with restriction to prefix-closed sets") {
  Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const Element a = random_full_element(rng, 10, 4, 3, 20);
    const Trunk t = random_trunk(rng, full, 8, 3);
    const Region r = Region::trunk(t);
    CHECK(pos_part(restrict(a, r)) == restrict(pos_part(a), r));
  }
}

TEST_CASE("positive part does not commute with restriction to arbitrary sets") {
  const Element a = make({{Node{}, -1}, {Node{0}, 2}});
  const Region r = Region::nodes({Node{0}});
  CHECK(restrict(pos_part(a), r) == chi(Node{0}));
  CHECK(pos_part(restrict(a, r)) == Rational(2) * chi(Node{0}));
  CHECK(pos_part(restrict(a, Region::subtree(Node{0}))) != restrict(pos_part(a), Region::subtree(Node{0})));
}

TEST_CASE("delta evaluation") {
  CHECK(delta_eval(chi(Node{0}), Node{0, 3}) == 1);
  CHECK(delta_eval(chi(Node{0}), Node{1}) == 0);
  Element m(full, 2);
  m.set(Node{}, 1, Rational(1));
  CHECK(delta_eval(m, Node{}, 2) == 0);
  CHECK(delta_eval(m, Node{}, 1) == 1);
}

TEST_CASE("trunk approximation examples") {
  CHECK(trunk_approx(chi(Node{}), q("1/2")) == Trunk());

  Element a(full, 1);
  Rational v(1);
  for (std::uint64_t k = 0; k <= 5; ++k) {
    a.set(Node{k}, 1, v);
    v /= 2;
  }
  Trunk expect;
  for (std::uint64_t k = 0; k <= 4; ++k) expect.insert_with_ancestors(Node{k});
  CHECK(trunk_approx(a, q("1/4")) == expect);

  CHECK_THROWS_AS(trunk_approx(a, Rational(0)), DomainError);

  // A norm below eps does not force the one-node trunk.
  const Element b = make({{Node{}, 1}, {Node{0}, -2}});
  Trunk both;
  both.insert_with_ancestors(Node{0});
  CHECK(lambda_norm(b) < q("3/2"));
  CHECK(trunk_approx(b, q("3/2")) == both);
}

TEST_CASE("trunk approximation bound and monotonicity") {
  Rng rng(15);
  for (int trial = 0; trial < 150; ++trial) {
    const Element a = random_full_element(rng, 10, 4, 4, 30);
    const Rational eps = random_rational(rng, 20, 6);
    const Rational e = abs_value(eps);
    const Trunk f = trunk_approx(a, e);
    CHECK(lambda_norm(a - restrict(a, Region::trunk(f))) < e);
    for (int k = 0; k < 5; ++k) {
      Trunk g = f;
      const Trunk extra = random_trunk(rng, full, 6, 4);
      for (const Node& s : extra.nodes()) g.insert_with_ancestors(s);
      for (const auto& [s, c] : a.copy_coeffs(1))
        if (rng() % 3 == 0) g.insert_with_ancestors(s);
      CHECK(lambda_norm(a - restrict(a, Region::trunk(g))) < e);
    }
    if (8 * lambda_norm(a) < e) CHECK(f == Trunk());
  }
}

TEST_CASE("finite sequence identity") {
  const std::vector<Rational> one{Rational(1)};
  const auto r1 = seq_pos_sup_identity(one);
  CHECK(r1.lhs == 1);
  CHECK(r1.rhs == 1);
  const std::vector<Rational> two{Rational(-2), Rational(3)};
  const auto r2 = seq_pos_sup_identity(two);
  CHECK(r2.lhs == 1);
  CHECK(r2.rhs == 1);
  const std::vector<Rational> zeros(3, Rational(0));
  CHECK(seq_pos_sup_identity(zeros).lhs == 0);
  CHECK(seq_pos_sup_identity(zeros).rhs == 0);
  CHECK_THROWS_AS(seq_pos_sup_identity(std::span<const Rational>{}), DomainError);

  Rng rng(16);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> xs;
    const auto n = uniform(rng, 1, 8);
    for (int k = 0; k < n; ++k) xs.push_back(random_rational(rng, 9, 4));
    const auto r = seq_pos_sup_identity(xs);
    CHECK(r.lhs == r.rhs);
    Rational best(0), run(0);
    for (const auto& x : xs) {
      run += x;
      best = max_of(best, run);
    }
    CHECK(r.lhs == best);
  }
}
