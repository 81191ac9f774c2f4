#include "suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

#include "support.hpp"
#include "treecs/cantor.hpp"
#include "treecs/error.hpp"
#include "treecs/holfin.hpp"
#include "treecs/ordfun.hpp"
#include "treecs/ordinal.hpp"
#include "treecs/projtree.hpp"
#include "treecs/treespace.hpp"

namespace treecs::acceptance {

namespace {

using testing::Rng;

struct Ctx {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = describe();
  }
};

std::string show(const Rational& q) { return to_string(q); }

// 1. Cantor isometry and positive-part norms.
void cantor_isometry(Ctx& c, std::uint64_t seed) {
  Rng rng(seed);
  for (int k = 0; k < 1000; ++k) {
    const Element a = testing::random_full_element(rng);
    const StepFunction f = embed(a);
    const Rational n1 = step_sup_norm(f), n2 = lambda_norm(a);
    c.expect(n1 == n2, [&] { return "sample " + std::to_string(k) + ": sup norm " + show(n1) + " vs tree norm " + show(n2); });
    const Rational p1 = step_sup_norm(step_pos_part(f)), p2 = pos_part_norm(a);
    c.expect(p1 == p2, [&] { return "sample " + std::to_string(k) + ": positive parts " + show(p1) + " vs " + show(p2); });
  }
}

// 2. Round trips through the inverse embedding.
void round_trip(Ctx& c, std::uint64_t seed) {
  Rng rng(seed);
  for (int k = 0; k < 1000; ++k) {
    const Element a = testing::random_full_element(rng);
    c.expect(inverse_embed(embed(a)) == a, [&] { return "element sample " + std::to_string(k) + " changed"; });
  }
  Rng frng(seed ^ 0x5eedULL);
  for (int k = 0; k < 300; ++k) {
    const StepFunction f = testing::random_step_function(frng);
    c.expect(same_function(embed(inverse_embed(f)), f),
             [&] { return "step function sample " + std::to_string(k) + " changed"; });
  }
}

// 3. Lattice oracle.
//
// All pairs over the depth-1 family {root, <0>, <1>} and over the single
// depth-2 branch {root, <0>, <0,0>, <0,1>}. Over the 7-node depth-2 family
// (78125 elements) every element is checked alone and every seventh against
// a fixed panel of partners; pairing that family fully is 6.1e9 pairs.
struct Prepared {
  Element a;
  Element abs;
  Rational norm;
  explicit Prepared(Element e) : a(std::move(e)), abs(abs_val(a)), norm(lambda_norm(a)) {}
};

std::vector<Prepared> prepare(const std::vector<Element>& es) {
  std::vector<Prepared> out;
  out.reserve(es.size());
  for (const auto& e : es) out.emplace_back(e);
  return out;
}

void check_sup(Ctx& c, const Prepared& pa, const Prepared& pb) {
  const Element& a = pa.a;
  const Element& b = pb.a;
  const Element s = lattice_sup(a, b);
  c.expect(leq(a, s) && leq(b, s), [] { return std::string("sup is not an upper bound"); });
  std::set<Node> closure{Node::root()};
  for (const Element* e : {&a, &b, &s}) {
    for (const auto& [n, v] : e->copy_coeffs(1)) {
      for (std::size_t k = 0; k <= n.length(); ++k) closure.insert(n.prefix(k));
    }
  }
  for (const Node& t : closure) {
    const Rational want = max_of(delta_eval(a, t), delta_eval(b, t));
    c.expect(delta_eval(s, t) == want, [&] { return "sup partial sum differs at " + t.to_string(); });
  }
  if (leq(pa.abs, pb.abs)) {
    c.expect(pa.norm <= pb.norm, [] { return std::string("|a| <= |b| but ||a|| > ||b||"); });
  }
}

void all_pairs(Ctx& c, const std::vector<Prepared>& family) {
  for (const auto& a : family) {
    for (const auto& b : family) check_sup(c, a, b);
  }
}

void lattice_oracle(Ctx& c, std::uint64_t) {
  const auto full = TreeSchema::full();
  all_pairs(c, prepare(testing::all_elements(full, {Node{}, Node{0}, Node{1}}, -2, 2)));
  // One full branch of depth 2: every local configuration of the 7-node family.
  all_pairs(c, prepare(testing::all_elements(full, {Node{}, Node{0}, Node{0, 0}, Node{0, 1}}, -2, 2)));

  const std::vector<Node> nodes{Node{}, Node{0}, Node{1}, Node{0, 0}, Node{0, 1}, Node{1, 0}, Node{1, 1}};
  const auto family = testing::all_elements(full, nodes, -2, 2);
  std::vector<Element> panel{Element(full, 1), Element::chi(full, 1, Node{}), -Element::chi(full, 1, Node{}),
                             Element::chi(full, 1, Node{0, 1}), Rational(2) * Element::chi(full, 1, Node{1})};
  {
    Element mixed(full, 1);
    mixed.set(Node{}, 1, 1);
    mixed.set(Node{0}, 1, -2);
    mixed.set(Node{1, 1}, 1, 2);
    panel.push_back(mixed);
  }
  const auto prepared_panel = prepare(panel);
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Element& a = family[k];
    const Element pos = pos_part(a), neg = neg_part(a), ab = abs_val(a);
    c.expect(pos - neg == a, [] { return std::string("a != a+ - a-"); });
    c.expect(lattice_sup(pos, neg) == ab, [] { return std::string("|a| != sup(a+, a-)"); });
    c.expect(lattice_sup(a, -a) == ab, [] { return std::string("|a| != sup(a, -a)"); });
    c.expect(lambda_norm(a) == max_of(pos_part_norm(a), pos_part_norm(-a)),
             [] { return std::string("norm != max of positive-part norms"); });
    c.expect(lambda_norm(ab) == lambda_norm(a), [] { return std::string("|| |a| || != ||a||"); });
    if (k % 7 == 0) {
      const Prepared pa(a);
      for (const auto& pb : prepared_panel) {
        check_sup(c, pa, pb);
        check_sup(c, pb, pa);
      }
    }
  }
}

// 4. Positive-part supremum identity for sequences.
void seq_identity(Ctx& c, std::uint64_t seed) {
  Rng rng(seed);
  for (int k = 0; k < 10000; ++k) {
    std::vector<Rational> xs;
    const auto len = testing::uniform(rng, 1, 10);
    for (std::int64_t i = 0; i < len; ++i) {
      Rational q(static_cast<long>(testing::uniform(rng, -20, 20)), static_cast<unsigned long>(testing::uniform(rng, 1, 5)));
      q.canonicalize();
      xs.push_back(q);
    }
    const auto r = seq_pos_sup_identity(xs);
    c.expect(r.lhs == r.rhs, [&] { return "sequence " + std::to_string(k) + ": " + show(r.lhs) + " vs " + show(r.rhs); });
  }
}

// 5. Trunk approximation, including random supersets of the constructed trunk.
void trunk_approximation(Ctx& c, std::uint64_t seed) {
  Rng rng(seed);
  for (int k = 0; k < 200; ++k) {
    const Element a = testing::random_full_element(rng, 12, 5, 6, 100);
    const Rational norm = lambda_norm(a);
    Rational eps(static_cast<long>(testing::uniform(rng, 1, 60)), 40UL);
    eps.canonicalize();
    if (norm > 0) eps *= norm;
    const Trunk F = trunk_approx(a, eps);
    const Rational r0 = lambda_norm(a - restrict(a, Region::trunk(F)));
    c.expect(r0 < eps, [&] { return "sample " + std::to_string(k) + ": residual " + show(r0) + " >= eps " + show(eps); });

    std::vector<Node> support;
    for (const auto& [s, v] : a.copy_coeffs(1)) support.push_back(s);
    for (int j = 0; j < 20; ++j) {
      Trunk G = F;
      const auto extra = testing::uniform(rng, 0, 6);
      for (std::int64_t e = 0; e < extra; ++e) {
        if (!support.empty() && rng() % 2 == 0) {
          G.insert_with_ancestors(support[rng() % support.size()]);
        } else {
          std::vector<std::uint64_t> entries;
          const auto len = testing::uniform(rng, 1, 4);
          for (std::int64_t i = 0; i < len; ++i) entries.push_back(static_cast<std::uint64_t>(testing::uniform(rng, 0, 6)));
          G.insert_with_ancestors(Node(std::move(entries)));
        }
      }
      const Rational r = lambda_norm(a - restrict(a, Region::trunk(G)));
      c.expect(r < eps, [&] { return "sample " + std::to_string(k) + " superset " + std::to_string(j) + ": residual " + show(r); });
    }
  }
}

// 6. Ordinal-interval duality, norms and positive-part norms.
void ordinal_duality(Ctx& c, std::uint64_t seed) {
  Rng rng(seed);
  const Ordinal w = Ordinal::omega();
  const std::vector<Ordinal> alphas{Ordinal::natural(0), Ordinal::natural(1), Ordinal::natural(2), w,
                                    add(w, Ordinal::natural(1)), omega_pow(Ordinal::natural(2))};
  for (const Ordinal& alpha : alphas) {
    const TreeSchema schema = TreeSchema::canonical(alpha);
    for (unsigned m = 1; m <= 3; ++m) {
      for (int rep = 0; rep < 3; ++rep) {
        const Trunk trunk = testing::random_trunk(rng, schema, 15);
        std::map<Slot, OrdStepFunction> chis;
        std::map<Slot, Ordinal> rho;
        std::set<Ordinal> seen;
        for (unsigned i = 1; i <= m; ++i) {
          for (const Node& s : trunk.nodes()) {
            chis.emplace(Slot{s, i}, embed_ordinal(Element::chi(schema, m, s, i)));
            rho.emplace(Slot{s, i}, rho_node(s, i, alpha, m));
            seen.insert(rho.at({s, i}));
          }
        }
        c.expect(seen.size() == rho.size(), [&] { return "rho not injective for alpha " + alpha.to_string(); });
        for (const auto& [sl, r] : rho) {
          for (const auto& [tl, f] : chis) {
            const Rational lhs = delta_eval(Element::chi(schema, m, tl.first, tl.second), sl.first, sl.second);
            const Rational rhs = ordfun_eval(f, r);
            c.expect(lhs == rhs, [&] {
              return "alpha " + alpha.to_string() + ": pair s=" + sl.first.to_string() + " t=" + tl.first.to_string();
            });
          }
        }
        for (int e = 0; e < 5; ++e) {
          const Element a = testing::random_element_on(rng, schema, m, trunk);
          const OrdStepFunction f = embed_ordinal(a);
          c.expect(ordfun_sup_norm(f) == lambda_norm(a), [&] { return "norm mismatch for alpha " + alpha.to_string(); });
          c.expect(ordfun_sup_norm(ordfun_pos_part(f)) == pos_part_norm(a),
                   [&] { return "positive-part mismatch for alpha " + alpha.to_string(); });
        }
      }
    }
  }
}

// 7. Canonical projectional trees and their projections.
void projection(Ctx& c, std::uint64_t seed) {
  Rng rng(seed);
  const TreeSchema full = TreeSchema::full();
  int inputs = 0;
  for (int k = 0; k < 10; ++k) {
    const Trunk trunk = testing::random_trunk(rng, full, 20, 3);
    const ProjTreeData data = canonical_projtree(trunk);
    const auto rep = verify_biorthogonality(data);
    c.expect(rep.ok(), [&] { return "trunk " + std::to_string(k) + " fails biorthogonality"; });
    c.expect(data.norm_bound() == 1, [] { return std::string("canonical data norm bound != 1"); });
    for (const auto& [slot, e] : data.vectors) {
      c.expect(same_function(project(data, e), e), [&] { return "P does not fix e" + slot.first.to_string(); });
    }
    for (int j = 0; j < 20; ++j, ++inputs) {
      const StepFunction g = testing::random_step_function(rng);
      const StepFunction pg = project(data, g);
      c.expect(same_function(project(data, pg), pg), [&] { return "P not idempotent on input " + std::to_string(inputs); });
      c.expect(step_sup_norm(pg) <= step_sup_norm(g), [&] { return "P expands input " + std::to_string(inputs); });
      const StepFunction gp = step_pos_part(g);
      c.expect(step_leq(StepFunction{}, project(data, gp)),
               [&] { return "P not positive on input " + std::to_string(inputs); });
    }
  }
}

// 8. Finite-compacta extraction.
void holsztynski(Ctx& c, std::uint64_t seed) {
  Rng rng(seed);
  for (int k = 0; k < 100; ++k) {
    const auto K = static_cast<std::size_t>(testing::uniform(rng, 1, 8));
    const auto L = static_cast<std::size_t>(testing::uniform(rng, 1, static_cast<std::int64_t>(std::min<std::size_t>(K, 5))));
    const FiniteOperator op = random_instance(K, L, rng());
    const auto hyp = check_hypotheses(op);
    c.expect(hyp.ok(), [&] { return "instance " + std::to_string(k) + ": " + hyp.failures.front(); });
    const Extraction ex = extract(op);
    const auto rep = verify_conclusions(op, ex, 10, rng());
    c.expect(rep.ok(), [&] { return "instance " + std::to_string(k) + ": " + rep.violations.front(); });
  }
}

// 9. Ordinal layer against the iterated-derivative oracle.
void ordinal_layer(Ctx& c, std::uint64_t) {
  for (std::uint64_t x = 0; x <= 5; ++x) {
    for (std::uint64_t y = 0; y <= 5; ++y) {
      for (std::uint64_t z = 0; z <= 5; ++z) {
        const testing::Triple t{x, y, z};
        if (t == testing::Triple{}) continue;
        const Ordinal g = testing::from_triple(t);
        const auto oracle = testing::derivative_oracle(t);
        const MsNormalForm ms = ms_normal_form(g);
        c.expect(ms.alpha == Ordinal::natural(oracle.height - 1) && ms.m == oracle.last_size &&
                     ms.height == Ordinal::natural(oracle.height),
                 [&] { return "normal form of " + g.to_string(); });
        c.expect(cb_rank_of_point(g) == Ordinal::natural(testing::cb_rank_oracle(t)),
                 [&] { return "cb rank of " + g.to_string(); });
      }
    }
  }
  const Ordinal w = Ordinal::omega();
  for (const Ordinal& alpha : {Ordinal::natural(0), Ordinal::natural(1), Ordinal::natural(2), w,
                               add(w, Ordinal::natural(1)), omega_pow(Ordinal::natural(2))}) {
    for (std::uint64_t m = 1; m <= 3; ++m) {
      const MsNormalForm ms = ms_normal_form(nat_mul(omega_pow(alpha), m));
      c.expect(ms.alpha == alpha && ms.m == m && ms.height == add(alpha, Ordinal::natural(1)),
               [&] { return "height of [1, w^" + alpha.to_string() + "*" + std::to_string(m) + "]"; });
    }
  }
}

struct Entry {
  SuiteInfo info;
  std::function<void(Ctx&, std::uint64_t)> body;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{1, "cantor-isometry", 10}, cantor_isometry},
      {{2, "round-trip", 10}, round_trip},
      {{3, "lattice-oracle", 30}, lattice_oracle},
      {{4, "sequence-identity", 1}, seq_identity},
      {{5, "trunk-approximation", 5}, trunk_approximation},
      {{6, "ordinal-duality", 10}, ordinal_duality},
      {{7, "projection", 10}, projection},
      {{8, "holsztynski", 5}, holsztynski},
      {{9, "ordinal-layer", 5}, ordinal_layer},
  };
  return entries;
}

}  // namespace

std::vector<SuiteInfo> suite_list() {
  std::vector<SuiteInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

SuiteResult run_suite(int id, std::uint64_t seed) {
  for (const auto& e : registry()) {
    if (e.info.id != id) continue;
    SuiteResult r;
    r.id = id;
    r.name = e.info.name;
    r.limit_seconds = e.info.limit_seconds;
    Ctx ctx;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.body(ctx, seed);
      r.correct = ctx.failures == 0;
      r.detail = ctx.first_failure;
      if (ctx.failures > 1) r.detail += " (+" + std::to_string(ctx.failures - 1) + " more)";
    } catch (const std::exception& ex) {
      r.correct = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.checks = ctx.checks;
    return r;
  }
  throw DomainError("no acceptance suite with id " + std::to_string(id));
}

std::string format_line(const SuiteResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s / %g s", r.seconds, r.limit_seconds);
  std::string line = std::string(r.pass() ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + "  (" +
                     std::to_string(r.checks) + " checks, " + timing + ")";
  if (!r.correct && !r.detail.empty()) line += "  " + r.detail;
  if (r.correct && !r.pass()) line += "  over time limit";
  return line;
}

}  // namespace treecs::acceptance
