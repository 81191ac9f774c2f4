#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "treecs/rational.hpp"
#include "treecs/trees.hpp"

namespace treecs {

/// Finitely supported element of the m-fold tree space over a schema.
///
/// Coefficients are indexed by (node, copy) with copies numbered 1..m. Zero
/// coefficients are never stored, so equality is structural. The norm of the
/// m-fold space is the maximum over copies.
class Element {
 public:
  using CopyCoeffs = std::map<Node, Rational>;

  Element(TreeSchema schema, unsigned order);

  /// The unit vector chi~_{s,i}. Throws DomainError for s outside the schema.
  static Element chi(const TreeSchema& schema, unsigned order, const Node& s, unsigned copy = 1);

  const TreeSchema& schema() const { return schema_; }
  unsigned order() const { return static_cast<unsigned>(copies_.size()); }

  Rational coefficient(const Node& s, unsigned copy = 1) const;
  /// Sets a_{s,copy}; a zero value erases the entry.
  void set(const Node& s, unsigned copy, const Rational& value);
  void add_to(const Node& s, unsigned copy, const Rational& value);

  const CopyCoeffs& copy_coeffs(unsigned copy) const;
  bool is_zero() const;
  std::size_t support_size() const;
  /// Largest node length in the support (0 for the zero element).
  std::size_t support_depth() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& scalar);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& k, Element a) { return a *= k; }
  Element operator-() const;

  friend bool operator==(const Element&, const Element&) = default;

  /// Throws DomainError unless both elements live on the same schema and order.
  void require_compatible(const Element& other) const;

 private:
  void check_slot(const Node& s, unsigned copy) const;

  TreeSchema schema_;
  std::vector<CopyCoeffs> copies_;
};

/// Partial sums sum_{s <= t} a_s at every node t of the downward closure of
/// `support_nodes` (taken for one copy of `a`).
std::map<Node, Rational> partial_sums(const Element::CopyCoeffs& coeffs,
                                      const std::set<Node>& closure);

/// delta~_{s,i}(a) = sum_{t <= s} a_{t,i}.
Rational delta_eval(const Element& a, const Node& s, unsigned copy = 1);

/// sup over t of |sum_{s <= t} a_s|, maximized over copies. Partial sums are
/// constant past the deepest support node, so the downward closure suffices.
Rational lambda_norm(const Element& a);

/// sup over t of (sum_{s <= t} a_s)^+, maximized over copies; equals the norm
/// of the positive part.
Rational pos_part_norm(const Element& a);

/// a <= b in the lattice order (partial sums compared at every node).
bool leq(const Element& a, const Element& b);

Element lattice_sup(const Element& a, const Element& b);
Element lattice_inf(const Element& a, const Element& b);
Element pos_part(const Element& a);
Element neg_part(const Element& a);
Element abs_val(const Element& a);

/// Node region used by `restrict`.
class Region {
 public:
  static Region trunk(const Trunk& t);
  static Region subtree(const Node& s);
  static Region levels_at_least(std::size_t n);
  static Region nodes(std::set<Node> set);

  bool contains(const Node& s) const;

 private:
  enum class Kind { NodeSet, Subtree, LevelsAtLeast };
  Region(Kind kind, std::set<Node> set, Node root, std::size_t level)
      : kind_(kind), set_(std::move(set)), root_(std::move(root)), level_(level) {}

  Kind kind_;
  std::set<Node> set_;
  Node root_;
  std::size_t level_ = 0;
};

/// Keeps coefficients on the region (and, if given, on the listed copies),
/// zeroing all others.
Element restrict(const Element& a, const Region& region,
                 const std::optional<std::set<unsigned>>& copies = std::nullopt);

/// Finite trunk F with lambda_norm(a - a|F') < eps for every trunk F' containing F.
///
/// Per copy: take the smallest n >= 1 with the tail below level n of norm < eps/4,
/// then descend level by level keeping children t^m whose subtree restriction
/// has norm >= eps/(4n). The returned trunk is the union over copies.
/// Throws DomainError unless eps > 0.
Trunk trunk_approx(const Element& a, const Rational& eps);

struct SeqIdentity {
  Rational lhs;
  Rational rhs;
};

/// Both sides of
///   sup_n (x_0 + ... + x_n)^+  =  (x_0 + sup_{n>=1} (x_1 + ... + x_n)^+)^+
/// for a finite sequence extended by zeros. Throws DomainError on empty input.
SeqIdentity seq_pos_sup_identity(std::span<const Rational> xs);

}  // namespace treecs
