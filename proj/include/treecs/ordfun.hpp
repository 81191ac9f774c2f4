#pragma once

#include <vector>

#include "treecs/ordinal.hpp"
#include "treecs/rational.hpp"
#include "treecs/treespace.hpp"
#include "treecs/trees.hpp"

namespace treecs {

/// Half-open ordinal interval (lo, hi].
struct OrdInterval {
  Ordinal lo;
  Ordinal hi;
  bool contains(const Ordinal& g) const { return lo < g && g <= hi; }
  friend bool operator==(const OrdInterval&, const OrdInterval&) = default;
};

struct OrdPiece {
  Ordinal lo;
  Ordinal hi;
  Rational value;
  friend bool operator==(const OrdPiece&, const OrdPiece&) = default;
};

/// Locally constant function on [1, top] given by clopen pieces (lo, hi].
/// Pieces are kept contiguous, covering (0, top], with equal neighbours merged,
/// so equality is structural.
class OrdStepFunction {
 public:
  /// Constant function c on (0, top]. Throws DomainError when top is 0.
  OrdStepFunction(Ordinal top, const Rational& c = Rational(0));
  /// Validates contiguity and coverage, then merges equal neighbours.
  static OrdStepFunction from_pieces(Ordinal top, std::vector<OrdPiece> pieces);
  /// Sum of c * chi_(lo, hi] over the given intervals, all inside (0, top].
  static OrdStepFunction from_intervals(Ordinal top,
                                        const std::vector<std::pair<OrdInterval, Rational>>& parts);

  const Ordinal& top() const { return top_; }
  const std::vector<OrdPiece>& pieces() const { return pieces_; }

  friend bool operator==(const OrdStepFunction&, const OrdStepFunction&) = default;

 private:
  OrdStepFunction() = default;
  void merge_neighbours();

  Ordinal top_;
  std::vector<OrdPiece> pieces_;
};

/// Throws DomainError unless 1 <= g <= top.
Rational ordfun_eval(const OrdStepFunction& f, const Ordinal& g);
Rational ordfun_sup_norm(const OrdStepFunction& f);
OrdStepFunction ordfun_pos_part(const OrdStepFunction& f);
/// Pointwise maximum; both functions must share the same top.
OrdStepFunction ordfun_lattice_sup(const OrdStepFunction& f, const OrdStepFunction& g);

/// Interval (o, o + w^{r(s)}] of [1, w^alpha m] assigned to node s of copy i.
///
/// Copy i starts at w^alpha (i-1). Below a node of rank b+1 starting at o, child
/// n starts at o + w^b n; below a limit rank l, child 0 starts at o and child
/// n >= 1 starts at o + w^{l[n-1]}.
OrdInterval node_interval(const TreeSchema& schema, const Node& s, unsigned copy);

/// rho(s, i): the right end of node_interval.
Ordinal rho_node(const Node& s, unsigned copy, const Ordinal& alpha, unsigned order);

/// T(a) = sum a_{s,i} chi_{node_interval(s, i)} on [1, w^alpha m].
/// Rejects the full schema.
OrdStepFunction embed_ordinal(const Element& a);

}  // namespace treecs
