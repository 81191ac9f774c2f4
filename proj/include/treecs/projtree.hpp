#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treecs/cantor.hpp"
#include "treecs/rational.hpp"
#include "treecs/treespace.hpp"
#include "treecs/trees.hpp"

namespace treecs {

/// Finitely supported signed measure on eventually constant Cantor points.
class HostFunctional {
 public:
  using Atoms = std::map<CantorPoint, Rational>;

  HostFunctional() = default;
  static HostFunctional point_mass(const CantorPoint& x, const Rational& mass = Rational(1));

  const Atoms& atoms() const { return atoms_; }
  void add_mass(const CantorPoint& x, const Rational& mass);

  Rational pair(const StepFunction& f) const;
  /// Total variation sum |mass|.
  Rational norm() const;
  bool is_positive() const;

  HostFunctional& operator-=(const HostFunctional& other);
  friend HostFunctional operator-(HostFunctional a, const HostFunctional& b) { return a -= b; }
  friend bool operator==(const HostFunctional&, const HostFunctional&) = default;

 private:
  Atoms atoms_;
};

using Slot = std::pair<Node, unsigned>;

/// Trunk-restricted projectional tree data over Cantor step functions.
struct ProjTreeData {
  TreeSchema schema = TreeSchema::full();
  unsigned order = 1;
  Trunk trunk;
  std::map<Slot, StepFunction> vectors;
  std::map<Slot, HostFunctional> functionals;

  /// Throws DomainError on an invalid trunk or a missing (node, copy) entry.
  void validate() const;
  /// C = the largest functional norm.
  Rational norm_bound() const;
  /// Trunk slots in (copy, node) order.
  std::vector<Slot> slots() const;
};

struct PairingViolation {
  Slot s;
  Slot t;
  Rational got;
  Rational expected;
};

struct BiorthogonalityReport {
  std::vector<Slot> slots;
  /// matrix[a][b] = <rho(slots[a]), e(slots[b])>.
  std::vector<std::vector<Rational>> matrix;
  std::vector<PairingViolation> violations;
  bool ok() const { return violations.empty(); }
};

BiorthogonalityReport verify_biorthogonality(const ProjTreeData& data);

/// S(g)_{root,i} = <rho(root,i), g>, S(g)_{s,i} = <rho(s,i) - rho(pred s,i), g>.
Element build_S(const ProjTreeData& data, const StepFunction& g);

/// P(g) = sum S(g)_{s,i} e_{s,i} over the trunk, in disjoint form.
/// Throws DomainError when the data fails biorthogonality.
StepFunction project(const ProjTreeData& data, const StepFunction& g);

/// e_s = chi_[Q(s)], rho(s) = delta_{R(s)} on the full tree, order 1.
ProjTreeData canonical_projtree(const Trunk& trunk);

/// Finite-depth evidence about the decay conditions on rho. Each sequence is
/// max |<rho(t) - rho(s), g>| over deeper trunk nodes, indexed either by the
/// child s^n (per inner node s) or by the length of s. A sequence is flagged
/// when its last value is nonzero and no smaller than every earlier one.
/// Finite data cannot certify a limit, so an unflagged report proves nothing.
struct RegularitySequence {
  std::size_t probe = 0;
  unsigned copy = 1;
  /// Inner node for the per-child sequence; empty for the length sequence.
  std::optional<Node> node;
  std::vector<Rational> values;
  bool flagged = false;
  bool insufficient = false;
};

struct RegularityReport {
  std::string header;
  std::vector<RegularitySequence> sequences;
  bool consistent() const;
};

RegularityReport check_rho_regularity(const ProjTreeData& data, const std::vector<StepFunction>& probes);

}  // namespace treecs
