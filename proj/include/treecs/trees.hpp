#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "treecs/ordinal.hpp"

namespace treecs {

/// A finite sequence of naturals, i.e. a node of the full tree w^<w.
class Node {
 public:
  Node() = default;
  Node(std::initializer_list<std::uint64_t> entries) : entries_(entries) {}
  explicit Node(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {}

  static Node root() { return Node{}; }

  std::size_t length() const { return entries_.size(); }
  bool is_root() const { return entries_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return entries_[i]; }
  std::uint64_t last() const;
  const std::vector<std::uint64_t>& entries() const { return entries_; }

  /// Removes the last entry. Throws DomainError on the root.
  Node pred() const;
  /// Removes the first entry. Throws DomainError on the root.
  Node shift() const;
  Node child(std::uint64_t n) const;
  Node concat(const Node& tail) const;
  /// First `n` entries.
  Node prefix(std::size_t n) const;

  /// this is a (not necessarily strict) initial segment of `other`.
  bool is_prefix_of(const Node& other) const;
  bool is_strict_prefix_of(const Node& other) const;
  bool incomparable_with(const Node& other) const;

  /// "<3,1,4>"; the root prints as "<>".
  std::string to_string() const;

  friend auto operator<=>(const Node&, const Node&) = default;
  friend bool operator==(const Node&, const Node&) = default;

 private:
  std::vector<std::uint64_t> entries_;
};

/// The canonical tree of rank alpha + 1, or the full tree w^<w (rank infinity).
///
/// Canonical(alpha): the root has rank alpha; a node of rank 0 is a leaf; a node
/// of successor rank b + 1 has children all of rank b; a node of limit rank l
/// has child n of rank l[n]. Trees are never materialized, only queried.
class TreeSchema {
 public:
  enum class Kind { Canonical, Full };

  static TreeSchema canonical(Ordinal root_rank);
  static TreeSchema full();

  Kind kind() const { return kind_; }
  bool is_full() const { return kind_ == Kind::Full; }
  /// Throws DomainError for the full tree.
  const Ordinal& root_rank() const;

  bool contains(const Node& s) const;
  /// Rank r(s). Throws DomainError for the full tree or a node outside the tree.
  Ordinal rank_of(const Node& s) const;
  /// Leaves are exactly the rank-0 nodes; the full tree has none.
  bool is_leaf(const Node& s) const;

  std::string to_string() const;

  friend bool operator==(const TreeSchema&, const TreeSchema&) = default;

 private:
  TreeSchema(Kind kind, Ordinal rank) : kind_(kind), rank_(std::move(rank)) {}

  Kind kind_ = Kind::Full;
  Ordinal rank_;
};

/// Rank of child n of a node of rank `parent` in a canonical tree.
/// Throws DomainError for rank 0 (leaves have no children).
Ordinal child_rank(const Ordinal& parent, std::uint64_t n);

/// Finite hereditary node set containing the root.
class Trunk {
 public:
  /// The one-node trunk {root}.
  Trunk() : nodes_{Node::root()} {}

  const std::set<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(const Node& s) const { return nodes_.contains(s); }
  /// Nodes of the trunk having at least one child inside the trunk.
  std::vector<Node> inner_nodes() const;
  std::size_t depth() const;

  /// Adds a node together with its missing ancestors.
  void insert_with_ancestors(const Node& s);

  friend bool operator==(const Trunk&, const Trunk&) = default;

 private:
  friend Trunk validate_trunk(const TreeSchema&, const std::set<Node>&);
  friend Trunk downward_closure(const std::set<Node>&);
  explicit Trunk(std::set<Node> nodes) : nodes_(std::move(nodes)) {}

  std::set<Node> nodes_;
};

struct TrunkCheck {
  bool ok = true;
  std::optional<Node> violating;
  std::string reason;
};

/// Checks root membership, hereditariness and containment in the schema.
/// Reports the first violating node in node order.
TrunkCheck check_trunk(const TreeSchema& schema, const std::set<Node>& nodes);

/// Throws DomainError with the first violating node when check_trunk fails.
Trunk validate_trunk(const TreeSchema& schema, const std::set<Node>& nodes);

/// Smallest trunk containing the input.
Trunk downward_closure(const std::set<Node>& nodes);

/// Finite certificate that t_k -> s: a suffix t_{k0}, t_{k0+1}, ... of length
/// at least two whose members all strictly extend s with strictly increasing
/// entries t_k[len s].
bool check_convergence_witness(const Node& s, std::span<const Node> ts);

}  // namespace treecs
