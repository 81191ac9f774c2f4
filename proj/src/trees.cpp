#include "treecs/trees.hpp"

#include <algorithm>

#include "treecs/error.hpp"

namespace treecs {

std::uint64_t Node::last() const {
  if (entries_.empty()) throw DomainError("root node has no last entry");
  return entries_.back();
}

Node Node::pred() const {
  if (entries_.empty()) throw DomainError("pred of the root node");
  return Node(std::vector<std::uint64_t>(entries_.begin(), entries_.end() - 1));
}

Node Node::shift() const {
  if (entries_.empty()) throw DomainError("shift of the root node");
  return Node(std::vector<std::uint64_t>(entries_.begin() + 1, entries_.end()));
}

Node Node::child(std::uint64_t n) const {
  auto e = entries_;
  e.push_back(n);
  return Node(std::move(e));
}

Node Node::concat(const Node& tail) const {
  auto e = entries_;
  e.insert(e.end(), tail.entries_.begin(), tail.entries_.end());
  return Node(std::move(e));
}

Node Node::prefix(std::size_t n) const {
  n = std::min(n, entries_.size());
  return Node(std::vector<std::uint64_t>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool Node::is_prefix_of(const Node& other) const {
  return entries_.size() <= other.entries_.size() &&
         std::equal(entries_.begin(), entries_.end(), other.entries_.begin());
}

bool Node::is_strict_prefix_of(const Node& other) const {
  return entries_.size() < other.entries_.size() && is_prefix_of(other);
}

bool Node::incomparable_with(const Node& other) const {
  return !is_prefix_of(other) && !other.is_prefix_of(*this);
}

std::string Node::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out + ">";
}

// ---------------------------------------------------------------------------

Ordinal child_rank(const Ordinal& parent, std::uint64_t n) {
  if (parent.is_zero()) throw DomainError("rank-0 nodes are leaves");
  if (parent.is_successor()) return predecessor(parent);
  return fundamental_sequence(parent, n);
}

TreeSchema TreeSchema::canonical(Ordinal root_rank) {
  return TreeSchema(Kind::Canonical, std::move(root_rank));
}

TreeSchema TreeSchema::full() { return TreeSchema(Kind::Full, Ordinal{}); }

const Ordinal& TreeSchema::root_rank() const {
  if (is_full()) throw DomainError("the full tree has rank infinity");
  return rank_;
}

bool TreeSchema::contains(const Node& s) const {
  if (is_full()) return true;
  Ordinal r = rank_;
  for (std::size_t i = 0; i < s.length(); ++i) {
    if (r.is_zero()) return false;
    r = child_rank(r, s[i]);
  }
  return true;
}

Ordinal TreeSchema::rank_of(const Node& s) const {
  if (is_full()) throw DomainError("rank is undefined on the full tree (infinite branches)");
  Ordinal r = rank_;
  for (std::size_t i = 0; i < s.length(); ++i) {
    if (r.is_zero()) throw DomainError("node " + s.to_string() + " lies outside " + to_string());
    r = child_rank(r, s[i]);
  }
  return r;
}

bool TreeSchema::is_leaf(const Node& s) const {
  if (is_full()) return false;
  return rank_of(s).is_zero();
}

std::string TreeSchema::to_string() const {
  return is_full() ? std::string("full") : "canonical(" + rank_.to_string() + ")";
}

// ---------------------------------------------------------------------------

std::vector<Node> Trunk::inner_nodes() const {
  std::set<Node> parents;
  for (const Node& s : nodes_) {
    if (!s.is_root()) parents.insert(s.pred());
  }
  return {parents.begin(), parents.end()};
}

std::size_t Trunk::depth() const {
  std::size_t d = 0;
  for (const Node& s : nodes_) d = std::max(d, s.length());
  return d;
}

void Trunk::insert_with_ancestors(const Node& s) {
  for (std::size_t k = 0; k <= s.length(); ++k) nodes_.insert(s.prefix(k));
}

TrunkCheck check_trunk(const TreeSchema& schema, const std::set<Node>& nodes) {
  if (!nodes.contains(Node::root())) {
    return {false, Node::root(), "trunk must contain the root"};
  }
  for (const Node& s : nodes) {
    if (!schema.contains(s)) {
      return {false, s, "node " + s.to_string() + " lies outside " + schema.to_string()};
    }
    if (!s.is_root() && !nodes.contains(s.pred())) {
      return {false, s, "node " + s.to_string() + " is present but its predecessor is missing"};
    }
  }
  return {};
}

Trunk validate_trunk(const TreeSchema& schema, const std::set<Node>& nodes) {
  TrunkCheck check = check_trunk(schema, nodes);
  if (!check.ok) throw DomainError("invalid trunk: " + check.reason);
  return Trunk(nodes);
}

Trunk downward_closure(const std::set<Node>& nodes) {
  Trunk t;
  for (const Node& s : nodes) t.insert_with_ancestors(s);
  return t;
}

bool check_convergence_witness(const Node& s, std::span<const Node> ts) {
  // Walk back from the end to find the longest certifying suffix.
  std::size_t start = ts.size();
  while (start > 0) {
    const Node& t = ts[start - 1];
    if (!s.is_strict_prefix_of(t)) break;
    if (start < ts.size() && !(t[s.length()] < ts[start][s.length()])) break;
    --start;
  }
  return ts.size() - start >= 2;
}

}  // namespace treecs
