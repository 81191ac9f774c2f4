#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "treecs/cantor.hpp"
#include "treecs/ordinal.hpp"
#include "treecs/treespace.hpp"
#include "treecs/trees.hpp"

namespace treecs::testing {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi] by raw modulo, so streams are stable across
/// standard libraries.
std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);

/// Nonzero rational with |numerator| <= max_num and denominator in 1..max_den.
Rational random_rational(Rng& rng, std::int64_t max_num, std::int64_t max_den);

/// Element of the full tree, order 1, with support <= max_support, node length
/// <= max_depth and entries <= max_entry.
Element random_full_element(Rng& rng, std::size_t max_support = 12, std::size_t max_depth = 5,
                            std::uint64_t max_entry = 6, std::int64_t max_num = 100);

StepFunction random_step_function(Rng& rng, std::size_t max_words = 10, std::size_t max_len = 6,
                                  std::int64_t max_num = 20);

/// Random trunk of at most `max_nodes` nodes; children use entries <= max_entry.
Trunk random_trunk(Rng& rng, const TreeSchema& schema, std::size_t max_nodes, std::uint64_t max_entry = 3);

/// Random element supported on the trunk in every copy.
Element random_element_on(Rng& rng, const TreeSchema& schema, unsigned order, const Trunk& trunk,
                          std::int64_t max_num = 9);

/// Every element with coefficients in [lo, hi] on the given nodes, in odometer order.
std::vector<Element> all_elements(const TreeSchema& schema, const std::vector<Node>& nodes, int lo, int hi);

/// Norm computed by brute force over every node of the box of lengths
/// <= max_len and entries <= max_entry (callers pick a box containing the
/// support plus one extra layer).
Rational brute_norm(const Element& a, std::size_t max_len, std::uint64_t max_entry);

// Ordinals below w^3 as triples (x, y, z) = w^2 x + w y + z.
struct Triple {
  std::uint64_t x = 0, y = 0, z = 0;
  auto operator<=>(const Triple&) const = default;
};
std::optional<Triple> to_triple(const Ordinal& a);
Ordinal from_triple(const Triple& t);
Triple triple_add(const Triple& a, const Triple& b);

/// Cantor-Bendixson data of [1, g] by iterating the derivative: remove the
/// isolated (successor) points and rescale the remaining limit points.
struct DerivativeOracle {
  std::uint64_t height = 0;  // number of nonempty derivatives
  std::uint64_t last_size = 0;
};
DerivativeOracle derivative_oracle(const Triple& g);
/// Number of derivatives of [1, g] that still contain the point p.
std::uint64_t cb_rank_oracle(const Triple& p);

}  // namespace treecs::testing
