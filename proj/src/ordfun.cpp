#include "treecs/ordfun.hpp"

#include <algorithm>

#include "treecs/error.hpp"

namespace treecs {

OrdStepFunction::OrdStepFunction(Ordinal top, const Rational& c) : top_(std::move(top)) {
  if (top_.is_zero()) throw DomainError("ordinal step function needs a top >= 1");
  pieces_.push_back({Ordinal{}, top_, c});
}

OrdStepFunction OrdStepFunction::from_pieces(Ordinal top, std::vector<OrdPiece> pieces) {
  if (top.is_zero()) throw DomainError("ordinal step function needs a top >= 1");
  if (pieces.empty()) throw DomainError("ordinal step function needs at least one piece");
  if (!pieces.front().lo.is_zero()) throw DomainError("first piece must start at 0");
  if (pieces.back().hi != top) throw DomainError("last piece must end at the top " + top.to_string());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (!(pieces[k].lo < pieces[k].hi)) {
      throw DomainError("empty piece (" + pieces[k].lo.to_string() + ", " + pieces[k].hi.to_string() + "]");
    }
    if (k > 0 && pieces[k].lo != pieces[k - 1].hi) {
      throw DomainError("pieces are not contiguous at " + pieces[k].lo.to_string());
    }
  }
  OrdStepFunction f;
  f.top_ = std::move(top);
  f.pieces_ = std::move(pieces);
  f.merge_neighbours();
  return f;
}

OrdStepFunction OrdStepFunction::from_intervals(
    Ordinal top, const std::vector<std::pair<OrdInterval, Rational>>& parts) {
  std::vector<Ordinal> cuts{Ordinal{}, top};
  for (const auto& [iv, c] : parts) {
    if (!(iv.lo < iv.hi) || iv.hi > top) throw DomainError("interval outside (0, top]");
    cuts.push_back(iv.lo);
    cuts.push_back(iv.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<OrdPiece> pieces;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rational v(0);
    for (const auto& [iv, c] : parts) {
      if (iv.lo <= cuts[k] && cuts[k + 1] <= iv.hi) v += c;
    }
    pieces.push_back({cuts[k], cuts[k + 1], v});
  }
  return from_pieces(std::move(top), std::move(pieces));
}

void OrdStepFunction::merge_neighbours() {
  std::vector<OrdPiece> out;
  for (auto& p : pieces_) {
    if (!out.empty() && out.back().value == p.value) {
      out.back().hi = std::move(p.hi);
    } else {
      out.push_back(std::move(p));
    }
  }
  pieces_ = std::move(out);
}

Rational ordfun_eval(const OrdStepFunction& f, const Ordinal& g) {
  if (g.is_zero() || g > f.top()) {
    throw DomainError("ordinal " + g.to_string() + " outside [1, " + f.top().to_string() + "]");
  }
  const auto& ps = f.pieces();
  auto it = std::lower_bound(ps.begin(), ps.end(), g,
                             [](const OrdPiece& p, const Ordinal& x) { return p.hi < x; });
  return it->value;
}

Rational ordfun_sup_norm(const OrdStepFunction& f) {
  Rational best(0);
  for (const auto& p : f.pieces()) best = max_of(best, abs_value(p.value));
  return best;
}

OrdStepFunction ordfun_pos_part(const OrdStepFunction& f) {
  std::vector<OrdPiece> ps = f.pieces();
  for (auto& p : ps) p.value = positive_part(p.value);
  return OrdStepFunction::from_pieces(f.top(), std::move(ps));
}

OrdStepFunction ordfun_lattice_sup(const OrdStepFunction& f, const OrdStepFunction& g) {
  if (f.top() != g.top()) throw DomainError("ordinal step functions on different domains");
  std::vector<Ordinal> cuts{Ordinal{}};
  for (const auto& p : f.pieces()) cuts.push_back(p.hi);
  for (const auto& p : g.pieces()) cuts.push_back(p.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<OrdPiece> ps;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Ordinal& hi = cuts[k + 1];
    ps.push_back({cuts[k], hi, max_of(ordfun_eval(f, hi), ordfun_eval(g, hi))});
  }
  return OrdStepFunction::from_pieces(f.top(), std::move(ps));
}

// ---------------------------------------------------------------------------

OrdInterval node_interval(const TreeSchema& schema, const Node& s, unsigned copy) {
  if (schema.is_full()) throw DomainError("ordinal intervals need a canonical tree, not the full tree");
  if (copy == 0) throw DomainError("copy index starts at 1");
  Ordinal rank = schema.root_rank();
  const Ordinal block = omega_pow(rank);
  Ordinal start = nat_mul(block, copy - 1);
  for (std::size_t k = 0; k < s.length(); ++k) {
    if (rank.is_zero()) throw DomainError("node " + s.to_string() + " lies outside " + schema.to_string());
    const std::uint64_t n = s[k];
    if (rank.is_successor()) {
      const Ordinal beta = predecessor(rank);
      start = add(start, nat_mul(omega_pow(beta), n));
      rank = beta;
    } else {
      if (n >= 1) start = add(start, omega_pow(fundamental_sequence(rank, n - 1)));
      rank = fundamental_sequence(rank, n);
    }
  }
  Ordinal end = add(start, omega_pow(rank));
  return {std::move(start), std::move(end)};
}

Ordinal rho_node(const Node& s, unsigned copy, const Ordinal& alpha, unsigned order) {
  if (copy == 0 || copy > order) throw DomainError("copy index outside 1.." + std::to_string(order));
  return node_interval(TreeSchema::canonical(alpha), s, copy).hi;
}

OrdStepFunction embed_ordinal(const Element& a) {
  const TreeSchema& schema = a.schema();
  if (schema.is_full()) throw DomainError("ordinal embedding needs a canonical tree; use the Cantor embedding");
  const Ordinal top = nat_mul(omega_pow(schema.root_rank()), a.order());
  std::vector<std::pair<OrdInterval, Rational>> parts;
  for (unsigned i = 1; i <= a.order(); ++i) {
    for (const auto& [s, c] : a.copy_coeffs(i)) parts.emplace_back(node_interval(schema, s, i), c);
  }
  return OrdStepFunction::from_intervals(top, parts);
}

}  // namespace treecs
