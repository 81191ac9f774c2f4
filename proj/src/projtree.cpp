#include "treecs/projtree.hpp"

#include <algorithm>

#include "treecs/error.hpp"

namespace treecs {

HostFunctional HostFunctional::point_mass(const CantorPoint& x, const Rational& mass) {
  HostFunctional mu;
  mu.add_mass(x, mass);
  return mu;
}

void HostFunctional::add_mass(const CantorPoint& x, const Rational& mass) {
  if (mass == 0) return;
  auto [it, inserted] = atoms_.try_emplace(x, mass);
  if (!inserted) {
    it->second += mass;
    if (it->second == 0) atoms_.erase(it);
  }
}

Rational HostFunctional::pair(const StepFunction& f) const {
  Rational sum(0);
  for (const auto& [x, m] : atoms_) sum += m * step_eval(f, x);
  return sum;
}

Rational HostFunctional::norm() const {
  Rational sum(0);
  for (const auto& [x, m] : atoms_) sum += abs_value(m);
  return sum;
}

bool HostFunctional::is_positive() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const auto& kv) { return kv.second > 0; });
}

HostFunctional& HostFunctional::operator-=(const HostFunctional& other) {
  for (const auto& [x, m] : other.atoms_) add_mass(x, -m);
  return *this;
}

// ---------------------------------------------------------------------------

std::vector<Slot> ProjTreeData::slots() const {
  std::vector<Slot> out;
  for (unsigned i = 1; i <= order; ++i) {
    for (const Node& s : trunk.nodes()) out.emplace_back(s, i);
  }
  return out;
}

void ProjTreeData::validate() const {
  if (order == 0) throw DomainError("order must be at least 1");
  const TrunkCheck check = check_trunk(schema, trunk.nodes());
  if (!check.ok) throw DomainError("invalid trunk: " + check.reason);
  for (const Slot& slot : slots()) {
    const std::string where = slot.first.to_string() + " copy " + std::to_string(slot.second);
    if (!vectors.contains(slot)) throw DomainError("missing vector at " + where);
    if (!functionals.contains(slot)) throw DomainError("missing functional at " + where);
  }
}

Rational ProjTreeData::norm_bound() const {
  Rational best(0);
  for (const auto& [slot, mu] : functionals) best = max_of(best, mu.norm());
  return best;
}

BiorthogonalityReport verify_biorthogonality(const ProjTreeData& data) {
  data.validate();
  BiorthogonalityReport rep;
  rep.slots = data.slots();
  for (const Slot& s : rep.slots) {
    const HostFunctional& mu = data.functionals.at(s);
    std::vector<Rational> row;
    for (const Slot& t : rep.slots) {
      Rational got = mu.pair(data.vectors.at(t));
      const Rational expected(s.second == t.second && t.first.is_prefix_of(s.first) ? 1 : 0);
      if (got != expected) rep.violations.push_back({s, t, got, expected});
      row.push_back(std::move(got));
    }
    rep.matrix.push_back(std::move(row));
  }
  return rep;
}

Element build_S(const ProjTreeData& data, const StepFunction& g) {
  data.validate();
  Element out(data.schema, data.order);
  for (const auto& [s, i] : data.slots()) {
    Rational v = data.functionals.at({s, i}).pair(g);
    if (!s.is_root()) v -= data.functionals.at({s.pred(), i}).pair(g);
    out.set(s, i, v);
  }
  return out;
}

StepFunction project(const ProjTreeData& data, const StepFunction& g) {
  const auto rep = verify_biorthogonality(data);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw DomainError("data fails biorthogonality at rho" + v.s.first.to_string() + " / e" +
                      v.t.first.to_string() + ": " + to_string(v.got) + " != " + to_string(v.expected));
  }
  const Element coeffs = build_S(data, g);
  StepFunction out;
  for (unsigned i = 1; i <= data.order; ++i) {
    for (const auto& [s, c] : coeffs.copy_coeffs(i)) out += c * data.vectors.at({s, i});
  }
  return canonical(out);
}

ProjTreeData canonical_projtree(const Trunk& trunk) {
  ProjTreeData data;
  data.trunk = trunk;
  for (const Node& s : trunk.nodes()) {
    data.vectors.emplace(Slot{s, 1}, StepFunction::indicator(q_encode(s)));
    data.functionals.emplace(Slot{s, 1}, HostFunctional::point_mass(r_encode(s)));
  }
  return data;
}

// ---------------------------------------------------------------------------

bool RegularityReport::consistent() const {
  return std::none_of(sequences.begin(), sequences.end(), [](const auto& q) { return q.flagged; });
}

namespace {

void judge(RegularitySequence& q) {
  if (q.values.size() < 2) {
    q.insufficient = true;
    return;
  }
  const Rational& last = q.values.back();
  q.flagged = last != 0 && std::all_of(q.values.begin(), q.values.end() - 1,
                                       [&](const Rational& v) { return v <= last; });
}

}  // namespace

RegularityReport check_rho_regularity(const ProjTreeData& data, const std::vector<StepFunction>& probes) {
  data.validate();
  RegularityReport rep;
  rep.header =
      "finite-depth consistency only: sequences come from the trunk and cannot certify a limit";
  const auto inner = data.trunk.inner_nodes();
  const std::size_t depth = data.trunk.depth();

  for (std::size_t p = 0; p < probes.size(); ++p) {
    const StepFunction& g = probes[p];
    for (unsigned i = 1; i <= data.order; ++i) {
      std::map<Node, Rational> value;
      for (const Node& t : data.trunk.nodes()) value.emplace(t, data.functionals.at({t, i}).pair(g));

      for (const Node& s : inner) {
        RegularitySequence q{p, i, s, {}, false, false};
        std::map<std::uint64_t, Rational> by_child;
        for (const auto& [t, v] : value) {
          if (!s.is_strict_prefix_of(t)) continue;
          const std::uint64_t n = t[s.length()];
          Rational d = abs_value(v - value.at(s));
          auto [it, inserted] = by_child.try_emplace(n, d);
          if (!inserted) it->second = max_of(it->second, d);
        }
        for (auto& [n, d] : by_child) q.values.push_back(std::move(d));
        judge(q);
        rep.sequences.push_back(std::move(q));
      }

      RegularitySequence len{p, i, std::nullopt, {}, false, false};
      // Nodes at the full trunk depth have no strict extension, so stop one short.
      for (std::size_t n = 0; n < depth; ++n) {
        Rational best(0);
        for (const auto& [s, vs] : value) {
          if (s.length() < n) continue;
          for (auto it = value.lower_bound(s); it != value.end() && s.is_prefix_of(it->first); ++it) {
            best = max_of(best, abs_value(it->second - vs));
          }
        }
        len.values.push_back(std::move(best));
      }
      judge(len);
      rep.sequences.push_back(std::move(len));
    }
  }
  return rep;
}

}  // namespace treecs
