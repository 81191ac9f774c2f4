#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treecs/rational.hpp"
#include "treecs/treespace.hpp"
#include "treecs/trees.hpp"

namespace treecs {

/// Finite 0/1 word; stored as a string of '0'/'1' characters.
class BinWord {
 public:
  BinWord() = default;
  /// Throws ParseError on characters other than '0' and '1'.
  static BinWord parse(std::string_view bits);

  std::size_t length() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }
  const std::string& bits() const { return bits_; }

  void push_back(int bit) { bits_.push_back(bit ? '1' : '0'); }
  BinWord appended(int bit) const;
  bool is_prefix_of(const BinWord& other) const;
  bool is_strict_prefix_of(const BinWord& other) const;

  friend auto operator<=>(const BinWord&, const BinWord&) = default;
  friend bool operator==(const BinWord&, const BinWord&) = default;

 private:
  explicit BinWord(std::string bits) : bits_(std::move(bits)) {}
  std::string bits_;
};

/// Eventually constant point of 2^w: `prefix` followed by `tail` forever.
/// Canonical: the prefix never ends with the tail bit.
class CantorPoint {
 public:
  CantorPoint(BinWord prefix, int tail);

  const BinWord& prefix() const { return prefix_; }
  int tail() const { return tail_; }
  int bit(std::size_t k) const { return k < prefix_.length() ? prefix_[k] : tail_; }
  bool in_cylinder(const BinWord& w) const;

  friend auto operator<=>(const CantorPoint&, const CantorPoint&) = default;
  friend bool operator==(const CantorPoint&, const CantorPoint&) = default;

 private:
  BinWord prefix_;
  int tail_;
};

/// Finite combination sum_w c_w * chi_[w] of cylinder indicators.
class StepFunction {
 public:
  using Terms = std::map<BinWord, Rational>;

  StepFunction() = default;
  static StepFunction indicator(const BinWord& w, const Rational& c = Rational(1));

  const Terms& terms() const { return terms_; }
  bool has_no_terms() const { return terms_.empty(); }
  void add_term(const BinWord& w, const Rational& c);

  StepFunction& operator+=(const StepFunction& other);
  StepFunction& operator-=(const StepFunction& other);
  StepFunction& operator*=(const Rational& k);
  friend StepFunction operator+(StepFunction a, const StepFunction& b) { return a += b; }
  friend StepFunction operator-(StepFunction a, const StepFunction& b) { return a -= b; }
  friend StepFunction operator*(const Rational& k, StepFunction a) { return a *= k; }

  /// Structural equality of the term maps. Use `same_function` for equality
  /// as functions on 2^w.
  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  Terms terms_;
};

/// One cell of the disjoint form: the function equals `value` on [word].
struct Atom {
  BinWord word;
  Rational value;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Coarsest partition of 2^w into cylinders on which f is constant. Unique for
/// each function, so two step functions agree iff their atom lists agree.
std::vector<Atom> atoms(const StepFunction& f);

/// Disjoint form of f with zero cells dropped.
StepFunction canonical(const StepFunction& f);
bool same_function(const StepFunction& f, const StepFunction& g);

BinWord q_encode(const Node& s);
CantorPoint r_encode(const Node& s);

/// 2^{-k} at the first index k where x and y differ; 0 when equal.
Rational cantor_metric(const CantorPoint& x, const CantorPoint& y);

Rational step_eval(const StepFunction& f, const CantorPoint& x);
Rational step_sup_norm(const StepFunction& f);
StepFunction step_pos_part(const StepFunction& f);
StepFunction step_lattice_sup(const StepFunction& f, const StepFunction& g);
/// f <= g pointwise.
bool step_leq(const StepFunction& f, const StepFunction& g);

/// T(a) = sum_s a_s chi_[Q(s)]. Requires the full schema and order 1.
StepFunction embed(const Element& a);

/// a_root = f(R(root)), a_s = f(R(s)) - f(R(pred s)).
///
/// R(s) and R(pred s) first differ right after the word Q(pred s) 1^{last s}, so
/// a_s can be nonzero only when that word is a proper prefix of some cell of the
/// disjoint form. The search visits exactly those nodes.
Element inverse_embed(const StepFunction& f);

/// Both sides of delta~_s(chi~_t) = <delta_{R(s)}, T(chi~_t)>.
struct DualityValues {
  Rational tree_side;
  Rational cantor_side;
  bool holds() const { return tree_side == cantor_side; }
};
DualityValues duality_check(const Node& s, const Node& t);

/// Neither word extends the other.
bool cylinders_disjoint(const BinWord& u, const BinWord& v);

}  // namespace treecs
