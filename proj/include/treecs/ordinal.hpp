#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace treecs {

/// Ordinal below epsilon_0 in Cantor normal form
///   w^(e_1)*c_1 + ... + w^(e_k)*c_k,  e_1 > ... > e_k,  c_i >= 1.
/// The empty term list is 0. Exponents are themselves ordinals in normal form,
/// so the representation is finite for every value.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;

  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();

  /// Validates strictly decreasing exponents and positive coefficients.
  /// Throws DomainError on non-normal input.
  static Ordinal from_terms(std::vector<Term> terms);

  /// Parses `w^(E)*c + ... + k`. Also accepts `w`, `w^n`, `w^w` shorthands.
  /// Throws ParseError on malformed or non-normal text.
  static Ordinal parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const;

  /// Value of a finite ordinal. Throws DomainError otherwise.
  std::uint64_t to_natural() const;

  /// Leading (largest) exponent; 0 for the zero ordinal.
  Ordinal leading_exponent() const;
  std::uint64_t leading_coefficient() const;
  /// Exponent of the last (smallest) term. Requires a nonzero ordinal.
  Ordinal last_exponent() const;

  /// Canonical text: terms joined by '+', exponents other than naturals in
  /// parentheses, e.g. "w^(w+1)*2+w^2+w*3+4".
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  explicit Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {}

  std::vector<Term> terms_;

  friend Ordinal add(const Ordinal& a, const Ordinal& b);
  friend Ordinal nat_mul(const Ordinal& a, std::uint64_t n);
  friend Ordinal omega_pow(const Ordinal& a);
  friend Ordinal predecessor(const Ordinal& a);
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Ordinal sum a + b; terms of a below the leading exponent of b are absorbed.
Ordinal add(const Ordinal& a, const Ordinal& b);

/// a * n for a natural n >= 1 (n = 0 gives 0).
Ordinal nat_mul(const Ordinal& a, std::uint64_t n);

/// w^a.
Ordinal omega_pow(const Ordinal& a);

/// beta where a = beta + 1. Throws DomainError unless a is a successor.
Ordinal predecessor(const Ordinal& a);

/// lambda[n] for a limit lambda:
///   lambda = delta + w^(g+1)  ->  delta + w^g * (n+1)
///   lambda = delta + w^g, g limit  ->  delta + w^(g[n])
Ordinal fundamental_sequence(const Ordinal& lambda, std::uint64_t n);

/// Cantor-Bendixson rank of the point gamma >= 1 of an ordinal interval:
/// the exponent of the last normal-form term.
Ordinal cb_rank_of_point(const Ordinal& gamma);

struct MsNormalForm {
  Ordinal alpha;
  std::uint64_t m = 0;
  Ordinal height;  // alpha + 1
};

/// [1, gamma] is homeomorphic to [1, w^alpha * m].
MsNormalForm ms_normal_form(const Ordinal& gamma);

}  // namespace treecs
