#include "treecs/ordinal.hpp"

#include <cctype>
#include <limits>

#include "treecs/error.hpp"

namespace treecs {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw DomainError("ordinal coefficient overflow");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
    throw DomainError("ordinal coefficient overflow");
  }
  return a * b;
}

}  // namespace

Ordinal Ordinal::natural(std::uint64_t n) {
  if (n == 0) return Ordinal{};
  return Ordinal({Term{Ordinal{}, n}});
}

Ordinal Ordinal::omega() { return Ordinal({Term{natural(1), 1}}); }

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw DomainError("zero coefficient in normal form");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw DomainError("exponents must strictly decrease in normal form");
    }
  }
  return Ordinal(std::move(terms));
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool Ordinal::is_limit() const {
  return !terms_.empty() && !terms_.back().exponent.is_zero();
}

std::uint64_t Ordinal::to_natural() const {
  if (!is_finite()) throw DomainError("ordinal " + to_string() + " is not finite");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

Ordinal Ordinal::leading_exponent() const {
  return terms_.empty() ? Ordinal{} : terms_.front().exponent;
}

std::uint64_t Ordinal::leading_coefficient() const {
  return terms_.empty() ? 0 : terms_.front().coefficient;
}

Ordinal Ordinal::last_exponent() const {
  if (terms_.empty()) throw DomainError("zero ordinal has no last term");
  return terms_.back().exponent;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
    if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (i > 0) out += '+';
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent != natural(1)) {
      out += '^';
      if (t.exponent.is_finite()) {
        out += std::to_string(t.exponent.to_natural());
      } else {
        out += '(' + t.exponent.to_string() + ')';
      }
    }
    if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal value = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return value;
  }

 private:
  Ordinal parse_sum() {
    skip_ws();
    if (peek() == '0' && !next_is_digit(1)) {
      ++pos_;
      return Ordinal{};
    }
    std::vector<Ordinal::Term> terms;
    terms.push_back(parse_term());
    while (true) {
      skip_ws();
      if (peek() != '+') break;
      ++pos_;
      terms.push_back(parse_term());
    }
    try {
      return Ordinal::from_terms(std::move(terms));
    } catch (const DomainError& e) {
      fail(e.what());
    }
  }

  Ordinal::Term parse_term() {
    skip_ws();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::uint64_t n = parse_natural();
      if (n == 0) fail("zero term inside a sum");
      return {Ordinal{}, n};
    }
    if (peek() != 'w') fail("expected 'w' or a natural");
    ++pos_;
    Ordinal exponent = Ordinal::natural(1);
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (peek() == '(') {
        ++pos_;
        exponent = parse_sum();
        skip_ws();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
      } else if (peek() == 'w') {
        ++pos_;
        exponent = Ordinal::omega();
      } else {
        exponent = Ordinal::natural(parse_natural());
      }
    }
    std::uint64_t coefficient = 1;
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      coefficient = parse_natural();
      if (coefficient == 0) fail("zero coefficient");
    }
    return {std::move(exponent), coefficient};
  }

  std::uint64_t parse_natural() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a natural number");
    std::uint64_t value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const auto digit = static_cast<std::uint64_t>(peek() - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("natural overflow");
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool next_is_digit(std::size_t offset) const {
    return pos_ + offset < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_ + offset]));
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("ordinal '" + std::string(text_) + "': " + why + " at offset " +
                     std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) { return OrdinalParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Arithmetic

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms_.front().exponent;
  std::vector<Ordinal::Term> out;
  std::uint64_t carried = 0;
  for (const auto& t : a.terms_) {
    const auto c = t.exponent <=> lead;
    if (c > 0) {
      out.push_back(t);
    } else {
      if (c == 0) carried = t.coefficient;
      break;
    }
  }
  out.push_back({lead, checked_add(carried, b.terms_.front().coefficient)});
  out.insert(out.end(), b.terms_.begin() + 1, b.terms_.end());
  return Ordinal(std::move(out));
}

Ordinal nat_mul(const Ordinal& a, std::uint64_t n) {
  if (n == 0 || a.is_zero()) return Ordinal{};
  std::vector<Ordinal::Term> out = a.terms_;
  out.front().coefficient = checked_mul(out.front().coefficient, n);
  return Ordinal(std::move(out));
}

Ordinal omega_pow(const Ordinal& a) { return Ordinal({Ordinal::Term{a, 1}}); }

Ordinal predecessor(const Ordinal& a) {
  if (!a.is_successor()) throw DomainError("ordinal " + a.to_string() + " is not a successor");
  std::vector<Ordinal::Term> out = a.terms_;
  if (--out.back().coefficient == 0) out.pop_back();
  return Ordinal(std::move(out));
}

Ordinal fundamental_sequence(const Ordinal& lambda, std::uint64_t n) {
  if (!lambda.is_limit()) {
    throw DomainError("fundamental sequence requires a limit ordinal, got " + lambda.to_string());
  }
  std::vector<Ordinal::Term> head = lambda.terms();
  const Ordinal g = head.back().exponent;
  if (--head.back().coefficient == 0) head.pop_back();
  const Ordinal delta = Ordinal::from_terms(std::move(head));
  if (g.is_successor()) {
    return add(delta, nat_mul(omega_pow(predecessor(g)), checked_add(n, 1)));
  }
  return add(delta, omega_pow(fundamental_sequence(g, n)));
}

Ordinal cb_rank_of_point(const Ordinal& gamma) {
  if (gamma.is_zero()) throw DomainError("cb rank is defined for points >= 1");
  return gamma.last_exponent();
}

MsNormalForm ms_normal_form(const Ordinal& gamma) {
  if (gamma.is_zero()) throw DomainError("normal form is defined for intervals [1, gamma], gamma >= 1");
  MsNormalForm out;
  out.alpha = gamma.leading_exponent();
  out.m = gamma.leading_coefficient();
  out.height = add(out.alpha, Ordinal::natural(1));
  return out;
}

}  // namespace treecs
