#include "treecs/rational.hpp"

#include <cctype>

#include "treecs/error.hpp"

namespace treecs {

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class p(n, 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace treecs
