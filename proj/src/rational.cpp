#include "fglab/rational.hpp"

#include "fglab/error.hpp"

namespace fglab {

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ParseError, "not a rational: '" + text + "'");
  }
}

std::int64_t floor_to_int(const Rational& q) {
  BigInt n = numerator(q);
  BigInt d = denominator(q);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return static_cast<std::int64_t>(f);
}

std::int64_t ceil_to_int(const Rational& q) {
  return -floor_to_int(-q);
}

}  // namespace fglab
