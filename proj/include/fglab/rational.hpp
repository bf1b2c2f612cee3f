#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fglab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" or "p" for integers.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// Smallest integer >= q.
std::int64_t ceil_to_int(const Rational& q);
/// Largest integer <= q.
std::int64_t floor_to_int(const Rational& q);

}  // namespace fglab
