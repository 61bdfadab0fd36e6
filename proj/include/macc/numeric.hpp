#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace macc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

// b^e, throws ResourceError once the result passes `limit`.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit);

BigInt binomial(std::int64_t n, std::int64_t k);
BigInt big_pow(std::int64_t base, std::int64_t exp);

// ceil(a / b) for b > 0.
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

// Decimal rendering rounded half away from zero to `places` digits.
std::string to_decimal(const Rational& value, int places);
double to_double(const Rational& value);
double log10_big(const BigInt& value);

// Parses "3", "-2/7", "0.16" or "1e-2"-free decimals exactly.
Rational parse_rational(std::string_view text);

}  // namespace macc
