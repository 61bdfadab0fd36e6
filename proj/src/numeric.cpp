#include "macc/numeric.hpp"

#include "macc/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace macc {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > limit / base) {
            throw ResourceError("power " + std::to_string(base) + "^" + std::to_string(exp) +
                                " exceeds budget " + std::to_string(limit));
        }
        result *= base;
    }
    if (result > limit) {
        throw ResourceError("power " + std::to_string(base) + "^" + std::to_string(exp) +
                            " exceeds budget " + std::to_string(limit));
    }
    return result;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

BigInt big_pow(std::int64_t base, std::int64_t exp) {
    BigInt result = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        result *= base;
    }
    return result;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    if (b <= 0) {
        throw ArgumentError("ceil_div requires a positive divisor");
    }
    std::int64_t q = a / b;
    if (a % b != 0 && a > 0) {
        ++q;
    }
    return q;
}

std::string to_decimal(const Rational& value, int places) {
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    bool negative = num < 0;
    if (negative) {
        num = -num;
    }
    BigInt scale = big_pow(10, places);
    BigInt scaled = (num * scale * 2 + den) / (den * 2);  // round half up on magnitude
    BigInt whole = scaled / scale;
    BigInt frac = scaled % scale;
    std::string out = (negative && scaled != 0) ? "-" : "";
    out += whole.str();
    if (places > 0) {
        std::string digits = frac.str();
        out += '.';
        out += std::string(static_cast<std::size_t>(places) - digits.size(), '0');
        out += digits;
    }
    return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

double log10_big(const BigInt& value) {
    if (value <= 0) {
        throw ArgumentError("log10 of a non-positive integer");
    }
    // Keep ~17 leading digits for the mantissa.
    std::string digits = value.str();
    std::size_t keep = std::min<std::size_t>(digits.size(), 17);
    double mantissa = std::stod(digits.substr(0, keep));
    return std::log10(mantissa) + static_cast<double>(digits.size() - keep);
}

Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw ArgumentError("not a rational number: '" + std::string(text) + "'");
    };
    if (text.empty()) {
        return fail();
    }
    auto parse_int = [&](std::string_view s) -> BigInt {
        bool neg = false;
        std::size_t pos = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            neg = s[0] == '-';
            pos = 1;
        }
        if (pos >= s.size()) {
            fail();
        }
        BigInt v = 0;
        for (; pos < s.size(); ++pos) {
            if (!std::isdigit(static_cast<unsigned char>(s[pos]))) {
                fail();
            }
            v = v * 10 + (s[pos] - '0');
        }
        return neg ? BigInt(-v) : v;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_int(text.substr(0, slash));
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) {
            fail();
        }
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        std::string_view whole_digits = (!whole.empty() && (whole[0] == '-' || whole[0] == '+'))
                                            ? whole.substr(1)
                                            : whole;
        if (whole_digits.empty() && frac.empty()) {
            fail();
        }
        BigInt w = whole_digits.empty() ? BigInt(0) : parse_int(whole_digits);
        BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
        if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) {
            fail();
        }
        BigInt scale = big_pow(10, static_cast<std::int64_t>(frac.size()));
        Rational value(w * scale + f, scale);
        return neg ? Rational(-value) : value;
    }
    return Rational(parse_int(text));
}

}  // namespace macc
