// Copyright 2026 The qedge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEDGE_BIGNUM_HPP
#define QEDGE_BIGNUM_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "qedge/errors.hpp"

namespace qedge {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::int64_t bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return static_cast<std::int64_t>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

// Top 64 bits of |x| as a double in [2^63, 2^64), together with the shift applied.
inline double leading_mantissa(const BigInt& x, std::int64_t& shift) {
    BigInt a = boost::multiprecision::abs(x);
    std::int64_t bits = bit_length(a);
    shift = bits > 64 ? bits - 64 : 0;
    if (shift > 0) a >>= static_cast<unsigned>(shift);
    return static_cast<double>(static_cast<std::uint64_t>(a));
}

}  // namespace detail

namespace detail {

// num/den rounded to Real; operand magnitudes may be far beyond Real's range.
template <typename Real>
Real ratio_to_float(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("to_double: zero denominator");
    if (num == 0) return Real(0);
    std::int64_t nb = bit_length(num);
    std::int64_t db = bit_length(den);
    // Scale so the integer quotient carries 64+ significant bits.
    std::int64_t shift = 66 - (nb - db);
    BigInt n = boost::multiprecision::abs(num);
    BigInt d = boost::multiprecision::abs(den);
    if (shift > 0) n <<= static_cast<unsigned>(shift);
    else if (shift < 0) d <<= static_cast<unsigned>(-shift);
    BigInt q = n / d;
    std::int64_t qshift = 0;
    BigInt a = q;
    std::int64_t bits = bit_length(a);
    qshift = bits > 64 ? bits - 64 : 0;
    if (qshift > 0) a >>= static_cast<unsigned>(qshift);
    Real m = static_cast<Real>(static_cast<std::uint64_t>(a));
    Real v = std::ldexp(m, static_cast<int>(qshift - shift));
    bool negative = (num < 0) != (den < 0);
    return negative ? -v : v;
}

}  // namespace detail

/// Nearest double to num/den, valid whenever the quotient is within double range.
/// Operand magnitudes may be far beyond double range.
inline double to_double(const BigInt& num, const BigInt& den) { return detail::ratio_to_float<double>(num, den); }

inline long double to_long_double(const BigRational& r) {
    return detail::ratio_to_float<long double>(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline double to_double(const BigRational& r) {
    return to_double(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline double to_double(const BigInt& x) { return to_double(x, BigInt(1)); }

/// Natural log of a positive big integer; exact operand, ~1 ulp result.
inline double log_big(const BigInt& x) {
    if (x <= 0) throw DomainError("log_big: non-positive argument");
    std::int64_t shift = 0;
    double m = detail::leading_mantissa(x, shift);
    return std::log(m) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_big(const BigRational& r) {
    return log_big(boost::multiprecision::numerator(r)) - log_big(boost::multiprecision::denominator(r));
}

/// binom(n, k) exactly; zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

/// Parses "p/q" or "p" into a canonical rational.
inline BigRational parse_rational(std::string_view text) {
    auto strip = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = strip(text);
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return BigRational(BigInt(std::string(text)));
        BigInt p(std::string(strip(text.substr(0, slash))));
        BigInt q(std::string(strip(text.substr(slash + 1))));
        if (q == 0) throw DataError("zero denominator in '" + std::string(text) + "'");
        return BigRational(p, q);
    } catch (const std::runtime_error& e) {
        throw DataError("cannot parse rational '" + std::string(text) + "': " + e.what());
    }
}

}  // namespace qedge

#endif
