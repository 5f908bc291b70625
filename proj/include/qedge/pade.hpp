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

// Pade approximants built from exact rational series.

#ifndef QEDGE_PADE_HPP
#define QEDGE_PADE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "qedge/bignum.hpp"
#include "qedge/errors.hpp"

namespace qedge {

/// [n/m] approximant A(z)/B(z) with B(0) = 1. For the even series used here
/// z = x^2, so A_r and B_r multiply even powers of x.
struct PadeApproximant {
    int n = 0;
    int m = 0;
    std::vector<BigRational> numer_exact;  ///< A_0..A_n
    std::vector<BigRational> denom_exact;  ///< B_0 = 1, B_1..B_m
    std::vector<long double> numer;  ///< extended precision: high orders cancel strongly near x = 1
    std::vector<long double> denom;
    std::vector<double> defects;  ///< x in [0, 1 + 1e-6] where the denominator vanishes or changes sign

    bool accepted() const { return defects.empty(); }

    static long double horner(const std::vector<long double>& c, long double z) {
        long double s = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
        return s;
    }
    double operator()(double z) const { return static_cast<double>(horner(numer, z) / horner(denom, z)); }
    double denominator(double z) const { return static_cast<double>(horner(denom, z)); }
    /// Value at x for an even series in z = x^2.
    double at_x(double x) const { return (*this)(x * x); }
};

namespace detail {

inline std::vector<BigRational> solve_exact(std::vector<std::vector<BigRational>> a, std::vector<BigRational> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw DegenerateError("pade: singular matching system");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            BigRational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<BigRational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace detail

/// Denominator roots scan on z in [0, z_max], reported as x = sqrt(z).
inline std::vector<double> scan_defects(const PadeApproximant& p, double x_max = 1.0 + 1e-6, int samples = 4000) {
    std::vector<double> out;
    const double z_max = x_max * x_max;
    double prev = p.denominator(0.0);
    if (!(prev > 0)) out.push_back(0.0);
    for (int i = 1; i <= samples; ++i) {
        const double z = z_max * i / samples;
        const double cur = p.denominator(z);
        if (!(cur > 0) || (prev > 0) != (cur > 0)) {
            out.push_back(std::sqrt(z));
            if (out.size() > 8) break;
        }
        prev = cur;
    }
    return out;
}

/// [n/m] approximant of sum_i series[i] z^i, requiring series.size() >= n + m + 1.
inline PadeApproximant pade(const std::vector<BigRational>& series, int n, int m) {
    if (n < 0 || m < 0) throw DomainError("pade: negative order");
    if (series.size() < static_cast<std::size_t>(n + m + 1)) {
        throw DomainError("pade: series too short for [" + std::to_string(n) + "/" + std::to_string(m) + "]");
    }
    auto c = [&](int i) { return i < 0 ? BigRational(0) : series[static_cast<std::size_t>(i)]; };
    PadeApproximant p;
    p.n = n;
    p.m = m;
    p.denom_exact.assign(1, BigRational(1));
    if (m > 0) {
        // sum_{j=1}^m B_j c_{n+i-j} = -c_{n+i}, i = 1..m.
        std::vector<std::vector<BigRational>> a(static_cast<std::size_t>(m), std::vector<BigRational>(static_cast<std::size_t>(m)));
        std::vector<BigRational> b(static_cast<std::size_t>(m));
        for (int i = 1; i <= m; ++i) {
            for (int j = 1; j <= m; ++j) a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = c(n + i - j);
            b[static_cast<std::size_t>(i - 1)] = -c(n + i);
        }
        auto sol = detail::solve_exact(std::move(a), std::move(b));
        p.denom_exact.insert(p.denom_exact.end(), sol.begin(), sol.end());
    }
    for (int i = 0; i <= n; ++i) {
        BigRational s = 0;
        for (int j = 0; j <= std::min(i, m); ++j) s += p.denom_exact[static_cast<std::size_t>(j)] * c(i - j);
        p.numer_exact.push_back(s);
    }
    // Re-expansion of A/B must reproduce the series through order n + m.
    std::vector<BigRational> re;
    for (int i = 0; i <= n + m; ++i) {
        BigRational s = i <= n ? p.numer_exact[static_cast<std::size_t>(i)] : BigRational(0);
        for (int j = 1; j <= std::min(i, m); ++j) s -= p.denom_exact[static_cast<std::size_t>(j)] * re[static_cast<std::size_t>(i - j)];
        re.push_back(s);
        if (s != c(i)) throw NumericalFailure("pade: re-expansion mismatch at order " + std::to_string(i));
    }
    for (const auto& v : p.numer_exact) p.numer.push_back(to_long_double(v));
    for (const auto& v : p.denom_exact) p.denom.push_back(to_long_double(v));
    p.defects = scan_defects(p);
    return p;
}

/// Label in powers of x for an even series: [2n/2m].
inline std::string even_order_label(int n, int m) {
    return "[" + std::to_string(2 * n) + "/" + std::to_string(2 * m) + "]";
}

}  // namespace qedge

#endif
