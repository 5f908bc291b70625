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

#ifndef QEDGE_SPECIAL_FUNCTIONS_HPP
#define QEDGE_SPECIAL_FUNCTIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qedge/errors.hpp"

namespace qedge {

/// Arithmetic-geometric mean of two non-negative numbers.
inline double agm(double a, double b) {
    for (int i = 0; i < 64; ++i) {
        if (std::abs(a - b) <= 1e-16 * a) break;
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * (a + b);
}

/// Complete elliptic integral of the first kind in the parameter convention,
/// K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt, for 0 <= m < 1.
inline double elliptic_k(double m) {
    if (!(m >= 0.0) || !(m < 1.0)) throw DomainError("elliptic_k: parameter must lie in [0, 1), got " + std::to_string(m));
    return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(1.0 - m)));
}

/// K expressed through the complementary parameter m1 = 1 - m; keeps full
/// relative accuracy as m -> 1.
inline double elliptic_k_complementary(double m1) {
    if (!(m1 > 0.0) || !(m1 <= 1.0)) throw DomainError("elliptic_k_complementary: m1 must lie in (0, 1]");
    return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(m1)));
}

/// Dawson's integral F(y) = exp(-y^2) int_0^y exp(t^2) dt for y >= 0.
inline double dawson(double y) {
    if (!(y >= 0.0)) throw DomainError("dawson: argument must be non-negative");
    if (y == 0.0) return 0.0;
    const double y2 = y * y;
    if (y <= 6.0) {
        // exp(-y^2) sum_n y^{2n+1} / (n! (2n+1)); all terms positive.
        double term = y;  // y^{2n+1} / n!
        double sum = y;
        for (int n = 1; n < 400; ++n) {
            term *= y2 / n;
            double add = term / (2 * n + 1);
            sum += add;
            if (add < 1e-17 * sum) break;
        }
        return std::exp(-y2) * sum;
    }
    // 1/(2y) sum_n (2n-1)!! / (2y^2)^n, truncated at the smallest term.
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 200; ++n) {
        double next = term * (2 * n - 1) / (2 * y2);
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / (2 * y);
}

/// Partial sums of 2 y F(y) = sum_{l>=1} (-1)^{l+1} (2y^2)^l / (2l-1)!!.
inline double dawson_series_partial(double y, int terms) {
    const double z = 2 * y * y;
    double term = 1.0;
    double sum = 0.0;
    for (int l = 1; l <= terms; ++l) {
        term *= z / (2 * l - 1);
        sum += (l % 2 ? term : -term);
    }
    return sum;
}

struct Quadrature {
    double value = 0;
    double error = 0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b].
template <typename F>
Quadrature integrate(F&& f, double a, double b, double abs_tol = 1e-10, unsigned max_depth = 20) {
    Quadrature q;
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    // Boost stops on a relative criterion; size it from a one-panel L1 norm.
    double l1 = 0;
    GK::integrate(f, a, b, 0, 0.0, nullptr, &l1);
    const double rel = std::clamp(1e-2 * abs_tol / std::max(l1, 1e-300), 4 * std::numeric_limits<double>::epsilon(), 1e-3);
    double leaf_err = 0;
    q.value = GK::integrate(f, a, b, max_depth, rel, &leaf_err);
    // Boost sums |Kronrod - Gauss| over leaves mapped to [-1, 1]; each leaf
    // half-width is at most (b - a)/2, which bounds the absolute error.
    q.error = leaf_err * 0.5 * std::abs(b - a);
    if (!std::isfinite(q.value)) throw NumericalFailure("integrate: non-finite result");
    if (q.error > abs_tol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", q.error);
        throw NumericalFailure(std::string("integrate: error estimate ") + buf + " above tolerance");
    }
    return q;
}

}  // namespace qedge

#endif
