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

// Large-N limits of the success probability.
//
// p0(d) = int_0^1 sum_r a_r x^{2r} dx is evaluated two ways from the exact
// coefficient tables: integrating diagonal Pade approximants of the series,
// and Pade-accelerating the primitive Q(x) = sum_r a_r x^{2r+1}/(2r+1) at
// x = 1. p0_known(d) is the known-states average, an upper bound.

#ifndef QEDGE_ASYMPTOTICS_HPP
#define QEDGE_ASYMPTOTICS_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qedge/coefficients.hpp"
#include "qedge/discrimination.hpp"
#include "qedge/gram.hpp"
#include "qedge/pade.hpp"
#include "qedge/parallel.hpp"
#include "qedge/special_functions.hpp"

namespace qedge {

struct PadeEstimate {
    double value = 0;
    double error = std::numeric_limits<double>::infinity();  ///< spread to the next accepted lower order
    std::string order;                                       ///< order used, in powers of x
    std::string reference_order;                             ///< order the spread was taken against
    double reference_value = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> rejected;  ///< orders skipped, with reasons
};

namespace detail {

inline std::vector<BigRational> even_series(const RationalCoefficientTable& t) {
    std::vector<BigRational> s{BigRational(0)};
    s.insert(s.end(), t.coeffs.begin(), t.coeffs.end());
    return s;
}

inline std::string describe_defects(const PadeApproximant& p) {
    std::string s = "denominator root near x=";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", p.defects.front());
    return s + buf;
}

inline PadeEstimate pick_highest(const std::vector<std::pair<std::string, double>>& accepted, std::vector<std::string> rejected,
                                 int d) {
    if (accepted.empty()) {
        std::string msg = "no stable Pade approximant for d=" + std::to_string(d);
        for (const auto& r : rejected) msg += "; " + r;
        throw NumericalFailure(msg);
    }
    PadeEstimate e;
    e.value = accepted.back().second;
    e.order = accepted.back().first;
    if (accepted.size() > 1) {
        const auto& ref = accepted[accepted.size() - 2];
        e.reference_order = ref.first;
        e.reference_value = ref.second;
        e.error = std::abs(e.value - ref.second);
    }
    e.rejected = std::move(rejected);
    return e;
}

}  // namespace detail

/// Integral of the highest accepted diagonal approximant over [0, 1].
inline PadeEstimate p0_via_integral(const RationalCoefficientTable& table) {
    const auto series = detail::even_series(table);
    const int top = table.order() / 2;
    std::vector<std::pair<std::string, double>> accepted;
    std::vector<std::string> rejected;
    for (int s = 1; s <= top; ++s) {
        const std::string label = even_order_label(s, s);
        try {
            PadeApproximant p = pade(series, s, s);
            if (!p.accepted()) {
                rejected.push_back(label + ": " + detail::describe_defects(p));
                continue;
            }
            auto q = integrate([&](double x) { return p.at_x(x); }, 0.0, 1.0, 1e-10);
            accepted.emplace_back(label, q.value);
        } catch (const DegenerateError& e) {
            rejected.push_back(label + ": " + e.what());
        }
    }
    return detail::pick_highest(accepted, std::move(rejected), table.d);
}

/// Highest accepted member of {Q^{2n-1}_{2n}, Q^{2n+1}_{2n}} evaluated at x = 1.
/// With Q(x) = x h(x^2), these are x [n-1/n]_h and x [n/n]_h.
inline PadeEstimate p0_via_primitive(const RationalCoefficientTable& table) {
    std::vector<BigRational> h{BigRational(0)};
    for (int r = 1; r <= table.order(); ++r) h.push_back(table.a(r) / (2 * r + 1));
    const int total = table.order();
    std::vector<std::pair<std::string, double>> accepted;
    std::vector<std::string> rejected;
    for (int n = 1; 2 * n - 1 <= total; ++n) {
        for (int nn : {n - 1, n}) {
            if (nn + n > total) continue;
            const std::string label = "[" + std::to_string(2 * nn + 1) + "/" + std::to_string(2 * n) + "]";
            try {
                PadeApproximant p = pade(h, nn, n);
                if (!p.accepted()) {
                    rejected.push_back(label + ": " + detail::describe_defects(p));
                    continue;
                }
                accepted.emplace_back(label, p(1.0));
            } catch (const DegenerateError& e) {
                rejected.push_back(label + ": " + e.what());
            }
        }
    }
    return detail::pick_highest(accepted, std::move(rejected), table.d);
}

inline PadeEstimate p0_via_integral(int d) { return p0_via_integral(coefficient_table(d)); }
inline PadeEstimate p0_via_primitive(int d) { return p0_via_primitive(coefficient_table(d)); }

/// Known-states average int_0^1 4(1-t)/pi^2 K(t)^2 (d-1)(1-t)^{d-2} dt.
/// The log^2 endpoint singularity at t = 1 is handled by t = 1 - exp(-s).
inline double p0_known(int d) {
    if (d < 2) throw DomainError("p0_known: d must be >= 2");
    const double c = 4.0 * (d - 1) / (std::numbers::pi * std::numbers::pi);
    auto near_zero = [&](double t) {
        const double k = elliptic_k(t);
        return c * k * k * std::pow(1.0 - t, d - 1);
    };
    auto near_one = [&](double s) {
        const double q = std::exp(-s);  // 1 - t
        const double k = elliptic_k_complementary(q);
        return c * k * k * std::pow(q, d);  // includes dt = q ds
    };
    double total = integrate(near_zero, 0.0, 0.5, 1e-11).value;
    const double cuts[] = {std::log(2.0), 4.0, 12.0, 30.0, 80.0};
    for (int i = 0; i + 1 < 5; ++i) total += integrate(near_one, cuts[i], cuts[i + 1], 1e-11).value;
    return total;
}

/// Leading large-d behaviour 1 - 1/(2d).
inline double large_d_limit(double d) {
    if (!(d >= 2)) throw DomainError("large_d_limit: d must be >= 2");
    return 1.0 - 1.0 / (2.0 * d);
}

struct CoefficientEstimate {
    double value = 0;
    double error = 0;
};

struct EstimatorGrid {
    std::vector<int> n_values{400, 800, 1600, 3200};  ///< doubling sequence
    std::vector<double> x_values{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
    int richardson_order = 3;
    int extra_fit_terms = 3;  ///< fitted terms beyond r_max
    int threads = 1;
};

/// (N/2) P_SRM for the block with 2j = x N, i.e. lambda = N (1 - x) / 2.
inline double scaled_block_srm(int N, int d, double x, double* exact_x = nullptr) {
    const int lambda = static_cast<int>(std::lround(0.5 * N * (1.0 - x)));
    if (exact_x) *exact_x = static_cast<double>(N - 2 * lambda) / N;
    return 0.5 * N * srm_block(build_gram_unknown(N, d, lambda));
}

/// Numeric estimate of a_1..a_{r_max}: Richardson extrapolation of the scaled
/// block probability in 1/N, then a least-squares fit in even powers of x.
/// Error bars are the spread over lower Richardson order and fit sizes +-1.
inline std::vector<CoefficientEstimate> estimate_low_order_coeffs(int d, int r_max = 3, const EstimatorGrid& grid = {}) {
    StringParams check(2, d);
    if (r_max < 1 || r_max > 3) throw DomainError("estimate_low_order_coeffs: r_max must be 1..3");
    const std::size_t nn = grid.n_values.size();
    const std::size_t nx = grid.x_values.size();
    if (nn < 2 || static_cast<int>(nn) < grid.richardson_order + 1) throw DomainError("estimator: too few N levels");
    for (std::size_t i = 1; i < nn; ++i)
        if (grid.n_values[i] != 2 * grid.n_values[i - 1]) throw DomainError("estimator: N levels must double");
    const int fit = r_max + grid.extra_fit_terms;
    if (static_cast<int>(nx) < fit + 1) throw DomainError("estimator: too few x points for the fit");

    std::vector<double> raw(nn * nx);
    std::vector<double> xs(nx);
    parallel_for(nn * nx, grid.threads, [&](std::size_t idx) {
        const std::size_t i = idx / nx, j = idx % nx;
        double xe = 0;
        raw[idx] = scaled_block_srm(grid.n_values[i], d, grid.x_values[j], &xe);
        if (i == 0) xs[j] = xe;
    });
    for (std::size_t i = 1; i < nn; ++i)
        for (std::size_t j = 0; j < nx; ++j) {
            const int lambda = static_cast<int>(std::lround(0.5 * grid.n_values[i] * (1.0 - grid.x_values[j])));
            if (std::abs(static_cast<double>(grid.n_values[i] - 2 * lambda) / grid.n_values[i] - xs[j]) > 1e-12) {
                throw DomainError("estimator: x grid not representable at every N");
            }
        }

    auto extrapolate = [&](int order) {
        Eigen::VectorXd y(static_cast<Eigen::Index>(nx));
        for (std::size_t j = 0; j < nx; ++j) {
            std::vector<double> v;
            for (std::size_t i = nn - static_cast<std::size_t>(order) - 1; i < nn; ++i) v.push_back(raw[i * nx + j]);
            for (int o = 1; o <= order; ++o) {
                const double f = std::ldexp(1.0, o);
                for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = (f * v[i + 1] - v[i]) / (f - 1);
                v.pop_back();
            }
            y(static_cast<Eigen::Index>(j)) = v.front();
        }
        return y;
    };
    auto fit_coeffs = [&](const Eigen::VectorXd& y, int terms) {
        Eigen::MatrixXd a(static_cast<Eigen::Index>(nx), terms);
        for (std::size_t j = 0; j < nx; ++j)
            for (int r = 1; r <= terms; ++r) a(static_cast<Eigen::Index>(j), r - 1) = std::pow(xs[j], 2 * r);
        return Eigen::VectorXd(a.colPivHouseholderQr().solve(y));
    };

    const Eigen::VectorXd y = extrapolate(grid.richardson_order);
    const Eigen::VectorXd best = fit_coeffs(y, fit);
    std::vector<Eigen::VectorXd> alts;
    alts.push_back(fit_coeffs(extrapolate(std::max(grid.richardson_order - 1, 0)), fit));
    if (fit - 1 > r_max) alts.push_back(fit_coeffs(y, fit - 1));
    if (fit + 1 < static_cast<int>(nx)) alts.push_back(fit_coeffs(y, fit + 1));

    std::vector<CoefficientEstimate> out(static_cast<std::size_t>(r_max));
    for (int r = 0; r < r_max; ++r) {
        auto& e = out[static_cast<std::size_t>(r)];
        e.value = best(r);
        for (const auto& a : alts) e.error = std::max(e.error, std::abs(a(r) - best(r)));
        if (!std::isfinite(e.value) || !std::isfinite(e.error)) {
            e.error = std::numeric_limits<double>::infinity();
        }
    }
    return out;
}

}  // namespace qedge

#endif
