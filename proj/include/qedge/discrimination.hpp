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

// Success probabilities for edge detection: square-root measurement and the
// optimal (SDP) measurement, block by block and in total.

#ifndef QEDGE_DISCRIMINATION_HPP
#define QEDGE_DISCRIMINATION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qedge/combinatorics.hpp"
#include "qedge/errors.hpp"
#include "qedge/gram.hpp"
#include "qedge/linalg.hpp"
#include "qedge/parallel.hpp"
#include "qedge/sdp.hpp"

namespace qedge {

enum class Scenario { unknownUnknown, knownUnknown };
enum class Method { srm, sdpOptimal };

inline const char* to_string(Scenario s) { return s == Scenario::unknownUnknown ? "unknown" : "known"; }
inline const char* to_string(Method m) { return m == Method::srm ? "srm" : "sdp"; }

struct ScenarioSpec {
    Scenario scenario = Scenario::unknownUnknown;
    StringParams params;
    Method method = Method::srm;
};

struct Capacity {
    int sdp = 64;
    int srm = 1000;
};

struct DiscriminationOptions {
    double gap_tol = 1e-8;
    int threads = 1;
    Capacity capacity;
    bool keep_certificates = false;
    std::ostream* diagnostics = nullptr;  ///< per-block solver trace when set
};

struct BlockOutcome {
    std::string label;
    double prior_mass = 0;
    double value = 0;  ///< joint success probability of this block
    double gap = 0;
    int iterations = 0;
    std::vector<double> gap_trajectory;
    bool ok = true;
    std::string error;
    std::optional<SdpSolution> certificate;
};

struct DiscriminationResult {
    ScenarioSpec spec;
    std::vector<BlockOutcome> per_block;
    double total = 0;
    double gap = 0;  ///< sum of block duality gaps (0 for SRM)

    bool ok() const {
        return std::all_of(per_block.begin(), per_block.end(), [](const BlockOutcome& b) { return b.ok; });
    }
    std::string status() const {
        for (const auto& b : per_block)
            if (!b.ok) return b.error;
        return "ok";
    }
};

/// Square-root measurement: sum of squared diagonal entries of sqrt(G).
inline double srm_block(const SemiseparableGram& g, double rank_tol = 1e-12) {
    if (g.size() == 1) return g.dense(0, 0);
    SymmetricMatrix r = psd_sqrt(g.dense, rank_tol);
    return r.dense().diagonal().squaredNorm();
}

namespace detail {

inline int largest_prior_index(const SemiseparableGram& g) {
    int best = 0;
    for (int i = 1; i < g.size(); ++i)
        if (g.dense(i, i) > g.dense(best, best)) best = i;
    return best;
}

// Exact solution when all states coincide: guess the most likely hypothesis.
inline SdpSolution identical_state_solution(const SemiseparableGram& g) {
    const int n = g.size();
    const int best = largest_prior_index(g);
    const double top = g.dense(best, best);
    SdpSolution sol;
    sol.primal.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
    sol.primal[static_cast<std::size_t>(best)] = Eigen::MatrixXd::Identity(n, n);
    // Common direction of the states: the dominant eigenvector of G.
    auto [w, vec] = eig_sym(g.dense);
    Eigen::VectorXd psi = vec.col(n - 1);
    sol.dual = top * psi * psi.transpose();
    sol.primal_value = top;
    sol.dual_value = top;
    sol.rank = 1;
    sol.status = SdpStatus::converged;
    return sol;
}

}  // namespace detail

/// Optimal measurement for one block. Returns the primal value (an achievable
/// success probability) and the solver record.
inline std::pair<double, SdpSolution> optimal_block(const SemiseparableGram& g, double gap_tol = 1e-8) {
    const std::string label = block_name(g.block);
    if (g.size() == 1 || g.identical_states) {
        SdpSolution sol = detail::identical_state_solution(g);
        return {sol.primal_value, std::move(sol)};
    }
    SymmetricMatrix root;
    try {
        root = psd_sqrt(g.dense);
    } catch (const std::exception& e) {
        throw NumericalFailure(label + ": " + e.what());
    }
    SdpSolution sol = solve_discrimination_sdp(root, gap_tol);
    if (sol.status != SdpStatus::converged) {
        throw NumericalFailure(label + ": SDP " + to_string(sol.status) + (sol.message.empty() ? "" : " (" + sol.message + ")"));
    }
    return {sol.primal_value, std::move(sol)};
}

/// Blocks of a scenario in fixed order: lambda = 0..N/2, or n_tilde0 = 0..N.
inline std::vector<SemiseparableGram> scenario_blocks(Scenario scenario, int N, int d) {
    std::vector<SemiseparableGram> out;
    if (scenario == Scenario::unknownUnknown) {
        for (int lambda = 0; 2 * lambda <= N; ++lambda) out.push_back(build_gram_unknown(N, d, lambda));
    } else {
        for (int nt0 = 0; nt0 <= N; ++nt0) out.push_back(build_gram_known(N, d, nt0));
    }
    return out;
}

inline void check_capacity(const ScenarioSpec& spec, const Capacity& cap) {
    const int limit = spec.method == Method::srm ? cap.srm : cap.sdp;
    if (spec.params.n > limit) {
        throw CapacityError(std::string(to_string(spec.method)) + " capacity exceeded: N=" + std::to_string(spec.params.n) +
                            " > " + std::to_string(limit));
    }
}

namespace detail {

inline BlockOutcome evaluate_block(const SemiseparableGram& g, Method method, const DiscriminationOptions& opt) {
    BlockOutcome out;
    out.label = block_name(g.block);
    out.prior_mass = g.dense.trace();
    try {
        if (method == Method::srm) {
            out.value = srm_block(g);
        } else {
            auto [value, sol] = optimal_block(g, opt.gap_tol);
            out.value = value;
            out.gap = sol.gap;
            out.iterations = sol.iterations;
            out.gap_trajectory = sol.gap_trajectory;
            if (opt.keep_certificates) out.certificate = std::move(sol);
        }
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
        out.value = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

inline void print_diagnostics(std::ostream& os, int N, const std::vector<BlockOutcome>& blocks) {
    for (const auto& b : blocks) {
        os << "N=" << N << " " << b.label << " value=" << b.value << " gap=" << b.gap << " iterations=" << b.iterations;
        if (!b.gap_trajectory.empty()) {
            os << " gaps=";
            for (std::size_t i = 0; i < b.gap_trajectory.size(); ++i) os << (i ? "," : "") << b.gap_trajectory[i];
        }
        if (!b.ok) os << " error=" << b.error;
        os << '\n';
    }
}

inline void finalize(DiscriminationResult& r) {
    r.total = 0;
    r.gap = 0;
    for (const auto& b : r.per_block) {
        r.total += b.value;
        r.gap += b.gap;
    }
}

}  // namespace detail

inline DiscriminationResult total_success(const ScenarioSpec& spec, const DiscriminationOptions& opt = {}) {
    check_capacity(spec, opt.capacity);
    DiscriminationResult res;
    res.spec = spec;
    auto blocks = scenario_blocks(spec.scenario, spec.params.n, spec.params.d);
    res.per_block.resize(blocks.size());
    parallel_for(blocks.size(), opt.threads,
                 [&](std::size_t i) { res.per_block[i] = detail::evaluate_block(blocks[i], spec.method, opt); });
    if (opt.diagnostics) detail::print_diagnostics(*opt.diagnostics, spec.params.n, res.per_block);
    detail::finalize(res);
    return res;
}

struct CurvePoint {
    int n = 0;
    double total = 0;
    double gap = 0;
    std::string status = "ok";
    DiscriminationResult detail;
};

/// Sweep over N. Per-N failures are recorded in the point status; the sweep
/// always runs to the end. Work is spread over all (N, block) pairs.
inline std::vector<CurvePoint> success_curve(Scenario scenario, int d, const std::vector<int>& n_values, Method method,
                                             const DiscriminationOptions& opt = {}) {
    if (!std::is_sorted(n_values.begin(), n_values.end())) throw DomainError("success_curve: N values must be ascending");
    std::vector<CurvePoint> points(n_values.size());
    struct Task {
        std::size_t point;
        std::size_t block;
    };
    std::vector<std::vector<SemiseparableGram>> grams(n_values.size());
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < n_values.size(); ++p) {
        auto& pt = points[p];
        pt.n = n_values[p];
        pt.detail.spec = {scenario, StringParams(n_values[p], d), method};
        try {
            check_capacity(pt.detail.spec, opt.capacity);
            grams[p] = scenario_blocks(scenario, n_values[p], d);
        } catch (const std::exception& e) {
            pt.status = e.what();
            pt.total = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        pt.detail.per_block.resize(grams[p].size());
        for (std::size_t b = 0; b < grams[p].size(); ++b) tasks.push_back({p, b});
    }
    // Largest blocks first keeps the workers balanced.
    std::stable_sort(tasks.begin(), tasks.end(), [&](const Task& a, const Task& b) {
        return grams[a.point][a.block].size() > grams[b.point][b.block].size();
    });
    parallel_for(tasks.size(), opt.threads, [&](std::size_t i) {
        const Task& t = tasks[i];
        points[t.point].detail.per_block[t.block] = detail::evaluate_block(grams[t.point][t.block], method, opt);
    });
    for (auto& pt : points) {
        if (pt.status != "ok") continue;
        detail::finalize(pt.detail);
        if (opt.diagnostics) detail::print_diagnostics(*opt.diagnostics, pt.n, pt.detail.per_block);
        pt.total = pt.detail.total;
        pt.gap = pt.detail.gap;
        pt.status = pt.detail.status();
        if (pt.status != "ok") pt.total = std::numeric_limits<double>::quiet_NaN();
    }
    return points;
}

}  // namespace qedge

#endif
