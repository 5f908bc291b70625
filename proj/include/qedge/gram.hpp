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

// Closed-form Gram matrices of the conditional hypothesis states.
//
// Both families are semiseparable: G[k][k'] = v_k u_k' for k <= k'. Entries
// carry the joint priors, so the diagonal holds the priors and the trace is
// the block's prior mass.

#ifndef QEDGE_GRAM_HPP
#define QEDGE_GRAM_HPP

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "qedge/bignum.hpp"
#include "qedge/combinatorics.hpp"
#include "qedge/errors.hpp"
#include "qedge/linalg.hpp"

namespace qedge {

/// Block of the known-unknown scenario: after counting the particles found in
/// the known state |0>, n_tilde0 of them, the edge k ranges over
/// max(N - n_tilde0, 1)..N. For qubits N - n_tilde0 is the excitation count n1.
struct KnownBlock {
    StringParams params;
    int n_tilde0 = 0;
    int k_first = 1;
    int k_last = 1;
    std::vector<double> priors;

    int excitations() const { return params.n - n_tilde0; }
    int size() const { return k_last - k_first + 1; }
    double prior_mass() const {
        double s = 0;
        for (double p : priors) s += p;
        return s;
    }
};

/// Number of ways to spread e excitations over the d-1 excited levels.
inline BigInt excitation_multiplicity(int e, int d) { return binomial(static_cast<std::int64_t>(e) + d - 2, d - 2); }

/// Exact known-unknown priors: binom(e+d-2, d-2) / (N sym(k)), e = N - n_tilde0.
inline std::vector<ExactPrior> known_priors(int N, int d, int n_tilde0) {
    StringParams p(N, d);
    if (n_tilde0 < 0 || n_tilde0 > N) {
        throw DomainError("known block label n_tilde0=" + std::to_string(n_tilde0) + " outside [0, N]");
    }
    const int e = N - n_tilde0;
    BigInt mult = excitation_multiplicity(e, d);
    std::vector<ExactPrior> out;
    for (int k = std::max(e, 1); k <= N; ++k) out.push_back({k, BigRational(mult, BigInt(N) * sym_dim(k, d))});
    return out;
}

inline KnownBlock make_known_block(int N, int d, int n_tilde0) {
    KnownBlock b;
    b.params = StringParams(N, d);
    b.n_tilde0 = n_tilde0;
    auto pri = known_priors(N, d, n_tilde0);
    b.k_first = pri.empty() ? 1 : pri.front().k;
    b.k_last = pri.empty() ? 0 : pri.back().k;
    for (const auto& q : pri) b.priors.push_back(to_double(q.eta));
    return b;
}

using BlockLabel = std::variant<IrrepBlock, KnownBlock>;

inline std::string block_name(const BlockLabel& b) {
    if (const auto* ib = std::get_if<IrrepBlock>(&b)) return "lambda=" + std::to_string(ib->lambda);
    return "n_tilde0=" + std::to_string(std::get<KnownBlock>(b).n_tilde0);
}

struct SemiseparableGram {
    BlockLabel block;
    int k_first = 1;
    std::vector<double> u;  ///< may over/underflow for N in the thousands; log_u is exact to rounding
    std::vector<double> v;
    std::vector<double> log_u;
    std::vector<double> log_v;
    SymmetricMatrix dense;
    /// All pairwise overlaps are 1 (rank one up to priors).
    bool identical_states = false;

    int size() const { return static_cast<int>(u.size()); }
    int k_at(int index) const { return k_first + index; }
    std::vector<double> priors() const {
        std::vector<double> p(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) p[i] = dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        return p;
    }
    bool is_unknown_unknown() const { return std::holds_alternative<IrrepBlock>(block); }
};

namespace detail {

// Generators from log v_k = (log eta_k + log r_k)/2, log u_k = (log eta_k - log r_k)/2.
// Entries are formed in the log domain: for large N the generators alone
// leave double range while their products do not.
inline void fill_generators(SemiseparableGram& g, const std::vector<double>& log_eta, const std::vector<double>& log_r) {
    const std::size_t n = log_eta.size();
    g.log_u.resize(n);
    g.log_v.resize(n);
    g.u.resize(n);
    g.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.log_v[i] = 0.5 * (log_eta[i] + log_r[i]);
        g.log_u[i] = 0.5 * (log_eta[i] - log_r[i]);
        g.v[i] = std::exp(g.log_v[i]);
        g.u[i] = std::exp(g.log_u[i]);
    }
    g.dense = SymmetricMatrix(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i)
            g.dense.set(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), std::exp(g.log_v[i] + g.log_u[j]));
}

}  // namespace detail

/// Unknown-unknown block lambda: G[k][k'] = sqrt(eta_k eta_k') * overlap(k, k').
/// With r_k = binom(k, lambda) / binom(N-k, lambda): u_k = sqrt(eta_k / r_k), v_k = sqrt(eta_k r_k).
inline SemiseparableGram build_gram_unknown(int N, int d, int lambda) {
    SemiseparableGram g;
    IrrepBlock blk = make_irrep_block(N, d, lambda);
    g.k_first = blk.k_first;
    g.identical_states = lambda == 0;

    const double log_s = log_big(irrep_dim(N, d, lambda));
    const double log_n = std::log(static_cast<double>(N));
    // Exact incremental tables over k = 0..N.
    std::vector<double> log_sym(static_cast<std::size_t>(N) + 1);
    std::vector<double> log_binom_lambda(static_cast<std::size_t>(N) + 1, -INFINITY);
    {
        BigInt s = 1;  // sym_dim(0, d)
        for (int k = 0; k <= N; ++k) {
            log_sym[static_cast<std::size_t>(k)] = log_big(s);
            s = s * (k + d) / (k + 1);
        }
        BigInt b = 1;  // binom(lambda, lambda)
        for (int k = lambda; k <= N; ++k) {
            log_binom_lambda[static_cast<std::size_t>(k)] = log_big(b);
            b = b * (k + 1) / (k + 1 - lambda);
        }
    }
    std::vector<double> log_eta, log_r;
    for (int k = blk.k_first; k <= blk.k_last; ++k) {
        log_eta.push_back(log_s - log_n - log_sym[static_cast<std::size_t>(N - k)] - log_sym[static_cast<std::size_t>(k)]);
        log_r.push_back(log_binom_lambda[static_cast<std::size_t>(k)] - log_binom_lambda[static_cast<std::size_t>(N - k)]);
    }
    detail::fill_generators(g, log_eta, log_r);
    g.block = std::move(blk);
    return g;
}

/// Known-unknown block n_tilde0, aggregated over the splits of the
/// e = N - n_tilde0 excitations among the excited levels:
/// G[k][k'] = binom(e+d-2, d-2) / sqrt(N sym(k) sym(k')) * sqrt(binom(k,e) / binom(k',e)), k <= k'.
inline SemiseparableGram build_gram_known(int N, int d, int n_tilde0) {
    SemiseparableGram g;
    KnownBlock blk = make_known_block(N, d, n_tilde0);
    const int e = blk.excitations();
    g.k_first = blk.k_first;
    g.identical_states = e == 0;

    const double log_mult = log_big(excitation_multiplicity(e, d));
    const double log_n = std::log(static_cast<double>(N));
    std::vector<double> log_eta, log_r;
    BigInt s = sym_dim(blk.k_first, d);
    BigInt b = binomial(blk.k_first, e);
    for (int k = blk.k_first; k <= blk.k_last; ++k) {
        log_eta.push_back(log_mult - log_n - log_big(s));
        log_r.push_back(log_big(b));
        s = s * (k + d) / (k + 1);
        b = b * (k + 1) / (k + 1 - e);
    }
    detail::fill_generators(g, log_eta, log_r);
    g.block = std::move(blk);
    return g;
}

/// Printed rescaling prefactor (N/2)^2 / ((d-1)(2j+1)) with 2j + 1 = N - 2 lambda + 1.
inline double rescale_factor(int N, int d, int lambda) {
    check_lambda(N, lambda);
    const double half = 0.5 * N;
    return half * half / (static_cast<double>(d - 1) * (N - 2 * lambda + 1));
}

/// Rescaled block G~ = N (N/2)^2 / ((d-1)(2j+1)) G. The extra N cancels the
/// 1/N edge prior so that the diagonal tends to 1 and the inverse matches
/// tridiag_inverse_reference.
inline SemiseparableGram rescale_gram(const SemiseparableGram& g) {
    const auto* blk = std::get_if<IrrepBlock>(&g.block);
    if (!blk) throw DomainError("rescale_gram: only unknown-unknown blocks are rescaled");
    const int N = blk->params.n;
    const double f = N * rescale_factor(N, blk->params.d, blk->lambda);
    const double sf = std::sqrt(f);
    SemiseparableGram out = g;
    for (auto& x : out.u) x *= sf;
    for (auto& x : out.v) x *= sf;
    for (auto& x : out.log_u) x += 0.5 * std::log(f);
    for (auto& x : out.log_v) x += 0.5 * std::log(f);
    out.dense = SymmetricMatrix::from_upper(f * g.dense.dense());
    return out;
}

struct Tridiagonal {
    std::vector<double> diag;   ///< index k - lambda
    std::vector<double> super;  ///< entry (k, k+1)
};

/// Closed-form tridiagonal inverse of the rescaled block (lambda >= 1).
/// With J = N - 2 lambda and B_k the ratio-of-factorials weight,
///   diag_k  = B_k (J(J+2) + N(N+2) - 2(2k-N)^2) / (4 lambda (N - lambda + 1))
///   super_k = -sqrt(B_k B_{k+1} (N-k)(k+1)(N-lambda-k)(k-lambda+1)) / (lambda (N - lambda + 1)).
inline Tridiagonal tridiag_inverse_reference(int N, int d, int lambda) {
    StringParams p(N, d);
    check_lambda(N, lambda);
    if (lambda == 0) throw DomainError("tridiag_inverse_reference: lambda = 0 block is singular");
    auto fact = [](int m) {
        BigInt r = 1;
        for (int i = 2; i <= m; ++i) r *= i;
        return r;
    };
    const BigRational front = BigRational(BigInt(4) * (1 + N - lambda), BigInt(N) * N) *
                              BigRational(fact(lambda) * fact(N - lambda), fact(lambda + d - 2) * fact(N - lambda + d - 1));
    std::vector<double> weight;
    for (int k = lambda; k <= N - lambda; ++k) {
        BigRational bk = front * BigRational(fact(N - k + d - 1) * fact(k + d - 1), fact(N - k) * fact(k));
        weight.push_back(to_double(bk));
    }
    const double den = static_cast<double>(lambda) * (N - lambda + 1);
    const long J = N - 2 * lambda;
    Tridiagonal t;
    for (int k = lambda; k <= N - lambda; ++k) {
        const long m2 = 2L * k - N;
        const double num = static_cast<double>(J * (J + 2) + static_cast<long>(N) * (N + 2) - 2 * m2 * m2);
        t.diag.push_back(weight[static_cast<std::size_t>(k - lambda)] * num / (4 * den));
        if (k < N - lambda) {
            const double prod = static_cast<double>(N - k) * (k + 1) * (N - lambda - k) * (k - lambda + 1);
            t.super.push_back(-std::sqrt(weight[static_cast<std::size_t>(k - lambda)] *
                                         weight[static_cast<std::size_t>(k - lambda + 1)] * prod) /
                              den);
        }
    }
    return t;
}

/// CSV dump with k labels on both axes.
inline void write_gram_csv(std::ostream& os, const SemiseparableGram& g) {
    const int n = g.size();
    os << "k";
    for (int j = 0; j < n; ++j) os << ',' << g.k_at(j);
    os << '\n';
    os << std::setprecision(17);
    for (int i = 0; i < n; ++i) {
        os << g.k_at(i);
        for (int j = 0; j < n; ++j) os << ',' << g.dense(i, j);
        os << '\n';
    }
}

}  // namespace qedge

#endif
