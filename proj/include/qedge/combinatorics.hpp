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

// Counting formulas for the two-domain string and the Schur-basis
// machinery behind the hypothesis overlaps.
//
// Conventions: a string has N particles of local dimension d. The edge
// position k counts particles in the second domain, so the ordered
// computational sequence is alpha(k) = 0^{N-k} 1^k. Irreps of S_N that
// appear are two-row diagrams [N - lambda, lambda], 0 <= lambda <= N/2.

#ifndef QEDGE_COMBINATORICS_HPP
#define QEDGE_COMBINATORICS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qedge/bignum.hpp"
#include "qedge/errors.hpp"

namespace qedge {

struct StringParams {
    int n = 1;  ///< particle count N
    int d = 2;  ///< local dimension

    StringParams() = default;
    StringParams(int n_particles, int local_dim) : n(n_particles), d(local_dim) {
        if (n < 1) throw DomainError("string length N must be >= 1, got " + std::to_string(n));
        if (d < 2) throw DomainError("local dimension d must be >= 2, got " + std::to_string(d));
    }
};

/// Dimension of the symmetric subspace of n qudits: binom(d+n-1, d-1).
inline BigInt sym_dim(int n, int d) {
    if (n < 0 || d < 2) throw DomainError("sym_dim requires n >= 0 and d >= 2");
    return binomial(static_cast<std::int64_t>(d) + n - 1, d - 1);
}

inline void check_lambda(int N, int lambda) {
    if (lambda < 0 || 2 * lambda > N) {
        throw DomainError("irrep label lambda=" + std::to_string(lambda) + " out of range [0, " +
                          std::to_string(N / 2) + "] for N=" + std::to_string(N));
    }
}

/// Dimension s_lambda of the SU(d) irrep [N - lambda, lambda].
inline BigInt irrep_dim(int N, int d, int lambda) {
    StringParams p(N, d);
    check_lambda(N, lambda);
    BigInt num = BigInt(N - 2 * lambda + 1) * binomial(d + lambda - 2, d - 2) *
                 binomial(static_cast<std::int64_t>(d) + N - lambda - 1, d - 1);
    BigInt den = N - lambda + 1;
    if (num % den != 0) throw NumericalFailure("irrep_dim: non-integral result");
    return num / den;
}

/// First and last edge position with support in irrep lambda.
/// k = 0 (no second-domain particles) is never a hypothesis.
inline std::pair<int, int> hypothesis_range(int N, int lambda) {
    check_lambda(N, lambda);
    return {std::max(lambda, 1), N - lambda};
}

struct ExactPrior {
    int k;
    BigRational eta;
};

/// Joint probabilities eta^lambda_k = s_lambda / (N sym(N-k) sym(k)) for k in K_lambda.
inline std::vector<ExactPrior> priors(int N, int d, int lambda) {
    auto [k0, k1] = hypothesis_range(N, lambda);
    BigInt s = irrep_dim(N, d, lambda);
    std::vector<ExactPrior> out;
    out.reserve(static_cast<std::size_t>(std::max(0, k1 - k0 + 1)));
    for (int k = k0; k <= k1; ++k) {
        BigInt den = BigInt(N) * sym_dim(N - k, d) * sym_dim(k, d);
        out.push_back({k, BigRational(s, den)});
    }
    return out;
}

/// One weak-Schur-sampling outcome: the sub-problem of discriminating
/// |Omega^lambda_k>, k in K_lambda, with joint priors eta^lambda_k.
struct IrrepBlock {
    StringParams params;
    int lambda = 0;
    int k_first = 1;
    int k_last = 1;
    std::vector<double> priors;  ///< eta^lambda_k for k = k_first..k_last

    int size() const { return k_last - k_first + 1; }
    /// Twice the spin surrogate, 2j = N - 2 lambda (j is half-integral for odd N).
    int twice_j() const { return params.n - 2 * lambda; }
    double j() const { return 0.5 * twice_j(); }
    double prior_mass() const {
        double s = 0;
        for (double p : priors) s += p;
        return s;
    }
};

inline IrrepBlock make_irrep_block(int N, int d, int lambda) {
    IrrepBlock b;
    b.params = StringParams(N, d);
    b.lambda = lambda;
    std::tie(b.k_first, b.k_last) = hypothesis_range(N, lambda);
    for (const auto& p : priors(N, d, lambda)) b.priors.push_back(to_double(p.eta));
    return b;
}

/// Clebsch-Gordan coefficient for coupling step n of a two-row Schur transform:
/// the new particle (basis state alpha_n) joins row q_n, giving irrep lambda and
/// weight w (number of 1s) after the step.
inline double cg_coefficient(int row, int alpha, int n, int lambda, int w) {
    if ((row != 1 && row != 2) || (alpha != 0 && alpha != 1) || n < 1) {
        throw DomainError("cg_coefficient: invalid row/alpha/step");
    }
    double num = 0;
    double den = 0;
    if (row == 1) {
        num = alpha == 0 ? n - lambda - w : w - lambda;
        den = n - 2 * lambda;
    } else {
        num = alpha == 0 ? w - lambda + 1 : n - lambda - w + 1;
        den = n - 2 * lambda + 2;
    }
    if (den <= 0 || num < 0) {
        throw DomainError("cg_coefficient: inconsistent coupling (n=" + std::to_string(n) +
                          ", lambda=" + std::to_string(lambda) + ", w=" + std::to_string(w) + ")");
    }
    double v = std::sqrt(num / den);
    return (row == 2 && alpha == 0) ? -v : v;
}

/// Yamanouchi sequence packed as bits: bit (n-1) set iff particle n sits in row 2.
using Yamanouchi = std::uint64_t;

inline bool is_yamanouchi(Yamanouchi q, int N, int lambda) {
    int twos = 0;
    for (int n = 1; n <= N; ++n) {
        if ((q >> (n - 1)) & 1u) ++twos;
        if (2 * twos > n) return false;
    }
    return twos == lambda && (N >= 64 || (q >> N) == 0);
}

inline std::string yamanouchi_string(Yamanouchi q, int N) {
    std::string s;
    for (int n = 0; n < N; ++n) s.push_back(((q >> n) & 1u) ? '2' : '1');
    return s;
}

struct SchurVector {
    int n = 0;
    int lambda = 0;
    std::map<Yamanouchi, double> amplitudes;

    double norm_squared() const {
        double s = 0;
        for (const auto& [q, a] : amplitudes) s += a * a;
        return s;
    }
    double amplitude(Yamanouchi q) const {
        auto it = amplitudes.find(q);
        return it == amplitudes.end() ? 0.0 : it->second;
    }
    double dot(const SchurVector& other) const {
        double s = 0;
        for (const auto& [q, a] : amplitudes) s += a * other.amplitude(q);
        return s;
    }
};

/// Oracle size cap for explicit Schur vectors.
inline constexpr int kOracleMaxN = 14;

/// Normalisation of the irrep-lambda component of a weight-w computational state,
/// C^2 = lambda! (N-lambda+1)! / ((N-w)! w! (N-2lambda+1)).
inline double schur_normalization(int N, int lambda, int w) {
    auto fact = [](int m) {
        BigInt r = 1;
        for (int i = 2; i <= m; ++i) r *= i;
        return r;
    };
    BigInt num = fact(lambda) * fact(N - lambda + 1);
    BigInt den = fact(N - w) * fact(w) * BigInt(N - 2 * lambda + 1);
    return std::sqrt(to_double(num, den));
}

/// Explicit |Omega^lambda_k> in the S_N irrep basis, built step by step from
/// the Clebsch-Gordan recursion for alpha(k) = 0^{N-k} 1^k. The overall phase
/// (-1)^lambda makes |Omega^lambda_lambda> = (-1)^lambda |1^{N-lambda} 2^lambda>.
inline SchurVector omega_vector(int N, int k, int lambda) {
    check_lambda(N, lambda);
    auto [k0, k1] = hypothesis_range(N, lambda);
    if (k < k0 || k > k1) {
        throw DomainError("omega_vector: k=" + std::to_string(k) + " outside K_lambda=[" +
                          std::to_string(k0) + ", " + std::to_string(k1) + "]");
    }
    if (N > kOracleMaxN) throw CapacityError("omega_vector: N exceeds oracle cap " + std::to_string(kOracleMaxN));

    SchurVector out;
    out.n = N;
    out.lambda = lambda;
    const double scale = schur_normalization(N, lambda, k) * ((lambda % 2) ? -1.0 : 1.0);

    // Depth-first walk over Yamanouchi prefixes; prune as soon as the partial
    // irrep cannot reach lambda or the weight leaves [lambda_n, n - lambda_n].
    struct Frame {
        int n;
        int lam;
        int w;
        Yamanouchi q;
        double amp;
    };
    std::vector<Frame> stack{{0, 0, 0, 0, 1.0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.n == N) {
            if (f.lam == lambda) out.amplitudes[f.q] = scale * f.amp;
            continue;
        }
        const int n = f.n + 1;
        const int alpha = n > N - k ? 1 : 0;
        const int w = f.w + alpha;
        for (int row = 1; row <= 2; ++row) {
            const int lam = f.lam + (row == 2);
            if (lam > lambda || 2 * lam > n) continue;
            if (lambda - lam > N - n) continue;
            if (w < lam || w > n - lam) continue;
            double c = cg_coefficient(row, alpha, n, lam, w);
            if (c == 0.0) continue;
            Yamanouchi q = f.q | (row == 2 ? (Yamanouchi{1} << (n - 1)) : 0);
            stack.push_back({n, lam, w, q, f.amp * c});
        }
    }
    return out;
}

/// <Omega^lambda_k | Omega^lambda_k'> by explicit amplitude contraction.
inline double overlap_oracle(int N, int k, int kp, int lambda) {
    if (N > kOracleMaxN) throw CapacityError("overlap_oracle: N exceeds oracle cap " + std::to_string(kOracleMaxN));
    return omega_vector(N, k, lambda).dot(omega_vector(N, kp, lambda));
}

/// Exact ratio binom(k, lambda) / binom(N - k, lambda); the overlap for k <= k'
/// is sqrt(ratio(k) / ratio(k')).
inline BigRational overlap_ratio(int N, int k, int lambda) {
    return BigRational(binomial(k, lambda), binomial(N - k, lambda));
}

/// Closed-form overlap sqrt( binom(k,l) binom(N-k',l) / (binom(k',l) binom(N-k,l)) ), k <= k'.
inline double overlap_closed(int N, int k, int kp, int lambda) {
    check_lambda(N, lambda);
    auto [k0, k1] = hypothesis_range(N, lambda);
    if (k < k0 || k > k1 || kp < k0 || kp > k1) throw DomainError("overlap_closed: index outside K_lambda");
    if (k > kp) std::swap(k, kp);
    BigInt num = binomial(k, lambda) * binomial(N - kp, lambda);
    BigInt den = binomial(kp, lambda) * binomial(N - k, lambda);
    return std::sqrt(to_double(num, den));
}

}  // namespace qedge

#endif
