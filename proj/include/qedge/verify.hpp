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

// Property suites shared by the CLI `verify` command and the test binaries.

#ifndef QEDGE_VERIFY_HPP
#define QEDGE_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qedge/combinatorics.hpp"
#include "qedge/discrimination.hpp"
#include "qedge/gram.hpp"
#include "qedge/linalg.hpp"
#include "qedge/sdp.hpp"

namespace qedge {

struct VerifyReport {
    std::string suite;
    long passed = 0;
    long failed = 0;
    double worst = 0;  ///< largest observed deviation (suite-specific meaning)
    std::string first_failure;

    bool ok() const { return failed == 0 && passed > 0; }

    void record(bool pass, double deviation, const std::string& what) {
        worst = std::max(worst, deviation);
        if (pass) {
            ++passed;
        } else {
            if (failed == 0) first_failure = what;
            ++failed;
        }
    }
};

/// Closed-form overlaps against the explicit Schur-basis recursion.
inline VerifyReport verify_oracle(int max_n = 12, double tol = 1e-12) {
    VerifyReport rep;
    rep.suite = "oracle";
    for (int N = 1; N <= max_n; ++N) {
        for (int lambda = 0; 2 * lambda <= N; ++lambda) {
            auto [k0, k1] = hypothesis_range(N, lambda);
            std::vector<SchurVector> vecs;
            for (int k = k0; k <= k1; ++k) vecs.push_back(omega_vector(N, k, lambda));
            auto at = [&](int k) -> const SchurVector& { return vecs[static_cast<std::size_t>(k - k0)]; };
            for (int k = k0; k <= k1; ++k) {
                for (int kp = k0; kp <= k1; ++kp) {
                    const double oracle = at(k).dot(at(kp));
                    const double closed = overlap_closed(N, k, kp, lambda);
                    const double dev = std::abs(oracle - closed);
                    std::ostringstream os;
                    os.precision(17);
                    os << "overlap N=" << N << " d=2 lambda=" << lambda << " k=" << k << " k'=" << kp << " closed=" << closed
                       << " oracle=" << oracle;
                    rep.record(dev <= tol, dev, os.str());
                }
                // Overlap with the lowest state in closed form.
                if (lambda >= 1) {
                    const double expect = std::sqrt(to_double(
                        BigRational(binomial(N - k, lambda), binomial(N - lambda, lambda) * binomial(k, lambda))));
                    const double dev = std::abs(at(k).dot(at(lambda)) - expect);
                    std::ostringstream os;
                    os << "lowest-state overlap N=" << N << " lambda=" << lambda << " k=" << k;
                    rep.record(dev <= tol, dev, os.str());
                }
            }
            for (int a = k0; a <= k1; ++a)
                for (int b = a; b <= k1; ++b)
                    for (int c = b; c <= k1; ++c) {
                        const double dev = std::abs(overlap_closed(N, a, b, lambda) * overlap_closed(N, b, c, lambda) -
                                                    overlap_closed(N, a, c, lambda));
                        std::ostringstream os;
                        os << "multiplicativity N=" << N << " lambda=" << lambda << " k=" << a << "," << b << "," << c;
                        rep.record(dev <= tol, dev, os.str());
                    }
        }
    }
    return rep;
}

struct TridiagCase {
    int n;
    int d;
    int lambda;
    double deviation;  ///< max |inv(G~) - reference| / max |inv(G~)|
    double condition;
};

/// Closed-form tridiagonal inverse against dense inversion of the rescaled block.
inline TridiagCase tridiag_case(int N, int d, int lambda) {
    SemiseparableGram g = rescale_gram(build_gram_unknown(N, d, lambda));
    TridiagCase c{N, d, lambda, 0, condition_number(g.dense)};
    Eigen::LLT<Eigen::MatrixXd> llt(g.dense.dense());
    const Eigen::Index n = g.size();
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
    // One step of refinement: X <- X + X (I - G X).
    inv += inv * (Eigen::MatrixXd::Identity(n, n) - g.dense.dense() * inv);
    Tridiagonal ref = tridiag_inverse_reference(N, d, lambda);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i, i) = ref.diag[static_cast<std::size_t>(i)];
        if (i + 1 < n) t(i, i + 1) = t(i + 1, i) = ref.super[static_cast<std::size_t>(i)];
    }
    c.deviation = (inv - t).cwiseAbs().maxCoeff() / inv.cwiseAbs().maxCoeff();
    return c;
}

/// Random well-conditioned blocks: N in [2, max_n], d in {2,3,4}, lambda >= 1,
/// at least two hypotheses, condition number <= max_condition.
inline VerifyReport verify_tridiag(int samples = 50, std::uint64_t seed = 20240607, int max_n = 60,
                                   double tol = 1e-8, double max_condition = 1e12, std::vector<TridiagCase>* cases = nullptr) {
    VerifyReport rep;
    rep.suite = "tridiag";
    std::mt19937_64 rng(seed);
    const int dims[] = {2, 3, 4};
    int drawn = 0;
    while (rep.passed + rep.failed < samples) {
        if (++drawn > 100 * samples) break;
        const int N = std::uniform_int_distribution<int>(3, max_n)(rng);
        const int d = dims[std::uniform_int_distribution<int>(0, 2)(rng)];
        const int lambda = std::uniform_int_distribution<int>(1, (N - 1) / 2)(rng);
        TridiagCase c = tridiag_case(N, d, lambda);
        if (!(c.condition <= max_condition)) continue;
        if (cases) cases->push_back(c);
        std::ostringstream os;
        os << "tridiag N=" << N << " d=" << d << " lambda=" << lambda << " relative deviation=" << c.deviation
           << " condition=" << c.condition;
        rep.record(c.deviation <= tol, c.deviation, os.str());
    }
    return rep;
}

/// Optimality certificates of every solved block for d = 2, N = 2..max_n.
inline VerifyReport verify_holevo(int max_n = 30, double tol = 1e-8, int threads = 1) {
    VerifyReport rep;
    rep.suite = "holevo";
    struct Job {
        int n;
        int lambda;
        CertificateReport cert;
        std::string error;
    };
    std::vector<Job> jobs;
    for (int N = 2; N <= max_n; ++N)
        for (int lambda = 0; 2 * lambda <= N; ++lambda) jobs.push_back({N, lambda, {}, {}});
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
        auto& j = jobs[i];
        try {
            SemiseparableGram g = build_gram_unknown(j.n, 2, j.lambda);
            auto [value, sol] = optimal_block(g, tol);
            SymmetricMatrix root = psd_sqrt(g.dense);
            j.cert = check_certificate(root.dense(), sol);
        } catch (const std::exception& e) {
            j.error = e.what();
        }
    });
    for (const auto& j : jobs) {
        std::ostringstream os;
        os << "certificate N=" << j.n << " d=2 lambda=" << j.lambda;
        if (!j.error.empty()) {
            rep.record(false, INFINITY, os.str() + " error: " + j.error);
            continue;
        }
        const auto& c = j.cert;
        os << " gap=" << c.gap << " min(Y-rho)=" << c.min_dual_slack << " slackness=" << c.max_slackness
           << " min(E)=" << c.min_povm_eigenvalue << " completeness=" << c.completeness;
        const double dev = std::max({c.gap, -c.min_dual_slack, c.max_slackness, -c.min_povm_eigenvalue, c.completeness});
        rep.record(c.holds(tol), dev, os.str());
    }
    return rep;
}

}  // namespace qedge

#endif
