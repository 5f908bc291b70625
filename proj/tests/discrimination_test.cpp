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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "qedge/asymptotics.hpp"
#include "qedge/discrimination.hpp"

namespace qedge {
namespace {

// Dicke state of n qubits with w ones, as a vector over 2^n basis strings.
Eigen::VectorXd dicke(int n, int w) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(1L << n);
    for (long s = 0; s < (1L << n); ++s)
        if (__builtin_popcountl(static_cast<unsigned long>(s)) == w) v(s) = 1.0;
    return v.normalized();
}

Eigen::VectorXd kron(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

// Explicit qubit frame for the unknown-unknown problem: hypothesis k has
// average state Pi_sym(N-k)/(N-k+1) (x) Pi_sym(k)/(k+1), prior 1/N.
struct Frame {
    Eigen::MatrixXd vectors;
    std::vector<int> k;
};

Frame explicit_unknown_frame(int N) {
    std::vector<Eigen::VectorXd> cols;
    Frame f;
    for (int k = 1; k <= N; ++k) {
        const double w = 1.0 / (N * (N - k + 1.0) * (k + 1.0));
        for (int a = 0; a <= N - k; ++a) {
            for (int b = 0; b <= k; ++b) {
                Eigen::VectorXd head = N - k > 0 ? dicke(N - k, a) : Eigen::VectorXd::Ones(1);
                cols.push_back(std::sqrt(w) * kron(head, dicke(k, b)));
                f.k.push_back(k);
            }
        }
    }
    f.vectors.resize(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) f.vectors.col(static_cast<Eigen::Index>(i)) = cols[i];
    return f;
}

double explicit_srm(const Frame& f) {
    SymmetricMatrix root = psd_sqrt(SymmetricMatrix::from_upper(f.vectors.transpose() * f.vectors));
    double total = 0;
    for (std::size_t a = 0; a < f.k.size(); ++a)
        for (std::size_t b = 0; b < f.k.size(); ++b)
            if (f.k[a] == f.k[b]) total += std::pow(root(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), 2);
    return total;
}

double total(Scenario s, int N, int d, Method m) {
    DiscriminationOptions opt;
    auto r = total_success({s, StringParams(N, d), m}, opt);
    EXPECT_TRUE(r.ok()) << r.status();
    return r.total;
}

TEST(Srm, BlockValuesForTwoQubits) {
    EXPECT_NEAR(srm_block(build_gram_unknown(2, 2, 0)), 25.0 / 56.0, 1e-15);
    EXPECT_NEAR(srm_block(build_gram_unknown(2, 2, 1)), 1.0 / 8.0, 1e-15);
    EXPECT_NEAR(total(Scenario::unknownUnknown, 2, 2, Method::srm), 4.0 / 7.0, 1e-12);
}

TEST(Srm, TwoQubitMixedStateOracle) {
    // Pretty good measurement for rho_1 = I/4, rho_2 = Pi_sym/3, equal priors.
    Eigen::MatrixXd rho1 = Eigen::MatrixXd::Identity(4, 4) / 4;
    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(4, 4);
    sym(0, 0) = sym(3, 3) = 1;
    sym.block(1, 1, 2, 2).setConstant(0.5);
    Eigen::MatrixXd rho2 = sym / 3;
    Eigen::MatrixXd avg = 0.5 * rho1 + 0.5 * rho2;
    Eigen::MatrixXd inv_root = psd_sqrt(SymmetricMatrix::from_upper(avg)).dense().inverse();
    double p = 0;
    for (const Eigen::MatrixXd* r : {&rho1, &rho2}) {
        Eigen::MatrixXd m = inv_root * (0.5 * *r) * inv_root;
        p += (m * (0.5 * *r)).trace();
    }
    EXPECT_NEAR(total(Scenario::unknownUnknown, 2, 2, Method::srm), p, 1e-12);
}

TEST(Optimal, TwoQubitHelstromOracle) {
    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(4, 4);
    sym(0, 0) = sym(3, 3) = 1;
    sym.block(1, 1, 2, 2).setConstant(0.5);
    Eigen::MatrixXd diff = 0.5 * Eigen::MatrixXd::Identity(4, 4) / 4 - 0.5 * sym / 3;
    const double trace_norm = eig_sym(SymmetricMatrix::from_upper(diff)).values.cwiseAbs().sum();
    EXPECT_NEAR(0.5 + 0.5 * trace_norm, 0.625, 1e-15);
    EXPECT_NEAR(total(Scenario::unknownUnknown, 2, 2, Method::sdpOptimal), 0.625, 1e-8);
}

TEST(Srm, ExplicitQubitFrames) {
    for (int N = 1; N <= 6; ++N) {
        EXPECT_NEAR(total(Scenario::unknownUnknown, N, 2, Method::srm), explicit_srm(explicit_unknown_frame(N)), 1e-12)
            << "N=" << N;
    }
}

TEST(Optimal, MatchesIndependentConicSolver) {
    // Reference values from an independent interior-point solver run on the
    // same block Gram matrices.
    EXPECT_NEAR(total(Scenario::unknownUnknown, 6, 2, Method::sdpOptimal), 0.5104185790, 2e-8);
    EXPECT_NEAR(total(Scenario::unknownUnknown, 10, 2, Method::sdpOptimal), 0.5287304809, 2e-8);
}

TEST(Optimal, AtLeastSrmAndAtMostOne) {
    for (int d : {2, 3}) {
        for (int N = 1; N <= 16; ++N) {
            const double srm = total(Scenario::unknownUnknown, N, d, Method::srm);
            const double opt = total(Scenario::unknownUnknown, N, d, Method::sdpOptimal);
            EXPECT_GE(opt, srm - 1e-9) << "N=" << N << " d=" << d;
            EXPECT_LE(opt, 1.0 + 1e-9);
        }
    }
}

TEST(Optimal, CertificatesHold) {
    DiscriminationOptions opt;
    opt.keep_certificates = true;
    auto r = total_success({Scenario::unknownUnknown, StringParams(14, 2), Method::sdpOptimal}, opt);
    auto blocks = scenario_blocks(Scenario::unknownUnknown, 14, 2);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& out = r.per_block[i];
        ASSERT_TRUE(out.certificate.has_value());
        if (blocks[i].size() == 1 || blocks[i].identical_states) continue;
        Eigen::MatrixXd states = psd_sqrt(blocks[i].dense).dense();
        CertificateReport rep = check_certificate(states, *out.certificate);
        EXPECT_TRUE(rep.holds(1e-8)) << out.label;
    }
}

TEST(Scenarios, BoundsAndOrdering) {
    for (int d : {2, 3, 4}) {
        const double ceiling = p0_known(d);
        for (int N = 1; N <= 40; N += 3) {
            const double unknown = total(Scenario::unknownUnknown, N, d, Method::srm);
            const double known = total(Scenario::knownUnknown, N, d, Method::srm);
            EXPECT_GE(unknown, 1.0 / N - 1e-12);
            EXPECT_GE(known, unknown - 1e-9) << "N=" << N << " d=" << d;
            // Small strings sit above the large-N limit, as for known states in both domains.
            if (N >= 4) {
                EXPECT_LE(known, ceiling + 1e-3) << "N=" << N << " d=" << d;
            }
        }
    }
}

TEST(Scenarios, KnownTwoQubitHelstromOracle) {
    // rho_1 = |0><0| (x) I/2 and rho_2 = Pi_sym/3 with equal priors.
    Eigen::MatrixXd rho1 = Eigen::MatrixXd::Zero(4, 4);
    rho1(0, 0) = rho1(1, 1) = 0.5;
    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(4, 4);
    sym(0, 0) = sym(3, 3) = 1;
    sym.block(1, 1, 2, 2).setConstant(0.5);
    Eigen::MatrixXd diff = 0.5 * rho1 - 0.5 * sym / 3;
    const double helstrom = 0.5 + 0.5 * eig_sym(SymmetricMatrix::from_upper(diff)).values.cwiseAbs().sum();
    EXPECT_NEAR(helstrom, 0.5 + (3 + std::sqrt(13.0)) / 24, 1e-15);
    EXPECT_NEAR(total(Scenario::knownUnknown, 2, 2, Method::sdpOptimal), helstrom, 1e-8);
}

TEST(Scenarios, KnownOptimalAboveUnknownOptimal) {
    for (int N = 2; N <= 12; N += 2) {
        EXPECT_GE(total(Scenario::knownUnknown, N, 2, Method::sdpOptimal),
                  total(Scenario::unknownUnknown, N, 2, Method::sdpOptimal) - 1e-9);
    }
}

TEST(Scenarios, SingleParticle) {
    EXPECT_NEAR(total(Scenario::unknownUnknown, 1, 2, Method::srm), 1.0, 1e-15);
    EXPECT_NEAR(total(Scenario::knownUnknown, 1, 3, Method::sdpOptimal), 1.0, 1e-15);
}

TEST(Capacity, Enforced) {
    DiscriminationOptions opt;
    opt.capacity.sdp = 10;
    EXPECT_THROW(total_success({Scenario::unknownUnknown, StringParams(11, 2), Method::sdpOptimal}, opt), CapacityError);
    auto pts = success_curve(Scenario::unknownUnknown, 2, {8, 12}, Method::sdpOptimal, opt);
    EXPECT_EQ(pts[0].status, "ok");
    EXPECT_TRUE(std::isnan(pts[1].total));
    EXPECT_NE(pts[1].status.find("capacity"), std::string::npos);
}

TEST(Curve, MatchesPointwiseTotalsAndIsDeterministic) {
    std::vector<int> ns{2, 5, 9, 20};
    DiscriminationOptions one, many;
    many.threads = 3;
    auto a = success_curve(Scenario::unknownUnknown, 2, ns, Method::sdpOptimal, one);
    auto b = success_curve(Scenario::unknownUnknown, 2, ns, Method::sdpOptimal, many);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        EXPECT_EQ(a[i].total, b[i].total);
        EXPECT_NEAR(a[i].total, total(Scenario::unknownUnknown, ns[i], 2, Method::sdpOptimal), 1e-14);
    }
    EXPECT_THROW(success_curve(Scenario::unknownUnknown, 2, {5, 3}, Method::srm), DomainError);
}

TEST(Curve, SrmMonotoneTail) {
    std::vector<int> ns;
    for (int N = 8; N <= 120; N += 4) ns.push_back(N);
    auto pts = success_curve(Scenario::unknownUnknown, 2, ns, Method::srm);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_GE(pts[i].total, pts[i - 1].total - 1e-12) << ns[i];
}

TEST(Diagnostics, PrintsOneLinePerBlock) {
    std::ostringstream os;
    DiscriminationOptions opt;
    opt.diagnostics = &os;
    total_success({Scenario::unknownUnknown, StringParams(6, 2), Method::sdpOptimal}, opt);
    const std::string s = os.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
    EXPECT_NE(s.find("gaps="), std::string::npos);
}

}  // namespace
}  // namespace qedge
