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

#include <algorithm>
#include <functional>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "qedge/combinatorics.hpp"

namespace qedge {
namespace {

// Count multisets of size n drawn from d symbols by brute-force enumeration
// of non-decreasing sequences.
long count_multisets(int n, int d) {
    std::vector<int> seq(static_cast<std::size_t>(n), 0);
    long count = 0;
    while (true) {
        ++count;
        int i = n - 1;
        while (i >= 0 && seq[static_cast<std::size_t>(i)] == d - 1) --i;
        if (i < 0) break;
        const int v = seq[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < n; ++j) seq[static_cast<std::size_t>(j)] = v;
    }
    return count;
}

// Semistandard tableaux of shape [N - lambda, lambda] with entries 0..d-1.
long count_ssyt(int N, int lambda, int d) {
    const int top = N - lambda;
    std::vector<int> row1(static_cast<std::size_t>(top)), row2(static_cast<std::size_t>(lambda));
    long count = 0;
    // Row 1 as a non-decreasing sequence, then row 2 with strict column increase.
    std::function<void(int, int)> fill2 = [&](int pos, int lo) {
        if (pos == lambda) {
            ++count;
            return;
        }
        for (int v = std::max(lo, row1[static_cast<std::size_t>(pos)] + 1); v < d; ++v) {
            row2[static_cast<std::size_t>(pos)] = v;
            fill2(pos + 1, v);
        }
    };
    std::function<void(int, int)> fill1 = [&](int pos, int lo) {
        if (pos == top) {
            fill2(0, 0);
            return;
        }
        for (int v = lo; v < d; ++v) {
            row1[static_cast<std::size_t>(pos)] = v;
            fill1(pos + 1, v);
        }
    };
    fill1(0, 0);
    return count;
}

TEST(StringParams, RejectsBadArguments) {
    EXPECT_THROW(StringParams(0, 2), DomainError);
    EXPECT_THROW(StringParams(3, 1), DomainError);
    EXPECT_NO_THROW(StringParams(1, 2));
}

TEST(SymDim, MatchesMultisetCount) {
    for (int d = 2; d <= 5; ++d)
        for (int n = 0; n <= 9; ++n) EXPECT_EQ(sym_dim(n, d), BigInt(count_multisets(n, d))) << "n=" << n << " d=" << d;
}

TEST(IrrepDim, MatchesTableauCount) {
    EXPECT_EQ(irrep_dim(4, 2, 1), BigInt(3));
    EXPECT_EQ(irrep_dim(4, 3, 2), BigInt(6));
    for (int d = 2; d <= 4; ++d)
        for (int N = 1; N <= 8; ++N)
            for (int lambda = 0; 2 * lambda <= N; ++lambda)
                EXPECT_EQ(irrep_dim(N, d, lambda), BigInt(count_ssyt(N, lambda, d)))
                    << "N=" << N << " d=" << d << " lambda=" << lambda;
}

TEST(IrrepDim, RejectsLambdaOutOfRange) {
    EXPECT_THROW(irrep_dim(4, 2, 3), DomainError);
    EXPECT_THROW(irrep_dim(4, 2, -1), DomainError);
}

TEST(Priors, SmallExamples) {
    auto p = priors(2, 2, 1);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0].k, 1);
    EXPECT_EQ(p[0].eta, BigRational(1, 8));

    auto q = priors(2, 2, 0);
    ASSERT_EQ(q.size(), 2u);
    EXPECT_EQ(q[0].k, 1);
    EXPECT_EQ(q[0].eta, BigRational(3, 8));
    EXPECT_EQ(q[1].k, 2);
    EXPECT_EQ(q[1].eta, BigRational(1, 2));
}

TEST(Priors, SumToOneExactly) {
    for (int d : {2, 3, 4, 8}) {
        for (int N : {1, 2, 3, 7, 20, 51, 200}) {
            BigRational total = 0;
            for (int lambda = 0; 2 * lambda <= N; ++lambda)
                for (const auto& p : priors(N, d, lambda)) total += p.eta;
            EXPECT_EQ(total, BigRational(1)) << "N=" << N << " d=" << d;
        }
    }
}

TEST(Priors, PositiveAndRangeMatchesHypotheses) {
    for (int N = 1; N <= 15; ++N) {
        for (int lambda = 0; 2 * lambda <= N; ++lambda) {
            auto [k0, k1] = hypothesis_range(N, lambda);
            auto p = priors(N, 3, lambda);
            ASSERT_EQ(static_cast<int>(p.size()), std::max(0, k1 - k0 + 1));
            for (const auto& e : p) EXPECT_GT(e.eta, 0);
        }
    }
}

TEST(IrrepBlock, Accessors) {
    IrrepBlock b = make_irrep_block(7, 2, 2);
    EXPECT_EQ(b.k_first, 2);
    EXPECT_EQ(b.k_last, 5);
    EXPECT_EQ(b.size(), 4);
    EXPECT_EQ(b.twice_j(), 3);
    EXPECT_DOUBLE_EQ(b.j(), 1.5);
}

TEST(ClebschGordan, CouplingsAreNormalised) {
    // The two ways (alpha = 0, 1) of reaching a given (n, lambda, w) through
    // the same row carry unit total weight.
    for (int n = 1; n <= 12; ++n) {
        for (int lambda = 0; 2 * lambda <= n; ++lambda) {
            for (int w = lambda; w <= n - lambda; ++w) {
                if (2 * lambda < n) {
                    const double a = cg_coefficient(1, 0, n, lambda, w), b = cg_coefficient(1, 1, n, lambda, w);
                    EXPECT_NEAR(a * a + b * b, 1.0, 1e-14);
                }
                if (lambda >= 1) {
                    const double a = cg_coefficient(2, 0, n, lambda, w), b = cg_coefficient(2, 1, n, lambda, w);
                    EXPECT_NEAR(a * a + b * b, 1.0, 1e-14);
                }
            }
        }
    }
}

TEST(ClebschGordan, KnownValues) {
    // Two qubits: the singlet (1,2) from |01> - |10>.
    EXPECT_NEAR(cg_coefficient(2, 1, 2, 1, 1), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(cg_coefficient(2, 0, 2, 1, 1), -std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(cg_coefficient(1, 0, 2, 0, 1), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(cg_coefficient(1, 1, 2, 0, 2), 1.0, 1e-15);
    EXPECT_THROW(cg_coefficient(3, 0, 2, 0, 1), DomainError);
}

TEST(Yamanouchi, ValidityAndSpelling) {
    EXPECT_TRUE(is_yamanouchi(0b010, 3, 1));   // 1 2 1
    EXPECT_TRUE(is_yamanouchi(0b100, 3, 1));   // 1 1 2
    EXPECT_FALSE(is_yamanouchi(0b001, 3, 1));  // 2 1 1
    EXPECT_FALSE(is_yamanouchi(0b110, 3, 2));
    EXPECT_EQ(yamanouchi_string(0b1010, 4), "1212");
}

TEST(OmegaVector, UnitNormAndSupportOnStandardTableaux) {
    for (int N = 1; N <= 10; ++N) {
        for (int lambda = 0; 2 * lambda <= N; ++lambda) {
            auto [k0, k1] = hypothesis_range(N, lambda);
            for (int k = k0; k <= k1; ++k) {
                SchurVector v = omega_vector(N, k, lambda);
                EXPECT_NEAR(v.norm_squared(), 1.0, 1e-12) << N << " " << k << " " << lambda;
                for (const auto& [q, a] : v.amplitudes) EXPECT_TRUE(is_yamanouchi(q, N, lambda));
            }
        }
    }
}

TEST(OmegaVector, PhaseOfLowestState) {
    for (int N = 2; N <= 9; ++N) {
        for (int lambda = 1; 2 * lambda <= N; ++lambda) {
            SchurVector v = omega_vector(N, lambda, lambda);
            // Yamanouchi 1^{N-lambda} 2^lambda: row-2 particles are the last lambda.
            Yamanouchi q = 0;
            for (int n = N - lambda + 1; n <= N; ++n) q |= Yamanouchi{1} << (n - 1);
            const double sign = (lambda % 2) ? -1.0 : 1.0;
            EXPECT_GT(sign * v.amplitude(q), 0.0) << "N=" << N << " lambda=" << lambda;
        }
    }
}

TEST(OmegaVector, CapacityAndRange) {
    EXPECT_THROW(omega_vector(kOracleMaxN + 1, 3, 1), CapacityError);
    EXPECT_THROW(omega_vector(6, 0, 1), DomainError);
    EXPECT_THROW(omega_vector(6, 6, 1), DomainError);
}

TEST(Overlap, ClosedFormMatchesOracle) {
    for (int N = 1; N <= 12; ++N) {
        for (int lambda = 0; 2 * lambda <= N; ++lambda) {
            auto [k0, k1] = hypothesis_range(N, lambda);
            for (int k = k0; k <= k1; ++k)
                for (int kp = k0; kp <= k1; ++kp)
                    EXPECT_NEAR(overlap_closed(N, k, kp, lambda), overlap_oracle(N, k, kp, lambda), 1e-12)
                        << "N=" << N << " k=" << k << " k'=" << kp << " lambda=" << lambda;
        }
    }
}

TEST(Overlap, KnownValue) { EXPECT_NEAR(overlap_closed(4, 1, 2, 1), std::sqrt(1.0 / 3.0), 1e-15); }

TEST(Overlap, SymmetricAndMultiplicative) {
    // <k|k'><k'|k''> = <k|k''> for k <= k' <= k'': the overlap factorises.
    for (int N = 5; N <= 40; N += 7) {
        for (int lambda = 1; 2 * lambda <= N; lambda += 2) {
            auto [k0, k1] = hypothesis_range(N, lambda);
            for (int k = k0; k <= k1; ++k) {
                for (int kp = k; kp <= k1; ++kp) {
                    EXPECT_DOUBLE_EQ(overlap_closed(N, k, kp, lambda), overlap_closed(N, kp, k, lambda));
                    for (int kpp = kp; kpp <= k1; kpp += 3) {
                        EXPECT_NEAR(overlap_closed(N, k, kp, lambda) * overlap_closed(N, kp, kpp, lambda),
                                    overlap_closed(N, k, kpp, lambda), 1e-13);
                    }
                }
            }
        }
    }
}

TEST(Overlap, ValuesInUnitInterval) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const int N = std::uniform_int_distribution<int>(1, 300)(rng);
        const int lambda = std::uniform_int_distribution<int>(0, N / 2)(rng);
        auto [k0, k1] = hypothesis_range(N, lambda);
        if (k0 > k1) continue;
        std::uniform_int_distribution<int> pick(k0, k1);
        const double o = overlap_closed(N, pick(rng), pick(rng), lambda);
        EXPECT_GE(o, 0.0);
        EXPECT_LE(o, 1.0 + 1e-15);
    }
    EXPECT_THROW(overlap_closed(6, 0, 2, 1), DomainError);
}

}  // namespace
}  // namespace qedge
