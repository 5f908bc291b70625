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

// Dense symmetric linear algebra on top of Eigen.

#ifndef QEDGE_LINALG_HPP
#define QEDGE_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qedge/errors.hpp"

namespace qedge {

/// Real symmetric matrix. Construction from a general matrix mirrors the
/// upper triangle, so symmetry holds exactly.
class SymmetricMatrix {
   public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(Eigen::Index n) : m_(Eigen::MatrixXd::Zero(n, n)) {}

    static SymmetricMatrix from_upper(const Eigen::MatrixXd& a) {
        if (a.rows() != a.cols()) throw DomainError("SymmetricMatrix: input is not square");
        if (!a.allFinite()) throw DomainError("SymmetricMatrix: non-finite entry");
        SymmetricMatrix s;
        s.m_ = a.selfadjointView<Eigen::Upper>();
        return s;
    }

    static SymmetricMatrix identity(Eigen::Index n) {
        return from_upper(Eigen::MatrixXd::Identity(n, n));
    }

    Eigen::Index order() const { return m_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    void set(Eigen::Index i, Eigen::Index j, double v) {
        if (!std::isfinite(v)) throw DomainError("SymmetricMatrix: non-finite entry");
        m_(i, j) = v;
        m_(j, i) = v;
    }

    const Eigen::MatrixXd& dense() const { return m_; }
    double max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }
    double trace() const { return m_.trace(); }

   private:
    Eigen::MatrixXd m_;
};

struct EigenDecomposition {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXd vectors;  ///< columns are orthonormal eigenvectors
};

inline EigenDecomposition eig_sym(const SymmetricMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense());
    if (es.info() != Eigen::Success) throw NumericalFailure("eig_sym: eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

/// Principal square root. Eigenvalues below rank_tol * lambda_max are set to zero;
/// a negative eigenvalue beyond that band means the input is not PSD.
inline SymmetricMatrix psd_sqrt(const SymmetricMatrix& m, double rank_tol = 1e-12) {
    if (m.order() == 0) return m;
    auto [w, v] = eig_sym(m);
    const double top = std::max(w.maxCoeff(), 0.0);
    if (w.minCoeff() < -rank_tol * top || (top == 0.0 && w.minCoeff() < 0.0)) {
        throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(w.minCoeff()) + " below -rankTol*max (max " +
                          std::to_string(top) + ")");
    }
    Eigen::VectorXd r(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) r(i) = w(i) > rank_tol * top ? std::sqrt(w(i)) : 0.0;
    return SymmetricMatrix::from_upper(v * r.asDiagonal() * v.transpose());
}

/// 2-norm condition number from the spectrum; infinity for singular input.
inline double condition_number(const SymmetricMatrix& m) {
    const Eigen::VectorXd w = eig_sym(m).values.cwiseAbs();
    double lo = w.minCoeff();
    return lo == 0.0 ? INFINITY : w.maxCoeff() / lo;
}

inline SymmetricMatrix inverse(const SymmetricMatrix& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m.dense());
    if (!lu.isInvertible()) throw NumericalFailure("inverse: matrix is singular");
    return SymmetricMatrix::from_upper(lu.inverse());
}

}  // namespace qedge

#endif
