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

// Minimum-error discrimination of pure states as a semidefinite program.
//
// States are given as the columns s_k of a real matrix (for Gram-based input,
// the columns of sqrt(G), whose squared norms are the priors). The primal is
//   max sum_k s_k^T E_k s_k   s.t.  E_k >= 0,  sum_k E_k = I
// and the dual is
//   min tr(Y)                 s.t.  Y >= s_k s_k^T  for all k.
// The dual is solved by a log-det barrier path-following method. Every
// barrier iterate Y is strictly dual feasible; a primal point is recovered
// from the barrier gradient terms and renormalised so sum_k E_k = I holds to
// rounding, so tr(Y) - value(E) is a rigorous duality gap.

#ifndef QEDGE_SDP_HPP
#define QEDGE_SDP_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qedge/errors.hpp"
#include "qedge/linalg.hpp"

namespace qedge {

enum class SdpStatus { converged, maxIterations, numericalFailure };

inline const char* to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::converged: return "converged";
        case SdpStatus::maxIterations: return "maxIterations";
        case SdpStatus::numericalFailure: return "numericalFailure";
    }
    return "unknown";
}

struct SdpOptions {
    double gap_tol = 1e-8;
    double rank_tol = 1e-12;
    int max_iterations = 200;  ///< Newton steps
    double barrier_growth = 10.0;
};

struct SdpSolution {
    std::vector<Eigen::MatrixXd> primal;  ///< POVM elements E_k, n x n
    Eigen::MatrixXd dual;                 ///< certificate Y
    double primal_value = 0;
    double dual_value = 0;
    double gap = 0;
    int iterations = 0;
    int rank = 0;  ///< numerical rank of the state frame
    SdpStatus status = SdpStatus::numericalFailure;
    std::vector<double> gap_trajectory;
    std::string message;
};

namespace detail {

// Barrier state at a dual point Y for rank-one constraints Y - s s^T > 0.
// By Sherman-Morrison, (Y - s s^T)^{-1} = W + c c^T with W = Y^{-1},
// c = W s / sqrt(beta), beta = 1 - s^T W s.
struct BarrierEval {
    Eigen::MatrixXd w;
    Eigen::MatrixXd c;  // r x n, column k is c_k
    Eigen::VectorXd beta;
    double log_det_y = 0;
};

inline bool barrier_eval(const Eigen::MatrixXd& y, const Eigen::MatrixXd& states, BarrierEval& out) {
    Eigen::LLT<Eigen::MatrixXd> llt(y);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::MatrixXd& l = llt.matrixLLT();
    double ld = 0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        if (!(l(i, i) > 0)) return false;
        ld += std::log(l(i, i));
    }
    Eigen::MatrixXd half = llt.matrixL().solve(states);
    out.beta = Eigen::VectorXd::Ones(states.cols()) - half.colwise().squaredNorm().transpose();
    if (!(out.beta.minCoeff() > 0)) return false;
    out.w = llt.solve(Eigen::MatrixXd::Identity(y.rows(), y.cols()));
    out.c = llt.solve(states);
    for (Eigen::Index k = 0; k < states.cols(); ++k) out.c.col(k) /= std::sqrt(out.beta(k));
    out.log_det_y = 2 * ld;
    return true;
}

inline double barrier_value(double t, const Eigen::MatrixXd& y, const BarrierEval& e) {
    return t * y.trace() - static_cast<double>(e.c.cols()) * e.log_det_y - e.beta.array().log().sum();
}

// Symmetric matrices <-> coordinates in the orthonormal basis
// {E_ii} U {(E_ij + E_ji)/sqrt 2, i < j}.
inline Eigen::VectorXd svec(const Eigen::MatrixXd& a) {
    const Eigen::Index r = a.rows();
    Eigen::VectorXd v(r * (r + 1) / 2);
    Eigen::Index p = 0;
    for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index i = 0; i <= j; ++i) v(p++) = i == j ? a(i, i) : std::sqrt(2.0) * a(i, j);
    return v;
}

inline Eigen::MatrixXd smat(const Eigen::VectorXd& v, Eigen::Index r) {
    Eigen::MatrixXd a(r, r);
    Eigen::Index p = 0;
    for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index i = 0; i <= j; ++i) {
            double x = i == j ? v(p) : v(p) / std::sqrt(2.0);
            a(i, j) = x;
            a(j, i) = x;
            ++p;
        }
    return a;
}

// Hessian of -sum_k log det(Y - s_k s_k^T) in svec coordinates:
// H_pq = sum_k tr(A_k B_p A_k B_q), A_k = W + c_k c_k^T.
inline Eigen::MatrixXd barrier_hessian(const BarrierEval& e) {
    const Eigen::Index r = e.w.rows();
    const Eigen::Index n = e.c.cols();
    const Eigen::Index m = r * (r + 1) / 2;
    const double dn = static_cast<double>(n);
    const Eigen::MatrixXd& w = e.w;
    Eigen::MatrixXd cc = e.c * e.c.transpose();

    std::vector<Eigen::Index> pi(m), pj(m);
    std::vector<double> gam(m);
    {
        Eigen::Index p = 0;
        for (Eigen::Index j = 0; j < r; ++j)
            for (Eigen::Index i = 0; i <= j; ++i, ++p) {
                pi[p] = i;
                pj[p] = j;
                gam[p] = i == j ? 0.5 : 1.0 / std::sqrt(2.0);
            }
    }

    // Quartic term 2 sum_s (c_si c_sj)(c_sk c_sl) as a Gram product.
    Eigen::MatrixXd z(m, n);
    for (Eigen::Index p = 0; p < m; ++p) z.row(p) = e.c.row(pi[p]).cwiseProduct(e.c.row(pj[p]));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    h.selfadjointView<Eigen::Lower>().rankUpdate(z, 2.0);  // fills the lower triangle

    for (Eigen::Index q = 0; q < m; ++q) {
        const Eigen::Index k = pi[q], l = pj[q];
        for (Eigen::Index p = q; p < m; ++p) {
            const Eigen::Index i = pi[p], j = pj[p];
            double s = dn * (w(i, k) * w(j, l) + w(i, l) * w(j, k)) + w(i, k) * cc(j, l) + cc(i, k) * w(j, l) +
                       w(i, l) * cc(j, k) + cc(i, l) * w(j, k);
            h(p, q) = 2 * gam[p] * gam[q] * (h(p, q) + s);
        }
    }
    return h;
}

// Primal point from the barrier terms A_k / t, renormalised by S^{-1/2}.
inline std::vector<Eigen::MatrixXd> recover_primal(const BarrierEval& e, double& value, const Eigen::MatrixXd& states) {
    const Eigen::Index r = e.w.rows();
    const Eigen::Index n = e.c.cols();
    Eigen::MatrixXd sum = static_cast<double>(n) * e.w + e.c * e.c.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sum);
    if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0)) {
        throw NumericalFailure("sdp: POVM normalisation failed");
    }
    Eigen::MatrixXd isq = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                          es.eigenvectors().transpose();
    Eigen::MatrixXd wn = isq * e.w * isq;
    Eigen::MatrixXd cn = isq * e.c;
    std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(n));
    value = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::MatrixXd ek = wn + cn.col(k) * cn.col(k).transpose();
        value += states.col(k).dot(ek * states.col(k));
        out[static_cast<std::size_t>(k)] = std::move(ek);
    }
    (void)r;
    return out;
}

// Path following on states already reduced to full row rank and scaled so
// that max_k |s_k|^2 = 1.
inline SdpSolution solve_reduced(const Eigen::MatrixXd& states, double gap_tol, const SdpOptions& opt) {
    const Eigen::Index r = states.rows();
    const Eigen::Index n = states.cols();
    const Eigen::Index m = r * (r + 1) / 2;
    SdpSolution sol;
    sol.rank = static_cast<int>(r);

    double max_tr = states.colwise().squaredNorm().maxCoeff();
    Eigen::MatrixXd y = (1.0 + max_tr) * Eigen::MatrixXd::Identity(r, r);
    BarrierEval ev;
    if (!barrier_eval(y, states, ev)) throw NumericalFailure("sdp: initial point infeasible");

    // Start where tI best matches sum_k A_k in trace.
    double t = (static_cast<double>(n) * ev.w.trace() + ev.c.squaredNorm()) / static_cast<double>(r);
    const double mu = opt.barrier_growth;

    auto finish_primal = [&](void) {
        double value = 0;
        sol.primal = recover_primal(ev, value, states);
        sol.primal_value = value;
        sol.dual_value = y.trace();
        sol.gap = sol.dual_value - sol.primal_value;
        sol.dual = y;
    };

    int steps = 0;
    while (true) {
        // Gradient t I - sum_k A_k.
        Eigen::MatrixXd grad = t * Eigen::MatrixXd::Identity(r, r) - static_cast<double>(n) * ev.w -
                               ev.c * ev.c.transpose();
        Eigen::VectorXd g = svec(grad);
        Eigen::MatrixXd h = barrier_hessian(ev);
        Eigen::LLT<Eigen::MatrixXd> hl(h);
        if (hl.info() != Eigen::Success) {
            double shift = 1e-14 * h.diagonal().cwiseAbs().maxCoeff();
            h.diagonal().array() += shift;
            hl.compute(h);
            if (hl.info() != Eigen::Success) {
                finish_primal();
                sol.status = SdpStatus::numericalFailure;
                sol.message = "Newton system not positive definite";
                sol.iterations = steps;
                return sol;
            }
        }
        Eigen::VectorXd dx = hl.solve(-g);
        const double decrement = -g.dot(dx);

        if (decrement < 0.5 || !std::isfinite(decrement)) {
            finish_primal();
            sol.gap_trajectory.push_back(sol.gap);
            if (sol.gap <= gap_tol) {
                sol.status = SdpStatus::converged;
                sol.iterations = steps;
                return sol;
            }
            // Barrier parameter large enough that the central gap n r / t is
            // well below the measured gap: further growth cannot help.
            if (t > 1e3 * static_cast<double>(n * r) / std::numeric_limits<double>::epsilon()) {
                sol.status = SdpStatus::numericalFailure;
                sol.message = "barrier parameter exhausted";
                sol.iterations = steps;
                return sol;
            }
            t *= mu;
            continue;
        }
        if (steps >= opt.max_iterations) {
            finish_primal();
            sol.status = SdpStatus::maxIterations;
            sol.iterations = steps;
            return sol;
        }

        Eigen::MatrixXd dy = smat(dx, r);
        const double f0 = barrier_value(t, y, ev);
        double alpha = 1.0;
        BarrierEval trial;
        Eigen::MatrixXd y_new;
        bool accepted = false;
        while (alpha > 1e-14) {
            y_new = y + alpha * dy;
            if (barrier_eval(y_new, states, trial) && barrier_value(t, y_new, trial) <= f0 - 0.25 * alpha * decrement) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        ++steps;
        if (!accepted) {
            finish_primal();
            sol.gap_trajectory.push_back(sol.gap);
            sol.iterations = steps;
            if (sol.gap <= gap_tol) {
                sol.status = SdpStatus::converged;
            } else {
                sol.status = SdpStatus::numericalFailure;
                sol.message = "line search collapsed";
            }
            return sol;
        }
        y = std::move(y_new);
        ev = std::move(trial);
        (void)m;
    }
}

}  // namespace detail

/// Solves the discrimination SDP for the pure states in the columns of `states`.
/// The frame is deflated to its numerical rank; the POVM is completed on the
/// null space by assigning it to the hypothesis with the largest prior (lowest
/// index on ties).
inline SdpSolution solve_discrimination_sdp(const Eigen::MatrixXd& states, const SdpOptions& opt = {}) {
    const Eigen::Index dim = states.rows();
    const Eigen::Index n = states.cols();
    if (n < 1 || dim < 1) throw DomainError("solve_discrimination_sdp: empty input");
    if (!states.allFinite()) throw DomainError("solve_discrimination_sdp: non-finite input");

    Eigen::VectorXd norms = states.colwise().squaredNorm().transpose();
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < n; ++k)
        if (norms(k) > norms(best)) best = k;
    const double scale = norms(best);

    SdpSolution sol;
    if (scale == 0.0) {
        sol.primal.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(dim, dim));
        sol.primal[static_cast<std::size_t>(best)] = Eigen::MatrixXd::Identity(dim, dim);
        sol.dual = Eigen::MatrixXd::Zero(dim, dim);
        sol.status = SdpStatus::converged;
        return sol;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> frame(states * states.transpose());
    if (frame.info() != Eigen::Success) throw NumericalFailure("solve_discrimination_sdp: frame eigensolver failed");
    const double top = frame.eigenvalues().maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < dim; ++i)
        if (frame.eigenvalues()(i) >= opt.rank_tol * top) keep.push_back(i);
    const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd basis(dim, r);
    for (Eigen::Index i = 0; i < r; ++i) basis.col(i) = frame.eigenvectors().col(keep[static_cast<std::size_t>(i)]);
    Eigen::MatrixXd reduced = basis.transpose() * states / std::sqrt(scale);

    SdpSolution red;
    if (r == 1) {
        // One-dimensional frame: measure everything into the largest prior.
        red.rank = 1;
        red.primal.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(1, 1));
        red.primal[static_cast<std::size_t>(best)](0, 0) = 1.0;
        red.primal_value = reduced.col(best).squaredNorm();
        red.dual = Eigen::MatrixXd::Constant(1, 1, red.primal_value);
        red.dual_value = red.primal_value;
        red.gap = 0;
        red.status = SdpStatus::converged;
    } else {
        red = detail::solve_reduced(reduced, opt.gap_tol / scale, opt);
    }

    sol = red;
    sol.rank = static_cast<int>(r);
    sol.primal_value = scale * red.primal_value;
    sol.dual_value = scale * red.dual_value;
    sol.gap = scale * red.gap;
    for (double& g : sol.gap_trajectory) g *= scale;
    sol.dual = scale * basis * red.dual * basis.transpose();
    Eigen::MatrixXd null_proj = Eigen::MatrixXd::Identity(dim, dim) - basis * basis.transpose();
    for (Eigen::Index k = 0; k < n; ++k) {
        auto& e = sol.primal[static_cast<std::size_t>(k)];
        e = basis * red.primal[static_cast<std::size_t>(k)] * basis.transpose();
        if (k == best) e += null_proj;
    }
    return sol;
}

inline SdpSolution solve_discrimination_sdp(const SymmetricMatrix& sqrt_gram, double gap_tol = 1e-8) {
    SdpOptions opt;
    opt.gap_tol = gap_tol;
    return solve_discrimination_sdp(sqrt_gram.dense(), opt);
}

/// Optimality conditions for a candidate solution.
struct CertificateReport {
    double min_dual_slack = 0;       ///< min_k lambda_min(Y - s_k s_k^T)
    double max_slackness = 0;        ///< max_k |tr((Y - s_k s_k^T) E_k)|
    double min_povm_eigenvalue = 0;  ///< min_k lambda_min(E_k)
    double completeness = 0;         ///< max |sum_k E_k - I|
    double gap = 0;

    bool holds(double tol = 1e-8) const {
        return min_dual_slack >= -tol && max_slackness <= tol && min_povm_eigenvalue >= -tol && completeness <= tol &&
               gap <= tol;
    }
};

inline CertificateReport check_certificate(const Eigen::MatrixXd& states, const SdpSolution& sol) {
    CertificateReport rep;
    const Eigen::Index dim = states.rows();
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(dim, dim);
    rep.min_dual_slack = INFINITY;
    rep.min_povm_eigenvalue = INFINITY;
    for (Eigen::Index k = 0; k < states.cols(); ++k) {
        const auto& e = sol.primal.at(static_cast<std::size_t>(k));
        Eigen::MatrixXd slack = sol.dual - states.col(k) * states.col(k).transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ss(slack, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
        rep.min_dual_slack = std::min(rep.min_dual_slack, ss.eigenvalues().minCoeff());
        rep.min_povm_eigenvalue = std::min(rep.min_povm_eigenvalue, es.eigenvalues().minCoeff());
        rep.max_slackness = std::max(rep.max_slackness, std::abs((slack * e).trace()));
        total += e;
    }
    rep.completeness = (total - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    rep.gap = sol.gap;
    return rep;
}

}  // namespace qedge

#endif
