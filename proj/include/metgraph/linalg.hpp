#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "metgraph/errors.hpp"
#include "metgraph/graph.hpp"

namespace metgraph {

/// Weighted vertex Laplacian with conductance 1/length per edge.
/// Loops contribute nothing (their coboundary vanishes).
inline Eigen::MatrixXd dense_laplacian(const MetricGraph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& s = g.edge(e);
        if (s.u == s.v) continue;
        const double c = 1.0 / s.length;
        L(s.u, s.u) += c;
        L(s.v, s.v) += c;
        L(s.u, s.v) -= c;
        L(s.v, s.u) -= c;
    }
    return L;
}

/// Reduced-Laplacian solver with one grounded vertex, dense factorization.
/// Solves L x = b with x[ground] = 0 for b summing to zero. Also exposes the
/// full reduced inverse, which turns pairwise effective resistances into
/// O(1) lookups: R(u,v) = M_uu + M_vv - 2 M_uv (grounded rows drop out).
class GroundedLaplacian {
public:
    GroundedLaplacian(const MetricGraph& g, VertexId ground)
        : g_(&g), ground_(ground) {
        const int n = g.vertex_count();
        keep_.reserve(n - 1);
        pos_.assign(n, -1);
        for (VertexId v = 0; v < n; ++v) {
            if (v == ground) continue;
            pos_[v] = static_cast<int>(keep_.size());
            keep_.push_back(v);
        }
        Eigen::MatrixXd L = dense_laplacian(g);
        Eigen::MatrixXd red(n - 1, n - 1);
        for (int i = 0; i < n - 1; ++i)
            for (int j = 0; j < n - 1; ++j) red(i, j) = L(keep_[i], keep_[j]);
        ldlt_.compute(red);
        if (ldlt_.info() != Eigen::Success)
            throw ConvergenceError("reduced Laplacian factorization failed");
        red_ = std::move(red);
    }

    /// Reduced solve with one refinement step; keeps the residual below
    /// 1e-12 * ||b|| on these well-conditioned desk-scale systems.
    Eigen::VectorXd solve_reduced(const Eigen::VectorXd& b_red) const {
        Eigen::VectorXd x = ldlt_.solve(b_red);
        const double bn = b_red.norm();
        if (bn > 0) {
            Eigen::VectorXd r = b_red - red_ * x;
            if (r.norm() > 1e-12 * bn) x += ldlt_.solve(r);
            r = b_red - red_ * x;
            if (r.norm() > 1e-10 * bn)
                throw ConvergenceError("Laplacian solve residual too large");
        }
        return x;
    }

    /// Full-size potential for a full-size right-hand side (must sum to ~0).
    std::vector<double> solve(const std::vector<double>& b) const {
        Eigen::VectorXd br(keep_.size());
        for (std::size_t i = 0; i < keep_.size(); ++i) br(i) = b[keep_[i]];
        Eigen::VectorXd x = solve_reduced(br);
        std::vector<double> out(g_->vertex_count(), 0.0);
        for (std::size_t i = 0; i < keep_.size(); ++i) out[keep_[i]] = x(i);
        return out;
    }

    /// Effective resistance between u and v in the whole graph.
    double resistance(VertexId u, VertexId v) const {
        ensure_inverse();
        if (u == v) return 0.0;
        auto m = [&](VertexId a, VertexId b) -> double {
            if (a == ground_ || b == ground_) return 0.0;
            return inv_(pos_[a], pos_[b]);
        };
        return m(u, u) + m(v, v) - 2.0 * m(u, v);
    }

private:
    void ensure_inverse() const {
        if (inv_.size() == 0)
            inv_ = ldlt_.solve(Eigen::MatrixXd::Identity(red_.rows(), red_.cols()));
    }

    const MetricGraph* g_;
    VertexId ground_;
    std::vector<VertexId> keep_;
    std::vector<int> pos_;
    Eigen::MatrixXd red_;
    Eigen::LDLT<Eigen::MatrixXd> ldlt_;
    mutable Eigen::MatrixXd inv_;
};

/// Sparse single-pair effective resistance, for large nearly-tree graphs
/// (wired truncation balls). Grounds u and solves one system.
inline double pair_resistance_sparse(const MetricGraph& g, VertexId u, VertexId v) {
    if (u == v) return 0.0;
    const int n = g.vertex_count();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(4 * g.edge_count());
    auto pos = [&](VertexId w) { return w < u ? w : w - 1; };  // delete row/col u
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& s = g.edge(e);
        if (s.u == s.v) continue;
        const double c = 1.0 / s.length;
        if (s.u != u && s.v != u) {
            trips.emplace_back(pos(s.u), pos(s.u), c);
            trips.emplace_back(pos(s.v), pos(s.v), c);
            trips.emplace_back(pos(s.u), pos(s.v), -c);
            trips.emplace_back(pos(s.v), pos(s.u), -c);
        } else {
            const VertexId other = (s.u == u) ? s.v : s.u;
            trips.emplace_back(pos(other), pos(other), c);
        }
    }
    Eigen::SparseMatrix<double> L(n - 1, n - 1);
    L.setFromTriplets(trips.begin(), trips.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(L);
    if (chol.info() != Eigen::Success)
        throw ConvergenceError("sparse Laplacian factorization failed");
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n - 1);
    b(pos(v)) = -1.0;  // inject +1 at u (grounded), extract at v
    Eigen::VectorXd x = chol.solve(b);
    Eigen::VectorXd r = b - L * x;
    if (r.norm() > 1e-12 * b.norm()) x += chol.solve(r);
    return -x(pos(v));
}

} // namespace metgraph
