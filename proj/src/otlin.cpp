#include "cone/otlin.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace cone {

namespace {

// Row-wise logsumexp of logk + 1 v^T, stabilized.
Eigen::VectorXd lse_rows(const Eigen::MatrixXd& logk, const Eigen::VectorXd& v) {
    Eigen::MatrixXd shifted = logk.rowwise() + v.transpose();
    Eigen::VectorXd mx = shifted.rowwise().maxCoeff();
    return mx.array() +
           (shifted.colwise() - mx).array().exp().rowwise().sum().log();
}

Eigen::VectorXd lse_cols(const Eigen::MatrixXd& logk, const Eigen::VectorXd& u) {
    Eigen::MatrixXd shifted = logk.colwise() + u;
    Eigen::VectorXd mx = shifted.colwise().maxCoeff();
    return mx.array() +
           (shifted.rowwise() - mx.transpose()).array().exp().colwise().sum().transpose().log();
}

}  // namespace

TransportPlan sinkhorn(const Eigen::MatrixXd& cost, double lambda,
                       const Eigen::VectorXd& row_marginal,
                       const Eigen::VectorXd& col_marginal,
                       const SinkhornOptions& opts) {
    if (!cost.allFinite()) throw std::invalid_argument("sinkhorn: non-finite cost");
    if (lambda <= 0) throw std::invalid_argument("sinkhorn: lambda must be positive");
    if (cost.rows() != row_marginal.size() || cost.cols() != col_marginal.size())
        throw std::invalid_argument("sinkhorn: marginal size mismatch");

    const Eigen::MatrixXd logk = (-cost / lambda);
    const Eigen::VectorXd loga = row_marginal.array().log();
    const Eigen::VectorXd logb = col_marginal.array().log();

    // Potentials are kept divided by lambda.
    Eigen::VectorXd u = Eigen::VectorXd::Zero(cost.rows());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cost.cols());

    TransportPlan plan;
    plan.row_marginal = row_marginal;
    plan.col_marginal = col_marginal;

    for (int it = 0; it < opts.max_iter; ++it) {
        u = loga - lse_rows(logk, v);
        v = logb - lse_cols(logk, u);
        plan.iterations = it + 1;

        Eigen::MatrixXd p = ((logk.colwise() + u).rowwise() + v.transpose()).array().exp();
        plan.row_residual = (p.rowwise().sum() - row_marginal).cwiseAbs().sum();
        plan.col_residual = (p.colwise().sum().transpose() - col_marginal).cwiseAbs().sum();
        if (opts.track_dual) {
            const double dual = lambda * (row_marginal.dot(u) + col_marginal.dot(v) - p.sum());
            plan.dual_trace.push_back(dual);
        }
        if (plan.row_residual < opts.tol && plan.col_residual < opts.tol) {
            plan.values = std::move(p);
            plan.converged = true;
            return plan;
        }
        if (it + 1 == opts.max_iter) plan.values = std::move(p);
    }
    plan.converged = false;  // caller decides whether this matters
    return plan;
}

TransportPlan sinkhorn_uniform(const Eigen::MatrixXd& cost, double lambda,
                               double mass, const SinkhornOptions& opts) {
    const auto n = cost.rows();
    const auto m = cost.cols();
    return sinkhorn(cost, lambda,
                    Eigen::VectorXd::Constant(n, mass / n),
                    Eigen::VectorXd::Constant(m, mass / m), opts);
}

OrthogonalTransform procrustes_from_cross(const Eigen::MatrixXd& cross) {
    if (cross.rows() != cross.cols())
        throw std::invalid_argument("procrustes: cross-covariance must be square");
    const int d = static_cast<int>(cross.rows());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double tol = d * std::numeric_limits<double>::epsilon() * (d > 0 ? s(0) : 0.0);
    int rank = 0;
    while (rank < d && s(rank) > tol) ++rank;

    OrthogonalTransform out;
    if (rank == d) {
        out.values = svd.matrixU() * svd.matrixV().transpose();
        return out;
    }
    // Rank-deficient: the nullspace block of U and V is an arbitrary valid
    // completion. Resolve it toward the identity: maximize trace(Q) over the
    // free orthogonal factor W in Q = Ur Vr^T + Up W Vp^T.
    out.rank_deficient = true;
    const Eigen::MatrixXd ur = svd.matrixU().leftCols(rank);
    const Eigen::MatrixXd vr = svd.matrixV().leftCols(rank);
    const Eigen::MatrixXd up = svd.matrixU().rightCols(d - rank);
    const Eigen::MatrixXd vp = svd.matrixV().rightCols(d - rank);
    Eigen::JacobiSVD<Eigen::MatrixXd> wsvd(up.transpose() * vp,
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd w = wsvd.matrixU() * wsvd.matrixV().transpose();
    out.values = ur * vr.transpose() + up * w * vp.transpose();
    return out;
}

OrthogonalTransform procrustes(const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2) {
    if (y1.rows() != y2.rows() || y1.cols() != y2.cols())
        throw std::invalid_argument("procrustes: shape mismatch");
    return procrustes_from_cross(y1.transpose() * y2);
}

TransportPlan fw_linear_step(const Eigen::MatrixXd& gradient, double lambda0,
                             double mass, const SinkhornOptions& opts) {
    return sinkhorn_uniform(gradient, lambda0, mass, opts);
}

}  // namespace cone
