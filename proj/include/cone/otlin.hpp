#ifndef CONE_OTLIN_HPP
#define CONE_OTLIN_HPP

#include <vector>

#include <Eigen/Dense>

namespace cone {

struct SinkhornOptions {
    int max_iter = 500;
    double tol = 1e-6;          // L1 marginal residual
    bool track_dual = false;    // record the dual objective per iteration
};

struct TransportPlan {
    Eigen::MatrixXd values;
    Eigen::VectorXd row_marginal;
    Eigen::VectorXd col_marginal;
    double row_residual = 0.0;
    double col_residual = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<double> dual_trace;  // filled when track_dual is set
};

struct OrthogonalTransform {
    Eigen::MatrixXd values;
    bool rank_deficient = false;  // cross-covariance had (numerically) zero singular values

    double orthogonality_residual() const {
        const auto& q = values;
        return (q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols())).norm();
    }
};

// Entropic OT via log-domain Sinkhorn with explicit target marginals.
// The kernel is exp(-cost/lambda). A plan is always returned; `converged`
// reports whether the residual tolerance was met.
TransportPlan sinkhorn(const Eigen::MatrixXd& cost, double lambda,
                       const Eigen::VectorXd& row_marginal,
                       const Eigen::VectorXd& col_marginal,
                       const SinkhornOptions& opts = {});

// Uniform-marginal convenience overload; `mass` is the total plan mass
// (1 for a Wasserstein coupling, n for the Birkhoff polytope).
TransportPlan sinkhorn_uniform(const Eigen::MatrixXd& cost, double lambda,
                               double mass = 1.0, const SinkhornOptions& opts = {});

// Orthogonal Procrustes: Q = U V^T from the SVD of Y1^T Y2, minimizing
// ||Y1 Q - Y2||_F over orthogonal Q. When the cross-covariance is rank
// deficient the nullspace completion is chosen to maximize trace(Q)
// (identity-biased), which is one of the valid SVD completions; the
// result is flagged.
OrthogonalTransform procrustes(const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2);

// Same solver applied to a precomputed d x d cross-covariance.
OrthogonalTransform procrustes_from_cross(const Eigen::MatrixXd& cross);

// Frank-Wolfe linear minimization oracle over the (scaled) Birkhoff
// polytope, smoothed entropically: sinkhorn on cost = gradient.
TransportPlan fw_linear_step(const Eigen::MatrixXd& gradient, double lambda0,
                             double mass, const SinkhornOptions& opts = {});

}  // namespace cone

#endif
