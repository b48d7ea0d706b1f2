#include "cone/subspace.hpp"

#include <stdexcept>

#include <Eigen/SVD>
#include <Eigen/Sparse>

#include "cone/rng.hpp"

namespace cone {

namespace {

Eigen::SparseMatrix<double> sparse_adjacency(const SparseGraph& g) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * g.num_edges());
    for (int i = 0; i < g.num_nodes(); ++i)
        for (int j : g.neighbors(i)) trips.emplace_back(i, j, 1.0);
    Eigen::SparseMatrix<double> a(g.num_nodes(), g.num_nodes());
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& y, const std::vector<int>& idx) {
    Eigen::MatrixXd out(idx.size(), y.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) out.row(r) = y.row(idx[r]);
    return out;
}

// Greedy row-argmax rounding preserving total mass.
Eigen::MatrixXd round_plan(const Eigen::MatrixXd& p) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p.rows(), p.cols());
    const double cell = p.sum() / p.rows();
    for (int i = 0; i < p.rows(); ++i) {
        int arg;
        p.row(i).maxCoeff(&arg);
        out(i, arg) = cell;
    }
    return out;
}

}  // namespace

void SubspaceConfig::validate(int n) const {
    if (fw_iters < 1) throw std::invalid_argument("SubspaceConfig: fw_iters must be >= 1");
    if (wp_iters < 1) throw std::invalid_argument("SubspaceConfig: wp_iters must be >= 1");
    if (batch < 1) throw std::invalid_argument("SubspaceConfig: batch must be >= 1");
    if (batch > n) throw std::invalid_argument("SubspaceConfig: batch larger than n");
    if (eta <= 0) throw std::invalid_argument("SubspaceConfig: eta must be positive");
    if (lambda <= 0 || lambda0 <= 0)
        throw std::invalid_argument("SubspaceConfig: regularization must be positive");
}

ConvexInitResult convex_init(const SparseGraph& g1, const SparseGraph& g2,
                             const SubspaceConfig& cfg) {
    const int n = g1.num_nodes();
    if (n != g2.num_nodes())
        throw std::invalid_argument("convex_init: node counts differ (pad first)");
    cfg.validate(n);

    const Eigen::SparseMatrix<double> a1 = sparse_adjacency(g1);
    const Eigen::SparseMatrix<double> a2 = sparse_adjacency(g2);

    SinkhornOptions sopts;
    sopts.max_iter = cfg.sinkhorn_max_iter;
    sopts.tol = cfg.sinkhorn_tol;

    ConvexInitResult out;
    // Uniform doubly stochastic start; iterates stay in the Birkhoff polytope.
    Eigen::MatrixXd p = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    auto objective = [&](const Eigen::MatrixXd& pl) {
        return (a1 * pl - pl * a2).squaredNorm();
    };
    out.objective_trace.push_back(objective(p));
    for (int k = 1; k <= cfg.fw_iters; ++k) {
        const Eigen::MatrixXd residual = a1 * p - p * a2;
        const Eigen::MatrixXd grad =
            2.0 * (a1.transpose() * residual - residual * a2.transpose());
        TransportPlan dir = fw_linear_step(grad, cfg.lambda0, /*mass=*/n, sopts);
        const double gamma = 2.0 / (k + 2);
        p += gamma * (dir.values - p);
        out.objective_trace.push_back(objective(p));
    }
    out.plan.values = std::move(p);
    out.plan.row_marginal = Eigen::VectorXd::Ones(n);
    out.plan.col_marginal = Eigen::VectorXd::Ones(n);
    out.plan.row_residual =
        (out.plan.values.rowwise().sum() - out.plan.row_marginal).cwiseAbs().sum();
    out.plan.col_residual =
        (out.plan.values.colwise().sum().transpose() - out.plan.col_marginal).cwiseAbs().sum();
    out.plan.converged = true;
    out.plan.iterations = cfg.fw_iters;
    return out;
}

OrthogonalTransform init_transform(const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2,
                                   const TransportPlan& pstar) {
    if (pstar.values.rows() != y1.rows() || pstar.values.cols() != y2.rows())
        throw std::invalid_argument("init_transform: shape mismatch");
    return procrustes_from_cross(y1.transpose() * (pstar.values * y2));
}

StochasticWpResult stochastic_wp(const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2,
                                 const OrthogonalTransform& q0, const SubspaceConfig& cfg) {
    const int n = static_cast<int>(y1.rows());
    const int d = static_cast<int>(y1.cols());
    if (y2.cols() != d) throw std::invalid_argument("stochastic_wp: dimension mismatch");
    cfg.validate(n);
    if (q0.orthogonality_residual() > 1e-6)
        throw std::invalid_argument("stochastic_wp: q0 is not orthogonal");

    SinkhornOptions sopts;
    sopts.max_iter = cfg.sinkhorn_max_iter;
    sopts.tol = cfg.sinkhorn_tol;

    Rng rng(cfg.seed);
    StochasticWpResult out;
    Eigen::MatrixXd q = q0.values;
    for (int t = 1; t <= cfg.wp_iters; ++t) {
        // Independent uniform minibatches from each graph.
        const Eigen::MatrixXd y1t =
            select_rows(y1, rng.sample_without_replacement(n, cfg.batch));
        const Eigen::MatrixXd y2t =
            select_rows(y2, rng.sample_without_replacement(static_cast<int>(y2.rows()),
                                                           cfg.batch));
        const Eigen::MatrixXd cost = -(y1t * q) * y2t.transpose();
        TransportPlan pt = sinkhorn_uniform(cost, cfg.lambda, /*mass=*/1.0, sopts);
        Eigen::MatrixXd plan = cfg.hard_rounding ? round_plan(pt.values) : pt.values;

        const Eigen::MatrixXd grad = -2.0 * y1t.transpose() * (plan * y2t);
        if (!grad.allFinite()) throw std::runtime_error("stochastic_wp: non-finite gradient");

        out.trace.push_back({t, (y1t * q - plan * y2t).squaredNorm(), 0.0});

        Eigen::BDCSVD<Eigen::MatrixXd> svd(q - cfg.eta * grad,
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
        q = svd.matrixU() * svd.matrixV().transpose();
        out.trace.back().orthogonality_residual =
            (q.transpose() * q - Eigen::MatrixXd::Identity(d, d)).norm();
    }
    out.q.values = std::move(q);
    return out;
}

StochasticWpResult align_subspaces(const SparseGraph& a1, const SparseGraph& a2,
                                   const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2,
                                   const SubspaceConfig& cfg,
                                   ConvexInitResult* init_out) {
    ConvexInitResult init = convex_init(a1, a2, cfg);
    OrthogonalTransform q0 = init_transform(y1, y2, init.plan);
    if (init_out) *init_out = std::move(init);
    return stochastic_wp(y1, y2, q0, cfg);
}

}  // namespace cone
