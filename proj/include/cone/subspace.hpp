#ifndef CONE_SUBSPACE_HPP
#define CONE_SUBSPACE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cone/graph.hpp"
#include "cone/otlin.hpp"

namespace cone {

struct SubspaceConfig {
    int fw_iters = 10;        // n0
    double lambda0 = 1.0;     // convex-init Sinkhorn regularization
    int wp_iters = 50;        // T
    int batch = 10;           // b
    double eta = 1.0;         // learning rate
    double lambda = 0.05;     // minibatch Sinkhorn regularization
    std::uint64_t seed = 0;   // minibatch sampling
    bool hard_rounding = false;  // round minibatch plans to a permutation (row argmax)
    int sinkhorn_max_iter = 500;
    double sinkhorn_tol = 1e-6;

    void validate(int n) const;
};

struct ConvexInitResult {
    TransportPlan plan;                  // P* over the Birkhoff polytope (marginals 1)
    std::vector<double> objective_trace; // ||A1 P - P A2||_F^2 per iterate, start included
};

// Frank-Wolfe on min_{P in B^n} ||A1 P - P A2||_F^2 from the uniform plan,
// step size 2/(k+2), directions from the entropically smoothed LMO.
ConvexInitResult convex_init(const SparseGraph& a1, const SparseGraph& a2,
                             const SubspaceConfig& cfg);

// Initial transform from the SVD of Y1^T P* Y2.
OrthogonalTransform init_transform(const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2,
                                   const TransportPlan& pstar);

struct WpIterRecord {
    int iter;
    double minibatch_objective;     // ||Y1t Q - Pt Y2t||_F^2
    double orthogonality_residual;
};

struct StochasticWpResult {
    OrthogonalTransform q;
    std::vector<WpIterRecord> trace;
};

// T iterations of alternating minibatch Sinkhorn matching and gradient
// steps on Q, re-projected to the orthogonal group by SVD each step.
StochasticWpResult stochastic_wp(const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2,
                                 const OrthogonalTransform& q0, const SubspaceConfig& cfg);

// Full Step 2: convex init, initial Procrustes, stochastic refinement.
StochasticWpResult align_subspaces(const SparseGraph& a1, const SparseGraph& a2,
                                   const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2,
                                   const SubspaceConfig& cfg,
                                   ConvexInitResult* init_out = nullptr);

}  // namespace cone

#endif
