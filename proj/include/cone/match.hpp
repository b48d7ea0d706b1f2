#ifndef CONE_MATCH_HPP
#define CONE_MATCH_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cone/otlin.hpp"

namespace cone {

// Exact nearest-neighbor k-d tree over the rows of a matrix.
// Ties are broken toward the lowest row index.
class KdTree {
public:
    explicit KdTree(const Eigen::MatrixXd& points);

    struct Hit {
        int index;
        double distance;  // Euclidean
    };

    Hit nearest(const Eigen::VectorXd& query) const;
    // k nearest, sorted by (distance, index) ascending; returns fewer when k > n.
    std::vector<Hit> knearest(const Eigen::VectorXd& query, int k) const;

    int size() const { return static_cast<int>(points_.rows()); }

private:
    struct Node {
        int split_dim = -1;
        double split_val = 0.0;
        int point = -1;     // leaf payload start (leaves hold a small bucket)
        int count = 0;
        int left = -1, right = -1;
    };

    int build(int begin, int end, int depth);

    Eigen::MatrixXd points_;
    std::vector<int> order_;   // row indices, partitioned by the tree
    std::vector<Node> nodes_;
    int root_ = -1;
};

struct Alignment {
    std::vector<int> mapping;         // pi
    std::vector<double> distances;    // distance to the match
    std::vector<std::vector<KdTree::Hit>> top_k;  // empty unless requested
};

// pi[i] = nearest row of y2 to row i of y1 * Q. top_k populated when k > 1.
Alignment greedy_match(const Eigen::MatrixXd& y1, const OrthogonalTransform& q,
                       const Eigen::MatrixXd& y2, int k = 1);

// Optional one-to-one mode: entropic plan on squared distances, rounded
// greedily to a bijection.
Alignment bijective_match(const Eigen::MatrixXd& y1, const OrthogonalTransform& q,
                          const Eigen::MatrixXd& y2, double lambda = 0.05);

void save_alignment_csv(const Alignment& a, const std::string& path);
void save_alignment_topk_json(const Alignment& a, const std::string& path);

}  // namespace cone

#endif
