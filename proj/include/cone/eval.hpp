#ifndef CONE_EVAL_HPP
#define CONE_EVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "cone/graph.hpp"
#include "cone/match.hpp"

namespace cone {

struct NodeRecord {
    int node;
    int degree;              // degree in g1
    bool correct;
    std::optional<double> mnc;  // empty when Jaccard is 0/0
};

struct DegreeBucket {
    double lo, hi;
    std::vector<double> mnc_correct;
    std::vector<double> mnc_incorrect;
    int count = 0;  // all nodes in the bucket, defined MNC or not
};

struct EvalReport {
    double accuracy = 0.0;
    double mean_mnc = 0.0;        // over nodes with defined MNC
    int undefined_mnc = 0;
    std::vector<NodeRecord> per_node;
};

// Jaccard similarity between the image of i's neighborhood under pi and
// the neighborhood of j in g2. Empty when both sets are empty.
std::optional<double> mnc(const SparseGraph& g1, const SparseGraph& g2,
                          const Alignment& pi, int i, int j);

EvalReport evaluate(const SparseGraph& g1, const SparseGraph& g2,
                    const Alignment& pi, const GroundTruthPermutation& truth);

// Buckets [0, D/3), [D/3, 2D/3), [2D/3, D] with D the max degree of g1.
std::vector<DegreeBucket> degree_stratified_mnc(const EvalReport& report,
                                                const SparseGraph& g1);

std::string report_to_json(const EvalReport& report);
void save_report_json(const EvalReport& report, const std::string& path);
void save_per_node_csv(const EvalReport& report, const std::string& path);

}  // namespace cone

#endif
