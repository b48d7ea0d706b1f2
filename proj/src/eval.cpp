#include "cone/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cone {

std::optional<double> mnc(const SparseGraph& g1, const SparseGraph& g2,
                          const Alignment& pi, int i, int j) {
    if (i < 0 || i >= g1.num_nodes() || j < 0 || j >= g2.num_nodes())
        throw std::invalid_argument("mnc: node index out of range");
    std::set<int> mapped;  // image of i's neighbors; many-to-one collapses
    for (int k : g1.neighbors(i)) mapped.insert(pi.mapping[k]);
    const auto& actual = g2.neighbors(j);

    std::size_t inter = 0;
    for (int v : actual) inter += mapped.count(v);
    const std::size_t uni = mapped.size() + actual.size() - inter;
    if (uni == 0) return std::nullopt;  // 0/0, Jaccard undefined
    return static_cast<double>(inter) / static_cast<double>(uni);
}

EvalReport evaluate(const SparseGraph& g1, const SparseGraph& g2,
                    const Alignment& pi, const GroundTruthPermutation& truth) {
    const int n = g1.num_nodes();
    if (static_cast<int>(pi.mapping.size()) != n || truth.size() != n)
        throw std::invalid_argument("evaluate: size mismatch");

    EvalReport report;
    report.per_node.reserve(n);
    int correct = 0;
    double mnc_sum = 0.0;
    int mnc_count = 0;
    for (int i = 0; i < n; ++i) {
        NodeRecord rec;
        rec.node = i;
        rec.degree = g1.degree(i);
        rec.correct = pi.mapping[i] == truth.perm[i];
        rec.mnc = mnc(g1, g2, pi, i, pi.mapping[i]);
        if (rec.correct) ++correct;
        if (rec.mnc) {
            mnc_sum += *rec.mnc;
            ++mnc_count;
        } else {
            ++report.undefined_mnc;
        }
        report.per_node.push_back(rec);
    }
    report.accuracy = static_cast<double>(correct) / n;
    report.mean_mnc = mnc_count > 0 ? mnc_sum / mnc_count : 0.0;
    return report;
}

std::vector<DegreeBucket> degree_stratified_mnc(const EvalReport& report,
                                                const SparseGraph& g1) {
    const double dmax = g1.max_degree();
    std::vector<DegreeBucket> buckets(3);
    buckets[0] = {0.0, dmax / 3.0, {}, {}, 0};
    buckets[1] = {dmax / 3.0, 2.0 * dmax / 3.0, {}, {}, 0};
    buckets[2] = {2.0 * dmax / 3.0, dmax, {}, {}, 0};  // upper interval closed
    for (const NodeRecord& rec : report.per_node) {
        int b = 2;
        if (rec.degree < dmax / 3.0)
            b = 0;
        else if (rec.degree < 2.0 * dmax / 3.0)
            b = 1;
        ++buckets[b].count;
        if (!rec.mnc) continue;
        (rec.correct ? buckets[b].mnc_correct : buckets[b].mnc_incorrect).push_back(*rec.mnc);
    }
    return buckets;
}

std::string report_to_json(const EvalReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "{\n"
        << "  \"accuracy\": " << report.accuracy << ",\n"
        << "  \"mean_mnc\": " << report.mean_mnc << ",\n"
        << "  \"undefined_mnc\": " << report.undefined_mnc << ",\n"
        << "  \"nodes\": " << report.per_node.size() << "\n"
        << "}\n";
    return out.str();
}

void save_report_json(const EvalReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << report_to_json(report);
}

void save_per_node_csv(const EvalReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write per-node csv: " + path);
    out << "node,degree,correct,mnc\n";
    out.precision(17);
    for (const NodeRecord& rec : report.per_node) {
        out << rec.node << ',' << rec.degree << ',' << (rec.correct ? 1 : 0) << ',';
        if (rec.mnc)
            out << *rec.mnc;
        else
            out << "NA";
        out << '\n';
    }
}

}  // namespace cone
