#include "cone/match.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace cone {

namespace {
constexpr int kLeafSize = 16;

struct Candidate {
    double d2;
    int index;
    // "better" = closer, lowest index on exact ties
    bool operator<(const Candidate& o) const {
        return d2 < o.d2 || (d2 == o.d2 && index < o.index);
    }
};
}  // namespace

KdTree::KdTree(const Eigen::MatrixXd& points) : points_(points) {
    if (points_.rows() == 0) throw std::invalid_argument("KdTree: empty point set");
    order_.resize(points_.rows());
    std::iota(order_.begin(), order_.end(), 0);
    root_ = build(0, static_cast<int>(order_.size()), 0);
}

int KdTree::build(int begin, int end, int depth) {
    Node node;
    if (end - begin <= kLeafSize) {
        node.point = begin;
        node.count = end - begin;
        // Sorted leaves make tie-breaking by lowest index automatic.
        std::sort(order_.begin() + begin, order_.begin() + end);
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size()) - 1;
    }
    // Split on the widest dimension in this range.
    int dim = 0;
    double best_spread = -1.0;
    for (int c = 0; c < points_.cols(); ++c) {
        double lo = points_(order_[begin], c), hi = lo;
        for (int i = begin + 1; i < end; ++i) {
            const double v = points_(order_[i], c);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            dim = c;
        }
    }
    const int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) {
                         const double va = points_(a, dim), vb = points_(b, dim);
                         return va < vb || (va == vb && a < b);
                     });
    node.split_dim = dim;
    node.split_val = points_(order_[mid], dim);
    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    const int left = build(begin, mid, depth + 1);
    const int right = build(mid, end, depth + 1);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

KdTree::Hit KdTree::nearest(const Eigen::VectorXd& query) const {
    auto hits = knearest(query, 1);
    return hits.front();
}

std::vector<KdTree::Hit> KdTree::knearest(const Eigen::VectorXd& query, int k) const {
    if (query.size() != points_.cols())
        throw std::invalid_argument("KdTree: query dimension mismatch");
    if (k < 1) throw std::invalid_argument("KdTree: k must be >= 1");
    k = std::min(k, size());

    // Max-heap of the current k best; top is the worst kept candidate.
    std::priority_queue<Candidate> heap;
    auto worst = [&]() { return heap.top(); };
    auto offer = [&](int idx) {
        const Candidate c{(points_.row(idx).transpose() - query).squaredNorm(), idx};
        if (static_cast<int>(heap.size()) < k) {
            heap.push(c);
        } else if (c < worst()) {
            heap.pop();
            heap.push(c);
        }
    };

    // Recursive descent, near side first; the far side is visited whenever it
    // could still hold an equal-or-closer point (<=, so index ties are exact).
    auto visit = [&](auto&& self, int ni) -> void {
        const Node& node = nodes_[ni];
        if (node.split_dim < 0) {
            for (int i = 0; i < node.count; ++i) offer(order_[node.point + i]);
            return;
        }
        const double diff = query(node.split_dim) - node.split_val;
        const int near = diff < 0 ? node.left : node.right;
        const int far = diff < 0 ? node.right : node.left;
        self(self, near);
        if (static_cast<int>(heap.size()) < k || diff * diff <= worst().d2)
            self(self, far);
    };
    visit(visit, root_);

    std::vector<Hit> out(heap.size());
    for (int i = static_cast<int>(heap.size()) - 1; i >= 0; --i) {
        out[i] = {heap.top().index, std::sqrt(heap.top().d2)};
        heap.pop();
    }
    return out;
}

Alignment greedy_match(const Eigen::MatrixXd& y1, const OrthogonalTransform& q,
                       const Eigen::MatrixXd& y2, int k) {
    if (y1.cols() != q.values.rows() || q.values.cols() != y2.cols())
        throw std::invalid_argument("greedy_match: shape mismatch");
    if (k < 1) throw std::invalid_argument("greedy_match: k must be >= 1");

    const Eigen::MatrixXd mapped = y1 * q.values;
    KdTree tree(y2);

    Alignment out;
    const int n = static_cast<int>(y1.rows());
    out.mapping.resize(n);
    out.distances.resize(n);
    if (k > 1) out.top_k.resize(n);
    for (int i = 0; i < n; ++i) {
        auto hits = tree.knearest(mapped.row(i).transpose(), k);
        out.mapping[i] = hits.front().index;
        out.distances[i] = hits.front().distance;
        if (k > 1) out.top_k[i] = std::move(hits);
    }
    return out;
}

Alignment bijective_match(const Eigen::MatrixXd& y1, const OrthogonalTransform& q,
                          const Eigen::MatrixXd& y2, double lambda) {
    if (y1.rows() != y2.rows())
        throw std::invalid_argument("bijective_match: needs equal-size node sets");
    const Eigen::MatrixXd mapped = y1 * q.values;
    const int n = static_cast<int>(y1.rows());
    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i)
        cost.row(i) = (y2.rowwise() - mapped.row(i)).rowwise().squaredNorm().transpose();

    TransportPlan plan = sinkhorn_uniform(cost, lambda, 1.0);

    // Greedy rounding: repeatedly take the largest remaining plan entry.
    struct Cell {
        double v;
        int i, j;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cells.push_back({plan.values(i, j), i, j});
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.v != b.v) return a.v > b.v;
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    Alignment out;
    out.mapping.assign(n, -1);
    out.distances.assign(n, 0.0);
    std::vector<char> used_col(n, 0);
    int assigned = 0;
    for (const Cell& c : cells) {
        if (assigned == n) break;
        if (out.mapping[c.i] >= 0 || used_col[c.j]) continue;
        out.mapping[c.i] = c.j;
        used_col[c.j] = 1;
        out.distances[c.i] = std::sqrt(cost(c.i, c.j));
        ++assigned;
    }
    return out;
}

void save_alignment_csv(const Alignment& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write alignment: " + path);
    out << "source_index,target_index,distance\n";
    out.precision(17);
    for (std::size_t i = 0; i < a.mapping.size(); ++i)
        out << i << ',' << a.mapping[i] << ',' << a.distances[i] << '\n';
}

void save_alignment_topk_json(const Alignment& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write top-k: " + path);
    out.precision(17);
    out << "[\n";
    for (std::size_t i = 0; i < a.top_k.size(); ++i) {
        out << "  {\"source\": " << i << ", \"candidates\": [";
        for (std::size_t c = 0; c < a.top_k[i].size(); ++c) {
            if (c) out << ", ";
            out << "{\"target\": " << a.top_k[i][c].index
                << ", \"distance\": " << a.top_k[i][c].distance << "}";
        }
        out << "]}" << (i + 1 < a.top_k.size() ? "," : "") << "\n";
    }
    out << "]\n";
}

}  // namespace cone
