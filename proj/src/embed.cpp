#include "cone/embed.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cone {

namespace {

Eigen::VectorXd degree_vector(const SparseGraph& g) {
    Eigen::VectorXd d(g.num_nodes());
    for (int i = 0; i < g.num_nodes(); ++i) d(i) = g.degree(i);
    return d;
}

Eigen::MatrixXd dense_adjacency(const SparseGraph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_nodes(), g.num_nodes());
    for (int i = 0; i < g.num_nodes(); ++i)
        for (int j : g.neighbors(i)) a(i, j) = 1.0;
    return a;
}

// Pseudo-inverse convention: zero for degree-0 nodes.
Eigen::VectorXd safe_inv(const Eigen::VectorXd& d, double power) {
    Eigen::VectorXd out(d.size());
    for (int i = 0; i < d.size(); ++i)
        out(i) = d(i) > 0 ? std::pow(d(i), -power) : 0.0;
    return out;
}

void clip_log_inplace(Eigen::MatrixXd& m) {
    m = m.array().max(1.0).log().matrix();
}

}  // namespace

void EmbedConfig::validate() const {
    if (dim < 1) throw std::invalid_argument("EmbedConfig: dim must be >= 1");
    if (window < 1) throw std::invalid_argument("EmbedConfig: window must be >= 1");
    if (negative < 1) throw std::invalid_argument("EmbedConfig: negative must be >= 1");
    if (k_eig < 1) throw std::invalid_argument("EmbedConfig: k_eig must be >= 1");
}

std::uint64_t EmbedConfig::hash(EmbedMode mode) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::uint64_t x) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(dim);
    mix(window);
    mix(negative);
    mix(k_eig);
    mix(norm == MatrixNorm::Spectral ? 0 : 1);
    mix(mode == EmbedMode::Exact ? 0 : 1);
    return h;
}

Eigen::MatrixXd netmf_matrix_exact(const SparseGraph& g, const EmbedConfig& cfg) {
    cfg.validate();
    if (g.num_edges() == 0) throw std::invalid_argument("netmf_matrix_exact: edgeless graph");
    const int n = g.num_nodes();
    const Eigen::VectorXd deg = degree_vector(g);
    const double vol = deg.sum();
    const Eigen::VectorXd dinv = safe_inv(deg, 1.0);

    const Eigen::MatrixXd a = dense_adjacency(g);
    const Eigen::MatrixXd walk = dinv.asDiagonal() * a;  // D^-1 A
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd window_sum = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < cfg.window; ++r) {
        power = power * walk;
        window_sum += power;
    }
    Eigen::MatrixXd m = (vol / (cfg.window * static_cast<double>(cfg.negative))) *
                        (window_sum * dinv.asDiagonal());
    clip_log_inplace(m);
    return m;
}

Eigen::MatrixXd netmf_matrix_approx(const SparseGraph& g, const EmbedConfig& cfg) {
    cfg.validate();
    if (g.num_edges() == 0) throw std::invalid_argument("netmf_matrix_approx: edgeless graph");
    const int n = g.num_nodes();
    if (cfg.k_eig > n) throw std::invalid_argument("netmf_matrix_approx: k_eig > n");
    const Eigen::VectorXd deg = degree_vector(g);
    const double vol = deg.sum();
    const Eigen::VectorXd dsqinv = safe_inv(deg, 0.5);

    // Symmetrically normalized adjacency D^-1/2 A D^-1/2.
    Eigen::MatrixXd anorm = dense_adjacency(g);
    anorm = dsqinv.asDiagonal() * anorm * dsqinv.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(anorm);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("netmf_matrix_approx: eigensolver failed to converge");

    // Top k_eig by |eigenvalue|; eigenvalues come back ascending.
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
    });
    const int k = cfg.k_eig;
    Eigen::MatrixXd u(n, k);
    Eigen::VectorXd filt(k);
    for (int c = 0; c < k; ++c) {
        const double lam = es.eigenvalues()(idx[c]);
        u.col(c) = es.eigenvectors().col(idx[c]);
        double lr = 1.0, acc = 0.0;
        for (int r = 0; r < cfg.window; ++r) {
            lr *= lam;
            acc += lr;
        }
        filt(c) = acc / cfg.window;
    }
    Eigen::MatrixXd m = (vol / cfg.negative) *
                        (dsqinv.asDiagonal() * (u * filt.asDiagonal() * u.transpose()) *
                         dsqinv.asDiagonal());
    clip_log_inplace(m);
    return m;
}

Eigen::MatrixXd embed_graph(const SparseGraph& g, const EmbedConfig& cfg, EmbedMode mode) {
    cfg.validate();
    const int n = g.num_nodes();
    if (n == 0) throw std::invalid_argument("embed_graph: empty graph");
    if (cfg.dim > n) throw std::invalid_argument("embed_graph: dim > n");

    const Eigen::MatrixXd m = mode == EmbedMode::Exact ? netmf_matrix_exact(g, cfg)
                                                       : netmf_matrix_approx(g, cfg);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    Eigen::MatrixXd y(n, cfg.dim);
    for (int c = 0; c < cfg.dim; ++c) {
        Eigen::VectorXd uc = svd.matrixU().col(c);
        // Sign convention: largest-magnitude entry positive, first index on ties.
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(uc(i)) > std::abs(uc(arg))) arg = i;
        if (uc(arg) < 0) uc = -uc;
        y.col(c) = uc * std::sqrt(svd.singularValues()(c));
    }

    double norm;
    if (cfg.norm == MatrixNorm::Spectral) {
        Eigen::BDCSVD<Eigen::MatrixXd> ysvd(y);
        norm = ysvd.singularValues()(0);
    } else {
        norm = y.norm();
    }
    if (norm > 0) y /= norm;
    if (!y.allFinite()) throw std::runtime_error("embed_graph: non-finite embedding");
    return y;
}

namespace {
constexpr char kCacheMagic[8] = {'C', 'O', 'N', 'E', 'E', 'M', 'B', '1'};
}

bool load_embedding_cache(const std::string& path, Eigen::MatrixXd& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[8];
    std::uint64_t n = 0, d = 0;
    in.read(magic, 8);
    in.read(reinterpret_cast<char*>(&n), 8);
    in.read(reinterpret_cast<char*>(&d), 8);
    if (!in || std::memcmp(magic, kCacheMagic, 8) != 0) return false;
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> buf(n, d);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * d * 8));
    if (!in) return false;
    out = buf;
    return true;
}

void save_embedding_cache(const std::string& path, const Eigen::MatrixXd& y) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write embedding cache: " + path);
    const std::uint64_t n = y.rows(), d = y.cols();
    out.write(kCacheMagic, 8);
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&d), 8);
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> buf = y;
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(n * d * 8));
}

std::string embedding_cache_name(const SparseGraph& g, const EmbedConfig& cfg, EmbedMode mode) {
    std::ostringstream ss;
    ss << "emb_" << std::hex << g.structure_hash() << "_" << cfg.hash(mode) << ".bin";
    return ss.str();
}

}  // namespace cone
