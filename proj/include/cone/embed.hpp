#ifndef CONE_EMBED_HPP
#define CONE_EMBED_HPP

#include <string>

#include <Eigen/Dense>

#include "cone/graph.hpp"

namespace cone {

enum class EmbedMode { Exact, Approx };
enum class MatrixNorm { Spectral, Frobenius };

struct EmbedConfig {
    int dim = 128;        // embedding dimension d
    int window = 10;      // context window w
    int negative = 1;     // negative samples alpha
    int k_eig = 256;      // eigenpairs for the approximate factorization
    MatrixNorm norm = MatrixNorm::Spectral;  // normalization of Y

    void validate() const;
    std::uint64_t hash(EmbedMode mode) const;
};

// Clip-log PMI matrix M' = log(max(M, 1)) with
// M = vol/(w*alpha) * (1/w sum_{r=1..w} (D^-1 A)^r) D^-1,
// computed by dense matrix powers. Degree-0 rows/columns of D^-1 are zero.
Eigen::MatrixXd netmf_matrix_exact(const SparseGraph& g, const EmbedConfig& cfg);

// Same matrix through the top-k_eig eigenpairs (largest |eigenvalue|) of
// D^-1/2 A D^-1/2.
Eigen::MatrixXd netmf_matrix_approx(const SparseGraph& g, const EmbedConfig& cfg);

// Rank-d truncated SVD of the PMI matrix, Y = U_d sqrt(Sigma_d), sign-fixed
// (largest-magnitude entry of each left singular vector positive) and scaled
// by 1/||Y||.
Eigen::MatrixXd embed_graph(const SparseGraph& g, const EmbedConfig& cfg, EmbedMode mode);

// Binary embedding cache: header (magic, n, d), then row-major float64 LE.
// Returns true when a cached matrix was loaded.
bool load_embedding_cache(const std::string& path, Eigen::MatrixXd& out);
void save_embedding_cache(const std::string& path, const Eigen::MatrixXd& y);
std::string embedding_cache_name(const SparseGraph& g, const EmbedConfig& cfg, EmbedMode mode);

}  // namespace cone

#endif
