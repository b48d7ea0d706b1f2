#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "cone/embed.hpp"
#include "cone/eval.hpp"
#include "cone/experiment.hpp"
#include "cone/graph.hpp"
#include "cone/match.hpp"
#include "cone/subspace.hpp"
#include "cone/synth.hpp"

namespace {

void add_embed_flags(CLI::App& cmd, cone::EmbedConfig& cfg, bool& exact) {
    cmd.add_option("--dim", cfg.dim, "embedding dimension")->capture_default_str();
    cmd.add_option("--window", cfg.window, "context window")->capture_default_str();
    cmd.add_option("--negative", cfg.negative, "negative samples")->capture_default_str();
    cmd.add_option("--k-eig", cfg.k_eig, "eigenpairs for the approximate factorization")
        ->capture_default_str();
    cmd.add_option("--norm", [&cfg](const CLI::results_t& res) {
           if (res[0] == "spectral")
               cfg.norm = cone::MatrixNorm::Spectral;
           else if (res[0] == "frobenius")
               cfg.norm = cone::MatrixNorm::Frobenius;
           else
               return false;
           return true;
       },
       "embedding normalization: spectral|frobenius");
    cmd.add_flag("--exact", exact, "factorize the full PMI matrix instead of the "
                                   "truncated eigendecomposition");
}

void add_subspace_flags(CLI::App& cmd, cone::SubspaceConfig& cfg) {
    cmd.add_option("--fw-iters", cfg.fw_iters, "convex-init Frank-Wolfe iterations")
        ->capture_default_str();
    cmd.add_option("--lambda0", cfg.lambda0, "convex-init Sinkhorn regularization")
        ->capture_default_str();
    cmd.add_option("--wp-iters", cfg.wp_iters, "stochastic refinement iterations")
        ->capture_default_str();
    cmd.add_option("--batch", cfg.batch, "minibatch size")->capture_default_str();
    cmd.add_option("--eta", cfg.eta, "learning rate")->capture_default_str();
    cmd.add_option("--lambda", cfg.lambda, "minibatch Sinkhorn regularization")
        ->capture_default_str();
    cmd.add_flag("--hard-rounding", cfg.hard_rounding,
                 "round minibatch plans to row-argmax permutations");
}

int run_experiment_cmd(const cone::ExperimentSpec& spec) {
    cone::ExperimentResult res = cone::run_experiment(spec);
    int failures = 0;
    for (const cone::RunResult& r : res.runs) {
        if (r.ok) {
            std::printf("noise %-5g trial %d  accuracy %.4f  mnc %.4f\n", r.noise, r.trial,
                        r.accuracy, r.mean_mnc);
        } else {
            ++failures;
            std::printf("noise %-5g trial %d  FAILED: %s\n", r.noise, r.trial,
                        r.error.c_str());
        }
    }
    for (const cone::AggregateRow& row : res.aggregate)
        std::printf("noise %-5g mean accuracy %.4f +- %.4f  mean mnc %.4f +- %.4f\n",
                    row.noise, row.acc_mean, row.acc_std, row.mnc_mean, row.mnc_std);
    std::printf("results written to %s\n", spec.output_dir.c_str());
    return failures ? 1 : 0;
}

int align_cmd(const std::string& path1, const std::string& path2, const std::string& out,
              const std::string& topk_json, int top_k, bool bijective, bool exact,
              const cone::EmbedConfig& embed_cfg, const cone::SubspaceConfig& subspace_cfg) {
    cone::SparseGraph g1 = cone::load_edge_list(path1);
    cone::SparseGraph g2 = cone::load_edge_list(path2);
    const int n = std::max(g1.num_nodes(), g2.num_nodes());
    g1 = cone::pad_to_size(g1, n);
    g2 = cone::pad_to_size(g2, n);

    cone::EmbedConfig cfg = embed_cfg;
    cfg.dim = std::min(cfg.dim, n);
    cfg.k_eig = std::min(cfg.k_eig, n);
    const cone::EmbedMode mode = exact ? cone::EmbedMode::Exact : cone::EmbedMode::Approx;
    Eigen::MatrixXd y1 = cone::embed_graph(g1, cfg, mode);
    Eigen::MatrixXd y2 = cone::embed_graph(g2, cfg, mode);

    cone::StochasticWpResult wp = cone::align_subspaces(g1, g2, y1, y2, subspace_cfg);
    cone::Alignment a = bijective ? cone::bijective_match(y1, wp.q, y2, subspace_cfg.lambda)
                                  : cone::greedy_match(y1, wp.q, y2, top_k);
    cone::save_alignment_csv(a, out);
    if (!topk_json.empty()) cone::save_alignment_topk_json(a, topk_json);

    int hits = 0;
    for (int i = 0; i < n; ++i)
        if (a.mapping[i] == i) ++hits;
    std::printf("aligned %d nodes; %d mapped to the same index; alignment written to %s\n",
                n, hits, out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CONE-Align: unsupervised network alignment via embedding-subspace "
                 "alignment"};
    app.require_subcommand(1);

    // run: noisy-permutation experiment sweep
    cone::ExperimentSpec spec;
    bool run_exact = false;
    CLI::App* run = app.add_subcommand("run", "run the noisy-copy alignment experiment");
    run->set_config("--config", "", "read options from an INI/TOML file");
    auto* data_opt = run->add_option("--dataset", spec.dataset, "edge-list file");
    std::string synth_desc;
    auto* synth_opt =
        run->add_option("--synth", synth_desc,
                        "synthetic graph descriptor (regular:<n>:<d>, er:<n>:<p>, "
                        "barbell:<clique_n>)");
    data_opt->excludes(synth_opt);
    run->add_option("--noise", spec.noise_levels, "edge-removal probabilities")
        ->capture_default_str();
    run->add_option("--trials", spec.trials, "trials per noise level")->capture_default_str();
    run->add_option("--out", spec.output_dir, "output directory")->required();
    run->add_option("--seed", spec.seed, "master seed")->capture_default_str();
    run->add_option("--jobs", spec.jobs, "parallel runs")->capture_default_str();
    run->add_flag("--diagnostics", spec.diagnostics, "emit optimization trace CSVs");
    run->add_option("--cache-dir", spec.cache_dir, "embedding cache directory");
    add_embed_flags(*run, spec.embed_cfg, run_exact);
    add_subspace_flags(*run, spec.subspace_cfg);

    // align: one-off alignment of two edge lists
    std::string align_g1, align_g2, align_out = "alignment.csv", align_topk_json;
    int align_topk = 1;
    bool align_bijective = false, align_exact = false;
    cone::EmbedConfig align_embed;
    cone::SubspaceConfig align_subspace;
    CLI::App* align = app.add_subcommand("align", "align two edge lists");
    align->add_option("graph1", align_g1, "source edge list")->required();
    align->add_option("graph2", align_g2, "target edge list")->required();
    align->add_option("--out", align_out, "alignment CSV path")->capture_default_str();
    align->add_option("--top-k", align_topk, "nearest neighbors to record per node")
        ->capture_default_str();
    align->add_option("--topk-json", align_topk_json, "write top-k candidates as JSON");
    align->add_flag("--bijective", align_bijective, "force a one-to-one matching");
    align->add_option("--seed", align_subspace.seed, "minibatch sampling seed")
        ->capture_default_str();
    add_embed_flags(*align, align_embed, align_exact);
    add_subspace_flags(*align, align_subspace);

    // synth: emit a synthetic edge list
    std::string synth_out_desc, synth_out = "graph.edges";
    std::uint64_t synth_seed = 0;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic edge list");
    synth->add_option("descriptor", synth_out_desc,
                      "regular:<n>:<d>, er:<n>:<p>, or barbell:<clique_n>")
        ->required();
    synth->add_option("--out", synth_out, "edge-list path")->capture_default_str();
    synth->add_option("--seed", synth_seed, "generator seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (!synth_desc.empty()) {
                spec.dataset = synth_desc;
                spec.synth = true;
            }
            if (run_exact) spec.embed_mode = cone::EmbedMode::Exact;
            return run_experiment_cmd(spec);
        }
        if (align->parsed())
            return align_cmd(align_g1, align_g2, align_out, align_topk_json, align_topk,
                             align_bijective, align_exact, align_embed, align_subspace);
        if (synth->parsed()) {
            cone::SparseGraph g = cone::synth_graph(synth_out_desc, synth_seed);
            cone::save_edge_list(g, synth_out);
            std::printf("wrote %d nodes / %lld edges to %s\n", g.num_nodes(),
                        static_cast<long long>(g.num_edges()), synth_out.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
