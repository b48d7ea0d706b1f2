#ifndef CONE_EXPERIMENT_HPP
#define CONE_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cone/embed.hpp"
#include "cone/eval.hpp"
#include "cone/graph.hpp"
#include "cone/subspace.hpp"

namespace cone {

struct ExperimentSpec {
    std::string dataset;                 // edge-list path, or synth descriptor when synth=true
    bool synth = false;
    std::vector<double> noise_levels = {0.05, 0.10, 0.15, 0.20, 0.25};
    int trials = 5;
    EmbedConfig embed_cfg;
    EmbedMode embed_mode = EmbedMode::Approx;
    SubspaceConfig subspace_cfg;
    std::string output_dir;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool diagnostics = false;            // emit optimization traces
    std::string cache_dir;               // embedding cache; empty disables

    void validate() const;
};

struct RunResult {
    double noise;
    int trial;
    std::uint64_t master_seed;
    bool ok = false;
    std::string error;
    double accuracy = 0.0;
    double mean_mnc = 0.0;
    int undefined_mnc = 0;
    double mnc_correct_mean = 0.0;    // mean MNC over correctly aligned nodes
    double mnc_incorrect_mean = 0.0;
    double sec_embed = 0, sec_init = 0, sec_wp = 0, sec_match = 0, sec_eval = 0;
};

struct AggregateRow {
    double noise;
    int trials;
    double acc_mean, acc_std;
    double mnc_mean, mnc_std;
};

struct ExperimentResult {
    std::vector<RunResult> runs;          // ordered by (noise, trial)
    std::vector<AggregateRow> aggregate;  // ordered by noise
};

// Runs one (graph, noise, trial) alignment; g is the clean source graph.
RunResult run_single(const SparseGraph& g, double noise, int trial,
                     const ExperimentSpec& spec);

// Full protocol: per (noise, trial), permute + drop edges, embed, align,
// match, evaluate. Writes per-run JSON, an aggregate CSV, and a timing log
// under spec.output_dir. Runs continue past individual failures.
ExperimentResult run_experiment(const ExperimentSpec& spec);

std::vector<AggregateRow> aggregate_runs(const std::vector<RunResult>& runs);
void write_outputs(const ExperimentResult& result, const ExperimentSpec& spec);

}  // namespace cone

#endif
