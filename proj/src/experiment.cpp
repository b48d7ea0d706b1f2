#include "cone/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cone/match.hpp"
#include "cone/rng.hpp"
#include "cone/synth.hpp"

namespace cone {

namespace fs = std::filesystem;

namespace {

double now_sec() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string noise_tag(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

EmbedConfig clamp_embed_cfg(EmbedConfig cfg, int n) {
    cfg.dim = std::min(cfg.dim, n);
    cfg.k_eig = std::min(cfg.k_eig, n);
    return cfg;
}

Eigen::MatrixXd cached_embed(const SparseGraph& g, const EmbedConfig& cfg,
                             EmbedMode mode, const std::string& cache_dir) {
    if (cache_dir.empty()) return embed_graph(g, cfg, mode);
    const fs::path path = fs::path(cache_dir) / embedding_cache_name(g, cfg, mode);
    Eigen::MatrixXd y;
    if (load_embedding_cache(path.string(), y) && y.rows() == g.num_nodes() &&
        y.cols() == cfg.dim)
        return y;
    y = embed_graph(g, cfg, mode);
    fs::create_directories(cache_dir);
    save_embedding_cache(path.string(), y);
    return y;
}

void write_wp_trace_csv(const StochasticWpResult& wp, const std::string& path) {
    std::ofstream out(path);
    out << "iteration,minibatch_objective,orthogonality_residual\n";
    out.precision(17);
    for (const auto& rec : wp.trace)
        out << rec.iter << ',' << rec.minibatch_objective << ','
            << rec.orthogonality_residual << '\n';
}

}  // namespace

void ExperimentSpec::validate() const {
    if (dataset.empty()) throw std::invalid_argument("ExperimentSpec: dataset required");
    if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
    if (noise_levels.empty())
        throw std::invalid_argument("ExperimentSpec: at least one noise level");
    for (double p : noise_levels)
        if (p < 0 || p > 1)
            throw std::invalid_argument("ExperimentSpec: noise level outside [0,1]");
    if (jobs < 1) throw std::invalid_argument("ExperimentSpec: jobs must be >= 1");
}

RunResult run_single(const SparseGraph& g, double noise, int trial,
                     const ExperimentSpec& spec) {
    RunResult res;
    res.noise = noise;
    res.trial = trial;
    res.master_seed =
        mix_seed(mix_seed(spec.seed, static_cast<std::uint64_t>(std::llround(noise * 1e6))),
                 static_cast<std::uint64_t>(trial));
    const std::uint64_t perm_seed = mix_seed(res.master_seed, 1);
    const std::uint64_t noise_seed = mix_seed(res.master_seed, 2);
    const std::uint64_t wp_seed = mix_seed(res.master_seed, 3);

    try {
        const int n = g.num_nodes();
        const GroundTruthPermutation truth = random_permutation(n, perm_seed);
        const SparseGraph noisy = drop_edges(permute_graph(g, truth), noise, noise_seed);

        const EmbedConfig ecfg = clamp_embed_cfg(spec.embed_cfg, n);
        double t0 = now_sec();
        const Eigen::MatrixXd y1 = cached_embed(g, ecfg, spec.embed_mode, spec.cache_dir);
        const Eigen::MatrixXd y2 = embed_graph(noisy, ecfg, spec.embed_mode);
        res.sec_embed = now_sec() - t0;

        SubspaceConfig scfg = spec.subspace_cfg;
        scfg.seed = wp_seed;
        t0 = now_sec();
        ConvexInitResult init = convex_init(g, noisy, scfg);
        OrthogonalTransform q0 = init_transform(y1, y2, init.plan);
        res.sec_init = now_sec() - t0;
        t0 = now_sec();
        StochasticWpResult wp = stochastic_wp(y1, y2, q0, scfg);
        res.sec_wp = now_sec() - t0;

        t0 = now_sec();
        const Alignment pi = greedy_match(y1, wp.q, y2);
        res.sec_match = now_sec() - t0;

        t0 = now_sec();
        const EvalReport report = evaluate(g, noisy, pi, truth);
        res.sec_eval = now_sec() - t0;

        res.accuracy = report.accuracy;
        res.mean_mnc = report.mean_mnc;
        res.undefined_mnc = report.undefined_mnc;
        double cs = 0, ci = 0;
        int cn = 0, in = 0;
        for (const auto& rec : report.per_node) {
            if (!rec.mnc) continue;
            if (rec.correct) {
                cs += *rec.mnc;
                ++cn;
            } else {
                ci += *rec.mnc;
                ++in;
            }
        }
        res.mnc_correct_mean = cn ? cs / cn : 0.0;
        res.mnc_incorrect_mean = in ? ci / in : 0.0;
        res.ok = true;

        if (!spec.output_dir.empty()) {
            const fs::path dir(spec.output_dir);
            const std::string tag =
                "p" + noise_tag(noise) + "_t" + std::to_string(trial);
            std::ofstream out(dir / ("run_" + tag + ".json"));
            out.precision(17);
            out << "{\n"
                << "  \"noise\": " << noise << ",\n"
                << "  \"trial\": " << trial << ",\n"
                << "  \"master_seed\": " << res.master_seed << ",\n"
                << "  \"accuracy\": " << res.accuracy << ",\n"
                << "  \"mean_mnc\": " << res.mean_mnc << ",\n"
                << "  \"undefined_mnc\": " << res.undefined_mnc << ",\n"
                << "  \"mnc_correct_mean\": " << res.mnc_correct_mean << ",\n"
                << "  \"mnc_incorrect_mean\": " << res.mnc_incorrect_mean << "\n"
                << "}\n";
            save_per_node_csv(report, (dir / ("nodes_" + tag + ".csv")).string());
            if (spec.diagnostics) {
                write_wp_trace_csv(wp, (dir / ("wp_trace_" + tag + ".csv")).string());
                std::ofstream fw(dir / ("fw_trace_" + tag + ".csv"));
                fw << "iteration,objective\n";
                fw.precision(17);
                for (std::size_t k = 0; k < init.objective_trace.size(); ++k)
                    fw << k << ',' << init.objective_trace[k] << '\n';
            }
        }
    } catch (const std::exception& e) {
        res.ok = false;
        res.error = e.what();
    }
    return res;
}

std::vector<AggregateRow> aggregate_runs(const std::vector<RunResult>& runs) {
    std::vector<AggregateRow> rows;
    for (const RunResult& r : runs) {
        if (!r.ok) continue;
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const AggregateRow& row) { return row.noise == r.noise; });
        if (it == rows.end()) {
            rows.push_back({r.noise, 0, 0, 0, 0, 0});
            it = rows.end() - 1;
        }
        ++it->trials;
        it->acc_mean += r.accuracy;
        it->mnc_mean += r.mean_mnc;
    }
    for (AggregateRow& row : rows) {
        row.acc_mean /= row.trials;
        row.mnc_mean /= row.trials;
    }
    for (AggregateRow& row : rows) {
        double va = 0, vm = 0;
        for (const RunResult& r : runs) {
            if (!r.ok || r.noise != row.noise) continue;
            va += (r.accuracy - row.acc_mean) * (r.accuracy - row.acc_mean);
            vm += (r.mean_mnc - row.mnc_mean) * (r.mean_mnc - row.mnc_mean);
        }
        // sample standard deviation
        const int denom = row.trials > 1 ? row.trials - 1 : 1;
        row.acc_std = std::sqrt(va / denom);
        row.mnc_std = std::sqrt(vm / denom);
    }
    std::sort(rows.begin(), rows.end(),
              [](const AggregateRow& a, const AggregateRow& b) { return a.noise < b.noise; });
    return rows;
}

void write_outputs(const ExperimentResult& result, const ExperimentSpec& spec) {
    if (spec.output_dir.empty()) return;
    const fs::path dir(spec.output_dir);
    fs::create_directories(dir);

    std::ofstream csv(dir / "aggregate.csv");
    csv << "noise,trials,accuracy_mean,accuracy_std,mnc_mean,mnc_std\n";
    csv.precision(17);
    for (const AggregateRow& row : result.aggregate)
        csv << row.noise << ',' << row.trials << ',' << row.acc_mean << ',' << row.acc_std
            << ',' << row.mnc_mean << ',' << row.mnc_std << '\n';

    // Wall-clock data is segregated here so result files stay reproducible.
    std::ofstream log(dir / "run.log");
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    log << "# finished " << std::ctime(&t);
    log << "noise trial ok sec_embed sec_init sec_wp sec_match sec_eval error\n";
    for (const RunResult& r : result.runs) {
        log << r.noise << ' ' << r.trial << ' ' << r.ok << ' ' << r.sec_embed << ' '
            << r.sec_init << ' ' << r.sec_wp << ' ' << r.sec_match << ' ' << r.sec_eval;
        if (!r.ok) log << " \"" << r.error << '"';
        log << '\n';
    }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const SparseGraph g = spec.synth ? synth_graph(spec.dataset, mix_seed(spec.seed, 0))
                                     : load_edge_list(spec.dataset);

    if (!spec.output_dir.empty()) fs::create_directories(spec.output_dir);

    struct Task {
        double noise;
        int trial;
    };
    std::vector<Task> tasks;
    for (double p : spec.noise_levels)
        for (int t = 0; t < spec.trials; ++t) tasks.push_back({p, t});

    ExperimentResult result;
    result.runs.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            result.runs[i] = run_single(g, tasks[i].noise, tasks[i].trial, spec);
        }
    };
    if (spec.jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < std::min<int>(spec.jobs, static_cast<int>(tasks.size())); ++j)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    result.aggregate = aggregate_runs(result.runs);
    write_outputs(result, spec);
    return result;
}

}  // namespace cone
