#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "pbridge/experiment.hpp"

namespace {

using pbridge::ExperimentConfig;
using pbridge::ExperimentResult;

void add_common(CLI::App* cmd, ExperimentConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "flat key=value config file");
    cmd->add_option("--output-dir", cfg.output_dir, "directory for CSV artifacts");
}

void add_line_model(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--N", cfg.N, "route length parameter");
    cmd->add_option("--n", cfg.n, "bus count");
    cmd->add_option("--x", cfg.x, "observation site");
    cmd->add_option("--T", cfg.T, "time horizon");
}

void add_seeded(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "master seed (mandatory)")
        ->each([&cfg](const std::string&) { cfg.seed_set = true; });
    cmd->add_option("--replicates", cfg.replicates, "replicate count");
    cmd->add_option("--sampler", cfg.sampler, "auto|rejection|dpp");
    cmd->add_option("--max-attempts", cfg.max_attempts, "rejection attempt budget");
}

int run(const char* stage, ExperimentResult (*fn)(const ExperimentConfig&),
        const ExperimentConfig& base, const std::string& config_path) {
    try {
        ExperimentConfig cfg = base;
        if (!config_path.empty()) cfg.load_file(config_path);
        const ExperimentResult res = fn(cfg);
        for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
        for (const auto& [k, v] : res.kpis) std::printf("%s=%.17g\n", k.c_str(), v);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error in stage %s: %s\n", stage, e.what());
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-intersecting Poisson bridge ensembles: simulation and RMT statistics"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;

    auto* sim_line = app.add_subcommand("simulate-line", "sample line-model arrival times");
    add_common(sim_line, cfg, config_path);
    add_line_model(sim_line, cfg);
    add_seeded(sim_line, cfg);
    sim_line->add_flag("--dump-trajectories", cfg.dump_trajectories,
                       "CSV row per jump event (rejection sampler only)");
    sim_line->add_option("--grid-size", cfg.grid_size, "DPP sampling grid panels");

    auto* spacing = app.add_subcommand("spacing", "unfolded spacing histogram vs the exact law");
    add_common(spacing, cfg, config_path);
    add_line_model(spacing, cfg);
    add_seeded(spacing, cfg);
    spacing->add_option("--bin-width", cfg.bin_width, "histogram bin width");
    spacing->add_option("--edge-fraction", cfg.edge_fraction, "bulk edge exclusion fraction");

    auto* numvar = app.add_subcommand("number-variance", "count variance vs the GUE curve");
    add_common(numvar, cfg, config_path);
    add_line_model(numvar, cfg);
    add_seeded(numvar, cfg);
    numvar->add_option("--s-min", cfg.s_min, "smallest window length");
    numvar->add_option("--s-max", cfg.s_max, "largest window length");
    numvar->add_option("--s-step", cfg.s_step, "window length step");
    numvar->add_option("--edge-fraction", cfg.edge_fraction, "bulk edge exclusion fraction");

    auto* reference = app.add_subcommand("reference", "tabulate GUE reference curves");
    add_common(reference, cfg, config_path);
    reference->add_option("--method", cfg.method,
                          "gaudin|gaudin-cdf|surmise|gap|variance|variance-asymptotic");
    reference->add_option("--s-min", cfg.s_min, "grid start");
    reference->add_option("--s-max", cfg.s_max, "grid end");
    reference->add_option("--s-step", cfg.s_step, "grid step");

    auto* equil = app.add_subcommand("equilibrium", "equilibrium measure endpoints and density");
    add_common(equil, cfg, config_path);
    equil->add_option("--nu", cfg.nu, "limit n/N");
    equil->add_option("--eta", cfg.eta, "limit (x-1)/N");

    auto* gap = app.add_subcommand("gap-prob", "exact finite-n gap probability");
    add_common(gap, cfg, config_path);
    add_line_model(gap, cfg);
    gap->add_option("--lo", cfg.interval_lo, "interval start in [-1,1]");
    gap->add_option("--hi", cfg.interval_hi, "interval end in [-1,1]");

    auto* multi = app.add_subcommand("multitime-check", "extended kernel vs CD kernel");
    add_common(multi, cfg, config_path);
    add_line_model(multi, cfg);
    multi->add_option("--t", cfg.t, "observation time");

    auto* sim_circle = app.add_subcommand("simulate-circle", "circular route Q_t and samples");
    add_common(sim_circle, cfg, config_path);
    sim_circle->add_option("--M", cfg.M, "circle size");
    sim_circle->add_option("--k", cfg.k, "bus count");
    sim_circle->add_option("--T", cfg.T, "return horizon");
    sim_circle->add_option("--t", cfg.t, "observation time");
    add_seeded(sim_circle, cfg);

    CLI11_PARSE(app, argc, argv);

    if (sim_line->parsed()) return run("simulate-line", pbridge::run_simulate_line, cfg, config_path);
    if (spacing->parsed()) return run("spacing", pbridge::run_spacing, cfg, config_path);
    if (numvar->parsed()) return run("number-variance", pbridge::run_number_variance, cfg, config_path);
    if (reference->parsed()) return run("reference", pbridge::run_reference, cfg, config_path);
    if (equil->parsed()) return run("equilibrium", pbridge::run_equilibrium_cmd, cfg, config_path);
    if (gap->parsed()) return run("gap-prob", pbridge::run_gap_prob, cfg, config_path);
    if (multi->parsed()) return run("multitime-check", pbridge::run_multitime_check, cfg, config_path);
    if (sim_circle->parsed()) return run("simulate-circle", pbridge::run_simulate_circle, cfg, config_path);
    return 1;
}
