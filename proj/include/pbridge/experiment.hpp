#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pbridge/stats.hpp"

namespace pbridge {

// Flat key=value experiment description shared by the CLI flags and config
// files. Unset keys keep their defaults.
struct ExperimentConfig {
    // line model
    int N = 200;
    int n = 60;
    int x = 100;
    double T = 1.0;
    // circle model
    int M = 6;
    int k = 2;
    double t = 0.5;  // observation time (line position law / circle)
    // pipeline
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t replicates = 500;
    std::string sampler = "auto";  // auto | rejection | dpp
    std::uint64_t max_attempts = 1000000;
    std::size_t grid_size = 4096;
    double bin_width = 0.1;
    double s_min = 0.5, s_max = 3.0, s_step = 0.5;
    double edge_fraction = 0.10;
    double interval_lo = -0.1, interval_hi = 0.1;
    double nu = 1.0 / 3.0, eta = 1.0 / 3.0;
    std::string method = "gaudin";
    std::string output_dir = ".";
    bool dump_trajectories = false;

    std::vector<double> s_grid() const;
    std::map<std::string, std::string> echo() const;
    void apply(const std::string& key, const std::string& value);
    void load_file(const std::string& path);
};

// One CSV artifact: header + rows, every real printed with 17 significant
// digits so reruns are byte-identical.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string format_real(double v);
void write_csv(const std::string& path, const CsvTable& table);
std::string read_file_bytes(const std::string& path);

struct ExperimentResult {
    std::vector<std::string> files;      // paths written, manifest last
    std::map<std::string, double> kpis;  // summary numbers (ks, etc.)
};

// Pipeline commands; each writes its CSV artifacts plus a manifest into
// config.output_dir and is a pure function of (config, seed).
ExperimentResult run_simulate_line(const ExperimentConfig& config);
ExperimentResult run_spacing(const ExperimentConfig& config);
ExperimentResult run_number_variance(const ExperimentConfig& config);
ExperimentResult run_reference(const ExperimentConfig& config);
ExperimentResult run_equilibrium_cmd(const ExperimentConfig& config);
ExperimentResult run_gap_prob(const ExperimentConfig& config);
ExperimentResult run_multitime_check(const ExperimentConfig& config);
ExperimentResult run_simulate_circle(const ExperimentConfig& config);

// Simulated, exactly-unfolded arrival sequences for the line model; the
// workhorse behind run_spacing / run_number_variance.
std::vector<UnfoldedSequence> simulate_unfolded_line(const ExperimentConfig& config);

}  // namespace pbridge
