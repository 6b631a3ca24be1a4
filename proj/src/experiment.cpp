#include "pbridge/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pbridge/circle.hpp"
#include "pbridge/equilibrium.hpp"
#include "pbridge/model_line.hpp"
#include "pbridge/multitime.hpp"
#include "pbridge/orthopoly.hpp"
#include "pbridge/rmt_reference.hpp"
#include "pbridge/sampler.hpp"

namespace pbridge {

std::vector<double> ExperimentConfig::s_grid() const {
    std::vector<double> g;
    for (double s = s_min; s <= s_max + 1e-12; s += s_step) g.push_back(s);
    return g;
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
    std::map<std::string, std::string> m;
    m["N"] = std::to_string(N);
    m["n"] = std::to_string(n);
    m["x"] = std::to_string(x);
    m["T"] = format_real(T);
    m["M"] = std::to_string(M);
    m["k"] = std::to_string(k);
    m["t"] = format_real(t);
    m["seed"] = std::to_string(seed);
    m["replicates"] = std::to_string(replicates);
    m["sampler"] = sampler;
    m["max_attempts"] = std::to_string(max_attempts);
    m["grid_size"] = std::to_string(grid_size);
    m["bin_width"] = format_real(bin_width);
    m["s_min"] = format_real(s_min);
    m["s_max"] = format_real(s_max);
    m["s_step"] = format_real(s_step);
    m["edge_fraction"] = format_real(edge_fraction);
    m["interval_lo"] = format_real(interval_lo);
    m["interval_hi"] = format_real(interval_hi);
    m["nu"] = format_real(nu);
    m["eta"] = format_real(eta);
    m["method"] = method;
    return m;
}

void ExperimentConfig::apply(const std::string& key, const std::string& value) {
    if (key == "N") N = std::stoi(value);
    else if (key == "n") n = std::stoi(value);
    else if (key == "x") x = std::stoi(value);
    else if (key == "T") T = std::stod(value);
    else if (key == "M") M = std::stoi(value);
    else if (key == "k") k = std::stoi(value);
    else if (key == "t") t = std::stod(value);
    else if (key == "seed") { seed = std::stoull(value); seed_set = true; }
    else if (key == "replicates") replicates = std::stoul(value);
    else if (key == "sampler") sampler = value;
    else if (key == "max_attempts") max_attempts = std::stoull(value);
    else if (key == "grid_size") grid_size = std::stoul(value);
    else if (key == "bin_width") bin_width = std::stod(value);
    else if (key == "s_min") s_min = std::stod(value);
    else if (key == "s_max") s_max = std::stod(value);
    else if (key == "s_step") s_step = std::stod(value);
    else if (key == "edge_fraction") edge_fraction = std::stod(value);
    else if (key == "interval_lo") interval_lo = std::stod(value);
    else if (key == "interval_hi") interval_hi = std::stod(value);
    else if (key == "nu") nu = std::stod(value);
    else if (key == "eta") eta = std::stod(value);
    else if (key == "method") method = value;
    else if (key == "output_dir") output_dir = value;
    else if (key == "dump_trajectories") dump_trajectories = (value == "1" || value == "true");
    else throw std::invalid_argument("unknown config key: " + key);
}

void ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + line);
        apply(line.substr(0, eq), line.substr(eq + 1));
    }
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void require_seed(const ExperimentConfig& c) {
    if (!c.seed_set) throw std::invalid_argument("stage config: --seed is mandatory for stochastic commands");
}

std::string out_path(const ExperimentConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.output_dir);
    return (std::filesystem::path(c.output_dir) / name).string();
}

// manifest: config echo + content hash of the data files + runtime
void write_manifest(const ExperimentConfig& c, const std::string& command,
                    std::vector<std::string>& files, double runtime_s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& f : files) h = fnv1a(read_file_bytes(f), h);
    const std::string path = out_path(c, "manifest.txt");
    std::ofstream out(path, std::ios::binary);
    out << "command=" << command << "\n";
    for (const auto& [k, v] : c.echo()) out << k << "=" << v << "\n";
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    out << "content_hash=" << hex << "\n";
    out << "runtime_seconds=" << format_real(runtime_s) << "\n";
    files.push_back(path);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

ModelParams line_params(const ExperimentConfig& c) {
    ModelParams p{c.N, c.n, c.x, c.T};
    p.validate();
    return p;
}

bool use_rejection(const ExperimentConfig& c) {
    if (c.sampler == "rejection") return true;
    if (c.sampler == "dpp") return false;
    if (c.sampler != "auto") throw std::invalid_argument("sampler must be auto|rejection|dpp");
    return c.n <= 3 && c.N <= 16;
}

}  // namespace

std::vector<UnfoldedSequence> simulate_unfolded_line(const ExperimentConfig& config) {
    require_seed(config);
    const ModelParams params = line_params(config);
    const JacobiBasis basis = JacobiBasis::from_params(params);
    const EquilibriumData eq =
        solve_endpoints(double(params.n) / params.N, double(params.x - 1) / params.N);
    const bool rejection = use_rejection(config);

    std::vector<UnfoldedSequence> out;
    out.reserve(config.replicates);
    for (std::size_t r = 0; r < config.replicates; ++r) {
        auto rng = make_rng({config.seed, r});
        ArrivalTimes arr;
        if (rejection) {
            const auto sample = sample_bridge_rejection(params, rng, config.max_attempts);
            arr = arrival_times(sample.trajectories, params, params.x);
        } else {
            arr = sample_jacobi_arrivals(params, rng, config.grid_size);
        }
        std::vector<double> y(arr.times.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = 2.0 * arr.times[i] / params.T - 1.0;
        UnfoldedSequence seq;
        seq.points = unfold(y, UnfoldMode::ExactFiniteN, basis, eq);
        seq.replicate = r;
        out.push_back(std::move(seq));
    }
    return out;
}

ExperimentResult run_simulate_line(const ExperimentConfig& config) {
    Timer timer;
    require_seed(config);
    const ModelParams params = line_params(config);
    const bool rejection = use_rejection(config);
    ExperimentResult res;

    CsvTable arrivals;
    arrivals.header = {"replicate", "bus", "time"};
    CsvTable trajs;
    trajs.header = {"replicate", "bus", "jump_index", "time"};
    for (std::size_t r = 0; r < config.replicates; ++r) {
        auto rng = make_rng({config.seed, r});
        ArrivalTimes arr;
        if (rejection) {
            const auto sample = sample_bridge_rejection(params, rng, config.max_attempts);
            arr = arrival_times(sample.trajectories, params, params.x);
            if (config.dump_trajectories)
                for (std::size_t b = 0; b < sample.trajectories.jumps.size(); ++b)
                    for (std::size_t j = 0; j < sample.trajectories.jumps[b].size(); ++j)
                        trajs.rows.push_back({std::to_string(r), std::to_string(b),
                                              std::to_string(j),
                                              format_real(sample.trajectories.jumps[b][j])});
        } else {
            arr = sample_jacobi_arrivals(params, rng, config.grid_size);
        }
        for (std::size_t b = 0; b < arr.times.size(); ++b)
            arrivals.rows.push_back({std::to_string(r), std::to_string(b), format_real(arr.times[b])});
    }
    const std::string path = out_path(config, "arrivals.csv");
    write_csv(path, arrivals);
    res.files.push_back(path);
    if (rejection && config.dump_trajectories) {
        const std::string tpath = out_path(config, "trajectories.csv");
        write_csv(tpath, trajs);
        res.files.push_back(tpath);
    }
    write_manifest(config, "simulate-line", res.files, timer.elapsed());
    return res;
}

ExperimentResult run_spacing(const ExperimentConfig& config) {
    Timer timer;
    const auto sequences = simulate_unfolded_line(config);
    const SpacingHistogram hist =
        spacing_statistic(sequences, config.bin_width, config.edge_fraction);

    // KS against the exact spacing law
    std::vector<double> ref_x, ref_cdf;
    for (double s = 0.0; s <= 6.0 + 1e-9; s += 0.02) {
        ref_x.push_back(s);
        ref_cdf.push_back(gaudin_cdf(s));
    }
    const double ks = ks_distance(pooled_spacings(sequences, config.edge_fraction), ref_x, ref_cdf);

    ExperimentResult res;
    CsvTable table;
    table.header = {"s", "density", "stderr", "count", "gaudin", "surmise"};
    for (std::size_t b = 0; b < hist.bin_centers.size(); ++b)
        table.rows.push_back({format_real(hist.bin_centers[b]), format_real(hist.density[b]),
                              format_real(hist.stderr_[b]), std::to_string(hist.counts[b]),
                              format_real(gaudin_density(hist.bin_centers[b])),
                              format_real(wigner_surmise(hist.bin_centers[b]))});
    const std::string path = out_path(config, "spacing.csv");
    write_csv(path, table);
    res.files.push_back(path);
    res.kpis["ks_gaudin"] = ks;
    res.kpis["spacings"] = static_cast<double>(hist.total_spacings);
    write_manifest(config, "spacing", res.files, timer.elapsed());
    return res;
}

ExperimentResult run_number_variance(const ExperimentConfig& config) {
    Timer timer;
    const auto sequences = simulate_unfolded_line(config);
    const NumberVarianceCurve curve =
        number_variance_statistic(sequences, config.s_grid(), config.edge_fraction);

    ExperimentResult res;
    CsvTable table;
    table.header = {"s", "variance", "stderr", "gue", "asymptote"};
    double worst_rel = 0.0;
    for (std::size_t i = 0; i < curve.s.size(); ++i) {
        const double ref = gue_number_variance(curve.s[i]);
        worst_rel = std::max(worst_rel, std::fabs(curve.variance[i] - ref) / ref);
        table.rows.push_back({format_real(curve.s[i]), format_real(curve.variance[i]),
                              format_real(curve.stderr_[i]), format_real(ref),
                              format_real(gue_number_variance_asymptote(curve.s[i]))});
    }
    const std::string path = out_path(config, "number_variance.csv");
    write_csv(path, table);
    res.files.push_back(path);
    res.kpis["max_rel_dev"] = worst_rel;
    write_manifest(config, "number-variance", res.files, timer.elapsed());
    return res;
}

ExperimentResult run_reference(const ExperimentConfig& config) {
    Timer timer;
    const ReferenceCurve curve = tabulate_reference(config.method, config.s_grid());
    ExperimentResult res;
    CsvTable table;
    table.header = {"s", "value", "method"};
    for (std::size_t i = 0; i < curve.abscissa.size(); ++i)
        table.rows.push_back(
            {format_real(curve.abscissa[i]), format_real(curve.value[i]), curve.method});
    const std::string path = out_path(config, "reference.csv");
    write_csv(path, table);
    res.files.push_back(path);
    write_manifest(config, "reference", res.files, timer.elapsed());
    return res;
}

ExperimentResult run_equilibrium_cmd(const ExperimentConfig& config) {
    Timer timer;
    const EquilibriumData eq = solve_endpoints(config.nu, config.eta);
    ExperimentResult res;
    CsvTable table;
    table.header = {"x", "psi"};
    const int pts = 201;
    for (int i = 1; i < pts; ++i) {
        const double x = eq.a + (eq.b - eq.a) * i / pts;
        table.rows.push_back({format_real(x), format_real(density_psi(eq, x))});
    }
    const std::string path = out_path(config, "equilibrium.csv");
    write_csv(path, table);
    res.files.push_back(path);
    res.kpis["a"] = eq.a;
    res.kpis["b"] = eq.b;
    write_manifest(config, "equilibrium", res.files, timer.elapsed());
    return res;
}

ExperimentResult run_gap_prob(const ExperimentConfig& config) {
    Timer timer;
    const ModelParams params = line_params(config);
    const JacobiBasis basis = JacobiBasis::from_params(params);
    const double gap = basis.gap_probability(config.interval_lo, config.interval_hi);
    ExperimentResult res;
    CsvTable table;
    table.header = {"c", "d", "gap_probability"};
    table.rows.push_back(
        {format_real(config.interval_lo), format_real(config.interval_hi), format_real(gap)});
    const std::string path = out_path(config, "gap_prob.csv");
    write_csv(path, table);
    res.files.push_back(path);
    res.kpis["gap_probability"] = gap;
    write_manifest(config, "gap-prob", res.files, timer.elapsed());
    return res;
}

ExperimentResult run_multitime_check(const ExperimentConfig& config) {
    Timer timer;
    const ModelParams params = line_params(config);
    const double p = config.t / config.T;
    const KrawtchoukBasis kb = KrawtchoukBasis::from_params(params, config.t);
    const Matrix cd = kb.kernel_matrix();
    ExperimentResult res;
    CsvTable table;
    table.header = {"y", "extended_1pt", "cd_1pt", "abs_diff"};
    double worst = 0.0;
    for (int y = 0; y < kb.support_size(); ++y) {
        const double ext = extended_kernel(params, p, p, y, y).value;
        const double ref = cd(y, y);
        worst = std::max(worst, std::fabs(ext - ref));
        table.rows.push_back(
            {std::to_string(y), format_real(ext), format_real(ref), format_real(ext - ref)});
    }
    const std::string path = out_path(config, "multitime_check.csv");
    write_csv(path, table);
    res.files.push_back(path);
    res.kpis["max_abs_diff"] = worst;
    write_manifest(config, "multitime-check", res.files, timer.elapsed());
    return res;
}

ExperimentResult run_simulate_circle(const ExperimentConfig& config) {
    Timer timer;
    require_seed(config);
    const CircleParams params = CircleParams::consecutive(config.M, config.k, config.T);
    ExperimentResult res;

    CsvTable qt;
    qt.header = {"config", "probability"};
    double total = 0.0;
    // Q_t is rotation invariant, so the law lives on position sets; tabulate
    // each set once via its sorted representative.
    for (const auto& c : enumerate_cyclic_configs(config.M, config.k)) {
        if (!std::is_sorted(c.labels.begin(), c.labels.end())) continue;
        const double q = circle_conditioned_qt(params, c, config.t, config.T);
        total += q;
        std::string label;
        for (std::size_t i = 0; i < c.labels.size(); ++i)
            label += (i ? " " : "") + std::to_string(c.labels[i]);
        qt.rows.push_back({label, format_real(q)});
    }
    const std::string qpath = out_path(config, "qt_table.csv");
    write_csv(qpath, qt);
    res.files.push_back(qpath);

    CsvTable samples;
    samples.header = {"replicate", "bus", "position"};
    for (std::size_t r = 0; r < config.replicates; ++r) {
        auto rng = make_rng({config.seed, r});
        const auto s = sample_circle_rejection(params, config.t, rng, config.max_attempts);
        for (std::size_t b = 0; b < s.config.labels.size(); ++b)
            samples.rows.push_back(
                {std::to_string(r), std::to_string(b), std::to_string(s.config.labels[b])});
    }
    const std::string spath = out_path(config, "circle_samples.csv");
    write_csv(spath, samples);
    res.files.push_back(spath);
    res.kpis["qt_total"] = total;
    write_manifest(config, "simulate-circle", res.files, timer.elapsed());
    return res;
}

}  // namespace pbridge
