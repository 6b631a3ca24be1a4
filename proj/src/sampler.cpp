#include "pbridge/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pbridge {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::mt19937_64 make_rng(const Seed& seed) {
    const std::uint64_t mixed =
        splitmix64(splitmix64(seed.master) + 0x632BE59BD9B4E019ULL * (seed.replicate + 1));
    return std::mt19937_64(mixed);
}

RejectionExhausted::RejectionExhausted(std::uint64_t n)
    : std::runtime_error("rejection sampler exhausted " + std::to_string(n) + " attempts"),
      attempts(n) {}

bool paths_non_intersecting(const TrajectorySet& trajs) {
    const std::size_t n = trajs.jumps.size();
    if (n == 1) return true;
    std::vector<std::pair<double, std::size_t>> events;
    for (std::size_t b = 0; b < n; ++b)
        for (double t : trajs.jumps[b]) events.emplace_back(t, b);
    std::sort(events.begin(), events.end());
    for (std::size_t e = 1; e < events.size(); ++e)
        if (events[e].first == events[e - 1].first) return false;  // tie -> reject
    std::vector<long> level(n);
    for (std::size_t b = 0; b < n; ++b) level[b] = -static_cast<long>(b);
    for (const auto& [t, b] : events) {
        ++level[b];
        if (b > 0 && level[b] == level[b - 1]) return false;
    }
    return true;
}

BridgeSample sample_bridge_rejection(const ModelParams& params, std::mt19937_64& rng,
                                     std::uint64_t max_attempts) {
    params.validate();
    std::uniform_real_distribution<double> unif(0.0, params.T);
    TrajectorySet trajs;
    trajs.jumps.assign(params.n, std::vector<double>(params.N));
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        for (auto& path : trajs.jumps) {
            for (auto& t : path) t = unif(rng);
            std::sort(path.begin(), path.end());
        }
        if (paths_non_intersecting(trajs)) return {trajs, attempt};
    }
    throw RejectionExhausted(max_attempts);
}

ArrivalTimes arrival_times(const TrajectorySet& trajs, const ModelParams& params, int x) {
    if (x < 1 || x > params.N - params.n + 1)
        throw std::invalid_argument("arrival_times: site outside admissible window");
    ArrivalTimes out;
    out.times.resize(trajs.jumps.size());
    for (std::size_t b = 0; b < trajs.jumps.size(); ++b)
        out.times[b] = trajs.jumps[b][static_cast<std::size_t>(x) + b - 1];
    return out;
}

PositionConfig positions_at(const TrajectorySet& trajs, double t) {
    PositionConfig out;
    out.positions.resize(trajs.jumps.size());
    for (std::size_t b = 0; b < trajs.jumps.size(); ++b) {
        const auto& path = trajs.jumps[b];
        const auto it = std::upper_bound(path.begin(), path.end(), t);
        out.positions[b] = static_cast<int>(it - path.begin()) - static_cast<int>(b);
    }
    return out;
}

namespace {

// Gram-Schmidt with one reorthogonalization pass; returns the residual and
// its squared norm.
double orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : basis) {
            double dot = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) dot += e[j] * v[j];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= dot * e[j];
        }
    double nrm2 = 0.0;
    for (double c : v) nrm2 += c * c;
    return nrm2;
}

}  // namespace

PositionConfig sample_krawtchouk_dpp(const ModelParams& params, double t, std::mt19937_64& rng) {
    const KrawtchoukBasis basis = KrawtchoukBasis::from_params(params, t);
    const int n = params.n;
    const int sites = basis.support_size();
    const Matrix f = basis.feature_matrix();

    std::vector<double> residual(sites);
    for (int y = 0; y < sites; ++y) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += f(y, j) * f(y, j);
        residual[y] = s;
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::vector<double>> ortho;
    std::vector<int> chosen;
    for (int step = 0; step < n; ++step) {
        double total = 0.0;
        for (double r : residual) total += std::max(r, 0.0);
        if (!(total > 0.0)) throw std::runtime_error("sample_krawtchouk_dpp: kernel rank deficient");
        double u = unif(rng) * total;
        int y = sites - 1;
        for (int s = 0; s < sites; ++s) {
            u -= std::max(residual[s], 0.0);
            if (u <= 0.0) {
                y = s;
                break;
            }
        }
        chosen.push_back(y);
        std::vector<double> v(n);
        for (int j = 0; j < n; ++j) v[j] = f(y, j);
        const double nrm2 = orthogonalize(v, ortho);
        if (!(nrm2 > 0.0)) throw std::runtime_error("sample_krawtchouk_dpp: degenerate step");
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& c : v) c *= inv;
        for (int s = 0; s < sites; ++s) {
            double dot = 0.0;
            for (int j = 0; j < n; ++j) dot += v[j] * f(s, j);
            residual[s] -= dot * dot;
        }
        ortho.push_back(std::move(v));
    }
    std::sort(chosen.rbegin(), chosen.rend());
    PositionConfig out;
    out.positions.resize(n);
    for (int j = 0; j < n; ++j) out.positions[j] = chosen[j] - (n - 1);
    return out;
}

ArrivalTimes sample_jacobi_arrivals(const ModelParams& params, std::mt19937_64& rng,
                                    std::size_t grid_size) {
    const JacobiBasis basis = JacobiBasis::from_params(params);
    const int n = params.n;
    const std::size_t g = grid_size;
    const double h = 2.0 / static_cast<double>(g);

    std::vector<double> node(g + 1);
    for (std::size_t i = 0; i <= g; ++i) node[i] = -1.0 + h * static_cast<double>(i);

    // feature table: phi_0..phi_{n-1} at every grid node
    std::vector<std::vector<double>> feat(g + 1);
    std::vector<double> residual(g + 1);
    for (std::size_t i = 0; i <= g; ++i) {
        feat[i] = basis.phi_all(node[i], n - 1);
        double s = 0.0;
        for (double c : feat[i]) s += c * c;
        residual[i] = s;
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::vector<double>> ortho;
    std::vector<double> points;
    for (int step = 0; step < n; ++step) {
        // trapezoid CDF over the piecewise-linear density tabulation
        double total = 0.0;
        for (std::size_t i = 0; i < g; ++i)
            total += 0.5 * h * (std::max(residual[i], 0.0) + std::max(residual[i + 1], 0.0));
        if (!(total > 0.0)) throw std::runtime_error("sample_jacobi_arrivals: rank deficient");
        double u = unif(rng) * total;
        double y = node[g];
        for (std::size_t i = 0; i < g; ++i) {
            const double r0 = std::max(residual[i], 0.0), r1 = std::max(residual[i + 1], 0.0);
            const double panel = 0.5 * h * (r0 + r1);
            if (u > panel) {
                u -= panel;
                continue;
            }
            // invert the quadratic CDF of the linear density on this panel
            if (r0 + r1 <= 0.0) {
                y = node[i] + 0.5 * h;
            } else if (std::fabs(r1 - r0) < 1e-14 * (r0 + r1)) {
                y = node[i] + h * (u / panel);
            } else {
                const double slope = (r1 - r0) / h;
                const double disc = r0 * r0 + 2.0 * slope * u;
                y = node[i] + (std::sqrt(std::max(disc, 0.0)) - r0) / slope;
            }
            break;
        }
        y = std::clamp(y, -1.0 + 1e-12, 1.0 - 1e-12);
        points.push_back(y);

        std::vector<double> v = basis.phi_all(y, n - 1);
        const double nrm2 = orthogonalize(v, ortho);
        if (!(nrm2 > 0.0)) throw std::runtime_error("sample_jacobi_arrivals: degenerate step");
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& c : v) c *= inv;
        for (std::size_t i = 0; i <= g; ++i) {
            double dot = 0.0;
            for (int j = 0; j < n; ++j) dot += v[j] * feat[i][j];
            residual[i] -= dot * dot;
        }
        ortho.push_back(std::move(v));
    }
    std::sort(points.begin(), points.end());
    ArrivalTimes out;
    out.times.resize(n);
    for (int j = 0; j < n; ++j) out.times[j] = params.T * 0.5 * (points[j] + 1.0);
    return out;
}

}  // namespace pbridge
