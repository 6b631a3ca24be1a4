#include "pbridge/circle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbridge/linalg.hpp"
#include "pbridge/logvalue.hpp"

namespace pbridge {

CircleParams CircleParams::consecutive(int M, int k, double T) {
    CircleParams p;
    p.M = M;
    p.k = k;
    p.T = T;
    p.theta0.resize(k);
    for (int i = 0; i < k; ++i) p.theta0[i] = i;
    p.validate();
    return p;
}

void CircleParams::validate() const {
    if (M < 2 || k < 1 || k >= M) throw std::invalid_argument("CircleParams: need 1 <= k < M");
    if (!(T > 0.0)) throw std::invalid_argument("CircleParams: T > 0");
    if (static_cast<int>(theta0.size()) != k)
        throw std::invalid_argument("CircleParams: need k start positions");
    for (int i = 0; i < k; ++i) {
        if (theta0[i] < 0 || theta0[i] >= M)
            throw std::invalid_argument("CircleParams: start position outside Z_M");
        if (i > 0 && theta0[i] <= theta0[i - 1])
            throw std::invalid_argument("CircleParams: start positions must increase");
    }
}

bool CyclicConfig::is_cyclically_ordered(int M) const {
    const int k = static_cast<int>(labels.size());
    for (int v : labels)
        if (v < 0 || v >= M) return false;
    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (k == 1) return true;
    for (int r = 0; r < k; ++r) {
        bool ok = true;
        for (int j = 1; j < k && ok; ++j)
            if (labels[(r + j) % k] <= labels[(r + j - 1) % k]) ok = false;
        if (ok) return true;
    }
    return false;
}

double wrapped_poisson(double t, int theta, int theta2, int M) {
    if (t < 0.0) throw std::invalid_argument("wrapped_poisson: t >= 0");
    if (M < 1) throw std::invalid_argument("wrapped_poisson: M >= 1");
    const int d = ((theta2 - theta) % M + M) % M;
    if (t == 0.0) return d == 0 ? 1.0 : 0.0;
    const double logt = std::log(t);
    double sum = 0.0, prev = -1.0;
    for (int l = 0;; ++l) {
        const double kk = d + static_cast<double>(l) * M;
        const double term = std::exp(kk * logt - log_factorial(kk));
        sum += term;
        if (term < prev && term < 1e-16 * sum) break;
        prev = term;
        if (l > 100000) break;  // unreachable for sane t
    }
    return std::exp(-t) * sum;
}

double circle_km(const CircleParams& params, const CyclicConfig& target, double t) {
    params.validate();
    if (static_cast<int>(target.labels.size()) != params.k)
        throw std::invalid_argument("circle_km: target size mismatch");
    if (!target.is_cyclically_ordered(params.M))
        throw std::domain_error("circle_km: target violates the cyclic-order condition");
    const int k = params.k;
    Matrix a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            a(i, j) = wrapped_poisson(t, params.theta0[i], target.labels[j], params.M);
    return det_lu(std::move(a));
}

double circle_conditioned_qt(const CircleParams& params, const CyclicConfig& intermediate,
                             double t, double T) {
    params.validate();
    if (!(t > 0.0 && t < T)) throw std::invalid_argument("circle_conditioned_qt: 0 < t < T");
    for (int i = 0; i < params.k; ++i)
        if (params.theta0[i] != i)
            throw std::invalid_argument("circle_conditioned_qt: start positions must be 0..k-1");
    if (!intermediate.is_cyclically_ordered(params.M))
        throw std::domain_error("circle_conditioned_qt: config violates cyclic order");
    const int k = params.k;
    Matrix fwd(k, k), bwd(k, k), full(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            fwd(i, j) = wrapped_poisson(t, params.theta0[i], intermediate.labels[j], params.M);
            bwd(i, j) = wrapped_poisson(T - t, intermediate.labels[i], params.theta0[j], params.M);
            full(i, j) = wrapped_poisson(T, params.theta0[i], params.theta0[j], params.M);
        }
    const double denom = det_lu(std::move(full));
    if (denom == 0.0) throw std::runtime_error("circle_conditioned_qt: degenerate bridge");
    return det_lu(std::move(fwd)) * det_lu(std::move(bwd)) / denom;
}

std::vector<CyclicConfig> enumerate_cyclic_configs(int M, int k) {
    std::vector<CyclicConfig> out;
    std::vector<int> subset(k);
    auto rec = [&](auto&& self, int idx, int lo) -> void {
        if (idx == k) {
            const int rotations = k == 1 ? 1 : k;
            for (int r = 0; r < rotations; ++r) {
                CyclicConfig c;
                c.labels.resize(k);
                for (int j = 0; j < k; ++j) c.labels[j] = subset[(r + j) % k];
                out.push_back(std::move(c));
            }
            return;
        }
        for (int v = lo; v <= M - (k - idx); ++v) {
            subset[idx] = v;
            self(self, idx + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

CircleSample sample_circle_rejection(const CircleParams& params, double t, std::mt19937_64& rng,
                                     std::uint64_t max_attempts) {
    params.validate();
    if (!(t > 0.0)) throw std::invalid_argument("sample_circle_rejection: t > 0");
    std::exponential_distribution<double> expo(1.0);
    const int k = params.k;
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<std::pair<double, int>> events;
        std::vector<int> jumps(k, 0);
        for (int b = 0; b < k; ++b) {
            double clock = expo(rng);
            while (clock <= t) {
                events.emplace_back(clock, b);
                ++jumps[b];
                clock += expo(rng);
            }
        }
        std::sort(events.begin(), events.end());
        bool ok = true;
        for (std::size_t e = 1; e < events.size() && ok; ++e)
            if (events[e].first == events[e - 1].first) ok = false;
        std::vector<int> pos(params.theta0);
        if (ok && k > 1) {
            for (const auto& [time, b] : events) {
                pos[b] = (pos[b] + 1) % params.M;
                for (int o = 0; o < k; ++o)
                    if (o != b && pos[o] == pos[b]) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
        } else if (ok) {
            pos[0] = (params.theta0[0] + jumps[0]) % params.M;
        }
        if (ok) {
            CircleSample s;
            s.config.labels = pos;
            s.attempts = attempt;
            s.total_jumps = jumps;
            return s;
        }
    }
    throw std::runtime_error("sample_circle_rejection: attempt budget exhausted");
}

}  // namespace pbridge
