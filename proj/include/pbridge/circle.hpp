#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pbridge {

// k buses on the discrete circle Z_M.
struct CircleParams {
    int M = 2;
    int k = 1;
    double T = 1.0;
    std::vector<int> theta0;  // strictly increasing start positions in {0..M-1}

    static CircleParams consecutive(int M, int k, double T);
    void validate() const;
};

// k distinct labels forming a cyclic shift of an increasing tuple.
struct CyclicConfig {
    std::vector<int> labels;

    bool is_cyclically_ordered(int M) const;
};

// Wrapped Poisson transition: e^{-t} sum_l t^{d+lM}/(d+lM)! with d the residue
// of theta2-theta mod M; the series is truncated once the terms decrease and
// fall below 1e-16 of the running sum.
double wrapped_poisson(double t, int theta, int theta2, int M);

// det(p_t(theta_i, theta~_j)): probability of reaching the target at t with no
// intersection. The target must satisfy the cyclic-order condition.
double circle_km(const CircleParams& params, const CyclicConfig& target, double t);

// Conditioned bridge law Q_t for start (and end) positions theta_i = i-1.
double circle_conditioned_qt(const CircleParams& params, const CyclicConfig& intermediate,
                             double t, double T);

// All cyclic configs: every k-subset of {0..M-1} in each of its k rotations.
std::vector<CyclicConfig> enumerate_cyclic_configs(int M, int k);

struct CircleSample {
    CyclicConfig config;
    std::uint64_t attempts = 0;
    std::vector<int> total_jumps;  // per-bus jump counts of the accepted draw
};

// Rejection draw of the non-intersecting circular configuration at time t:
// independent Poisson jump streams, rejected on any positional coincidence
// mod M at a jump event.
CircleSample sample_circle_rejection(const CircleParams& params, double t, std::mt19937_64& rng,
                                     std::uint64_t max_attempts);

}  // namespace pbridge
