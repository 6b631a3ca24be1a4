#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "pbridge/model_line.hpp"
#include "pbridge/orthopoly.hpp"

namespace pbridge {

// (master seed, replicate index) -> independent deterministic stream.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t replicate = 0;
};

// splitmix64-derived engine seed; identical Seed gives identical stream.
std::mt19937_64 make_rng(const Seed& seed);

// n unit-jump paths; bus i (0-based index i-1) starts at 1-i and carries
// exactly N sorted jump times in (0,T).
struct TrajectorySet {
    std::vector<std::vector<double>> jumps;
};

struct RejectionExhausted : std::runtime_error {
    explicit RejectionExhausted(std::uint64_t attempts);
    std::uint64_t attempts;
};

struct BridgeSample {
    TrajectorySet trajectories;
    std::uint64_t attempts = 0;  // proposals consumed, accepted one included
};

// Exact draw from the conditioned non-intersecting bridge law by rejection:
// each proposal takes the N jump times of every bus as sorted uniforms on
// (0,T) and is accepted iff the paths stay strictly ordered at every event.
BridgeSample sample_bridge_rejection(const ModelParams& params, std::mt19937_64& rng,
                                     std::uint64_t max_attempts);

// True iff the proposal keeps L^(1) > L^(2) > ... > L^(n) throughout.
// Coinciding jump times count as an intersection.
bool paths_non_intersecting(const TrajectorySet& trajs);

// Bus i's arrival at site x is its (x+i-1)-th jump time.
ArrivalTimes arrival_times(const TrajectorySet& trajs, const ModelParams& params, int x);

// Positions at time t (for marginal checks against the position law).
PositionConfig positions_at(const TrajectorySet& trajs, double t);

// Exact draw from the Krawtchouk position ensemble via the projection-DPP
// chain rule with Gram-Schmidt deflation of the feature vectors.
PositionConfig sample_krawtchouk_dpp(const ModelParams& params, double t, std::mt19937_64& rng);

// Draw from the arrival-time ensemble (the Jacobi orthogonal polynomial
// ensemble) by the same chain rule on a dense grid: each conditional density
// is tabulated on grid_size panels over [-1,1] and inverted piecewise
// linearly. Returns times in (0,T).
ArrivalTimes sample_jacobi_arrivals(const ModelParams& params, std::mt19937_64& rng,
                                    std::size_t grid_size = 4096);

}  // namespace pbridge
