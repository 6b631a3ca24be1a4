#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "doctest.h"
#include "pbridge/model_line.hpp"
#include "pbridge/orthopoly.hpp"
#include "pbridge/sampler.hpp"

using namespace pbridge;

TEST_CASE("identical seeds give identical streams, replicates differ") {
    auto r1 = make_rng({42, 3});
    auto r2 = make_rng({42, 3});
    auto r3 = make_rng({42, 4});
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 16; ++i) {
        const auto a = r1(), b = r2(), c = r3();
        all_equal = all_equal && (a == b);
        any_diff = any_diff || (a != c);
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("rejection sampler output respects the bridge constraints") {
    const ModelParams p{4, 2, 2, 1.5};
    auto rng = make_rng({7, 0});
    for (int rep = 0; rep < 20; ++rep) {
        const BridgeSample s = sample_bridge_rejection(p, rng, 1000000);
        REQUIRE(s.trajectories.jumps.size() == 2);
        for (const auto& path : s.trajectories.jumps) {
            REQUIRE(static_cast<int>(path.size()) == p.N);
            CHECK(std::is_sorted(path.begin(), path.end()));
            CHECK(path.front() > 0.0);
            CHECK(path.back() < p.T);
        }
        CHECK(paths_non_intersecting(s.trajectories));
        const ArrivalTimes a = arrival_times(s.trajectories, p, p.x);
        CHECK(std::is_sorted(a.times.begin(), a.times.end()));
    }
}

TEST_CASE("intersection detector on handcrafted paths") {
    // bus 1 (start 0) and bus 2 (start -1): bus 2 jumping first would catch up
    TrajectorySet cross{{{0.5, 0.9}, {0.2, 0.3}}};
    CHECK_FALSE(paths_non_intersecting(cross));
    TrajectorySet ok{{{0.2, 0.5}, {0.4, 0.9}}};
    CHECK(paths_non_intersecting(ok));
    // coinciding jump times count as an intersection
    TrajectorySet tie{{{0.2, 0.5}, {0.5, 0.9}}};
    CHECK_FALSE(paths_non_intersecting(tie));
}

TEST_CASE("single-bus arrival follows the conditioned order-statistic law") {
    // n = 1: arrival at x over horizon T is T * Beta(x, N-x+1)
    const ModelParams p{5, 1, 2, 2.0};
    auto rng = make_rng({11, 0});
    const int m = 20000;
    double mean = 0.0;
    for (int i = 0; i < m; ++i) {
        const BridgeSample s = sample_bridge_rejection(p, rng, 100);
        mean += arrival_times(s.trajectories, p, p.x).times[0];
    }
    mean /= m;
    const double mu = p.T * p.x / (p.N + 1.0);      // 2/3
    const double var = p.T * p.T * (2.0 / 6.0) * (4.0 / 6.0) / 7.0;
    CHECK(std::fabs(mean - mu) < 4.0 * std::sqrt(var / m));
}

TEST_CASE("rejection acceptance rate matches the bridge determinant") {
    const ModelParams p{4, 2, 2, 1.0};
    // acceptance probability = P(no intersection | each bus makes N jumps)
    const double per_bus = std::exp(-p.T) * std::pow(p.T, p.N) / std::tgamma(p.N + 1.0);
    const double expect = log_km_full_bridge(p).to_double() / std::pow(per_bus, p.n);
    auto rng = make_rng({5, 0});
    const int accepted_target = 2000;
    std::uint64_t proposals = 0;
    for (int i = 0; i < accepted_target; ++i)
        proposals += sample_bridge_rejection(p, rng, 1u << 24).attempts;
    const double rate = static_cast<double>(accepted_target) / proposals;
    const double se = std::sqrt(expect * (1.0 - expect) / proposals);
    CHECK(std::fabs(rate - expect) < 4.0 * se);
}

TEST_CASE("rejection sampler throws when the budget is exhausted") {
    const ModelParams p{30, 6, 10, 1.0};  // tiny acceptance probability
    auto rng = make_rng({1, 0});
    CHECK_THROWS_AS(sample_bridge_rejection(p, rng, 3), RejectionExhausted);
}

TEST_CASE("Krawtchouk sampler: n = 1 reduces to the binomial marginal") {
    const ModelParams p{4, 1, 2, 1.0};
    const double t = 0.3;
    auto rng = make_rng({23, 0});
    const int m = 40000;
    std::vector<int> counts(p.N + 1, 0);
    for (int i = 0; i < m; ++i) {
        const PositionConfig c = sample_krawtchouk_dpp(p, t, rng);
        REQUIRE(c.positions.size() == 1);
        ++counts[c.positions[0]];
    }
    for (int y = 0; y <= p.N; ++y) {
        const double prob = position_pmf(p, t, PositionConfig{{y}});
        const double se = std::sqrt(prob * (1.0 - prob) / m);
        CHECK(std::fabs(counts[y] / static_cast<double>(m) - prob) < 4.0 * se + 1e-4);
    }
}

TEST_CASE("Krawtchouk sampler matches the exact law in total variation") {
    const ModelParams p{3, 2, 1, 1.0};
    const double t = 0.6;
    auto rng = make_rng({29, 0});
    const int m = 100000;
    std::map<std::vector<int>, int> counts;
    for (int i = 0; i < m; ++i) {
        PositionConfig c = sample_krawtchouk_dpp(p, t, rng);
        CHECK(c.positions[0] > c.positions[1]);
        ++counts[c.positions];
    }
    double tv = 0.0;
    for (const auto& c : enumerate_position_configs(p)) {
        const double emp = counts.count(c.positions) ? counts[c.positions] / double(m) : 0.0;
        tv += 0.5 * std::fabs(emp - position_pmf(p, t, c));
    }
    CHECK(tv < 0.02);
}

TEST_CASE("rejection positions agree with the DPP law marginally") {
    const ModelParams p{3, 2, 1, 1.0};
    const double t = 0.6;
    auto rng = make_rng({31, 0});
    const int m = 20000;
    std::map<std::vector<int>, int> counts;
    for (int i = 0; i < m; ++i) {
        const BridgeSample s = sample_bridge_rejection(p, rng, 1u << 20);
        ++counts[positions_at(s.trajectories, t).positions];
    }
    double tv = 0.0;
    for (const auto& c : enumerate_position_configs(p)) {
        const double emp = counts.count(c.positions) ? counts[c.positions] / double(m) : 0.0;
        tv += 0.5 * std::fabs(emp - position_pmf(p, t, c));
    }
    CHECK(tv < 0.03);
}

TEST_CASE("grid arrival sampler: n = 1 matches the Beta law at quantiles") {
    const ModelParams p{9, 1, 4, 3.0};
    auto rng = make_rng({37, 0});
    const int m = 20000;
    std::vector<double> draws(m);
    for (int i = 0; i < m; ++i) {
        const ArrivalTimes a = sample_jacobi_arrivals(p, rng);
        REQUIRE(a.times.size() == 1);
        CHECK(a.times[0] > 0.0);
        CHECK(a.times[0] < p.T);
        draws[i] = a.times[0] / p.T;
    }
    std::sort(draws.begin(), draws.end());
    // Beta(4, 6) cdf by simple quadrature at a few reference points
    auto beta_cdf = [](double z) {
        const int steps = 20000;
        double s = 0.0;
        for (int i = 0; i < steps; ++i) {
            const double u = z * (i + 0.5) / steps;
            s += std::pow(u, 3) * std::pow(1.0 - u, 5);
        }
        return s * z / steps * std::tgamma(10.0) / (std::tgamma(4.0) * std::tgamma(6.0));
    };
    for (double z : {0.25, 0.4, 0.55}) {
        const double emp =
            (std::lower_bound(draws.begin(), draws.end(), z) - draws.begin()) / double(m);
        const double ref = beta_cdf(z);
        CHECK(std::fabs(emp - ref) < 4.0 * std::sqrt(ref * (1.0 - ref) / m) + 1e-3);
    }
}

TEST_CASE("grid arrival sampler reproduces the exact gap probability") {
    const ModelParams p{12, 3, 6, 1.0};
    const JacobiBasis b = JacobiBasis::from_params(p);
    const double lo = -0.15, hi = 0.15;
    const double expect = b.gap_probability(lo, hi);
    auto rng = make_rng({41, 0});
    const int m = 20000;
    int empty = 0;
    for (int i = 0; i < m; ++i) {
        const ArrivalTimes a = sample_jacobi_arrivals(p, rng);
        CHECK(std::is_sorted(a.times.begin(), a.times.end()));
        bool hit = false;
        for (double t : a.times) {
            const double y = 2.0 * t / p.T - 1.0;
            if (y > lo && y < hi) hit = true;
        }
        if (!hit) ++empty;
    }
    const double rate = empty / double(m);
    const double se = std::sqrt(expect * (1.0 - expect) / m);
    CHECK(std::fabs(rate - expect) < 4.0 * se + 2e-3);
}

TEST_CASE("samplers are deterministic given the seed") {
    const ModelParams p{6, 2, 3, 1.0};
    auto r1 = make_rng({99, 1});
    auto r2 = make_rng({99, 1});
    const ArrivalTimes a1 = sample_jacobi_arrivals(p, r1);
    const ArrivalTimes a2 = sample_jacobi_arrivals(p, r2);
    CHECK(a1.times == a2.times);
    auto r3 = make_rng({99, 1});
    auto r4 = make_rng({99, 1});
    CHECK(sample_krawtchouk_dpp(p, 0.4, r3).positions ==
          sample_krawtchouk_dpp(p, 0.4, r4).positions);
}
