#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "doctest.h"
#include "pbridge/linalg.hpp"
#include "pbridge/model_line.hpp"
#include "pbridge/multitime.hpp"
#include "pbridge/orthopoly.hpp"

using namespace pbridge;

namespace {

bool contains(const std::vector<int>& shifted, int y) {
    return std::find(shifted.begin(), shifted.end(), y) != shifted.end();
}

}  // namespace

TEST_CASE("transition block is the Poisson increment weight") {
    CHECK(transition_block(0.3, 2, 1) == 0.0);
    CHECK(transition_block(0.3, 2, 2) == doctest::Approx(1.0));
    CHECK(transition_block(0.3, 1, 4) == doctest::Approx(std::pow(0.3, 3) / 6.0));
}

TEST_CASE("time grid validation") {
    const ModelParams p{4, 2, 2, 1.0};
    CHECK_NOTHROW(TimeGrid{{0.2, 0.7}}.validate(p));
    CHECK_THROWS(TimeGrid{{0.7, 0.2}}.validate(p));
    CHECK_THROWS(TimeGrid{{0.2, 1.5}}.validate(p));
    CHECK_THROWS(TimeGrid{{}}.validate(p));
    const auto f = TimeGrid{{0.25, 0.5}}.fractions({4, 2, 2, 2.0});
    CHECK(f[0] == doctest::Approx(0.125));
    CHECK(f[1] == doctest::Approx(0.25));
}

TEST_CASE("single-time weight is proportional to the position law") {
    const ModelParams p{4, 2, 2, 1.0};
    const TimeGrid grid{{0.37}};
    const auto configs = enumerate_position_configs(p);
    std::vector<double> w(configs.size());
    double wsum = 0.0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        w[i] = multitime_weight(p, grid, {configs[i]}).to_double();
        CHECK(w[i] >= 0.0);
        wsum += w[i];
    }
    for (std::size_t i = 0; i < configs.size(); ++i)
        CHECK(w[i] / wsum == doctest::Approx(position_pmf(p, 0.37, configs[i])).epsilon(1e-10));
}

TEST_CASE("two-time weight has the exact single-time marginals") {
    const ModelParams p{3, 2, 1, 1.0};
    const TimeGrid grid{{0.3, 0.8}};
    const auto configs = enumerate_position_configs(p);
    const std::size_t m = configs.size();
    // normalize the joint table, then marginalize over either slot
    std::vector<std::vector<double>> joint(m, std::vector<double>(m));
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            joint[i][j] = multitime_weight(p, grid, {configs[i], configs[j]}).to_double();
            CHECK(joint[i][j] >= 0.0);
            total += joint[i][j];
        }
    REQUIRE(total > 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double m1 = 0.0, m2 = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            m1 += joint[i][j];
            m2 += joint[j][i];
        }
        CHECK(m1 / total == doctest::Approx(position_pmf(p, 0.3, configs[i])).epsilon(1e-10));
        CHECK(m2 / total == doctest::Approx(position_pmf(p, 0.8, configs[i])).epsilon(1e-10));
    }
}

TEST_CASE("weight vanishes on a backwards transition") {
    const ModelParams p{3, 2, 1, 1.0};
    const TimeGrid grid{{0.3, 0.8}};
    // top bus would have to move down between the two times
    const PositionConfig late{{3, 0}};
    const PositionConfig early{{4, 0}};
    CHECK(multitime_weight(p, grid, {early, late}).sign == 0);
}

TEST_CASE("equal-time kernel reproduces the correlation determinants") {
    const ModelParams p{3, 2, 1, 1.0};
    const double t = 0.45, frac = 0.45;
    const KrawtchoukBasis kb = KrawtchoukBasis::from_params(p, t);
    const Matrix cd = kb.kernel_matrix();
    const int K = kb.support_size();

    Matrix ext(K, K);
    for (int x = 0; x < K; ++x)
        for (int y = 0; y < K; ++y) {
            const KernelValue v = extended_kernel(p, frac, frac, x, y);
            CHECK(std::fabs(v.imag_residual) < 1e-9);
            ext(x, y) = v.value;
        }
    // one-point functions agree directly
    for (int x = 0; x < K; ++x)
        CHECK(ext(x, x) == doctest::Approx(cd(x, x)).epsilon(1e-8));
    // two-point functions: gauge-invariant 2x2 determinants
    for (int x = 0; x < K; ++x)
        for (int y = x + 1; y < K; ++y) {
            const double de = ext(x, x) * ext(y, y) - ext(x, y) * ext(y, x);
            const double dc = cd(x, x) * cd(y, y) - cd(x, y) * cd(y, x);
            CHECK(de == doctest::Approx(dc).epsilon(1e-6));
        }
}

TEST_CASE("contour resolution is converged") {
    const ModelParams p{3, 2, 1, 1.0};
    for (const auto& [pi, pj] : std::vector<std::pair<double, double>>{{0.45, 0.45},
                                                                       {0.7, 0.3},
                                                                       {0.3, 0.7}}) {
        ContourSpec c1 = default_contour(pi, pj);
        ContourSpec c2 = c1;
        c1.samples = 512;
        c2.samples = 1024;
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) {
                const double v1 = extended_kernel(p, pi, pj, x, y, c1).value;
                const double v2 = extended_kernel(p, pi, pj, x, y, c2).value;
                CHECK(std::fabs(v1 - v2) < 1e-10);
            }
    }
}

TEST_CASE("two-time correlation from the kernel matches enumeration") {
    const ModelParams p{3, 2, 1, 1.0};
    const double t1 = 0.3, t2 = 0.8;
    const TimeGrid grid{{t1, t2}};
    const auto configs = enumerate_position_configs(p);

    // normalized joint law by enumeration
    std::vector<std::vector<double>> joint(configs.size(), std::vector<double>(configs.size()));
    double total = 0.0;
    for (std::size_t i = 0; i < configs.size(); ++i)
        for (std::size_t j = 0; j < configs.size(); ++j) {
            joint[i][j] = multitime_weight(p, grid, {configs[i], configs[j]}).to_double();
            total += joint[i][j];
        }

    const int K = p.N + p.n;  // shifted support {0..N+n-1}
    for (int x = 0; x < K; ++x)
        for (int y = 0; y < K; ++y) {
            double rho = 0.0;  // P(particle at x at t1 and at y at t2)
            for (std::size_t i = 0; i < configs.size(); ++i)
                for (std::size_t j = 0; j < configs.size(); ++j)
                    if (contains(configs[i].shifted(), x) && contains(configs[j].shifted(), y))
                        rho += joint[i][j] / total;

            const double a = extended_kernel(p, t1 / p.T, t1 / p.T, x, x).value;
            const double b = extended_kernel(p, t1 / p.T, t2 / p.T, x, y).value;
            const double c = extended_kernel(p, t2 / p.T, t1 / p.T, y, x).value;
            const double d = extended_kernel(p, t2 / p.T, t2 / p.T, y, y).value;
            CHECK(a * d - b * c == doctest::Approx(rho).epsilon(1e-6));
        }
}
