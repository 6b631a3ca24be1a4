#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pbridge/model_line.hpp"
#include "pbridge/orthopoly.hpp"
#include "pbridge/quadrature.hpp"

using namespace pbridge;

namespace {

// quadrature oracle for inner products of the weighted basis functions
double inner(const JacobiBasis& b, int i, int j, std::size_t m = 400) {
    const QuadRule q = gauss_legendre(m, -1.0, 1.0);
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const auto p = b.phi_all(q.nodes[k], std::max(i, j));
        s += q.weights[k] * p[i] * p[j];
    }
    return s;
}

}  // namespace

TEST_CASE("degree-0 function is normalized") {
    const JacobiBasis b(3.0, 2.0, 4);
    CHECK(inner(b, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orthonormality matrix is the identity") {
    const ModelParams p{12, 3, 6, 1.0};
    const JacobiBasis b = JacobiBasis::from_params(p);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            const double g = inner(b, i, j);
            if (i == j)
                CHECK(g == doctest::Approx(1.0).epsilon(1e-10));
            else
                CHECK(std::fabs(g) < 1e-10);
        }
    CHECK(std::fabs(inner(b, 2, 3)) < 1e-12);
}

TEST_CASE("alpha=beta=0 reduces to Legendre") {
    const JacobiBasis b(0.0, 0.0, 3);
    for (double y : {-0.8, -0.1, 0.4, 0.9}) {
        CHECK(b.phi(0, y) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
        CHECK(b.phi(1, y) == doctest::Approx(y * std::sqrt(1.5)).epsilon(1e-12));
    }
    CHECK_THROWS(b.phi(1, 1.5));
}

TEST_CASE("CD kernel symmetry and confluent limit") {
    const ModelParams p{9, 3, 4, 1.0};
    const JacobiBasis b = JacobiBasis::from_params(p);
    CHECK(b.cd_kernel(0.2, -0.4) == doctest::Approx(b.cd_kernel(-0.4, 0.2)).epsilon(1e-12));
    // derivative limit vs a nearby off-diagonal evaluation
    const double diag = b.cd_kernel(0.3, 0.3);
    CHECK(diag == doctest::Approx(b.cd_kernel(0.3, 0.3 + 1e-7)).epsilon(1e-5));
    // diagonal equals the mode sum
    CHECK(diag == doctest::Approx(b.kernel_diag(0.3)).epsilon(1e-10));
}

TEST_CASE("kernel trace equals the particle number") {
    const ModelParams p{12, 3, 6, 1.0};
    const JacobiBasis b = JacobiBasis::from_params(p);
    const QuadRule q = gauss_legendre(600, -1.0, 1.0);
    double trace = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k)
        trace += q.weights[k] * b.cd_kernel(q.nodes[k], q.nodes[k]);
    CHECK(trace == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("kernel reproduces itself under integration") {
    const ModelParams p{9, 3, 4, 1.0};
    const JacobiBasis b = JacobiBasis::from_params(p);
    const QuadRule q = gauss_legendre(400, -1.0, 1.0);
    for (const auto& [z, z2] : std::vector<std::pair<double, double>>{{0.1, 0.5}, {-0.3, 0.2}}) {
        double conv = 0.0;
        for (std::size_t k = 0; k < q.nodes.size(); ++k)
            conv += q.weights[k] * b.cd_kernel(z, q.nodes[k]) * b.cd_kernel(q.nodes[k], z2);
        CHECK(conv == doctest::Approx(b.cd_kernel(z, z2)).epsilon(1e-10));
    }
}

TEST_CASE("gap probability endpoints") {
    const ModelParams p{12, 3, 6, 1.0};
    const JacobiBasis b = JacobiBasis::from_params(p);
    CHECK(b.gap_probability(0.2, 0.2) == 1.0);
    CHECK(std::fabs(b.gap_probability(-1.0, 1.0)) < 1e-8);
    CHECK_THROWS(b.gap_probability(0.5, 0.2));
}

TEST_CASE("uniform single particle gap probability") {
    const JacobiBasis b = JacobiBasis::from_params({1, 1, 1, 1.0});
    CHECK(b.gap_probability(-0.5, 0.3) == doctest::Approx(1.0 - 0.8 / 2.0).epsilon(1e-10));
}

TEST_CASE("gap probability shrinks as the interval grows") {
    const ModelParams p{12, 3, 6, 1.0};
    const JacobiBasis b = JacobiBasis::from_params(p);
    double prev = 1.0;
    for (double w : {0.1, 0.2, 0.4, 0.8, 1.2}) {
        const double g = b.gap_probability(-0.5 * w, 0.5 * w);
        CHECK(g <= prev + 1e-12);
        prev = g;
    }
}

TEST_CASE("Krawtchouk basis is orthonormal under the exact finite sum") {
    const KrawtchoukBasis kb(7, 0.35, 3);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            double s = 0.0;
            for (int y = 0; y <= 7; ++y) s += kb.phi(i, y) * kb.phi(j, y);
            if (i == j)
                CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
            else
                CHECK(std::fabs(s) < 1e-12);
        }
}

TEST_CASE("discrete kernel reproduces the position-law one-point marginal") {
    const ModelParams p{3, 2, 1, 1.0};
    const double t = 0.41;
    const KrawtchoukBasis kb = KrawtchoukBasis::from_params(p, t);
    const Matrix k = kb.kernel_matrix();
    double trace = 0.0;
    for (int y = 0; y < kb.support_size(); ++y) trace += k(y, y);
    CHECK(trace == doctest::Approx(2.0).epsilon(1e-10));

    // exhaustive marginal: sum of pmf over configs containing shifted y
    for (int y = 0; y < kb.support_size(); ++y) {
        double marginal = 0.0;
        for (const auto& c : enumerate_position_configs(p)) {
            const auto sh = c.shifted();
            if (std::find(sh.begin(), sh.end(), y) != sh.end())
                marginal += position_pmf(p, t, c);
        }
        CHECK(marginal == doctest::Approx(k(y, y)).epsilon(1e-10));
    }
}
