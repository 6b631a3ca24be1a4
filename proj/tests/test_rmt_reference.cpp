#include <cmath>

#include "doctest.h"
#include "pbridge/rmt_reference.hpp"

using namespace pbridge;

TEST_CASE("sine kernel basics") {
    CHECK(sine_kernel(0.3, 0.3) == 1.0);
    CHECK(sine_kernel(0.0, 0.5) == doctest::Approx(std::sin(0.5 * M_PI) / (0.5 * M_PI)));
    CHECK(sine_kernel(1.0, 2.0) == doctest::Approx(0.0));  // integer separation
    CHECK(sine_kernel(0.1, 0.7) == doctest::Approx(sine_kernel(0.7, 0.1)));
}

TEST_CASE("gap determinant endpoints and monotonicity") {
    CHECK(fredholm_det_sine(0.0) == doctest::Approx(1.0));
    double prev = 1.0;
    for (double s = 0.25; s <= 3.0; s += 0.25) {
        const double d = fredholm_det_sine(s);
        CHECK(d > 0.0);
        CHECK(d < prev);
        prev = d;
    }
    // translation invariance: only the length matters
    CHECK(fredholm_det_sine_interval(0.0, 1.3) ==
          doctest::Approx(fredholm_det_sine_interval(-0.65, 0.65)).epsilon(1e-12));
    CHECK(fredholm_det_sine(1.0) == doctest::Approx(fredholm_det_sine_interval(0.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("Nystrom rank is converged: m = 40 vs m = 80") {
    for (double s = 0.25; s <= 3.01; s += 0.25)
        CHECK(std::fabs(fredholm_det_sine(s, 40) - fredholm_det_sine(s, 80)) < 1e-10);
}

TEST_CASE("small-gap expansion: E(s) = 1 - s + O(s^4)") {
    for (double s : {0.01, 0.02, 0.05})
        CHECK(fredholm_det_sine(s) == doctest::Approx(1.0 - s).epsilon(1e-5));
}

TEST_CASE("spacing density has unit mass and unit mean") {
    const int m = 3000;
    const double h = 6.0 / m;
    double mass = 0.0, mean = 0.0;
    for (int i = 0; i < m; ++i) {
        const double s = (i + 0.5) * h;
        const double p = gaudin_density(s);
        CHECK(p >= -1e-9);
        mass += p * h;
        mean += s * p * h;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("spacing cdf matches the integrated density") {
    for (double s : {0.5, 1.0, 2.0}) {
        const int m = 2000;
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += gaudin_density(s * (i + 0.5) / m) * s / m;
        CHECK(gaudin_cdf(s) == doctest::Approx(acc).epsilon(2e-4));
    }
    CHECK(gaudin_cdf(0.0) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(gaudin_cdf(6.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("surmise closed forms") {
    for (double s : {0.2, 0.7, 1.5}) {
        CHECK(wigner_surmise(s) ==
              doctest::Approx(32.0 / (M_PI * M_PI) * s * s * std::exp(-4.0 * s * s / M_PI)));
        // derivative of the cdf matches the density
        const double h = 1e-6;
        const double d = (wigner_surmise_cdf(s + h) - wigner_surmise_cdf(s - h)) / (2 * h);
        CHECK(d == doctest::Approx(wigner_surmise(s)).epsilon(1e-7));
    }
    CHECK(wigner_surmise_cdf(0.0) == doctest::Approx(0.0));
    CHECK(wigner_surmise_cdf(10.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("surmise tracks the exact spacing law to the known accuracy") {
    double sup = 0.0;
    for (double s = 0.0; s <= 3.0; s += 0.05)
        sup = std::max(sup, std::fabs(gaudin_density(s) - wigner_surmise(s)));
    CHECK(sup <= 0.02);
    CHECK(sup > 0.001);  // but they are genuinely different laws
}

TEST_CASE("number variance: small-s limit and asymptote") {
    // for s -> 0 counts are Bernoulli: variance ~ s - s^2
    for (double s : {0.01, 0.05})
        CHECK(gue_number_variance(s) == doctest::Approx(s - s * s).epsilon(1e-3));
    for (double s : {5.0, 7.5, 10.0})
        CHECK(gue_number_variance(s) ==
              doctest::Approx(gue_number_variance_asymptote(s)).epsilon(1e-2));
    CHECK(gue_number_variance_asymptote(1.0) ==
          doctest::Approx((std::log(2.0 * M_PI) + kEulerGamma + 1.0) / (M_PI * M_PI)));
}

TEST_CASE("number variance grows slowly and monotonically") {
    double prev = 0.0;
    for (double s = 0.5; s <= 4.01; s += 0.5) {
        const double v = gue_number_variance(s);
        CHECK(v > prev);
        CHECK(v < s);  // far below the Poisson value
        prev = v;
    }
}

TEST_CASE("reference tabulation dispatches all methods") {
    const std::vector<double> grid{0.5, 1.0, 1.5};
    for (const char* method :
         {"gaudin", "gaudin-cdf", "surmise", "gap", "variance", "variance-asymptotic"}) {
        const ReferenceCurve c = tabulate_reference(method, grid);
        CHECK(c.method == method);
        REQUIRE(c.value.size() == grid.size());
        CHECK(c.abscissa == grid);
    }
    CHECK(tabulate_reference("gap", grid).value[0] == doctest::Approx(fredholm_det_sine(0.5)));
    CHECK(tabulate_reference("surmise", grid).value[1] == doctest::Approx(wigner_surmise(1.0)));
    CHECK_THROWS(tabulate_reference("bogus", grid));
}
