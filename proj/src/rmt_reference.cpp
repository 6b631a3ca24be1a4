#include "pbridge/rmt_reference.hpp"

#include <cmath>
#include <stdexcept>

#include "pbridge/linalg.hpp"

namespace pbridge {

namespace {
const double kPi = std::acos(-1.0);
}

double sine_kernel(double xi, double rho) {
    const double d = xi - rho;
    if (d == 0.0) return 1.0;
    return std::sin(kPi * d) / (kPi * d);
}

double fredholm_det_sine_interval(double c, double d, std::size_t m) {
    if (!(d >= c)) throw std::invalid_argument("fredholm_det_sine: inverted interval");
    if (d == c) return 1.0;
    const QuadRule q = gauss_legendre(m, c, d);
    Matrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a(i, j) = (i == j ? 1.0 : 0.0) -
                      std::sqrt(q.weights[i] * q.weights[j]) * sine_kernel(q.nodes[i], q.nodes[j]);
    const double det = det_lu(std::move(a));
    if (!std::isfinite(det)) throw std::runtime_error("fredholm_det_sine: non-finite determinant");
    return det;
}

double fredholm_det_sine(double s, std::size_t m) {
    if (s < 0.0) throw std::invalid_argument("fredholm_det_sine: s >= 0 required");
    if (s == 0.0) return 1.0;
    return fredholm_det_sine_interval(-0.5 * s, 0.5 * s, m);
}

namespace {

double gap_det_0s(double s, std::size_t m) {
    if (s <= 0.0) return 1.0;
    return fredholm_det_sine_interval(0.0, s, m);
}

// central second difference at step h
double second_diff(double s, double h, std::size_t m) {
    return (gap_det_0s(s + h, m) - 2.0 * gap_det_0s(s, m) + gap_det_0s(s - h, m)) / (h * h);
}

}  // namespace

double gaudin_density(double s, std::size_t m) {
    if (!(s > 0.0)) return 0.0;
    const double h = 1e-3;
    if (s <= 2.0 * h) return 0.0;  // quadratically flat at the origin anyway
    const double d1 = second_diff(s, h, m);
    const double d2 = second_diff(s, 2.0 * h, m);
    const double val = (4.0 * d1 - d2) / 3.0;  // one Richardson step
    if (!std::isfinite(val)) throw std::runtime_error("gaudin_density: differencing failed");
    return std::max(val, 0.0);
}

double gaudin_cdf(double s, std::size_t m) {
    if (s <= 0.0) return 0.0;
    const double h = 1e-4;
    const double deriv = (gap_det_0s(s + h, m) - gap_det_0s(s - h, m)) / (2.0 * h);
    return std::min(std::max(1.0 + deriv, 0.0), 1.0);
}

double wigner_surmise(double s) {
    if (s < 0.0) return 0.0;
    return 32.0 / (kPi * kPi) * s * s * std::exp(-4.0 * s * s / kPi);
}

double wigner_surmise_cdf(double s) {
    if (s <= 0.0) return 0.0;
    // int_0^s p = erf(2s/sqrt(pi)) - (4s/pi) exp(-4s^2/pi)
    const double z = 2.0 * s / std::sqrt(kPi);
    return std::erf(z) - (4.0 * s / kPi) * std::exp(-4.0 * s * s / kPi);
}

double gue_number_variance(double s, std::size_t m) {
    if (s < 0.0) throw std::invalid_argument("gue_number_variance: s >= 0 required");
    if (s == 0.0) return 0.0;
    const QuadRule q = gauss_legendre(m, 0.0, s);
    double kk = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double k = sine_kernel(q.nodes[i], q.nodes[j]);
            kk += q.weights[i] * q.weights[j] * k * k;
        }
    return s - kk;
}

double gue_number_variance_asymptote(double s) {
    return (std::log(2.0 * kPi * s) + kEulerGamma + 1.0) / (kPi * kPi);
}

ReferenceCurve tabulate_reference(const std::string& method, const std::vector<double>& grid) {
    ReferenceCurve c;
    c.abscissa = grid;
    c.method = method;
    c.value.reserve(grid.size());
    for (double s : grid) {
        double v;
        if (method == "gaudin")
            v = gaudin_density(s);
        else if (method == "gaudin-cdf")
            v = gaudin_cdf(s);
        else if (method == "surmise")
            v = wigner_surmise(s);
        else if (method == "gap")
            v = fredholm_det_sine(s);
        else if (method == "variance")
            v = gue_number_variance(s);
        else if (method == "variance-asymptotic")
            v = gue_number_variance_asymptote(s);
        else
            throw std::invalid_argument("tabulate_reference: unknown method " + method);
        c.value.push_back(v);
    }
    return c;
}

}  // namespace pbridge
