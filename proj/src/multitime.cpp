#include "pbridge/multitime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pbridge/linalg.hpp"

namespace pbridge {

namespace {
const double kPi = std::acos(-1.0);
using cplx = std::complex<double>;
}  // namespace

std::vector<double> TimeGrid::fractions(const ModelParams& params) const {
    std::vector<double> p(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) p[j] = times[j] / params.T;
    return p;
}

void TimeGrid::validate(const ModelParams& params) const {
    if (times.empty()) throw std::invalid_argument("TimeGrid: at least one time");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev) || !(t < params.T))
            throw std::invalid_argument("TimeGrid: need 0 < t_1 < ... < t_k < T");
        prev = t;
    }
}

double transition_block(double p_gap, int x, int y) {
    if (!(p_gap > 0.0 && p_gap < 1.0))
        throw std::invalid_argument("transition_block: p_gap in (0,1)");
    if (y < x) return 0.0;
    return std::exp((y - x) * std::log(p_gap) - log_factorial(y - x));
}

LogValue multitime_weight(const ModelParams& params, const TimeGrid& grid,
                          const std::vector<PositionConfig>& configs) {
    params.validate();
    grid.validate(params);
    if (configs.size() != grid.times.size())
        throw std::invalid_argument("multitime_weight: one config per time");
    const int n = params.n;
    const int K = params.N + n - 1;
    const auto p = grid.fractions(params);
    const std::size_t k = configs.size();
    for (const auto& c : configs) c.validate(params);

    const auto y_first = configs.front().shifted();
    const auto y_last = configs.back().shifted();
    for (const auto& c : configs)
        for (int y : c.shifted())
            if (y < 0 || y > K) return LogValue::zero();

    double lg = 0.0;
    // first-time Vandermonde (decreasing configs make it positive) and weight
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lg += std::log(double(y_first[i] - y_first[j]));
    for (int y : y_first) lg += y * std::log(p[0]) - log_factorial(y);
    // last-time Vandermonde and weight
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lg += std::log(double(y_last[i] - y_last[j]));
    for (int y : y_last) lg += (K - y) * std::log1p(-p[k - 1]) - log_factorial(K - y);

    LogValue out = LogValue::from_log(lg);
    for (std::size_t step = 0; step + 1 < k; ++step) {
        const auto ya = configs[step].shifted();
        const auto yb = configs[step + 1].shifted();
        const double gap = p[step + 1] - p[step];
        std::vector<std::vector<LogValue>> m(n, std::vector<LogValue>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int d = yb[j] - ya[i];
                m[i][j] = d < 0 ? LogValue::zero()
                                : LogValue::from_log(d * std::log(gap) - log_factorial(d));
            }
        out = out * log_det_lu(m);
        if (out.sign == 0) return out;
    }
    return out;
}

ContourSpec default_contour(double p_i, double p_j) {
    const double c = p_i / (1.0 - p_i);
    ContourSpec spec;
    if (p_i >= p_j) {
        spec.s_center = 0.5 * c;
        spec.s_radius = 0.5 * c + 0.5;
        spec.t_center = 0.0;
        spec.t_radius = 0.25;
    } else {
        spec.s_center = c;
        spec.s_radius = 0.25 * (c + 1.0);
        spec.t_center = 0.0;
        spec.t_radius = c + spec.s_radius + 0.5;
    }
    return spec;
}

KernelValue extended_kernel(const ModelParams& params, double p_i, double p_j, int x, int y,
                            const ContourSpec& contour) {
    params.validate();
    if (!(p_i > 0.0 && p_i < 1.0 && p_j > 0.0 && p_j < 1.0))
        throw std::invalid_argument("extended_kernel: fractions in (0,1)");
    const int n = params.n;
    const int K = params.N + n - 1;
    if (x < 0 || x > K || y < 0 || y > K)
        throw std::invalid_argument("extended_kernel: coordinates outside {0..K}");

    const double pole_s = p_i / (1.0 - p_i);
    if (std::fabs(pole_s - contour.s_center) >= contour.s_radius)
        throw std::invalid_argument("extended_kernel: s-contour misses its pole");
    if (std::fabs(-1.0 - contour.s_center) <= contour.s_radius)
        throw std::invalid_argument("extended_kernel: s-contour may not contain -1");
    if (std::fabs(contour.t_center) >= contour.t_radius)
        throw std::invalid_argument("extended_kernel: t-contour misses 0");
    if (p_i >= p_j) {
        if (std::fabs(contour.t_center - contour.s_center) + contour.t_radius >= contour.s_radius)
            throw std::invalid_argument("extended_kernel: t-contour must lie inside s-contour");
    } else {
        if (std::fabs(contour.s_center - contour.t_center) + contour.s_radius >= contour.t_radius)
            throw std::invalid_argument("extended_kernel: s-contour must lie inside t-contour");
    }

    const std::size_t m = contour.samples;
    std::vector<cplx> s_pt(m), t_pt(m), s_off(m), t_off(m);
    for (std::size_t a = 0; a < m; ++a) {
        const double th = 2.0 * kPi * a / m;
        s_off[a] = contour.s_radius * cplx(std::cos(th), std::sin(th));
        t_off[a] = contour.t_radius * cplx(std::cos(th), std::sin(th));
        s_pt[a] = contour.s_center + s_off[a];
        t_pt[a] = contour.t_center + t_off[a];
    }

    // log of the integrand split per variable; all exponents are integers so
    // branch choice is immaterial under exp
    std::vector<cplx> t_log(m), s_log(m);
    for (std::size_t a = 0; a < m; ++a) {
        const cplx t = t_pt[a];
        t_log[a] = double(y) * std::log(p_j - (1.0 - p_j) * t) +
                   double(K - y) * std::log(1.0 + t) - double(n) * std::log(t);
        const cplx s = s_pt[a];
        s_log[a] = double(x + 1) * std::log(p_i - (1.0 - p_i) * s) +
                   double(params.N + n - x) * std::log(1.0 + s) - double(n) * std::log(s);
    }
    double max_re = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            max_re = std::max(max_re, (t_log[b] - s_log[a]).real());

    cplx acc(0.0, 0.0);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            const cplx f = std::exp(t_log[b] - s_log[a] - max_re) / (t_pt[b] - s_pt[a]);
            acc += f * s_off[a] * t_off[b];
        }
    acc *= std::exp(max_re) / double(m * m);
    return {acc.real(), acc.imag()};
}

KernelValue extended_kernel(const ModelParams& params, double p_i, double p_j, int x, int y) {
    return extended_kernel(params, p_i, p_j, x, y, default_contour(p_i, p_j));
}

}  // namespace pbridge
