#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pbridge/model_line.hpp"

namespace pbridge {

// k observation times 0 < t_1 < ... < t_k < T with fractions p_j = t_j/T.
struct TimeGrid {
    std::vector<double> times;

    std::vector<double> fractions(const ModelParams& params) const;
    void validate(const ModelParams& params) const;
};

// Circles for the double contour integral. The s-circle must enclose
// p_i/(1-p_i) and exclude -1; the t-circle must enclose 0; for p_i >= p_j the
// s-circle contains the t-circle, otherwise it lies inside it.
struct ContourSpec {
    double s_center = 0.0;
    double s_radius = 1.0;
    double t_center = 0.0;
    double t_radius = 0.5;
    std::size_t samples = 512;
};

// Default circles respecting the nesting rule for the (p_i, p_j) pair.
ContourSpec default_contour(double p_i, double p_j);

// Poisson increment weight V_p(x,y) = p^{y-x}/(y-x)!, zero for y < x.
double transition_block(double p_gap, int x, int y);

// Unnormalized multitime weight: Vandermonde and Poisson weight at the first
// time, transition determinants between consecutive times, Vandermonde and
// binomial-tail weight at the last time. Configurations are in the shifted
// coordinates y = x + n - 1 in {0..N+n-1}.
LogValue multitime_weight(const ModelParams& params, const TimeGrid& grid,
                          const std::vector<PositionConfig>& configs);

// Extended kernel K_{t_i,t_j}(x,y) by trapezoidal quadrature on the circles.
// x, y are shifted coordinates. The imaginary residue is returned separately
// as a quadrature diagnostic.
struct KernelValue {
    double value = 0.0;
    double imag_residual = 0.0;
};
KernelValue extended_kernel(const ModelParams& params, double p_i, double p_j, int x, int y,
                            const ContourSpec& contour);

KernelValue extended_kernel(const ModelParams& params, double p_i, double p_j, int x, int y);

}  // namespace pbridge
