#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pbridge/quadrature.hpp"

namespace pbridge {

constexpr double kEulerGamma = 0.5772156649015329;

// sin(pi d)/(pi d) with the confluent value 1 at d = 0.
double sine_kernel(double xi, double rho);

// det(I - K_infty) on L^2 of an interval of length s, by symmetrized
// Nystrom discretization with m Gauss-Legendre nodes.
double fredholm_det_sine(double s, std::size_t m = 60);

// Same determinant on a general interval (c,d).
double fredholm_det_sine_interval(double c, double d, std::size_t m = 60);

// Exact GUE nearest-neighbor spacing density: second derivative of the gap
// determinant on (0,s), central differences with one Richardson step.
double gaudin_density(double s, std::size_t m = 60);

// Spacing CDF, 1 + d/ds det(I - K)_{L^2(0,s)}.
double gaudin_cdf(double s, std::size_t m = 60);

// (32/pi^2) s^2 exp(-4 s^2/pi); unit mass and unit mean by construction.
double wigner_surmise(double s);
double wigner_surmise_cdf(double s);

// Variance of the point count in an unfolded interval of length s,
// s - iint_{[0,s]^2} K_infty(x,y)^2 dx dy.
double gue_number_variance(double s, std::size_t m = 120);

// (1/pi^2)(log(2 pi s) + gamma + 1).
double gue_number_variance_asymptote(double s);

struct ReferenceCurve {
    std::vector<double> abscissa;
    std::vector<double> value;
    std::string method;
};

ReferenceCurve tabulate_reference(const std::string& method, const std::vector<double>& grid);

}  // namespace pbridge
