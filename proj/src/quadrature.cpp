#include "pbridge/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace pbridge {

QuadRule gauss_legendre(std::size_t m) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: m >= 1 required");
    QuadRule q;
    q.nodes.resize(m);
    q.weights.resize(m);
    const double pi = std::acos(-1.0);
    const std::size_t half = (m + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(pi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        q.nodes[i] = -z;
        q.nodes[m - 1 - i] = z;
        q.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        q.weights[m - 1 - i] = q.weights[i];
    }
    return q;
}

QuadRule gauss_legendre(std::size_t m, double a, double b) {
    QuadRule q = gauss_legendre(m);
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (std::size_t i = 0; i < m; ++i) {
        q.nodes[i] = mid + hw * q.nodes[i];
        q.weights[i] *= hw;
    }
    return q;
}

}  // namespace pbridge
