#pragma once

#include <cstddef>
#include <vector>

namespace pbridge {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1,1], nodes by Newton iteration on P_m.
QuadRule gauss_legendre(std::size_t m);

// Same rule mapped affinely to [a,b].
QuadRule gauss_legendre(std::size_t m, double a, double b);

}  // namespace pbridge
