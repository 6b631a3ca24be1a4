#pragma once

#include <vector>

#include "pbridge/orthopoly.hpp"

namespace pbridge {

// Limiting macroscopic density of the arrival ensemble on [-1,1].
// nu = lim n/N, eta = lim (x-1)/N; support is [a,b] strictly inside (-1,1).
struct EquilibriumData {
    double nu = 0.0;
    double eta = 0.0;
    double a = 0.0;
    double b = 0.0;
};

// Support endpoints for given (nu, eta). Solved as a 2D root search on
// (mass, edge-relation) conditions, seeded by the closed form implied by the
// endpoint relations; throws if no admissible root exists in (-1,1)^2.
EquilibriumData solve_endpoints(double nu, double eta);

// Unit-mass density psi. The bare edge formula integrates to nu over [a,b];
// the value returned here is rescaled by 1/nu so that int psi = 1, which is
// the normalization the unfolding map needs. Returns 0 outside [a,b];
// |x| >= 1 is a domain error.
double density_psi(const EquilibriumData& eq, double x);

// int_a^x psi, with the sin^2 substitution that removes the square-root edge
// behavior.
double psi_cdf(const EquilibriumData& eq, double x);

enum class UnfoldMode { ExactFiniteN, Equilibrium };

// u_i = n * int_{-1}^{y_i} rho(y) dy with rho either the exact one-point
// density K(y,y)/n of the finite ensemble or the equilibrium density psi.
// Input must be sorted ascending in [-1,1].
std::vector<double> unfold(const std::vector<double>& points, UnfoldMode mode,
                           const JacobiBasis& basis, const EquilibriumData& eq);

}  // namespace pbridge
