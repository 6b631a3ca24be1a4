#pragma once

#include <cstddef>
#include <vector>

#include "pbridge/linalg.hpp"
#include "pbridge/model_line.hpp"

namespace pbridge {

// Orthonormal functions phi_j(y) = p_j(y) w^{1/2}(y) for the Jacobi weight
// w(y) = (1-y)^alpha (1+y)^beta on [-1,1], evaluated through the three-term
// recurrence of the monic polynomials. alpha = N-(n+x-1), beta = x-1 are the
// exponents induced by the line model.
class JacobiBasis {
  public:
    JacobiBasis(double alpha, double beta, int n);

    static JacobiBasis from_params(const ModelParams& p);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    int size() const { return n_; }
    double cd_constant() const { return l_n_; }

    // phi_j(y), 0 <= j <= size(). |y| > 1 is a domain error.
    double phi(int j, double y) const;

    // phi_0..phi_m at y in one recurrence pass.
    std::vector<double> phi_all(double y, int m) const;

    // Christoffel-Darboux kernel l_n (phi_n(z)phi_{n-1}(z2) - phi_n(z2)phi_{n-1}(z))/(z-z2),
    // with the analytic confluent limit at z == z2.
    double cd_kernel(double z, double z2) const;

    // One-point function K(y,y) = sum_{j<n} phi_j(y)^2.
    double kernel_diag(double y) const;

    // det(I - G), G_jk = int_c^d phi_j phi_k, the exact finite-n probability
    // that no point lies in (c,d).
    double gap_probability(double c, double d) const;

  private:
    void check_domain(double y) const;
    // (phi_{n-1}, phi_n, phi'_{n-1}, phi'_n) jointly.
    void top_pair_with_deriv(double y, double& qm, double& qn, double& dqm, double& dqn) const;

    double alpha_, beta_;
    int n_;
    double log_h0_;               // log int w
    std::vector<double> a_;       // monic recurrence alpha_k, k = 0..n
    std::vector<double> sqrt_b_;  // sqrt(beta_k), k = 0..n+1 (index 0 unused)
    double l_n_;
};

// Orthonormal Krawtchouk functions on {0,...,K} for the binomial weight
// w(y) = C(K,y) p^y (1-p)^{K-y}. Inner products are exact finite sums.
class KrawtchoukBasis {
  public:
    KrawtchoukBasis(int K, double p, int n);

    static KrawtchoukBasis from_params(const ModelParams& params, double t);

    int support_size() const { return K_ + 1; }
    int size() const { return n_; }

    double phi(int j, int y) const;
    std::vector<double> phi_all(int y, int m) const;

    // (K+1) x n feature matrix, row y = (phi_0(y), ..., phi_{n-1}(y)).
    Matrix feature_matrix() const;

    // Projection kernel K(y,y') = sum_{j<n} phi_j(y) phi_j(y').
    Matrix kernel_matrix() const;

  private:
    int K_, n_;
    double p_;
    std::vector<double> log_w_;   // log weight per site
    std::vector<double> a_;       // monic recurrence alpha_k
    std::vector<double> sqrt_b_;  // sqrt(beta_k)
};

}  // namespace pbridge
