#include "pbridge/orthopoly.hpp"

#include <cmath>
#include <stdexcept>

#include "pbridge/quadrature.hpp"

namespace pbridge {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

JacobiBasis::JacobiBasis(double alpha, double beta, int n) : alpha_(alpha), beta_(beta), n_(n) {
    if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("JacobiBasis: negative exponent");
    if (n < 1) throw std::invalid_argument("JacobiBasis: n >= 1 required");
    log_h0_ = (alpha + beta + 1.0) * kLn2 + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
              std::lgamma(alpha + beta + 2.0);
    a_.resize(n + 1);
    sqrt_b_.resize(n + 2, 0.0);
    const double s = alpha + beta;
    a_[0] = (beta - alpha) / (s + 2.0);
    for (int k = 1; k <= n; ++k)
        a_[k] = (beta * beta - alpha * alpha) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
    for (int k = 1; k <= n + 1; ++k) {
        double bk;
        if (k == 1)
            bk = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
        else
            bk = 4.0 * k * (k + alpha) * (k + beta) * (k + s) /
                 ((2.0 * k + s) * (2.0 * k + s) * (2.0 * k + s + 1.0) * (2.0 * k + s - 1.0));
        sqrt_b_[k] = std::sqrt(bk);
    }
    l_n_ = sqrt_b_[n];
}

JacobiBasis JacobiBasis::from_params(const ModelParams& p) {
    p.validate();
    return JacobiBasis(double(p.N - (p.n + p.x - 1)), double(p.x - 1), p.n);
}

void JacobiBasis::check_domain(double y) const {
    if (!(y >= -1.0 && y <= 1.0)) throw std::domain_error("JacobiBasis: y outside [-1,1]");
}

std::vector<double> JacobiBasis::phi_all(double y, int m) const {
    check_domain(y);
    if (m > n_) throw std::invalid_argument("JacobiBasis: degree beyond basis size");
    std::vector<double> q(m + 1, 0.0);
    double log_q0 = -0.5 * log_h0_;
    if (alpha_ > 0.0) {
        if (y == 1.0) return q;
        log_q0 += 0.5 * alpha_ * std::log1p(-y);
    }
    if (beta_ > 0.0) {
        if (y == -1.0) return q;
        log_q0 += 0.5 * beta_ * std::log1p(y);
    }
    q[0] = std::exp(log_q0);
    if (m >= 1) q[1] = (y - a_[0]) * q[0] / sqrt_b_[1];
    for (int k = 1; k < m; ++k)
        q[k + 1] = ((y - a_[k]) * q[k] - sqrt_b_[k] * q[k - 1]) / sqrt_b_[k + 1];
    return q;
}

double JacobiBasis::phi(int j, double y) const {
    if (j < 0 || j > n_) throw std::invalid_argument("JacobiBasis: bad degree");
    return phi_all(y, j)[j];
}

void JacobiBasis::top_pair_with_deriv(double y, double& qm, double& qn, double& dqm,
                                      double& dqn) const {
    check_domain(y);
    if ((alpha_ > 0.0 && y == 1.0) || (beta_ > 0.0 && y == -1.0)) {
        qm = qn = dqm = dqn = 0.0;
        return;
    }
    double log_q0 = -0.5 * log_h0_;
    if (alpha_ > 0.0) log_q0 += 0.5 * alpha_ * std::log1p(-y);
    if (beta_ > 0.0) log_q0 += 0.5 * beta_ * std::log1p(y);
    double q0 = std::exp(log_q0);
    double d0 = q0 * 0.5 * (-alpha_ / (1.0 - y) + beta_ / (1.0 + y));
    double qprev = q0, dprev = d0;
    double qcur = (y - a_[0]) * q0 / sqrt_b_[1];
    double dcur = (q0 + (y - a_[0]) * d0) / sqrt_b_[1];
    for (int k = 1; k < n_; ++k) {
        const double qnext = ((y - a_[k]) * qcur - sqrt_b_[k] * qprev) / sqrt_b_[k + 1];
        const double dnext = (qcur + (y - a_[k]) * dcur - sqrt_b_[k] * dprev) / sqrt_b_[k + 1];
        qprev = qcur;
        dprev = dcur;
        qcur = qnext;
        dcur = dnext;
    }
    qm = qprev;
    qn = qcur;
    dqm = dprev;
    dqn = dcur;
}

double JacobiBasis::cd_kernel(double z, double z2) const {
    check_domain(z);
    check_domain(z2);
    if (z == z2) {
        double qm, qn, dqm, dqn;
        top_pair_with_deriv(z, qm, qn, dqm, dqn);
        return l_n_ * (dqn * qm - dqm * qn);
    }
    const auto pz = phi_all(z, n_);
    const auto pz2 = phi_all(z2, n_);
    return l_n_ * (pz[n_] * pz2[n_ - 1] - pz2[n_] * pz[n_ - 1]) / (z - z2);
}

double JacobiBasis::kernel_diag(double y) const {
    const auto p = phi_all(y, n_ - 1);
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += p[j] * p[j];
    return s;
}

double JacobiBasis::gap_probability(double c, double d) const {
    if (!(c >= -1.0 && d <= 1.0 && c <= d))
        throw std::invalid_argument("gap_probability: need -1 <= c <= d <= 1");
    if (c == d) return 1.0;
    const std::size_t m = static_cast<std::size_t>(4 * n_ + 50);
    const QuadRule q = gauss_legendre(m, c, d);
    Matrix g(n_, n_);
    for (std::size_t k = 0; k < m; ++k) {
        const auto p = phi_all(q.nodes[k], n_ - 1);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) g(i, j) += q.weights[k] * p[i] * p[j];
    }
    Matrix img(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) img(i, j) = (i == j ? 1.0 : 0.0) - g(i, j);
    return det_lu(std::move(img));
}

KrawtchoukBasis::KrawtchoukBasis(int K, double p, int n) : K_(K), n_(n), p_(p) {
    if (K < 1 || n < 1 || n > K + 1) throw std::invalid_argument("KrawtchoukBasis: bad sizes");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("KrawtchoukBasis: p in (0,1)");
    log_w_.resize(K + 1);
    for (int y = 0; y <= K; ++y)
        log_w_[y] = log_binomial(K, y) + y * std::log(p) + (K - y) * std::log1p(-p);
    a_.resize(n + 1);
    sqrt_b_.resize(n + 2, 0.0);
    for (int k = 0; k <= n; ++k) a_[k] = p * (K - k) + k * (1.0 - p);
    for (int k = 1; k <= n + 1; ++k) sqrt_b_[k] = std::sqrt(k * p * (1.0 - p) * (K - k + 1.0));
}

KrawtchoukBasis KrawtchoukBasis::from_params(const ModelParams& params, double t) {
    params.validate();
    if (!(t > 0.0 && t < params.T)) throw std::invalid_argument("KrawtchoukBasis: 0 < t < T");
    return KrawtchoukBasis(params.N + params.n - 1, t / params.T, params.n);
}

std::vector<double> KrawtchoukBasis::phi_all(int y, int m) const {
    if (y < 0 || y > K_) throw std::domain_error("KrawtchoukBasis: y outside {0..K}");
    if (m > n_) throw std::invalid_argument("KrawtchoukBasis: degree beyond basis size");
    std::vector<double> q(m + 1, 0.0);
    q[0] = std::exp(0.5 * log_w_[y]);
    if (m >= 1) q[1] = (y - a_[0]) * q[0] / sqrt_b_[1];
    for (int k = 1; k < m; ++k)
        q[k + 1] = ((y - a_[k]) * q[k] - sqrt_b_[k] * q[k - 1]) / sqrt_b_[k + 1];
    return q;
}

double KrawtchoukBasis::phi(int j, int y) const {
    if (j < 0 || j > n_) throw std::invalid_argument("KrawtchoukBasis: bad degree");
    return phi_all(y, j)[j];
}

Matrix KrawtchoukBasis::feature_matrix() const {
    Matrix f(K_ + 1, n_);
    for (int y = 0; y <= K_; ++y) {
        const auto p = phi_all(y, n_ - 1);
        for (int j = 0; j < n_; ++j) f(y, j) = p[j];
    }
    return f;
}

Matrix KrawtchoukBasis::kernel_matrix() const {
    const Matrix f = feature_matrix();
    Matrix k(K_ + 1, K_ + 1);
    for (int y = 0; y <= K_; ++y)
        for (int y2 = 0; y2 <= K_; ++y2) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += f(y, j) * f(y2, j);
            k(y, y2) = s;
        }
    return k;
}

}  // namespace pbridge
