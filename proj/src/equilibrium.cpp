#include "pbridge/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "pbridge/quadrature.hpp"

namespace pbridge {

namespace {

const double kPi = std::acos(-1.0);

void check_domain_pair(double nu, double eta) {
    if (!(nu > 0.0 && eta > 0.0 && nu + eta < 1.0))
        throw std::invalid_argument("equilibrium: need 0 < nu, eta and nu + eta < 1");
}

double edge_u(double a, double b) { return std::sqrt((1.0 + a) * (1.0 + b)); }
double edge_v(double a, double b) { return std::sqrt((1.0 - a) * (1.0 - b)); }

// Bare edge density (before the 1/nu normalization); integrates to nu.
double psi_bare(double nu, double eta, double a, double b, double x) {
    (void)nu;
    if (x <= a || x >= b) return 0.0;
    return eta * std::sqrt((x - a) * (b - x)) / (kPi * edge_u(a, b) * (1.0 - x * x));
}

// int_a^b bare psi via x = a + (b-a) sin^2(theta).
double bare_mass(double nu, double eta, double a, double b) {
    const QuadRule q = gauss_legendre(200, 0.0, 0.5 * kPi);
    const double w = b - a;
    double s = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        const double th = q.nodes[k];
        const double sn = std::sin(th), cs = std::cos(th);
        const double x = a + w * sn * sn;
        s += q.weights[k] * eta * w * w * 2.0 * sn * sn * cs * cs /
             (kPi * edge_u(a, b) * (1.0 - x * x));
        (void)nu;
    }
    return s;
}

}  // namespace

EquilibriumData solve_endpoints(double nu, double eta) {
    check_domain_pair(nu, eta);
    // closed-form seed implied by the printed endpoint relations
    const double u = 2.0 * eta / (1.0 + nu);
    const double v = 2.0 * (1.0 - eta - nu) / (1.0 + nu);
    const double s = 0.5 * (u * u - v * v);
    const double p = 0.5 * (u * u + v * v) - 1.0;
    const double disc = s * s - 4.0 * p;
    if (disc <= 0.0) throw std::domain_error("solve_endpoints: no real endpoints");
    double a = 0.5 * (s - std::sqrt(disc));
    double b = 0.5 * (s + std::sqrt(disc));

    // Newton polish on (mass - nu, edge relation); the seed is already a root
    // up to rounding, so a couple of steps reach machine precision.
    auto f1 = [&](double aa, double bb) { return bare_mass(nu, eta, aa, bb) - nu; };
    auto f2 = [&](double aa, double bb) {
        return eta * edge_v(aa, bb) - (1.0 - eta - nu) * edge_u(aa, bb);
    };
    for (int it = 0; it < 8; ++it) {
        const double g1 = f1(a, b), g2 = f2(a, b);
        if (std::fabs(g1) < 1e-14 && std::fabs(g2) < 1e-14) break;
        const double h = 1e-7;
        const double j11 = (f1(a + h, b) - g1) / h, j12 = (f1(a, b + h) - g1) / h;
        const double j21 = (f2(a + h, b) - g2) / h, j22 = (f2(a, b + h) - g2) / h;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        a -= (g1 * j22 - g2 * j12) / det;
        b -= (g2 * j11 - g1 * j21) / det;
    }
    if (!(a > -1.0 && a < b && b < 1.0))
        throw std::domain_error("solve_endpoints: no admissible root in (-1,1)^2");
    return {nu, eta, a, b};
}

double density_psi(const EquilibriumData& eq, double x) {
    if (!(x > -1.0 && x < 1.0)) {
        if (x == eq.a || x == eq.b) return 0.0;
        throw std::domain_error("density_psi: |x| >= 1");
    }
    return psi_bare(eq.nu, eq.eta, eq.a, eq.b, x) / eq.nu;
}

double psi_cdf(const EquilibriumData& eq, double x) {
    if (x <= eq.a) return 0.0;
    if (x >= eq.b) return 1.0;
    const double w = eq.b - eq.a;
    const double th_x = std::asin(std::sqrt((x - eq.a) / w));
    const QuadRule q = gauss_legendre(200, 0.0, th_x);
    double sum = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        const double th = q.nodes[k];
        const double sn = std::sin(th), cs = std::cos(th);
        const double xx = eq.a + w * sn * sn;
        sum += q.weights[k] * eq.eta * w * w * 2.0 * sn * sn * cs * cs /
               (kPi * edge_u(eq.a, eq.b) * (1.0 - xx * xx));
    }
    return sum / eq.nu;
}

std::vector<double> unfold(const std::vector<double>& points, UnfoldMode mode,
                           const JacobiBasis& basis, const EquilibriumData& eq) {
    const int n = basis.size();
    std::vector<double> out;
    out.reserve(points.size());
    if (mode == UnfoldMode::Equilibrium) {
        for (double y : points) out.push_back(n * psi_cdf(eq, y));
        return out;
    }
    // exact finite-n: cumulative integral of K(y,y), advanced point to point
    double acc = 0.0;
    double prev = -1.0;
    const double step = 2.0 / (4.0 * n);
    for (double y : points) {
        if (y < prev) throw std::invalid_argument("unfold: points must be sorted");
        const double width = y - prev;
        const int chunks = std::max(1, static_cast<int>(std::ceil(width / step)));
        for (int c = 0; c < chunks; ++c) {
            const double lo = prev + width * c / chunks;
            const double hi = prev + width * (c + 1) / chunks;
            const QuadRule q = gauss_legendre(12, lo, hi);
            for (std::size_t k = 0; k < q.nodes.size(); ++k)
                acc += q.weights[k] * basis.kernel_diag(q.nodes[k]);
        }
        prev = y;
        out.push_back(acc);
    }
    return out;
}

}  // namespace pbridge
