#include "pbridge/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace pbridge {

double det_lu(Matrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("det_lu: matrix not square");
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::fabs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(a(i, k)) > best) {
                best = std::fabs(a(i, k));
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

LogValue log_det_lu(const std::vector<std::vector<LogValue>>& entries) {
    const std::size_t n = entries.size();
    double log_scale = 0.0;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i].size() != n) throw std::invalid_argument("log_det_lu: ragged matrix");
        double row_max = -std::numeric_limits<double>::infinity();
        for (const auto& e : entries[i])
            if (e.sign != 0 && e.log_magnitude > row_max) row_max = e.log_magnitude;
        if (row_max == -std::numeric_limits<double>::infinity()) return LogValue::zero();
        log_scale += row_max;
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = entries[i][j];
            a(i, j) = e.sign == 0 ? 0.0 : e.sign * std::exp(e.log_magnitude - row_max);
        }
    }
    const double d = det_lu(std::move(a));
    if (d == 0.0) return LogValue::zero();
    return LogValue::from_log(log_scale + std::log(std::fabs(d)), d > 0 ? 1 : -1);
}

}  // namespace pbridge
