#include "pbridge/model_line.hpp"

#include <cmath>
#include <stdexcept>

#include "pbridge/linalg.hpp"

namespace pbridge {

namespace {

// Weight factor v^e in log space; v == 0 with e > 0 kills the whole product.
bool add_log_power(double v, double e, double& acc) {
    if (e == 0.0) return true;
    if (v <= 0.0) return false;
    acc += e * std::log(v);
    return true;
}

void check_times_ordered(const std::vector<double>& t) {
    for (std::size_t j = 1; j < t.size(); ++j)
        if (t[j] < t[j - 1]) throw std::invalid_argument("arrival times must be non-decreasing");
}

bool has_coincidence(const std::vector<double>& t) {
    for (std::size_t j = 1; j < t.size(); ++j)
        if (t[j] == t[j - 1]) return true;
    return false;
}

double log_vandermonde(const std::vector<double>& t) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) s += std::log(t[j] - t[i]);
    return s;
}

}  // namespace

void ModelParams::validate() const {
    if (N < 1 || n < 1 || n > N) throw std::invalid_argument("ModelParams: need 1 <= n <= N");
    if (x < 1 || x > N - n + 1)
        throw std::invalid_argument("ModelParams: x outside admissible window [1, N-n+1]");
    if (!(T > 0.0)) throw std::invalid_argument("ModelParams: T must be positive");
}

void ArrivalTimes::validate(const ModelParams& p) const {
    if (static_cast<int>(times.size()) != p.n)
        throw std::invalid_argument("ArrivalTimes: need exactly n times");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev) || !(t < p.T))
            throw std::invalid_argument("ArrivalTimes: need 0 < t_1 < ... < t_n < T");
        prev = t;
    }
}

std::vector<int> PositionConfig::shifted() const {
    std::vector<int> y(positions.size());
    const int n = static_cast<int>(positions.size());
    for (int j = 0; j < n; ++j) y[j] = positions[j] + n - 1;
    return y;
}

void PositionConfig::validate(const ModelParams& p) const {
    if (static_cast<int>(positions.size()) != p.n)
        throw std::invalid_argument("PositionConfig: need exactly n positions");
    for (std::size_t j = 1; j < positions.size(); ++j)
        if (positions[j] >= positions[j - 1])
            throw std::invalid_argument("PositionConfig: positions must be strictly decreasing");
}

LogValue log_km_start_to_arrivals(const ModelParams& params, const ArrivalTimes& arrivals) {
    params.validate();
    const auto& t = arrivals.times;
    if (static_cast<int>(t.size()) != params.n)
        throw std::invalid_argument("arrival count mismatch");
    check_times_ordered(t);
    if (has_coincidence(t)) return LogValue::zero();

    double lg = 0.0;
    for (int i = 1; i <= params.n; ++i) lg -= log_factorial(params.x + i - 2);
    for (double tj : t) {
        lg -= tj;
        if (!add_log_power(tj, params.x - 1, lg)) return LogValue::zero();
    }
    lg += log_vandermonde(t);
    return LogValue::from_log(lg);
}

LogValue log_km_arrivals_to_end(const ModelParams& params, const ArrivalTimes& arrivals) {
    params.validate();
    const auto& t = arrivals.times;
    if (static_cast<int>(t.size()) != params.n)
        throw std::invalid_argument("arrival count mismatch");
    check_times_ordered(t);
    if (has_coincidence(t)) return LogValue::zero();

    const int expo = params.N - params.x + 1 - params.n;
    double lg = 0.0;
    for (int i = 1; i <= params.n; ++i) lg -= log_factorial(params.N + 1 - params.x - i);
    for (double tj : t) {
        lg -= (params.T - tj);
        if (!add_log_power(params.T - tj, expo, lg)) return LogValue::zero();
    }
    lg += log_vandermonde(t);
    return LogValue::from_log(lg);
}

LogValue log_km_full_bridge(const ModelParams& params) {
    params.validate();
    const int n = params.n;
    std::vector<std::vector<LogValue>> m(n, std::vector<LogValue>(n));
    const double logT = std::log(params.T);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const int k = params.N + i - j;
            m[i - 1][j - 1] =
                k < 0 ? LogValue::zero()
                      : LogValue::from_log(-params.T + k * logT - log_factorial(k));
        }
    return log_det_lu(m);
}

LogValue arrival_log_density(const ModelParams& params, const ArrivalTimes& arrivals) {
    params.validate();
    const auto& t = arrivals.times;
    if (static_cast<int>(t.size()) != params.n)
        throw std::invalid_argument("arrival count mismatch");
    check_times_ordered(t);
    if (has_coincidence(t)) return LogValue::zero();

    double lg = 0.0;
    for (int i = 1; i <= params.n; ++i) {
        lg -= log_factorial(params.x + i - 2);
        lg -= log_factorial(params.N - params.x + 1 - i);
        // [det(1/(N+i-j)!)]^{-1} = prod (N+i-1)!/(i-1)!
        lg += log_factorial(params.N + i - 1) - log_factorial(i - 1);
    }
    std::vector<double> yt(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) yt[j] = t[j] / params.T;
    lg += 2.0 * log_vandermonde(yt);
    for (double y : yt) {
        if (!add_log_power(y, params.x - 1, lg)) return LogValue::zero();
        if (!add_log_power(1.0 - y, params.N - params.x - (params.n - 1), lg))
            return LogValue::zero();
    }
    return LogValue::from_log(lg);
}

double arrival_density(const ModelParams& params, const ArrivalTimes& arrivals) {
    return arrival_log_density(params, arrivals).to_double();
}

LogValue position_log_pmf(const ModelParams& params, double t, const PositionConfig& config) {
    params.validate();
    if (!(t > 0.0) || !(t < params.T))
        throw std::invalid_argument("position_pmf: need 0 < t < T");
    config.validate(params);
    const int n = params.n;
    const int K = params.N + n - 1;
    const double p = t / params.T;
    const auto y = config.shifted();
    for (int yj : y)
        if (yj < 0 || yj > K) return LogValue::zero();

    double lg = 0.0;
    for (int i = 1; i <= n; ++i) lg += log_factorial(params.N + i - 1) - log_factorial(i - 1);
    lg -= 0.5 * n * (n - 1) * std::log(p - p * p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lg += 2.0 * std::log(double(y[i] - y[j]));
    for (int yj : y)
        lg += yj * std::log(p) + (K - yj) * std::log1p(-p) - log_factorial(yj) -
              log_factorial(K - yj);
    return LogValue::from_log(lg);
}

double position_pmf(const ModelParams& params, double t, const PositionConfig& config) {
    return position_log_pmf(params, t, config).to_double();
}

LogValue log_km_start_to_positions(const ModelParams& params, double t,
                                   const PositionConfig& config) {
    params.validate();
    config.validate(params);
    const int n = params.n;
    std::vector<std::vector<LogValue>> m(n, std::vector<LogValue>(n));
    const double logt = std::log(t);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const int k = config.positions[j - 1] + i - 1;
            m[i - 1][j - 1] =
                k < 0 ? LogValue::zero() : LogValue::from_log(-t + k * logt - log_factorial(k));
        }
    return log_det_lu(m);
}

LogValue log_km_positions_to_end(const ModelParams& params, double t,
                                 const PositionConfig& config) {
    params.validate();
    config.validate(params);
    const int n = params.n;
    const double r = params.T - t;
    std::vector<std::vector<LogValue>> m(n, std::vector<LogValue>(n));
    const double logr = std::log(r);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            // Remaining jump count from x_j up to N+1-i. The bridge factor
            // decays as e^{-(T-t)}; the ratio identity against the closed-form
            // law fixes this sign.
            const int k = params.N + 1 - i - config.positions[j - 1];
            m[i - 1][j - 1] =
                k < 0 ? LogValue::zero() : LogValue::from_log(-r + k * logr - log_factorial(k));
        }
    return log_det_lu(m);
}

std::vector<PositionConfig> enumerate_position_configs(const ModelParams& params) {
    params.validate();
    const int n = params.n;
    const int K = params.N + n - 1;
    std::vector<PositionConfig> out;
    std::vector<int> y(n);
    // decreasing tuples K >= y_1 > ... > y_n >= 0
    auto rec = [&](auto&& self, int idx, int hi) -> void {
        if (idx == n) {
            PositionConfig c;
            c.positions.resize(n);
            for (int j = 0; j < n; ++j) c.positions[j] = y[j] - (n - 1);
            out.push_back(std::move(c));
            return;
        }
        for (int v = hi; v >= n - 1 - idx; --v) {
            y[idx] = v;
            self(self, idx + 1, v - 1);
        }
    };
    rec(rec, 0, K);
    return out;
}

}  // namespace pbridge
