#pragma once

#include <vector>

#include "pbridge/logvalue.hpp"

namespace pbridge {

// Line model parameters: n buses on Z, route length parameter N, horizon T,
// observation site x. Bus i starts at 1-i and ends at N+1-i.
struct ModelParams {
    int N = 1;
    int n = 1;
    int x = 1;
    double T = 1.0;

    // Throws std::invalid_argument if outside the admissible window
    // 1 <= x <= N-n+1, n < N, T > 0.
    void validate() const;
};

// Ordered arrival times 0 < t_1 < ... < t_n < T at the observation site.
struct ArrivalTimes {
    std::vector<double> times;

    void validate(const ModelParams& p) const;
};

// Bus positions at a fixed time, strictly decreasing x_1 > ... > x_n.
// Shifted coordinates y_j = x_j + n - 1 live in {0, ..., N+n-1}.
struct PositionConfig {
    std::vector<int> positions;

    std::vector<int> shifted() const;
    void validate(const ModelParams& p) const;
};

// P[start -> (t_i, x-1); no intersection], via the Vandermonde closed form.
// Coincident times give the zero value, not an error.
LogValue log_km_start_to_arrivals(const ModelParams& params, const ArrivalTimes& arrivals);

// P[(t_i, x) -> end; no intersection], closed form with weight (T-t_j)^{N-x+1-n}.
LogValue log_km_arrivals_to_end(const ModelParams& params, const ArrivalTimes& arrivals);

// P[start -> end; no intersection]: det(e^{-T} T^{N+i-j}/(N+i-j)!), log-space LU.
LogValue log_km_full_bridge(const ModelParams& params);

// Arrival-time density in the rescaled variables yt_j = t_j/T:
//   C_{N,n,x} prod (yt_j - yt_i)^2 prod yt_j^{x-1} (1-yt_j)^{N-x-(n-1)}.
// The T^n Jacobian between the t- and yt-densities is included here, so this
// equals T^n times the bridge ratio assembled from the three KM factors.
LogValue arrival_log_density(const ModelParams& params, const ArrivalTimes& arrivals);
double arrival_density(const ModelParams& params, const ArrivalTimes& arrivals);

// Fixed-time position law (Krawtchouk unitary ensemble) with p = t/T.
// Out-of-range configurations have probability 0.
LogValue position_log_pmf(const ModelParams& params, double t, const PositionConfig& config);
double position_pmf(const ModelParams& params, double t, const PositionConfig& config);

// Lemma-2 factors for the position law, exposed for the ratio cross-check.
LogValue log_km_start_to_positions(const ModelParams& params, double t, const PositionConfig& config);
LogValue log_km_positions_to_end(const ModelParams& params, double t, const PositionConfig& config);

// All strictly decreasing configs of n values in {0..N+n-1} (shifted coords),
// for exhaustive small-instance checks.
std::vector<PositionConfig> enumerate_position_configs(const ModelParams& params);

}  // namespace pbridge
