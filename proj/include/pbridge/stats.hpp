#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pbridge {

// Strictly increasing points on the unit-mean-density scale.
struct UnfoldedSequence {
    std::vector<double> points;
    std::size_t replicate = 0;
};

struct SpacingHistogram {
    std::vector<double> bin_centers;
    std::vector<double> density;
    std::vector<double> stderr_;
    std::vector<std::size_t> counts;
    double bin_width = 0.0;
    std::size_t total_spacings = 0;
};

struct NumberVarianceCurve {
    std::vector<double> s;
    std::vector<double> variance;
    std::vector<double> stderr_;
};

// Histogram of consecutive spacings. Spacings touching the first or last
// edge_fraction of each sequence are dropped to keep boundary effects out of
// the bulk statistic. Standard errors from the per-replicate spread.
SpacingHistogram spacing_statistic(const std::vector<UnfoldedSequence>& sequences,
                                   double bin_width, double edge_fraction = 0.10);

// Bulk spacings pooled across replicates (same edge exclusion).
std::vector<double> pooled_spacings(const std::vector<UnfoldedSequence>& sequences,
                                    double edge_fraction = 0.10);

// Count variance in sliding windows [u, u+s], stride s/2, averaged per
// replicate; jackknife standard errors over replicates.
NumberVarianceCurve number_variance_statistic(const std::vector<UnfoldedSequence>& sequences,
                                              const std::vector<double>& s_grid,
                                              double edge_fraction = 0.10);

// Sup distance between the empirical CDF of samples and a tabulated reference
// CDF (linearly interpolated between curve points).
double ks_distance(std::vector<double> samples, const std::vector<double>& ref_x,
                   const std::vector<double>& ref_cdf);

}  // namespace pbridge
