#include "pbridge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbridge {

namespace {

struct Bulk {
    double lo, hi;
};

Bulk bulk_window(const std::vector<double>& u, double edge_fraction) {
    const double span = u.back() - u.front();
    return {u.front() + edge_fraction * span, u.back() - edge_fraction * span};
}

std::vector<double> bulk_spacings(const std::vector<double>& u, double edge_fraction) {
    std::vector<double> out;
    if (u.size() < 2) return out;
    const Bulk b = bulk_window(u, edge_fraction);
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
        if (u[i] >= b.lo && u[i + 1] <= b.hi) out.push_back(u[i + 1] - u[i]);
    return out;
}

}  // namespace

std::vector<double> pooled_spacings(const std::vector<UnfoldedSequence>& sequences,
                                    double edge_fraction) {
    std::vector<double> out;
    for (const auto& seq : sequences) {
        const auto sp = bulk_spacings(seq.points, edge_fraction);
        out.insert(out.end(), sp.begin(), sp.end());
    }
    return out;
}

SpacingHistogram spacing_statistic(const std::vector<UnfoldedSequence>& sequences,
                                   double bin_width, double edge_fraction) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("spacing_statistic: bin_width > 0");
    std::vector<std::vector<double>> per_rep;
    double max_sp = 0.0;
    for (const auto& seq : sequences) {
        auto sp = bulk_spacings(seq.points, edge_fraction);
        if (sp.empty()) continue;
        for (double d : sp) max_sp = std::max(max_sp, d);
        per_rep.push_back(std::move(sp));
    }
    if (per_rep.empty()) throw std::invalid_argument("spacing_statistic: insufficient data");

    const std::size_t nbins = static_cast<std::size_t>(std::floor(max_sp / bin_width)) + 1;
    SpacingHistogram h;
    h.bin_width = bin_width;
    h.bin_centers.resize(nbins);
    h.counts.assign(nbins, 0);
    for (std::size_t b = 0; b < nbins; ++b) h.bin_centers[b] = (b + 0.5) * bin_width;

    const std::size_t reps = per_rep.size();
    std::vector<std::vector<double>> rep_density(reps, std::vector<double>(nbins, 0.0));
    std::size_t total = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        for (double d : per_rep[r]) {
            const auto b = static_cast<std::size_t>(d / bin_width);
            ++h.counts[std::min(b, nbins - 1)];
        }
        total += per_rep[r].size();
        for (double d : per_rep[r]) {
            const auto b = std::min(static_cast<std::size_t>(d / bin_width), nbins - 1);
            rep_density[r][b] += 1.0 / (per_rep[r].size() * bin_width);
        }
    }
    h.total_spacings = total;
    h.density.resize(nbins);
    h.stderr_.resize(nbins);
    for (std::size_t b = 0; b < nbins; ++b) {
        h.density[b] = static_cast<double>(h.counts[b]) / (total * bin_width);
        if (reps > 1) {
            double mean = 0.0;
            for (std::size_t r = 0; r < reps; ++r) mean += rep_density[r][b];
            mean /= reps;
            double var = 0.0;
            for (std::size_t r = 0; r < reps; ++r) {
                const double d = rep_density[r][b] - mean;
                var += d * d;
            }
            var /= (reps - 1);
            h.stderr_[b] = std::sqrt(var / reps);
        } else {
            const double p = h.density[b] * bin_width;
            h.stderr_[b] = std::sqrt(std::max(p * (1.0 - p), 0.0) / total) / bin_width;
        }
    }
    return h;
}

NumberVarianceCurve number_variance_statistic(const std::vector<UnfoldedSequence>& sequences,
                                              const std::vector<double>& s_grid,
                                              double edge_fraction) {
    if (sequences.empty()) throw std::invalid_argument("number_variance: no sequences");
    NumberVarianceCurve curve;
    curve.s = s_grid;
    for (double s : s_grid) {
        if (!(s > 0.0)) throw std::invalid_argument("number_variance: s > 0 required");
        std::vector<double> per_rep;
        for (const auto& seq : sequences) {
            const auto& u = seq.points;
            if (u.size() < 2) continue;
            const Bulk b = bulk_window(u, edge_fraction);
            if (!(s <= 0.25 * (u.back() - u.front())))
                throw std::invalid_argument("number_variance: s too large for sequence span");
            std::vector<double> counts;
            for (double lo = b.lo; lo + s <= b.hi; lo += 0.5 * s) {
                const auto i0 = std::lower_bound(u.begin(), u.end(), lo);
                const auto i1 = std::lower_bound(u.begin(), u.end(), lo + s);
                counts.push_back(static_cast<double>(i1 - i0));
            }
            if (counts.size() < 2) throw std::invalid_argument("number_variance: too few windows");
            double mean = 0.0;
            for (double c : counts) mean += c;
            mean /= counts.size();
            double var = 0.0;
            for (double c : counts) var += (c - mean) * (c - mean);
            var /= (counts.size() - 1);
            per_rep.push_back(var);
        }
        if (per_rep.empty()) throw std::invalid_argument("number_variance: insufficient data");
        const std::size_t reps = per_rep.size();
        double mean = 0.0;
        for (double v : per_rep) mean += v;
        mean /= reps;
        curve.variance.push_back(mean);
        if (reps > 1) {
            // jackknife over replicates
            double acc = 0.0;
            for (std::size_t i = 0; i < reps; ++i) {
                const double loo = (mean * reps - per_rep[i]) / (reps - 1);
                acc += (loo - mean) * (loo - mean);
            }
            curve.stderr_.push_back(std::sqrt((reps - 1.0) / reps * acc));
        } else {
            curve.stderr_.push_back(0.0);
        }
    }
    return curve;
}

double ks_distance(std::vector<double> samples, const std::vector<double>& ref_x,
                   const std::vector<double>& ref_cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
    if (ref_x.size() != ref_cdf.size() || ref_x.size() < 2)
        throw std::invalid_argument("ks_distance: bad reference curve");
    std::sort(samples.begin(), samples.end());
    auto ref = [&](double x) {
        if (x <= ref_x.front()) return ref_cdf.front();
        if (x >= ref_x.back()) return ref_cdf.back();
        const auto it = std::upper_bound(ref_x.begin(), ref_x.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - ref_x.begin());
        const double w = (x - ref_x[i - 1]) / (ref_x[i] - ref_x[i - 1]);
        return ref_cdf[i - 1] + w * (ref_cdf[i] - ref_cdf[i - 1]);
    };
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = ref(samples[i]);
        d = std::max(d, std::fabs((i + 1) / n - f));
        d = std::max(d, std::fabs(i / n - f));
    }
    return d;
}

}  // namespace pbridge
