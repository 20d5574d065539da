#ifndef COOP_STATS_HPP
#define COOP_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "coop/model.hpp"
#include "coop/rng.hpp"

namespace coop::stats {

inline double mean(const std::vector<double>& x)
{
    require(!x.empty(), "mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Sample standard deviation (n - 1 denominator).
inline double sd(const std::vector<double>& x)
{
    require(x.size() >= 2, "standard deviation needs at least two values");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

/// Linear-interpolation quantile of a sorted sample (type 7).
inline double quantile_sorted(const std::vector<double>& s, double q)
{
    require(!s.empty(), "quantile of an empty sample");
    const double h = q * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

struct TTest {
    std::size_t n = 0;
    double mean_diff = 0.0;
    double sd_diff = 0.0;
    double t = 0.0;
    double df = 0.0;
    double p_two_sided = 1.0;
    double p_greater = 0.5;  // alternative: mean difference > 0
    bool degenerate = false;
};

inline TTest paired_ttest(const std::vector<double>& x, const std::vector<double>& y)
{
    require(x.size() == y.size(), "paired samples must have equal length");
    require(x.size() >= 2, "paired t test needs at least two pairs");
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    TTest r;
    r.n = d.size();
    r.mean_diff = mean(d);
    r.sd_diff = sd(d);
    r.df = static_cast<double>(r.n - 1);
    if (r.sd_diff == 0.0) {
        r.degenerate = true;
        r.t = r.mean_diff == 0.0 ? 0.0 : std::copysign(INFINITY, r.mean_diff);
        r.p_two_sided = r.mean_diff == 0.0 ? 1.0 : 0.0;
        r.p_greater = r.mean_diff > 0.0 ? 0.0 : (r.mean_diff == 0.0 ? 0.5 : 1.0);
        return r;
    }
    r.t = r.mean_diff / (r.sd_diff / std::sqrt(static_cast<double>(r.n)));
    boost::math::students_t dist(r.df);
    r.p_greater = boost::math::cdf(boost::math::complement(dist, r.t));
    r.p_two_sided = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
    return r;
}

struct EffectSize {
    double d = 0.0;
    bool degenerate = false;
};

/// Standardised mean difference with s_pooled = sqrt((s1^2 + s2^2) / 2).
inline EffectSize cohens_d(const std::vector<double>& x, const std::vector<double>& y)
{
    const double s1 = sd(x), s2 = sd(y);
    const double pooled = std::sqrt((s1 * s1 + s2 * s2) / 2.0);
    const double diff = mean(x) - mean(y);
    if (pooled == 0.0) return {diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff), true};
    return {diff / pooled, false};
}

inline std::string effect_label(double d)
{
    const double a = std::fabs(d);
    if (a >= 0.8) return "large";
    if (a >= 0.5) return "medium";
    if (a >= 0.2) return "small";
    return "negligible";
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

using Statistic = std::function<double(const std::vector<double>&)>;

/// Percentile bootstrap 95% interval. Resample indices come from stream 0 of `seed`.
inline Interval bootstrap_ci(const std::vector<double>& x, const Statistic& stat, int replicates,
                             std::uint64_t seed, double level = 0.95)
{
    require(!x.empty(), "bootstrap of an empty sample");
    require(replicates >= 1, "bootstrap needs at least one replicate");
    StreamRng rng(seed, 0);
    std::vector<double> resample(x.size()), vals;
    vals.reserve(static_cast<std::size_t>(replicates));
    for (int r = 0; r < replicates; ++r) {
        for (auto& v : resample) v = x[rng.below(x.size())];
        vals.push_back(stat(resample));
    }
    std::sort(vals.begin(), vals.end());
    const double tail = (1.0 - level) / 2.0;
    return {quantile_sorted(vals, tail), quantile_sorted(vals, 1.0 - tail)};
}

inline Interval bootstrap_mean_ci(const std::vector<double>& x, int replicates, std::uint64_t seed)
{
    return bootstrap_ci(x, [](const std::vector<double>& v) { return mean(v); }, replicates, seed);
}

struct Wilcoxon {
    std::size_t n = 0;        // non-zero differences
    double w_plus = 0.0;      // rank sum of positive differences
    double w_minus = 0.0;
    double statistic = 0.0;   // min(w_plus, w_minus)
    double z = 0.0;
    double p_greater = 1.0;   // alternative: median > mu0
    bool degenerate = false;
};

/// One-sided signed-rank test, zero differences dropped, mid-ranks for ties,
/// normal approximation with tie-corrected variance and continuity correction.
inline Wilcoxon wilcoxon_signed_rank(const std::vector<double>& x, double mu0)
{
    std::vector<double> d;
    for (double v : x)
        if (v - mu0 != 0.0) d.push_back(v - mu0);
    Wilcoxon w;
    w.n = d.size();
    if (d.empty()) {
        w.degenerate = true;
        return w;
    }
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return std::fabs(d[a]) < std::fabs(d[b]); });

    std::vector<double> rank(d.size());
    double tie_term = 0.0;
    for (std::size_t s = 0; s < idx.size();) {
        std::size_t e = s;
        while (e + 1 < idx.size() && std::fabs(d[idx[e + 1]]) == std::fabs(d[idx[s]])) ++e;
        const double mid = 0.5 * static_cast<double>(s + e) + 1.0;
        for (std::size_t q = s; q <= e; ++q) rank[idx[q]] = mid;
        const double t = static_cast<double>(e - s + 1);
        tie_term += t * t * t - t;
        s = e + 1;
    }
    for (std::size_t i = 0; i < d.size(); ++i) (d[i] > 0.0 ? w.w_plus : w.w_minus) += rank[i];
    w.statistic = std::min(w.w_plus, w.w_minus);

    const double n = static_cast<double>(w.n);
    const double mu = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
        w.degenerate = true;
        return w;
    }
    w.z = (w.w_plus - mu - 0.5) / std::sqrt(var);
    w.p_greater = 0.5 * std::erfc(w.z / std::sqrt(2.0));
    return w;
}

struct Summary {
    double mean = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double max = 0.0;
    Interval ci;
};

inline Summary summarize(const std::vector<double>& x, int replicates, std::uint64_t seed)
{
    Summary s;
    s.mean = mean(x);
    s.sd = x.size() >= 2 ? sd(x) : 0.0;
    s.min = *std::min_element(x.begin(), x.end());
    s.max = *std::max_element(x.begin(), x.end());
    s.ci = bootstrap_mean_ci(x, replicates, seed);
    return s;
}

}  // namespace coop::stats

#endif  // COOP_STATS_HPP
