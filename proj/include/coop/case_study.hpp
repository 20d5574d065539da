#ifndef COOP_CASE_STUDY_HPP
#define COOP_CASE_STUDY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coop/format.hpp"
#include "coop/scenario_io.hpp"
#include "coop/simulation.hpp"

namespace coop::ios {

enum Actor : std::size_t { apple = 0, major = 1, small = 2 };

struct PhaseSpec {
    std::string name;
    int start = 1;
    int end = 1;
};

inline std::vector<PhaseSpec> phases()
{
    return {{"Symbiosis", 1, 16}, {"Maturation", 17, 36}, {"Tension", 37, 48}, {"Crisis", 49, 54},
            {"Adjustment", 55, 66}};
}

/// Quarters after which a new phase starts.
inline std::vector<int> expected_transitions() { return {16, 36, 48, 54}; }

constexpr std::uint64_t default_seed = 2008;

inline ScenarioFile build_scenario(bool counterfactual, std::uint64_t seed = default_seed)
{
    ScenarioFile f;
    Scenario& sc = f.scenario;
    sc.labels = {"Apple", "Major", "Small"};
    sc.dep = InterdependenceMatrix(3);
    sc.dep.set(major, apple, 0.88);
    sc.dep.set(small, apple, 0.92);
    sc.dep.set(apple, major, 0.66);
    sc.dep.set(apple, small, 0.71);
    sc.recip = ReciprocityParams{0.85, 1.3, 1.2, 4, 1.0, 0.6};
    sc.trust = TrustParams{};  // t0 0.70, lambda+ 0.10, lambda- 0.30, lambda_T 1.0
    sc.econ.a_max = {1.0, 1.0, 1.0};
    sc.initial_actions = {0.70, 0.65, 0.68};
    sc.initial_baseline = {0.5, 0.5, 0.5};

    SimConfig& sim = f.sim;
    sim.horizon = 66;
    sim.mode = Mode::adjustment;
    sim.noise_sigma = 0.02;
    sim.seed = seed;
    sim.signal_ref = BaselineStrategy::adaptive;
    sim.anchor = BaselineStrategy::adaptive;
    if (!counterfactual) {
        sim.shocks = {{36, major, -0.15}, {36, small, -0.15}, {48, major, -0.40}, {48, apple, -0.25},
                      {54, apple, +0.20}};
    } else {
        sim.shocks = {{36, major, -0.05}, {36, small, -0.05}, {44, apple, +0.15}, {48, major, -0.10},
                      {48, apple, -0.10}, {54, apple, +0.20}};
    }
    return f;
}

// ---------------------------------------------------------------- phase analytics

struct PhaseStat {
    double mean = 0.0;
    double sd = 0.0;
};

/// stats[phase][actor]; sd uses the n - 1 denominator and is 0 for single-quarter phases.
inline std::vector<std::vector<PhaseStat>> phase_statistics(const Trajectory& tr, const std::vector<PhaseSpec>& ph)
{
    std::vector<std::vector<PhaseStat>> out;
    for (const auto& p : ph) {
        require(p.start >= 1 && p.end <= tr.periods() && p.start <= p.end, "phase outside trajectory");
        std::vector<PhaseStat> row;
        for (std::size_t i = 0; i < tr.actors; ++i) {
            const int n = p.end - p.start + 1;
            double m = 0.0;
            for (int t = p.start; t <= p.end; ++t) m += tr.action(t, i);
            m /= n;
            double ss = 0.0;
            for (int t = p.start; t <= p.end; ++t) ss += (tr.action(t, i) - m) * (tr.action(t, i) - m);
            row.push_back({m, n > 1 ? std::sqrt(ss / (n - 1)) : 0.0});
        }
        out.push_back(row);
    }
    return out;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double sse = 0.0;
};

/// Ordinary least squares of y[first..last) against its index.
inline LineFit fit_line(const std::vector<double>& y, std::size_t first, std::size_t last)
{
    LineFit f;
    const double n = static_cast<double>(last - first);
    if (n < 1) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t t = first; t < last; ++t) {
        const double x = static_cast<double>(t);
        sx += x;
        sy += y[t];
        sxx += x * x;
        sxy += x * y[t];
    }
    const double den = n * sxx - sx * sx;
    f.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    f.intercept = (sy - f.slope * sx) / n;
    for (std::size_t t = first; t < last; ++t) {
        const double r = y[t] - (f.intercept + f.slope * static_cast<double>(t));
        f.sse += r * r;
    }
    return f;
}

/// Optimal piecewise-linear segmentation into `segments` pieces of at least `min_len` points
/// (dynamic programming over OLS residuals). Returns, for each break, the 1-based index of the
/// last point before it.
inline std::vector<int> detect_transitions(const std::vector<double>& y, int segments = 5, int min_len = 3)
{
    const std::size_t n = y.size();
    const auto K = static_cast<std::size_t>(segments);
    const auto L = static_cast<std::size_t>(min_len);
    require(segments >= 1 && min_len >= 1 && K * L <= n, "series too short for the requested segmentation");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> cost(n + 1, std::vector<double>(n + 1, inf));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t e = s + L; e <= n; ++e) cost[s][e] = fit_line(y, s, e).sse;

    std::vector<std::vector<double>> best(K + 1, std::vector<double>(n + 1, inf));
    std::vector<std::vector<std::size_t>> from(K + 1, std::vector<std::size_t>(n + 1, 0));
    best[0][0] = 0.0;
    for (std::size_t k = 1; k <= K; ++k)
        for (std::size_t e = 1; e <= n; ++e)
            for (std::size_t s = 0; s < e; ++s) {
                const double v = best[k - 1][s] + cost[s][e];
                if (v < best[k][e]) {
                    best[k][e] = v;
                    from[k][e] = s;
                }
            }
    std::vector<int> breaks;
    std::size_t e = n;
    for (std::size_t k = K; k > 1; --k) {
        e = from[k][e];
        breaks.push_back(static_cast<int>(e));
    }
    std::reverse(breaks.begin(), breaks.end());
    return breaks;
}

// ---------------------------------------------------------------- rubric

constexpr std::size_t indicator_count = 12;
constexpr std::size_t phase_count = 5;

inline const std::array<std::string, indicator_count>& indicator_names()
{
    static const std::array<std::string, indicator_count> n{
        "Cooperation trend direction", "Response magnitude",       "Memory effects visible",
        "Asymmetry reflects power",    "Trust-reciprocity alignment", "Punishment following violation",
        "Forgiveness dynamics",        "Phase transition timing", "Recovery trajectory shape",
        "Equilibrium stability",       "Parameter sensitivity",   "Overall qualitative fit"};
    return n;
}

/// Expert scores per indicator and phase; empty = not applicable.
inline std::array<std::array<std::optional<double>, phase_count>, indicator_count> human_scores()
{
    using O = std::optional<double>;
    const O na;
    return {{{1.0, 1.0, 1.0, 0.5, 1.0},
             {1.0, 1.0, 0.0, 0.0, 0.5},
             {0.5, 1.0, 0.5, 0.5, 1.0},
             {1.0, 1.0, 1.0, 1.0, 1.0},
             {1.0, 1.0, 1.0, 1.0, 0.5},
             {na, 1.0, 1.0, 0.5, 1.0},
             {na, na, na, na, 0.5},
             {1.0, 1.0, 1.0, 1.0, 1.0},
             {na, na, na, na, 1.0},
             {1.0, 1.0, 1.0, 1.0, 1.0},
             {1.0, 1.0, 1.0, 0.5, 1.0},
             {1.0, 1.0, 0.5, 0.5, 0.5}}};
}

enum class Trend { rise, stable, decline };

inline std::vector<Trend> documented_trends()
{
    return {Trend::rise, Trend::stable, Trend::decline, Trend::decline, Trend::rise};
}

struct RubricSettings {
    double stable_slope = 0.002;    // |slope| per quarter below this counts as stable
    double stability_sd = 0.05;     // detrended residual sd for a full stability score
    int transition_tolerance = 1;
};

struct RubricScore {
    std::array<std::array<std::optional<double>, phase_count>, indicator_count> cells{};
    std::array<bool, indicator_count> automated{};

    double total() const
    {
        double s = 0.0;
        for (const auto& row : cells)
            for (const auto& c : row) s += c.value_or(0.0);
        return s;
    }
    int applicable() const
    {
        int n = 0;
        for (const auto& row : cells)
            for (const auto& c : row) n += c.has_value() ? 1 : 0;
        return n;
    }
    double indicator_mean(std::size_t ind) const
    {
        double s = 0.0;
        int n = 0;
        for (const auto& c : cells[ind])
            if (c) {
                s += *c;
                ++n;
            }
        return n ? s / n : 0.0;
    }
};

inline Trend classify(double slope, double stable)
{
    if (slope > stable) return Trend::rise;
    if (slope < -stable) return Trend::decline;
    return Trend::stable;
}

inline double fraction_score(int hits, int total)
{
    if (hits == total) return 1.0;
    return hits * 2 >= total ? 0.5 : 0.0;
}

/// Scores indicators 1, 4, 8 and 10 from the trajectory; the rest carry the expert scores.
inline RubricScore score_rubric_auto(const Trajectory& tr, const std::vector<PhaseSpec>& ph,
                                     const RubricSettings& cfg = {})
{
    require(ph.size() == phase_count, "rubric expects five phases");
    RubricScore r;
    r.cells = human_scores();
    for (std::size_t ind : {0u, 3u, 7u, 9u}) r.automated[ind] = true;

    const auto trends = documented_trends();
    const auto stats = phase_statistics(tr, ph);
    const std::vector<int> found = detect_transitions(tr.mean_action());
    const std::vector<int> want = expected_transitions();
    auto detected = [&](int q) {
        for (int b : found)
            if (std::abs(b - q) <= cfg.transition_tolerance) return true;
        return false;
    };

    for (std::size_t p = 0; p < phase_count; ++p) {
        std::vector<std::vector<double>> series(tr.actors);
        for (std::size_t i = 0; i < tr.actors; ++i)
            for (int t = ph[p].start; t <= ph[p].end; ++t) series[i].push_back(tr.action(t, i));

        int trend_hits = 0;
        double worst_sd = 0.0;
        for (std::size_t i = 0; i < tr.actors; ++i) {
            const LineFit f = fit_line(series[i], 0, series[i].size());
            trend_hits += classify(f.slope, cfg.stable_slope) == trends[p] ? 1 : 0;
            const double dof = std::max<double>(1.0, static_cast<double>(series[i].size()) - 2.0);
            worst_sd = std::max(worst_sd, std::sqrt(f.sse / dof));
        }
        r.cells[0][p] = fraction_score(trend_hits, static_cast<int>(tr.actors));

        auto prev = [&](std::size_t i) { return p == 0 ? tr.action(1, i) : stats[p - 1][i].mean; };
        const double d_apple = std::fabs(stats[p][apple].mean - prev(apple));
        int asym_hits = 0;
        for (std::size_t dev : {major, small}) asym_hits += std::fabs(stats[p][dev].mean - prev(dev)) > d_apple ? 1 : 0;
        r.cells[3][p] = fraction_score(asym_hits, 2);

        int edges = 0, edge_hits = 0;
        if (p > 0) {
            ++edges;
            edge_hits += detected(want[p - 1]) ? 1 : 0;
        }
        if (p + 1 < phase_count) {
            ++edges;
            edge_hits += detected(want[p]) ? 1 : 0;
        }
        r.cells[7][p] = edge_hits == edges ? 1.0 : (edge_hits > 0 ? 0.5 : 0.0);

        r.cells[9][p] = worst_sd < cfg.stability_sd ? 1.0 : (worst_sd < 2.0 * cfg.stability_sd ? 0.5 : 0.0);
    }
    return r;
}

// ---------------------------------------------------------------- counterfactual

struct Comparison {
    std::vector<double> base_mean;
    std::vector<double> cf_mean;
    std::vector<double> uplift;      // relative change of whole-horizon mean
    double cf_min_bilateral_trust = 0.0;
    double base_min_bilateral_trust = 0.0;
};

/// Minimum over periods and coupled pairs of the mean of the two directed trust values.
inline double min_bilateral_trust(const Trajectory& tr, const InterdependenceMatrix& dep)
{
    double m = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= tr.periods(); ++t)
        for (std::size_t i = 0; i < tr.actors; ++i)
            for (std::size_t j = i + 1; j < tr.actors; ++j) {
                if (dep(i, j) == 0.0 && dep(j, i) == 0.0) continue;
                m = std::min(m, 0.5 * (tr.dyad(t, i, j).trust + tr.dyad(t, j, i).trust));
            }
    return m;
}

inline Comparison counterfactual_comparison(const Trajectory& base, const Trajectory& cf,
                                            const InterdependenceMatrix& dep)
{
    require(base.periods() == cf.periods() && base.actors == cf.actors, "trajectories differ in shape");
    Comparison c;
    for (std::size_t i = 0; i < base.actors; ++i) {
        double b = 0.0, x = 0.0;
        for (int t = 1; t <= base.periods(); ++t) {
            b += base.action(t, i);
            x += cf.action(t, i);
        }
        b /= base.periods();
        x /= cf.periods();
        c.base_mean.push_back(b);
        c.cf_mean.push_back(x);
        c.uplift.push_back(b != 0.0 ? x / b - 1.0 : 0.0);
    }
    c.cf_min_bilateral_trust = min_bilateral_trust(cf, dep);
    c.base_min_bilateral_trust = min_bilateral_trust(base, dep);
    return c;
}

// ---------------------------------------------------------------- qualitative checks

struct QualitativeChecks {
    bool crisis_min = false;
    bool maturation_max = false;
    bool transitions = false;
    bool asymmetry = false;
    bool rubric = false;
    bool uplift_band = false;
    bool cf_trust = false;
    std::vector<int> detected;
    std::array<double, 4> auto_means{};

    bool all() const
    {
        return crisis_min && maturation_max && transitions && asymmetry && rubric && uplift_band && cf_trust;
    }
};

inline QualitativeChecks evaluate(const Trajectory& base, const Trajectory& cf, const InterdependenceMatrix& dep)
{
    QualitativeChecks q;
    const auto ph = phases();
    const auto st = phase_statistics(base, ph);
    q.crisis_min = q.maturation_max = true;
    for (std::size_t i = 0; i < base.actors; ++i) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t p = 1; p < ph.size(); ++p) {
            if (st[p][i].mean < st[lo][i].mean) lo = p;
            if (st[p][i].mean > st[hi][i].mean) hi = p;
        }
        q.crisis_min = q.crisis_min && lo == 3;
        q.maturation_max = q.maturation_max && hi == 1;
    }
    q.detected = detect_transitions(base.mean_action());
    const auto want = expected_transitions();
    q.transitions = q.detected.size() == want.size();
    for (std::size_t b = 0; b < want.size() && q.transitions; ++b) q.transitions = std::abs(q.detected[b] - want[b]) <= 1;

    q.asymmetry = true;
    for (std::size_t p : {2u, 3u})
        q.asymmetry = q.asymmetry && std::fabs(st[p][major].mean - st[p - 1][major].mean) >
                                         std::fabs(st[p][apple].mean - st[p - 1][apple].mean);

    const RubricScore r = score_rubric_auto(base, ph);
    q.rubric = true;
    const std::array<std::size_t, 4> inds{0, 3, 7, 9};
    for (std::size_t k = 0; k < 4; ++k) {
        q.auto_means[k] = r.indicator_mean(inds[k]);
        q.rubric = q.rubric && q.auto_means[k] >= 0.75;
    }

    const Comparison c = counterfactual_comparison(base, cf, dep);
    q.uplift_band = std::all_of(c.uplift.begin(), c.uplift.end(), [](double u) { return u >= 0.05 && u <= 0.25; });
    q.cf_trust = c.cf_min_bilateral_trust > 0.5;
    return q;
}

// ---------------------------------------------------------------- output

inline void write_phase_csv(std::ostream& os, const Trajectory& tr, const Scenario& sc)
{
    const auto ph = phases();
    const auto st = phase_statistics(tr, ph);
    os << "phase,name,start,end,actor,mean,sd\n";
    for (std::size_t p = 0; p < ph.size(); ++p)
        for (std::size_t i = 0; i < tr.actors; ++i)
            os << p + 1 << ',' << ph[p].name << ',' << ph[p].start << ',' << ph[p].end << ',' << sc.labels[i] << ','
               << fmt(st[p][i].mean) << ',' << fmt(st[p][i].sd) << '\n';
}

/// Long format for plotting: one row per (run, period, series).
inline void write_plot_csv(std::ostream& os, const Trajectory& base, const Trajectory* cf, const Scenario& sc)
{
    os << "run,period,series,value\n";
    auto emit = [&](const char* run, const Trajectory& tr) {
        for (int t = 1; t <= tr.periods(); ++t) {
            for (std::size_t i = 0; i < tr.actors; ++i)
                os << run << ',' << t << ",action:" << sc.labels[i] << ',' << fmt(tr.action(t, i)) << '\n';
            for (std::size_t i = 0; i < tr.actors; ++i)
                for (std::size_t j = 0; j < tr.actors; ++j)
                    if (i != j && sc.dep(i, j) != 0.0)
                        os << run << ',' << t << ",trust:" << sc.labels[i] << "->" << sc.labels[j] << ','
                           << fmt(tr.dyad(t, i, j).trust) << '\n';
        }
    };
    emit("baseline", base);
    if (cf) emit("counterfactual", *cf);
}

inline void write_rubric_md(std::ostream& os, const RubricScore& r)
{
    const auto ph = phases();
    os << "| Indicator | Source |";
    for (const auto& p : ph) os << ' ' << p.name << " |";
    os << " Total |\n|---|---|";
    for (std::size_t p = 0; p < ph.size(); ++p) os << "---:|";
    os << "---:|\n";
    for (std::size_t i = 0; i < indicator_count; ++i) {
        os << "| " << i + 1 << ". " << indicator_names()[i] << " | " << (r.automated[i] ? "auto" : "expert") << " |";
        double tot = 0.0;
        for (const auto& c : r.cells[i]) {
            os << ' ' << (c ? fixed(*c, 1) : std::string("-")) << " |";
            tot += c.value_or(0.0);
        }
        os << ' ' << fixed(tot, 1) << " |\n";
    }
    os << "\nOverall: " << fixed(r.total(), 1) << " / " << r.applicable() << '\n';
}

}  // namespace coop::ios

#endif  // COOP_CASE_STUDY_HPP
