#ifndef COOP_SWEEP_HPP
#define COOP_SWEEP_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coop/config.hpp"
#include "coop/format.hpp"
#include "coop/parallel.hpp"
#include "coop/protocol.hpp"
#include "coop/rng.hpp"
#include "coop/stats.hpp"

namespace coop {

// ---------------------------------------------------------------- grid

struct GridAxis {
    std::string name;
    std::vector<double> levels;
};

inline const std::vector<std::string>& grid_parameter_names()
{
    static const std::vector<std::string> names{"rho0", "eta", "kappa", "k", "lambda_r", "t0", "d", "omega"};
    return names;
}

inline void set_cell_parameter(CellParams& c, const std::string& name, double v)
{
    if (name == "rho0") c.rho0 = v;
    else if (name == "eta") c.eta = v;
    else if (name == "kappa") c.kappa = v;
    else if (name == "k") c.k = static_cast<int>(std::lround(v));
    else if (name == "lambda_r") c.lambda_r = v;
    else if (name == "t0") c.t0 = v;
    else if (name == "d") c.d = v;
    else if (name == "omega") c.omega_amp = v;
    else throw ValidationError("unknown grid parameter '" + name + "'");
}

/// Cartesian product of parameter levels. The last axis varies fastest.
class ParameterGrid {
public:
    ParameterGrid() = default;
    explicit ParameterGrid(std::vector<GridAxis> axes) : axes_(std::move(axes)) { validate(); }

    /// Grid file: one `name = level, level, ...` line per swept parameter.
    static ParameterGrid parse(const KeyValueFile& kv)
    {
        std::vector<GridAxis> axes;
        for (const auto& e : kv.entries()) {
            const auto& names = grid_parameter_names();
            require(std::find(names.begin(), names.end(), e.key) != names.end(),
                    kv.source() + ":" + std::to_string(e.line) + ": unknown grid parameter '" + e.key + "'");
            for (const auto& a : axes) require(a.name != e.key, kv.source() + ": parameter listed twice: " + e.key);
            GridAxis ax{e.key, {}};
            for (const auto& part : split(e.value, ','))
                ax.levels.push_back(parse_double(part, kv.source() + ": " + e.key));
            axes.push_back(ax);
        }
        return ParameterGrid(std::move(axes));
    }

    static ParameterGrid load(const std::string& path) { return parse(KeyValueFile::load(path)); }

    std::size_t size() const
    {
        std::size_t n = 1;
        for (const auto& a : axes_) n *= a.levels.size();
        return n;
    }

    const std::vector<GridAxis>& axes() const { return axes_; }

    const GridAxis* axis(const std::string& name) const
    {
        for (const auto& a : axes_)
            if (a.name == name) return &a;
        return nullptr;
    }

    CellParams cell(std::size_t index, CellParams base = {}) const
    {
        require(index < size(), "grid index out of range");
        for (std::size_t a = axes_.size(); a-- > 0;) {
            const auto& ax = axes_[a];
            set_cell_parameter(base, ax.name, ax.levels[index % ax.levels.size()]);
            index /= ax.levels.size();
        }
        return base;
    }

private:
    void validate() const
    {
        for (const auto& a : axes_) {
            require(!a.levels.empty(), "grid parameter '" + a.name + "' has no levels");
            for (double v : a.levels) {
                CellParams probe;
                set_cell_parameter(probe, a.name, v);
                if (a.name == "k") require(v >= 1.0 && v == std::floor(v), "grid k levels must be whole numbers >= 1");
                if (a.name == "t0" || a.name == "d") require(v >= 0.0 && v <= 1.0, a.name + " levels must lie in [0,1]");
                if (a.name == "kappa") require(v > 0.0, "kappa levels must be positive");
                if (a.name != "k" && a.name != "kappa" && a.name != "t0" && a.name != "d")
                    require(v >= 0.0, a.name + " levels must be non-negative");
            }
        }
    }

    std::vector<GridAxis> axes_;
};

/// Trust/reciprocity extremes for the interaction target come from the grid when swept.
inline Protocol protocol_for(const ParameterGrid& g, Protocol p = {})
{
    if (const auto* ax = g.axis("rho0")) {
        p.t5_rho_high = *std::max_element(ax->levels.begin(), ax->levels.end());
        p.t5_rho_low = *std::min_element(ax->levels.begin(), ax->levels.end());
    }
    return p;
}

// ---------------------------------------------------------------- per-cell measurement

struct CellResult {
    CellParams params;
    double t1_steady = 0.0;
    double t2_response = 0.0;
    std::optional<int> t3_tau;
    double t4_high = 0.0;
    double t4_low = 0.0;
    double t4_ratio = 0.0;
    double t5_hh = 0.0, t5_lh = 0.0, t5_hl = 0.0;
    double t6_max_tanh = 0.0;
    std::array<bool, 6> pass{};
};

inline CellResult measure_cell(const CellParams& c, const Protocol& p)
{
    CellResult r;
    r.params = c;

    const EmergenceOutcome em = emergence_run(c, p);
    r.t1_steady = em.tail_mean;
    r.pass[0] = em.tail_mean >= p.initial + p.t1_margin;

    const DefectionOutcome def = defection_run(c, p);
    r.t2_response = def.response;
    r.pass[1] = def.response < 0.0;
    r.t3_tau = def.tau;
    r.pass[2] = def.tau.has_value() && *def.tau <= 2 * c.k;

    const DefectionOutcome hi = defection_run(c, p, p.d_high);
    const DefectionOutcome lo = defection_run(c, p, p.d_low);
    r.t4_high = std::fabs(hi.response);
    r.t4_low = std::fabs(lo.response);
    r.t4_ratio = r.t4_low > 0.0 ? r.t4_high / r.t4_low : (r.t4_high > 0.0 ? INFINITY : 0.0);
    r.pass[3] = r.t4_ratio > 1.5;

    auto with = [&](double t0, double rho0) {
        CellParams x = c;
        x.t0 = t0;
        x.rho0 = rho0;
        return emergence_run(x, p);
    };
    const EmergenceOutcome hh = with(p.t5_trust_high, p.t5_rho_high);
    const EmergenceOutcome lh = with(p.t5_trust_low, p.t5_rho_high);
    const EmergenceOutcome hl = with(p.t5_trust_high, p.t5_rho_low);
    r.t5_hh = hh.warmup_mean;
    r.t5_lh = lh.warmup_mean;
    r.t5_hl = hl.warmup_mean;
    r.pass[4] = r.t5_hh > std::max(r.t5_lh, r.t5_hl);

    for (double m : {em.max_abs_tanh, def.max_abs_tanh, hi.max_abs_tanh, lo.max_abs_tanh, hh.max_abs_tanh,
                     lh.max_abs_tanh, hl.max_abs_tanh})
        r.t6_max_tanh = std::max(r.t6_max_tanh, m);
    r.pass[5] = r.t6_max_tanh <= 1.0;
    return r;
}

inline std::vector<CellResult> run_sweep(const ParameterGrid& grid, const Protocol& p, const CellParams& base,
                                         unsigned workers)
{
    require(grid.size() >= 1, "grid is empty");
    std::vector<CellResult> out(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t i) { out[i] = measure_cell(grid.cell(i, base), p); });
    return out;
}

// ---------------------------------------------------------------- targets

struct TargetLine {
    std::string id;
    std::string description;
    std::size_t achieved = 0;
    std::size_t total = 0;
    double threshold = 0.0;

    double rate() const { return total ? static_cast<double>(achieved) / static_cast<double>(total) : 0.0; }
    bool pass() const { return total > 0 && rate() >= threshold; }
};

struct TargetReport {
    std::array<TargetLine, 6> lines;
    bool all_pass() const
    {
        return std::all_of(lines.begin(), lines.end(), [](const TargetLine& l) { return l.pass(); });
    }
};

inline TargetReport measure_targets(const std::vector<CellResult>& cells)
{
    TargetReport rep;
    rep.lines = {TargetLine{"T1", "Cooperation emerges and persists", 0, 0, 0.85},
                 TargetLine{"T2", "Defection draws a negative response", 0, 0, 1.0},
                 TargetLine{"T3", "Signal recovers within 2k periods", 0, 0, 0.80},
                 TargetLine{"T4", "High/low dependency response ratio > 1.5", 0, 0, 0.90},
                 TargetLine{"T5", "High trust and high reciprocity reinforce", 0, 0, 0.90},
                 TargetLine{"T6", "Responses bounded by 1", 0, 0, 1.0}};
    for (const auto& c : cells)
        for (std::size_t t = 0; t < 6; ++t) {
            ++rep.lines[t].total;
            rep.lines[t].achieved += c.pass[t] ? 1 : 0;
        }
    return rep;
}

struct DifferentiationStats {
    stats::EffectSize cohens_d;
    stats::TTest ttest;          // high vs low magnitudes, paired by cell
    stats::Wilcoxon wilcoxon;    // ratios against 1.5
    stats::Summary ratio;
};

/// Cells sharing every parameter except d give identical pairs; the grid is used as is.
inline DifferentiationStats differentiation_stats(const std::vector<CellResult>& cells, int replicates,
                                                  std::uint64_t seed)
{
    std::vector<double> hi, lo, ratio;
    for (const auto& c : cells) {
        hi.push_back(c.t4_high);
        lo.push_back(c.t4_low);
        ratio.push_back(c.t4_ratio);
    }
    DifferentiationStats s;
    s.cohens_d = stats::cohens_d(hi, lo);
    s.ttest = stats::paired_ttest(hi, lo);
    s.wilcoxon = stats::wilcoxon_signed_rank(ratio, 1.5);
    s.ratio = stats::summarize(ratio, replicates, seed);
    return s;
}

// ---------------------------------------------------------------- Monte Carlo

struct MonteCarloTrial {
    CellResult cell;
    int clamped = 0;  // parameters pulled back into range
    bool all_targets = false;
};

struct MonteCarloReport {
    std::vector<MonteCarloTrial> trials;
    double perturb = 0.0;
    std::size_t ratio_ok = 0;
    std::size_t all_ok = 0;
    std::size_t clamped_trials = 0;
    stats::Summary ratio;

    double ratio_rate() const { return trials.empty() ? 0.0 : static_cast<double>(ratio_ok) / trials.size(); }
    double all_rate() const { return trials.empty() ? 0.0 : static_cast<double>(all_ok) / trials.size(); }
};

/// Multiplies every real-valued parameter of the cell and protocol by 1 + U(-perturb, perturb),
/// drawing factors in a fixed order from the trial's own stream.
inline MonteCarloTrial monte_carlo_trial(const CellParams& base, const Protocol& proto, double perturb,
                                         std::uint64_t seed)
{
    StreamRng rng(seed, 0);
    MonteCarloTrial t;
    auto jitter = [&](double& v, double lo, double hi) {
        const double f = 1.0 + rng.uniform(-perturb, perturb);
        const double x = v * f;
        const double c = std::clamp(x, lo, hi);
        if (c != x) ++t.clamped;
        v = c;
    };
    constexpr double eps = 1e-9;
    CellParams c = base;
    Protocol p = proto;
    jitter(c.rho0, 0.0, INFINITY);
    jitter(c.eta, 0.0, INFINITY);
    jitter(c.kappa, eps, INFINITY);
    jitter(c.lambda_r, 0.0, INFINITY);
    jitter(c.t0, 0.0, 1.0);
    jitter(c.d, 0.0, 1.0);
    jitter(c.omega_amp, 0.0, INFINITY);
    jitter(c.trust.lambda_plus, eps, 1.0 - eps);
    jitter(c.trust.lambda_minus, eps, 1.0 - eps);
    jitter(c.trust.xi, 0.0, INFINITY);
    jitter(c.trust.mu_r, eps, 1.0 - eps);
    jitter(c.trust.delta_r, eps, 1.0 - eps);
    jitter(c.trust.t_max, eps, 1.0);
    jitter(c.trust.theta_r, 0.0, 1.0);
    jitter(c.adjust_rate, 0.0, 1.0);
    jitter(c.decay, 0.0, 1.0);
    jitter(p.d_high, 0.0, 1.0);
    jitter(p.d_low, 0.0, 1.0);
    t.cell = measure_cell(c, p);
    t.all_targets = std::all_of(t.cell.pass.begin(), t.cell.pass.end(), [](bool b) { return b; });
    return t;
}

inline MonteCarloReport monte_carlo(const CellParams& base, const Protocol& p, int trials, double perturb,
                                    std::uint64_t seed, unsigned workers, int replicates = 10000)
{
    require(trials >= 1, "Monte Carlo needs at least one trial");
    require(perturb >= 0.0 && perturb < 1.0, "perturbation must lie in [0,1)");
    MonteCarloReport rep;
    rep.perturb = perturb;
    rep.trials.resize(static_cast<std::size_t>(trials));
    parallel_for(rep.trials.size(), workers, [&](std::size_t i) {
        rep.trials[i] = monte_carlo_trial(base, p, perturb, derived_seed(seed, i));
    });
    std::vector<double> ratios;
    for (const auto& t : rep.trials) {
        ratios.push_back(t.cell.t4_ratio);
        rep.ratio_ok += t.cell.t4_ratio >= 1.5 ? 1 : 0;
        rep.all_ok += t.all_targets ? 1 : 0;
        rep.clamped_trials += t.clamped > 0 ? 1 : 0;
    }
    rep.ratio = stats::summarize(ratios, replicates, seed);
    return rep;
}

// ---------------------------------------------------------------- output

inline void write_targets_csv(std::ostream& os, const std::vector<CellResult>& cells)
{
    os << "cell,rho0,eta,kappa,k,lambda_r,t0,d,t1_steady,t2_response,t3_tau,t4_high,t4_low,t4_ratio,"
          "t5_hh,t5_lh,t5_hl,t6_max_tanh,T1,T2,T3,T4,T5,T6\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const auto& q = c.params;
        os << i << ',' << fmt(q.rho0) << ',' << fmt(q.eta) << ',' << fmt(q.kappa) << ',' << q.k << ','
           << fmt(q.lambda_r) << ',' << fmt(q.t0) << ',' << fmt(q.d) << ',' << fmt(c.t1_steady) << ','
           << fmt(c.t2_response) << ',' << (c.t3_tau ? std::to_string(*c.t3_tau) : "none") << ','
           << fmt(c.t4_high) << ',' << fmt(c.t4_low) << ',' << fmt(c.t4_ratio) << ',' << fmt(c.t5_hh) << ','
           << fmt(c.t5_lh) << ',' << fmt(c.t5_hl) << ',' << fmt(c.t6_max_tanh);
        for (bool b : c.pass) os << ',' << (b ? 1 : 0);
        os << '\n';
    }
}

/// Reads back what write_targets_csv produced (used by the report command).
inline std::vector<CellResult> read_targets_csv(std::istream& is)
{
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), "empty targets file");
    require(line.rfind("cell,rho0,", 0) == 0, "not a targets file");
    std::vector<CellResult> out;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        require(f.size() == 24, "targets row has the wrong field count");
        CellResult c;
        c.params.rho0 = parse_double(f[1], "rho0");
        c.params.eta = parse_double(f[2], "eta");
        c.params.kappa = parse_double(f[3], "kappa");
        c.params.k = static_cast<int>(parse_int(f[4], "k"));
        c.params.lambda_r = parse_double(f[5], "lambda_r");
        c.params.t0 = parse_double(f[6], "t0");
        c.params.d = parse_double(f[7], "d");
        c.t1_steady = parse_double(f[8], "t1");
        c.t2_response = parse_double(f[9], "t2");
        if (f[10] != "none") c.t3_tau = static_cast<int>(parse_int(f[10], "t3"));
        c.t4_high = parse_double(f[11], "t4_high");
        c.t4_low = parse_double(f[12], "t4_low");
        c.t4_ratio = parse_double(f[13], "t4_ratio");
        c.t5_hh = parse_double(f[14], "t5_hh");
        c.t5_lh = parse_double(f[15], "t5_lh");
        c.t5_hl = parse_double(f[16], "t5_hl");
        c.t6_max_tanh = parse_double(f[17], "t6");
        for (std::size_t t = 0; t < 6; ++t) c.pass[t] = f[18 + t] == "1";
        out.push_back(c);
    }
    return out;
}

inline void write_target_table(std::ostream& os, const TargetReport& rep)
{
    os << "| Target | Description | Achieved | Total | Rate | Threshold | Pass |\n"
          "|---|---|---:|---:|---:|---:|---|\n";
    for (const auto& l : rep.lines)
        os << "| " << l.id << " | " << l.description << " | " << l.achieved << " | " << l.total << " | "
           << fixed(100.0 * l.rate(), 1) << "% | " << fixed(100.0 * l.threshold, 0) << "% | "
           << (l.pass() ? "yes" : "no") << " |\n";
}

inline void write_differentiation_table(std::ostream& os, const DifferentiationStats& s)
{
    os << "| Statistic | Value |\n|---|---:|\n";
    os << "| Cohen's d (high vs low dependency) | " << fixed(s.cohens_d.d, 3) << " ("
       << stats::effect_label(s.cohens_d.d) << ") |\n";
    os << "| Paired t | " << fixed(s.ttest.t, 3) << " (df " << fixed(s.ttest.df, 0) << ") |\n";
    os << "| Paired t p (two-sided) | " << fmt(s.ttest.p_two_sided) << " |\n";
    os << "| Wilcoxon W+ (ratio vs 1.5) | " << fixed(s.wilcoxon.w_plus, 1) << " |\n";
    os << "| Wilcoxon z | " << fixed(s.wilcoxon.z, 3) << " |\n";
    os << "| Wilcoxon p (one-sided) | " << fmt(s.wilcoxon.p_greater) << " |\n";
    os << "| Ratio mean | " << fixed(s.ratio.mean, 3) << " |\n";
    os << "| Ratio sd | " << fixed(s.ratio.sd, 3) << " |\n";
    os << "| Ratio min | " << fixed(s.ratio.min, 3) << " |\n";
    os << "| Ratio 95% bootstrap CI | [" << fixed(s.ratio.ci.lo, 3) << ", " << fixed(s.ratio.ci.hi, 3) << "] |\n";
}

inline void write_monte_carlo_csv(std::ostream& os, const MonteCarloReport& rep)
{
    os << "trial,perturb,rho0,eta,kappa,lambda_r,t0,d,t4_ratio,clamped,T1,T2,T3,T4,T5,T6,all\n";
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        const auto& t = rep.trials[i];
        const auto& q = t.cell.params;
        os << i << ',' << fmt(rep.perturb) << ',' << fmt(q.rho0) << ',' << fmt(q.eta) << ',' << fmt(q.kappa) << ',' << fmt(q.lambda_r) << ','
           << fmt(q.t0) << ',' << fmt(q.d) << ',' << fmt(t.cell.t4_ratio) << ',' << t.clamped;
        for (bool b : t.cell.pass) os << ',' << (b ? 1 : 0);
        os << ',' << (t.all_targets ? 1 : 0) << '\n';
    }
}

/// Rebuilds a report from write_monte_carlo_csv output; the ratio summary is recomputed.
inline MonteCarloReport read_monte_carlo_csv(std::istream& is, int replicates, std::uint64_t seed)
{
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), "empty Monte Carlo file");
    require(line.rfind("trial,perturb,", 0) == 0, "not a Monte Carlo file");
    MonteCarloReport rep;
    std::vector<double> ratios;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        require(f.size() == 17, "Monte Carlo row has the wrong field count");
        MonteCarloTrial t;
        rep.perturb = parse_double(f[1], "perturb");
        auto& q = t.cell.params;
        q.rho0 = parse_double(f[2], "rho0");
        q.eta = parse_double(f[3], "eta");
        q.kappa = parse_double(f[4], "kappa");
        q.lambda_r = parse_double(f[5], "lambda_r");
        q.t0 = parse_double(f[6], "t0");
        q.d = parse_double(f[7], "d");
        t.cell.t4_ratio = parse_double(f[8], "t4_ratio");
        t.clamped = static_cast<int>(parse_int(f[9], "clamped"));
        for (std::size_t k = 0; k < 6; ++k) t.cell.pass[k] = f[10 + k] == "1";
        t.all_targets = f[16] == "1";
        ratios.push_back(t.cell.t4_ratio);
        rep.ratio_ok += t.cell.t4_ratio >= 1.5 ? 1 : 0;
        rep.all_ok += t.all_targets ? 1 : 0;
        rep.clamped_trials += t.clamped > 0 ? 1 : 0;
        rep.trials.push_back(t);
    }
    require(!rep.trials.empty(), "Monte Carlo file has no trials");
    rep.ratio = stats::summarize(ratios, replicates, seed);
    return rep;
}

inline void write_monte_carlo_table(std::ostream& os, const MonteCarloReport& rep)
{
    os << "| Quantity | Value |\n|---|---:|\n";
    os << "| Trials | " << rep.trials.size() << " |\n";
    os << "| Perturbation | +/-" << fixed(100.0 * rep.perturb, 1) << "% |\n";
    os << "| Ratio >= 1.5 | " << fixed(100.0 * rep.ratio_rate(), 1) << "% |\n";
    os << "| All six targets | " << fixed(100.0 * rep.all_rate(), 1) << "% |\n";
    os << "| Ratio mean | " << fixed(rep.ratio.mean, 3) << " |\n";
    os << "| Ratio min | " << fixed(rep.ratio.min, 3) << " |\n";
    os << "| Ratio 95% bootstrap CI | [" << fixed(rep.ratio.ci.lo, 3) << ", " << fixed(rep.ratio.ci.hi, 3) << "] |\n";
    os << "| Trials with clamped parameters | " << rep.clamped_trials << " |\n";
}

}  // namespace coop

#endif  // COOP_SWEEP_HPP
