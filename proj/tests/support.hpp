// Oracles and brute-force checks shared by the unit tests and the acceptance binary.
#ifndef COOP_TESTS_SUPPORT_HPP
#define COOP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "coop/rng.hpp"
#include "coop/solver.hpp"
#include "coop/trust.hpp"
#include "coop/utility.hpp"

namespace coop::testing {

inline int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

/// Random two-actor economy with trust, reciprocity and a norm.
inline UtilityContext random_context(StreamRng& rng)
{
    EconomyParams e = EconomyParams::symmetric(2, rng.uniform(0.0, 2.0), rng.uniform(2.0, 10.0));
    e.theta_v = rng.uniform(0.2, 2.0);
    e.gamma = rng.uniform(0.0, 1.5);
    const double share = rng.uniform(0.3, 0.7);
    e.alpha = {share, 1.0 - share};
    InterdependenceMatrix d(2);
    d.set(0, 1, rng.uniform(0.1, 0.9));
    d.set(1, 0, rng.uniform(0.1, 0.9));
    ReciprocityParams r{rng.uniform(0.0, 1.5), rng.uniform(0.5, 1.5), rng.uniform(0.5, 2.0), 5, rng.uniform(0.0, 1.0),
                        rng.uniform(0.0, 1.0)};
    UtilityContext ctx = make_context(e, d, r, 0.5, rng.uniform(0.0, 1.0));
    ctx.trust(0, 1) = rng.uniform(0.2, 0.9);
    ctx.trust(1, 0) = rng.uniform(0.2, 0.9);
    ctx.norm = {rng.uniform(0.0, e.a_max[0]), rng.uniform(0.0, e.a_max[1])};
    return ctx;
}

/// Every pure Nash equilibrium of the joint grid, found by exhaustive search.
inline std::vector<ActionProfile> grid_nash(const Objective& u, const ActionProfile& a_max, int points)
{
    std::vector<std::vector<double>> grid(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (int g = 0; g < points; ++g) grid[i].push_back(grid_point(a_max[i], points, g));
    std::vector<ActionProfile> out;
    for (double x : grid[0])
        for (double y : grid[1]) {
            const ActionProfile a{x, y};
            bool nash = true;
            for (std::size_t i = 0; i < 2 && nash; ++i) {
                const double here = u(i, a);
                for (double dev : grid[i]) {
                    ActionProfile b = a;
                    b[i] = dev;
                    if (u(i, b) > here) {
                        nash = false;
                        break;
                    }
                }
            }
            if (nash) out.push_back(a);
        }
    return out;
}

struct OracleOutcome {
    int cases = 0;
    int agree = 0;
    int unconverged = 0;
    int no_pure_nash = 0;
};

/// Solver against exhaustive Nash search on random two-actor scenarios.
inline OracleOutcome solver_oracle(int cases, int points, std::uint64_t seed)
{
    OracleOutcome o;
    StreamRng rng(seed, 0);
    SolverConfig cfg;
    cfg.grid_points = points;
    cfg.max_iters = 500;
    for (int c = 0; c < cases; ++c) {
        const UtilityContext ctx = random_context(rng);
        const ActionProfile start{grid_point(ctx.econ.a_max[0], points, static_cast<int>(rng.below(points))),
                                  grid_point(ctx.econ.a_max[1], points, static_cast<int>(rng.below(points)))};
        const EquilibriumResult eq = solve_equilibrium(ctx, start, cfg);
        const auto nash = grid_nash(decision_objective(ctx), ctx.econ.a_max, points);
        ++o.cases;
        if (!eq.converged) ++o.unconverged;
        if (nash.empty()) ++o.no_pure_nash;
        const double step0 = ctx.econ.a_max[0] / (points - 1);
        const double step1 = ctx.econ.a_max[1] / (points - 1);
        for (const auto& n : nash)
            if (eq.converged && std::fabs(n[0] - eq.actions[0]) <= step0 * (1 + 1e-9) &&
                std::fabs(n[1] - eq.actions[1]) <= step1 * (1 + 1e-9)) {
                ++o.agree;
                break;
            }
    }
    return o;
}

// ---------------------------------------------------------------- brute-force invariant suites

struct SuiteResult {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void fail(const std::string& what)
    {
        if (failures++ == 0) first_failure = what;
    }
    bool ok() const { return cases > 0 && failures == 0; }
};

/// Library moving average against a direct slice mean of the recorded history.
inline SuiteResult moving_average_suite(int windows, std::uint64_t seed)
{
    SuiteResult r;
    StreamRng rng(seed, 1);
    for (int w = 0; w < windows; ++w, ++r.cases) {
        const std::size_t len = 1 + rng.below(40);
        const int k = 1 + static_cast<int>(rng.below(12));
        History h(1);
        std::vector<double> raw;
        for (std::size_t p = 0; p < len; ++p) {
            raw.push_back(rng.uniform(0.0, 20.0));
            h.push({raw.back()});
        }
        const std::size_t t = 2 + rng.below(len);  // 2 .. len+1
        const std::size_t lo = t - 1 >= static_cast<std::size_t>(k) ? t - 1 - k : 0;  // 0-based first index
        const double expect = std::accumulate(raw.begin() + lo, raw.begin() + (t - 1), 0.0) /
                              static_cast<double>(t - 1 - lo);
        const auto got = moving_average(h, 0, t, k);
        if (!got || std::fabs(*got - expect) > 1e-12 * std::max(1.0, std::fabs(expect)))
            r.fail("window t=" + std::to_string(t) + " k=" + std::to_string(k));
    }
    return r;
}

/// Oddness, strict bound and monotonicity of the bounded response.
inline SuiteResult tanh_suite(int points, std::uint64_t seed)
{
    SuiteResult r;
    StreamRng rng(seed, 2);
    for (int n = 0; n < points; ++n, ++r.cases) {
        const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
        const double s = rng.uniform(-1.0, 1.0) * scale;
        const double kappa = std::pow(10.0, rng.uniform(-2.0, 1.5));
        const double f = bounded_response(s, kappa);
        const double g = bounded_response(-s, kappa);
        const double h = bounded_response(s + std::fabs(s) * 1e-3 + 1e-9, kappa);
        if (f != -g) r.fail("odd at s=" + std::to_string(s));
        if (!(std::fabs(f) <= 1.0)) r.fail("bound at s=" + std::to_string(s));
        if (h < f) r.fail("monotone at s=" + std::to_string(s));
    }
    return r;
}

/// Range invariants of trust and reputation along random signal sequences.
inline SuiteResult trust_suite(int sequences, int length, std::uint64_t seed)
{
    SuiteResult r;
    StreamRng rng(seed, 3);
    for (int q = 0; q < sequences; ++q, ++r.cases) {
        TrustParams p;
        p.t_max = rng.uniform(0.5, 1.0);
        p.theta_r = rng.uniform(0.0, 1.0);
        const double d = rng.uniform(0.0, 1.0);
        DyadState st{rng.uniform(0.0, 1.0), 0.0, 0.0};
        st.trust = std::min(st.trust, trust_ceiling(0.0, p.t_max, p.theta_r));
        for (int t = 0; t < length; ++t) {
            const double s = rng.uniform(-2.0, 2.0);
            const DyadState nx = update_trust(st, s, d, p);
            const double cap = trust_ceiling(nx.reputation, p.t_max, p.theta_r);
            if (nx.reputation < 0.0 || nx.reputation > 1.0) r.fail("reputation out of [0,1]");
            if (nx.trust < 0.0 || nx.trust > cap + 1e-15) r.fail("trust outside [0, ceiling]");
            if (s < 0.0 && nx.trust > st.trust) r.fail("trust rose on a negative signal");
            if (s < 0.0 && nx.reputation < st.reputation) r.fail("reputation fell on a negative signal");
            st = nx;
        }
    }
    return r;
}

/// The utility breakdown components add up to the total.
inline SuiteResult utility_suite(int states, std::uint64_t seed)
{
    SuiteResult r;
    StreamRng rng(seed, 4);
    for (int n = 0; n < states; ++n, ++r.cases) {
        const std::size_t actors = 2 + rng.below(4);
        EconomyParams e = EconomyParams::symmetric(actors, rng.uniform(0.0, 5.0), 10.0);
        e.theta_v = rng.uniform(0.1, 3.0);
        e.gamma = rng.uniform(0.0, 2.0);
        e.value_form = rng.uniform() < 0.5 ? ValueForm::logarithmic : ValueForm::power;
        InterdependenceMatrix d(actors);
        for (std::size_t i = 0; i < actors; ++i)
            for (std::size_t j = 0; j < actors; ++j)
                if (i != j) d.set(i, j, rng.uniform());
        ReciprocityParams rp{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.1, 3.0), 5,
                             rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
        UtilityContext ctx = make_context(e, d, rp, rng.uniform(), rng.uniform(0.0, 2.0));
        ActionProfile a(actors);
        for (std::size_t i = 0; i < actors; ++i) {
            a[i] = rng.uniform(0.0, 10.0);
            ctx.norm[i] = rng.uniform(0.0, 10.0);
        }
        for (std::size_t i = 0; i < actors; ++i) {
            const UtilityBreakdown u = complete_utility(i, a, ctx);
            const double sum = u.base + u.interdep + u.trust_mod + u.recip_mod;
            if (std::fabs(sum - u.total) > 1e-12 * std::max(1.0, std::fabs(u.total))) r.fail("sum identity");
        }
    }
    return r;
}

}  // namespace coop::testing

#endif  // COOP_TESTS_SUPPORT_HPP
