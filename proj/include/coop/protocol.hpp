#ifndef COOP_PROTOCOL_HPP
#define COOP_PROTOCOL_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "coop/simulation.hpp"

namespace coop {

/// Parameters of one two-actor validation cell.
struct CellParams {
    double rho0 = 1.0;
    double eta = 1.0;
    double kappa = 1.0;
    int k = 5;
    double lambda_r = 1.0;
    double t0 = 0.7;
    double d = 0.5;
    double omega_amp = 1.0;
    TrustParams trust;  // t0 above overrides trust.t0
    double adjust_rate = 0.12;
    double decay = 0.05;
};

/// Fixed experimental procedure shared by every cell.
struct Protocol {
    int warmup = 30;
    double initial = 0.5;          // initial actions and baseline of the defection run
    double defection = 0.5;        // size of the forced drop
    std::size_t defector = 1;
    double overture = 0.05;        // opening offer above baseline in the emergence run
    double t1_margin = 0.05;
    int t1_tail = 5;
    double recovery_tol = 0.02;    // fraction of a_max
    int recovery_hold = 3;
    double d_high = 0.8;
    double d_low = 0.2;
    double t5_trust_high = 0.9;
    double t5_trust_low = 0.3;
    double t5_rho_high = 1.0;      // sweep sets these to the grid's extreme levels
    double t5_rho_low = 0.2;
    double a_max = 1.0;

    int defection_period() const { return warmup + 1; }
};

inline Scenario two_actor_scenario(const CellParams& c, const Protocol& p, double start, double baseline)
{
    Scenario sc;
    sc.labels = {"0", "1"};
    sc.dep = InterdependenceMatrix::uniform(2, c.d);
    sc.recip = ReciprocityParams{c.rho0, c.eta, c.kappa, c.k, c.lambda_r, c.omega_amp};
    sc.trust = c.trust;
    sc.trust.t0 = c.t0;
    sc.econ.a_max = {p.a_max, p.a_max};
    sc.initial_actions = {start, start};
    sc.initial_baseline = {baseline, baseline};
    return sc;
}

struct DefectionOutcome {
    double response = 0.0;       // observer 0's gated term toward the defector in the defection period
    std::optional<int> tau;      // signal recovery time; empty if it never recovers in the window
    double max_abs_tanh = 0.0;
    Trajectory trajectory;
};

/// Warm-up, one forced defection, recovery window of 2k+5 periods. Moving-average signals.
inline DefectionOutcome defection_run(const CellParams& c, const Protocol& p, std::optional<double> d_override = {})
{
    CellParams cell = c;
    if (d_override) cell.d = *d_override;
    const Scenario sc = two_actor_scenario(cell, p, p.initial, p.initial);
    SimConfig sim;
    sim.horizon = p.defection_period() + 2 * cell.k + 5;
    sim.noise_sigma = 0.0;
    sim.adjust_rate = cell.adjust_rate;
    sim.decay = cell.decay;
    sim.signal_ref = BaselineStrategy::moving_average;
    sim.anchor = BaselineStrategy::moving_average;
    if (p.defection > 0.0) sim.shocks = {Shock{p.defection_period(), p.defector, -p.defection}};

    DefectionOutcome out;
    out.trajectory = run(sc, sim);
    const Trajectory& tr = out.trajectory;
    const std::size_t obs = p.defector == 0 ? 1 : 0;
    const int d0 = p.defection_period();
    out.response = tr.dyad(d0, obs, p.defector).recip_term;

    for (int t = 1; t <= tr.periods(); ++t)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                if (i != j)
                    out.max_abs_tanh = std::max(out.max_abs_tanh,
                                                std::fabs(bounded_response(tr.dyad(t, i, j).signal, cell.kappa)));

    if (p.defection == 0.0) {
        out.tau = 0;
        return out;
    }
    const double tol = p.recovery_tol * p.a_max;
    for (int tau = 1; d0 + tau + p.recovery_hold - 1 <= tr.periods(); ++tau) {
        bool ok = true;
        for (int h = 0; h < p.recovery_hold && ok; ++h)
            ok = std::fabs(tr.dyad(d0 + tau + h, obs, p.defector).signal) < tol;
        if (ok) {
            out.tau = tau;
            break;
        }
    }
    return out;
}

struct EmergenceOutcome {
    double tail_mean = 0.0;    // both actors, last t1_tail periods
    double warmup_mean = 0.0;  // both actors, all periods
    double max_abs_tanh = 0.0;
};

/// Opening overture above a fixed baseline; does reciprocity sustain it?
inline EmergenceOutcome emergence_run(const CellParams& c, const Protocol& p)
{
    const Scenario sc = two_actor_scenario(c, p, p.initial + p.overture, p.initial);
    SimConfig sim;
    sim.horizon = p.warmup;
    sim.noise_sigma = 0.0;
    sim.adjust_rate = c.adjust_rate;
    sim.decay = c.decay;
    sim.signal_ref = BaselineStrategy::fixed;
    sim.anchor = BaselineStrategy::fixed;
    const Trajectory tr = run(sc, sim);

    EmergenceOutcome out;
    double all = 0.0, tail = 0.0;
    const int first_tail = tr.periods() - p.t1_tail + 1;
    for (int t = 1; t <= tr.periods(); ++t) {
        const double m = 0.5 * (tr.action(t, 0) + tr.action(t, 1));
        all += m;
        if (t >= first_tail) tail += m;
        for (std::size_t i = 0; i < 2; ++i)
            out.max_abs_tanh = std::max(out.max_abs_tanh,
                                        std::fabs(bounded_response(tr.dyad(t, i, 1 - i).signal, c.kappa)));
    }
    out.warmup_mean = all / tr.periods();
    out.tail_mean = tail / std::min(p.t1_tail, tr.periods());
    return out;
}

}  // namespace coop

#endif  // COOP_PROTOCOL_HPP
