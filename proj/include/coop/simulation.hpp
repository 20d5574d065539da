#ifndef COOP_SIMULATION_HPP
#define COOP_SIMULATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "coop/config.hpp"
#include "coop/format.hpp"
#include "coop/model.hpp"
#include "coop/reciprocity.hpp"
#include "coop/rng.hpp"
#include "coop/solver.hpp"
#include "coop/trust.hpp"
#include "coop/utility.hpp"

namespace coop {

enum class Mode { adjustment, best_response };

/// Additive action perturbation landing in the recorded action of `period`, applied before clipping.
struct Shock {
    int period = 0;
    std::size_t target = 0;
    double delta = 0.0;
};

struct SimConfig {
    int horizon = 66;
    Mode mode = Mode::adjustment;
    double adjust_rate = 0.12;
    double decay = 0.05;
    double baseline_rate = 0.08;
    double noise_sigma = 0.02;
    std::uint64_t seed = 0;
    std::vector<Shock> shocks;
    BaselineStrategy signal_ref = BaselineStrategy::adaptive;  // reference for partners' signals
    BaselineStrategy anchor = BaselineStrategy::adaptive;      // reference of the decay term
    SolverConfig solver;

    void validate() const
    {
        require(horizon >= 1, "horizon must be at least 1");
        require(adjust_rate >= 0.0 && adjust_rate <= 1.0, "adjust_rate must lie in [0,1]");
        require(decay >= 0.0 && decay <= 1.0, "decay must lie in [0,1]");
        require(baseline_rate >= 0.0 && baseline_rate <= 1.0, "baseline_rate must lie in [0,1]");
        require(noise_sigma >= 0.0, "noise_sigma must be non-negative");
        solver.validate();
    }
};

struct Scenario {
    std::vector<std::string> labels;
    InterdependenceMatrix dep;
    ReciprocityParams recip;
    TrustParams trust;
    EconomyParams econ;  // a_max always used; the rest only in best-response mode
    ActionProfile initial_actions;
    ActionProfile initial_baseline;
    bool symmetric_rho = false;

    std::size_t actors() const { return initial_actions.size(); }

    void validate(Mode mode) const
    {
        const std::size_t n = actors();
        require(n >= 1, "scenario needs at least one actor");
        require(dep.size() == n, "interdependence matrix does not match actor count");
        require(initial_baseline.size() == n, "initial baseline does not match actor count");
        require(econ.a_max.size() == n, "action bounds do not match actor count");
        require(labels.empty() || labels.size() == n, "actor labels do not match actor count");
        recip.validate();
        trust.validate();
        if (mode == Mode::best_response) econ.validate();
        for (std::size_t i = 0; i < n; ++i) {
            require(econ.a_max[i] > 0.0, "action bounds must be positive");
            require(initial_actions[i] >= 0.0 && initial_actions[i] <= econ.a_max[i],
                    "initial actions must lie within bounds");
        }
    }
};

struct DyadRecord {
    double trust = 0.0;       // in effect during the period
    double reputation = 0.0;  // in effect during the period
    double signal = 0.0;
    double recip_term = 0.0;
};

struct Trajectory {
    std::size_t actors = 0;
    std::vector<ActionProfile> actions;         // actions[t-1] = profile of period t
    std::vector<std::vector<DyadRecord>> dyads; // dyads[t-1][i*n+j]
    std::vector<bool> solver_converged;         // per period, best-response mode only

    int periods() const { return static_cast<int>(actions.size()); }
    double action(int period, std::size_t i) const { return actions.at(period - 1).at(i); }
    const DyadRecord& dyad(int period, std::size_t i, std::size_t j) const
    {
        return dyads.at(period - 1).at(i * actors + j);
    }
    /// Cross-actor mean action per period.
    std::vector<double> mean_action() const
    {
        std::vector<double> out;
        for (const auto& p : actions) {
            double s = 0.0;
            for (double x : p) s += x;
            out.push_back(s / static_cast<double>(p.size()));
        }
        return out;
    }
};

namespace detail {

inline double reference(BaselineStrategy how, const History& h, std::size_t j, std::size_t t, int k, double fixed,
                        double adaptive)
{
    switch (how) {
    case BaselineStrategy::fixed: return fixed;
    case BaselineStrategy::adaptive: return adaptive;
    case BaselineStrategy::moving_average: break;
    }
    return moving_average(h, j, t, k).value_or(fixed);
}

}  // namespace detail

/// Gaussian noise of actor i entering the action of `period`. Stream = actor index, counter = period.
inline double action_noise(const SimConfig& sim, std::size_t i, int period)
{
    if (sim.noise_sigma == 0.0) return 0.0;
    return sim.noise_sigma * counter_normal(sim.seed, i, static_cast<std::uint64_t>(period));
}

/// Mutable engine state. Exposed so protocols can single-step and inspect it.
class Engine {
public:
    Engine(const Scenario& sc, const SimConfig& sim) : sc_(sc), sim_(sim), hist_(sc.actors())
    {
        sc_.validate(sim_.mode);
        sim_.validate();
        for (const auto& s : sim_.shocks)
        {
            require(s.target < sc_.actors(), "shock refers to an unknown actor");
            require(s.period >= 2 && s.period <= sim_.horizon, "shock period must lie in [2, horizon]");
        }
        const std::size_t n = sc_.actors();
        rho_ = sensitivity_matrix(sc_.dep, sc_.recip, sc_.symmetric_rho);
        dyad_.assign(n * n, DyadState{});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dyad_[i * n + j] = DyadState{sc_.trust.t0, 0.0, sc_.initial_baseline[j]};
        anchor_ = sc_.initial_baseline;
        a_ = sc_.initial_actions;
    }

    std::size_t actors() const { return sc_.actors(); }
    int period() const { return t_; }
    const ActionProfile& actions() const { return a_; }
    const DyadState& dyad(std::size_t i, std::size_t j) const { return dyad_[i * actors() + j]; }
    const SquareMatrix& rho() const { return rho_; }

    /// Records the current period into `out`, then (unless it is the last) advances to the next.
    bool step(Trajectory& out)
    {
        const std::size_t n = actors();
        ++t_;
        hist_.push(a_);
        const auto t = static_cast<std::size_t>(t_);
        const int k = sc_.recip.memory_k;

        SquareMatrix s(n);
        std::vector<DyadRecord> rec(n * n);
        std::vector<double> push(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const DyadState& d = dyad_[i * n + j];
                const double ref = detail::reference(sim_.signal_ref, hist_, j, t, k, sc_.initial_baseline[j],
                                                     d.baseline);
                s(i, j) = cooperation_signal(a_[j], ref);
                const double g = gated_reciprocity_term(d.trust, sc_.dep(i, j), sc_.recip.omega_amp,
                                                        sc_.recip.lambda_r, rho_(i, j), s(i, j), sc_.recip.kappa);
                push[i] += g;
                rec[i * n + j] = DyadRecord{d.trust, d.reputation, s(i, j), g};
            }
        }
        out.actors = n;
        out.actions.push_back(a_);
        out.dyads.push_back(std::move(rec));
        if (t_ >= sim_.horizon) return false;

        ActionProfile next = a_;
        if (sim_.mode == Mode::adjustment) {
            for (std::size_t i = 0; i < n; ++i) {
                const double anchor = detail::reference(sim_.anchor, hist_, i, t, k, sc_.initial_baseline[i],
                                                        anchor_[i]);
                next[i] = a_[i] + sim_.adjust_rate * push[i] - sim_.decay * (a_[i] - anchor);
            }
        }

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) dyad_[i * n + j] = update_trust(dyad_[i * n + j], s(i, j), sc_.dep(i, j), sc_.trust);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                DyadState& d = dyad_[i * n + j];
                d.baseline += sim_.baseline_rate * (a_[j] - d.baseline);
            }
            anchor_[i] += sim_.baseline_rate * (a_[i] - anchor_[i]);
        }

        if (sim_.mode == Mode::best_response) {
            UtilityContext ctx;
            ctx.econ = sc_.econ;
            ctx.dep = sc_.dep;
            ctx.rho = rho_;
            ctx.recip = sc_.recip;
            ctx.lambda_t = sc_.trust.lambda_t;
            ctx.trust = SquareMatrix(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) ctx.trust(i, j) = dyad_[i * n + j].trust;
            ctx.norm.resize(n);
            for (std::size_t j = 0; j < n; ++j)
                ctx.norm[j] = detail::reference(sim_.signal_ref, hist_, j, t + 1, k, sc_.initial_baseline[j],
                                                anchor_[j]);
            const EquilibriumResult eq = solve_equilibrium(ctx, a_, sim_.solver);
            next = eq.actions;
            out.solver_converged.push_back(eq.converged);
        }

        for (std::size_t i = 0; i < n; ++i) next[i] += action_noise(sim_, i, t_ + 1);
        for (const auto& sh : sim_.shocks)
            if (sh.period == t_ + 1) next[sh.target] += sh.delta;
        for (std::size_t i = 0; i < n; ++i) next[i] = std::clamp(next[i], 0.0, sc_.econ.a_max[i]);
        a_ = std::move(next);
        return true;
    }

private:
    Scenario sc_;
    SimConfig sim_;
    History hist_;
    SquareMatrix rho_;
    std::vector<DyadState> dyad_;
    ActionProfile anchor_;
    ActionProfile a_;
    int t_ = 0;
};

inline Trajectory run(const Scenario& sc, const SimConfig& sim)
{
    Engine e(sc, sim);
    Trajectory tr;
    while (e.step(tr)) {
    }
    return tr;
}

inline std::string actor_label(const Scenario& sc, std::size_t i)
{
    return sc.labels.empty() ? std::to_string(i) : sc.labels[i];
}

inline void write_actions_csv(std::ostream& os, const Trajectory& tr, const Scenario& sc)
{
    os << "period,actor,action\n";
    for (int t = 1; t <= tr.periods(); ++t)
        for (std::size_t i = 0; i < tr.actors; ++i)
            os << t << ',' << actor_label(sc, i) << ',' << fmt(tr.action(t, i)) << '\n';
}

/// Reads write_actions_csv output back into an action-only trajectory.
inline Trajectory read_actions_csv(std::istream& is, const std::vector<std::string>& labels)
{
    std::string line;
    require(static_cast<bool>(std::getline(is, line)) && trim(line) == "period,actor,action", "not an actions file");
    Trajectory tr;
    tr.actors = labels.size();
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        require(f.size() == 3, "actions row has the wrong field count");
        const auto t = static_cast<std::size_t>(parse_int(f[0], "period"));
        const auto it = std::find(labels.begin(), labels.end(), f[1]);
        require(it != labels.end(), "unknown actor '" + f[1] + "' in actions file");
        require(t >= 1 && t <= tr.actions.size() + 1, "actions file periods out of order");
        if (t > tr.actions.size()) tr.actions.emplace_back(tr.actors, 0.0);
        tr.actions[t - 1][static_cast<std::size_t>(it - labels.begin())] = parse_double(f[2], "action");
    }
    return tr;
}

inline void write_dyads_csv(std::ostream& os, const Trajectory& tr, const Scenario& sc)
{
    os << "period,i,j,trust,reputation,signal,recip_term\n";
    for (int t = 1; t <= tr.periods(); ++t)
        for (std::size_t i = 0; i < tr.actors; ++i)
            for (std::size_t j = 0; j < tr.actors; ++j) {
                if (i == j) continue;
                const DyadRecord& d = tr.dyad(t, i, j);
                os << t << ',' << actor_label(sc, i) << ',' << actor_label(sc, j) << ',' << fmt(d.trust) << ','
                   << fmt(d.reputation) << ',' << fmt(d.signal) << ',' << fmt(d.recip_term) << '\n';
            }
}

}  // namespace coop

#endif  // COOP_SIMULATION_HPP
