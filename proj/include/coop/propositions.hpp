#ifndef COOP_PROPOSITIONS_HPP
#define COOP_PROPOSITIONS_HPP

#include <cmath>
#include <optional>

#include "coop/protocol.hpp"
#include "coop/solver.hpp"

namespace coop {

/// Two-actor prisoner's-dilemma economy: strong synergy, negligible private value.
/// Without reciprocity investment unravels to zero; with it full investment is sustained.
inline UtilityContext pd_context(double rho0)
{
    EconomyParams e = EconomyParams::symmetric(2, 0.0, 10.0);
    e.theta_v = 0.05;
    e.gamma = 2.0;
    ReciprocityParams r{rho0, 1.0, 1.0, 5, 1.0, 1.0};
    return make_context(e, InterdependenceMatrix::uniform(2, 0.5), r, 0.7, 1.0);
}

/// Economy with an interior stationary equilibrium, used for comparative statics.
inline UtilityContext interior_context(double rho0 = 1.0, double trust = 0.7, double lambda_r = 1.0)
{
    EconomyParams e = EconomyParams::symmetric(2, 0.0, 10.0);
    e.theta_v = 0.65;
    e.gamma = 0.1;
    ReciprocityParams r{rho0, 1.0, 1.0, 5, lambda_r, 1.0};
    return make_context(e, InterdependenceMatrix::uniform(2, 0.5), r, trust, 1.0);
}

inline SolverConfig precise_solver()
{
    SolverConfig s;
    s.grid_points = 201;
    s.refine = true;
    s.refine_tol = 1e-9;
    s.tolerance = 1e-7;
    s.max_iters = 2000;
    return s;
}

/// Signal recovery time after a single defection, on the reference cell with the given k and kappa.
inline std::optional<int> measure_forgiveness_time(int k, double kappa, double defection_magnitude,
                                                   CellParams cell = {}, Protocol p = {})
{
    cell.k = k;
    cell.kappa = kappa;
    p.defection = defection_magnitude;
    return defection_run(cell, p).tau;
}

struct CrossPartial {
    double value = 0.0;
    bool conclusive = true;
};

/// Central finite difference of the stationary action of actor 0 in (trust, rho0).
inline CrossPartial cross_partial_check(double trust, double rho0, double d_t, double d_rho, double lambda_r = 1.0)
{
    CrossPartial out;
    auto a_star = [&](double t, double r) {
        UtilityContext ctx = interior_context(r, t, lambda_r);
        const EquilibriumResult eq = solve_stationary(ctx, {1.0, 1.0}, precise_solver());
        if (!eq.converged) out.conclusive = false;
        return eq.actions[0];
    };
    const double pp = a_star(trust + d_t, rho0 + d_rho);
    const double pm = a_star(trust + d_t, rho0 - d_rho);
    const double mp = a_star(trust - d_t, rho0 + d_rho);
    const double mm = a_star(trust - d_t, rho0 - d_rho);
    out.value = (pp - pm - mp + mm) / (4.0 * d_t * d_rho);
    return out;
}

}  // namespace coop

#endif  // COOP_PROPOSITIONS_HPP
