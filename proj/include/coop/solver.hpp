#ifndef COOP_SOLVER_HPP
#define COOP_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "coop/model.hpp"
#include "coop/utility.hpp"

namespace coop {

enum class UpdateOrder { jacobi, gauss_seidel };

struct SolverConfig {
    int max_iters = 1000;
    double tolerance = 1e-6;
    int grid_points = 201;      // per actor, spanning [0, a_max]
    bool refine = false;        // golden-section polish inside the winning grid cell
    double refine_tol = 1e-10;
    UpdateOrder order = UpdateOrder::jacobi;
    bool cycle_fallback = true;  // a Jacobi two-cycle switches the rest of the solve to sequential updates

    void validate() const
    {
        require(max_iters >= 1, "solver needs at least one iteration");
        require(tolerance > 0.0, "solver tolerance must be positive");
        require(grid_points >= 2, "action grid needs at least two points");
        require(refine_tol > 0.0, "refinement tolerance must be positive");
    }
};

struct EquilibriumResult {
    ActionProfile actions;
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    bool fell_back = false;  // Jacobi cycled and the solve finished with sequential updates
};

/// Utility of actor i at profile a.
using Objective = std::function<double(std::size_t i, const ActionProfile& a)>;

inline double grid_point(double hi, int points, int idx)
{
    return idx == points - 1 ? hi : hi * static_cast<double>(idx) / static_cast<double>(points - 1);
}

/// Grid scan of f over [0, hi]. Ties go to the smallest point.
template <class F>
double grid_argmax(F&& f, double hi, int points)
{
    double best_x = 0.0;
    double best_v = f(0.0);
    for (int g = 1; g < points; ++g) {
        const double x = grid_point(hi, points, g);
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    return best_x;
}

/// Golden-section search for a maximum of f on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol)
{
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

inline double best_response(std::size_t i, const ActionProfile& profile, const Objective& u, double a_max,
                            const SolverConfig& cfg)
{
    ActionProfile trial = profile;
    auto f = [&](double x) {
        trial[i] = x;
        return u(i, trial);
    };
    const double g = grid_argmax(f, a_max, cfg.grid_points);
    if (!cfg.refine) return g;

    const double step = a_max / static_cast<double>(cfg.grid_points - 1);
    const double x = golden_max(f, std::max(0.0, g - step), std::min(a_max, g + step), cfg.refine_tol);
    // Keep the refined point only if it is at least as good as the grid winner.
    return f(x) >= f(g) ? x : g;
}

inline double sup_change(const ActionProfile& a, const ActionProfile& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

/// Iterated best response from a warm start.
inline EquilibriumResult solve_equilibrium(const Objective& u, const ActionProfile& a_max, const ActionProfile& start,
                                           const SolverConfig& cfg)
{
    cfg.validate();
    require(a_max.size() == start.size(), "start profile and action bounds disagree on actor count");
    EquilibriumResult res;
    ActionProfile cur = start;
    ActionProfile before;  // iterate preceding cur
    UpdateOrder order = cfg.order;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        ActionProfile next = cur;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const ActionProfile& read = order == UpdateOrder::jacobi ? cur : next;
            next[i] = best_response(i, read, u, a_max[i], cfg);
        }
        res.residual = sup_change(next, cur);
        res.iterations = it;
        if (order == UpdateOrder::jacobi && cfg.cycle_fallback && res.residual >= cfg.tolerance &&
            !before.empty() && sup_change(next, before) < cfg.tolerance) {
            order = UpdateOrder::gauss_seidel;
            res.fell_back = true;
        }
        before = cur;
        cur = std::move(next);
        if (res.residual < cfg.tolerance) {
            res.converged = true;
            break;
        }
    }
    res.actions = cur;
    return res;
}

inline Objective decision_objective(const UtilityContext& ctx)
{
    return [&ctx](std::size_t i, const ActionProfile& a) { return decision_utility(i, a, ctx); };
}

inline EquilibriumResult solve_equilibrium(const UtilityContext& ctx, const ActionProfile& start,
                                           const SolverConfig& cfg)
{
    ctx.validate();
    return solve_equilibrium(decision_objective(ctx), ctx.econ.a_max, start, cfg);
}

/// Steady state where each actor's norm equals its own action: a_i = BR_i(a_-i | norm = a).
/// Each step moves `damping` of the way toward the best response; values below 1 tame oscillation.
inline EquilibriumResult solve_stationary(UtilityContext ctx, const ActionProfile& start, const SolverConfig& cfg,
                                          double damping = 1.0)
{
    require(damping > 0.0 && damping <= 1.0, "damping must lie in (0,1]");
    ctx.validate();
    cfg.validate();
    EquilibriumResult res;
    ActionProfile cur = start;
    const Objective u = decision_objective(ctx);
    for (int it = 1; it <= cfg.max_iters; ++it) {
        ctx.norm = cur;
        ActionProfile next = cur;
        for (std::size_t i = 0; i < cur.size(); ++i)
            next[i] = cur[i] + damping * (best_response(i, cur, u, ctx.econ.a_max[i], cfg) - cur[i]);
        res.residual = sup_change(next, cur);
        res.iterations = it;
        cur = std::move(next);
        if (res.residual < cfg.tolerance) {
            res.converged = true;
            break;
        }
    }
    res.actions = cur;
    return res;
}

/// Reciprocity threshold above which cooperation is sustainable.
inline double critical_rho(double c_prime, double lambda_r, double t_star, double omega_amp, double d_ij,
                           double kappa)
{
    const double denom = lambda_r * t_star * (1.0 + omega_amp * d_ij) * kappa;
    require(denom > 0.0, "critical reciprocity undefined for a zero denominator");
    return c_prime / denom;
}

}  // namespace coop

#endif  // COOP_SOLVER_HPP
