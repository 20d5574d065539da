#ifndef COOP_UTILITY_HPP
#define COOP_UTILITY_HPP

#include <cmath>
#include <vector>

#include "coop/model.hpp"
#include "coop/reciprocity.hpp"

namespace coop {

using ActionProfile = std::vector<double>;

struct UtilityBreakdown {
    double base = 0.0;
    double interdep = 0.0;
    double trust_mod = 0.0;
    double recip_mod = 0.0;
    double total = 0.0;
};

inline double individual_value(double a_i, const EconomyParams& econ)
{
    require(a_i >= 0.0, "actions must be non-negative");
    if (econ.value_form == ValueForm::logarithmic) return econ.theta_v * std::log1p(a_i);
    return std::pow(a_i, econ.power_beta);
}

inline double synergy(const ActionProfile& a, double gamma)
{
    if (gamma == 0.0) return 0.0;
    double log_sum = 0.0;
    for (double x : a) {
        if (x <= 0.0) return 0.0;
        log_sum += std::log(x);
    }
    return gamma * std::exp(log_sum / static_cast<double>(a.size()));
}

inline double value_creation(const ActionProfile& a, const EconomyParams& econ)
{
    double v = 0.0;
    for (double x : a) v += individual_value(x, econ);
    return v + synergy(a, econ.gamma);
}

inline double private_payoff(std::size_t i, const ActionProfile& a, const EconomyParams& econ)
{
    require(i < a.size() && a.size() == econ.actors(), "payoff actor or profile does not match economy");
    return econ.endowment[i] - a[i] + individual_value(a[i], econ) + econ.alpha[i] * synergy(a, econ.gamma);
}

/// Everything an actor's modular utility reads besides the action profile.
struct UtilityContext {
    EconomyParams econ;
    InterdependenceMatrix dep;
    SquareMatrix rho;       // reciprocity sensitivities
    SquareMatrix trust;     // T_ij, observer i
    ActionProfile norm;     // reference baseline per observed actor
    ReciprocityParams recip;
    double lambda_t = 1.0;

    std::size_t actors() const { return econ.actors(); }

    void validate() const
    {
        econ.validate();
        const std::size_t n = actors();
        require(dep.size() == n && rho.size() == n, "dependency data does not match actor count");
        require(trust.size() == n, "missing dyad trust state");
        require(norm.size() == n, "missing reference baseline");
    }
};

inline UtilityContext make_context(const EconomyParams& econ, const InterdependenceMatrix& dep,
                                   const ReciprocityParams& recip, double trust0, double lambda_t)
{
    UtilityContext ctx;
    ctx.econ = econ;
    ctx.dep = dep;
    ctx.recip = recip;
    ctx.rho = sensitivity_matrix(dep, recip);
    ctx.trust = SquareMatrix(econ.actors(), trust0);
    ctx.norm.assign(econ.actors(), 0.0);
    ctx.lambda_t = lambda_t;
    return ctx;
}

inline UtilityBreakdown complete_utility(std::size_t i, const ActionProfile& a, const UtilityContext& ctx)
{
    const std::size_t n = ctx.actors();
    require(ctx.trust.size() == n && ctx.norm.size() == n, "missing dyad trust state");
    UtilityBreakdown u;
    u.base = private_payoff(i, a, ctx.econ);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double pj = private_payoff(j, a, ctx.econ);
        u.interdep += ctx.dep(i, j) * pj;
        u.trust_mod += ctx.lambda_t * ctx.trust(i, j) * ctx.dep(i, j) * pj;
        if (ctx.recip.lambda_r != 0.0)
            u.recip_mod += gated_reciprocity_term(ctx.trust(i, j), ctx.dep(i, j), ctx.recip.omega_amp,
                                                  ctx.recip.lambda_r, ctx.rho(i, j),
                                                  cooperation_signal(a[j], ctx.norm[j]), ctx.recip.kappa);
    }
    u.total = u.base + u.interdep + u.trust_mod + u.recip_mod;
    return u;
}

/// Reciprocity i expects to earn from its partners for its own deviation from its norm.
/// complete_utility's recip term depends only on partners' actions, so without this an
/// actor's best response ignores reciprocity altogether.
inline double anticipated_reciprocity(std::size_t i, double a_i, const UtilityContext& ctx)
{
    if (ctx.recip.lambda_r == 0.0) return 0.0;
    const double s = cooperation_signal(a_i, ctx.norm[i]);
    double sum = 0.0;
    for (std::size_t j = 0; j < ctx.actors(); ++j) {
        if (j == i) continue;
        sum += gated_reciprocity_term(ctx.trust(i, j), ctx.dep(i, j), ctx.recip.omega_amp, ctx.recip.lambda_r,
                                      ctx.rho(i, j), s, ctx.recip.kappa);
    }
    return sum;
}

/// Objective maximised by actor i in best-response computations.
inline double decision_utility(std::size_t i, const ActionProfile& a, const UtilityContext& ctx)
{
    return complete_utility(i, a, ctx).total + anticipated_reciprocity(i, a[i], ctx);
}

inline double effective_cost_coefficient(double loyalty, double phi_c, double unit_cost)
{
    return unit_cost * (1.0 - phi_c * loyalty);
}

inline double teammate_weight(double loyalty, double phi_b) { return phi_b * loyalty; }

/// Team-production utility of actor i (a global actor index that must be a team member).
inline double team_utility(std::size_t i, const ActionProfile& a, const TeamParams& team)
{
    team.validate();
    std::size_t pos = team.members.size();
    double effort = 0.0;
    for (std::size_t m = 0; m < team.members.size(); ++m) {
        require(team.members[m] < a.size(), "team member outside action profile");
        effort += a[team.members[m]];
        if (team.members[m] == i) pos = m;
    }
    require(pos < team.members.size(), "actor is not a team member");
    const double n = static_cast<double>(team.members.size());
    const double share = team.omega_prod * std::pow(effort, team.beta_team) / n;

    double mates = 0.0;
    for (std::size_t m = 0; m < team.members.size(); ++m)
        if (m != pos) mates += share - team.unit_cost * a[team.members[m]];
    if (team.aggregate == TeammateAggregate::mean && team.members.size() > 1) mates /= n - 1.0;

    const double theta = team.loyalty[pos];
    return share - effective_cost_coefficient(theta, team.phi_c, team.unit_cost) * a[i] +
           teammate_weight(theta, team.phi_b) * mates;
}

}  // namespace coop

#endif  // COOP_UTILITY_HPP
