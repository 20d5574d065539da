#ifndef COOP_TRUST_HPP
#define COOP_TRUST_HPP

#include <algorithm>
#include <cmath>

#include "coop/model.hpp"

namespace coop {

/// State of one ordered pair (i observes j).
struct DyadState {
    double trust = 0.0;
    double reputation = 0.0;
    double baseline = 0.0;  // adaptive reference for j's signal
};

inline double trust_ceiling(double reputation, double t_max, double theta_r)
{
    return std::min(t_max, 1.0 - theta_r * reputation);
}

/// One period of the two-layer update. Reputation moves first, so the new ceiling binds immediately.
inline DyadState update_trust(const DyadState& state, double s, double d_ij, const TrustParams& p)
{
    DyadState next = state;

    const double r = state.reputation;
    const double dr = s >= 0.0 ? -p.delta_r * r : p.mu_r * std::fabs(s) * (1.0 - r);
    next.reputation = std::clamp(r + dr, 0.0, 1.0);

    const double cap = trust_ceiling(next.reputation, p.t_max, p.theta_r);
    const double t = state.trust;
    const double dt = s > 0.0 ? p.lambda_plus * s * std::max(0.0, cap - t)
                              : p.lambda_minus * s * t * (1.0 + p.xi * d_ij);
    next.trust = std::clamp(t + dt, 0.0, std::max(0.0, cap));
    return next;
}

inline double negativity_ratio(const TrustParams& p)
{
    require(p.lambda_plus > 0.0, "negativity ratio undefined for lambda_plus = 0");
    return p.lambda_minus / p.lambda_plus;
}

}  // namespace coop

#endif  // COOP_TRUST_HPP
