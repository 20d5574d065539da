#ifndef COOP_RECIPROCITY_HPP
#define COOP_RECIPROCITY_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "coop/model.hpp"

namespace coop {

/// Where the reference point for a cooperation signal comes from.
enum class BaselineStrategy { moving_average, fixed, adaptive };

/// Append-only record of action profiles. Period numbering starts at 1.
class History {
public:
    History() = default;
    explicit History(std::size_t actors) : actors_(actors) {}

    void push(const std::vector<double>& profile)
    {
        require(profile.size() == actors_, "history profile has the wrong actor count");
        rows_.push_back(profile);
    }

    std::size_t periods() const { return rows_.size(); }
    std::size_t actors() const { return actors_; }
    double at(std::size_t period, std::size_t actor) const { return rows_.at(period - 1).at(actor); }
    const std::vector<double>& profile(std::size_t period) const { return rows_.at(period - 1); }

private:
    std::size_t actors_ = 0;
    std::vector<std::vector<double>> rows_;
};

/// Mean of actor j's actions over periods max(1, t-k) .. t-1.
/// Empty when t = 1 (no history); callers then use the configured initial baseline.
inline std::optional<double> moving_average(const History& h, std::size_t j, std::size_t t, int k)
{
    require(k >= 1, "memory window must be at least 1");
    if (t < 2) return std::nullopt;
    require(t - 1 <= h.periods(), "moving average window reaches past recorded history");
    const std::size_t first = t > static_cast<std::size_t>(k) ? t - static_cast<std::size_t>(k) : 1;
    double sum = 0.0;
    for (std::size_t p = first; p <= t - 1; ++p) sum += h.at(p, j);
    return sum / static_cast<double>(t - first);
}

struct CooperationSignal {
    double value = 0.0;
    std::size_t observer = 0;
    std::size_t observed = 0;
    std::size_t period = 0;
};

inline double cooperation_signal(double a_j, double baseline) { return a_j - baseline; }

/// tanh(kappa * s). Never clamped, so |result| < 1 for finite input.
inline double bounded_response(double s, double kappa)
{
    require(kappa > 0.0, "kappa must be positive");
    return std::tanh(kappa * s);
}

inline double reciprocity_response(double rho_ij, double s, double kappa)
{
    require(rho_ij >= 0.0, "reciprocity sensitivity must be non-negative");
    return rho_ij * bounded_response(s, kappa);
}

/// Trust-gated, dependency-amplified reciprocity term of actor i toward j.
inline double gated_reciprocity_term(double trust, double d_ij, double omega_amp, double lambda_r, double rho_ij,
                                     double s, double kappa)
{
    require(trust >= 0.0 && trust <= 1.0, "trust must lie in [0,1]");
    return lambda_r * trust * (1.0 + omega_amp * d_ij) * reciprocity_response(rho_ij, s, kappa);
}

}  // namespace coop

#endif  // COOP_RECIPROCITY_HPP
