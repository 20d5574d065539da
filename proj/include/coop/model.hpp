#ifndef COOP_MODEL_HPP
#define COOP_MODEL_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace coop {

/// Raised for ill-formed inputs: bad parameter ranges, inconsistent actor counts, broken tables.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw ValidationError(what);
}

struct ActorId {
    std::size_t index = 0;
    std::string label;
};

/// Dense row-major n x n matrix of reals.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    bool operator==(const SquareMatrix& o) const { return n_ == o.n_ && data_ == o.data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Structural dependency coefficients D_ij in [0,1], zero diagonal, possibly asymmetric.
class InterdependenceMatrix {
public:
    InterdependenceMatrix() = default;
    explicit InterdependenceMatrix(std::size_t n) : m_(n) {}

    std::size_t size() const { return m_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    void set(std::size_t i, std::size_t j, double v)
    {
        require(i < size() && j < size(), "interdependence index out of range");
        require(v >= 0.0 && v <= 1.0, "interdependence coefficient must lie in [0,1]");
        require(i != j || v == 0.0, "self-dependency must be zero");
        m_(i, j) = v;
    }

    const SquareMatrix& raw() const { return m_; }
    bool operator==(const InterdependenceMatrix& o) const { return m_ == o.m_; }

    /// Symmetric matrix with every off-diagonal entry equal to d.
    static InterdependenceMatrix uniform(std::size_t n, double d)
    {
        InterdependenceMatrix out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) out.set(i, j, d);
        return out;
    }

private:
    SquareMatrix m_;
};

struct DependencyEntry {
    std::size_t depender = 0;
    std::size_t dependee = 0;
    std::string dependum;
    std::string type;
    double weight = 1.0;
    bool exists = true;
    double criticality = 0.0;
};

struct ReciprocityParams {
    double rho0 = 1.0;
    double eta = 1.0;
    double kappa = 1.0;
    int memory_k = 5;
    double lambda_r = 1.0;
    double omega_amp = 1.0;

    void validate() const
    {
        require(rho0 >= 0.0, "rho0 must be non-negative");
        require(eta >= 0.0, "eta must be non-negative");
        require(kappa > 0.0, "kappa must be positive");
        require(memory_k >= 1, "memory window k must be at least 1");
        require(lambda_r >= 0.0, "lambda_r must be non-negative");
        require(omega_amp >= 0.0, "omega_amp must be non-negative");
    }
};

struct TrustParams {
    double t0 = 0.7;
    double lambda_plus = 0.10;
    double lambda_minus = 0.30;
    double xi = 0.50;
    double mu_r = 0.60;
    double delta_r = 0.03;
    double t_max = 0.90;
    double theta_r = 0.60;
    double lambda_t = 1.0;

    void validate() const
    {
        require(t0 >= 0.0 && t0 <= 1.0, "t0 must lie in [0,1]");
        require(lambda_plus > 0.0 && lambda_plus < 1.0, "lambda_plus must lie in (0,1)");
        require(lambda_minus > 0.0 && lambda_minus < 1.0, "lambda_minus must lie in (0,1)");
        require(xi >= 0.0, "xi must be non-negative");
        require(mu_r > 0.0 && mu_r < 1.0, "mu_r must lie in (0,1)");
        require(delta_r > 0.0 && delta_r < 1.0, "delta_r must lie in (0,1)");
        require(t_max > 0.0 && t_max <= 1.0, "t_max must lie in (0,1]");
        require(theta_r >= 0.0 && theta_r <= 1.0, "theta_r must lie in [0,1]");
        require(lambda_t >= 0.0, "lambda_t must be non-negative");
    }
};

enum class ValueForm { logarithmic, power };

struct EconomyParams {
    std::vector<double> endowment;
    std::vector<double> alpha;  // bargaining shares, sum to 1
    std::vector<double> a_max;
    double theta_v = 20.0;
    double power_beta = 0.75;
    double gamma = 0.65;
    ValueForm value_form = ValueForm::logarithmic;

    std::size_t actors() const { return alpha.size(); }

    /// Equal shares, common endowment and action bound.
    static EconomyParams symmetric(std::size_t n, double endowment, double a_max)
    {
        EconomyParams e;
        e.endowment.assign(n, endowment);
        e.alpha.assign(n, 1.0 / static_cast<double>(n));
        e.a_max.assign(n, a_max);
        return e;
    }

    void validate() const
    {
        const std::size_t n = alpha.size();
        require(n >= 1, "economy needs at least one actor");
        require(endowment.size() == n && a_max.size() == n, "economy vectors disagree on actor count");
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            require(alpha[i] >= 0.0, "bargaining shares must be non-negative");
            require(endowment[i] >= 0.0, "endowments must be non-negative");
            require(a_max[i] > 0.0, "action bounds must be positive");
            sum += alpha[i];
        }
        require(std::fabs(sum - 1.0) <= 1e-9, "bargaining shares must sum to 1");
        require(theta_v > 0.0, "theta_v must be positive");
        require(power_beta > 0.0 && power_beta < 1.0, "power_beta must lie in (0,1)");
        require(gamma >= 0.0, "gamma must be non-negative");
    }
};

enum class TeammateAggregate { sum, mean };

/// Team production parameters. Named apart from omega_amp and power_beta on purpose.
struct TeamParams {
    std::vector<std::size_t> members;
    double omega_prod = 1.0;
    double beta_team = 0.75;
    double unit_cost = 1.0;
    std::vector<double> loyalty;  // theta_i per member, same order as members
    double phi_b = 0.8;
    double phi_c = 0.3;
    TeammateAggregate aggregate = TeammateAggregate::sum;

    void validate() const
    {
        require(!members.empty(), "team needs members");
        require(loyalty.size() == members.size(), "one loyalty value per team member");
        require(omega_prod > 0.0, "omega_prod must be positive");
        require(beta_team > 0.0 && beta_team < 1.0, "beta_team must lie in (0,1)");
        require(unit_cost > 0.0, "unit_cost must be positive");
        for (double t : loyalty) require(t >= 0.0 && t <= 1.0, "loyalty must lie in [0,1]");
        require(phi_b >= 0.0 && phi_b <= 1.0, "phi_b must lie in [0,1]");
        require(phi_c >= 0.0 && phi_c <= 1.0, "phi_c must lie in [0,1]");
    }
};

/// Weighted mean of Dep * crit over each ordered pair's dependums. Pairs without entries get 0.
inline InterdependenceMatrix compute_interdependence(const std::vector<DependencyEntry>& entries, std::size_t n)
{
    SquareMatrix num(n), den(n), seen(n);
    for (const auto& e : entries) {
        require(e.depender < n && e.dependee < n, "dependency references an unknown actor");
        require(e.depender != e.dependee, "dependency depender equals dependee");
        require(e.weight >= 0.0, "dependency weight must be non-negative");
        require(e.criticality >= 0.0 && e.criticality <= 1.0, "criticality must lie in [0,1]");
        num(e.depender, e.dependee) += e.weight * (e.exists ? 1.0 : 0.0) * e.criticality;
        den(e.depender, e.dependee) += e.weight;
        seen(e.depender, e.dependee) = 1.0;
    }
    InterdependenceMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (seen(i, j) == 0.0) continue;
            require(den(i, j) > 0.0, "dependency weights sum to zero for a listed pair");
            d.set(i, j, num(i, j) / den(i, j));
        }
    }
    return d;
}

/// rho_ij = rho0 * D_ij^eta.
inline double reciprocity_sensitivity(double rho0, double d_ij, double eta)
{
    require(d_ij >= 0.0 && d_ij <= 1.0, "dependency must lie in [0,1]");
    if (d_ij == 0.0 && eta > 0.0) return 0.0;
    return rho0 * std::pow(d_ij, eta);
}

/// Alternative mutual form rho0 * sqrt(D_ij * D_ji)^eta.
inline double symmetric_sensitivity(double rho0, double d_ij, double d_ji, double eta)
{
    return reciprocity_sensitivity(rho0, std::sqrt(d_ij * d_ji), eta);
}

inline SquareMatrix sensitivity_matrix(const InterdependenceMatrix& d, const ReciprocityParams& p, bool symmetric = false)
{
    SquareMatrix rho(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            if (i != j)
                rho(i, j) = symmetric ? symmetric_sensitivity(p.rho0, d(i, j), d(j, i), p.eta)
                                      : reciprocity_sensitivity(p.rho0, d(i, j), p.eta);
    return rho;
}

}  // namespace coop

#endif  // COOP_MODEL_HPP
