#ifndef COOP_SCENARIO_IO_HPP
#define COOP_SCENARIO_IO_HPP

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "coop/config.hpp"
#include "coop/format.hpp"
#include "coop/simulation.hpp"

namespace coop {

inline std::size_t label_index(std::vector<std::string>& labels, const std::string& name, bool allow_new)
{
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name) return i;
    require(allow_new, "unknown actor '" + name + "'");
    labels.push_back(name);
    return labels.size() - 1;
}

/// Reads `depender,dependee,dependum,type,weight,exists,criticality`. Actor names are resolved
/// against `labels`; unseen names are appended when allow_new is set.
inline std::vector<DependencyEntry> read_dependency_csv(std::istream& is, std::vector<std::string>& labels,
                                                        bool allow_new = true, const std::string& source = "<deps>")
{
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), source + ": empty dependency table");
    require(trim(line) == "depender,dependee,dependum,type,weight,exists,criticality",
            source + ": unexpected dependency header '" + trim(line) + "'");
    std::vector<DependencyEntry> out;
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        const std::string at = source + ":" + std::to_string(row);
        require(f.size() == 7, at + ": expected 7 fields");
        DependencyEntry e;
        e.depender = label_index(labels, f[0], allow_new);
        e.dependee = label_index(labels, f[1], allow_new);
        e.dependum = f[2];
        e.type = f[3];
        e.weight = parse_double(f[4], at + ": weight");
        e.exists = parse_bool(f[5], at + ": exists");
        e.criticality = parse_double(f[6], at + ": criticality");
        require(e.depender != e.dependee, at + ": depender equals dependee");
        require(e.weight >= 0.0, at + ": weight must be non-negative");
        require(e.criticality >= 0.0 && e.criticality <= 1.0, at + ": criticality must lie in [0,1]");
        out.push_back(e);
    }
    return out;
}

inline std::vector<DependencyEntry> load_dependency_csv(const std::string& path, std::vector<std::string>& labels,
                                                        bool allow_new = true)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open " + path);
    return read_dependency_csv(in, labels, allow_new, path);
}

inline const char* to_string(BaselineStrategy b)
{
    switch (b) {
    case BaselineStrategy::moving_average: return "moving_average";
    case BaselineStrategy::fixed: return "fixed";
    case BaselineStrategy::adaptive: return "adaptive";
    }
    return "?";
}

inline BaselineStrategy parse_baseline(const std::string& s)
{
    if (s == "moving_average") return BaselineStrategy::moving_average;
    if (s == "fixed") return BaselineStrategy::fixed;
    if (s == "adaptive") return BaselineStrategy::adaptive;
    throw ValidationError("unknown baseline strategy '" + s + "'");
}

inline const char* to_string(Mode m) { return m == Mode::adjustment ? "adjustment" : "best_response"; }

inline Mode parse_mode(const std::string& s)
{
    if (s == "adjustment") return Mode::adjustment;
    if (s == "best_response") return Mode::best_response;
    throw ValidationError("unknown mode '" + s + "'");
}

struct ScenarioFile {
    Scenario scenario;
    SimConfig sim;
};

namespace detail {

inline std::vector<double> per_actor(const KeyValueFile& kv, const std::string& key, std::size_t n,
                                     const std::vector<double>& fallback)
{
    std::vector<double> v = kv.get_list(key);
    if (v.empty()) return fallback;
    if (v.size() == 1) v.assign(n, v[0]);
    require(v.size() == n, kv.source() + ": " + key + " needs one value or one per actor");
    return v;
}

inline std::string join(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s;
}

}  // namespace detail

/// Builds a scenario from a key/value file. Relative dependency paths resolve against base_dir.
inline ScenarioFile load_scenario(const KeyValueFile& kv, const std::filesystem::path& base_dir = {})
{
    ScenarioFile out;
    Scenario& sc = out.scenario;
    SimConfig& sim = out.sim;

    const std::string actors = kv.get_string("actors", "");
    require(!actors.empty(), kv.source() + ": 'actors' is required");
    sc.labels = split(actors, ',');
    const std::size_t n = sc.labels.size();

    sc.econ.a_max = detail::per_actor(kv, "a_max", n, std::vector<double>(n, 1.0));
    sc.initial_actions = detail::per_actor(kv, "initial_actions", n, std::vector<double>(n, 0.5));
    sc.initial_baseline = detail::per_actor(kv, "initial_baseline", n, sc.initial_actions);

    sc.dep = InterdependenceMatrix(n);
    const std::string deps = kv.get_string("dependencies", "");
    if (!deps.empty()) {
        std::filesystem::path p(deps);
        if (p.is_relative()) p = base_dir / p;
        std::vector<std::string> labels = sc.labels;
        sc.dep = compute_interdependence(load_dependency_csv(p.string(), labels, false), n);
    }
    for (const auto& key : kv.keys_with_prefix("d.")) {
        const auto parts = split(key.substr(2), '.');
        require(parts.size() == 2, kv.source() + ": dependency key must be d.<depender>.<dependee>");
        std::vector<std::string> labels = sc.labels;
        sc.dep.set(label_index(labels, parts[0], false), label_index(labels, parts[1], false),
                   kv.get_double(key, 0.0));
    }
    sc.symmetric_rho = kv.get_bool("symmetric_rho", false);

    ReciprocityParams& r = sc.recip;
    r.rho0 = kv.get_double("rho0", r.rho0);
    r.eta = kv.get_double("eta", r.eta);
    r.kappa = kv.get_double("kappa", r.kappa);
    r.memory_k = kv.get_int("k", r.memory_k);
    r.lambda_r = kv.get_double("lambda_r", r.lambda_r);
    r.omega_amp = kv.get_double("omega", r.omega_amp);

    TrustParams& t = sc.trust;
    t.t0 = kv.get_double("t0", t.t0);
    t.lambda_plus = kv.get_double("lambda_plus", t.lambda_plus);
    t.lambda_minus = kv.get_double("lambda_minus", t.lambda_minus);
    t.xi = kv.get_double("xi", t.xi);
    t.mu_r = kv.get_double("mu_r", t.mu_r);
    t.delta_r = kv.get_double("delta_r", t.delta_r);
    t.t_max = kv.get_double("t_max", t.t_max);
    t.theta_r = kv.get_double("theta_r", t.theta_r);
    t.lambda_t = kv.get_double("lambda_t", t.lambda_t);

    EconomyParams& e = sc.econ;
    e.endowment = detail::per_actor(kv, "endowment", n, std::vector<double>(n, 0.0));
    e.alpha = detail::per_actor(kv, "alpha", n, std::vector<double>(n, 1.0 / static_cast<double>(n)));
    e.theta_v = kv.get_double("theta_v", e.theta_v);
    e.power_beta = kv.get_double("power_beta", e.power_beta);
    e.gamma = kv.get_double("gamma", e.gamma);
    const std::string vf = kv.get_string("value_form", "logarithmic");
    require(vf == "logarithmic" || vf == "power", kv.source() + ": value_form must be logarithmic or power");
    e.value_form = vf == "power" ? ValueForm::power : ValueForm::logarithmic;

    sim.horizon = kv.get_int("horizon", sim.horizon);
    sim.mode = parse_mode(kv.get_string("mode", "adjustment"));
    sim.adjust_rate = kv.get_double("adjust_rate", sim.adjust_rate);
    sim.decay = kv.get_double("decay", sim.decay);
    sim.baseline_rate = kv.get_double("baseline_rate", sim.baseline_rate);
    sim.noise_sigma = kv.get_double("noise_sigma", sim.noise_sigma);
    sim.seed = static_cast<std::uint64_t>(parse_int(kv.get_string("seed", "0"), kv.source() + ": seed"));
    sim.signal_ref = parse_baseline(kv.get_string("signal_ref", to_string(sim.signal_ref)));
    sim.anchor = parse_baseline(kv.get_string("anchor", to_string(sim.anchor)));
    for (const auto& v : kv.all("shock")) {
        const auto f = split(v, ',');
        require(f.size() == 3, kv.source() + ": shock must be period, actor, delta");
        std::vector<std::string> labels = sc.labels;
        sim.shocks.push_back(Shock{static_cast<int>(parse_int(f[0], "shock period")),
                                   label_index(labels, f[1], false), parse_double(f[2], "shock delta")});
    }
    sim.solver.grid_points = kv.get_int("solver.grid_points", sim.solver.grid_points);
    sim.solver.max_iters = kv.get_int("solver.max_iters", sim.solver.max_iters);
    sim.solver.tolerance = kv.get_double("solver.tolerance", sim.solver.tolerance);
    sim.solver.refine = kv.get_bool("solver.refine", sim.solver.refine);
    sim.solver.cycle_fallback = kv.get_bool("solver.cycle_fallback", sim.solver.cycle_fallback);
    const std::string order = kv.get_string("solver.order", "jacobi");
    require(order == "jacobi" || order == "gauss_seidel", kv.source() + ": solver.order must be jacobi or gauss_seidel");
    sim.solver.order = order == "jacobi" ? UpdateOrder::jacobi : UpdateOrder::gauss_seidel;

    kv.require_all_used();
    sc.validate(sim.mode);
    sim.validate();
    return out;
}

inline ScenarioFile load_scenario_file(const std::string& path)
{
    return load_scenario(KeyValueFile::load(path), std::filesystem::path(path).parent_path());
}

/// Writes every setting explicitly, so the file reproduces the scenario without relying on defaults.
inline void write_scenario(std::ostream& os, const Scenario& sc, const SimConfig& sim)
{
    const std::size_t n = sc.actors();
    os << "actors = ";
    for (std::size_t i = 0; i < n; ++i) os << (i ? ", " : "") << sc.labels.at(i);
    os << "\na_max = " << detail::join(sc.econ.a_max) << '\n';
    os << "initial_actions = " << detail::join(sc.initial_actions) << '\n';
    os << "initial_baseline = " << detail::join(sc.initial_baseline) << '\n';
    os << "\n# interdependence D[depender][dependee]\n";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && sc.dep(i, j) != 0.0)
                os << "d." << sc.labels[i] << '.' << sc.labels[j] << " = " << fmt(sc.dep(i, j)) << '\n';
    os << "symmetric_rho = " << (sc.symmetric_rho ? "true" : "false") << '\n';

    const ReciprocityParams& r = sc.recip;
    os << "\n# reciprocity\nrho0 = " << fmt(r.rho0) << "\neta = " << fmt(r.eta) << "\nkappa = " << fmt(r.kappa)
       << "\nk = " << r.memory_k << "\nlambda_r = " << fmt(r.lambda_r) << "\nomega = " << fmt(r.omega_amp) << '\n';

    const TrustParams& t = sc.trust;
    os << "\n# trust\nt0 = " << fmt(t.t0) << "\nlambda_plus = " << fmt(t.lambda_plus)
       << "\nlambda_minus = " << fmt(t.lambda_minus) << "\nxi = " << fmt(t.xi) << "\nmu_r = " << fmt(t.mu_r)
       << "\ndelta_r = " << fmt(t.delta_r) << "\nt_max = " << fmt(t.t_max) << "\ntheta_r = " << fmt(t.theta_r)
       << "\nlambda_t = " << fmt(t.lambda_t) << '\n';

    const EconomyParams& e = sc.econ;
    os << "\n# economy\nendowment = " << detail::join(e.endowment) << "\nalpha = " << detail::join(e.alpha)
       << "\ntheta_v = " << fmt(e.theta_v) << "\npower_beta = " << fmt(e.power_beta) << "\ngamma = " << fmt(e.gamma)
       << "\nvalue_form = " << (e.value_form == ValueForm::power ? "power" : "logarithmic") << '\n';

    os << "\n# dynamics\nhorizon = " << sim.horizon << "\nmode = " << to_string(sim.mode)
       << "\nadjust_rate = " << fmt(sim.adjust_rate) << "\ndecay = " << fmt(sim.decay)
       << "\nbaseline_rate = " << fmt(sim.baseline_rate) << "\nnoise_sigma = " << fmt(sim.noise_sigma)
       << "\nseed = " << sim.seed << "\nsignal_ref = " << to_string(sim.signal_ref)
       << "\nanchor = " << to_string(sim.anchor) << '\n';
    for (const auto& s : sim.shocks)
        os << "shock = " << s.period << ", " << sc.labels.at(s.target) << ", " << fmt(s.delta) << '\n';

    os << "\n# solver (best_response mode)\nsolver.grid_points = " << sim.solver.grid_points
       << "\nsolver.max_iters = " << sim.solver.max_iters << "\nsolver.tolerance = " << fmt(sim.solver.tolerance)
       << "\nsolver.refine = " << (sim.solver.refine ? "true" : "false")
       << "\nsolver.cycle_fallback = " << (sim.solver.cycle_fallback ? "true" : "false")
       << "\nsolver.order = " << (sim.solver.order == UpdateOrder::jacobi ? "jacobi" : "gauss_seidel") << '\n';
}

}  // namespace coop

#endif  // COOP_SCENARIO_IO_HPP
