#ifndef COOP_TRANSLATE_HPP
#define COOP_TRANSLATE_HPP

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coop/config.hpp"
#include "coop/format.hpp"
#include "coop/scenario_io.hpp"

namespace coop {

// ---------------------------------------------------------------- calibration diagnostics

enum class Symptom {
    coop_too_high,
    coop_too_low,
    forgive_too_slow,
    forgive_too_fast,
    responses_too_sharp,
    responses_too_gradual,
    differentiation_weak,
    differentiation_extreme
};

struct CalibrationObservation {
    Symptom symptom = Symptom::coop_too_high;
    std::optional<double> magnitude;
};

enum class Direction { increase, decrease };

struct Adjustment {
    std::vector<std::string> parameters;  // alternatives, any one of which can be moved
    Direction direction = Direction::increase;
    Symptom cause = Symptom::coop_too_high;
    std::optional<double> magnitude;
};

struct Conflict {
    std::string parameter;
    std::vector<Symptom> increase_from;
    std::vector<Symptom> decrease_from;
};

struct CalibrationAdvice {
    std::vector<Adjustment> adjustments;  // in observation order
    std::vector<Conflict> conflicts;
};

inline const char* to_string(Symptom s)
{
    switch (s) {
    case Symptom::coop_too_high: return "coop_too_high";
    case Symptom::coop_too_low: return "coop_too_low";
    case Symptom::forgive_too_slow: return "forgive_too_slow";
    case Symptom::forgive_too_fast: return "forgive_too_fast";
    case Symptom::responses_too_sharp: return "responses_too_sharp";
    case Symptom::responses_too_gradual: return "responses_too_gradual";
    case Symptom::differentiation_weak: return "differentiation_weak";
    case Symptom::differentiation_extreme: return "differentiation_extreme";
    }
    return "?";
}

inline Symptom parse_symptom(const std::string& s)
{
    for (int v = 0; v <= static_cast<int>(Symptom::differentiation_extreme); ++v)
        if (s == to_string(static_cast<Symptom>(v))) return static_cast<Symptom>(v);
    throw ValidationError("unknown calibration symptom '" + s + "'");
}

inline const char* to_string(Direction d) { return d == Direction::increase ? "increase" : "decrease"; }

inline Adjustment adjustment_for(Symptom s)
{
    using D = Direction;
    switch (s) {
    case Symptom::coop_too_high: return {{"rho0", "lambda_r"}, D::decrease, s, {}};
    case Symptom::coop_too_low: return {{"rho0", "lambda_r"}, D::increase, s, {}};
    case Symptom::forgive_too_slow: return {{"k"}, D::decrease, s, {}};
    case Symptom::forgive_too_fast: return {{"k"}, D::increase, s, {}};
    case Symptom::responses_too_sharp: return {{"kappa"}, D::decrease, s, {}};
    case Symptom::responses_too_gradual: return {{"kappa"}, D::increase, s, {}};
    case Symptom::differentiation_weak: return {{"eta"}, D::increase, s, {}};
    case Symptom::differentiation_extreme: return {{"eta"}, D::decrease, s, {}};
    }
    return {};
}

/// One advice pass. Parameters pushed both ways are listed as conflicts; the individual
/// adjustments stay in the list so the caller sees every source.
inline CalibrationAdvice calibration_advice(const std::vector<CalibrationObservation>& obs)
{
    CalibrationAdvice out;
    for (const auto& o : obs) {
        Adjustment a = adjustment_for(o.symptom);
        a.magnitude = o.magnitude;
        out.adjustments.push_back(a);
    }
    std::vector<std::string> params;
    for (const auto& a : out.adjustments)
        for (const auto& p : a.parameters)
            if (std::find(params.begin(), params.end(), p) == params.end()) params.push_back(p);
    for (const auto& p : params) {
        Conflict c{p, {}, {}};
        for (const auto& a : out.adjustments) {
            if (std::find(a.parameters.begin(), a.parameters.end(), p) == a.parameters.end()) continue;
            (a.direction == Direction::increase ? c.increase_from : c.decrease_from).push_back(a.cause);
        }
        if (!c.increase_from.empty() && !c.decrease_from.empty()) out.conflicts.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------- interpretation aids

inline std::string kappa_band(double kappa)
{
    require(kappa > 0.0, "kappa must be positive");
    if (kappa < 0.5) return "low";
    if (kappa < 1.0) return "moderate-low";
    if (kappa < 1.5) return "moderate";
    if (kappa < 2.0) return "moderate-high";
    return "high";
}

inline double reciprocity_gap(double rho0_target, double rho0_observed) { return rho0_target - rho0_observed; }

constexpr double large_gap = 0.4;

enum class GapPattern { low_sensitivity, short_memory, weak_trust_gating, asymmetric };

inline const char* to_string(GapPattern g)
{
    switch (g) {
    case GapPattern::low_sensitivity: return "low_sensitivity";
    case GapPattern::short_memory: return "short_memory";
    case GapPattern::weak_trust_gating: return "weak_trust_gating";
    case GapPattern::asymmetric: return "asymmetric";
    }
    return "?";
}

inline GapPattern parse_gap_pattern(const std::string& s)
{
    for (int v = 0; v <= static_cast<int>(GapPattern::asymmetric); ++v)
        if (s == to_string(static_cast<GapPattern>(v))) return static_cast<GapPattern>(v);
    throw ValidationError("unknown gap pattern '" + s + "'");
}

inline const char* intervention(GapPattern g)
{
    switch (g) {
    case GapPattern::low_sensitivity:
        return "Make interactions visible: track behaviour on a shared dashboard and agree explicit cooperation metrics.";
    case GapPattern::short_memory:
        return "Lengthen review cycles and keep a multi-period behavioural record, for example a reputation system.";
    case GapPattern::weak_trust_gating:
        return "Invest in trust building and put credible commitment mechanisms in place.";
    case GapPattern::asymmetric:
        return "Reduce structural power imbalance: equalise information access and add mutual dependencies.";
    }
    return "";
}

// ---------------------------------------------------------------- translation

inline int memory_for_granularity(const std::string& g)
{
    if (g == "quarterly") return 4;
    if (g == "monthly") return 6;
    if (g == "weekly") return 12;
    throw ValidationError("step 2 (temporal granularity): unknown granularity '" + g +
                          "', expected quarterly, monthly or weekly");
}

struct Translation {
    ScenarioFile scenario;
    std::string granularity;
    std::string kappa_band;
    std::optional<double> gap;
    std::vector<GapPattern> patterns;
    CalibrationAdvice advice;
};

namespace detail {

inline void step_range(bool ok, const char* step, const std::string& what)
{
    require(ok, std::string(step) + ": " + what);
}

}  // namespace detail

/// Dependency table plus elicited values to a complete scenario. Unelicited reciprocity
/// parameters take neutral defaults and the memory window follows the granularity.
inline Translation translate(std::istream& deps, const KeyValueFile& elicit, const std::string& deps_source = "<deps>")
{
    Translation tr;
    Scenario& sc = tr.scenario.scenario;
    SimConfig& sim = tr.scenario.sim;

    std::vector<std::string> labels;
    const std::string actors = elicit.get_string("actors", "");
    if (!actors.empty()) labels = split(actors, ',');
    const bool fixed_roster = !labels.empty();
    if (fixed_roster) detail::step_range(labels.size() >= 2, "step 1 (sequential dependencies)", "need at least two actors");
    const auto entries = read_dependency_csv(deps, labels, !fixed_roster, deps_source);
    detail::step_range(labels.size() >= 2, "step 1 (sequential dependencies)", "need at least two actors");
    const std::size_t n = labels.size();
    sc.labels = labels;
    sc.dep = compute_interdependence(entries, n);

    tr.granularity = elicit.get_string("granularity", "quarterly");
    const int k_default = memory_for_granularity(tr.granularity);

    ReciprocityParams& r = sc.recip;
    r.rho0 = elicit.get_double("rho0", 1.0);
    r.eta = elicit.get_double("eta", 1.0);
    r.kappa = elicit.get_double("kappa", 1.0);
    r.memory_k = elicit.get_int("k", k_default);
    r.lambda_r = elicit.get_double("lambda_r", 1.0);
    r.omega_amp = elicit.get_double("omega", 1.0);
    sc.symmetric_rho = elicit.get_bool("symmetric_rho", false);

    detail::step_range(r.memory_k >= 1, "step 4 (memory window)", "k must be at least 1");
    detail::step_range(r.rho0 >= 0.0, "step 5 (reciprocity sensitivity)", "rho0 must be non-negative");
    detail::step_range(r.eta >= 0.0, "step 5 (reciprocity sensitivity)", "eta must be non-negative");
    detail::step_range(r.kappa > 0.0, "step 6 (response sensitivity)", "kappa must be positive");
    detail::step_range(r.lambda_r >= 0.0, "step 7 (trust integration)", "lambda_r must be non-negative");
    detail::step_range(r.omega_amp >= 0.0, "step 7 (trust integration)", "omega must be non-negative");

    sc.trust.t0 = elicit.get_double("t0", sc.trust.t0);
    sc.trust.lambda_t = elicit.get_double("lambda_t", sc.trust.lambda_t);
    detail::step_range(sc.trust.t0 >= 0.0 && sc.trust.t0 <= 1.0, "step 7 (trust integration)", "t0 must lie in [0,1]");
    detail::step_range(sc.trust.lambda_t >= 0.0, "step 7 (trust integration)", "lambda_t must be non-negative");

    sc.econ.a_max = detail::per_actor(elicit, "a_max", n, std::vector<double>(n, 1.0));
    sc.econ.endowment.assign(n, 0.0);
    sc.econ.alpha.assign(n, 1.0 / static_cast<double>(n));
    sc.initial_actions = detail::per_actor(elicit, "initial_actions", n, std::vector<double>(n, 0.5));
    sc.initial_baseline = detail::per_actor(elicit, "baseline", n, sc.initial_actions);
    for (std::size_t i = 0; i < n; ++i)
        detail::step_range(sc.initial_baseline[i] >= 0.0 && sc.initial_baseline[i] <= sc.econ.a_max[i],
                           "step 3 (cooperation baselines)", "baseline must lie in [0, a_max]");
    sim.signal_ref = parse_baseline(elicit.get_string("baseline_strategy", "moving_average"));
    sim.anchor = sim.signal_ref;
    sim.horizon = elicit.get_int("horizon", sim.horizon);
    sim.seed = static_cast<std::uint64_t>(parse_int(elicit.get_string("seed", "0"), "seed"));

    tr.kappa_band = kappa_band(r.kappa);

    const bool has_target = elicit.has("rho0_target");
    const bool has_observed = elicit.has("rho0_observed");
    require(has_target == has_observed, "rho0_target and rho0_observed must be given together");
    if (has_target) {
        tr.gap = reciprocity_gap(elicit.get_double("rho0_target", 0.0), elicit.get_double("rho0_observed", 0.0));
        if (*tr.gap > large_gap) tr.patterns.push_back(GapPattern::low_sensitivity);
    }
    for (const auto& v : elicit.all("gap_pattern"))
        for (const auto& name : split(v, ',')) {
            const GapPattern g = parse_gap_pattern(name);
            if (std::find(tr.patterns.begin(), tr.patterns.end(), g) == tr.patterns.end()) tr.patterns.push_back(g);
        }

    std::vector<CalibrationObservation> obs;
    for (const auto& v : elicit.all("symptom")) {
        const auto f = split(v, ',');
        require(f.size() == 1 || f.size() == 2, "symptom must be name or name, magnitude");
        CalibrationObservation o{parse_symptom(f[0]), {}};
        if (f.size() == 2) o.magnitude = parse_double(f[1], "symptom magnitude");
        obs.push_back(o);
    }
    tr.advice = calibration_advice(obs);

    elicit.require_all_used();
    sc.validate(sim.mode);
    sim.validate();
    return tr;
}

inline Translation translate_files(const std::string& deps_path, const std::string& elicit_path)
{
    std::ifstream in(deps_path);
    require(static_cast<bool>(in), "cannot open " + deps_path);
    const KeyValueFile kv = elicit_path.empty() ? KeyValueFile{} : KeyValueFile::load(elicit_path);
    return translate(in, kv, deps_path);
}

inline void write_advisory(std::ostream& os, const Translation& t)
{
    const Scenario& sc = t.scenario.scenario;
    os << "# Translation advisory\n\n";
    os << "granularity: " << t.granularity << ", memory window k = " << sc.recip.memory_k << '\n';
    os << "kappa = " << fmt(sc.recip.kappa) << " (" << t.kappa_band << " sensitivity)\n";
    os << "rho formulation: " << (sc.symmetric_rho ? "symmetric" : "asymmetric") << "\n\n";

    os << "## Interdependence and sensitivity\n\n| depender | dependee | D | rho |\n|---|---|---:|---:|\n";
    const SquareMatrix rho = sensitivity_matrix(sc.dep, sc.recip, sc.symmetric_rho);
    for (std::size_t i = 0; i < sc.actors(); ++i)
        for (std::size_t j = 0; j < sc.actors(); ++j)
            if (i != j && sc.dep(i, j) != 0.0)
                os << "| " << sc.labels[i] << " | " << sc.labels[j] << " | " << fixed(sc.dep(i, j), 4) << " | "
                   << fixed(rho(i, j), 4) << " |\n";

    os << "\n## Reciprocity gap\n\n";
    if (t.gap)
        os << "gap = " << fixed(*t.gap, 3) << (*t.gap > large_gap ? " (large)" : "") << '\n';
    else
        os << "not assessed\n";
    for (const auto g : t.patterns) os << "- " << to_string(g) << ": " << intervention(g) << '\n';

    os << "\n## Calibration\n\n";
    if (t.advice.adjustments.empty()) os << "no symptoms reported\n";
    for (const auto& a : t.advice.adjustments) {
        os << "- " << to_string(a.cause) << ": " << to_string(a.direction) << ' ';
        for (std::size_t p = 0; p < a.parameters.size(); ++p) os << (p ? " or " : "") << a.parameters[p];
        if (a.magnitude) os << " (magnitude " << fmt(*a.magnitude) << ')';
        os << '\n';
    }
    for (const auto& c : t.advice.conflicts) {
        os << "- CONFLICT on " << c.parameter << ": increase from";
        for (auto s : c.increase_from) os << ' ' << to_string(s);
        os << "; decrease from";
        for (auto s : c.decrease_from) os << ' ' << to_string(s);
        os << '\n';
    }
}

}  // namespace coop

#endif  // COOP_TRANSLATE_HPP
