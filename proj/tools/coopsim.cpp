// coopsim: command-line front end for the coop library.
//
// Exit codes: 0 success, 1 invalid input or usage, 2 ran correctly but a threshold failed.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "coop/case_study.hpp"
#include "coop/propositions.hpp"
#include "coop/scenario_io.hpp"
#include "coop/sweep.hpp"
#include "coop/translate.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_threshold = 2;

struct Options {
    std::string scenario;
    std::string grid;
    std::optional<std::uint64_t> seed;
    std::optional<int> periods;
    std::string out;
    unsigned parallel = coop::default_workers();
    bool counterfactual = false;
    int trials = 2000;
    double perturb = 0.15;
    std::string prop = "all";
    std::optional<std::string> mode;
    std::optional<int> k;
    std::optional<double> kappa;
    std::string deps;
    std::string elicit;
    bool symmetric = false;
    std::string from;
    int replicates = 10000;
};

/// --seed, then COOP_SEED, then the fallback.
std::uint64_t resolve_seed(const Options& o, std::uint64_t fallback)
{
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("COOP_SEED"); env && *env)
        return static_cast<std::uint64_t>(coop::parse_int(env, "COOP_SEED"));
    return fallback;
}

class Output {
public:
    explicit Output(const std::string& dir) : dir_(dir)
    {
        if (!dir_.empty()) fs::create_directories(dir_);
    }
    bool enabled() const { return !dir_.empty(); }

    template <class Writer>
    void file(const std::string& name, Writer&& w) const
    {
        if (!enabled()) return;
        const fs::path p = fs::path(dir_) / name;
        std::ofstream os(p, std::ios::binary);
        coop::require(static_cast<bool>(os), "cannot write " + p.string());
        w(os);
        coop::require(static_cast<bool>(os), "failed writing " + p.string());
    }

private:
    std::string dir_;
};

std::string pass_word(bool ok) { return ok ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Options& o)
{
    coop::ScenarioFile f = coop::load_scenario_file(o.scenario);
    f.sim.seed = resolve_seed(o, f.sim.seed);
    if (o.periods) f.sim.horizon = *o.periods;
    if (o.mode) f.sim.mode = coop::parse_mode(*o.mode);
    f.scenario.validate(f.sim.mode);
    f.sim.validate();

    const coop::Trajectory tr = coop::run(f.scenario, f.sim);
    const Output out(o.out);
    out.file("actions.csv", [&](std::ostream& os) { coop::write_actions_csv(os, tr, f.scenario); });
    out.file("dyads.csv", [&](std::ostream& os) { coop::write_dyads_csv(os, tr, f.scenario); });
    out.file("scenario.conf", [&](std::ostream& os) { coop::write_scenario(os, f.scenario, f.sim); });

    std::cout << "periods " << tr.periods() << ", seed " << f.sim.seed << ", mode " << coop::to_string(f.sim.mode)
              << '\n';
    for (std::size_t i = 0; i < tr.actors; ++i)
        std::cout << "  " << coop::actor_label(f.scenario, i) << ": final action "
                  << coop::fixed(tr.action(tr.periods(), i), 4) << '\n';
    std::size_t unconverged = 0;
    for (bool c : tr.solver_converged) unconverged += c ? 0 : 1;
    if (f.sim.mode == coop::Mode::best_response)
        std::cout << "  solver unconverged in " << unconverged << " period(s)\n";
    return exit_ok;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const Options& o)
{
    const coop::ParameterGrid grid = coop::ParameterGrid::load(o.grid);
    const coop::Protocol proto = coop::protocol_for(grid);
    const auto cells = coop::run_sweep(grid, proto, coop::CellParams{}, o.parallel);
    const coop::TargetReport rep = coop::measure_targets(cells);
    const coop::DifferentiationStats diff = coop::differentiation_stats(cells, o.replicates, resolve_seed(o, 1));

    const Output out(o.out);
    out.file("targets.csv", [&](std::ostream& os) { coop::write_targets_csv(os, cells); });
    out.file("targets.md", [&](std::ostream& os) { coop::write_target_table(os, rep); });
    out.file("differentiation.md", [&](std::ostream& os) { coop::write_differentiation_table(os, diff); });

    std::cout << "cells " << cells.size() << '\n';
    coop::write_target_table(std::cout, rep);
    std::cout << '\n';
    coop::write_differentiation_table(std::cout, diff);
    return rep.all_pass() ? exit_ok : exit_threshold;
}

// ---------------------------------------------------------------- montecarlo

int cmd_montecarlo(const Options& o)
{
    const coop::MonteCarloReport rep = coop::monte_carlo(coop::CellParams{}, coop::Protocol{}, o.trials, o.perturb,
                                                         resolve_seed(o, 1), o.parallel, o.replicates);
    const Output out(o.out);
    out.file("montecarlo.csv", [&](std::ostream& os) { coop::write_monte_carlo_csv(os, rep); });
    out.file("montecarlo.md", [&](std::ostream& os) { coop::write_monte_carlo_table(os, rep); });
    coop::write_monte_carlo_table(std::cout, rep);
    return rep.ratio_rate() >= 0.9 ? exit_ok : exit_threshold;
}

// ---------------------------------------------------------------- case study

int cmd_case_study(const Options& o)
{
    const std::uint64_t seed = resolve_seed(o, coop::ios::default_seed);
    coop::ScenarioFile base = coop::ios::build_scenario(false, seed);
    if (o.periods) base.sim.horizon = *o.periods;
    const coop::Trajectory tb = coop::run(base.scenario, base.sim);
    const auto ph = coop::ios::phases();
    coop::require(tb.periods() >= ph.back().end, "case study needs at least " + std::to_string(ph.back().end) +
                                                     " periods");
    const coop::ios::RubricScore rubric = coop::ios::score_rubric_auto(tb, ph);

    const Output out(o.out);
    out.file("scenario.conf", [&](std::ostream& os) { coop::write_scenario(os, base.scenario, base.sim); });
    out.file("actions.csv", [&](std::ostream& os) { coop::write_actions_csv(os, tb, base.scenario); });
    out.file("dyads.csv", [&](std::ostream& os) { coop::write_dyads_csv(os, tb, base.scenario); });
    out.file("phases.csv", [&](std::ostream& os) { coop::ios::write_phase_csv(os, tb, base.scenario); });
    out.file("rubric.md", [&](std::ostream& os) { coop::ios::write_rubric_md(os, rubric); });

    const auto st = coop::ios::phase_statistics(tb, ph);
    std::cout << "seed " << seed << "\nphase means (Apple, Major, Small)\n";
    for (std::size_t p = 0; p < ph.size(); ++p) {
        std::cout << "  " << ph[p].name << ':';
        for (const auto& s : st[p]) std::cout << ' ' << coop::fixed(s.mean, 3);
        std::cout << '\n';
    }
    std::cout << "rubric " << coop::fixed(rubric.total(), 1) << " / " << rubric.applicable() << '\n';

    if (!o.counterfactual) {
        out.file("plot.csv", [&](std::ostream& os) { coop::ios::write_plot_csv(os, tb, nullptr, base.scenario); });
        return exit_ok;
    }

    coop::ScenarioFile cf = coop::ios::build_scenario(true, seed);
    cf.sim.horizon = base.sim.horizon;
    const coop::Trajectory tc = coop::run(cf.scenario, cf.sim);
    const coop::ios::Comparison cmp = coop::ios::counterfactual_comparison(tb, tc, base.scenario.dep);
    const coop::ios::QualitativeChecks q = coop::ios::evaluate(tb, tc, base.scenario.dep);

    out.file("cf_actions.csv", [&](std::ostream& os) { coop::write_actions_csv(os, tc, cf.scenario); });
    out.file("cf_dyads.csv", [&](std::ostream& os) { coop::write_dyads_csv(os, tc, cf.scenario); });
    out.file("plot.csv", [&](std::ostream& os) { coop::ios::write_plot_csv(os, tb, &tc, base.scenario); });
    auto write_comparison = [&](std::ostream& os) {
        os << "actor,base_mean,cf_mean,uplift\n";
        for (std::size_t i = 0; i < cmp.uplift.size(); ++i)
            os << base.scenario.labels[i] << ',' << coop::fmt(cmp.base_mean[i]) << ',' << coop::fmt(cmp.cf_mean[i])
               << ',' << coop::fmt(cmp.uplift[i]) << '\n';
    };
    out.file("comparison.csv", write_comparison);

    std::cout << "counterfactual uplift:";
    for (std::size_t i = 0; i < cmp.uplift.size(); ++i)
        std::cout << ' ' << base.scenario.labels[i] << ' ' << coop::fixed(100.0 * cmp.uplift[i], 1) << '%';
    std::cout << "\nminimum bilateral trust (counterfactual) " << coop::fixed(cmp.cf_min_bilateral_trust, 3) << '\n';
    std::cout << "detected transitions:";
    for (int b : q.detected) std::cout << ' ' << b;
    std::cout << "\nchecks\n"
              << "  crisis minimum      " << pass_word(q.crisis_min) << "\n"
              << "  maturation maximum  " << pass_word(q.maturation_max) << "\n"
              << "  transition timing   " << pass_word(q.transitions) << "\n"
              << "  asymmetry           " << pass_word(q.asymmetry) << "\n"
              << "  auto rubric >= 0.75 " << pass_word(q.rubric) << " (" << coop::fixed(q.auto_means[0], 2) << ", "
              << coop::fixed(q.auto_means[1], 2) << ", " << coop::fixed(q.auto_means[2], 2) << ", "
              << coop::fixed(q.auto_means[3], 2) << ")\n"
              << "  uplift in band      " << pass_word(q.uplift_band) << "\n"
              << "  bilateral trust     " << pass_word(q.cf_trust) << "\n";
    return q.all() ? exit_ok : exit_threshold;
}

// ---------------------------------------------------------------- translate

int cmd_translate(const Options& o)
{
    coop::Translation t = coop::translate_files(o.deps, o.elicit);
    if (o.symmetric) t.scenario.scenario.symmetric_rho = true;
    if (o.seed || std::getenv("COOP_SEED")) t.scenario.sim.seed = resolve_seed(o, 0);
    const Output out(o.out);
    out.file("scenario.conf", [&](std::ostream& os) {
        coop::write_scenario(os, t.scenario.scenario, t.scenario.sim);
    });
    out.file("advisory.md", [&](std::ostream& os) { coop::write_advisory(os, t); });
    coop::write_advisory(std::cout, t);
    return exit_ok;
}

// ---------------------------------------------------------------- prop-check

bool check_prop1(std::ostream& os)
{
    const coop::SolverConfig cfg = coop::precise_solver();
    coop::UtilityContext none = coop::pd_context(0.0);
    const coop::EquilibriumResult d = coop::solve_equilibrium(none, {10.0, 10.0}, cfg);
    coop::UtilityContext with = coop::pd_context(1.0);
    with.norm = {10.0, 10.0};
    const coop::EquilibriumResult c = coop::solve_equilibrium(with, {10.0, 10.0}, cfg);
    const double step = 10.0 / (cfg.grid_points - 1);
    const bool defect = d.converged && d.actions[0] <= step && d.actions[1] <= step;
    const bool coop_ok = c.converged && c.actions[0] >= 10.0 - step && c.actions[1] >= 10.0 - step;
    os << "| 1 | rho0=0 from (10,10) | (" << coop::fixed(d.actions[0], 4) << ", " << coop::fixed(d.actions[1], 4)
       << ") after " << d.iterations << " it | " << pass_word(defect) << " |\n";
    os << "| 1 | rho0=1, norm 10 | (" << coop::fixed(c.actions[0], 4) << ", " << coop::fixed(c.actions[1], 4)
       << ") after " << c.iterations << " it | " << pass_word(coop_ok) << " |\n";
    return defect && coop_ok;
}

bool check_prop2(std::ostream& os, const Options& o)
{
    std::vector<int> ks = o.k ? std::vector<int>{*o.k} : std::vector<int>{1, 5, 10};
    std::vector<double> kappas = o.kappa ? std::vector<double>{*o.kappa} : std::vector<double>{0.5, 1.0, 2.0};
    bool all = true;
    for (int k : ks)
        for (double kappa : kappas) {
            const auto tau = coop::measure_forgiveness_time(k, kappa, 0.5);
            const bool ok = tau && *tau >= k && *tau <= 2 * k;
            all = all && ok;
            os << "| 2 | k=" << k << ", kappa=" << coop::fmt(kappa) << " | tau="
               << (tau ? std::to_string(*tau) : std::string("none")) << " in [" << k << ", " << 2 * k << "] | "
               << pass_word(ok) << " |\n";
        }
    return all;
}

bool check_prop3(std::ostream& os)
{
    const coop::CrossPartial a = coop::cross_partial_check(0.7, 1.0, 0.05, 0.05);
    const coop::CrossPartial b = coop::cross_partial_check(0.7, 1.0, 0.025, 0.025);
    const coop::CrossPartial z = coop::cross_partial_check(0.7, 1.0, 0.05, 0.05, 0.0);
    const bool pos = a.conclusive && b.conclusive && a.value > 0.0 && b.value > 0.0;
    const bool off = z.conclusive && std::fabs(z.value) < 1e-3;
    os << "| 3 | step 0.05 | " << coop::fixed(a.value, 4) << (a.conclusive ? "" : " (inconclusive)") << " | "
       << pass_word(a.conclusive && a.value > 0) << " |\n";
    os << "| 3 | step 0.025 | " << coop::fixed(b.value, 4) << (b.conclusive ? "" : " (inconclusive)") << " | "
       << pass_word(b.conclusive && b.value > 0) << " |\n";
    os << "| 3 | lambda_r=0 | " << coop::fmt(z.value) << " | " << pass_word(off) << " |\n";
    return pos && off;
}

int cmd_prop_check(const Options& o)
{
    const bool all = o.prop == "all";
    coop::require(all || o.prop == "1" || o.prop == "2" || o.prop == "3", "--prop must be 1, 2, 3 or all");
    std::ostringstream table;
    table << "| Prop | Case | Evidence | Result |\n|---|---|---|---|\n";
    bool ok = true;
    if (all || o.prop == "1") ok = check_prop1(table) && ok;
    if (all || o.prop == "2") ok = check_prop2(table, o) && ok;
    if (all || o.prop == "3") ok = check_prop3(table) && ok;
    std::cout << table.str();
    const Output out(o.out);
    out.file("propositions.md", [&](std::ostream& os) { os << table.str(); });
    return ok ? exit_ok : exit_threshold;
}

// ---------------------------------------------------------------- report

int cmd_report(const Options& o)
{
    const fs::path in(o.from);
    std::ostringstream md;
    bool any = false;
    if (std::ifstream t(in / "targets.csv"); t) {
        const auto cells = coop::read_targets_csv(t);
        md << "## Behavioural targets\n\n";
        coop::write_target_table(md, coop::measure_targets(cells));
        md << "\n## Differentiation\n\n";
        coop::write_differentiation_table(md, coop::differentiation_stats(cells, o.replicates, resolve_seed(o, 1)));
        md << '\n';
        any = true;
    }
    if (std::ifstream m(in / "montecarlo.csv"); m) {
        md << "## Monte Carlo robustness\n\n";
        coop::write_monte_carlo_table(md, coop::read_monte_carlo_csv(m, o.replicates, resolve_seed(o, 1)));
        md << '\n';
        any = true;
    }
    if (std::ifstream a(in / "actions.csv"); a && fs::exists(in / "phases.csv")) {
        const coop::Trajectory tr = coop::read_actions_csv(a, coop::ios::build_scenario(false).scenario.labels);
        md << "## Case-study rubric\n\n";
        coop::ios::write_rubric_md(md, coop::ios::score_rubric_auto(tr, coop::ios::phases()));
        md << '\n';
        any = true;
    }
    if (std::ifstream p(in / "propositions.md"); p) {
        md << "## Propositions\n\n" << p.rdbuf() << '\n';
        any = true;
    }
    coop::require(any, "no run outputs found in " + in.string());
    std::cout << md.str();
    const Output out(o.out);
    out.file("report.md", [&](std::ostream& os) { os << md.str(); });
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"coopsim: sequential reciprocity simulation, validation and case study"};
    app.require_subcommand(1, 1);
    Options o;

    auto seed_opt = [&](CLI::App* c) {
        c->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { o.seed = s; },
                                              "Random seed (falls back to COOP_SEED)");
    };
    auto out_opt = [&](CLI::App* c) { c->add_option("--out", o.out, "Output directory"); };
    auto par_opt = [&](CLI::App* c) {
        c->add_option("--parallel", o.parallel, "Worker threads")->check(CLI::PositiveNumber);
    };

    CLI::App* sim = app.add_subcommand("simulate", "Run a scenario file");
    sim->add_option("--scenario", o.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    seed_opt(sim);
    sim->add_option_function<int>("--periods", [&](const int& p) { o.periods = p; }, "Horizon override");
    sim->add_option_function<std::string>("--mode", [&](const std::string& m) { o.mode = m; },
                                          "adjustment or best_response")
        ->check(CLI::IsMember({"adjustment", "best_response"}));
    out_opt(sim);

    CLI::App* sweep = app.add_subcommand("sweep", "Full-factorial behavioural-target sweep");
    sweep->add_option("--grid", o.grid, "Grid file")->required()->check(CLI::ExistingFile);
    seed_opt(sweep);
    par_opt(sweep);
    sweep->add_option("--replicates", o.replicates, "Bootstrap replicates")->check(CLI::PositiveNumber);
    out_opt(sweep);

    CLI::App* mc = app.add_subcommand("montecarlo", "Parameter-perturbation robustness trials");
    mc->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
    mc->add_option("--perturb", o.perturb, "Relative perturbation half-width")->check(CLI::Range(0.0, 0.99));
    seed_opt(mc);
    par_opt(mc);
    mc->add_option("--replicates", o.replicates, "Bootstrap replicates")->check(CLI::PositiveNumber);
    out_opt(mc);

    CLI::App* cs = app.add_subcommand("case-study", "Platform ecosystem case study");
    cs->add_flag("--counterfactual", o.counterfactual, "Also run the counterfactual and evaluate");
    seed_opt(cs);
    cs->add_option_function<int>("--periods", [&](const int& p) { o.periods = p; }, "Horizon override");
    out_opt(cs);

    CLI::App* tr = app.add_subcommand("translate", "Dependency table and elicitation to a scenario");
    tr->add_option("--deps", o.deps, "Dependency CSV")->required()->check(CLI::ExistingFile);
    tr->add_option("--elicit", o.elicit, "Elicitation key/value file")->check(CLI::ExistingFile);
    tr->add_flag("--symmetric", o.symmetric, "Use the mutual-dependency sensitivity form");
    seed_opt(tr);
    out_opt(tr);

    CLI::App* pc = app.add_subcommand("prop-check", "Numerical checks of the three propositions");
    pc->add_option("--prop", o.prop, "1, 2, 3 or all")->check(CLI::IsMember({"1", "2", "3", "all"}));
    pc->add_option_function<int>("--k", [&](const int& k) { o.k = k; }, "Memory window for proposition 2")
        ->check(CLI::PositiveNumber);
    pc->add_option_function<double>("--kappa", [&](const double& k) { o.kappa = k; },
                                    "Response sensitivity for proposition 2")
        ->check(CLI::PositiveNumber);
    out_opt(pc);

    CLI::App* rp = app.add_subcommand("report", "Render markdown tables from earlier outputs");
    rp->add_option("--from", o.from, "Directory holding earlier outputs")->required()->check(CLI::ExistingDirectory);
    seed_opt(rp);
    rp->add_option("--replicates", o.replicates, "Bootstrap replicates")->check(CLI::PositiveNumber);
    out_opt(rp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return exit_invalid;
    }

    try {
        if (*sim) return cmd_simulate(o);
        if (*sweep) return cmd_sweep(o);
        if (*mc) return cmd_montecarlo(o);
        if (*cs) return cmd_case_study(o);
        if (*tr) return cmd_translate(o);
        if (*pc) return cmd_prop_check(o);
        if (*rp) return cmd_report(o);
    } catch (const coop::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    return exit_invalid;
}
