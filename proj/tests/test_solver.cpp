#include <gtest/gtest.h>

#include "coop/propositions.hpp"
#include "coop/solver.hpp"
#include "support.hpp"

using namespace coop;

TEST(GridArgmax, ConstantUtilityPicksLowestPoint)
{
    EXPECT_EQ(grid_argmax([](double) { return 1.0; }, 10.0, 201), 0.0);
}

TEST(GridArgmax, SinglePeak)
{
    EXPECT_DOUBLE_EQ(grid_argmax([](double a) { return -(a - 7.0) * (a - 7.0); }, 10.0, 21), 7.0);
}

TEST(GridArgmax, LastPointIsExactlyTheBound)
{
    EXPECT_EQ(grid_point(3.3, 7, 6), 3.3);
    EXPECT_EQ(grid_argmax([](double a) { return a; }, 3.3, 7), 3.3);
}

TEST(GoldenSection, FindsInteriorMaximum)
{
    EXPECT_NEAR(golden_max([](double a) { return -(a - 1.234) * (a - 1.234); }, 0.0, 3.0, 1e-10), 1.234, 1e-8);
}

TEST(BestResponse, MatchesExhaustiveScanOnRandomConfigs)
{
    StreamRng rng(21, 0);
    SolverConfig cfg;
    cfg.grid_points = 61;
    for (int c = 0; c < 200; ++c) {
        const UtilityContext ctx = coop::testing::random_context(rng);
        const Objective u = decision_objective(ctx);
        const ActionProfile a{rng.uniform(0.0, ctx.econ.a_max[0]), rng.uniform(0.0, ctx.econ.a_max[1])};
        const std::size_t i = rng.below(2);
        double best_x = 0.0, best_v = -INFINITY;
        for (int g = 0; g < cfg.grid_points; ++g) {
            ActionProfile b = a;
            b[i] = grid_point(ctx.econ.a_max[i], cfg.grid_points, g);
            const double v = u(i, b);
            if (v > best_v) {
                best_v = v;
                best_x = b[i];
            }
        }
        EXPECT_EQ(best_response(i, a, u, ctx.econ.a_max[i], cfg), best_x) << "config " << c;
    }
}

TEST(BestResponse, RefinementNeverWorseThanGrid)
{
    StreamRng rng(22, 0);
    SolverConfig cfg;
    cfg.grid_points = 21;
    cfg.refine = true;
    for (int c = 0; c < 50; ++c) {
        const UtilityContext ctx = coop::testing::random_context(rng);
        const Objective u = decision_objective(ctx);
        ActionProfile a{1.0, 1.0};
        SolverConfig plain = cfg;
        plain.refine = false;
        const double g = best_response(0, a, u, ctx.econ.a_max[0], plain);
        const double r = best_response(0, a, u, ctx.econ.a_max[0], cfg);
        ActionProfile ag = a, ar = a;
        ag[0] = g;
        ar[0] = r;
        EXPECT_GE(u(0, ar), u(0, ag));
        EXPECT_LE(std::fabs(r - g), ctx.econ.a_max[0] / 20.0 + 1e-12);
    }
}

TEST(Equilibrium, PrisonersDilemmaWithoutReciprocityUnravels)
{
    const EquilibriumResult r = solve_equilibrium(pd_context(0.0), {10.0, 10.0}, precise_solver());
    ASSERT_TRUE(r.converged);
    EXPECT_LT(r.actions[0], 1e-3);
    EXPECT_LT(r.actions[1], 1e-3);
}

TEST(Equilibrium, PrisonersDilemmaWithReciprocityCooperates)
{
    UtilityContext ctx = pd_context(1.0);
    ctx.norm = {10.0, 10.0};
    const EquilibriumResult r = solve_equilibrium(ctx, {10.0, 10.0}, precise_solver());
    ASSERT_TRUE(r.converged);
    EXPECT_DOUBLE_EQ(r.actions[0], 10.0);
    EXPECT_DOUBLE_EQ(r.actions[1], 10.0);
}

TEST(Equilibrium, SymmetricStartStaysSymmetric)
{
    const EquilibriumResult r = solve_equilibrium(interior_context(), {3.0, 3.0}, SolverConfig{});
    ASSERT_TRUE(r.converged);
    EXPECT_LT(std::fabs(r.actions[0] - r.actions[1]), 1e-6);
}

TEST(Equilibrium, ConvergedMeansFixedPoint)
{
    StreamRng rng(23, 0);
    SolverConfig cfg;
    cfg.grid_points = 41;
    for (int c = 0; c < 30; ++c) {
        const UtilityContext ctx = coop::testing::random_context(rng);
        const EquilibriumResult r = solve_equilibrium(ctx, {0.0, 0.0}, cfg);
        ASSERT_TRUE(r.converged);
        EXPECT_LT(r.residual, cfg.tolerance);
        const Objective u = decision_objective(ctx);
        for (std::size_t i = 0; i < 2; ++i)
            EXPECT_EQ(best_response(i, r.actions, u, ctx.econ.a_max[i], cfg), r.actions[i]);
    }
}

TEST(Equilibrium, UnconvergedResultIsFlaggedNotThrown)
{
    SolverConfig cfg;
    cfg.max_iters = 1;
    const EquilibriumResult r = solve_equilibrium(pd_context(0.0), {10.0, 10.0}, cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 1);
}

TEST(Equilibrium, JacobiTwoCycleFallsBack)
{
    // Pure coordination from a mismatched start: simultaneous updates swap forever.
    const Objective u = [](std::size_t, const ActionProfile& a) { return a[0] == a[1] ? 1.0 : 0.0; };
    SolverConfig cfg;
    cfg.grid_points = 2;
    cfg.max_iters = 20;
    cfg.cycle_fallback = false;
    EXPECT_FALSE(solve_equilibrium(u, {1.0, 1.0}, {0.0, 1.0}, cfg).converged);
    cfg.cycle_fallback = true;
    const EquilibriumResult r = solve_equilibrium(u, {1.0, 1.0}, {0.0, 1.0}, cfg);
    EXPECT_TRUE(r.fell_back);
    ASSERT_TRUE(r.converged);
    EXPECT_EQ(r.actions[0], r.actions[1]);
}

TEST(Equilibrium, AgreesWithExhaustiveNashSearch)
{
    const auto o = coop::testing::solver_oracle(50, 41, 24);
    EXPECT_EQ(o.agree, o.cases) << o.unconverged << " unconverged";
}

TEST(Equilibrium, InvestmentRisesWithComplementarity)
{
    double prev = -1.0;
    for (double gamma : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        UtilityContext ctx = interior_context(1.0, 0.7, 0.0);
        ctx.econ.gamma = gamma;
        const EquilibriumResult r = solve_equilibrium(ctx, {1.0, 1.0}, SolverConfig{});
        ASSERT_TRUE(r.converged);
        const double m = 0.5 * (r.actions[0] + r.actions[1]);
        EXPECT_GE(m, prev) << "gamma " << gamma;
        prev = m;
    }
}

TEST(CriticalRho, Formula)
{
    EXPECT_DOUBLE_EQ(critical_rho(1.0, 1.0, 1.0, 0.0, 0.5, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(critical_rho(1.0, 1.0, 1.0, 0.0, 0.5, 2.0), 0.5);
    EXPECT_NEAR(critical_rho(0.5, 1.0, 0.7, 1.0, 0.6, 1.2), 0.372, 5e-4);
    EXPECT_THROW(critical_rho(1.0, 0.0, 1.0, 0.0, 0.5, 1.0), ValidationError);
}

TEST(Forgiveness, WithinOneToTwoWindows)
{
    for (int k : {1, 5, 10})
        for (double kappa : {0.5, 1.0, 2.0}) {
            const auto tau = measure_forgiveness_time(k, kappa, 0.5);
            ASSERT_TRUE(tau.has_value()) << k << ' ' << kappa;
            EXPECT_GE(*tau, k);
            EXPECT_LE(*tau, 2 * k);
        }
}

TEST(Forgiveness, ShortMemoryRecoversFast)
{
    EXPECT_LE(*measure_forgiveness_time(1, 1.0, 0.5), 2);
    EXPECT_EQ(*measure_forgiveness_time(5, 1.0, 0.0), 0);
}

TEST(Forgiveness, SharpResponseApproachesWindow)
{
    const auto tau = measure_forgiveness_time(5, 5.0, 0.5);
    ASSERT_TRUE(tau.has_value());
    EXPECT_LE(std::abs(*tau - 5), 1);
}

TEST(CrossPartial, PositiveAndStableUnderHalving)
{
    const CrossPartial a = cross_partial_check(0.7, 1.0, 0.05, 0.05);
    const CrossPartial b = cross_partial_check(0.7, 1.0, 0.025, 0.025);
    ASSERT_TRUE(a.conclusive);
    ASSERT_TRUE(b.conclusive);
    EXPECT_GT(a.value, 0.0);
    EXPECT_GT(b.value, 0.0);
}

TEST(CrossPartial, VanishesWithoutReciprocity)
{
    const CrossPartial z = cross_partial_check(0.7, 1.0, 0.05, 0.05, 0.0);
    ASSERT_TRUE(z.conclusive);
    EXPECT_LT(std::fabs(z.value), 1e-6);
}
