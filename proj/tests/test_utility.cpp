#include <gtest/gtest.h>

#include "coop/utility.hpp"
#include "support.hpp"

using namespace coop;

namespace {
UtilityContext two_actor()
{
    EconomyParams e = EconomyParams::symmetric(2, 1.0, 10.0);
    e.theta_v = 2.0;
    e.gamma = 0.5;
    InterdependenceMatrix d(2);
    d.set(0, 1, 0.6);
    d.set(1, 0, 0.2);
    ReciprocityParams r{1.0, 1.0, 1.0, 5, 0.5, 1.0};
    UtilityContext ctx = make_context(e, d, r, 0.8, 1.0);
    ctx.norm = {2.0, 2.0};
    return ctx;
}
}  // namespace

TEST(Payoff, HandComputedTwoActor)
{
    const UtilityContext ctx = two_actor();
    const ActionProfile a{3.0, 4.0};
    const double syn = 0.5 * std::sqrt(12.0);
    const double p0 = 1.0 - 3.0 + 2.0 * std::log1p(3.0) + 0.5 * syn;
    const double p1 = 1.0 - 4.0 + 2.0 * std::log1p(4.0) + 0.5 * syn;
    EXPECT_NEAR(private_payoff(0, a, ctx.econ), p0, 1e-12);
    EXPECT_NEAR(value_creation(a, ctx.econ), 2.0 * std::log1p(3.0) + 2.0 * std::log1p(4.0) + syn, 1e-12);

    const UtilityBreakdown u = complete_utility(0, a, ctx);
    EXPECT_NEAR(u.base, p0, 1e-12);
    EXPECT_NEAR(u.interdep, 0.6 * p1, 1e-12);
    EXPECT_NEAR(u.trust_mod, 0.8 * 0.6 * p1, 1e-12);
    const double rho = 0.6;  // 1.0 * 0.6^1
    EXPECT_NEAR(u.recip_mod, 0.5 * 0.8 * 1.6 * rho * std::tanh(2.0), 1e-12);
}

TEST(Payoff, SynergyNeedsEveryone)
{
    EXPECT_EQ(synergy({0.0, 5.0}, 1.0), 0.0);
    EXPECT_EQ(synergy({3.0, 5.0}, 0.0), 0.0);
    EXPECT_NEAR(synergy({2.0, 8.0}, 1.0), 4.0, 1e-12);
}

TEST(Payoff, PowerValueForm)
{
    EconomyParams e = EconomyParams::symmetric(1, 0.0, 10.0);
    e.value_form = ValueForm::power;
    e.power_beta = 0.5;
    EXPECT_NEAR(individual_value(9.0, e), 3.0, 1e-12);
    EXPECT_THROW(individual_value(-1.0, e), ValidationError);
}

TEST(Utility, AnticipatedReciprocityRewardsOwnCooperation)
{
    UtilityContext ctx = two_actor();
    EXPECT_GT(anticipated_reciprocity(0, 5.0, ctx), 0.0);
    EXPECT_LT(anticipated_reciprocity(0, 0.0, ctx), 0.0);
    EXPECT_EQ(anticipated_reciprocity(0, 2.0, ctx), 0.0);
    ctx.recip.lambda_r = 0.0;
    EXPECT_EQ(anticipated_reciprocity(0, 5.0, ctx), 0.0);
    const ActionProfile a{3.0, 4.0};
    EXPECT_DOUBLE_EQ(decision_utility(0, a, ctx), complete_utility(0, a, ctx).total);
}

TEST(Utility, BreakdownSumsToTotalOnThousandStates)
{
    const auto r = coop::testing::utility_suite(1000, 14);
    EXPECT_EQ(r.cases, 1000);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Team, LoyaltyLowersCostAndWeighsMates)
{
    TeamParams t;
    t.members = {0, 1, 2};
    t.omega_prod = 3.0;
    t.beta_team = 0.5;
    t.unit_cost = 1.0;
    t.loyalty = {1.0, 0.0, 0.0};
    const ActionProfile a{1.0, 2.0, 3.0};
    const double share = std::sqrt(6.0);           // 3 * 6^0.5 / 3
    const double mates = (share - 2.0) + (share - 3.0);
    EXPECT_NEAR(team_utility(0, a, t), share - 0.7 * 1.0 + 0.8 * mates, 1e-12);
    EXPECT_NEAR(team_utility(1, a, t), share - 2.0, 1e-12);
    t.aggregate = TeammateAggregate::mean;
    EXPECT_NEAR(team_utility(0, a, t), share - 0.7 + 0.8 * mates / 2.0, 1e-12);
    EXPECT_THROW(team_utility(5, a, t), ValidationError);
}

TEST(Team, CostCoefficients)
{
    EXPECT_DOUBLE_EQ(effective_cost_coefficient(0.5, 0.3, 2.0), 1.7);
    EXPECT_DOUBLE_EQ(teammate_weight(0.5, 0.8), 0.4);
}
