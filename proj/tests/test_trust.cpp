#include <gtest/gtest.h>

#include "coop/trust.hpp"
#include "support.hpp"

using namespace coop;

TEST(Trust, ErosionStepOracle)
{
    // R' = 0.6*0.5*(1-0) = 0.3; ceiling = min(0.9, 1 - 0.6*0.3) = 0.82
    // dT = 0.3 * (-0.5) * 0.7 * (1 + 0.5*0.5) = -0.13125
    const DyadState n = update_trust({0.7, 0.0, 0.0}, -0.5, 0.5, TrustParams{});
    EXPECT_NEAR(n.reputation, 0.3, 1e-15);
    EXPECT_NEAR(n.trust, 0.56875, 1e-15);
}

TEST(Trust, BuildingStepOracle)
{
    // dT = 0.1 * 0.5 * (0.9 - 0.5) = 0.02
    const DyadState n = update_trust({0.5, 0.0, 0.0}, 0.5, 0.5, TrustParams{});
    EXPECT_NEAR(n.trust, 0.52, 1e-15);
    EXPECT_EQ(n.reputation, 0.0);
}

TEST(Trust, ReputationDecaysOnCooperation)
{
    const DyadState n = update_trust({0.5, 0.4, 0.0}, 0.1, 0.5, TrustParams{});
    EXPECT_NEAR(n.reputation, 0.4 * (1 - 0.03), 1e-15);
}

TEST(Trust, NewCeilingBindsImmediately)
{
    // High trust, heavy violation: trust can never sit above the fresh ceiling.
    TrustParams p;
    p.lambda_minus = 0.01;
    const DyadState n = update_trust({0.9, 0.0, 0.0}, -1.0, 0.0, p);
    EXPECT_LE(n.trust, trust_ceiling(n.reputation, p.t_max, p.theta_r));
}

TEST(Trust, NegativityBias)
{
    const TrustParams p;
    EXPECT_DOUBLE_EQ(negativity_ratio(p), 3.0);
    const DyadState up = update_trust({0.5, 0.0, 0.0}, 0.2, 0.0, p);
    const DyadState down = update_trust({0.5, 0.0, 0.0}, -0.2, 0.0, p);
    EXPECT_GT(0.5 - down.trust, up.trust - 0.5);
}

TEST(Trust, ZeroSignalLeavesTrustAlone)
{
    const DyadState n = update_trust({0.6, 0.2, 0.0}, 0.0, 0.7, TrustParams{});
    EXPECT_DOUBLE_EQ(n.trust, 0.6);
}

TEST(Trust, RandomSequencesStayInRange)
{
    const auto r = coop::testing::trust_suite(10000, 30, 13);
    EXPECT_EQ(r.cases, 10000);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}
