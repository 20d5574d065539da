#include <gtest/gtest.h>

#include <sstream>

#include "coop/model.hpp"
#include "coop/scenario_io.hpp"

using namespace coop;

TEST(Interdependence, RejectsDiagonalAndOutOfRange)
{
    InterdependenceMatrix d(3);
    EXPECT_THROW(d.set(1, 1, 0.5), ValidationError);
    EXPECT_THROW(d.set(0, 1, 1.5), ValidationError);
    EXPECT_THROW(d.set(0, 1, -0.1), ValidationError);
    d.set(0, 1, 1.0);
    EXPECT_DOUBLE_EQ(d(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(d(1, 0), 0.0);
}

TEST(Interdependence, SingleDependumIsItsCriticality)
{
    const std::vector<DependencyEntry> e{{0, 1, "api", "resource", 1.0, true, 0.5}};
    EXPECT_DOUBLE_EQ(compute_interdependence(e, 2)(0, 1), 0.5);
}

TEST(Interdependence, WeightedMeanAndMissingDependums)
{
    // (2*1*0.9 + 1*0*0.6 + 1*1*0.3) / 4 = 0.525
    const std::vector<DependencyEntry> e{{0, 1, "a", "goal", 2.0, true, 0.9},
                                         {0, 1, "b", "task", 1.0, false, 0.6},
                                         {0, 1, "c", "task", 1.0, true, 0.3}};
    const auto d = compute_interdependence(e, 2);
    EXPECT_NEAR(d(0, 1), 0.525, 1e-15);
    EXPECT_EQ(d(1, 0), 0.0);
}

TEST(Interdependence, ZeroWeightPairIsAnError)
{
    const std::vector<DependencyEntry> e{{0, 1, "a", "goal", 0.0, true, 0.9}};
    EXPECT_THROW(compute_interdependence(e, 2), ValidationError);
}

TEST(Interdependence, PlatformTableFromShippedCsv)
{
    std::vector<std::string> labels{"Apple", "Major", "Small"};
    const auto e = load_dependency_csv(std::string(COOP_DATA_DIR) + "/ios_dependencies.csv", labels, false);
    const auto d = compute_interdependence(e, 3);
    EXPECT_NEAR(d(1, 0), 0.8775, 1e-4);
    EXPECT_NEAR(d(2, 0), 0.9195, 1e-4);
    EXPECT_NEAR(d(0, 1), 0.6575, 1e-4);
    EXPECT_NEAR(d(0, 2), 0.7075, 1e-4);
}

TEST(Sensitivity, SoftwareEcosystemExample)
{
    // Independent values of 1.2 * D^1.2.
    EXPECT_NEAR(reciprocity_sensitivity(1.2, 0.8, 1.2), 0.9180983997984355, 1e-14);
    EXPECT_NEAR(reciprocity_sensitivity(1.2, 0.3, 1.2), 0.2829611108147842, 1e-14);
}

TEST(Sensitivity, EdgeCasesAndMonotonicity)
{
    EXPECT_EQ(reciprocity_sensitivity(1.0, 0.0, 1.0), 0.0);
    EXPECT_EQ(reciprocity_sensitivity(1.0, 0.0, 0.0), 1.0);  // D^0 = 1
    EXPECT_DOUBLE_EQ(reciprocity_sensitivity(0.7, 1.0, 2.5), 0.7);
    double prev = -1.0;
    for (int i = 0; i <= 20; ++i) {
        const double r = reciprocity_sensitivity(1.0, i / 20.0, 1.3);
        EXPECT_GE(r, prev);
        prev = r;
    }
    EXPECT_THROW(reciprocity_sensitivity(1.0, 1.2, 1.0), ValidationError);
}

TEST(Sensitivity, SymmetricFormUsesGeometricMean)
{
    EXPECT_NEAR(symmetric_sensitivity(1.0, 0.9, 0.4, 1.0), 0.6, 1e-15);
    InterdependenceMatrix d(2);
    d.set(0, 1, 0.9);
    d.set(1, 0, 0.4);
    const auto rho = sensitivity_matrix(d, ReciprocityParams{}, true);
    EXPECT_DOUBLE_EQ(rho(0, 1), rho(1, 0));
}

TEST(Params, Validation)
{
    ReciprocityParams r;
    EXPECT_NO_THROW(r.validate());
    r.rho0 = 0.0;
    EXPECT_NO_THROW(r.validate());
    r.kappa = 0.0;
    EXPECT_THROW(r.validate(), ValidationError);
    r = {};
    r.memory_k = 0;
    EXPECT_THROW(r.validate(), ValidationError);

    TrustParams t;
    EXPECT_NO_THROW(t.validate());
    EXPECT_NEAR(t.lambda_minus / t.lambda_plus, 3.0, 1e-12);
    t.t0 = 1.1;
    EXPECT_THROW(t.validate(), ValidationError);
}
