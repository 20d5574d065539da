#include <gtest/gtest.h>

#include "coop/stats.hpp"

using namespace coop;
using namespace coop::stats;

// Reference values frozen from scipy 1.15.3.

TEST(Stats, WilcoxonAgainstReference)
{
    const std::vector<double> x{1.9, 2.3, 1.7, 1.5, 2.3, 1.2, 2.8, 1.9, 3.1, 1.6, 1.9, 0.9, 2.05, 2.3};
    const Wilcoxon w = wilcoxon_signed_rank(x, 1.5);
    EXPECT_EQ(w.n, 13u);  // the zero difference is dropped
    EXPECT_DOUBLE_EQ(w.w_plus, 80.0);
    EXPECT_DOUBLE_EQ(w.w_plus + w.w_minus, 13.0 * 14.0 / 2.0);
    EXPECT_NEAR(w.z, 2.3819361099538, 1e-10);
    EXPECT_NEAR(w.p_greater, 0.00861094254968942, 1e-12);
}

TEST(Stats, WilcoxonAllZeroIsDegenerate)
{
    const Wilcoxon w = wilcoxon_signed_rank({1.5, 1.5, 1.5}, 1.5);
    EXPECT_TRUE(w.degenerate);
    EXPECT_EQ(w.p_greater, 1.0);
}

TEST(Stats, PairedTTestAgainstReference)
{
    const std::vector<double> a{0.81, 0.62, 0.93, 0.55, 0.70, 0.88, 0.64, 0.79};
    const std::vector<double> b{0.41, 0.50, 0.47, 0.30, 0.52, 0.39, 0.44, 0.45};
    const TTest t = paired_ttest(a, b);
    EXPECT_EQ(t.n, 8u);
    EXPECT_DOUBLE_EQ(t.df, 7.0);
    EXPECT_NEAR(t.t, 6.272632736750261, 1e-10);
    EXPECT_NEAR(t.p_two_sided, 0.0004149709460162401, 1e-13);
    EXPECT_NEAR(t.p_greater, 0.00020748547300812004, 1e-13);
}

TEST(Stats, PairedTTestConstantDifference)
{
    const TTest t = paired_ttest({1, 2, 3}, {0, 1, 2});
    EXPECT_TRUE(t.degenerate);
}

TEST(Stats, PairedTTestLengthMismatch)
{
    EXPECT_THROW(paired_ttest({1, 2}, {1}), ValidationError);
}

TEST(Stats, CohensDAgainstReference)
{
    const std::vector<double> a{0.81, 0.62, 0.93, 0.55, 0.70, 0.88, 0.64, 0.79};
    const std::vector<double> b{0.41, 0.50, 0.47, 0.30, 0.52, 0.39, 0.44, 0.45};
    EXPECT_NEAR(cohens_d(a, b).d, 2.8619714364655446, 1e-12);
    EXPECT_NEAR(cohens_d(b, a).d, -2.8619714364655446, 1e-12);
    EXPECT_EQ(effect_label(2.86), "large");
    EXPECT_EQ(effect_label(0.1), "negligible");
}

TEST(Stats, QuantilesMatchLinearInterpolation)
{
    std::vector<double> x{3, 1, 4, 1, 5, 9, 2, 6};
    std::sort(x.begin(), x.end());
    EXPECT_NEAR(quantile_sorted(x, 0.3), 2.1, 1e-12);
    EXPECT_NEAR(quantile_sorted(x, 0.975), 8.475, 1e-12);
    EXPECT_EQ(quantile_sorted(x, 0.0), 1.0);
    EXPECT_EQ(quantile_sorted(x, 1.0), 9.0);
}

TEST(Stats, MeanAndSampleSd)
{
    EXPECT_DOUBLE_EQ(mean({2, 4, 6}), 4.0);
    EXPECT_DOUBLE_EQ(sd({2, 4, 6}), 2.0);
}

TEST(Stats, BootstrapIsSeededAndBracketsTheMean)
{
    std::vector<double> x;
    for (int i = 0; i < 50; ++i) x.push_back(0.1 * i);
    const Interval a = bootstrap_mean_ci(x, 2000, 11);
    const Interval b = bootstrap_mean_ci(x, 2000, 11);
    const Interval c = bootstrap_mean_ci(x, 2000, 12);
    EXPECT_EQ(a.lo, b.lo);
    EXPECT_EQ(a.hi, b.hi);
    EXPECT_TRUE(a.lo != c.lo || a.hi != c.hi);
    EXPECT_LT(a.lo, mean(x));
    EXPECT_GT(a.hi, mean(x));
}

TEST(Stats, BootstrapOfConstantSampleCollapses)
{
    const Interval i = bootstrap_mean_ci({3, 3, 3, 3}, 100, 1);
    EXPECT_EQ(i.lo, 3.0);
    EXPECT_EQ(i.hi, 3.0);
}
