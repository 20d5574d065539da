#include <gtest/gtest.h>

#include <sstream>

#include "coop/scenario_io.hpp"

using namespace coop;

namespace {
KeyValueFile kv(const std::string& text)
{
    std::istringstream is(text);
    return KeyValueFile::parse(is, "t.conf");
}

std::string error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}
}  // namespace

TEST(Config, ParsesCommentsAndWhitespace)
{
    const auto f = kv("# header\n  a = 1  # trailing\n\nb=two words\n");
    EXPECT_EQ(f.entries().size(), 2u);
    EXPECT_EQ(f.get_int("a", 0), 1);
    EXPECT_EQ(f.get_string("b", ""), "two words");
}

TEST(Config, LastValueWins)
{
    const auto f = kv("a = 1\na = 2\n");
    EXPECT_EQ(f.get_int("a", 0), 2);
    EXPECT_EQ(f.all("a").size(), 2u);
}

TEST(Config, UnusedKeysAreReported)
{
    const auto f = kv("a = 1\ntypo = 3\n");
    (void)f.get_int("a", 0);
    ASSERT_EQ(f.unused(), std::vector<std::string>{"typo"});
    EXPECT_NE(error_of([&] { f.require_all_used(); }).find("typo"), std::string::npos);
}

TEST(Config, ErrorsCarryLineNumbers)
{
    EXPECT_NE(error_of([] { kv("a = 1\nno equals sign\n"); }).find("t.conf:2"), std::string::npos);
    const auto f = kv("\n\nx = abc\n");
    EXPECT_NE(error_of([&] { (void)f.get_double("x", 0.0); }).find("t.conf:3"), std::string::npos);
}

TEST(Config, ParsesScalarsStrictly)
{
    EXPECT_EQ(parse_double(" 2.5 ", "v"), 2.5);
    EXPECT_THROW(parse_double("2.5x", "v"), ValidationError);
    EXPECT_THROW(parse_int("1.0", "v"), ValidationError);
    EXPECT_TRUE(parse_bool("true", "v"));
    EXPECT_FALSE(parse_bool("false", "v"));
    EXPECT_THROW(parse_bool("maybe", "v"), ValidationError);
}

TEST(Config, ScenarioRoundTrip)
{
    const auto f = kv(
        "actors = A, B\n"
        "d.A.B = 0.8\n"
        "d.B.A = 0.3\n"
        "rho0 = 0.7\nk = 6\nkappa = 2\n"
        "signal_ref = moving_average\n"
        "noise_sigma = 0.01\nseed = 7\nhorizon = 40\n"
        "shock = 21, B, -0.3\n");
    const ScenarioFile a = load_scenario(f);
    EXPECT_EQ(a.scenario.labels, (std::vector<std::string>{"A", "B"}));
    EXPECT_DOUBLE_EQ(a.scenario.dep(0, 1), 0.8);
    EXPECT_EQ(a.scenario.recip.memory_k, 6);
    ASSERT_EQ(a.sim.shocks.size(), 1u);
    EXPECT_EQ(a.sim.shocks[0].target, 1u);

    std::ostringstream out;
    write_scenario(out, a.scenario, a.sim);
    const ScenarioFile b = load_scenario(kv(out.str()));
    std::ostringstream again;
    write_scenario(again, b.scenario, b.sim);
    EXPECT_EQ(out.str(), again.str());

    const Trajectory ta = run(a.scenario, a.sim);
    const Trajectory tb = run(b.scenario, b.sim);
    EXPECT_EQ(ta.actions, tb.actions);
}

TEST(Config, ScenarioRejectsUnknownKeysAndActors)
{
    EXPECT_NE(error_of([] { load_scenario(kv("actors = A, B\nrho = 1\n")); }).find("rho"), std::string::npos);
    EXPECT_THROW(load_scenario(kv("actors = A, B\nd.A.C = 0.5\n")), ValidationError);
    EXPECT_THROW(load_scenario(kv("actors = A, B\nshock = 3, C, 1\n")), ValidationError);
    EXPECT_THROW(load_scenario(kv("rho0 = 1\n")), ValidationError);
    EXPECT_THROW(load_scenario(kv("actors = A, B\nmode = sideways\n")), ValidationError);
}

TEST(Config, DependencyCsvHeaderChecked)
{
    std::vector<std::string> labels;
    std::istringstream bad("a,b,c\n");
    EXPECT_NE(error_of([&] { read_dependency_csv(bad, labels); }).find("unexpected dependency header"),
              std::string::npos);
    std::istringstream ok(
        "depender,dependee,dependum,type,weight,exists,criticality\n"
        "X,Y,goods,resource,1,true,0.5\n"
        "Y,X,money,resource,2,true,1.2\n");
    EXPECT_THROW(read_dependency_csv(ok, labels), ValidationError);
}

TEST(Config, DependencyCsvAppendsNewActors)
{
    std::vector<std::string> labels;
    std::istringstream is(
        "depender,dependee,dependum,type,weight,exists,criticality\n"
        "X,Y,goods,resource,1,true,0.5\n");
    const auto e = read_dependency_csv(is, labels);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(labels, (std::vector<std::string>{"X", "Y"}));
}
