#include <toric/cli.hpp>

#include <gtest/gtest.h>

using namespace toric;
using namespace toric::cli;

namespace {

Options opts(std::string command, std::string input) {
    Options o;
    o.command = std::move(command);
    o.input = std::move(input);
    return o;
}

std::string data(const std::string& name) { return std::string(TORIC_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, FanCheck) {
    auto r = run(opts("fan-check", data("p2.json")));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.report["smooth"].get<bool>());
    EXPECT_TRUE(r.report["complete"].get<bool>());
    EXPECT_TRUE(r.report["projective"].get<bool>());
    auto q = run(opts("fan-check", data("quadrant.json")));
    EXPECT_EQ(q.exit_code, 0);
    EXPECT_FALSE(q.report["complete"].get<bool>());
    EXPECT_EQ(run(opts("fan-check", data("nonprimitive.json"))).exit_code, 2);
    EXPECT_EQ(run(opts("fan-check", data("overlapping.json"))).exit_code, 2);
    EXPECT_EQ(run(opts("fan-check", data("missing.json"))).exit_code, 3);
}

TEST(Cli, RingBuilders) {
    auto o = opts("ring", "hirzebruch_1");
    auto r = run(o);
    EXPECT_EQ(r.report["ring"]["dims"], Json::array({1, 2, 1}));
    o = opts("ring", "point+p2");
    for (const char* b : {"sd", "diff"}) {
        o.builder = b;
        auto s = run(o);
        EXPECT_EQ(s.exit_code, 0);
        EXPECT_EQ(s.report["ring"]["dims"], Json::array({1, 1, 1})) << b;
    }
    o = opts("ring", data("bad_chern_degree.json"));
    EXPECT_EQ(run(o).exit_code, 3);
    o = opts("ring", "flag_sl3");
    EXPECT_EQ(run(o).exit_code, 3);
}

TEST(Cli, DiffNeedsDegreeTwoGeneration) {
    // Q[a]/(a^3) with a in degree 2 is fine; Q[u]/(u^2) with u in degree 4 is not
    io::Json base = io::Json::parse(R"({"top_degree": 4, "basis": {"0": ["1"], "4": ["u"]},
                                        "products": [], "orientation": [[1, 1, "u"]]})");
    BundleSpec s{"s", io::read_base(base), {}, fan_p1()};
    s.chern.push_back(s.base.algebra.zero(2));
    ToricBundle b(s);
    EXPECT_THROW(ring_via_diff(b), PreconditionError);
}

TEST(Cli, Intersect) {
    auto o = opts("intersect", "point+p2");
    o.expr = "x1^2";
    o.verbosity = 1;
    auto r = run(o);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.report["value"], Json::array({1, 1}));
    EXPECT_FALSE(r.report["trace"].empty());
    o = opts("intersect", "point+p1");
    o.expr = "x1*x2";
    EXPECT_EQ(run(o).report["value"], Json::array({0, 1}));
    o = opts("intersect", "hirzebruch_1");
    o.expr = "x2^2";
    EXPECT_EQ(run(o).report["value"], Json::array({-1, 1}));
    o.expr = "3/2 * H * x1";
    EXPECT_EQ(run(o).report["value"], Json::array({3, 2}));
    o.expr = "x1";
    EXPECT_EQ(run(o).exit_code, 3);
    o.expr = "y7^2";
    EXPECT_EQ(run(o).exit_code, 3);
}

TEST(Cli, VerifyExitCodes) {
    auto o = opts("verify", "hirzebruch_1");
    o.suite = "bkk";
    o.seed = 5;
    auto r = run(o);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.report["seed"], 5);
    EXPECT_EQ(r.report["summary"]["failed"], 0);
    o = opts("verify", data("bad_chern_degree.json"));
    o.suite = "bkk";
    EXPECT_EQ(run(o).exit_code, 3);
    o = opts("verify", "p2");
    o.suite = "gz";
    EXPECT_EQ(run(o).exit_code, 3);
    o.suite = "nope";
    EXPECT_EQ(run(o).exit_code, 3);
}

TEST(Cli, ReportsAreDeterministic) {
    auto o = opts("verify", "point+f1");
    o.suite = "cc";
    o.seed = 9;
    EXPECT_EQ(run(o).report.dump(), run(o).report.dump());
    auto p = o;
    p.seed = 10;
    EXPECT_NE(run(o).report.dump(), run(p).report.dump());
}

TEST(Cli, FailedCheckSetsStatus) {
    Checks ch;
    ch.identity("x", Json::object(), {1, 2});
    ch.boolean("y", Json::object(), true, "");
    EXPECT_EQ(ch.passed(), 1u);
    EXPECT_EQ(ch.total(), 2u);
    EXPECT_EQ(ch.lines().front(), "FAIL x lhs=1 rhs=2");
}

TEST(Io, BaseRoundTrip) {
    for (const char* name : {"p2", "flag_sl3", "point"}) {
        BaseData b = *catalog_base(name);
        BaseData c = io::read_base(io::base_json(b));
        EXPECT_TRUE(c.algebra == b.algebra) << name;
        EXPECT_EQ(c.orientation.values, b.orientation.values) << name;
    }
}

TEST(Io, SpecRoundTripAndFileAgreement) {
    BundleSpec s = *catalog_spec("rank2_over_p2");
    BundleSpec t = io::read_spec(io::spec_json(s));
    EXPECT_EQ(t.fan.rays, s.fan.rays);
    ASSERT_EQ(t.chern.size(), s.chern.size());
    for (std::size_t m = 0; m < s.chern.size(); ++m) EXPECT_EQ(t.chern[m].coeffs, s.chern[m].coeffs);
    BundleSpec f = io::read_spec(io::read_json_file(data("rank2_over_p2.json")));
    ToricBundle a(s), b(f);
    EXPECT_EQ(a.sr().algebra.dims(), b.sr().algebra.dims());
}

TEST(Io, ChernMayLiveInsideBase) {
    io::Json j = io::read_json_file(data("hirzebruch_1.json"));
    j["base"]["chern"] = j["chern"];
    j.erase("chern");
    BundleSpec s = io::read_spec(j);
    EXPECT_EQ(s.chern.size(), 1u);
}

TEST(Io, Rationals) {
    EXPECT_EQ(io::parse_rat(io::Json::parse("[6, -4]")), Rat(-3, 2));
    EXPECT_EQ(io::parse_rat(io::Json::parse("\"7/3\"")), Rat(7, 3));
    EXPECT_EQ(io::rat_json(Rat(-3, 2)), io::Json::parse("[-3, 2]"));
    EXPECT_THROW(io::parse_rat(io::Json::parse("[1, 0]")), PreconditionError);
    Rat big = Rat(Int("123456789012345678901234567890"));
    EXPECT_EQ(io::parse_rat(io::rat_json(big)), big);
}

TEST(Io, RejectsMalformedBases) {
    EXPECT_THROW(io::read_base(io::read_json_file(data("odd_base.json"))["base"]), PreconditionError);
    io::Json nonassoc = io::Json::parse(R"({"top_degree": 4, "basis": {"0": ["1"], "2": ["a", "b"], "4": ["p"]},
        "products": [{"a": "a", "b": "a", "result": [[1, 1, "p"]]}], "orientation": [[1, 1, "p"]]})");
    EXPECT_NO_THROW(io::read_base(nonassoc));
    io::Json beyond = io::Json::parse(R"({"top_degree": 2, "basis": {"0": ["1"], "2": ["a"]},
        "products": [{"a": "a", "b": "a", "result": [[1, 1, "a"]]}], "orientation": [[1, 1, "a"]]})");
    EXPECT_THROW(io::read_base(beyond), PreconditionError);
}
