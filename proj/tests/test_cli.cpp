#include <gtest/gtest.h>

#include "toricomplex/cli.hpp"
#include "random_fans.hpp"

using namespace toricomplex;

namespace {

const std::string kSamples = TORICOMPLEX_SAMPLES_DIR;

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return kSamples + "/" + name; }

void expect_same_pair(const PairData& a, const PairData& b) {
    EXPECT_EQ(a.fan, b.fan);
    EXPECT_EQ(a.boundary, b.boundary);
    EXPECT_EQ(a.nef_trace, b.nef_trace);
    EXPECT_EQ(a.mode.kind, b.mode.kind);
    EXPECT_EQ(a.mode.cone, b.mode.cone);
    EXPECT_EQ(a.mode.base, b.mode.base);
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Io, RationalsTravelAsStrings) {
    EXPECT_EQ(io::to_json(Rat(-3, 6)), Json("-1/2"));
    EXPECT_EQ(io::rat_from_json(Json("4/8"), "x"), Rat(1, 2));
    EXPECT_EQ(io::rat_from_json(Json(3), "x"), 3);
    EXPECT_EQ(kind_of([] { io::rat_from_json(Json("1/0"), "x"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { io::rat_from_json(Json(0.5), "x"); }), ErrorKind::ParseError);
    Int big("123456789012345678901234567890");
    EXPECT_EQ(io::int_from_json(io::to_json(big), "x"), big);
}

TEST(Io, PairRoundTripOnRandomPairs) {
    std::mt19937_64 rng(81);
    int seen = 0;
    for (int t = 0; t < 200 && seen < 40; ++t) {
        auto p = t % 2 ? gen::random_projective_cy(rng, 3, 10) : gen::random_local_cy(rng, 3, 10);
        if (!p) continue;
        ++seen;
        OrbifoldDecomposition s;
        s.orbifold.assign(p->fan.num_rays(), Int(1));
        s.orbifold[0] = 3;
        for (std::size_t i = 0; i < p->boundary.size(); ++i)
            if (p->boundary[i] > 0) s.parts.push_back(Part{p->boundary[i], prime_divisor(p->fan, i)});
        Json doc = Json::parse(dump(to_json(*p, s)));
        expect_same_pair(pair_from_json(doc), *p);
        auto back = decomposition_from_json(doc, p->fan.num_rays());
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(back->orbifold, s.orbifold);
        ASSERT_EQ(back->parts.size(), s.parts.size());
        for (std::size_t j = 0; j < s.parts.size(); ++j) {
            EXPECT_EQ(back->parts[j].b, s.parts[j].b);
            EXPECT_EQ(back->parts[j].divisor, s.parts[j].divisor);
        }
    }
    EXPECT_GE(seen, 20);
}

TEST(Io, RejectsMalformedDocuments) {
    Json ok = Json::parse(R"({"schema": 1, "rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]], "boundary": ["1", "1"]})");
    EXPECT_NO_THROW(pair_from_json(ok));
    auto broken = [&](const std::function<void(Json&)>& edit) {
        Json d = ok;
        edit(d);
        return kind_of([&] {
            auto p = pair_from_json(d);
            decomposition_from_json(d, p.fan.num_rays());
        });
    };
    EXPECT_EQ(broken([](Json& d) { d.erase("schema"); }), ErrorKind::ParseError);
    EXPECT_EQ(broken([](Json& d) { d["schema"] = 2; }), ErrorKind::ParseError);
    EXPECT_EQ(broken([](Json& d) { d["rays"] = Json::parse("[[1, 0], [-1]]"); }), ErrorKind::ParseError);
    EXPECT_EQ(broken([](Json& d) { d["boundary"] = Json::parse(R"(["1"])"); }), ErrorKind::ParseError);
    EXPECT_EQ(broken([](Json& d) { d["mode"] = Json::parse(R"({"kind": "global"})"); }), ErrorKind::ParseError);
    EXPECT_EQ(broken([](Json& d) { d["decomposition"] = Json::parse(R"([{"b": "1", "support": {"5": "1"}}])"); }),
              ErrorKind::InvalidDecomposition);
    EXPECT_EQ(broken([](Json& d) { d["decomposition"] = Json::parse(R"([{"b": "1", "support": {"x": "1"}}])"); }), ErrorKind::ParseError);
}

TEST(Cli, ToricBoundaryOfP2HasComplexityZero) {
    auto r = run_cli({"complexity", "--input", sample("p2.json"), "--mode", "projective", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["c"], "0");
    EXPECT_EQ(j["c_fine"], "0");
    EXPECT_EQ(j["c_orb"], "0");
    auto sigma = decomposition_from_json(j["sigma"], 3);
    ASSERT_TRUE(sigma.has_value());
    EXPECT_EQ(sigma->total(3), InvariantDivisor(3, Rat(1)));
    auto text = run_cli({"complexity", "--input", sample("p2.json"), "--mode", "projective"});
    EXPECT_EQ(text.out.substr(0, text.out.find('\n')), "(c, c_fine, c_orb) = (0, 0, 0)");
}

TEST(Cli, AtiyahFlopChecks) {
    auto r = run_cli({"check", "small", "--input", sample("atiyah.json"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_TRUE(j["holds"].get<bool>());
    EXPECT_EQ(j["before"], j["after"]);
    EXPECT_EQ(j["claim"], "small-modification-preserves-complexity");
}

TEST(Cli, A1ConeIsomorphism) {
    auto r = run_cli({"cone", "--input", sample("a1-blowup.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "iso verified: A1 ≅ Cone(P1, O(2))");
    auto c = run_cli({"cone", "--input", sample("conifold-cone.json")});
    EXPECT_EQ(c.out.substr(0, c.out.find('\n')), "iso verified: conifold ≅ Cone(P1xP1, O(1,1))");
}

TEST(Cli, SurgerySamplesAndSuite) {
    EXPECT_EQ(run_cli({"check", "contract", "-i", sample("bl-p2-contract.json")}).code, 0);
    EXPECT_EQ(run_cli({"check", "extract", "-i", sample("p2-extract.json")}).code, 0);
    auto s = run_cli({"check", "suite", "--format", "json"});
    ASSERT_EQ(s.code, 0);
    Json j = Json::parse(s.out);
    EXPECT_EQ(j["passed"], j["total"]);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({"complexity", "-i", kSamples + "/missing.json"}).code, 3);
    EXPECT_EQ(run_cli({"complexity", "-i", "-"}, "{not json").code, 3);
    EXPECT_EQ(run_cli({"complexity"}).code, 3);  // --input is required
    // overlapping cones: a validation error naming the cones
    auto v = run_cli({"validate", "-i", "-"},
                     R"({"schema": 1, "rank": 2, "rays": [[1,0],[0,1],[1,1]], "max_cones": [[0,1],[0,2]], "boundary": ["1","1","1"]})");
    EXPECT_EQ(v.code, 1);
    EXPECT_NE(v.out.find("cone 1"), std::string::npos);
    auto lc = run_cli({"complexity", "-i", "-"},
                      R"({"schema": 1, "rank": 1, "rays": [[1],[-1]], "max_cones": [[0],[1]], "boundary": ["3/2","1"]})");
    EXPECT_EQ(lc.code, 1);
    EXPECT_NE(lc.err.find("ray 0"), std::string::npos);
    EXPECT_EQ(run_cli({"complexity", "-i", sample("p2.json"), "--orbifold-cap", "65"}).code, 1);
    EXPECT_EQ(cli::exit_code(ErrorKind::TheoremCheckFailed), 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, JsonReportRoundTrip) {
    std::mt19937_64 rng(83);
    int seen = 0;
    for (int t = 0; t < 100 && seen < 12; ++t) {
        auto p = gen::random_projective_cy(rng, 2, 7);
        if (!p) continue;
        ++seen;
        auto r = run_cli({"minimize", "-i", "-", "--format", "json"}, dump(to_json(*p)));
        ASSERT_EQ(r.code, 0) << r.err;
        Json j = Json::parse(r.out);
        auto rep = minimize(build_pair(*p));
        EXPECT_EQ(io::rat_from_json(j["c"], "c"), rep.c);
        EXPECT_EQ(io::rat_from_json(j["c_fine"], "c_fine"), rep.c_fine);
        EXPECT_EQ(io::rat_from_json(j["c_orb"], "c_orb"), rep.c_orb);
        // the reported decomposition re-evaluates to the reported value
        auto sigma = decomposition_from_json(j["sigma"], p->fan.num_rays());
        ASSERT_TRUE(sigma.has_value());
        EXPECT_EQ(orbifold_complexity(p->fan, p->boundary, p->mode, *sigma), rep.c_orb);
        EXPECT_EQ(dump(j), r.out);
    }
    EXPECT_GE(seen, 6);
}

TEST(Cli, DeterministicAcrossRunsAndThreadCounts) {
    std::mt19937_64 rng(89);
    int seen = 0;
    for (int t = 0; t < 100 && seen < 8; ++t) {
        auto p = t % 2 ? gen::random_projective_cy(rng, 3, 8) : gen::random_local_cy(rng, 3, 8);
        if (!p) continue;
        ++seen;
        std::string doc = dump(to_json(*p));
        auto first = run_cli({"minimize", "-i", "-", "--format", "json", "--threads", "1"}, doc);
        ASSERT_EQ(first.code, 0) << first.err;
        for (const char* threads : {"1", "2", "4"}) EXPECT_EQ(run_cli({"minimize", "-i", "-", "--format", "json", "--threads", threads}, doc).out, first.out);
    }
    EXPECT_GE(seen, 4);
}
