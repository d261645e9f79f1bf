#include "gabor/cli.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace gabor;
using fixtures::q;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(GABOR_SAMPLES_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST(WindowIo, RoundTripIsExact) {
    for (const Window& w : {fixtures::example_window(), fixtures::obstructed_window(), make_bspline(4)}) {
        Window r = window_from_json(nlohmann::json::parse(window_to_json(w).dump()));
        EXPECT_EQ(r.alpha(), w.alpha());
        ASSERT_EQ(r.pieces().size(), w.pieces().size());
        for (std::size_t i = 0; i < w.pieces().size(); ++i) {
            EXPECT_EQ(r.pieces()[i].lo, w.pieces()[i].lo);
            EXPECT_EQ(r.pieces()[i].hi, w.pieces()[i].hi);
            EXPECT_EQ(r.pieces()[i].poly.coeffs(), w.pieces()[i].poly.coeffs());
        }
    }
}

TEST(WindowIo, RejectsMalformed) {
    using nlohmann::json;
    EXPECT_THROW(window_from_json(json::parse(R"({"alpha":"1"})")), WindowFormatError);
    EXPECT_THROW(window_from_json(json::parse(R"({"alpha":"1/0","pieces":[]})")), WindowFormatError);
    EXPECT_THROW(window_from_json(json::parse(R"({"alpha":"1","pieces":[{"interval":["-1","1"],"coeffs":[0.5]}]})")),
                 WindowFormatError);
    // pieces that do not tile the support are rejected by the window itself
    EXPECT_THROW(window_from_json(json::parse(R"({"alpha":"1","pieces":[{"interval":["-1","0"],"coeffs":["1","1"]}]})")),
                 InvalidWindow);
    EXPECT_THROW(read_window("/nonexistent/w.json"), WindowFormatError);
    EXPECT_EQ(window_from_json(json::parse(R"({"bspline":3})")).alpha(), q(3, 2));
}

TEST(Cli, CheckReports) {
    auto r = call({"check", "--bspline", "2", "--a", "6/5", "--b", "7/10", "--json"});
    EXPECT_EQ(r.code, cli::Ok);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], "gabor.check/1");
    EXPECT_EQ(j["verdict"], "Frame");

    r = call({"check", "--window", sample("worked_example.json"), "--a", "1", "--b", "3/5", "--json"});
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(r.code, cli::Ok);
    EXPECT_EQ(j["verdict"], "Frame");
    EXPECT_EQ(j["M"], 2);
    EXPECT_EQ(j["kappa"], 1);

    r = call({"check", "--window", sample("obstructed.json"), "--a", "1", "--b", "0.6", "--json"});
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "NotFrame");
    EXPECT_EQ(j["failed_condition"], "ii");

    r = call({"check", "--bspline", "2", "--a", "5/2", "--b", "1/4", "--json"});
    EXPECT_EQ(r.code, cli::OutOfScopeExit);
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "OutOfScope");
    EXPECT_EQ(j["atlas_label"], "NotFrame_aGeN");
}

TEST(Cli, Errors) {
    EXPECT_EQ(call({"check", "--bspline", "2", "--a", "1/x", "--b", "1/2"}).code, cli::Failure);
    EXPECT_EQ(call({"check", "--a", "1", "--b", "1/2"}).code, cli::Failure);
    EXPECT_EQ(call({"check", "--bspline", "2", "--window", sample("obstructed.json"), "--a", "1", "--b", "1/2"}).code, cli::Failure);
    EXPECT_EQ(call({"check", "--window", "/nonexistent.json", "--a", "1", "--b", "1/2"}).code, cli::Failure);
    EXPECT_EQ(call({"frobnicate"}).code, cli::Failure);
    EXPECT_EQ(call({}).code, cli::Failure);
    EXPECT_EQ(call({"dual", "--window", sample("obstructed.json"), "--a", "1", "--b", "3/5"}).code, cli::Failure);
    EXPECT_EQ(call({"dual", "--bspline", "2", "--a", "5/2", "--b", "1/4"}).code, cli::OutOfScopeExit);
    EXPECT_EQ(call({"verify", "--bspline", "2", "--a", "1", "--b", "1/2", "--tol", "-1"}).code, cli::Failure);
    EXPECT_EQ(call({"zzbound", "--bspline", "2", "--a", "1", "--b", "1/1000"}).code, cli::Failure);
}

TEST(Cli, DualVerifyAndDeterminism) {
    std::string csv1 = testing::TempDir() + "h1.csv", csv2 = testing::TempDir() + "h2.csv", cases = testing::TempDir() + "h.json";
    std::vector<std::string> base{"dual", "--window", sample("worked_example.json"), "--a", "1", "--b", "3/5", "--grid", "401"};
    auto a1 = base, a2 = base;
    a1.insert(a1.end(), {"--out", csv1, "--cases", cases});
    a2.insert(a2.end(), {"--out", csv2});
    auto r1 = call(a1), r2 = call(a2);
    EXPECT_EQ(r1.code, cli::Ok);
    EXPECT_EQ(r1.out, r2.out);
    EXPECT_EQ(slurp(csv1), slurp(csv2));
    auto text = slurp(csv1);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 402);
    EXPECT_EQ(nlohmann::json::parse(slurp(cases))["schema"], "gabor.dual.cases/1");

    auto v = call({"verify", "--window", sample("worked_example.json"), "--a", "1", "--b", "3/5", "--grid", "2000"});
    EXPECT_EQ(v.code, cli::Ok);
    auto j = nlohmann::json::parse(v.out);
    EXPECT_EQ(j["schema"], "gabor.verify/1");
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_LT(j["overall"].get<double>(), 1e-9);
    EXPECT_EQ(j["per_n"].size(), 3u);
}

TEST(Cli, CurvesAtlasZz) {
    auto c = call({"curves", "--window", sample("obstructed.json")});
    EXPECT_EQ(c.code, cli::Ok);
    EXPECT_EQ(c.out.rfind("kind,y_plus", 0), 0u);
    EXPECT_NE(c.out.find("b=1/(-1/3+2a)"), std::string::npos);

    std::string out = testing::TempDir() + "atlas.csv", svg = testing::TempDir() + "atlas.svg";
    auto a = call({"atlas", "--bspline", "2", "--res", "20", "--out", out, "--svg", svg});
    EXPECT_EQ(a.code, cli::Ok);
    auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["schema"], "gabor.atlas/1");
    EXPECT_GT(j["counts"]["Frame_bSmall"].get<long>(), 0);
    EXPECT_GT(j["counts"]["Frame_RegionB"].get<long>(), 0);
    EXPECT_GT(j["counts"]["ConditionalOnStrip"].get<long>(), 0);
    auto text = slurp(out);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 401);
    EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);

    auto z = call({"zzbound", "--window", sample("worked_example.json"), "--a", "1", "--b", "3/5", "--grid", "32"});
    EXPECT_EQ(z.code, cli::Ok);
    EXPECT_GT(nlohmann::json::parse(z.out)["estimate"].get<double>(), 0);
}
