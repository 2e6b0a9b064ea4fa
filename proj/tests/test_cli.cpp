#include "gitkit/cli.hpp"
#include "gitkit/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gitkit;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    CliRun r;
    r.code = cli::dispatch(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string tmp_path(const std::string& name)
{
    const char* base = std::getenv("GITKIT_TEST_TMP");
    std::filesystem::path dir = base ? base : std::filesystem::temp_directory_path();
    dir /= "cli_fixtures";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string write_file(const std::string& name, const std::string& content)
{
    std::string path = tmp_path(name);
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

Json results_of(const CliRun& r) { return Json::parse(r.out).at("results"); }

}  // namespace

TEST(Cli, WallsForQuartics)
{
    CliRun r = run({"walls", "--d", "4"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    Json res = results_of(r);
    EXPECT_EQ(res["walls"], Json::parse(R"(["-2","0","2"])"));
    EXPECT_EQ(res["endpoints"], Json::parse(R"(["-2","2"])"));
    Json manifest = Json::parse(r.out).at("manifest");
    EXPECT_EQ(manifest["subcommand"], "walls");
    EXPECT_EQ(manifest["seed"], 0);
}

TEST(Cli, OutputIsByteDeterministic)
{
    std::vector<std::string> args{"torus-test", "--weights", "3,3,1,-1,-1", "--twist", "-1", "--all-supports"};
    CliRun a = run(args);
    args.insert(args.end(), {"--jobs", "3"});
    CliRun b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(results_of(a)["supports"].size(), 31U);
}

TEST(Cli, TorusTestThreeBlockSupport)
{
    CliRun r = run({"torus-test", "--weights", "3,3,1,-1,-1", "--support", "0,4", "--twist", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(results_of(r)["verdict"]["status"], "Stable");
    CliRun u = run({"torus-test", "--weights", "3,3,1,-1,-1", "--support", "0,1", "--twist", "0"});
    EXPECT_EQ(results_of(u)["verdict"]["status"], "Unstable");
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"walls", "--d", "3"}).code, cli::kExitInputError);
    EXPECT_EQ(run({"walls", "--d", "4", "--bogus"}).code, cli::kExitInputError);
    EXPECT_EQ(run({"no-such-command"}).code, cli::kExitInputError);
    EXPECT_EQ(run({}).code, cli::kExitInputError);
    EXPECT_EQ(run({"uhat-test", "--text", "x + y", "--d", "4", "--delta", "0"}).code, cli::kExitInputError);
    EXPECT_EQ(run({"torus-test", "--weights", "1,2", "--support", "7"}).code, cli::kExitInputError);
    EXPECT_EQ(run({"flow", "--rep", tmp_path("missing.json"), "--point", tmp_path("missing.json")}).code,
              cli::kExitInputError);
    CliRun help = run({"--help"});
    EXPECT_EQ(help.code, cli::kExitOk);
    EXPECT_NE(help.out.find("torus-test"), std::string::npos);
    EXPECT_EQ(run({"walls", "--help"}).code, cli::kExitOk);
}

TEST(Cli, FlowInconclusiveOrDecided)
{
    std::string rep = write_file("rep31.json", R"({"dim": 2, "weights": [3, 1]})");
    std::string pt = write_file("pt11.json", R"([1, 1])");
    CliRun r = run({"flow", "--rep", rep, "--point", pt});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(results_of(r)["classification"], "PositiveInfimum");
    Json manifest = Json::parse(r.out).at("manifest");
    EXPECT_EQ(manifest["input_digests"].size(), 2U);
    // Too few iterations to decide.
    CliRun s = run({"flow", "--rep", write_file("rep3m1.json", R"({"dim": 2, "weights": [3, -1]})"), "--point", pt,
                 "--max-iter", "1"});
    EXPECT_EQ(s.code, cli::kExitUndecided);
}

TEST(Cli, UhatAndHTests)
{
    CliRun u = run({"uhat-test", "--text", "z^2 - x^2*y^2", "--d", "4", "--delta", "1"});
    ASSERT_EQ(u.code, 0) << u.err;
    EXPECT_EQ(results_of(u)["verdict"]["status"], "Stable");
    CliRun h = run({"h-test", "--text", "z^2", "--d", "4", "--delta", "2"});
    ASSERT_EQ(h.code, 0) << h.err;
    Json res = results_of(h);
    EXPECT_EQ(res["verdict"]["status"], "Unstable");
    EXPECT_EQ(res["verdict"]["endpoint_caveat"], true);
    EXPECT_EQ(res["hm_prediction"], "StrictlySemistable");
}

TEST(Cli, PolynomialJsonRoundTrip)
{
    WeightedPolynomial p = parse_polynomial("3/2*z^2 - x^2*y^2 + x*y*z", 4);
    Json j = polynomial_to_json(p);
    EXPECT_EQ(polynomial_from_json(j), p);
    EXPECT_EQ(polynomial_from_json(Json::parse(j.dump())), p);
    EXPECT_EQ(polynomial_from_json(Json{{"d", 4}, {"text", p.to_text()}}), p);
    EXPECT_THROW(polynomial_from_json(Json::parse(R"({"d": 4, "terms": [{"i": 1, "j": 0, "k": 0, "c": "1"}]})")),
                 InputError);
    EXPECT_THROW(polynomial_from_json(Json::parse(R"({"d": 4, "terms": [{"i": 4, "j": 0, "k": 0, "c": 0.5}]})")),
                 InputError);
    std::string file = write_file("poly.json", j.dump());
    CliRun r = run({"uhat-test", "--poly", file, "--delta", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(polynomial_from_json(results_of(r)["polynomial"]), p);
}

TEST(Cli, CsvWithSidecarManifest)
{
    std::string corpus = write_file("corpus.json", R"([{"d": 4, "text": "z^2 - x^2*y^2"}, {"d": 4, "text": "x^4 + y^4"}])");
    std::string out = tmp_path("classify.csv");
    CliRun r = run({"classify", "--corpus", corpus, "--deltas", "0,1", "--format", "csv", "--output", out});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream f(out);
    std::string header;
    std::getline(f, header);
    EXPECT_EQ(header, "source,delta,uhat_status,h_status,certificate,endpoint_caveat,on_wall,outcome");
    int rows = 0;
    for (std::string line; std::getline(f, line);) ++rows;
    EXPECT_EQ(rows, 4);
    std::ifstream m(out + ".manifest.json");
    ASSERT_TRUE(m.good());
    std::stringstream ss;
    ss << m.rdbuf();
    Json manifest = Json::parse(ss.str());
    EXPECT_EQ(manifest["subcommand"], "classify");
    EXPECT_EQ(manifest["parameters"]["deltas"], "0,1");
}

TEST(Cli, MatrixEntriesParse)
{
    CliRun r = run({"matrix", "--d", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json m = results_of(r)["matrix"];
    ASSERT_EQ(m.size(), 4U);
    const std::vector<std::string> names{"lambda", "mu", "nu"};
    EXPECT_EQ(parse_multipoly(m[0][3].get<std::string>(), names), parse_multipoly("lambda", names));
}

TEST(Cli, EnvelopeAndSl2)
{
    std::string rep = write_file("nil.json", R"({"r": 1, "dimV": 3, "generators": [[[0,1,0],[0,0,1],[0,0,0]]]})");
    CliRun c = run({"envelope", "check", "--rep", rep, "--trials", "5"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_TRUE(results_of(c)["violations"].empty());
    CliRun d = run({"envelope", "dims", "--rep", rep});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(results_of(d)["flag_dims"], Json::parse("[3,2,1]"));
    std::string mat = write_file("e.json", R"([[0,1,0],[0,0,0],[0,0,0]])");
    CliRun s = run({"sl2", "--matrix", mat});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(results_of(s)["brackets_hold"], true);
    EXPECT_EQ(results_of(s)["block_sizes"], Json::parse("[2,1]"));
}

TEST(Cli, CompareFlowAgrees)
{
    CliRun r = run({"compare-flow", "--weights", "3,-1,2,-2", "--samples", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(results_of(r)["mismatches"].size(), 0U);
}
