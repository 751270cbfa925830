#include "purity/cli.hpp"
#include "purity/complex.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using purity::Json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = purity::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("purity_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("ring") {
    auto r = run({"ring", "--n", "2", "--q", "2"});
    CHECK(r.code == 0);
    CHECK(has(r.out, "betti: 1 8 1\n"));
    CHECK(has(run({"ring", "--n", "1", "--q", "5"}).out, "betti: 1 1\n"));
    CHECK(has(run({"ring", "--n", "3", "--q", "2"}).out, "betti: 1 51 51 1\n"));
    auto j = Json::parse(run({"--format", "json", "ring", "--n", "2", "--q", "3", "--k", "1"}).out);
    CHECK(j["status"] == "pass");
    CHECK(j["betti"] == Json::array({1, 14, 1}));
    CHECK(j.contains("pairing"));
}

TEST_CASE("hodge") {
    auto pass = run({"hodge", "--n", "2", "--q", "2", "--divisor", "omega"});
    CHECK(pass.code == 0);
    CHECK(has(pass.out, "result: PASS"));
    CHECK(run({"hodge", "--n", "1", "--q", "3", "--divisor", "omega"}).code == 0);

    auto refused = run({"hodge", "--n", "2", "--q", "2", "--divisor", "1,-1"});
    CHECK(refused.code == 1);
    CHECK(has(refused.out, "REFUSED: not positive (criterion -1 + 3/7 < 0)"));
    auto forced = run({"--format", "json", "hodge", "--n", "2", "--q", "2", "--divisor", "1,-1", "--skip-positivity"});
    auto j = Json::parse(forced.out);
    CHECK(j.contains("hard_lefschetz"));
    CHECK(run({"hodge", "--n", "2", "--q", "2", "--divisor", "1,x"}).code == 2);
}

TEST_CASE("wss") {
    auto z = run({"wss", "--fixture", "tate-cycle:3,2", "--zeta"});
    CHECK(z.code == 0);
    CHECK(has(z.out, "purity: PASS"));
    CHECK(has(z.out, "zeta: 1 / ((1 - 2T)^1)"));
    auto l = run({"wss", "--fixture", "two-planes:2", "--check-lemmas"});
    CHECK(l.code == 0);
    CHECK_FALSE(has(l.out, "FAIL"));

    auto path = temp_file("bad.json");
    auto j = Json::parse(run({"fixture", "triangle-of-planes"}).out);
    j["strata"][0]["restrictions"]["1,2,3"][0] = Json::array({Json::array({"2"})});
    std::ofstream(path) << j.dump();
    auto bad = run({"wss", "--input", path.string()});
    CHECK(bad.code == 2);
    CHECK(has(bad.err, "restriction square does not commute at strata {1,2}→{1,2,3}"));
    std::filesystem::remove(path);
}

TEST_CASE("fixture output feeds wss --input") {
    auto path = temp_file("tate.json");
    CHECK(run({"fixture", "tate-cycle:4,3", "--output", path.string()}).code == 0);
    auto a = run({"--format", "json", "wss", "--input", path.string(), "--zeta"});
    auto b = run({"--format", "json", "wss", "--fixture", "tate-cycle:4,3", "--zeta"});
    CHECK(a.code == 0);
    CHECK(Json::parse(a.out)["zeta"] == Json::parse(b.out)["zeta"]);
    std::filesystem::remove(path);
    auto list = run({"fixture", "--list"});
    CHECK(has(list.out, "tate-cycle"));
    CHECK(has(list.out, "drinfeld-local"));
}

TEST_CASE("JSON output is byte-identical across runs") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--format", "json", "ring", "--n", "2", "--q", "2", "--k", "1"},
             {"--format", "json", "hodge", "--n", "2", "--q", "3", "--divisor", "omega"},
             {"--format", "json", "wss", "--fixture", "drinfeld-local:2,2", "--zeta", "--check-lemmas"}}) {
        auto a = run(args), b = run(args);
        CHECK(a.out == b.out);
        CHECK(Json::parse(a.out)["schema_version"] == 1);
    }
}

TEST_CASE("usage and input errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"ring", "--n", "2"}).code == 2);
    CHECK(run({"--format", "xml", "ring", "--n", "2", "--q", "2"}).code == 2);
    CHECK(run({"ring", "--n", "2", "--q", "6"}).code == 2);
    CHECK(run({"wss"}).code == 2);
    CHECK(run({"wss", "--fixture", "no-such"}).code == 2);
    CHECK(run({"wss", "--input", "/nonexistent/x.json"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("resource limits") {
    auto r = run({"ring", "--n", "4", "--q", "2"});
    CHECK(r.code == 2);
    CHECK(has(r.err, "refused"));
    CHECK(run({"--max-dim", "2", "ring", "--n", "3", "--q", "2"}).code == 2);
    ::setenv("PURITY_MAX_DIM", "2", 1);
    auto env = run({"ring", "--n", "3", "--q", "2"});
    ::unsetenv("PURITY_MAX_DIM");
    CHECK(env.code == 2);
    CHECK(has(env.err, "exceeds the limit 2"));
    CHECK(run({"ring", "--n", "3", "--q", "2"}).code == 0);
}
