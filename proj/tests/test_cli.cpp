#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hyplane/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hyplane");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = hyplane::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("sample is deterministic")
{
    const auto dir = std::filesystem::temp_directory_path() / "hyplane_cli_test";
    std::filesystem::create_directories(dir);
    const auto a = (dir / "a.json").string();
    const auto b = (dir / "b.json").string();
    CHECK(run({"sample", "tri", "--seed", "7", "--resolution", "1e-3", "--out", a}).code == 0);
    CHECK(run({"sample", "tri", "--seed", "7", "--resolution", "1e-3", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).size() > 1000);

    const auto svg = (dir / "a.svg").string();
    CHECK(run({"render", "--in", a, "--svg", svg, "--width", "300"}).code == 0);
    CHECK(slurp(svg).find("<svg") != std::string::npos);
    CHECK(run({"render", "--in", a, "--model", "halfplane"}).out.find("<svg") != std::string::npos);

    CHECK(run({"sample", "farey", "--resolution", "1e-2"}).out.find("\"farey\"") != std::string::npos);
    CHECK(run({"sample", "quad", "--resolution", "1e-2", "--thin", "0.5"}).out.find("thin_p") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("usage errors exit 1")
{
    auto r = run({"sample", "tri", "--resolution", "0"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--resolution") != std::string::npos);
    CHECK(run({"sample", "tri", "--frobnicate"}).code == 1);
    CHECK(run({"sample", "hexagons"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"stats", "markov", "--n", "10"}).code == 1);
    CHECK(run({"render", "--in", "/nonexistent/t.json"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("stats exit codes follow the verdict")
{
    auto r = run({"stats", "duality", "--n", "10000", "--json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"verdict\":\"pass\"") != std::string::npos);

    r = run({"stats", "markov", "--n", "2000", "--seed", "3", "--json"});
    const bool passed = r.out.find("\"verdict\":\"pass\"") != std::string::npos;
    CHECK(r.code == (passed ? 0 : 2));

    r = run({"stats", "target", "--n", "1000", "--alpha", "0.2"});
    CHECK(r.code == (r.out.find("-> pass") != std::string::npos ? 0 : 2));
}
