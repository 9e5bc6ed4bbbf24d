#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "riesz/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "riesz");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = riesz::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("component JSON")
{
    const auto r = run({"component", "--n", "3", "--t", "5", "--idx", "1,3,3,3,3", "--kernel", "sgn", "--xi",
                        "-0.0054,0.1491,0.9888"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(-1.67e-7).epsilon(5e-3));
    CHECK(j["normalized"].get<bool>());
    CHECK(j["method"] == "direct");
    CHECK(j["component"] == nlohmann::json::array({1, 3, 3, 3, 3}));
    CHECK(j["kernel"] == "sgn");
    CHECK(j["n"] == 3);

    const auto rec = run({"component", "--n", "3", "--t", "5", "--idx", "1,3,3,3,3", "--xi", "-0.0054,0.1491,0.9888",
                          "--method", "recursive", "--levels"});
    REQUIRE(rec.code == 0);
    const auto jr = nlohmann::json::parse(rec.out);
    CHECK(jr["value"].get<double>() == doctest::Approx(j["value"].get<double>()).epsilon(1e-9));
    CHECK(jr["levels"].size() == 6);
}

TEST_CASE("error exit codes")
{
    const auto inadmissible = run({"component", "--n", "2", "--t", "2", "--idx", "1,1", "--kernel", "neglog", "--xi", "1,0"});
    CHECK(inadmissible.code == 2);
    CHECK(inadmissible.err.find("zero mean") != std::string::npos);
    CHECK(lines(inadmissible.err).size() == 1);

    const auto parity = run({"component", "--n", "3", "--t", "2", "--idx", "1,2", "--kernel", "sgn", "--xi", "1,2,3"});
    CHECK(parity.code == 2);
    CHECK(parity.err.find("--kernel neglog") != std::string::npos);

    CHECK(run({"component", "--n", "3", "--t", "13", "--idx", "1,1,1,1,1,1,1,1,1,1,1,1,2", "--xi", "1,2,3"}).code == 3);
    CHECK(run({"component", "--n", "3", "--t", "2", "--idx", "1,2", "--xi", "0,0,0"}).code == 2);
    CHECK(run({"component", "--n", "3", "--t", "2", "--idx", "1,2"}).code == 1);
    CHECK(run({"component", "--bogus"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"validate", "--n", "4", "--t", "1", "--idx", "1", "--xi", "1,0,0,0", "--method", "mc3"}).code == 2);
}

TEST_CASE("validate CSV")
{
    const auto r = run({"validate", "--n", "3", "--t", "5", "--idx", "1,3,3,3,3", "--method", "mc3", "--N", "500000,50000",
                        "--xi", "-0.0054,0.1491,0.9888"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == "N,kind,mean,std_error,abs_error");
    CHECK(l[1].rfind("50000,mc3,", 0) == 0);
    CHECK(l[2].rfind("500000,mc3,", 0) == 0);
    const double err = std::stod(l[1].substr(l[1].rfind(',') + 1));
    CHECK(err == doctest::Approx(4.52e-6).epsilon(0.01));
}

TEST_CASE("converge CSV and slope")
{
    const auto r = run({"converge", "--n", "3", "--t", "1", "--idx", "1", "--xi", "1,0,0", "--N", "1000,10000",
                        "--repeats", "4"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 3);
    CHECK(r.err.find("slope") != std::string::npos);
}

TEST_CASE("ga CSV")
{
    const auto r = run({"ga", "--t", "2", "--n", "2", "--kernel", "neglog"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "a,t,n,kernel,value");
    CHECK(l[1].rfind("0,2,2,neglog,1.87", 0) == 0);
    CHECK(l[2] == "1,2,2,neglog,0");
    CHECK(lines(run({"ga", "--t", "3", "--n", "3"}).out).size() == 9);
}

TEST_CASE("basis CSV")
{
    const auto r = run({"basis", "--xi", "0,0,1"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == "0,1,0");
    const auto g = run({"basis", "--xi", "1,2,2"});
    CHECK(lines(g.out)[0].rfind("0.33333333333333331,", 0) == 0);
    CHECK(run({"basis", "--xi", "1,2,2", "--strict"}).code == 2);
}

TEST_CASE("filter writes image, sidecar and report")
{
    const auto dir = std::filesystem::temp_directory_path() / "riesz_cli_test";
    std::filesystem::create_directories(dir);
    const std::string out = (dir / "f.pgm").string(), rep = (dir / "r.json").string(), scene = (dir / "s.pgm").string();
    const auto r = run({"filter", "--t1", "3", "--t2", "1", "--theta0", "1.0471975511965976", "--out", out, "--report", rep,
                        "--scene-out", scene, "--size", "128", "--bits", "8"});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::file_size(out) == 128 * 128 + std::string("P5\n128 128\n255\n").size());
    CHECK(std::filesystem::exists(out + ".json"));
    std::ifstream rf(rep);
    const auto j = nlohmann::json::parse(rf);
    CHECK(j["corners"].size() == 8);

    // filtering a PGM from disk
    const auto r2 = run({"filter", "--in", scene, "--t1", "1", "--t2", "2"});
    REQUIRE(r2.code == 0);
    CHECK(nlohmann::json::parse(r2.out)["width"] == 128);
    CHECK(run({"filter", "--t1", "2", "--t2", "2"}).code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("deterministic output")
{
    const std::vector<std::string> args{"validate", "--n", "3", "--t", "2", "--idx", "1,2", "--method", "mc1",
                                        "--N", "20000", "--seed", "5", "--xi", "0.3,0.4,0.5"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("help lists flags and defaults")
{
    const auto h = run({"validate", "--help"});
    CHECK(h.code == 0);
    for (const char* flag : {"--n", "--t", "--idx", "--kernel", "--xi", "--method", "--N", "--seed", "--workers"})
        CHECK(h.out.find(flag) != std::string::npos);
    CHECK(h.out.find("mc3") != std::string::npos);
    const auto f = run({"filter", "--help"});
    CHECK(f.out.find("radians") != std::string::npos);
    CHECK(f.out.find("256") != std::string::npos);
}
