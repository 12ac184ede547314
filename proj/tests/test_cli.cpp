#include "fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace lyap;

namespace {

std::string fixture(const std::string& name) { return data_path(name); }

std::string temp_file(const std::string& name, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("lyapcert_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

} // namespace

TEST_CASE("check")
{
    auto r = run_cli("check --human " + fixture("example1.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("12 branch states, 1 recurrent class, rho = 279/359") != std::string::npos);

    auto b = run_cli("check " + fixture("broken_multicone.json"), true);
    CHECK(b.code == 1);
    CHECK(b.out.find("(x,1,y)") != std::string::npos);

    auto a = run_cli("check --human " + fixture("alternating.json"));
    CHECK(a.code == 0);
    CHECK(a.out.find("accelerated, d = 2") != std::string::npos);
}

TEST_CASE("exit codes")
{
    CHECK(run_cli("check /nonexistent/system.json").code == 3);
    CHECK(run_cli("check " + temp_file("bad.json", "{\"alphabet\": [")).code == 3);
    CHECK(run_cli("check " + temp_file("expr.json", R"({"alphabet": ["a"], "matrices": {"a": [["1/(2", "0"], ["0", "1"]]},
        "transition": [["1"]], "multicone": {"a": [["1", "-1"]]}})")).code == 3);
    CHECK(run_cli("frobnicate").code == 3);
    CHECK(run_cli("check " + temp_file("stoch.json", R"({"alphabet": ["a", "b"],
        "matrices": {"a": [["2", "1"], ["1", "1"]], "b": [["2", "1"], ["1", "1"]]},
        "transition": [["1/2", "1/3"], ["1/2", "1/2"]],
        "multicone": {"a": [["0", "inf"]], "b": [["0", "inf"]]}})")).code == 1);
    // asking for more digits than the precision carries
    CHECK(run_cli("lyapunov --precision 64 --epsilon 1e-30 " + fixture("diagonal.json")).code == 1);
    // unreachable target with fixed parameters
    CHECK(run_cli("lyapunov --n 2 --m 2 --epsilon 1e-20 " + fixture("example1.json")).code == 2);
}

TEST_CASE("lyapunov")
{
    auto r = run_cli("lyapunov " + fixture("diagonal.json"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    PrecisionScope ps(128);
    CHECK(abs(parse_real(j["value"].get<std::string>()) - log(Real(2))) < parse_real("1e-25"));
    CHECK(j["certified"] == true);
    CHECK(j.contains("analytic_bound"));
    CHECK(j.contains("rounding_allowance"));

    auto t = run_cli("lyapunov --precision 53 --epsilon 1e-6 " + fixture("example1.json"));
    REQUIRE(t.code == 0);
    auto jt = nlohmann::json::parse(t.out);
    CHECK(abs(parse_real(jt["value"].get<std::string>()) - parse_real("0.885272544236828301")) < parse_real("1e-6"));
}

TEST_CASE("certificate round trip")
{
    auto r = run_cli("lyapunov --precision 128 --epsilon 1e-12 " + fixture("example1.json"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    PrecisionScope ps(128);
    Real stored = parse_real(j["analytic_bound"].get<std::string>());
    Real again = reverify_certificate(r.out);
    CHECK(abs(again - stored) <= pow2(24 - 128) * stored);
}

TEST_CASE("taylor")
{
    auto r = run_cli("taylor --order 0 " + fixture("example2.json"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    auto l = run_cli("lyapunov --epsilon 1e-24 " + fixture("example2.json"));
    REQUIRE(l.code == 0);
    auto jl = nlohmann::json::parse(l.out);
    PrecisionScope ps(192);
    Real a0 = parse_real(j["coefficients"][0]["value"].get<std::string>());
    Real lam = parse_real(jl["value"].get<std::string>());
    CHECK(abs(a0 - lam) < parse_real("2e-24"));
    CHECK(j["rigor"] == "rigorous");

    std::string bare = temp_file("bare.json", [] {
        std::ifstream f(data_path("example2.json"));
        auto x = nlohmann::json::parse(f);
        x["options"].erase("omega_constants");
        return x.dump();
    }());
    auto m = run_cli("taylor " + bare, true);
    CHECK(m.code == 1);
    CHECK(m.out.find("--estimate") != std::string::npos);
}

TEST_CASE("reduce-base and simulate")
{
    auto r = run_cli("reduce-base " + fixture("example2_base.json"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["alphabet"] == nlohmann::json({"xy", "Xy"}));

    auto same = run_cli("reduce-base " + fixture("diagonal.json"));
    REQUIRE(same.code == 0);
    CHECK(nlohmann::json::parse(same.out)["alphabet"] == nlohmann::json({"a"}));

    auto s1 = run_cli("simulate --steps 500 --trials 3 --seed 9 " + fixture("example1.json"));
    auto s2 = run_cli("simulate --steps 500 --trials 3 --seed 9 " + fixture("example1.json"));
    CHECK(s1.code == 0);
    CHECK(s1.out == s2.out);
}
