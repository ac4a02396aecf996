#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(const std::string& args) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto out = dir / "cslnoise_cli_out.txt";
    const auto err = dir / "cslnoise_cli_err.txt";
    const std::string cmd = std::string("env -u CSLNOISE_OUT_DIR ") + CSLNOISE_CLI + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string scenario(const std::string& name) {
    return std::string(CSLNOISE_SCENARIOS) + "/" + name + ".json";
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST_CASE("bound on the Table I scenario passes near the quoted value") {
    const auto r = run("bound --scenario " + scenario("table1-L18"));
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "r_c [m],lambda_bound [1/s],eta_bar [1/m2]");
    bool found = false;
    while (std::getline(in, line)) {
        if (line.rfind("1e-07,", 0) != 0) continue;
        found = true;
        const double lambda = std::stod(line.substr(6));
        CHECK(lambda == doctest::Approx(3.1e-10).epsilon(0.15));
    }
    CHECK(found);
}

TEST_CASE("eta on a tiny sphere is the point limit") {
    const auto p = write_temp("cslnoise_tiny_sphere.json", R"({"schema_version": 1,
        "geometry": {"kind": "sphere", "radius": "1 nm", "density": "7430 kg/m3"},
        "collapse": {"r_c": "100 nm"}})");
    const auto r = run("eta --scenario " + p.string());
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double eta = j["eta_bar_per_m2"].get<double>();
    const double point = j["point_limit_eta_bar_per_m2"].get<double>();
    // independent: M^2 / (2 m0^2 rc^2)
    const double mass = 4.0 / 3.0 * 3.14159265358979323846 * 1e-27 * 7430.0;
    const double m0 = 1.67262192e-27;
    CHECK(point == doctest::Approx(mass * mass / (2.0 * m0 * m0 * 1e-14)).epsilon(1e-12));
    CHECK(eta == doctest::Approx(point).epsilon(1e-3));
}

TEST_CASE("malformed unit exits 1 and names the key") {
    const auto p = write_temp("cslnoise_bad_unit.json", R"({"schema_version": 1,
        "geometry": {"kind": "sphere", "radius": "3 furlongs", "density": "1 kg/m3"}})");
    const auto r = run("eta --scenario " + p.string());
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.err);
    CHECK(j["key"] == "geometry.radius");
    CHECK(j["code"] == 1);
    CHECK(j["error"].get<std::string>().find("furlongs") != std::string::npos);
}

TEST_CASE("usage errors and missing files exit 1") {
    CHECK(run("frobnicate").code == 1);
    CHECK(run("bound --scenario /nonexistent/file.json").code == 1);
    CHECK(run("bound --scenario " + scenario("table1-L18") + " --format xml").code == 1);
}

TEST_CASE("results written to the output directory reproduce from the echo") {
    const auto dir = std::filesystem::temp_directory_path() / "cslnoise_cli_results";
    std::filesystem::remove_all(dir);
    REQUIRE(run("bound --scenario " + scenario("table1-L50") + " --out " + dir.string()).code == 0);
    std::ifstream in(dir / "table1-L50-bound.result.json");
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["subcommand"] == "bound");
    CHECK(doc.contains("metadata"));
    const auto echo = write_temp("cslnoise_echo.json", doc["input"].dump());
    const auto dir2 = dir / "again";
    REQUIRE(run("bound --scenario " + echo.string() + " --out " + dir2.string()).code == 0);
    std::ifstream in2(dir2 / "table1-L50-bound.result.json");
    const auto doc2 = nlohmann::json::parse(in2);
    CHECK(doc2["outputs"] == doc["outputs"]);
    CHECK(doc2["input"] == doc["input"]);
    std::ifstream c1(dir / "table1-L50-bound.csv"), c2(dir2 / "table1-L50-bound.csv");
    std::stringstream s1, s2;
    s1 << c1.rdbuf();
    s2 << c2.rdbuf();
    CHECK(s1.str() == s2.str());
}

TEST_CASE("other subcommands run on the bundled fixtures") {
    CHECK(run("optimize --scenario " + scenario("table1-L50")).code == 0);
    CHECK(run("shapes --scenario " + scenario("vinante-sphere")).code == 0);
    CHECK(run("eta --scenario " + scenario("fig8-M2-N98") + " --format csv").code == 0);
    const auto sim = run("simulate --scenario " + scenario("vinante-sphere") + " --seed 9 --format json");
    REQUIRE(sim.code == 0);
    const auto j = nlohmann::json::parse(sim.out);
    CHECK(j["variance_m2"].get<double>() == doctest::Approx(j["analytic_variance_m2"].get<double>()).epsilon(0.2));
    CHECK(run("validate").code == 0);
}
