#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

// Drives the installed binary end to end through a shell.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// args in shell syntax; an optional VAR=value prefix sets the environment
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    fs::path base = fs::temp_directory_path() /
                    ("darboux_cli_" + std::to_string(::getpid()) + "_" +
                     std::to_string(counter++));
    fs::path out = base.string() + ".out", err = base.string() + ".err";
    std::string cmd = env_prefix + " '" + std::string(DARBOUX_CLI_PATH) + "' " + args +
                      " >'" + out.string() + "' 2>'" + err.string() + "'";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return r;
}

std::string scene_arg(const char* file) {
    return std::string("--scene '") + DARBOUX_SCENE_DIR + "/" + file + "'";
}

std::string data_arg(const char* file) {
    return std::string("--scene '") + DARBOUX_TEST_DATA_DIR + "/" + file + "'";
}

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("catalog lists the built-in scenes") {
    RunResult r = run_cli("catalog");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("plane:") != std::string::npos);
    CHECK(r.out.find("hyperbolic:") != std::string::npos);
    CHECK(r.out.find("cylinder:") != std::string::npos);
    CHECK(r.out.find("cubic-graph:") != std::string::npos);
    CHECK(r.out.find("param a30 = 1") != std::string::npos);
}

TEST_CASE("analyze output is deterministic") {
    std::string args = "analyze --catalog cylinder --samples 16";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("s,t,kappa_n,kappa_g,tau_g,delta_Tr,", 0) == 0);
    CHECK(count_occurrences(a.out, "\n") == 17);  // header + 16 rows
}

TEST_CASE("analyze marks inadmissible kinds") {
    RunResult r = run_cli("analyze --catalog plane --samples 8");
    REQUIRE(r.code == 0);
    // kappa_n = tau_g = 0: every osc guard and the rect-spacelike guard fail
    CHECK(count_occurrences(r.out, "Sr;So;Lo") == 8);

    RunResult j = run_cli("analyze --catalog plane --samples 8 --format json");
    REQUIRE(j.code == 0);
    json doc = json::parse(j.out);
    REQUIRE(doc["rows"].size() == 8);
    const auto& row = doc["rows"][0];
    CHECK(row["delta"]["Sr"].is_null());
    CHECK(std::fabs(row["delta"]["Tr"].get<double>()) < 1e-9);
    CHECK(row["kappa_g"].get<double>() == Catch::Approx(1.0).margin(1e-9));
    CHECK(row["undefined"] == json::array({"Sr", "So", "Lo"}));
}

TEST_CASE("classify finds the cusp of the cubic scene") {
    RunResult r = run_cli("classify " + scene_arg("cubic_cusp.json") +
                          " --image Sr --grid 257");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["kind"] == "Sr");
    CHECK(doc["identically_zero"] == false);
    CHECK(doc["excluded"].empty());
    REQUIRE(doc["points"].size() == 1);
    const auto& p = doc["points"][0];
    CHECK(p["classification"] == "cusp");
    CHECK(std::fabs(p["t0"].get<double>()) < 1e-9);
    CHECK(p["s0"].get<double>() == Catch::Approx(0.34517992845839627).margin(1e-9));
    CHECK(p["delta_prime"].get<double>() == Catch::Approx(18.0).margin(1e-6));
    CHECK(p["residual"].get<double>() < 1e-10);
}

TEST_CASE("classify reports flat and excluded verdicts") {
    RunResult flat = run_cli("classify --catalog plane --image Tr --grid 64");
    REQUIRE(flat.code == 0);
    json fdoc = json::parse(flat.out);
    CHECK(fdoc["identically_zero"] == true);
    CHECK(fdoc["points"].empty());

    RunResult excl = run_cli("classify --catalog hyperbolic --image Sr --grid 64");
    REQUIRE(excl.code == 0);
    json edoc = json::parse(excl.out);
    CHECK(edoc["admissible_nodes"] == 0);
    REQUIRE(edoc["excluded"].size() == 1);
    CHECK(edoc["excluded"][0][0].get<double>() == Catch::Approx(0.0).margin(1e-12));
    CHECK(edoc["excluded"][0][1].get<double>() ==
          Catch::Approx(7.3840068728826453).margin(1e-6));
    CHECK(edoc["points"].empty());
}

TEST_CASE("verify passes on the catalog scenes") {
    RunResult r = run_cli("verify --catalog hyperbolic --samples 24");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("PASS orthonormality") != std::string::npos);
    CHECK(r.out.find("PASS frame-equations") != std::string::npos);
    CHECK(r.out.find("SKIP sphere-membership-Sr") != std::string::npos);
    CHECK(r.out.find("PASS duality-3-Tr") != std::string::npos);
    CHECK(r.out.find(" 0 failed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    RunResult c = run_cli("verify --catalog cylinder --samples 24");
    REQUIRE(c.code == 0);
    CHECK(c.out.find(" 0 failed") != std::string::npos);
}

TEST_CASE("export csv traces an image curve") {
    RunResult r = run_cli("export --catalog cylinder --image So --samples 16");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("s,x0,x1,x2\n", 0) == 0);
    CHECK(count_occurrences(r.out, "\n") == 17);
    // the osc-spacelike image of this curve is pinned at (0, 0, 1)
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        double s, x0, x1, x2;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &s, &x0, &x1, &x2) == 4);
        CHECK(std::fabs(x0) < 1e-9);
        CHECK(std::fabs(x1) < 1e-9);
        CHECK(x2 == Catch::Approx(1.0).margin(1e-9));
        ++rows;
    }
    CHECK(rows == 16);
}

TEST_CASE("export json points sit on the target sphere") {
    RunResult r = run_cli("export " + scene_arg("cubic_cusp.json") +
                          " --image Sr --format json --samples 24 --grid 257");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["kind"] == "Sr");
    REQUIRE(doc["points"].size() == 24);
    for (const auto& pt : doc["points"]) {
        double x0 = pt["x"][0].get<double>(), x1 = pt["x"][1].get<double>(),
               x2 = pt["x"][2].get<double>();
        CHECK(std::fabs(-x0 * x0 + x1 * x1 + x2 * x2 - 1.0) < 1e-9);
    }
    REQUIRE(doc["singular"].size() == 1);
    CHECK(doc["singular"][0]["classification"] == "cusp");
}

TEST_CASE("export svg draws curve and markers") {
    RunResult r = run_cli("export " + scene_arg("cubic_cusp.json") +
                          " --image Sr --format svg --samples 48 --grid 257");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("viewBox=\"0 0 800 800\"") != std::string::npos);
    CHECK(r.out.find("<polyline") != std::string::npos);
    CHECK(count_occurrences(r.out, "r=\"4\"") == 1);
}

TEST_CASE("output file option") {
    fs::path out = fs::temp_directory_path() /
                   ("darboux_out_" + std::to_string(::getpid()) + ".csv");
    RunResult r = run_cli("analyze --catalog plane --samples 4 --out '" +
                          out.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::string content = slurp(out);
    CHECK(content.rfind("s,t,", 0) == 0);
    fs::remove(out);
}

TEST_CASE("bad input exits with code 2") {
    CHECK(run_cli("analyze").code == 2);
    CHECK(run_cli("analyze --catalog plane --scene x.json").code == 2);
    CHECK(run_cli("analyze --catalog nosuch").code == 2);
    CHECK(run_cli("analyze --catalog plane --set radius=2").code == 2);
    CHECK(run_cli("analyze --catalog plane --set r=abc").code == 2);
    CHECK(run_cli("classify --catalog plane --image Zz").code == 2);
    CHECK(run_cli("frobnicate").code == 2);

    RunResult parse = run_cli("analyze " + data_arg("malformed.json"));
    CHECK(parse.code == 2);
    CHECK(parse.err.find("parse error at byte") != std::string::npos);

    RunResult steep = run_cli("analyze " + data_arg("not_spacelike.json"));
    CHECK(steep.code == 2);
    CHECK(steep.err.find("not spacelike") != std::string::npos);

    RunResult broken = run_cli("analyze " + data_arg("broken.json"));
    CHECK(broken.code == 2);
    CHECK(broken.err.find("not valid JSON") != std::string::npos);
}

TEST_CASE("jet order resolution") {
    RunResult env = run_cli("analyze --catalog plane --samples 4",
                            "DARBOUX_JET_ORDER=6");
    CHECK(env.code == 0);

    RunResult garbage = run_cli("analyze --catalog plane --samples 4",
                                "DARBOUX_JET_ORDER=banana");
    CHECK(garbage.code == 2);
    CHECK(garbage.err.find("DARBOUX_JET_ORDER") != std::string::npos);

    // an explicit --order wins before the environment is consulted
    RunResult forced = run_cli("analyze --catalog plane --samples 4 --order 6",
                               "DARBOUX_JET_ORDER=banana");
    CHECK(forced.code == 0);
}
