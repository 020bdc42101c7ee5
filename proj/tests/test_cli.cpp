#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dynamo/runner.hpp"

using namespace dynamo;

namespace {

const char* kBasicConfig =
    "p = 2\n"
    "k = 1\n"
    "N = 8\n"
    "dim = 1\n"
    "map = X0^2 + 2*X0\n"
    "variety = X0\n";

std::string write_temp(const std::string& text, const std::string& name) {
    std::string path = std::string("cli_") + name + ".cfg";
    std::ofstream f(path);
    f << text;
    return path;
}

}  // namespace

TEST_CASE("parse_config accepts the documented example") {
    auto cfg = parse_config(kBasicConfig);
    CHECK(cfg.p == 2);
    CHECK(cfg.k == 1);
    CHECK(cfg.precision == 8);
    CHECK(cfg.dim == 1);
    CHECK(cfg.map_texts == std::vector<std::string>{"X0^2 + 2*X0"});
    CHECK(cfg.variety_texts == std::vector<std::string>{"X0"});
}

TEST_CASE("parse_config aggregates violations") {
    try {
        parse_config("p = 4\nk = 1\nN = 8\ndim = 2\nmap = X0^2\nmap = X9\nbogus = 1\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.issues.size() >= 2);
        bool prime = false, unknown = false;
        for (const auto& i : e.issues) {
            if (i.find("not prime") != std::string::npos) prime = true;
            if (i.find("unknown key") != std::string::npos) unknown = true;
        }
        CHECK(prime);
        CHECK(unknown);
    }
    CHECK_THROWS_AS(parse_config("p = 2\nk = 1\nN = 8\ndim = 1\n"), config_error);  // no map
}

TEST_CASE("config round-trips through render") {
    auto cfg = parse_config(kBasicConfig);
    CHECK(parse_config(render_config(cfg)) == cfg);

    auto rich = parse_config(
        "p = 5\nk = 1\nN = 6\ndim = 2\nmap = X0^2\nmap = X1^3\nvariety = X0 - X1\n"
        "point = 1,1\ndegrees = 1,2\nmax_period = 4\ndepth = 3\nlookahead = 1\n"
        "degree_bound = 2\nseed = 99\n");
    CHECK(parse_config(render_config(rich)) == rich);
}

TEST_CASE("reports are deterministic") {
    auto cfg = parse_config(kBasicConfig);
    auto a = run("check-lift", cfg).render();
    auto b = run("check-lift", cfg).render();
    CHECK(a == b);
    auto c = run("tate-voloch", cfg).render();
    auto d = run("tate-voloch", cfg).render();
    CHECK(c == d);
}

TEST_CASE("check-lift report content") {
    auto cfg = parse_config(kBasicConfig);
    auto report = run("check-lift", cfg);
    CHECK(report.kind == "check-lift");
    CHECK(report.summary == "lift=yes restricted_syntactic=yes");
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0][1] == "X0");

    auto intro = parse_config(
        "p = 3\nk = 1\nN = 6\ndim = 2\nmap = X0^3+X1^3+3*X0*X1\nmap = X0^3-X1^3+3*X0*X1\n");
    auto r2 = run("check-lift", intro);
    CHECK(r2.summary.find("lift=yes") == 0);
    CHECK(r2.summary.find("restricted_syntactic=no") != std::string::npos);
    REQUIRE(r2.rows.size() == 2);
    CHECK(r2.rows[0][1] == "X0 + X1");
    CHECK(r2.rows[1][1] == "X0 + 2*X1");

    auto no = run("check-lift",
                  parse_config("p = 2\nk = 1\nN = 8\ndim = 1\nmap = X0^2 + X0\n"));
    CHECK(no.summary.find("lift=no") == 0);
}

TEST_CASE("per-points report rows") {
    auto cfg = parse_config("p = 2\nk = 1\nN = 8\ndim = 1\nmap = X0^2\ndegrees = 2\n"
                            "max_period = 2\n");
    auto report = run("per-points", cfg);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0][2] == "(0:0)");
    CHECK(report.rows[1][2] == "(1:0)");
    CHECK(report.rows[2][2] == "(0:1)->(1:1)");
    CHECK(report.summary == "cycles=3");
}

TEST_CASE("tate-voloch report summary") {
    auto cfg = parse_config(
        "p = 2\nk = 1\nN = 8\ndim = 1\nmap = X0^2\nvariety = X0 - 1\ndegrees = 1,2,3\n"
        "max_period = 6\n");
    auto report = run("tate-voloch", cfg);
    CHECK(report.summary == "M_observed=0 epsilon=2^-0");
}

TEST_CASE("stability and backward-orbit require a point") {
    auto cfg = parse_config(kBasicConfig);
    CHECK_THROWS_AS(run("stability", cfg), config_error);
    CHECK_THROWS_AS(run("backward-orbit", cfg), config_error);
}

TEST_CASE("stability report verdicts") {
    auto growing = run("stability",
                       parse_config("p = 3\nk = 1\nN = 4\ndim = 1\nmap = X0^2\npoint = 1\n"
                                    "depth = 4\ndegree_bound = 4\n"));
    CHECK(growing.summary == "verdict=growing");
    auto bounded = run("stability",
                       parse_config("p = 3\nk = 1\nN = 4\ndim = 1\nmap = X0^2\npoint = 0\n"
                                    "depth = 4\ndegree_bound = 4\n"));
    CHECK(bounded.summary == "verdict=bounded");
}

TEST_CASE("backward-orbit report") {
    auto cfg = parse_config(
        "p = 5\nk = 1\nN = 4\ndim = 2\nmap = X0^2\nmap = X1^3\nvariety = X0 - X1\n"
        "point = 1,1\ndepth = 4\nlookahead = 2\ndegree_bound = 2\n");
    auto report = run("backward-orbit", cfg);
    REQUIRE(report.rows.size() == 5);
    for (const auto& row : report.rows) CHECK(row[2] == "yes");
    CHECK(report.summary.find("hits=5") == 0);
}

TEST_CASE("gauss-norm report") {
    auto cfg = parse_config("p = 3\nk = 1\nN = 6\ndim = 1\nmap = 3*X0 + 6\n");
    auto report = run("gauss-norm", cfg);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0][1] == "1");   // gauss valuation
    CHECK(report.rows[0][2] == "1");   // top index attaining the norm
    CHECK(report.rows[0][3] == "X0 + 2");
}

TEST_CASE("run_cli exit codes follow the contract") {
    std::ostringstream out, err;
    std::string good = write_temp(kBasicConfig, "good");
    CHECK(run_cli({"check-lift", "--config", good}, out, err) == 0);
    CHECK(out.str().find("# padic-dynamo 1 check-lift") == 0);

    std::ostringstream out2, err2;
    std::string bad = write_temp("p = 4\ndim = 1\nmap = X0\n", "bad");
    CHECK(run_cli({"check-lift", "--config", bad}, out2, err2) == 2);
    CHECK(err2.str().find("not prime") != std::string::npos);

    // an operation error: lifting a non-restricted map without the override
    std::ostringstream out3, err3;
    std::string unrestricted =
        write_temp("p = 3\nk = 1\nN = 6\ndim = 2\nmap = X0^3+X1^3+3*X0*X1\n"
                   "map = X0^3-X1^3+3*X0*X1\n",
                   "unrestricted");
    CHECK(run_cli({"lift", "--config", unrestricted}, out3, err3) == 1);
    // and the documented override accepts it
    std::ostringstream out4, err4;
    CHECK(run_cli({"lift", "--config", unrestricted, "--override-restricted"}, out4, err4) == 0);

    std::ostringstream out5, err5;
    CHECK(run_cli({"check-lift", "--config", "does_not_exist.cfg"}, out5, err5) == 2);

    std::ostringstream out6, err6;
    CHECK(run_cli({"no-such-subcommand", "--config", good}, out6, err6) == 2);

    // --out writes the identical report to a file
    std::ostringstream out7, err7;
    CHECK(run_cli({"check-lift", "--config", good, "--out", "cli_report.txt"}, out7, err7) == 0);
    std::ifstream in("cli_report.txt");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == out.str());

    std::remove(good.c_str());
    std::remove(bad.c_str());
    std::remove(unrestricted.c_str());
    std::remove("cli_report.txt");
}

TEST_CASE("budget flag propagates to the kernels") {
    std::ostringstream out, err;
    std::string cfg = write_temp(
        "p = 2\nk = 1\nN = 8\ndim = 1\nmap = X0^2\ndegrees = 6\nmax_period = 2\n", "budget");
    CHECK(run_cli({"per-points", "--config", cfg, "--budget", "10"}, out, err) == 1);
    CHECK(err.str().find("budget") != std::string::npos);
    std::remove(cfg.c_str());
}
