#include <doctest.h>

#include "ellrec/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace ellrec;

namespace {
struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(ELLREC_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, got);
    int st = pclose(f);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    return nlohmann::json::parse(f);
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

std::string tmp_path(const std::string& name) { return "/tmp/ellrec_test_" + name + ".json"; }
}  // namespace

TEST_CASE("seq prints c_5") {
    auto r = run("seq --init 0,1,2,-1/8,-1/2 --n 6");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "c_5 = -77/128"));
}

TEST_CASE("congruence at p = 5 passes for the paper sequence") {
    auto r = run("congruence --p 5 --rmax 1 --nmax 125");
    CHECK(r.status == 0);
    CHECK_FALSE(contains(r.out, "FAIL"));
}

TEST_CASE("modp-space at p = 7") {
    std::string path = tmp_path("modp");
    auto r = run("modp-space --p 7 --json " + path);
    CHECK(r.status == 0);
    CHECK(contains(r.out, "dim V_p = 2"));
    CHECK(contains(r.out, "(1, 2, 6, 3)"));
    auto j = read_json(path);
    CHECK(j["command"] == "modp-space");
    CHECK(j["version"] == kVersion);
    CHECK(j["checks"].size() >= 5);
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("details"));
        CHECK(c.contains("witness"));
        CHECK(c["status"] == "pass");
    }
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").status == 2);
    CHECK(run("nonsense").status == 2);
    CHECK(run("seq --frobnicate").status == 2);
    CHECK(run("seq --init 1,2").status == 2);
    CHECK(run("seq --init 0,1,x,3,4").status == 2);
    CHECK(run("modp-space --p 12").status == 2);
    CHECK(run("asd --curve 0,0 --p 7").status == 2);
    CHECK(run("--help").status == 0);
}

TEST_CASE("verification failures exit with 1 and carry witnesses") {
    std::string path = tmp_path("fail");
    // data off the special line breaks the congruences
    auto r = run("congruence --p 7 --init 0,1,1,1,1 --nmax 60 --json " + path);
    CHECK(r.status == 1);
    auto j = read_json(path);
    bool any_fail = false;
    for (const auto& c : j["checks"]) {
        if (c["status"] != "fail") continue;
        any_fail = true;
        CHECK_FALSE(c["witness"].is_null());
    }
    CHECK(any_fail);
    std::remove(path.c_str());
}

TEST_CASE("reports round-trip through JSON") {
    std::string path = tmp_path("rt");
    for (const char* cmd : {"identities --quick", "closed-forms --nmax 20", "frobenius --pmax 60", "asd --p 7",
                            "denom --init 0,1,1,1,1 --nmax 60", "cartier --p 7 --nmax 100"}) {
        run(std::string(cmd) + " --json " + path);
        auto j = read_json(path);
        Report rep = report_from_json(j);
        CHECK(to_json(rep) == j);
        CHECK(rep.command == std::string(cmd).substr(0, std::string(cmd).find(' ')));
    }
    std::remove(path.c_str());

    Report r;
    r.command = "x";
    r.params = {{"q", rational_json(make_rational(-77, 128))}, {"f", fp_json(Fp(3, 7))}};
    r.add(make_check("a", false, "d", {{"w", 1}}));
    r.add({"b", CheckStatus::Skip, "", nullptr});
    auto j = to_json(r);
    auto back = report_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(rational_from_json(back.params["q"]) == make_rational(-77, 128));
    CHECK(fp_from_json(back.params["f"]) == Fp(3, 7));
    CHECK_FALSE(back.passed());
}

TEST_CASE("all --quick") {
    auto r = run("all --quick");
    // the c_{kp-2} + c_{kp-3} congruence does not hold, so the suite reports failures
    CHECK(r.status == 1);
    CHECK(contains(r.out, "c_{kp-2}+c_{kp-3}"));
    std::istringstream lines(r.out);
    std::string line;
    std::size_t fails = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("FAIL", 0) != 0) continue;
        ++fails;
        // every failure is that congruence
        CHECK(contains(line, "c_{kp-2}+c_{kp-3}"));
    }
    CHECK(fails > 0);
    CHECK(contains(r.out, "all: "));
}
