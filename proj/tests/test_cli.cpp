#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(BRAUER_SDC) + " " + args + " 2>/dev/null";
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

bool has_line(const std::string &out, const std::string &line) {
    std::istringstream is(out);
    for (std::string l; std::getline(is, l);)
        if (l == line)
            return true;
    return false;
}

const std::string kSolve = "solve --f 3 --shape \"[2,1]\" --f1 2 --shape1 \"[2]\" --shape2 \"[1]\" --x 5";

} // namespace

TEST_CASE("enum") {
    auto r = run("enum --f 3 --shape \"[1]\"");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "count 3"));
    CHECK(has_line(r.out, "dimension 3"));
    CHECK(has_line(r.out, "(1,-1,1)"));

    r = run("enum --f 2 --shape \"[]\"");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "(1,-1)"));
    CHECK(has_line(r.out, "count 1"));

    r = run("enum --f 3 --shape \"[2]\"");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "count 0"));

    r = run("enum --f 3 --shape \"[3]\"");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "(1,1,1)"));
    CHECK(has_line(r.out, "count 1"));

    CHECK(run("enum --f 3 --shape \"[1,2]\"").code == 2);
    CHECK(run("enum --f 3").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("rep") {
    auto r = run("rep --f 2 --shape \"[]\" --x 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("g1\n  1\n") != std::string::npos);
    CHECK(r.out.find("e1\n  5\n") != std::string::npos);

    r = run("rep --f 3 --shape \"[1]\" --x 7/2 --check");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "relations PASS at tol 1e-09"));

    CHECK(run("rep --f 4 --shape \"[2]\" --x 2").code == 3);
    CHECK(run("rep --f 4 --shape \"[2]\" --x 2 --allow-nonsemisimple").code == 0);
    CHECK(run("rep --f 3 --shape \"[1]\" --x abc").code == 2);
    CHECK(run("rep --f 3 --shape \"[1]\" --x 1/0").code == 2);
    CHECK(run("rep --f 3 --shape \"[1]\" --x 5 --convention literal --check").code == 1);

    REQUIRE(run("rep --f 3 --shape \"[1]\" --x 5 --json rep.json").code == 0);
    const auto j = nlohmann::json::parse(slurp("rep.json"));
    CHECK(j["f"] == 3);
    CHECK(j["basis"].size() == 3);
}

TEST_CASE("graph") {
    auto r = run("graph --f 3 --shape \"[1]\" --f1 2 --shape1 \"[]\" --shape2 \"[1]\"");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "nodes 3 edges 0"));
    CHECK(has_line(r.out, "i=1 crossing=0 hbridge=0 vbridge=2 singlet=1"));
    CHECK(run("graph --f 3 --shape \"[1]\" --f1 2 --f2 2 --shape1 \"[]\" --shape2 \"[1]\"").code == 2);

    REQUIRE(run("graph --f 3 --shape \"[1]\" --f1 2 --shape1 \"[]\" --shape2 \"[1]\" --dot g.dot --json g.json").code == 0);
    CHECK(slurp("g.dot").rfind("graph subduction {", 0) == 0);
    const auto j = nlohmann::json::parse(slurp("g.json"));
    CHECK(j["nodes"].size() == 3);
}

TEST_CASE("solve") {
    auto r = run(kSolve);
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "multiplicity 1"));
    CHECK(has_line(r.out, "PASS"));

    r = run(kSolve + " --json -");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["multiplicity"] == 1);
    CHECK(j["passed"] == true);
    CHECK(j["table"]["<(1,1,2);(1,1),(1)>"][0] == 1.0);
    CHECK(j["table"]["<(1,2,1);(1,1),(1)>"][0] == 0.0);

    r = run("solve --f 4 --shape \"[2]\" --f1 2 --x 6 --sweep");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "completeness 6 / 6 ok"));
    CHECK(has_line(r.out, "PASS"));

    CHECK(run("solve --f 3 --shape \"[1]\" --f1 2 --x 5").code == 2);
    CHECK(run("solve --f 3 --shape \"[1]\" --f1 3 --shape1 \"[1]\" --shape2 \"[]\" --x 5").code == 2);
    CHECK(run("solve --f 4 --shape \"[2]\" --f1 2 --shape1 \"[2]\" --shape2 \"[]\" --x 2").code == 3);
}

TEST_CASE("reruns are byte identical") {
    const std::string args = "solve --f 4 --shape \"[1,1]\" --f1 2 --x 7/2 --sweep";
    REQUIRE(run(args + " --json a.json --csv a.csv").code == 0);
    REQUIRE(run(args + " --json b.json --csv b.csv").code == 0);
    CHECK(slurp("a.json") == slurp("b.json"));
    CHECK(slurp("a.csv") == slurp("b.csv"));
    CHECK(slurp("a.csv").rfind("w,w1,w2,eta,value\n", 0) == 0);
    const auto j = nlohmann::json::parse(slurp("a.json"));
    CHECK(j["completeness"]["passed"] == true);
    CHECK(j["sweep_unitarity"]["passed"] == true);
    CHECK(!std::filesystem::exists("a.json.tmp"));
}
