#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string command = std::string(WITNESSLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    std::array<char, 4096> buffer;
    while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
        result.output.append(buffer.data(), got);
    int status = pclose(pipe);
    result.exit_code = WEXITSTATUS(status);
    return result;
}

}  // namespace

TEST_CASE("lambda command prints the landmark values") {
    CliResult r13 = run_cli("lambda 13");
    CHECK(r13.exit_code == 0);
    CHECK(r13.output.find("lambda(13) = 0.398595125") != std::string::npos);

    CliResult r1 = run_cli("lambda 1");
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("lambda(1) = 1") != std::string::npos);

    CliResult json = run_cli("lambda 13 --json");
    CHECK(json.exit_code == 0);
    CHECK(json.output.find("{\"q\":13,\"lambda\":0.398595125,") != std::string::npos);
}

TEST_CASE("lambda methods agree on a lifted modulus") {
    CliResult lp = run_cli("lambda 49 --method lp --json");
    CliResult rec = run_cli("lambda 49 --method recursion --json");
    REQUIRE(lp.exit_code == 0);
    REQUIRE(rec.exit_code == 0);
    auto value_of = [](const std::string& text) {
        std::size_t at = text.find("\"lambda\":");
        REQUIRE(at != std::string::npos);
        return std::stod(text.substr(at + 9));
    };
    CHECK(std::abs(value_of(lp.output) - value_of(rec.output)) <= 1e-6);
}

TEST_CASE("delta command output and flags") {
    CliResult r7 = run_cli("delta 7 --exact");
    CHECK(r7.exit_code == 0);
    CHECK(r7.output.find("delta(7) = 3") != std::string::npos);
    CHECK(r7.output.find("set={0,2,4}") != std::string::npos);

    CliResult r5 = run_cli("delta 5 --exact --json");
    CHECK(r5.exit_code == 0);
    CHECK(r5.output.find("{\"q\":5,\"size\":1,\"set\":[0],\"exact\":true,") != std::string::npos);

    CliResult greedy = run_cli("delta 13 --greedy");
    CHECK(greedy.exit_code == 0);
    CHECK(greedy.output.find("exact=false") != std::string::npos);

    CliResult conflict = run_cli("delta 13 --exact --greedy");
    CHECK(conflict.exit_code == 3);

    CliResult bad = run_cli("delta");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("witness command: evaluation, export, and the inapplicable exit") {
    CliResult g0 = run_cli("witness 7 --construction gauss --eval 0");
    CHECK(g0.exit_code == 0);
    CHECK(g0.output.rfind("1", 0) == 0);

    CliResult a = run_cli("witness 35 --construction family --eval 5");
    CliResult b = run_cli("witness 7 --construction family --eval 1");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.output == b.output);  // self-compatibility at 5/35 = 1/7

    CliResult t = run_cli("witness 5 --construction trivial --eval 2");
    CHECK(t.exit_code == 0);
    CHECK(std::abs(std::stod(t.output)) < 1e-12);

    CliResult inapplicable = run_cli("witness 5 --construction gauss");
    CHECK(inapplicable.exit_code == 4);

    std::string path = "/tmp/witnesslab_test_export.json";
    std::remove(path.c_str());
    CliResult exported = run_cli("witness 13 --construction optimal --export " + path);
    CHECK(exported.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str().find("\"q\": 13") != std::string::npos);
    CHECK(content.str().find("\"construction\": \"optimal\"") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("witness JSON goes to stdout by default") {
    CliResult r = run_cli("witness 5 --construction trivial");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"q\": 5") != std::string::npos);
    CHECK(r.output.find("\"b0\": 0.2") != std::string::npos);
}

TEST_CASE("verify command exit codes and report file") {
    std::string path = "/tmp/witnesslab_test_report.json";
    std::remove(path.c_str());
    CliResult ok = run_cli("verify 30 --report " + path);
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("[PASS]") != std::string::npos);
    CHECK(ok.output.find("[FAIL]") == std::string::npos);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str().find("\"pass\": true") != std::string::npos);
    std::remove(path.c_str());

    CliResult tiny = run_cli("verify 2");
    CHECK(tiny.exit_code == 0);

    CliResult bad = run_cli("verify 1");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("table command emits the pinned CSV header and is reproducible") {
    CliResult a = run_cli("table --qmax 13");
    CHECK(a.exit_code == 0);
    CHECK(a.output.rfind("q,lambda_lp,family_b0,q_pow_neg_eps,delta,delta_exact,bound_ok\n", 0) ==
          0);
    CHECK(a.output.find("\n7,0.473952458,0.473952458,") != std::string::npos);

    CliResult b = run_cli("table --qmax 13");
    CHECK(a.output == b.output);

    CliResult json = run_cli("table --qmax 7 --format json");
    CHECK(json.exit_code == 0);
    CHECK(json.output.find("\"lambda_lp\"") != std::string::npos);
}

TEST_CASE("epsilon command") {
    CliResult plain = run_cli("epsilon");
    CHECK(plain.exit_code == 0);
    CHECK(plain.output.find("epsilon = 0.119535707") != std::string::npos);
    CHECK(plain.output.find("formula:") != std::string::npos);

    CliResult checked = run_cli("epsilon --check");
    CHECK(checked.exit_code == 0);
    CHECK(checked.output.find("[PASS] 13^(-3*eps) = lambda(13)") != std::string::npos);
    CHECK(checked.output.find("[PASS] family(2197).b0 = 2197^(-eps)") != std::string::npos);
}

TEST_CASE("usage errors exit with the usage code") {
    CHECK(run_cli("").exit_code == 3);
    CHECK(run_cli("lambda").exit_code == 3);
    CHECK(run_cli("lambda 13 --method newton").exit_code == 3);
    CHECK(run_cli("nonsense 4").exit_code == 3);
}

TEST_CASE("WITNESSLAB_BUDGET environment variable caps the search") {
    std::string command = std::string("WITNESSLAB_BUDGET=1 ") + WITNESSLAB_CLI_PATH +
                          " delta 91 --exact --json 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
        output.append(buffer.data(), got);
    pclose(pipe);
    CHECK(output.find("\"exact\":false") != std::string::npos);

    // an explicit flag overrides the environment
    CliResult flag = run_cli("delta 91 --exact --budget 100000000 --json");
    CHECK(flag.output.find("\"exact\":true") != std::string::npos);
}
