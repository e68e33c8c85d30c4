#include <random>
#include <sstream>

#include "doctest.h"
#include "witnesslab/serialization.hpp"
#include "witnesslab/verification.hpp"

using namespace witnesslab;
using arith::int64_t;

TEST_CASE("witness JSON schema: field order and content") {
    witness::WitnessFunction w = witness::build_trivial(5);
    std::string compact = serialization::witness_to_json(w);
    CHECK(compact.rfind("{\"q\":5,\"b0\":0.2,\"coeffs\":[{\"rep\":1,", 0) == 0);
    CHECK(compact.find("\"construction\":\"trivial\"") != std::string::npos);
    // coeffs sorted by rep
    std::size_t r1 = compact.find("\"rep\":1");
    std::size_t r2 = compact.find("\"rep\":2");
    CHECK(r1 != std::string::npos);
    CHECK(r2 != std::string::npos);
    CHECK(r1 < r2);
}

TEST_CASE("witness JSON round-trips losslessly at double precision") {
    std::mt19937_64 rng(7);
    std::vector<witness::WitnessFunction> samples{
        witness::build_trivial(5),    witness::build_gauss(13),
        witness::build_optimal(35),   witness::build_family(90),
        witness::build_family(2197),  witness::build_power_of_three(4),
        witness::build_squarefree(91)};
    for (int i = 0; i < 20; ++i)
        samples.push_back(witness::build_family(2 + static_cast<int64_t>(rng() % 499)));

    for (const auto& w : samples) {
        std::string text = serialization::witness_to_json(w);
        witness::WitnessFunction back = serialization::witness_from_json(text);
        CHECK(back.q() == w.q());
        CHECK(back.b0() == w.b0());  // bit-exact
        REQUIRE(back.coefficients().size() == w.coefficients().size());
        for (std::size_t c = 0; c < w.coefficients().size(); ++c) {
            CHECK(back.coefficients()[c].rep == w.coefficients()[c].rep);
            CHECK(back.coefficients()[c].value == w.coefficients()[c].value);
        }
        CHECK(back.construction() == w.construction());
        CHECK(serialization::witness_to_json(back) == text);
    }
}

TEST_CASE("LP solution JSON carries the certificate") {
    lp::LpProblem problem(13);
    lp::LpSolution solution = lp::solve_lp(problem);
    std::string text = serialization::lp_solution_to_json(solution, problem);
    CHECK(text.find("\"certificate\":{\"binding_ys\":[") != std::string::npos);
    CHECK(text.find("\"dual\":[") != std::string::npos);
    CHECK(text.find("\"duality_gap\":") != std::string::npos);
    CHECK(text.rfind("{\"q\":13,\"b0\":0.398", 0) == 0);
}

TEST_CASE("delta JSON schema") {
    extremal::DeltaResult d = extremal::delta_exact(7);
    std::string text = serialization::delta_to_json(d);
    CHECK(text == "{\"q\":7,\"size\":3,\"set\":[0,2,4],\"exact\":true,\"nodes\":" +
                      std::to_string(d.nodes_explored) + "}");
}

TEST_CASE("table CSV has the pinned header and deterministic rows") {
    std::vector<serialization::TableRow> rows = verification::build_table(13, 1000000);
    std::ostringstream out;
    serialization::write_table_csv(rows, out);
    std::string text = out.str();
    CHECK(text.rfind("q,lambda_lp,family_b0,q_pow_neg_eps,delta,delta_exact,bound_ok\n", 0) == 0);

    // row for q = 7: both constants coincide, delta 3, bound holds
    CHECK(text.find("\n7,0.473952458,0.473952458,0.792465946,3,true,true\n") != std::string::npos);
    // row for q = 5: the bijective prime
    CHECK(text.find("\n5,0.2,0.2,0.824988941,1,true,true\n") != std::string::npos);

    std::ostringstream again;
    serialization::write_table_csv(verification::build_table(13, 1000000), again);
    CHECK(again.str() == text);

    std::string json_text = serialization::table_to_json(rows);
    CHECK(json_text.find("\"q\":7,\"lambda_lp\":") != std::string::npos);
}

TEST_CASE("verification report JSON is shaped and deterministic") {
    verification::VerificationReport report = verification::run_acceptance(20, 1000000);
    std::string text = verification::report_to_json(report, 2);
    CHECK(text.find("\"qmax\": 20") != std::string::npos);
    CHECK(text.find("\"claims\": [") != std::string::npos);
    CHECK(text.find("\"summary\": {") != std::string::npos);
    CHECK(text.find("\"pass\": true") != std::string::npos);
    CHECK(report.pass());
    CHECK(verification::report_to_json(verification::run_acceptance(20, 1000000), 2) == text);
}

TEST_CASE("9-significant-digit rendering") {
    CHECK(serialization::format_sig9(0.2) == "0.2");
    CHECK(serialization::format_sig9(0.47395245819915643) == "0.473952458");
    CHECK(serialization::format_sig9(12345678912.0) == "1.23456789e+10");
}
