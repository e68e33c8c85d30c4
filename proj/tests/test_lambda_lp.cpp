#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "witnesslab/lambda_lp.hpp"
#include "witnesslab/witness.hpp"

using namespace witnesslab;
using arith::int64_t;
using std::numbers::pi;

namespace {

double lambda7_closed() { return std::cos(pi / 7) / (1 + std::cos(pi / 7)); }
double lambda13_closed() { return 1 - 2 / (2 + std::cos(pi / 13) + std::sin(3 * pi / 26)); }
double lambda27_closed() { return std::cos(pi / 9) / (1 + std::cos(pi / 9)); }

}  // namespace

TEST_CASE("problem shape on the worked examples") {
    lp::LpProblem p13(13);
    CHECK(p13.variable_count() == 3);  // b0 + classes {1,12}, {5,8}
    CHECK(p13.constraint_count() == 13);

    lp::LpProblem p4(4);
    CHECK(p4.variable_count() == 2);
    std::vector<double> row1 = p4.row(1);
    CHECK(row1[0] == 1.0);
    CHECK(std::abs(row1[1] - 2 * std::cos(pi / 2)) < 1e-15);
    std::vector<double> row2 = p4.row(2);
    CHECK(std::abs(row2[1] - 2 * std::cos(pi)) < 1e-15);

    lp::LpProblem p2(2);
    CHECK(p2.variable_count() == 2);  // self-paired class {1}
    CHECK(std::abs(p2.row(1)[1] - std::cos(pi)) < 1e-15);

    CHECK_THROWS_AS(lp::LpProblem(1), std::invalid_argument);
}

TEST_CASE("rows are mirror-symmetric bit for bit and normalized at zero") {
    for (int64_t q : {5, 12, 13, 27, 36, 91, 154}) {
        lp::LpProblem p(q);
        std::vector<double> zero = p.row(0);
        CHECK(zero[0] == 1.0);
        const auto& classes = p.classes();
        for (std::size_t c = 0; c < classes.size(); ++c)
            CHECK(zero[1 + c] == static_cast<double>(classes[c].members()));
        for (int64_t y = 1; y < q; ++y) {
            std::vector<double> a = p.row(y);
            std::vector<double> b = p.row(q - y);
            CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("LP optima on the worked examples") {
    CHECK(std::abs(lp::solve_lp(lp::LpProblem(5)).lambda - 0.2) < 1e-9);
    CHECK(std::abs(lp::solve_lp(lp::LpProblem(13)).lambda - lambda13_closed()) < 1e-9);
    CHECK(std::abs(lp::solve_lp(lp::LpProblem(4)).lambda - 0.5) < 1e-9);
}

TEST_CASE("LP solutions carry a clean optimality certificate") {
    for (int64_t q : {5, 13, 27, 35, 91, 93, 124, 129, 150, 154, 175, 185}) {
        lp::LpProblem problem(q);
        lp::LpSolution s = lp::solve_lp(problem);
        REQUIRE(s.status == lp::SolveStatus::Optimal);
        CHECK(s.duality_gap <= 1e-7);
        CHECK(s.max_violation <= 1e-9);
        CHECK(witness::verify_witness(s.to_witness(problem)).pass);

        // dual feasibility: dual[0] * row(0) + sum_y dual[y] * row(y) == e_0
        std::size_t k = problem.classes().size();
        std::vector<double> lhs(k + 1, 0.0);
        for (int64_t y = 0; y < q; ++y) {
            double w = s.dual[static_cast<std::size_t>(y)];
            if (y > 0) CHECK(w >= 0.0);
            if (w == 0.0) continue;
            std::vector<double> row = problem.row(y);
            for (std::size_t j = 0; j <= k; ++j) lhs[j] += w * row[j];
        }
        CHECK(std::abs(lhs[0] - 1.0) <= 1e-7);
        for (std::size_t j = 1; j <= k; ++j) CHECK(std::abs(lhs[j]) <= 1e-7);

        // binding rows really sit at zero
        std::vector<double> values = s.to_witness(problem).evaluate_all();
        for (int64_t y : s.binding_ys)
            CHECK(values[static_cast<std::size_t>(y)] <= 1e-8);
    }
}

TEST_CASE("trig profile minima at the landmark primes") {
    lp::TrigProfile t7 = lp::trig_profile(7);
    CHECK(std::abs(t7.min_value + 2 * std::cos(pi / 7)) < 1e-12);
    CHECK(t7.argmin == 3);
    CHECK(std::abs(t7.values[0] - 2.0) < 1e-12);  // S(0) = |C|

    lp::TrigProfile t13 = lp::trig_profile(13);
    CHECK(std::abs(t13.min_value + (2 * std::cos(pi / 13) + 2 * std::sin(3 * pi / 26))) < 1e-12);
}

TEST_CASE("single-class closed form on the worked examples") {
    CHECK(std::abs(lp::lambda_single_class(7) - lambda7_closed()) < 1e-15);
    CHECK(std::abs(lp::lambda_single_class(13) - lambda13_closed()) < 1e-15);
    CHECK(std::abs(lp::lambda_single_class(27) - lambda27_closed()) < 1e-15);
    CHECK(lp::single_class_applicable(49));
    CHECK_FALSE(lp::single_class_applicable(35));
    CHECK_FALSE(lp::single_class_applicable(81));
    CHECK_THROWS_AS(lp::lambda_single_class(35), lp::SolverError);
}

TEST_CASE("closed form equals the LP wherever the orbit action is transitive") {
    for (int64_t p = 2; p <= 500; ++p) {
        if (!arith::is_prime(p)) continue;
        CHECK(std::abs(lp::solve_lp(lp::LpProblem(p)).lambda - lp::lambda_single_class(p)) <=
              1e-8);
    }
    CHECK(std::abs(lp::solve_lp(lp::LpProblem(27)).lambda - lp::lambda_single_class(27)) <= 1e-8);
}

TEST_CASE("prime-power recursion closed form") {
    CHECK(std::abs(lp::lambda_prime_power(7, 4) - lambda7_closed() * lambda7_closed()) < 1e-15);
    CHECK(std::abs(lp::lambda_prime_power(2, 2) - 0.5) < 1e-15);
    CHECK(std::abs(lp::lambda_prime_power(13, 3) - lambda13_closed()) < 1e-15);
    // 3-adic values follow the 27-tower, including the contracted exponents
    CHECK(std::abs(lp::lambda_prime_power(3, 3) - lambda27_closed()) < 1e-15);
    CHECK(std::abs(lp::lambda_prime_power(3, 6) - lambda27_closed() * lambda27_closed()) < 1e-15);
    CHECK(std::abs(lp::lambda_prime_power(3, 2) - lambda27_closed()) < 1e-15);
    CHECK_THROWS_AS(lp::lambda_prime_power(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(lp::lambda_prime_power(7, 0), std::invalid_argument);
}

TEST_CASE("recursion matches the LP on small prime powers") {
    for (int64_t p : {2, 5, 7, 13}) {
        int64_t pm = p;
        for (int m = 1; pm <= 350; ++m, pm *= p)
            CHECK(std::abs(lp::solve_lp(lp::LpProblem(pm)).lambda - lp::lambda_prime_power(p, m)) <=
                  1e-6);
    }
    // the 3-adic statement: LP(729) = LP(27)^2
    double l27 = lp::solve_lp(lp::LpProblem(27)).lambda;
    CHECK(std::abs(lp::solve_lp(lp::LpProblem(729)).lambda - l27 * l27) <= 1e-6);
}

TEST_CASE("multiplicativity of the LP optimum") {
    double l35 = lp::solve_lp(lp::LpProblem(35)).lambda;
    double l65 = lp::solve_lp(lp::LpProblem(65)).lambda;
    double l91 = lp::solve_lp(lp::LpProblem(91)).lambda;
    CHECK(std::abs(l35 - 0.2 * lambda7_closed()) <= 1e-6);
    CHECK(std::abs(l65 - 0.2 * lambda13_closed()) <= 1e-6);
    CHECK(std::abs(l91 - lambda7_closed() * lambda13_closed()) <= 1e-6);
}

TEST_CASE("epsilon constant and its defining identities") {
    double eps = lp::epsilon_constant();
    CHECK(std::abs(eps - 0.119540) <= 1e-5);
    CHECK(std::abs(std::pow(13.0, -3.0 * eps) - lambda13_closed()) <= 1e-9);
    CHECK(std::abs(std::pow(2197.0, -eps) - lambda13_closed()) <= 1e-9);
    CHECK_FALSE(lp::epsilon_formula().empty());
}

TEST_CASE("lambda decay at the first few primes of the residue-rich class") {
    double eps = lp::epsilon_constant();
    CHECK(lp::lambda(7) <= std::pow(7.0, -3 * eps));
    CHECK(lp::lambda(19) <= std::pow(19.0, -3 * eps));
    CHECK(std::abs(lp::lambda(13) - std::pow(13.0, -3 * eps)) <= 1e-8);  // the extremal case
}

TEST_CASE("gauss floor checks") {
    lp::GaussFloorCheck c7 = lp::gauss_min_bound(7);
    CHECK(c7.ok);
    CHECK(std::abs(c7.min_sum - 3 * (-2 * std::cos(pi / 7))) < 1e-12);
    CHECK(std::abs(c7.bound - (-1 - 2 * std::sqrt(7.0))) < 1e-12);
    CHECK(lp::gauss_min_bound(13).ok);
    CHECK(lp::gauss_min_bound(103).ok);
    CHECK_THROWS_AS(lp::gauss_min_bound(5), std::invalid_argument);
}

TEST_CASE("the optimum never exceeds the explicit gauss construction") {
    for (int64_t s = 7; s <= 200; ++s) {
        if (!arith::is_prime(s) || s % 3 != 1) continue;
        CHECK(lp::solve_lp(lp::LpProblem(s)).lambda <=
              witness::build_gauss(s).b0() + 1e-12);
    }
}

TEST_CASE("lambda dispatcher handles every modulus class") {
    CHECK(lp::lambda(1) == 1.0);
    CHECK(std::abs(lp::lambda(2) - 0.5) < 1e-12);
    CHECK(std::abs(lp::lambda(35) - 0.2 * lambda7_closed()) < 1e-6);
    CHECK_THROWS_AS(lp::lambda(0), std::invalid_argument);
}
