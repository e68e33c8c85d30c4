#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "witnesslab/extremal.hpp"
#include "witnesslab/lambda_lp.hpp"
#include "witnesslab/verification.hpp"
#include "witnesslab/witness.hpp"

using namespace witnesslab;
using arith::int64_t;

TEST_CASE("cayley graph basics") {
    extremal::CayleyGraph g = extremal::cayley_graph(13);
    CHECK(g.degree() == 4);
    CHECK(g.adjacent(0, 1));    // 1 is a cube
    CHECK(g.adjacent(1, 0));    // symmetric connection set
    CHECK_FALSE(g.adjacent(0, 2));
    for (int64_t x = 0; x < 13; ++x) {
        std::size_t neighbors = 0;
        for (int64_t y = 0; y < 13; ++y)
            if (y != x && g.adjacent(x, y)) ++neighbors;
        CHECK(neighbors == g.degree());
    }
}

TEST_CASE("exact avoider sizes on the worked examples") {
    extremal::DeltaResult d7 = extremal::delta_exact(7);
    CHECK(d7.size == 3);
    CHECK(d7.exact);
    CHECK(extremal::is_valid_avoider(7, d7.witness_set));
    CHECK(d7.witness_set == std::vector<int64_t>{0, 2, 4});

    CHECK(extremal::delta_exact(13).size == 4);
    CHECK(extremal::delta_exact(5).size == 1);
    CHECK(extremal::delta_exact(1).size == 1);
    CHECK(extremal::delta_exact(27).size == 12);
}

TEST_CASE("search agrees with the plain enumeration oracle") {
    for (int64_t q = 1; q <= 48; ++q) {
        extremal::DeltaResult fast = extremal::delta_exact(q);
        extremal::DeltaResult brute = verification::delta_brute_force(q);
        CHECK(fast.exact);
        CHECK(fast.size == brute.size);
    }
}

TEST_CASE("singleton avoiders for the bijective primes") {
    for (int64_t p = 2; p <= 100; ++p) {
        if (!arith::is_prime(p) || (p % 3 != 2 && p != 3)) continue;
        extremal::DeltaResult d = extremal::delta_exact(p);
        CHECK(d.size == 1);
        CHECK(d.exact);
        CHECK(d.witness_set == std::vector<int64_t>{0});
    }
}

TEST_CASE("greedy insertion produces valid maximal avoiders below the optimum") {
    extremal::DeltaResult g7 = extremal::delta_greedy(7);
    CHECK(g7.size == 3);
    CHECK_FALSE(g7.exact);
    CHECK(g7.witness_set == std::vector<int64_t>{0, 2, 4});

    CHECK(extremal::delta_greedy(5).witness_set == std::vector<int64_t>{0});
    CHECK(extremal::delta_greedy(13).size >= 3);

    for (int64_t q = 1; q <= 40; ++q) {
        extremal::DeltaResult greedy = extremal::delta_greedy(q);
        CHECK(extremal::is_valid_avoider(q, greedy.witness_set));
        CHECK(greedy.size <= extremal::delta_exact(q).size);
        extremal::DeltaResult shuffled = extremal::delta_greedy(q, 12345);
        CHECK(extremal::is_valid_avoider(q, shuffled.witness_set));
        CHECK(shuffled.size <= extremal::delta_exact(q).size);
    }
}

TEST_CASE("budget exhaustion reports an inexact incumbent") {
    extremal::DeltaResult d = extremal::delta_exact(91, 1);
    CHECK_FALSE(d.exact);
    CHECK(d.size >= 1);
    CHECK(extremal::is_valid_avoider(91, d.witness_set));
    CHECK(d.nodes_explored >= 1);
}

TEST_CASE("product avoider composes through the CRT") {
    extremal::DeltaResult b7 = extremal::delta_exact(7);
    extremal::DeltaResult b5 = extremal::delta_exact(5);
    extremal::DeltaResult b35 = extremal::product_avoider(b7, b5);
    CHECK(b35.q == 35);
    CHECK(b35.size == 3);
    CHECK_FALSE(b35.exact);
    CHECK(extremal::is_valid_avoider(35, b35.witness_set));

    extremal::DeltaResult b13 = extremal::delta_exact(13);
    extremal::DeltaResult b91 = extremal::product_avoider(b7, b13);
    CHECK(b91.size == 12);
    CHECK(extremal::is_valid_avoider(91, b91.witness_set));

    extremal::DeltaResult single{1, 1, {0}, true, 0};
    CHECK(extremal::product_avoider(single, single).witness_set == std::vector<int64_t>{0});

    CHECK_THROWS_AS(extremal::product_avoider(b7, b7), std::invalid_argument);
}

TEST_CASE("contained-difference search and the scaled avoider") {
    extremal::ContainedDifferenceResult r7 = extremal::contained_difference_search(7);
    CHECK(r7.contained_set == std::vector<int64_t>{0, 1});
    CHECK(r7.multiplier == 2);
    CHECK(r7.avoider == std::vector<int64_t>{0, 2});
    CHECK(extremal::differences_within_cubes(7, r7.contained_set));
    CHECK(extremal::is_valid_avoider(7, r7.avoider));
    CHECK(r7.log4_target == 1);
    CHECK(r7.meets_log4_target);

    extremal::ContainedDifferenceResult r13 = extremal::contained_difference_search(13);
    CHECK(extremal::differences_within_cubes(13, r13.contained_set));
    CHECK(extremal::is_valid_avoider(13, r13.avoider));
    CHECK(r13.log4_target == 1);
    CHECK(static_cast<int64_t>(r13.avoider.size()) >= r13.log4_target);

    CHECK_THROWS_AS(extremal::contained_difference_search(5), std::invalid_argument);
    CHECK_THROWS_AS(extremal::contained_difference_search(9), std::invalid_argument);
}

TEST_CASE("bridge inequality on the worked examples") {
    extremal::BridgeCheck c7 = extremal::check_delta_le_lambda(7);
    CHECK(c7.delta_size == 3);
    CHECK(c7.bound == doctest::Approx(7 * 0.47395246).epsilon(1e-6));
    CHECK(c7.ok);

    CHECK(extremal::check_delta_le_lambda(13).ok);

    extremal::BridgeCheck c5 = extremal::check_delta_le_lambda(5);
    CHECK(c5.delta_size == 1);
    CHECK(c5.bound == doctest::Approx(1.0).epsilon(1e-9));  // equality at the trivial witness
    CHECK(c5.ok);
}

TEST_CASE("bridge inequality with both witness constants over a sweep") {
    witness::FamilyBuilder family;
    for (int64_t q = 1; q <= 60; ++q) {
        extremal::DeltaResult d = extremal::delta_exact(q);
        REQUIRE(d.exact);
        CHECK(extremal::check_delta_le_bound(d, lp::lambda(q)).ok);
        CHECK(extremal::check_delta_le_bound(d, family.constant_term(q)).ok);
        // the integer-rounded form
        CHECK(d.size <= static_cast<int>(std::floor(static_cast<double>(q) * lp::lambda(q) + 1e-9)));
    }
}
