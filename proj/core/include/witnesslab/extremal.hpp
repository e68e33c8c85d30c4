#pragma once

#include <cstdint>
#include <vector>

#include "witnesslab/arith.hpp"

namespace witnesslab::extremal {

using arith::int64_t;

/// Circulant graph on Z_q with x ~ y iff x - y is a nonzero cube. Avoider
/// sets B (with B - B missing every cube) are exactly its independent sets.
struct CayleyGraph {
    int64_t q = 1;
    arith::ResidueSet connection;

    bool adjacent(int64_t x, int64_t y) const;
    std::size_t degree() const { return connection.size(); }
};

CayleyGraph cayley_graph(int64_t q);

struct DeltaResult {
    int64_t q = 1;
    int size = 0;
    std::vector<int64_t> witness_set;
    bool exact = false;
    std::uint64_t nodes_explored = 0;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// Maximum avoider size by branch and bound (0 fixed into B by translation
/// symmetry, greedy incumbent, coloring bound). exact is true iff the search
/// finished inside the node budget; otherwise the best incumbent is returned.
DeltaResult delta_exact(int64_t q, std::uint64_t node_budget = kDefaultNodeBudget);

/// Maximal (not maximum) avoider by greedy insertion in natural order.
DeltaResult delta_greedy(int64_t q);

/// Greedy insertion over a deterministically shuffled candidate order.
DeltaResult delta_greedy(int64_t q, std::uint64_t seed);

/// CRT image of B1 x B2: a valid avoider modulo q1*q2 of size |B1|*|B2|.
DeltaResult product_avoider(const DeltaResult& b1, const DeltaResult& b2);

struct ContainedDifferenceResult {
    int64_t q = 0;
    std::vector<int64_t> contained_set;  // B' with B' - B' inside C0
    int64_t multiplier = 0;              // smallest non-residue t
    std::vector<int64_t> avoider;        // B = t * B'
    bool exact = false;
    std::uint64_t nodes_explored = 0;
    int64_t log4_target = 0;  // floor(log_4 q)
    bool meets_log4_target = false;
};

/// For a prime q = 1 mod 3: clique search for B' with differences inside C0,
/// then the avoider t*B' for the smallest non-residue t.
ContainedDifferenceResult contained_difference_search(int64_t q,
                                                      std::uint64_t node_budget = kDefaultNodeBudget);

struct BridgeCheck {
    int delta_size = 0;
    double bound = 0.0;  // b0 * q
    bool ok = false;
};

/// delta_exact(q).size <= b0 * q for a given witness constant term.
BridgeCheck check_delta_le_bound(const DeltaResult& delta, double b0);

/// Same check with b0 = lambda(q) from the LP module.
BridgeCheck check_delta_le_lambda(int64_t q, std::uint64_t node_budget = kDefaultNodeBudget);

/// True iff all pairwise differences of the set avoid C^(q).
bool is_valid_avoider(int64_t q, const std::vector<int64_t>& set);

/// True iff all pairwise differences lie inside C0^(q).
bool differences_within_cubes(int64_t q, const std::vector<int64_t>& set);

}  // namespace witnesslab::extremal
