#include "witnesslab/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "witnesslab/lambda_lp.hpp"

namespace witnesslab::extremal {

namespace {

struct Bits {
    std::vector<std::uint64_t> words;

    explicit Bits(std::size_t n = 0) : words((n + 63) / 64, 0) {}
    void set(std::size_t i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }

    bool empty() const {
        for (std::uint64_t w : words)
            if (w) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : words) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    static std::size_t intersection_count(const Bits& a, const Bits& b) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < a.words.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(a.words[i] & b.words[i]));
        return n;
    }
    static Bits intersection(const Bits& a, const Bits& b) {
        Bits out;
        out.words.resize(a.words.size());
        for (std::size_t i = 0; i < a.words.size(); ++i) out.words[i] = a.words[i] & b.words[i];
        return out;
    }
    bool intersects(const Bits& other) const {
        for (std::size_t i = 0; i < words.size(); ++i)
            if (words[i] & other.words[i]) return true;
        return false;
    }
    template <typename Fn>
    void for_each(Fn fn) const {
        for (std::size_t wi = 0; wi < words.size(); ++wi) {
            std::uint64_t w = words[wi];
            while (w) {
                unsigned bit = static_cast<unsigned>(std::countr_zero(w));
                fn(wi * 64 + bit);
                w &= w - 1;
            }
        }
    }
};

/// Maximum clique containing vertex 0 in the circulant graph on Z_q whose
/// edges are the differences flagged in `allowed`. Branch and bound in the
/// Tomita style: candidates ordered by residual degree, greedy coloring
/// bound, deterministic throughout. Translation symmetry is spent on fixing
/// vertex 0.
// TODO: also prune by the multiplier symmetries (unit-cube rotations) of the
// circulant; only translations are exploited so far.
class CliqueSearch {
  public:
    CliqueSearch(int64_t q, const std::vector<bool>& allowed, std::uint64_t budget)
        : q_(static_cast<std::size_t>(q)), budget_(budget) {
        neighbors_.assign(q_, Bits(q_));
        std::vector<std::size_t> diffs;
        for (std::size_t d = 1; d < q_; ++d)
            if (allowed[d]) diffs.push_back(d);
        for (std::size_t v = 0; v < q_; ++v)
            for (std::size_t d : diffs) neighbors_[v].set((v + d) % q_);
    }

    DeltaResult run() {
        best_set_ = greedy_incumbent();
        best_ = static_cast<int>(best_set_.size());

        current_.assign(1, 0);
        Bits candidates = neighbors_[0];
        expand(candidates, 1);

        DeltaResult result;
        result.q = static_cast<int64_t>(q_);
        result.size = best_;
        result.witness_set.assign(best_set_.begin(), best_set_.end());
        std::sort(result.witness_set.begin(), result.witness_set.end());
        result.exact = !aborted_;
        result.nodes_explored = nodes_;
        return result;
    }

  private:
    std::vector<int64_t> greedy_incumbent() const {
        std::vector<int64_t> chosen{0};
        for (std::size_t v = 1; v < q_; ++v) {
            bool ok = true;
            for (int64_t u : chosen)
                if (!neighbors_[static_cast<std::size_t>(u)].test(v)) {
                    ok = false;
                    break;
                }
            if (ok) chosen.push_back(static_cast<int64_t>(v));
        }
        return chosen;
    }

    void expand(Bits& candidates, int depth) {
        if (aborted_ || candidates.empty()) return;

        // residual-degree order, ties toward the smaller label
        std::vector<std::size_t> verts;
        candidates.for_each([&](std::size_t v) { verts.push_back(v); });
        std::vector<std::size_t> degree(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i)
            degree[i] = Bits::intersection_count(candidates, neighbors_[verts[i]]);
        std::vector<std::size_t> order(verts.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (degree[a] != degree[b]) return degree[a] > degree[b];
            return verts[a] < verts[b];
        });

        // sequential coloring; color classes are independent sets, so any
        // clique inside `candidates` has size <= its top color
        std::vector<Bits> classes;
        std::vector<std::pair<std::size_t, int>> colored;  // (vertex, color)
        colored.reserve(verts.size());
        for (std::size_t oi : order) {
            std::size_t v = verts[oi];
            int color = 0;
            for (std::size_t ci = 0; ci < classes.size(); ++ci) {
                if (!classes[ci].intersects(neighbors_[v])) {
                    color = static_cast<int>(ci) + 1;
                    break;
                }
            }
            if (color == 0) {
                classes.emplace_back(q_);
                color = static_cast<int>(classes.size());
            }
            classes[static_cast<std::size_t>(color - 1)].set(v);
            colored.emplace_back(v, color);
        }
        std::stable_sort(colored.begin(), colored.end(),
                         [](const auto& a, const auto& b) { return a.second < b.second; });

        for (std::size_t i = colored.size(); i-- > 0;) {
            auto [v, color] = colored[i];
            if (depth + color <= best_) return;  // every earlier vertex has color <= this
            if (!candidates.test(v)) continue;
            if (++nodes_ > budget_) {
                aborted_ = true;
                return;
            }
            current_.push_back(static_cast<int64_t>(v));
            Bits next = Bits::intersection(candidates, neighbors_[v]);
            if (next.empty()) {
                if (depth + 1 > best_) {
                    best_ = depth + 1;
                    best_set_ = current_;
                }
            } else {
                expand(next, depth + 1);
            }
            current_.pop_back();
            candidates.reset(v);
            if (aborted_) return;
        }
    }

    std::size_t q_;
    std::vector<Bits> neighbors_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    int best_ = 0;
    std::vector<int64_t> best_set_;
    std::vector<int64_t> current_;
};

std::vector<bool> avoider_differences(int64_t q) {
    arith::ResidueSet set = arith::cubic_residues(q);
    std::vector<bool> allowed(static_cast<std::size_t>(q), false);
    for (int64_t d = 1; d < q; ++d) allowed[static_cast<std::size_t>(d)] = !set.contains(d);
    return allowed;
}

DeltaResult greedy_over(int64_t q, const std::vector<int64_t>& candidates) {
    arith::ResidueSet set = arith::cubic_residues(q);
    DeltaResult result;
    result.q = q;
    result.exact = false;
    std::vector<int64_t> chosen{0};
    for (int64_t v : candidates) {
        ++result.nodes_explored;
        bool ok = true;
        for (int64_t u : chosen) {
            int64_t d = v - u;
            if (d < 0) d += q;
            if (set.contains(d)) {
                ok = false;
                break;
            }
        }
        if (ok) chosen.push_back(v);
    }
    std::sort(chosen.begin(), chosen.end());
    result.witness_set = std::move(chosen);
    result.size = static_cast<int>(result.witness_set.size());
    return result;
}

}  // namespace

bool CayleyGraph::adjacent(int64_t x, int64_t y) const {
    int64_t d = (x - y) % q;
    if (d < 0) d += q;
    return connection.contains(d);
}

CayleyGraph cayley_graph(int64_t q) {
    if (q < 1) throw std::invalid_argument("cayley_graph: modulus must be positive");
    return CayleyGraph{q, arith::cubic_residues(q)};
}

bool is_valid_avoider(int64_t q, const std::vector<int64_t>& set) {
    arith::ResidueSet residues = arith::cubic_residues(q);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            int64_t d = (set[i] - set[j]) % q;
            if (d < 0) d += q;
            if (residues.contains(d)) return false;
        }
    return true;
}

bool differences_within_cubes(int64_t q, const std::vector<int64_t>& set) {
    arith::ResidueSet residues = arith::cubic_residues(q);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            int64_t d = (set[i] - set[j]) % q;
            if (d < 0) d += q;
            if (!residues.contains_with_zero(d)) return false;
        }
    return true;
}

DeltaResult delta_exact(int64_t q, std::uint64_t node_budget) {
    if (q < 1) throw std::invalid_argument("delta_exact: modulus must be positive");
    if (q == 1) return DeltaResult{1, 1, {0}, true, 0};

    CliqueSearch search(q, avoider_differences(q), node_budget);
    DeltaResult result = search.run();
    if (!is_valid_avoider(q, result.witness_set))
        throw std::logic_error("delta_exact: search produced an invalid avoider set");
    return result;
}

DeltaResult delta_greedy(int64_t q) {
    if (q < 1) throw std::invalid_argument("delta_greedy: modulus must be positive");
    std::vector<int64_t> candidates;
    for (int64_t v = 1; v < q; ++v) candidates.push_back(v);
    return greedy_over(q, candidates);
}

DeltaResult delta_greedy(int64_t q, std::uint64_t seed) {
    if (q < 1) throw std::invalid_argument("delta_greedy: modulus must be positive");
    std::vector<int64_t> candidates;
    for (int64_t v = 1; v < q; ++v) candidates.push_back(v);
    std::mt19937_64 rng(seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    return greedy_over(q, candidates);
}

DeltaResult product_avoider(const DeltaResult& b1, const DeltaResult& b2) {
    if (arith::gcd(b1.q, b2.q) != 1)
        throw std::invalid_argument("product_avoider: moduli must be coprime");
    DeltaResult result;
    result.q = b1.q * b2.q;
    result.exact = false;
    result.nodes_explored = 0;
    for (int64_t x : b1.witness_set)
        for (int64_t y : b2.witness_set)
            result.witness_set.push_back(arith::crt_compose(b1.q, b2.q, x, y));
    std::sort(result.witness_set.begin(), result.witness_set.end());
    result.size = static_cast<int>(result.witness_set.size());
    if (!is_valid_avoider(result.q, result.witness_set))
        throw std::logic_error("product_avoider: CRT image is not a valid avoider");
    return result;
}

ContainedDifferenceResult contained_difference_search(int64_t q, std::uint64_t node_budget) {
    if (!arith::is_prime(q) || q % 3 != 1)
        throw std::invalid_argument("contained_difference_search: q must be a prime = 1 mod 3");

    arith::ResidueSet set = arith::cubic_residues(q);
    std::vector<bool> allowed(static_cast<std::size_t>(q), false);
    for (int64_t d = 1; d < q; ++d) allowed[static_cast<std::size_t>(d)] = set.contains(d);

    CliqueSearch search(q, allowed, node_budget);
    DeltaResult clique = search.run();

    ContainedDifferenceResult result;
    result.q = q;
    result.contained_set = clique.witness_set;
    result.exact = clique.exact;
    result.nodes_explored = clique.nodes_explored;
    if (!differences_within_cubes(q, result.contained_set))
        throw std::logic_error("contained_difference_search: differences escape C0");

    int64_t t = 1;
    while (set.contains(t)) ++t;
    result.multiplier = t;
    for (int64_t x : result.contained_set)
        result.avoider.push_back(arith::mod_mul(x, t, q));
    std::sort(result.avoider.begin(), result.avoider.end());
    if (!is_valid_avoider(q, result.avoider))
        throw std::logic_error("contained_difference_search: scaled set is not an avoider");

    result.log4_target = 0;
    for (int64_t pow4 = 4; pow4 <= q; pow4 *= 4) ++result.log4_target;
    result.meets_log4_target = static_cast<int64_t>(result.avoider.size()) >= result.log4_target;
    return result;
}

BridgeCheck check_delta_le_bound(const DeltaResult& delta, double b0) {
    BridgeCheck check;
    check.delta_size = delta.size;
    check.bound = b0 * static_cast<double>(delta.q);
    check.ok = static_cast<double>(delta.size) <= check.bound + 1e-9;
    return check;
}

BridgeCheck check_delta_le_lambda(int64_t q, std::uint64_t node_budget) {
    return check_delta_le_bound(delta_exact(q, node_budget), lp::lambda(q));
}

}  // namespace witnesslab::extremal
