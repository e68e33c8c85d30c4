#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace witnesslab::arith {

using std::int64_t;

// ---- elementary modular helpers -------------------------------------------

int64_t mod_mul(int64_t a, int64_t b, int64_t m);
int64_t mod_pow(int64_t base, int64_t exp, int64_t m);
int64_t gcd(int64_t a, int64_t b);

/// Extended gcd: returns g = gcd(a, b) and fills x, y with a*x + b*y = g.
int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y);

/// Inverse of a modulo m, in [0, m). Throws std::invalid_argument if gcd(a, m) != 1.
int64_t mod_inverse(int64_t a, int64_t m);

/// Deterministic trial division, intended for desk-scale inputs (<= ~1e12).
bool is_prime(int64_t n);

// ---- factorization ---------------------------------------------------------

struct PrimePower {
    int64_t prime = 0;
    int exponent = 0;

    int64_t value() const;
    bool operator==(const PrimePower&) const = default;
};

/// Prime factorization of a positive modulus. q = 1 has an empty factor list.
struct Factorization {
    int64_t q = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing

    bool is_prime_power() const { return factors.size() == 1; }
};

Factorization factorize(int64_t q);

// ---- cubic residue sets ----------------------------------------------------

/// The set C of non-zero cubes modulo q, i.e. { j^3 mod q : 1 <= j < q, q does
/// not divide j^3 }. Symmetric about 0 because -1 is itself a cube.
struct ResidueSet {
    int64_t q = 1;
    std::vector<int64_t> residues;  // sorted, all in [1, q-1]

    bool contains(int64_t r) const;
    /// Membership in C0 = C union {0}.
    bool contains_with_zero(int64_t r) const { return r == 0 || contains(r); }
    std::size_t size() const { return residues.size(); }

  private:
    friend ResidueSet cubic_residues(int64_t);
    std::vector<bool> membership_;
};

ResidueSet cubic_residues(int64_t q);

// ---- +/- classes and unit-cube orbits --------------------------------------

/// One pair {r, q-r} inside C; rep is min(r, q-r). Self-paired iff r == q-r.
struct PlusMinusClass {
    int64_t rep = 0;
    bool self_paired = false;

    int members() const { return self_paired ? 1 : 2; }
};

struct ClassPartition {
    int64_t q = 1;
    std::vector<PlusMinusClass> classes;  // sorted by rep
    /// Orbit grouping of classes under multiplication by unit cubes;
    /// populated only by cubic_unit_orbits. Each entry lists class indices.
    std::vector<std::vector<std::size_t>> orbits;

    bool single_orbit() const { return orbits.size() == 1; }
};

ClassPartition plus_minus_classes(const ResidueSet& set);

/// Classes of C^(q) grouped into orbits under multiplication by
/// { u^3 mod q : u a unit }. Computed by explicit closure over generators.
ClassPartition cubic_unit_orbits(int64_t q);

/// The unit cubes { u^3 mod q : gcd(u, q) = 1 }, sorted.
std::vector<int64_t> unit_cubes(int64_t q);

// ---- structure of cubes modulo prime powers --------------------------------

/// Block description of C modulo p^m in terms of C modulo p^(m-1):
/// write z = t + l*block with 0 <= t < block, 0 <= l < block_count.
/// For t != 0, z is a cube iff t is one at the lower level; the t = 0 column
/// follows the top_row predicate. For p = 3 the recursion runs on exponents
/// 3m with block_count 27 and the t = 0 column governed by C0 mod 27.
struct ResidueStructureTable {
    int64_t modulus = 0;      // p^m, or 3^(3m)
    int64_t block = 0;        // p^(m-1), or 3^(3(m-1))
    int64_t block_count = 0;  // p, or 27

    /// Membership of t + l*block in C0 according to the structural rule.
    bool structural_member(int64_t t, int64_t l) const;
    /// Membership by direct enumeration of cubes mod `modulus`.
    bool enumerated_member(int64_t t, int64_t l) const;
    /// True iff the two predicates agree on every (t, l) cell.
    bool consistent() const;

    ResidueSet lower;     // C mod block
    ResidueSet top_unit;  // C mod p (or mod 27); the t = 0 rule reads C0 of this
    bool top_row_uses_unit_set = false;  // false: l = 0 only (3 does not divide m-1)
    ResidueSet enumerated;               // C mod modulus
};

/// For p != 3: the table for p^m, m >= 2. For p = 3: the table for 3^(3m),
/// m >= 2, stated over 27-blocks.
ResidueStructureTable residue_structure(int64_t p, int m);

// ---- CRT -------------------------------------------------------------------

/// The unique z mod q1*q2 with z = r1 (mod q1) and z = r2 (mod q2).
/// Throws std::invalid_argument unless gcd(q1, q2) = 1.
int64_t crt_compose(int64_t q1, int64_t q2, int64_t r1, int64_t r2);

}  // namespace witnesslab::arith
