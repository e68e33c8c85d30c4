#include "witnesslab/arith.hpp"

#include <algorithm>
#include <numeric>

namespace witnesslab::arith {

int64_t mod_mul(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

int64_t mod_pow(int64_t base, int64_t exp, int64_t m) {
    if (m == 1) return 0;
    int64_t result = 1;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) result = mod_mul(result, base, m);
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    return result;
}

int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    int64_t old_r = a, r = b;
    int64_t old_x = 1, x1 = 0;
    int64_t old_y = 0, y1 = 1;
    while (r != 0) {
        int64_t quot = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
        std::tie(old_x, x1) = std::make_pair(x1, old_x - quot * x1);
        std::tie(old_y, y1) = std::make_pair(y1, old_y - quot * y1);
    }
    x = old_x;
    y = old_y;
    return old_r;
}

int64_t mod_inverse(int64_t a, int64_t m) {
    int64_t x, y;
    a %= m;
    if (a < 0) a += m;
    int64_t g = ext_gcd(a, m, x, y);
    if (g != 1) throw std::invalid_argument("mod_inverse: arguments are not coprime");
    x %= m;
    if (x < 0) x += m;
    return x;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

int64_t PrimePower::value() const {
    int64_t v = 1;
    for (int i = 0; i < exponent; ++i) v *= prime;
    return v;
}

Factorization factorize(int64_t q) {
    if (q < 1) throw std::invalid_argument("factorize: modulus must be positive");
    Factorization f;
    f.q = q;
    int64_t n = q;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        PrimePower pp{d, 0};
        while (n % d == 0) {
            n /= d;
            ++pp.exponent;
        }
        f.factors.push_back(pp);
    }
    if (n > 1) f.factors.push_back(PrimePower{n, 1});
    return f;
}

bool ResidueSet::contains(int64_t r) const {
    if (r <= 0 || r >= q) return false;
    return membership_[static_cast<std::size_t>(r)];
}

ResidueSet cubic_residues(int64_t q) {
    if (q < 1) throw std::invalid_argument("cubic_residues: modulus must be positive");
    ResidueSet set;
    set.q = q;
    set.membership_.assign(static_cast<std::size_t>(q), false);
    for (int64_t j = 1; j < q; ++j) {
        int64_t c = mod_mul(mod_mul(j, j, q), j, q);
        if (c != 0) set.membership_[static_cast<std::size_t>(c)] = true;
    }
    for (int64_t r = 1; r < q; ++r)
        if (set.membership_[static_cast<std::size_t>(r)]) set.residues.push_back(r);
    return set;
}

ClassPartition plus_minus_classes(const ResidueSet& set) {
    ClassPartition part;
    part.q = set.q;
    for (int64_t r : set.residues) {
        int64_t mirror = set.q - r;
        if (r > mirror) continue;  // the pair was already emitted at its rep
        part.classes.push_back(PlusMinusClass{r, r == mirror});
    }
    return part;
}

std::vector<int64_t> unit_cubes(int64_t q) {
    std::vector<bool> seen(static_cast<std::size_t>(q), false);
    std::vector<int64_t> cubes;
    for (int64_t u = 1; u < q; ++u) {
        if (std::gcd(u, q) != 1) continue;
        int64_t c = mod_mul(mod_mul(u, u, q), u, q);
        if (!seen[static_cast<std::size_t>(c)]) {
            seen[static_cast<std::size_t>(c)] = true;
            cubes.push_back(c);
        }
    }
    std::sort(cubes.begin(), cubes.end());
    return cubes;
}

ClassPartition cubic_unit_orbits(int64_t q) {
    if (q < 2) throw std::invalid_argument("cubic_unit_orbits: modulus must be >= 2");
    ResidueSet set = cubic_residues(q);
    ClassPartition part = plus_minus_classes(set);

    // Union-find over residues of C under multiplication by every unit cube.
    std::vector<int64_t> parent(static_cast<std::size_t>(q), -1);
    for (int64_t r : set.residues) parent[static_cast<std::size_t>(r)] = r;
    auto find = [&](int64_t v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    auto unite = [&](int64_t a, int64_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };

    std::vector<int64_t> gens = unit_cubes(q);
    for (int64_t r : set.residues)
        for (int64_t g : gens) unite(r, mod_mul(r, g, q));

    // Group classes by the orbit root of their representative.
    std::vector<std::pair<int64_t, std::size_t>> by_root;
    by_root.reserve(part.classes.size());
    for (std::size_t i = 0; i < part.classes.size(); ++i)
        by_root.emplace_back(find(part.classes[i].rep), i);
    std::sort(by_root.begin(), by_root.end());
    for (std::size_t i = 0; i < by_root.size();) {
        std::size_t j = i;
        std::vector<std::size_t> orbit;
        while (j < by_root.size() && by_root[j].first == by_root[i].first)
            orbit.push_back(by_root[j++].second);
        std::sort(orbit.begin(), orbit.end());
        part.orbits.push_back(std::move(orbit));
        i = j;
    }
    return part;
}

bool ResidueStructureTable::structural_member(int64_t t, int64_t l) const {
    if (t != 0) return lower.contains(t);
    if (top_row_uses_unit_set) return top_unit.contains_with_zero(l);
    return l == 0;
}

bool ResidueStructureTable::enumerated_member(int64_t t, int64_t l) const {
    return enumerated.contains_with_zero(t + l * block);
}

bool ResidueStructureTable::consistent() const {
    for (int64_t t = 0; t < block; ++t)
        for (int64_t l = 0; l < block_count; ++l)
            if (structural_member(t, l) != enumerated_member(t, l)) return false;
    return true;
}

ResidueStructureTable residue_structure(int64_t p, int m) {
    if (!is_prime(p)) throw std::invalid_argument("residue_structure: p must be prime");
    if (m < 2) throw std::invalid_argument("residue_structure: exponent parameter must be >= 2");

    ResidueStructureTable table;
    if (p != 3) {
        int64_t block = 1;
        for (int i = 0; i < m - 1; ++i) block *= p;
        table.modulus = block * p;
        table.block = block;
        table.block_count = p;
        table.lower = cubic_residues(block);
        table.top_unit = cubic_residues(p);
        table.top_row_uses_unit_set = ((m - 1) % 3 == 0);
    } else {
        int64_t block = 1;
        for (int i = 0; i < 3 * (m - 1); ++i) block *= 3;
        table.modulus = block * 27;
        table.block = block;
        table.block_count = 27;
        table.lower = cubic_residues(block);
        table.top_unit = cubic_residues(27);
        table.top_row_uses_unit_set = true;
    }
    table.enumerated = cubic_residues(table.modulus);
    return table;
}

int64_t crt_compose(int64_t q1, int64_t q2, int64_t r1, int64_t r2) {
    if (q1 < 1 || q2 < 1) throw std::invalid_argument("crt_compose: moduli must be positive");
    if (std::gcd(q1, q2) != 1)
        throw std::invalid_argument("crt_compose: moduli must be coprime");
    if (r1 < 0 || r1 >= q1 || r2 < 0 || r2 >= q2)
        throw std::invalid_argument("crt_compose: residues out of range");
    int64_t q = q1 * q2;
    if (q1 == 1) return r2;
    if (q2 == 1) return r1;
    // z = r1 * q2 * (q2^-1 mod q1) + r2 * q1 * (q1^-1 mod q2)
    int64_t inv2 = mod_inverse(q2 % q1, q1);
    int64_t inv1 = mod_inverse(q1 % q2, q2);
    int64_t z = mod_mul(mod_mul(r1, q2 % q, q), inv2, q) +
                mod_mul(mod_mul(r2, q1 % q, q), inv1, q);
    return z % q;
}

}  // namespace witnesslab::arith
