#include "witnesslab/witness.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>

#include "witnesslab/cosine_table.hpp"
#include "witnesslab/lambda_lp.hpp"

namespace witnesslab::witness {

namespace {

double cos_frac(int64_t q, int64_t k) {
    k %= q;
    if (k < 0) k += q;
    if (k > q - k) k = q - k;  // same fold as CosineTable, bit-identical values
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q));
}

double gauss_constant(int64_t s) {
    double rs = std::sqrt(static_cast<double>(s));
    return (2.0 * rs + 1.0) / (2.0 * rs + static_cast<double>(s));
}

/// Equal spectrum value (1 - b0)/|C| on every class of C^(q).
WitnessFunction equal_coefficient_witness(int64_t q, double b0, Construction tag) {
    arith::ResidueSet set = arith::cubic_residues(q);
    arith::ClassPartition part = arith::plus_minus_classes(set);
    double value = (1.0 - b0) / static_cast<double>(set.size());
    std::vector<ClassCoefficient> coeffs;
    coeffs.reserve(part.classes.size());
    for (const auto& cls : part.classes) coeffs.push_back({cls.rep, value});
    return WitnessFunction(q, b0, std::move(coeffs), tag);
}

/// Folds a per-residue spectrum accumulator into class storage.
std::vector<ClassCoefficient> fold_classes(int64_t q, const std::vector<double>& acc,
                                           const std::vector<char>& present) {
    std::vector<ClassCoefficient> coeffs;
    for (int64_t rep = 1; rep <= q - rep; ++rep) {
        std::size_t i = static_cast<std::size_t>(rep);
        std::size_t j = static_cast<std::size_t>(q - rep);
        if (!present[i] && !present[j]) continue;
        assert(present[i] && present[j] && acc[i] == acc[j]);
        coeffs.push_back({rep, acc[i]});
    }
    return coeffs;
}

/// Shared block-lift core: spreads the lower spectrum over the lifts
/// t + l*q_low and, when `base` is given, adds b0_lower * base on the
/// frequencies j*q_low (the t = 0 column).
WitnessFunction lift_blocks(const WitnessFunction& lower, const WitnessFunction* base,
                            int64_t block_count, Construction tag) {
    int64_t q_low = lower.q();
    int64_t q_new = q_low * block_count;
    std::vector<double> acc(static_cast<std::size_t>(q_new), 0.0);
    std::vector<char> present(static_cast<std::size_t>(q_new), 0);

    for (const auto& c : lower.coefficients()) {
        double v = c.value / static_cast<double>(block_count);
        int64_t mirror = q_low - c.rep;
        for (int64_t t : {c.rep, mirror}) {
            for (int64_t l = 0; l < block_count; ++l) {
                std::size_t z = static_cast<std::size_t>(t + l * q_low);
                acc[z] += v;
                present[z] = 1;
            }
            if (mirror == c.rep) break;
        }
    }

    double b0 = lower.b0();
    if (base) {
        for (const auto& c : base->coefficients()) {
            double v = lower.b0() * c.value;
            int64_t mirror = base->q() - c.rep;
            for (int64_t j : {c.rep, mirror}) {
                std::size_t z = static_cast<std::size_t>(j * q_low);
                acc[z] += v;
                present[z] = 1;
                if (mirror == c.rep) break;
            }
        }
        b0 = lower.b0() * base->b0();
    }
    return WitnessFunction(q_new, b0, fold_classes(q_new, acc, present), tag);
}

std::vector<std::pair<int64_t, double>> support_with_zero(const WitnessFunction& w) {
    std::vector<std::pair<int64_t, double>> out;
    out.reserve(2 * w.coefficients().size() + 1);
    out.emplace_back(0, w.b0());
    for (const auto& c : w.coefficients()) {
        out.emplace_back(c.rep, c.value);
        if (c.rep != w.q() - c.rep) out.emplace_back(w.q() - c.rep, c.value);
    }
    return out;
}

int64_t int_pow(int64_t base, int exp) {
    int64_t v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

}  // namespace

std::string construction_name(Construction c) {
    switch (c) {
        case Construction::Trivial: return "trivial";
        case Construction::Gauss: return "gauss";
        case Construction::Optimal: return "optimal";
        case Construction::Lift: return "lift";
        case Construction::Descent: return "descent";
        case Construction::Product: return "product";
        case Construction::Family: return "family";
    }
    return "unknown";
}

Construction construction_from_name(const std::string& name) {
    if (name == "trivial") return Construction::Trivial;
    if (name == "gauss") return Construction::Gauss;
    if (name == "optimal") return Construction::Optimal;
    if (name == "lift") return Construction::Lift;
    if (name == "descent") return Construction::Descent;
    if (name == "product") return Construction::Product;
    if (name == "family") return Construction::Family;
    throw std::invalid_argument("unknown construction: " + name);
}

WitnessFunction::WitnessFunction(int64_t q, double b0, std::vector<ClassCoefficient> coeffs,
                                 Construction construction)
    : q_(q), b0_(b0), coeffs_(std::move(coeffs)), construction_(construction) {
    if (q < 1) throw std::invalid_argument("witness: modulus must be positive");
    std::sort(coeffs_.begin(), coeffs_.end(),
              [](const ClassCoefficient& a, const ClassCoefficient& b) { return a.rep < b.rep; });
    for (const auto& c : coeffs_)
        if (c.rep < 1 || c.rep > q_ - c.rep)
            throw std::invalid_argument("witness: class representative out of canonical range");
}

double WitnessFunction::coefficient_at(int64_t r) const {
    r %= q_;
    if (r < 0) r += q_;
    int64_t rep = std::min(r, q_ - r);
    auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), rep,
                               [](const ClassCoefficient& c, int64_t v) { return c.rep < v; });
    if (it != coeffs_.end() && it->rep == rep) return it->value;
    return 0.0;
}

double WitnessFunction::evaluate(int64_t y) const {
    if (y < 0 || y >= q_) throw std::invalid_argument("witness evaluate: argument out of range");
    double sum = b0_;
    for (const auto& c : coeffs_) {
        double factor = (2 * c.rep == q_) ? 1.0 : 2.0;
        sum += factor * c.value * cos_frac(q_, c.rep * y % q_);
    }
    return sum;
}

std::vector<double> WitnessFunction::evaluate_all() const {
    std::vector<double> values(static_cast<std::size_t>(q_), b0_);
    if (q_ == 1) return values;
    CosineTable table(q_);
    for (const auto& c : coeffs_) {
        double scaled = ((2 * c.rep == q_) ? 1.0 : 2.0) * c.value;
        int64_t step = c.rep;
        int64_t idx = 0;
        for (int64_t y = 0; y < q_; ++y) {
            values[static_cast<std::size_t>(y)] += scaled * table[idx];
            idx += step;
            if (idx >= q_) idx -= q_;
        }
    }
    return values;
}

WitnessFunction WitnessFunction::with_construction(Construction c) const {
    return WitnessFunction(q_, b0_, coeffs_, c);
}

WitnessFunction identity_witness() { return WitnessFunction(1, 1.0, {}, Construction::Trivial); }

WitnessFunction build_trivial(int64_t p) {
    if (!arith::is_prime(p) || (p % 3 != 2 && p != 3))
        throw InapplicableConstruction("trivial witness requires a prime p = 2 mod 3, or p = 3");
    return equal_coefficient_witness(p, 1.0 / static_cast<double>(p), Construction::Trivial);
}

WitnessFunction build_gauss(int64_t s) {
    if (!arith::is_prime(s) || s % 3 != 1)
        throw InapplicableConstruction("gauss witness requires a prime s = 1 mod 3");
    return equal_coefficient_witness(s, gauss_constant(s), Construction::Gauss);
}

WitnessFunction build_optimal(int64_t q) {
    if (q < 1) throw std::invalid_argument("build_optimal: modulus must be positive");
    if (q == 1) return identity_witness().with_construction(Construction::Optimal);

    WitnessFunction w;
    if (lp::single_class_applicable(q)) {
        w = equal_coefficient_witness(q, lp::lambda_single_class(q), Construction::Optimal);
    } else {
        lp::LpProblem problem(q);
        lp::LpSolution solution = lp::solve_lp(problem);
        if (solution.status != lp::SolveStatus::Optimal)
            throw lp::SolverError("build_optimal: LP did not reach optimality");
        w = solution.to_witness(problem);
    }
    WitnessCheck check = verify_witness(w, 1e-9);
    if (!check.pass) throw lp::SolverError("build_optimal: constructed witness failed verification");
    return w;
}

WitnessFunction lift_prime_power(const WitnessFunction& lower, const WitnessFunction& base,
                                 int64_t p, int m) {
    if (p == 3) throw std::invalid_argument("lift_prime_power: p = 3 uses the 27-block construction");
    if (!arith::is_prime(p)) throw std::invalid_argument("lift_prime_power: p must be prime");
    if (m < 2) throw std::invalid_argument("lift_prime_power: exponent must be >= 2");
    if (lower.q() != int_pow(p, m - 1) || base.q() != p)
        throw std::invalid_argument("lift_prime_power: mismatched moduli");
    bool top_uses_base = ((m - 1) % 3 == 0);
    return lift_blocks(lower, top_uses_base ? &base : nullptr, p, Construction::Lift);
}

WitnessFunction build_power_of_three(int alpha) {
    if (alpha < 1) throw std::invalid_argument("build_power_of_three: exponent must be >= 1");
    int m = (alpha + 2) / 3;
    WitnessFunction base27 = build_optimal(27);
    WitnessFunction top = base27;
    for (int k = 2; k <= m; ++k) top = lift_blocks(top, &base27, 27, Construction::Lift);

    int deficit = 3 * m - alpha;
    if (deficit == 0) return top;
    return descend(top, deficit == 1 ? 3 : 9);
}

WitnessFunction descend(const WitnessFunction& w, int64_t factor) {
    if (factor < 1 || w.q() % factor != 0)
        throw std::invalid_argument("descend: factor must divide the modulus");
    int64_t q_new = w.q() / factor;
    if (q_new == 1) return WitnessFunction(1, w.evaluate(0), {}, Construction::Descent);

    std::vector<double> acc(static_cast<std::size_t>(q_new), 0.0);
    std::vector<char> present(static_cast<std::size_t>(q_new), 0);
    for (const auto& c : w.coefficients()) {
        int64_t mirror = w.q() - c.rep;
        for (int64_t member : {c.rep, mirror}) {
            std::size_t k = static_cast<std::size_t>(member % q_new);
            acc[k] += c.value;
            present[k] = 1;
            if (mirror == c.rep) break;
        }
    }
    double b0 = w.b0() + (present[0] ? acc[0] : 0.0);
    present[0] = 0;
    return WitnessFunction(q_new, b0, fold_classes(q_new, acc, present), Construction::Descent);
}

WitnessFunction product(const WitnessFunction& w1, const WitnessFunction& w2) {
    if (w1.q() == 1) return w2;
    if (w2.q() == 1) return w1;
    int64_t q1 = w1.q(), q2 = w2.q();
    if (arith::gcd(q1, q2) != 1) throw std::invalid_argument("product: moduli must be coprime");
    int64_t q = q1 * q2;

    // z = r1*A + r2*B mod q with A = 1 mod q1, 0 mod q2 and B the other way.
    int64_t a = arith::mod_mul(q2 % q, arith::mod_inverse(q2 % q1, q1), q);
    int64_t b = arith::mod_mul(q1 % q, arith::mod_inverse(q1 % q2, q2), q);

    std::vector<double> acc(static_cast<std::size_t>(q), 0.0);
    std::vector<char> present(static_cast<std::size_t>(q), 0);
    auto s1 = support_with_zero(w1);
    auto s2 = support_with_zero(w2);
    for (const auto& [r1, v1] : s1) {
        int64_t base_term = arith::mod_mul(r1, a, q);
        for (const auto& [r2, v2] : s2) {
            if (r1 == 0 && r2 == 0) continue;
            int64_t z = (base_term + arith::mod_mul(r2, b, q)) % q;
            acc[static_cast<std::size_t>(z)] = v1 * v2;
            present[static_cast<std::size_t>(z)] = 1;
        }
    }
    return WitnessFunction(q, w1.b0() * w2.b0(), fold_classes(q, acc, present),
                           Construction::Product);
}

const WitnessFunction* FamilyBuilder::cached(int64_t modulus) const {
    for (const auto& [key, w] : cache_)
        if (key == modulus) return &w;
    return nullptr;
}

WitnessFunction FamilyBuilder::prime_power(int64_t p, int exponent) {
    int64_t modulus = int_pow(p, exponent);
    if (const WitnessFunction* hit = cached(modulus)) return *hit;

    WitnessFunction w;
    if (p == 3) {
        w = build_power_of_three(exponent);
    } else {
        WitnessFunction base = (p % 3 == 2) ? build_trivial(p) : build_optimal(p);
        w = base;
        for (int m = 2; m <= exponent; ++m) {
            int64_t mid = int_pow(p, m);
            if (const WitnessFunction* hit = cached(mid)) {
                w = *hit;
                continue;
            }
            w = lift_prime_power(w, base, p, m);
            cache_.emplace_back(mid, w);
        }
    }
    if (!cached(modulus)) cache_.emplace_back(modulus, w);
    return w;
}

WitnessFunction FamilyBuilder::family(int64_t q) {
    if (q < 1) throw std::invalid_argument("family: modulus must be positive");
    if (q == 1) return identity_witness().with_construction(Construction::Family);
    arith::Factorization f = arith::factorize(q);
    WitnessFunction w = identity_witness();
    for (const auto& pp : f.factors) w = product(w, prime_power(pp.prime, pp.exponent));
    return w.with_construction(Construction::Family);
}

double FamilyBuilder::constant_term(int64_t q) {
    if (q < 1) throw std::invalid_argument("family: modulus must be positive");
    if (q == 1) return 1.0;
    arith::Factorization f = arith::factorize(q);
    double b0 = 1.0;
    for (const auto& pp : f.factors) b0 *= prime_power(pp.prime, pp.exponent).b0();
    return b0;
}

WitnessFunction build_family(int64_t q) {
    FamilyBuilder builder;
    return builder.family(q);
}

WitnessFunction build_squarefree(int64_t q) {
    if (q < 1) throw std::invalid_argument("build_squarefree: modulus must be positive");
    if (q == 1) return identity_witness().with_construction(Construction::Product);
    arith::Factorization f = arith::factorize(q);
    for (const auto& pp : f.factors)
        if (pp.exponent != 1)
            throw InapplicableConstruction("build_squarefree: modulus must be squarefree");
    WitnessFunction w = identity_witness();
    for (const auto& pp : f.factors) {
        WitnessFunction part =
            (pp.prime % 3 == 1) ? build_gauss(pp.prime) : build_trivial(pp.prime);
        w = product(w, part);
    }
    return w.with_construction(Construction::Product);
}

double squarefree_constant_term(int64_t q) {
    if (q < 1) throw std::invalid_argument("squarefree_constant_term: modulus must be positive");
    arith::Factorization f = arith::factorize(q);
    double b0 = 1.0;
    for (const auto& pp : f.factors) {
        if (pp.exponent != 1)
            throw InapplicableConstruction("squarefree_constant_term: modulus must be squarefree");
        b0 *= (pp.prime % 3 == 1) ? gauss_constant(pp.prime)
                                  : 1.0 / static_cast<double>(pp.prime);
    }
    return b0;
}

WitnessCheck verify_witness(const WitnessFunction& w, double tol) {
    if (tol <= 0) throw std::invalid_argument("verify_witness: tolerance must be positive");
    WitnessCheck check;
    check.tolerance = tol;

    std::vector<double> values = w.evaluate_all();
    check.min_value = values[0];
    check.argmin = 0;
    for (int64_t y = 1; y < w.q(); ++y) {
        if (values[static_cast<std::size_t>(y)] < check.min_value) {
            check.min_value = values[static_cast<std::size_t>(y)];
            check.argmin = y;
        }
    }
    check.normalization_residual = std::abs(values[0] - 1.0);

    arith::ResidueSet set = arith::cubic_residues(w.q());
    for (const auto& c : w.coefficients())
        if (!set.contains(c.rep)) check.support_violations.push_back(c.rep);

    check.pass = check.min_value >= -tol && check.normalization_residual <= tol &&
                 check.support_violations.empty();
    return check;
}

WitnessFunction repair_nonnegative(const WitnessFunction& w) {
    WitnessFunction current = w;
    double escalation = 0.0;
    for (int round = 0; round < 64; ++round) {
        std::vector<double> values = current.evaluate_all();
        double min_value = *std::min_element(values.begin(), values.end());
        if (min_value >= 0.0) return current;
        // a sub-ulp dip cannot be cleared by adding its own magnitude to b0,
        // so never shift by less than a few ulps, doubling across rounds
        double ulp_floor =
            4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(current.b0()));
        double shift = std::max({-min_value, ulp_floor, escalation});
        escalation = 2.0 * shift;
        double scale = 1.0 + shift;
        std::vector<ClassCoefficient> coeffs = current.coefficients();
        for (auto& c : coeffs) c.value /= scale;
        current = WitnessFunction(current.q(), (current.b0() + shift) / scale, std::move(coeffs),
                                  current.construction());
    }
    return current;
}

double self_compatibility_residual(const WitnessFunction& small_w, const WitnessFunction& big_w) {
    if (big_w.q() % small_w.q() != 0)
        throw std::invalid_argument("self-compatibility: first modulus must divide the second");
    int64_t ratio = big_w.q() / small_w.q();
    std::vector<double> small_values = small_w.evaluate_all();
    std::vector<double> big_values = big_w.evaluate_all();
    double residual = 0.0;
    for (int64_t y = 0; y < small_w.q(); ++y)
        residual = std::max(residual,
                            std::abs(small_values[static_cast<std::size_t>(y)] -
                                     big_values[static_cast<std::size_t>(y * ratio)]));
    return residual;
}

bool check_self_compatibility(const WitnessFunction& small_w, const WitnessFunction& big_w) {
    return self_compatibility_residual(small_w, big_w) <= 1e-9;
}

}  // namespace witnesslab::witness
