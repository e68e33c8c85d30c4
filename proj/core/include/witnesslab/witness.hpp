#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "witnesslab/arith.hpp"

namespace witnesslab::witness {

using arith::int64_t;

/// Requested construction does not apply to the given modulus
/// (e.g. the bijective-cube witness for a prime p = 1 mod 3).
struct InapplicableConstruction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Construction { Trivial, Gauss, Optimal, Lift, Descent, Product, Family };

std::string construction_name(Construction c);
Construction construction_from_name(const std::string& name);

/// Coefficient attached to the +/- class {rep, q-rep}. The value is the
/// spectrum value at each member residue, so a paired class contributes
/// 2*value*cos(2*pi*rep*y/q) to the function and a self-paired one
/// (rep = q/2) contributes value*cos(pi*y).
struct ClassCoefficient {
    int64_t rep = 0;
    double value = 0.0;
};

/// Real nonnegative function on Z_q with spectrum supported on the cubes:
///   g(y) = b0 + sum over classes of value * (cosine sum over members),
/// normalized to g(0) = 1.
class WitnessFunction {
  public:
    WitnessFunction() = default;
    WitnessFunction(int64_t q, double b0, std::vector<ClassCoefficient> coeffs,
                    Construction construction);

    int64_t q() const { return q_; }
    double b0() const { return b0_; }
    const std::vector<ClassCoefficient>& coefficients() const { return coeffs_; }
    Construction construction() const { return construction_; }

    /// Spectrum value at residue r (0 if r is not in the stored support).
    double coefficient_at(int64_t r) const;

    double evaluate(int64_t y) const;
    /// g(y) for y = 0..q-1 in one pass.
    std::vector<double> evaluate_all() const;

    WitnessFunction with_construction(Construction c) const;

  private:
    int64_t q_ = 1;
    double b0_ = 1.0;
    std::vector<ClassCoefficient> coeffs_;  // sorted by rep, reps in [1, q/2]
    Construction construction_ = Construction::Trivial;
};

// ---- constructions ----------------------------------------------------------

/// g = 1 on Z_1; the identity of the direct product.
WitnessFunction identity_witness();

/// (1/p) * sum_j e(j^3 y / p) for p = 2 mod 3 or p = 3, where cubing is a
/// bijection: the indicator of 0, with constant term 1/p.
WitnessFunction build_trivial(int64_t p);

/// The Gauss-sum normalized witness for a prime s = 1 mod 3:
/// b0 = (2*sqrt(s)+1)/(2*sqrt(s)+s), equal weight on every nonzero cube.
WitnessFunction build_gauss(int64_t s);

/// Witness with minimal constant term lambda(q). Uses the averaged
/// equal-coefficient form when the unit cubes act transitively on C,
/// otherwise reconstructs from the LP optimum. Verified before returning.
WitnessFunction build_optimal(int64_t q);

/// Block lift from p^(m-1) to p^m (p != 3): spreads the lower spectrum over
/// each block of p lifts and adds the constant (or base-witness) top term,
/// depending on whether 3 divides m-1. Satisfies g(p*y) = g_lower(y).
WitnessFunction lift_prime_power(const WitnessFunction& lower, const WitnessFunction& base,
                                 int64_t p, int m);

/// The 3-adic family member modulo 3^alpha: 27-block induction on exponents
/// 3m with base build_optimal(27), and contraction by 3 or 9 for the
/// intermediate exponents. Constant term lambda(27)^ceil(alpha/3).
WitnessFunction build_power_of_three(int alpha);

/// g(y) restricted along multiplication by `factor`: the witness modulo
/// q/factor with g_new(y) = g(factor*y). Spectrum folds onto residues mod
/// q/factor; anything landing on 0 joins the constant term.
WitnessFunction descend(const WitnessFunction& w, int64_t factor);

/// Direct product across coprime moduli via CRT on the spectra;
/// constant terms multiply and self-compatibility is preserved.
WitnessFunction product(const WitnessFunction& w1, const WitnessFunction& w2);

/// The self-compatible family member modulo q: trivial / optimal towers per
/// prime power, 27-block construction for the 3-part, direct product across
/// prime powers in ascending order. b0 <= q^(-epsilon).
WitnessFunction build_family(int64_t q);

/// Gauss-and-trivial direct product for squarefree q; b0 <= 2^m / sqrt(q)
/// with m the number of prime factors that are 1 mod 3.
WitnessFunction build_squarefree(int64_t q);

/// Same constant term as build_squarefree(q) without materializing the witness.
double squarefree_constant_term(int64_t q);

/// Caches prime-power components so sweeps do not recompute towers.
class FamilyBuilder {
  public:
    WitnessFunction family(int64_t q);
    WitnessFunction prime_power(int64_t p, int exponent);
    /// b0 of family(q) without materializing the product spectrum.
    double constant_term(int64_t q);

  private:
    std::vector<std::pair<int64_t, WitnessFunction>> cache_;  // keyed by modulus
    const WitnessFunction* cached(int64_t modulus) const;
};

// ---- verification -----------------------------------------------------------

struct WitnessCheck {
    double min_value = 0.0;
    int64_t argmin = 0;
    double normalization_residual = 0.0;
    std::vector<int64_t> support_violations;  // class reps outside C^(q)
    double tolerance = 0.0;
    bool pass = false;
};

/// Nonnegativity, normalization and spectrum-support check over all of Z_q.
WitnessCheck verify_witness(const WitnessFunction& w, double tol = 1e-9);

/// Shifts b0 up by the (tiny) negative dip and renormalizes until the
/// minimum is exactly >= 0; costs at most ~|min| in b0.
WitnessFunction repair_nonnegative(const WitnessFunction& w);

/// max over y in [0, q'-1] of |g_small(y) - g_big(y * q/q')|.
double self_compatibility_residual(const WitnessFunction& small_w, const WitnessFunction& big_w);

/// True iff the two functions agree at every common rational point, to 1e-9.
/// Requires small_w.q() to divide big_w.q().
bool check_self_compatibility(const WitnessFunction& small_w, const WitnessFunction& big_w);

}  // namespace witnesslab::witness
