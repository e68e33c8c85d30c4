#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "witnesslab/arith.hpp"
#include "witnesslab/witness.hpp"

namespace witnesslab::lp {

using arith::int64_t;

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The linear program behind lambda(C0^(q)): variables (b0, one coefficient
/// per +/- class), rows g(y) >= 0 for every y, the y = 0 row pinned to 1,
/// objective min b0. Row y equals row q-y exactly (cosine symmetry).
class LpProblem {
  public:
    explicit LpProblem(int64_t q);

    int64_t q() const { return q_; }
    const std::vector<arith::PlusMinusClass>& classes() const { return classes_; }
    std::size_t variable_count() const { return classes_.size() + 1; }
    std::size_t constraint_count() const { return static_cast<std::size_t>(q_); }

    /// Row y of the constraint matrix: (1, T_c(y) for each class), where
    /// T_c(y) is the cosine sum over the members of class c.
    std::vector<double> row(int64_t y) const;

  private:
    friend struct SimplexAccess;
    int64_t q_ = 2;
    std::vector<arith::PlusMinusClass> classes_;
    std::vector<double> half_rows_;  // rows y = 0..q/2, deduplicated storage
    std::size_t stride_ = 0;
};

enum class SolveStatus { Optimal, IterationLimit, NumericBreakdown };

struct LpSolution {
    SolveStatus status = SolveStatus::Optimal;
    double lambda = 1.0;
    std::vector<double> coefficients;  // per class, same order as problem.classes()
    std::vector<int64_t> binding_ys;   // y with g(y) <= binding tolerance
    double max_violation = 0.0;        // -min g(y), clamped at 0
    /// Nonnegative weights on the rows certifying optimality: dual[0] pairs
    /// with the normalization row and equals the optimum at zero gap;
    /// dual[y] weights the constraint at y.
    std::vector<double> dual;
    double duality_gap = 0.0;
    long iterations = 0;

    witness::WitnessFunction to_witness(const LpProblem& problem) const;
};

LpProblem build_lp(int64_t q);

/// Dense simplex with a deterministic pivot rule and anti-cycling fallback.
/// The normalization row is eliminated by substitution, which leaves a
/// feasible slack basis, so no artificial phase is required.
LpSolution solve_lp(const LpProblem& problem);

/// S(y) = sum over C^(q) of e(r y / q), real by symmetry, together with its
/// minimum over y >= 1.
struct TrigProfile {
    int64_t q = 0;
    std::vector<double> values;
    double min_value = 0.0;
    int64_t argmin = 0;
};

TrigProfile trig_profile(int64_t q);

/// lambda(q) = -m / (|C| - m) with m = min of the trig profile; valid only
/// when the unit cubes act transitively on C (all primes, and q = 27).
/// Throws SolverError when the orbit structure is not transitive.
double lambda_single_class(int64_t q);

/// True iff lambda_single_class applies to q.
bool single_class_applicable(int64_t q);

/// lambda(C0^(p^m)) = lambda(C0^(p))^floor((m+2)/3) for p != 3. For p = 3 the
/// value lambda(27)^ceil(m/3) is the constant term of the 3-adic family
/// construction; for exponents not divisible by 3 it can exceed the LP
/// optimum (m = 1: lambda(3) = 1/3).
double lambda_prime_power(int64_t p, int m);

/// lambda(C0^(q)) by the cheapest valid route: 1 for q = 1, the averaged
/// closed form when the orbit action is transitive, the LP otherwise.
double lambda(int64_t q);

/// The exponent in the uniform bound lambda(C0^(q)) <= q^(-epsilon):
/// epsilon = -log(1 - 2/(2 + cos(pi/13) + sin(3*pi/26))) / (3 log 13).
double epsilon_constant();

std::string epsilon_formula();

struct GaussFloorCheck {
    double min_sum = 0.0;   // min over y >= 1 of sum_j e(j^3 y / s)
    double bound = 0.0;     // -1 - 2*sqrt(s)
    bool ok = false;
};

/// Checks the character-sum floor for the full cubic exponential sum modulo a
/// prime s = 1 mod 3 (the j-indexed sum is 3x the sum over C^(s)).
GaussFloorCheck gauss_min_bound(int64_t s);

}  // namespace witnesslab::lp
