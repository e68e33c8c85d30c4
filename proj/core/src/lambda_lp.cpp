#include "witnesslab/lambda_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "witnesslab/cosine_table.hpp"

namespace witnesslab::lp {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-12;
constexpr double kBindingTol = 1e-8;

double pow_int(double x, int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i) v *= x;
    return v;
}

/// Dense LU with partial pivoting; used to re-derive the optimal basis
/// solution and the dual multipliers from the original data, removing the
/// drift accumulated by tableau updates.
class LuFactors {
  public:
    explicit LuFactors(std::vector<double> a, std::size_t n) : a_(std::move(a)), n_(n), perm_(n) {
        for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
        for (std::size_t col = 0; col < n_; ++col) {
            std::size_t piv = col;
            double best = std::abs(at(col, col));
            for (std::size_t r = col + 1; r < n_; ++r) {
                double v = std::abs(at(r, col));
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (best < 1e-14) {
                singular_ = true;
                return;
            }
            if (piv != col) {
                std::swap(perm_[piv], perm_[col]);
                for (std::size_t j = 0; j < n_; ++j) std::swap(at(piv, j), at(col, j));
            }
            for (std::size_t r = col + 1; r < n_; ++r) {
                double f = at(r, col) / at(col, col);
                at(r, col) = f;
                for (std::size_t j = col + 1; j < n_; ++j) at(r, j) -= f * at(col, j);
            }
        }
    }

    bool singular() const { return singular_; }

    /// Solves B x = rhs.
    std::vector<double> solve(const std::vector<double>& rhs) const {
        std::vector<double> x(n_);
        for (std::size_t i = 0; i < n_; ++i) x[i] = rhs[perm_[i]];
        for (std::size_t i = 1; i < n_; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= at(i, j) * x[j];
        for (std::size_t i = n_; i-- > 0;) {
            for (std::size_t j = i + 1; j < n_; ++j) x[i] -= at(i, j) * x[j];
            x[i] /= at(i, i);
        }
        return x;
    }

    /// Solves B^T y = rhs.
    std::vector<double> solve_transpose(const std::vector<double>& rhs) const {
        std::vector<double> z = rhs;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < i; ++j) z[i] -= at(j, i) * z[j];
            z[i] /= at(i, i);
        }
        for (std::size_t i = n_; i-- > 0;)
            for (std::size_t j = i + 1; j < n_; ++j) z[i] -= at(j, i) * z[j];
        std::vector<double> y(n_);
        for (std::size_t i = 0; i < n_; ++i) y[perm_[i]] = z[i];
        return y;
    }

  private:
    double& at(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    double at(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
    std::vector<double> a_;
    std::size_t n_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

}  // namespace

struct SimplexAccess {
    static const std::vector<double>& half_rows(const LpProblem& p) { return p.half_rows_; }
    static std::size_t stride(const LpProblem& p) { return p.stride_; }
};

LpProblem::LpProblem(int64_t q) : q_(q) {
    if (q < 2) throw std::invalid_argument("LpProblem: modulus must be >= 2 (lambda(1) = 1 by convention)");
    arith::ResidueSet set = arith::cubic_residues(q);
    classes_ = arith::plus_minus_classes(set).classes;
    stride_ = classes_.size() + 1;

    std::size_t half = static_cast<std::size_t>(q_ / 2) + 1;
    half_rows_.assign(half * stride_, 0.0);
    for (std::size_t y = 0; y < half; ++y) half_rows_[y * stride_] = 1.0;

    CosineTable table(q_);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        double mult = static_cast<double>(classes_[c].members());
        int64_t step = classes_[c].rep;
        int64_t idx = 0;
        for (std::size_t y = 0; y < half; ++y) {
            half_rows_[y * stride_ + 1 + c] = mult * table[idx];
            idx += step;
            if (idx >= q_) idx -= q_;
        }
    }
}

std::vector<double> LpProblem::row(int64_t y) const {
    if (y < 0 || y >= q_) throw std::invalid_argument("LpProblem::row: y out of range");
    int64_t folded = std::min(y, q_ - y);
    auto begin = half_rows_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(folded) * stride_);
    return std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(stride_));
}

witness::WitnessFunction LpSolution::to_witness(const LpProblem& problem) const {
    std::vector<witness::ClassCoefficient> coeffs;
    coeffs.reserve(problem.classes().size());
    for (std::size_t c = 0; c < problem.classes().size(); ++c)
        coeffs.push_back({problem.classes()[c].rep, coefficients[c]});
    return witness::WitnessFunction(problem.q(), lambda, std::move(coeffs),
                                    witness::Construction::Optimal);
}

LpProblem build_lp(int64_t q) { return LpProblem(q); }

/// The normalization row b0 = 1 - sum(mult_c x_c) is substituted away, which
/// turns the program into  max sum(mult_c x_c)  s.t.
/// sum((mult_c - T_c(y)) x_c) <= 1 for y = 1..q/2, x free.  The slack basis is
/// then feasible (the constant witness), so the artificial phase is vacuous.
LpSolution solve_lp(const LpProblem& problem) {
    const auto& classes = problem.classes();
    const std::size_t k = classes.size();
    const std::size_t m = static_cast<std::size_t>(problem.q() / 2);
    const std::size_t n = 2 * k + m;  // split free vars + slacks
    const auto& half = SimplexAccess::half_rows(problem);
    const std::size_t stride = SimplexAccess::stride(problem);

    // Original data: G[i][c] = mult_c - T_c(y_i), y_i = i+1; cost on u_c is
    // -mult_c, on v_c +mult_c (minimization of -sum mult x).
    std::vector<double> g(m * k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < k; ++c)
            g[i * k + c] = static_cast<double>(classes[c].members()) - half[(i + 1) * stride + 1 + c];

    const std::size_t width = n + 1;
    std::vector<double> tab((m + 1) * width, 0.0);
    auto at = [&](std::size_t r, std::size_t col) -> double& { return tab[r * width + col]; };

    for (std::size_t c = 0; c < k; ++c) {
        at(0, c) = -static_cast<double>(classes[c].members());
        at(0, k + c) = static_cast<double>(classes[c].members());
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < k; ++c) {
            at(i + 1, c) = g[i * k + c];
            at(i + 1, k + c) = -g[i * k + c];
        }
        at(i + 1, 2 * k + i) = 1.0;
        at(i + 1, n) = 1.0;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = 2 * k + i;

    LpSolution solution;
    const long max_iterations = 20L * static_cast<long>(m + n) + 2000;
    const int degenerate_threshold = 1000;
    int degenerate_run = 0;
    bool bland_mode = false;
    std::vector<char> dead(n, 0);  // columns whose reduced cost drifted negative
                                   // but that admit no pivot; retried after any pivot

    while (true) {
        if (solution.iterations >= max_iterations) {
            solution.status = SolveStatus::IterationLimit;
            break;
        }
        // entering column
        std::size_t enter = n;
        if (bland_mode) {
            for (std::size_t j = 0; j < n; ++j)
                if (!dead[j] && at(0, j) < -kReducedCostTol) {
                    enter = j;
                    break;
                }
        } else {
            double best = -kReducedCostTol;
            for (std::size_t j = 0; j < n; ++j)
                if (!dead[j] && at(0, j) < best) {
                    best = at(0, j);
                    enter = j;
                }
        }
        if (enter == n) {
            solution.status = SolveStatus::Optimal;
            break;
        }
        // ratio test: RHS clamped at zero (drift can leave noise-negative
        // entries), pivots below a relative threshold rejected, near-ties
        // resolved toward the largest pivot entry for stability (smallest
        // basic index while in anti-cycling mode)
        double column_max = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            column_max = std::max(column_max, std::abs(at(i + 1, enter)));
        const double admissible = std::max(1e-9, 1e-10 * column_max);
        std::size_t leave = m + 1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double a = at(i + 1, enter);
            if (a <= admissible) continue;
            double ratio = std::max(at(i + 1, n), 0.0) / a;
            if (leave == m + 1 || ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                leave = i;
            } else if (ratio <= best_ratio + 1e-12) {
                bool better = bland_mode ? basis[i] < basis[leave]
                                         : std::abs(a) > std::abs(at(leave + 1, enter));
                if (better) {
                    best_ratio = std::min(best_ratio, ratio);
                    leave = i;
                }
            }
        }
        if (leave == m + 1) {
            // the objective is bounded for this problem family, so a column
            // without an admissible pivot is drift noise, not a real ray
            dead[enter] = 1;
            continue;
        }
        if (best_ratio < kPivotTol) {
            if (++degenerate_run > degenerate_threshold) bland_mode = true;
        } else {
            degenerate_run = 0;
        }
        std::fill(dead.begin(), dead.end(), 0);
        // pivot
        std::size_t prow = leave + 1;
        double pivot = at(prow, enter);
        for (std::size_t j = 0; j <= n; ++j) at(prow, j) /= pivot;
        at(prow, enter) = 1.0;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == prow) continue;
            double f = at(r, enter);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n; ++j) at(r, j) -= f * at(prow, j);
            at(r, enter) = 0.0;
        }
        for (std::size_t i = 0; i < m; ++i)
            if (at(i + 1, n) < 0.0 && at(i + 1, n) > -1e-11) at(i + 1, n) = 0.0;
        basis[leave] = enter;
        ++solution.iterations;
    }

    if (solution.status != SolveStatus::Optimal) return solution;

    // Values straight from the tableau first.
    std::vector<double> z(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) z[basis[i]] = at(i + 1, n);
    std::vector<double> row_multipliers(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) row_multipliers[i] = at(0, 2 * k + i);  // = u_y >= 0

    // Re-derive the basic solution and duals from the original data. Only
    // adopted when the residuals against the basis matrix are tiny; a
    // degenerate optimum can leave B nearly singular, in which case the
    // backward-stable solve still reports itself through a large residual.
    {
        std::vector<double> bmat(m * m);
        std::vector<double> cost_b(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t col = basis[i];
            for (std::size_t r = 0; r < m; ++r) {
                double v;
                if (col < k) v = g[r * k + col];
                else if (col < 2 * k) v = -g[r * k + (col - k)];
                else v = (r == col - 2 * k) ? 1.0 : 0.0;
                bmat[r * m + i] = v;
            }
            if (col < k) cost_b[i] = -static_cast<double>(classes[col].members());
            else if (col < 2 * k) cost_b[i] = static_cast<double>(classes[col - k].members());
            else cost_b[i] = 0.0;
        }
        LuFactors lu(bmat, m);
        if (!lu.singular()) {
            std::vector<double> xb = lu.solve(std::vector<double>(m, 1.0));
            std::vector<double> y = lu.solve_transpose(cost_b);
            double residual = 0.0;
            for (std::size_t r = 0; r < m; ++r) {
                double primal = -1.0;
                for (std::size_t i = 0; i < m; ++i) primal += bmat[r * m + i] * xb[i];
                residual = std::max(residual, std::abs(primal));
            }
            for (std::size_t i = 0; i < m; ++i) {
                double dual = -cost_b[i];
                for (std::size_t r = 0; r < m; ++r) dual += bmat[r * m + i] * y[r];
                residual = std::max(residual, std::abs(dual));
            }
            if (std::isfinite(residual) && residual <= 1e-7) {
                for (std::size_t j = 0; j < n; ++j) z[j] = 0.0;
                for (std::size_t i = 0; i < m; ++i) z[basis[i]] = xb[i];
                for (std::size_t i = 0; i < m; ++i) row_multipliers[i] = -y[i];
            }
        }
    }

    solution.coefficients.resize(k);
    double weighted = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        solution.coefficients[c] = z[c] - z[k + c];
        weighted += static_cast<double>(classes[c].members()) * solution.coefficients[c];
    }
    solution.lambda = 1.0 - weighted;

    // Dual certificate mapped back to the full constraint list: index 0 is
    // the multiplier on the normalization row (equals lambda at zero gap),
    // index y shares the merged weight between y and q-y.
    double dual_sum = 0.0;
    for (double u : row_multipliers) dual_sum += std::max(0.0, u);
    solution.dual.assign(static_cast<std::size_t>(problem.q()), 0.0);
    solution.dual[0] = 1.0 - dual_sum;
    for (std::size_t i = 0; i < m; ++i) {
        int64_t y = static_cast<int64_t>(i) + 1;
        double u = std::max(0.0, row_multipliers[i]);
        int64_t mirror = problem.q() - y;
        if (mirror == y) {
            solution.dual[static_cast<std::size_t>(y)] = u;
        } else {
            solution.dual[static_cast<std::size_t>(y)] = u / 2.0;
            solution.dual[static_cast<std::size_t>(mirror)] = u / 2.0;
        }
    }
    solution.duality_gap = std::abs(solution.lambda - solution.dual[0]);

    std::vector<double> values = solution.to_witness(problem).evaluate_all();
    double min_value = values[0];
    for (int64_t y = 0; y < problem.q(); ++y) {
        double v = values[static_cast<std::size_t>(y)];
        if (v < min_value) min_value = v;
        if (y > 0 && v <= kBindingTol) solution.binding_ys.push_back(y);
    }
    solution.max_violation = std::max(0.0, -min_value);
    if (solution.max_violation > 1e-7 || solution.duality_gap > 1e-6 ||
        !std::isfinite(solution.lambda))
        solution.status = SolveStatus::NumericBreakdown;
    return solution;
}

TrigProfile trig_profile(int64_t q) {
    if (q < 2) throw std::invalid_argument("trig_profile: modulus must be >= 2");
    arith::ResidueSet set = arith::cubic_residues(q);
    arith::ClassPartition part = arith::plus_minus_classes(set);

    TrigProfile profile;
    profile.q = q;
    profile.values.assign(static_cast<std::size_t>(q), 0.0);
    CosineTable table(q);
    for (const auto& cls : part.classes) {
        double mult = static_cast<double>(cls.members());
        int64_t step = cls.rep;
        int64_t idx = 0;
        for (int64_t y = 0; y < q; ++y) {
            profile.values[static_cast<std::size_t>(y)] += mult * table[idx];
            idx += step;
            if (idx >= q) idx -= q;
        }
    }
    profile.min_value = std::numeric_limits<double>::infinity();
    for (int64_t y = 1; y < q; ++y) {
        double v = profile.values[static_cast<std::size_t>(y)];
        if (v < profile.min_value) {
            profile.min_value = v;
            profile.argmin = y;
        }
    }
    return profile;
}

bool single_class_applicable(int64_t q) {
    if (q < 2) return false;
    if (arith::is_prime(q)) return true;  // C is the group of unit cubes acting on itself
    return arith::cubic_unit_orbits(q).single_orbit();
}

double lambda_single_class(int64_t q) {
    if (!single_class_applicable(q))
        throw SolverError("lambda_single_class: unit-cube action is not transitive; use the LP");
    TrigProfile profile = trig_profile(q);
    double size = static_cast<double>(arith::cubic_residues(q).size());
    return -profile.min_value / (size - profile.min_value);
}

double lambda_prime_power(int64_t p, int m) {
    if (!arith::is_prime(p)) throw std::invalid_argument("lambda_prime_power: p must be prime");
    if (m < 1) throw std::invalid_argument("lambda_prime_power: exponent must be >= 1");
    int e = (m + 2) / 3;
    if (p == 3) return pow_int(lambda_single_class(27), e);
    return pow_int(lambda_single_class(p), e);
}

double lambda(int64_t q) {
    if (q < 1) throw std::invalid_argument("lambda: modulus must be positive");
    if (q == 1) return 1.0;
    if (single_class_applicable(q)) return lambda_single_class(q);
    LpSolution solution = solve_lp(LpProblem(q));
    if (solution.status != SolveStatus::Optimal)
        throw SolverError("lambda: LP did not reach optimality");
    return solution.lambda;
}

double epsilon_constant() {
    double denom = 2.0 + std::cos(std::numbers::pi / 13.0) + std::sin(3.0 * std::numbers::pi / 26.0);
    return -std::log(1.0 - 2.0 / denom) / (3.0 * std::log(13.0));
}

std::string epsilon_formula() {
    return "-log(1 - 2/(2 + cos(pi/13) + sin(3*pi/26))) / (3*log(13))";
}

GaussFloorCheck gauss_min_bound(int64_t s) {
    if (!arith::is_prime(s) || s % 3 != 1)
        throw std::invalid_argument("gauss_min_bound: s must be a prime = 1 mod 3");
    TrigProfile profile = trig_profile(s);
    GaussFloorCheck check;
    check.min_sum = 3.0 * profile.min_value;  // each cube is hit by three j
    check.bound = -1.0 - 2.0 * std::sqrt(static_cast<double>(s));
    check.ok = check.min_sum >= check.bound - 1e-9;
    return check;
}

}  // namespace witnesslab::lp
