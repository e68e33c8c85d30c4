#include "witnesslab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "json.hpp"
#include "witnesslab/lambda_lp.hpp"

namespace witnesslab::verification {

namespace {

using witness::FamilyBuilder;
using witness::WitnessFunction;

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t p = 2; p <= n; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        for (std::int64_t m = p * p; m <= n; m += p) composite[static_cast<std::size_t>(m)] = true;
    }
    return primes;
}

bool is_squarefree(std::int64_t q) {
    for (const auto& pp : arith::factorize(q).factors)
        if (pp.exponent > 1) return false;
    return true;
}

double lp_lambda(std::int64_t q) {
    lp::LpSolution solution = lp::solve_lp(lp::LpProblem(q));
    if (solution.status != lp::SolveStatus::Optimal)
        throw lp::SolverError("verification: LP failed on q = " + std::to_string(q));
    return solution.lambda;
}

struct Runner {
    std::int64_t qmax;
    std::uint64_t budget;
    const ClaimSink& sink;
    VerificationReport report;
    FamilyBuilder family;

    template <typename Fn>
    void run(std::string id, std::string description, double tolerance, Fn&& body) {
        Claim claim{std::move(id), std::move(description), 0.0, 0.0, tolerance, false};
        try {
            claim.measured = body();
            claim.pass = claim.measured <= claim.bound + claim.tolerance;
        } catch (const std::exception& e) {
            claim.description += std::string(" [error: ") + e.what() + "]";
            claim.measured = std::numeric_limits<double>::quiet_NaN();
            claim.pass = false;
        }
        if (sink) sink(claim);
        report.claims.push_back(std::move(claim));
    }

    std::int64_t cap(std::int64_t stated) const { return std::min(stated, qmax); }
};

}  // namespace

bool VerificationReport::pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

std::size_t VerificationReport::passed_count() const {
    return static_cast<std::size_t>(
        std::count_if(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; }));
}

extremal::DeltaResult delta_brute_force(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("delta_brute_force: modulus must be positive");
    if (q == 1) return extremal::DeltaResult{1, 1, {0}, true, 0};

    arith::ResidueSet set = arith::cubic_residues(q);
    std::vector<std::int64_t> candidates;
    for (std::int64_t v = 1; v < q; ++v)
        if (!set.contains(v)) candidates.push_back(v);

    std::vector<std::int64_t> chosen{0};
    std::vector<std::int64_t> best{0};
    std::uint64_t nodes = 0;

    auto compatible = [&](std::int64_t v) {
        for (std::int64_t u : chosen) {
            std::int64_t d = (v - u) % q;
            if (d < 0) d += q;
            if (set.contains(d)) return false;
        }
        return true;
    };
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        if (chosen.size() > best.size()) best = chosen;
        for (std::size_t i = start; i < candidates.size(); ++i) {
            if (!compatible(candidates[i])) continue;
            ++nodes;
            chosen.push_back(candidates[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);

    std::sort(best.begin(), best.end());
    return extremal::DeltaResult{q, static_cast<int>(best.size()), best, true, nodes};
}

VerificationReport run_acceptance(std::int64_t qmax, std::uint64_t node_budget,
                                  const ClaimSink& sink) {
    if (qmax < 2) throw std::invalid_argument("run_acceptance: qmax must be >= 2");
    Runner r{qmax, node_budget, sink, {}, {}};
    r.report.qmax = qmax;

    const double eps = lp::epsilon_constant();
    const std::vector<std::int64_t> primes = primes_up_to(std::min<std::int64_t>(10000, qmax));

    // 1: LP optimum at 13 against the closed form.
    if (qmax >= 13)
        r.run("1", "lambda(13) from the LP equals 1 - 2/(2 + cos(pi/13) + sin(3*pi/26))", 1e-6,
              [&] {
                  double closed = 1.0 - 2.0 / (2.0 + std::cos(std::numbers::pi / 13.0) +
                                               std::sin(3.0 * std::numbers::pi / 26.0));
                  return std::abs(lp_lambda(13) - closed);
              });

    // 2: the exponent constant and its extremal prime power.
    r.run("2a", "epsilon = 0.119540 within 1e-5", 1e-5,
          [&] { return std::abs(eps - 0.119540); });
    if (qmax >= 2197)
        r.run("2b", "family witness at q = 2197 attains q^-epsilon exactly", 1e-9, [&] {
            return std::abs(r.family.constant_term(2197) - std::pow(2197.0, -eps));
        });

    // 3: lambda(p) = 1/p for primes p = 2 mod 3 and p = 3.
    r.run("3", "LP lambda(p) = 1/p for primes p = 2 mod 3 and p = 3, p <= 500", 1e-9, [&] {
        double worst = 0.0;
        for (std::int64_t p : primes) {
            if (p > r.cap(500)) break;
            if (p % 3 != 2 && p != 3) continue;
            worst = std::max(worst, std::abs(lp_lambda(p) - 1.0 / static_cast<double>(p)));
        }
        return worst;
    });

    // 4: the prime-power recursion, LP vs closed form, plus the 3-adic chain.
    r.run("4a", "LP lambda(p^m) = lambda(p)^floor((m+2)/3) for p in {2,5,7,13}, p^m <= 2500",
          1e-6, [&] {
              double worst = 0.0;
              for (std::int64_t p : {2, 5, 7, 13}) {
                  std::int64_t pm = p;
                  for (int m = 1; pm <= r.cap(2500); ++m, pm *= p)
                      worst = std::max(worst,
                                       std::abs(lp_lambda(pm) - lp::lambda_prime_power(p, m)));
              }
              return worst;
          });
    if (qmax >= 27)
        r.run("4b", "family constant on 3^(3m) equals LP lambda(27)^m for 3m <= 9", 1e-6, [&] {
            double lp27 = lp_lambda(27);
            double worst = 0.0;
            double power = 1.0;
            std::int64_t q = 1;
            for (int m = 1; m <= 3; ++m) {
                q *= 27;
                power *= lp27;
                if (q > qmax) break;
                worst = std::max(worst, std::abs(r.family.constant_term(q) - power));
            }
            return worst;
        });

    // 5: multiplicativity across coprime factors.
    if (qmax >= 35)
        r.run("5", "LP lambda is multiplicative: 35 = 5*7 and 91 = 7*13", 1e-6, [&] {
            double worst = std::abs(lp_lambda(35) - lp_lambda(5) * lp_lambda(7));
            if (qmax >= 91)
                worst = std::max(worst, std::abs(lp_lambda(91) - lp_lambda(7) * lp_lambda(13)));
            return worst;
        });

    // 6: squarefree product witness against 2^m / sqrt(q).
    r.run("6", "squarefree witness constant term <= 2^m/sqrt(q) for q <= 10^4", 1e-12, [&] {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::int64_t q = 1; q <= r.cap(10000); ++q) {
            arith::Factorization f = arith::factorize(q);
            bool squarefree = true;
            int m = 0;
            for (const auto& pp : f.factors) {
                squarefree = squarefree && pp.exponent == 1;
                if (pp.prime % 3 == 1) ++m;
            }
            if (!squarefree) continue;
            double b0 = witness::squarefree_constant_term(q);
            double bound = std::pow(2.0, m) / std::sqrt(static_cast<double>(q));
            worst = std::max(worst, b0 - bound);
        }
        return worst;
    });

    // 7: the family stays below q^-epsilon everywhere.
    r.run("7", "family constant term <= q^-eps * (1 + 1e-9) for q <= 3000", 1e-9, [&] {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::int64_t q = 1; q <= r.cap(3000); ++q)
            worst = std::max(worst, r.family.constant_term(q) /
                                            std::pow(static_cast<double>(q), -eps) -
                                        1.0);
        return worst;
    });

    // 8: every constructed witness is nonnegative; the repair is exact.
    {
        double worst_dip = -std::numeric_limits<double>::infinity();
        double worst_repaired = 0.0;
        double worst_other = 0.0;  // normalization / support failures counted here
        bool ran = false;
        auto inspect = [&](const WitnessFunction& w) {
            ran = true;
            witness::WitnessCheck check = witness::verify_witness(w, 1e-9);
            worst_dip = std::max(worst_dip, -check.min_value);
            worst_other = std::max(worst_other, check.normalization_residual);
            if (!check.support_violations.empty()) worst_other = 1.0;
            if (check.min_value < 0.0) {
                WitnessFunction repaired = witness::repair_nonnegative(w);
                std::vector<double> values = repaired.evaluate_all();
                worst_repaired =
                    std::max(worst_repaired, -*std::min_element(values.begin(), values.end()));
            }
        };
        r.run("8a", "every constructed witness for q <= 3000 has min >= -1e-9", 1e-9, [&] {
            for (std::int64_t q = 1; q <= r.cap(3000); ++q) {
                inspect(r.family.family(q));
                if (is_squarefree(q) && q > 1) inspect(witness::build_squarefree(q));
            }
            for (std::int64_t p : primes) {
                if (p > r.cap(3000)) break;
                if (p % 3 == 1) inspect(witness::build_gauss(p));
                else inspect(witness::build_trivial(p));
            }
            return std::max(worst_dip, worst_other);
        });
        r.run("8b", "certification repair yields min >= 0 exactly", 0.0,
              [&] { return ran ? worst_repaired : throw std::logic_error("claim 8a did not run"); });
    }

    // 9: random divisor pairs agree at common rational points.
    if (r.cap(2000) >= 4)
        r.run("9", "self-compatibility on 200 random divisor pairs q' | q <= 2000", 1e-9, [&] {
            std::mt19937_64 rng(0x5eed5eedULL);
            const std::int64_t limit = r.cap(2000);
            double worst = 0.0;
            int pairs = 0;
            while (pairs < 200) {
                std::int64_t q = 2 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(limit - 1));
                std::vector<std::int64_t> divisors;
                for (std::int64_t d = 2; d < q; ++d)
                    if (q % d == 0) divisors.push_back(d);
                if (divisors.empty()) continue;
                std::int64_t qprime = divisors[rng() % divisors.size()];
                WitnessFunction small_w = r.family.family(qprime);
                WitnessFunction big_w = r.family.family(q);
                worst = std::max(worst, witness::self_compatibility_residual(small_w, big_w));
                ++pairs;
            }
            return worst;
        });

    // 10: the search agrees with plain enumeration; known small values.
    r.run("10a", "delta_exact matches backtracking enumeration for q <= 60", 0.0, [&] {
        double worst = 0.0;
        for (std::int64_t q = 1; q <= r.cap(60); ++q) {
            extremal::DeltaResult fast = extremal::delta_exact(q, r.budget);
            extremal::DeltaResult brute = delta_brute_force(q);
            if (!fast.exact) return std::numeric_limits<double>::infinity();
            worst = std::max(worst, std::abs(static_cast<double>(fast.size - brute.size)));
        }
        return worst;
    });
    if (qmax >= 7)
        r.run("10b", "delta(7) = 3 and delta(13) = 4", 0.0, [&] {
            double worst = std::abs(static_cast<double>(extremal::delta_exact(7, r.budget).size - 3));
            if (qmax >= 13)
                worst = std::max(worst, std::abs(static_cast<double>(
                                            extremal::delta_exact(13, r.budget).size - 4)));
            return worst;
        });
    r.run("10c", "delta(p) = 1 for primes p = 2 mod 3 (and p = 3), p <= 500", 0.0, [&] {
        double worst = 0.0;
        for (std::int64_t p : primes) {
            if (p > r.cap(500)) break;
            if (p % 3 != 2 && p != 3) continue;
            worst = std::max(worst,
                             std::abs(static_cast<double>(extremal::delta_exact(p, r.budget).size - 1)));
        }
        return worst;
    });

    // 11: the bridge inequality delta <= b0 q with both witnesses.
    r.run("11", "delta_exact(q) <= b0*q for q <= 200, under LP and family constants", 1e-9, [&] {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::int64_t q = 1; q <= r.cap(200); ++q) {
            extremal::DeltaResult d = extremal::delta_exact(q, r.budget);
            if (!d.exact) return std::numeric_limits<double>::infinity();
            double size = static_cast<double>(d.size);
            double qd = static_cast<double>(q);
            double lp_b0 = q == 1 ? 1.0 : lp_lambda(q);
            worst = std::max(worst, size - lp_b0 * qd);
            worst = std::max(worst, size - r.family.constant_term(q) * qd);
        }
        return worst;
    });

    // 12: Gauss-sum floor and the prime lambda decay bounds.
    if (qmax >= 7)
        r.run("12a", "min_y sum_j e(j^3 y/s) >= -1 - 2*sqrt(s) for primes s = 1 mod 3, s <= 10^4",
              1e-9, [&] {
                  double worst = -std::numeric_limits<double>::infinity();
                  for (std::int64_t s : primes) {
                      if (s > r.cap(10000)) break;
                      if (s % 3 != 1) continue;
                      lp::GaussFloorCheck check = lp::gauss_min_bound(s);
                      worst = std::max(worst, check.bound - check.min_sum);
                  }
                  return worst;
              });
    if (qmax >= 7) {
        const double unset = -std::numeric_limits<double>::infinity();
        double worst_decay = unset;
        double worst_dominance = unset;
        // an empty sweep holds vacuously; report 0 rather than -inf
        auto margin = [&](double worst) { return std::isfinite(worst) ? worst : 0.0; };
        r.run("12b", "LP lambda(s) <= s^-0.36 for primes s = 1 mod 3, 31 <= s <= 1000", 1e-9, [&] {
            for (std::int64_t s : primes) {
                if (s > r.cap(1000)) break;
                if (s % 3 != 1) continue;
                double lam = lp_lambda(s);
                worst_dominance = std::max(worst_dominance, lam - witness::build_gauss(s).b0());
                if (s >= 31)
                    worst_decay = std::max(worst_decay, lam - std::pow(static_cast<double>(s), -0.36));
            }
            return margin(worst_decay);
        });
        r.run("12c", "LP lambda(s) never exceeds the gauss constant term, s <= 1000", 1e-12,
              [&] { return margin(worst_dominance); });
    }

    return r.report;
}

std::vector<serialization::TableRow> build_table(std::int64_t qmax, std::uint64_t node_budget) {
    if (qmax < 2) throw std::invalid_argument("build_table: qmax must be >= 2");
    const double eps = lp::epsilon_constant();
    FamilyBuilder family;
    std::vector<serialization::TableRow> rows;
    for (std::int64_t q = 2; q <= qmax; ++q) {
        serialization::TableRow row;
        row.q = q;
        row.lambda_lp = lp::lambda(q);
        row.family_b0 = family.constant_term(q);
        row.q_pow_neg_eps = std::pow(static_cast<double>(q), -eps);
        extremal::DeltaResult d = extremal::delta_exact(q, node_budget);
        row.delta = d.size;
        row.delta_exact = d.exact;
        double size = static_cast<double>(d.size);
        row.bound_ok = size <= row.lambda_lp * static_cast<double>(q) + 1e-9 &&
                       size <= row.family_b0 * static_cast<double>(q) + 1e-9;
        rows.push_back(row);
    }
    return rows;
}

std::string report_to_json(const VerificationReport& report, int indent) {
    nlohmann::ordered_json j;
    j["qmax"] = report.qmax;
    nlohmann::ordered_json claims = nlohmann::ordered_json::array();
    for (const auto& c : report.claims) {
        nlohmann::ordered_json entry;
        entry["id"] = c.id;
        entry["description"] = c.description;
        if (std::isnan(c.measured)) entry["measured"] = nullptr;
        else entry["measured"] = c.measured;
        entry["bound"] = c.bound;
        entry["tolerance"] = c.tolerance;
        entry["pass"] = c.pass;
        claims.push_back(std::move(entry));
    }
    j["claims"] = std::move(claims);
    j["summary"] = {{"total", report.claims.size()},
                    {"passed", report.passed_count()},
                    {"failed", report.claims.size() - report.passed_count()}};
    j["pass"] = report.pass();
    return j.dump(indent);
}

}  // namespace witnesslab::verification
