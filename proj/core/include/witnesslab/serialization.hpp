#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "witnesslab/extremal.hpp"
#include "witnesslab/lambda_lp.hpp"
#include "witnesslab/witness.hpp"

namespace witnesslab::serialization {

/// Witness JSON with fixed field order
///   { "q": int, "b0": float, "coeffs": [{"rep": int, "value": float}...],
///     "construction": string }
/// Doubles round-trip losslessly. indent < 0 emits the compact form.
std::string witness_to_json(const witness::WitnessFunction& w, int indent = -1);

witness::WitnessFunction witness_from_json(const std::string& text);

/// Witness JSON extended with the optimality certificate:
///   "certificate": { "binding_ys": [int], "dual": [float], "duality_gap": float }
std::string lp_solution_to_json(const lp::LpSolution& solution, const lp::LpProblem& problem,
                                int indent = -1);

/// { "q": int, "size": int, "set": [int], "exact": bool, "nodes": int }
std::string delta_to_json(const extremal::DeltaResult& result, int indent = -1);

struct TableRow {
    std::int64_t q = 0;
    double lambda_lp = 0.0;
    double family_b0 = 0.0;
    double q_pow_neg_eps = 0.0;
    int delta = 0;
    bool delta_exact = false;
    bool bound_ok = false;
};

inline constexpr const char* kTableCsvHeader =
    "q,lambda_lp,family_b0,q_pow_neg_eps,delta,delta_exact,bound_ok";

void write_table_csv(const std::vector<TableRow>& rows, std::ostream& out);
std::string table_to_json(const std::vector<TableRow>& rows, int indent = -1);

/// Fixed 9-significant-digit rendering for human-readable report lines.
std::string format_sig9(double v);

}  // namespace witnesslab::serialization
