#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "witnesslab/extremal.hpp"
#include "witnesslab/serialization.hpp"

namespace witnesslab::verification {

struct Claim {
    std::string id;
    std::string description;
    double measured = 0.0;   // worst residual or margin violation across the sweep
    double bound = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::int64_t qmax = 0;
    std::vector<Claim> claims;

    bool pass() const;
    std::size_t passed_count() const;
};

using ClaimSink = std::function<void(const Claim&)>;

/// Runs every reproducibility claim whose scale fits under qmax (each sweep
/// is additionally capped at its own stated limit). Claims stream through the
/// sink as they complete.
VerificationReport run_acceptance(std::int64_t qmax,
                                  std::uint64_t node_budget = extremal::kDefaultNodeBudget,
                                  const ClaimSink& sink = {});

/// Independent oracle for the avoider search: plain backtracking enumeration
/// of every avoider set containing 0, no pruning beyond heredity.
extremal::DeltaResult delta_brute_force(std::int64_t q);

std::vector<serialization::TableRow> build_table(std::int64_t qmax, std::uint64_t node_budget);

std::string report_to_json(const VerificationReport& report, int indent = -1);

}  // namespace witnesslab::verification
