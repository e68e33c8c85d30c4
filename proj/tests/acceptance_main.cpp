// End-to-end reproducibility suite: one pass/fail line per claim, full scale.
//
// Exit code 0 iff every claim passes. WITNESSLAB_BUDGET overrides the search
// node budget.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "witnesslab/extremal.hpp"
#include "witnesslab/serialization.hpp"
#include "witnesslab/verification.hpp"

int main() {
    std::uint64_t budget = witnesslab::extremal::kDefaultNodeBudget;
    if (const char* env = std::getenv("WITNESSLAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) budget = v;
    }

    auto start = std::chrono::steady_clock::now();
    auto last = start;
    auto sink = [&](const witnesslab::verification::Claim& c) {
        auto now = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(now - last).count();
        last = now;
        std::printf("[%s] claim %-3s %s  (measured %s, tol %s)  [%.2f s]\n",
                    c.pass ? "PASS" : "FAIL", c.id.c_str(), c.description.c_str(),
                    witnesslab::serialization::format_sig9(c.measured).c_str(),
                    witnesslab::serialization::format_sig9(c.tolerance).c_str(), secs);
        std::fflush(stdout);
    };

    witnesslab::verification::VerificationReport report =
        witnesslab::verification::run_acceptance(20000, budget, sink);

    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("acceptance: %zu/%zu claims passed  [%.1f s]\n", report.passed_count(),
                report.claims.size(), total);
    return report.pass() ? 0 : 1;
}
