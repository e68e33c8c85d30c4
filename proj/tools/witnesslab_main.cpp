// Command-line frontend: lambda / delta / witness / verify / table / epsilon.
//
// Exit codes: 0 success (all claims pass), 1 claim failure, 2 solver or
// runtime failure, 3 usage error, 4 inapplicable construction.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "witnesslab/extremal.hpp"
#include "witnesslab/lambda_lp.hpp"
#include "witnesslab/serialization.hpp"
#include "witnesslab/verification.hpp"
#include "witnesslab/witness.hpp"

namespace wl = witnesslab;
using wl::serialization::format_sig9;

namespace {

std::uint64_t default_budget() {
    if (const char* env = std::getenv("WITNESSLAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring malformed WITNESSLAB_BUDGET\n";
    }
    return wl::extremal::kDefaultNodeBudget;
}

bool recursion_method_applies(const wl::arith::Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.prime == 3 && pp.exponent % 3 != 0) return false;
    return true;
}

double lambda_by_recursion(const wl::arith::Factorization& f) {
    double value = 1.0;
    for (const auto& pp : f.factors) value *= wl::lp::lambda_prime_power(pp.prime, pp.exponent);
    return value;
}

int run_lambda(std::int64_t q, const std::string& method, bool as_json) {
    wl::arith::Factorization f = wl::arith::factorize(q);
    std::vector<std::pair<std::string, double>> values;  // method -> lambda

    auto compute = [&](const std::string& name) -> double {
        if (q == 1) return 1.0;
        if (name == "lp") return wl::lp::solve_lp(wl::lp::LpProblem(q)).lambda;
        if (name == "closed") {
            if (!wl::lp::single_class_applicable(q))
                throw CLI::ValidationError("lambda", "closed method needs a transitive orbit structure");
            return wl::lp::lambda_single_class(q);
        }
        if (!recursion_method_applies(f))
            throw CLI::ValidationError(
                "lambda", "recursion method needs prime powers with 3-exponent divisible by 3");
        return lambda_by_recursion(f);
    };

    std::string chosen = method;
    if (method == "auto") {
        if (q == 1) chosen = "convention";
        else if (wl::lp::single_class_applicable(q)) chosen = "closed";
        else chosen = "lp";
        values.emplace_back(chosen, q == 1 ? 1.0 : compute(chosen));
        // cross-check the other applicable routes at desk scale
        if (q > 1 && q <= 400 && chosen != "lp") values.emplace_back("lp", compute("lp"));
        if (q > 1 && recursion_method_applies(f) && chosen != "recursion")
            values.emplace_back("recursion", compute("recursion"));
    } else {
        values.emplace_back(method, compute(method));
    }

    double primary = values.front().second;
    for (const auto& [name, v] : values)
        if (std::abs(v - primary) > 1e-6) {
            std::cerr << "error: method disagreement: " << values.front().first << " = "
                      << format_sig9(primary) << " vs " << name << " = " << format_sig9(v) << "\n";
            return 2;
        }

    if (as_json) {
        std::ostringstream methods;
        methods << "{";
        for (std::size_t i = 0; i < values.size(); ++i)
            methods << (i ? "," : "") << "\"" << values[i].first << "\":" << format_sig9(values[i].second);
        methods << "}";
        std::cout << "{\"q\":" << q << ",\"lambda\":" << format_sig9(primary) << ",\"method\":\""
                  << values.front().first << "\",\"methods\":" << methods.str() << "}\n";
    } else {
        std::cout << "lambda(" << q << ") = " << format_sig9(primary)
                  << "  (method: " << values.front().first << ")\n";
        for (std::size_t i = 1; i < values.size(); ++i)
            std::cout << "  cross-check " << values[i].first << ": " << format_sig9(values[i].second)
                      << "\n";
    }
    return 0;
}

int run_delta(std::int64_t q, bool greedy, std::uint64_t budget, std::optional<std::uint64_t> seed,
              bool as_json) {
    wl::extremal::DeltaResult result =
        greedy ? (seed ? wl::extremal::delta_greedy(q, *seed) : wl::extremal::delta_greedy(q))
               : wl::extremal::delta_exact(q, budget);
    if (as_json) {
        std::cout << wl::serialization::delta_to_json(result) << "\n";
        return 0;
    }
    std::cout << "delta(" << q << ") = " << result.size << "  exact=" << (result.exact ? "true" : "false")
              << "  nodes=" << result.nodes_explored << "  set={";
    for (std::size_t i = 0; i < result.witness_set.size(); ++i)
        std::cout << (i ? "," : "") << result.witness_set[i];
    std::cout << "}\n";
    return 0;
}

int run_witness(std::int64_t q, const std::string& construction, std::optional<std::int64_t> eval_y,
                const std::string& export_path) {
    wl::witness::WitnessFunction w;
    if (construction == "family") w = wl::witness::build_family(q);
    else if (construction == "gauss") w = wl::witness::build_gauss(q);
    else if (construction == "trivial") w = wl::witness::build_trivial(q);
    else w = wl::witness::build_optimal(q);

    if (!export_path.empty()) {
        std::ofstream out(export_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output path: " + export_path);
        out << wl::serialization::witness_to_json(w, 2) << "\n";
    }
    if (eval_y) {
        std::cout << format_sig9(w.evaluate(*eval_y)) << "\n";
    } else if (export_path.empty()) {
        std::cout << wl::serialization::witness_to_json(w, 2) << "\n";
    }
    return 0;
}

int run_verify(std::int64_t qmax, const std::string& report_path, std::uint64_t budget) {
    auto start = std::chrono::steady_clock::now();
    auto last = start;
    wl::verification::ClaimSink sink = [&](const wl::verification::Claim& c) {
        auto now = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(now - last).count();
        last = now;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "claim " << c.id << ": " << c.description
                  << "  (measured " << format_sig9(c.measured) << " vs bound "
                  << format_sig9(c.bound) << " + tol " << format_sig9(c.tolerance) << ")  ["
                  << format_sig9(secs) << " s]\n";
        std::cout.flush();
    };
    wl::verification::VerificationReport report = wl::verification::run_acceptance(qmax, budget, sink);

    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "verify: " << report.passed_count() << "/" << report.claims.size()
              << " claims passed up to qmax=" << qmax << "  [" << format_sig9(total) << " s]\n";

    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open report path: " + report_path);
        out << wl::verification::report_to_json(report, 2) << "\n";
    }
    return report.pass() ? 0 : 1;
}

int run_table(std::int64_t qmax, const std::string& out_path, const std::string& format,
              std::uint64_t budget) {
    std::vector<wl::serialization::TableRow> rows = wl::verification::build_table(qmax, budget);
    std::ostringstream body;
    if (format == "csv") wl::serialization::write_table_csv(rows, body);
    else body << wl::serialization::table_to_json(rows, 2) << "\n";

    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output path: " + out_path);
        out << body.str();
    }
    return 0;
}

int run_epsilon(bool check) {
    double eps = wl::lp::epsilon_constant();
    char full[64];
    std::snprintf(full, sizeof(full), "%.17g", eps);
    std::cout << "epsilon = " << format_sig9(eps) << "\n";
    std::cout << "full precision: " << full << "\n";
    std::cout << "formula: " << wl::lp::epsilon_formula() << "\n";
    if (!check) return 0;

    bool ok = true;
    auto report = [&](const std::string& what, double lhs, double rhs, double tol) {
        double diff = std::abs(lhs - rhs);
        bool pass = diff <= tol;
        ok = ok && pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << what << ": |" << format_sig9(lhs) << " - "
                  << format_sig9(rhs) << "| = " << format_sig9(diff) << "\n";
    };
    report("13^(-3*eps) = lambda(13)", std::pow(13.0, -3.0 * eps), wl::lp::lambda(13), 1e-9);
    report("family(2197).b0 = 2197^(-eps)", wl::witness::build_family(2197).b0(),
           std::pow(2197.0, -eps), 1e-9);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubic modular witness functions over Z_q: lambda, delta, and the reproducibility checks"};
    app.require_subcommand(1);

    std::uint64_t budget = default_budget();

    auto* cmd_lambda = app.add_subcommand("lambda", "optimal constant term lambda(C0^(q))");
    std::int64_t lambda_q = 0;
    std::string lambda_method = "auto";
    bool lambda_json = false;
    cmd_lambda->add_option("q", lambda_q, "modulus")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000}));
    cmd_lambda->add_option("--method", lambda_method, "computation route")
        ->check(CLI::IsMember({"auto", "lp", "closed", "recursion"}));
    cmd_lambda->add_flag("--json", lambda_json, "machine-readable output");

    auto* cmd_delta = app.add_subcommand("delta", "largest avoider set in Z_q");
    std::int64_t delta_q = 0;
    bool delta_exact_flag = false, delta_greedy_flag = false, delta_json = false;
    std::optional<std::uint64_t> delta_seed;
    cmd_delta->add_option("q", delta_q, "modulus")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000}));
    auto* opt_exact = cmd_delta->add_flag("--exact", delta_exact_flag, "branch-and-bound search (default)");
    cmd_delta->add_flag("--greedy", delta_greedy_flag, "greedy lower bound only")->excludes(opt_exact);
    cmd_delta->add_option("--budget", budget, "search node budget");
    cmd_delta->add_option("--seed", delta_seed, "shuffle seed for the greedy order");
    cmd_delta->add_flag("--json", delta_json, "machine-readable output");

    auto* cmd_witness = app.add_subcommand("witness", "construct and export witness functions");
    std::int64_t witness_q = 0;
    std::string witness_construction = "family";
    std::optional<std::int64_t> witness_eval;
    std::string witness_export;
    cmd_witness->add_option("q", witness_q, "modulus")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000}));
    cmd_witness->add_option("--construction", witness_construction, "which construction")
        ->check(CLI::IsMember({"family", "gauss", "trivial", "optimal"}));
    cmd_witness->add_option("--eval", witness_eval, "print g(y) instead of the JSON");
    cmd_witness->add_option("--export", witness_export, "write the witness JSON to a file");

    auto* cmd_verify = app.add_subcommand("verify", "run the reproducibility claims up to qmax");
    std::int64_t verify_qmax = 0;
    std::string verify_report;
    cmd_verify->add_option("qmax", verify_qmax, "sweep cap")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
    cmd_verify->add_option("--report", verify_report, "write the JSON report here");
    cmd_verify->add_option("--budget", budget, "search node budget");

    auto* cmd_table = app.add_subcommand("table", "per-q summary table (CSV or JSON)");
    std::int64_t table_qmax = 60;
    std::string table_out;
    std::string table_format = "csv";
    cmd_table->add_option("--qmax", table_qmax, "largest modulus")->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
    cmd_table->add_option("--out", table_out, "output file (default stdout)");
    cmd_table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));

    auto* cmd_epsilon = app.add_subcommand("epsilon", "the decay exponent of the family bound");
    bool epsilon_check = false;
    cmd_epsilon->add_flag("--check", epsilon_check, "verify the defining identities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (cmd_lambda->parsed()) return run_lambda(lambda_q, lambda_method, lambda_json);
        if (cmd_delta->parsed())
            return run_delta(delta_q, delta_greedy_flag, budget, delta_seed, delta_json);
        if (cmd_witness->parsed())
            return run_witness(witness_q, witness_construction, witness_eval, witness_export);
        if (cmd_verify->parsed()) return run_verify(verify_qmax, verify_report, budget);
        if (cmd_table->parsed()) return run_table(table_qmax, table_out, table_format, budget);
        if (cmd_epsilon->parsed()) return run_epsilon(epsilon_check);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const wl::witness::InapplicableConstruction& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}
