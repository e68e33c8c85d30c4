#include "witnesslab/serialization.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace witnesslab::serialization {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json witness_object(const witness::WitnessFunction& w) {
    ordered_json j;
    j["q"] = w.q();
    j["b0"] = w.b0();
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : w.coefficients()) {
        ordered_json entry;
        entry["rep"] = c.rep;
        entry["value"] = c.value;
        coeffs.push_back(std::move(entry));
    }
    j["coeffs"] = std::move(coeffs);
    j["construction"] = witness::construction_name(w.construction());
    return j;
}

}  // namespace

std::string witness_to_json(const witness::WitnessFunction& w, int indent) {
    return witness_object(w).dump(indent);
}

witness::WitnessFunction witness_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    std::vector<witness::ClassCoefficient> coeffs;
    for (const auto& entry : j.at("coeffs"))
        coeffs.push_back({entry.at("rep").get<std::int64_t>(), entry.at("value").get<double>()});
    return witness::WitnessFunction(j.at("q").get<std::int64_t>(), j.at("b0").get<double>(),
                                    std::move(coeffs),
                                    witness::construction_from_name(j.at("construction")));
}

std::string lp_solution_to_json(const lp::LpSolution& solution, const lp::LpProblem& problem,
                                int indent) {
    ordered_json j = witness_object(solution.to_witness(problem));
    ordered_json cert;
    cert["binding_ys"] = solution.binding_ys;
    cert["dual"] = solution.dual;
    cert["duality_gap"] = solution.duality_gap;
    j["certificate"] = std::move(cert);
    return j.dump(indent);
}

std::string delta_to_json(const extremal::DeltaResult& result, int indent) {
    ordered_json j;
    j["q"] = result.q;
    j["size"] = result.size;
    j["set"] = result.witness_set;
    j["exact"] = result.exact;
    j["nodes"] = result.nodes_explored;
    return j.dump(indent);
}

void write_table_csv(const std::vector<TableRow>& rows, std::ostream& out) {
    out << kTableCsvHeader << "\n";
    for (const auto& r : rows) {
        out << r.q << ',' << format_sig9(r.lambda_lp) << ',' << format_sig9(r.family_b0) << ','
            << format_sig9(r.q_pow_neg_eps) << ',' << r.delta << ','
            << (r.delta_exact ? "true" : "false") << ',' << (r.bound_ok ? "true" : "false")
            << "\n";
    }
}

std::string table_to_json(const std::vector<TableRow>& rows, int indent) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["q"] = r.q;
        j["lambda_lp"] = r.lambda_lp;
        j["family_b0"] = r.family_b0;
        j["q_pow_neg_eps"] = r.q_pow_neg_eps;
        j["delta"] = r.delta;
        j["delta_exact"] = r.delta_exact;
        j["bound_ok"] = r.bound_ok;
        arr.push_back(std::move(j));
    }
    return arr.dump(indent);
}

std::string format_sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace witnesslab::serialization
