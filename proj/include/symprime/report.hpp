#pragma once

// Text and JSON renderings shared by the command-line tool and the tests.
// CSV rows for the survey table have the header "n,p_n,S,ratio,model" with
// ratio and model printed to 4 decimals, rounded half-to-even.

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "symprime/diagnostics.hpp"
#include "symprime/gcdsets.hpp"
#include "symprime/graph.hpp"
#include "symprime/symmetry.hpp"

namespace symprime {

/// num/den to 4 decimals, half-to-even, from exact integer arithmetic.
inline std::string fixed4_ratio(u64 num, u64 den) {
    if (den == 0) throw std::invalid_argument("fixed4_ratio: zero denominator");
    u128 scaled = u128(num) * 10000;
    u128 q = scaled / den, r = scaled % den;
    if (2 * r > den || (2 * r == den && (q & 1))) ++q;
    u64 whole = u64(q / 10000), frac = u64(q % 10000);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%llu.%04llu", static_cast<unsigned long long>(whole),
                  static_cast<unsigned long long>(frac));
    return buf;
}

/// A double to 4 decimals. printf rounds the exact binary value, which gives
/// half-to-even on exact ties.
inline std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline constexpr const char* survey_csv_header = "n,p_n,S,ratio,model";

inline std::string survey_csv_row(const SurveyRow& row) {
    return std::to_string(row.n) + "," + std::to_string(row.p_n) + "," + std::to_string(row.s) + "," +
           fixed4_ratio(row.s, row.n) + "," + fixed4(row.model);
}

inline nlohmann::ordered_json to_json(const SurveyRow& row) {
    return {{"n", row.n},
            {"p_n", row.p_n},
            {"S", row.s},
            {"ratio", fixed4_ratio(row.s, row.n)},
            {"model", fixed4(row.model)}};
}

inline nlohmann::ordered_json to_json(const PartnerCertificate& c) {
    return {{"p", c.p}, {"d", c.d}, {"q", c.q}, {"direction", to_string(c.direction)}};
}

inline nlohmann::ordered_json to_json(const ComponentSummary& s) {
    return {{"representative", s.representative},
            {"size", s.size},
            {"min", s.min},
            {"max", s.max},
            {"is_boundary_touching", s.is_boundary_touching}};
}

/// Adjacency CSV: header "p,q", then one line per edge with p < q.
inline void write_adjacency_csv(std::ostream& out, const SymGraph& graph) {
    out << "p,q\n";
    graph.for_each_edge([&](u64 p, u64 q) { out << p << ',' << q << '\n'; });
}

inline nlohmann::ordered_json component_report(const SymGraph& graph, bool include_isolated = true) {
    auto comps = components(graph, include_isolated);
    auto outside = least_prime_outside_component_of_3(graph);
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& s : comps.summaries) list.push_back(to_json(s));
    nlohmann::ordered_json report = {{"limit", graph.limit()},
                                     {"convention", graph.convention().name()},
                                     {"vertex_count", graph.vertex_count()},
                                     {"edge_count", graph.edge_count()},
                                     {"include_isolated", include_isolated},
                                     {"component_count", comps.summaries.size()}};
    report["least_symmetric_prime_outside_component_of_3"] =
        outside.prime ? nlohmann::ordered_json(*outside.prime) : nlohmann::ordered_json(nullptr);
    report["answer_depends_on_limit"] = outside.limit_dependent;
    report["components"] = std::move(list);
    return report;
}

inline nlohmann::ordered_json to_json(const ProofProfile& prof) {
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [omega, count] : prof.omega_histogram) hist[std::to_string(omega)] = count;
    return {{"x", prof.x},
            {"L", prof.L},
            {"E", prof.E},
            {"smooth_threshold", prof.smooth_threshold},
            {"prime_count", prof.prime_count},
            {"s1_count", prof.s1_count},
            {"s2_count", prof.s2_count},
            {"omega_excess_count", prof.omega_excess},
            {"mean_big_omega", prof.mean_big_omega},
            {"omega_histogram", hist}};
}

inline nlohmann::ordered_json to_json(const AdmissibilityReport& rep) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
        nlohmann::ordered_json j = {{"prime", c.prime}};
        if (c.avoiding_residue) j["avoiding_residue"] = *c.avoiding_residue;
        if (c.vanishing_form) j["vanishing_form"] = *c.vanishing_form;
        if (!c.covering_form.empty()) j["covering_form"] = c.covering_form;
        checks.push_back(std::move(j));
    }
    return {{"admissible", rep.admissible}, {"checks", checks}, {"note", rep.skipped_primes_note}};
}

inline nlohmann::ordered_json to_json(const MaynardTaoReport& rep) {
    return {{"passed", rep.passed},
            {"nonpositive_g", rep.nonpositive_g},
            {"zero_determinants", rep.zero_determinants},
            {"admissibility", to_json(rep.admissibility)}};
}

inline nlohmann::ordered_json to_json(const BftbReport& rep) {
    return {{"passed", rep.passed},
            {"duplicates", rep.duplicates},
            {"g_positive", rep.g_positive},
            {"not_coprime_to_g", rep.not_coprime_to_g},
            {"admissibility", to_json(rep.admissibility)}};
}

} // namespace symprime
