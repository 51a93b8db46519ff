#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tightpoly/criterion.hpp"
#include "tightpoly/escalation.hpp"
#include "tightpoly/tables.hpp"

// JSON layouts (all objects keep insertion order):
//
//   escalation result, schema "tightpoly.escalation/1":
//     {"schema", "m", "n", "bound", "max_depth", "terminal_depth" (int|null),
//      "depth_guard_hit", "levels": [{"k", "nodes": [{"a": [..], "truant": int|null}],
//      "new_universal": [[..], ..]}]}
//     A null truant means the form covers every integer in [n, bound].
//
//   criterion set:
//     {"m", "n", "cs": [..], "gamma"} plus, when provenance is requested,
//     "bound" and "provenance": [{"g", "a": [..]}].
//
//   candidate rows:
//     [{"prefix": [..], "values": [..], "range": [lo, hi] | absent, "except": [..] | absent}]

namespace tightpoly {

using json = nlohmann::ordered_json;

inline constexpr const char* escalation_schema = "tightpoly.escalation/1";

inline json to_json(const CoeffVector& a) { return json(a.values()); }

inline CoeffVector vector_from_json(const json& j) { return CoeffVector(j.get<std::vector<integer>>()); }

inline json to_json(const TruantResult& t) { return t.is_finite() ? json(t.value()) : json(nullptr); }

inline TruantResult truant_from_json(const json& j) {
    return j.is_null() ? TruantResult::above_bound() : TruantResult::finite(j.get<integer>());
}

inline json to_json(const EscalationResult& r) {
    json j;
    j["schema"] = escalation_schema;
    j["m"] = r.m;
    j["n"] = r.n;
    j["bound"] = r.bound;
    j["max_depth"] = r.max_depth;
    j["terminal_depth"] = r.terminal_depth ? json(*r.terminal_depth) : json(nullptr);
    j["depth_guard_hit"] = r.depth_guard_hit;
    json levels = json::array();
    for (const auto& lv : r.levels) {
        json jl;
        jl["k"] = lv.k;
        json nodes = json::array();
        for (const auto& node : lv.nodes) {
            json jn;
            jn["a"] = to_json(node.vector);
            jn["truant"] = to_json(node.truant);
            nodes.push_back(std::move(jn));
        }
        jl["nodes"] = std::move(nodes);
        json nu = json::array();
        for (const auto& a : lv.new_universal) nu.push_back(to_json(a));
        jl["new_universal"] = std::move(nu);
        levels.push_back(std::move(jl));
    }
    j["levels"] = std::move(levels);
    return j;
}

inline EscalationResult escalation_from_json(const json& j) {
    if (j.value("schema", std::string()) != escalation_schema)
        throw std::invalid_argument("escalation json: unsupported schema");
    EscalationResult r;
    r.m = j.at("m").get<integer>();
    r.n = j.at("n").get<integer>();
    r.bound = j.at("bound").get<integer>();
    r.max_depth = j.at("max_depth").get<integer>();
    if (!j.at("terminal_depth").is_null()) r.terminal_depth = j.at("terminal_depth").get<integer>();
    r.depth_guard_hit = j.at("depth_guard_hit").get<bool>();
    for (const auto& jl : j.at("levels")) {
        EscalationLevel lv;
        lv.k = jl.at("k").get<integer>();
        for (const auto& jn : jl.at("nodes")) {
            EscalationNode node{vector_from_json(jn.at("a")), truant_from_json(jn.at("truant")), true};
            (node.truant.is_finite() ? lv.active : lv.universal).push_back(node.vector);
            lv.nodes.push_back(std::move(node));
        }
        for (const auto& ja : jl.at("new_universal")) lv.new_universal.push_back(vector_from_json(ja));
        r.levels.push_back(std::move(lv));
    }
    return r;
}

inline json to_json(const CriterionSet& cs, bool with_provenance = false) {
    json j;
    j["m"] = cs.m;
    j["n"] = cs.n;
    j["cs"] = cs.elements;
    j["gamma"] = cs.elements.empty() ? json(nullptr) : json(cs.gamma());
    if (with_provenance) {
        j["bound"] = cs.bound;
        json prov = json::array();
        for (const auto& [g, a] : cs.provenance) prov.push_back(json{{"g", g}, {"a", to_json(a)}});
        j["provenance"] = std::move(prov);
    }
    return j;
}

inline CriterionSet criterion_from_json(const json& j) {
    CriterionSet cs;
    cs.m = j.at("m").get<integer>();
    cs.n = j.at("n").get<integer>();
    cs.elements = j.at("cs").get<std::vector<integer>>();
    cs.bound = j.value("bound", integer{0});
    if (j.contains("provenance")) {
        for (const auto& p : j.at("provenance")) cs.provenance.emplace(p.at("g").get<integer>(), vector_from_json(p.at("a")));
    }
    return cs;
}

inline json to_json(const CandidateRow& row) {
    json j;
    j["prefix"] = to_json(row.prefix);
    j["values"] = row.values;
    if (row.range) {
        j["range"] = json::array({row.range->lo, row.range->hi});
        j["except"] = row.range->except;
    }
    return j;
}

inline CandidateRow row_from_json(const json& j) {
    CandidateRow row;
    auto prefix = j.at("prefix").get<std::vector<integer>>();
    row.prefix = prefix.empty() ? CoeffVector{} : CoeffVector(prefix);
    row.values = j.value("values", std::vector<integer>{});
    if (j.contains("range")) {
        auto r = j.at("range").get<std::vector<integer>>();
        if (r.size() != 2) throw std::invalid_argument("candidate row: range must be [lo, hi]");
        row.range = CandidateRow::Range{r[0], r[1], j.value("except", std::vector<integer>{})};
    }
    if (row.values.empty() && !row.range) throw std::invalid_argument("candidate row: no admissible a_k");
    return row;
}

inline json to_json(const std::vector<CandidateRow>& rows) {
    json j = json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    return j;
}

/// Candidate (new tight universal) table for a run in the requested format.
inline std::string emit_candidates(const EscalationResult& r, Format fmt) {
    auto rows = compress(r.all_new_universal());
    switch (fmt) {
        case Format::markdown:
            return render_rows_markdown(rows, "New tight T(" + std::to_string(r.n) + ")-universal candidates, m = " +
                                                  std::to_string(r.m) + ", bound = " + std::to_string(r.bound));
        case Format::csv:
            return render_rows_csv(rows);
        case Format::json:
            return to_json(r).dump(2) + "\n";
    }
    return {};
}

inline std::string emit_criterion(const CriterionSet& cs, Format fmt, bool with_provenance = false) {
    switch (fmt) {
        case Format::json:
            return to_json(cs, with_provenance).dump() + "\n";
        case Format::csv: {
            std::string out = "m,n,cs,gamma\n" + std::to_string(cs.m) + "," + std::to_string(cs.n) + "," +
                              detail::join(cs.elements, ';') + "," + std::to_string(cs.gamma()) + "\n";
            return out;
        }
        case Format::markdown: {
            std::string out = "| m | n | CS(m,n) | gamma |\n|---|---|---|---|\n| " + std::to_string(cs.m) + " | " +
                              std::to_string(cs.n) + " | {" + detail::join(cs.elements, ',') + "} | " +
                              std::to_string(cs.gamma()) + " |\n";
            return out;
        }
    }
    return {};
}

/// Two-row table: m / gamma_m.
inline std::string emit_gamma_table(const std::vector<std::pair<integer, integer>>& gammas, Format fmt) {
    switch (fmt) {
        case Format::markdown: {
            std::string top = "| m |", sep = "|---|", bottom = "| gamma_m |";
            for (auto [m, g] : gammas) {
                top += " " + std::to_string(m) + " |";
                sep += "---|";
                bottom += " " + std::to_string(g) + " |";
            }
            return top + "\n" + sep + "\n" + bottom + "\n";
        }
        case Format::csv: {
            std::string out = "m,gamma\n";
            for (auto [m, g] : gammas) out += std::to_string(m) + "," + std::to_string(g) + "\n";
            return out;
        }
        case Format::json: {
            json j = json::array();
            for (auto [m, g] : gammas) j.push_back(json{{"m", m}, {"gamma", g}});
            return j.dump() + "\n";
        }
    }
    return {};
}

}  // namespace tightpoly
