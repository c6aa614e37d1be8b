#include "lprev/json_io.hpp"

#include "lprev/syntax.hpp"

namespace lprev {

namespace {

nlohmann::json rules_to_json(const std::vector<Rule>& rules) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rules) out.push_back(render_rule(r));
    return out;
}

std::vector<Rule> rules_from_json(const nlohmann::json& j) {
    std::vector<Rule> out;
    for (const auto& s : j) out.push_back(parse_rule(s.get<std::string>()));
    return out;
}

nlohmann::json pair_to_json(const InstancePair& p) {
    return {{"deleted", rules_to_json({p.deleted.begin(), p.deleted.end()})},
            {"added", rules_to_json({p.added.begin(), p.added.end()})}};
}

}  // namespace

nlohmann::json revision_to_json(const Revision& rev, const RevisionFramework& fw, const Rule& r_new) {
    nlohmann::json theta = nlohmann::json::array();
    for (const auto& a : rev.theta) theta.push_back(render_atom(a));
    return {{"theta", theta},
            {"deletions", rules_to_json(rev.deletions)},
            {"additions", rules_to_json(rev.additions)},
            {"revised_program", rules_to_json(apply_revision(rev, fw, r_new))}};
}

Revision revision_from_json(const nlohmann::json& j) {
    Revision rev;
    for (const auto& a : j.at("theta")) rev.theta.insert(parse_atom(a.get<std::string>()));
    rev.deletions = rules_from_json(j.at("deletions"));
    rev.additions = rules_from_json(j.at("additions"));
    return rev;
}

nlohmann::json report_to_json(const OracleReport& report) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& p : report.all_revisions) all.push_back(pair_to_json(p));
    nlohmann::json minimal = nlohmann::json::array();
    for (const auto& p : report.minimal_revisions) minimal.push_back(pair_to_json(p));
    return {{"all_revisions", all},
            {"minimal_revisions", minimal},
            {"agreement", report.agreement},
            {"divergences", report.divergences}};
}

nlohmann::json trace_to_json(const std::vector<TraceRecord>& trace) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : trace) {
        nlohmann::json delta = nlohmann::json::array();
        for (const auto& l : r.delta) delta.push_back(render_literal(l));
        nlohmann::json rec = {{"index", r.index}, {"proc", abbreviation(r.proc)}, {"argument", r.argument}};
        if (r.proc != Procedure::Select) rec["delta"] = delta;
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace lprev
