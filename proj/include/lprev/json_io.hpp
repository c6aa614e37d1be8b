// JSON encodings of revisions, oracle reports and traces. Rules travel as
// their text form so documents stay readable and parse back with the rule
// parser.
#pragma once

#include <json.hpp>

#include "lprev/engine.hpp"
#include "lprev/oracle.hpp"
#include "lprev/translator.hpp"

namespace lprev {

/// {theta, deletions, additions, revised_program}.
nlohmann::json revision_to_json(const Revision& rev, const RevisionFramework& fw, const Rule& r_new);

/// Reads theta, deletions and additions; revised_program is derived data and
/// is ignored.
Revision revision_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const OracleReport& report);

nlohmann::json trace_to_json(const std::vector<TraceRecord>& trace);

}  // namespace lprev
