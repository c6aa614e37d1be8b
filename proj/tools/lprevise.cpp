// Command-line front end: revise, models, ground, check, trace.
//
// Exit status: 0 on success, 1 when there is nothing to report (no revision,
// no stable model, oracle disagreement, exhausted step budget), 2 on bad
// input.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lprev/engine.hpp"
#include "lprev/json_io.hpp"
#include "lprev/oracle.hpp"
#include "lprev/stable_models.hpp"
#include "lprev/syntax.hpp"

using namespace lprev;
using nlohmann::json;

namespace {

struct Flags {
    std::string path;
    bool all = false;
    bool as_json = false;
    bool trace = false;
    bool abduce = false;
    std::size_t step_budget = 1'000'000;
    std::size_t oracle_bound = 16;
};

// Raised for problems with the input file, reported with exit status 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ParsedFramework load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_framework(ss.str());
    } catch (const ParseError& e) {
        throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
    }
}

Rule require_new(const ParsedFramework& pf) {
    if (!pf.new_rule) throw InputError("the input has no #new section");
    return *pf.new_rule;
}

std::string set_text(const std::set<Atom>& atoms) {
    std::string s = "{";
    for (const auto& a : atoms) {
        if (s.size() > 1) s += ", ";
        s += render_atom(a);
    }
    return s + "}";
}

json atoms_json(const std::set<Atom>& atoms) {
    json out = json::array();
    for (const auto& a : atoms) out.push_back(render_atom(a));
    return out;
}

void print_revision(std::ostream& os, std::size_t k, const Revision& rev, const RevisionFramework& fw,
                    const Rule& r_new) {
    os << "revision " << k << "\n";
    os << "  theta: " << set_text(rev.theta) << "\n";
    for (const auto& r : rev.deletions) os << "  delete: " << render_rule(r) << "\n";
    for (const auto& r : rev.additions) os << "  add: " << render_rule(r) << "\n";
    os << "  program:\n";
    for (const auto& r : apply_revision(rev, fw, r_new)) os << "    " << render_rule(r) << "\n";
}

EngineOptions engine_options(const Flags& f, bool trace) {
    EngineOptions o;
    o.step_budget = f.step_budget;
    o.record_trace = trace;
    return o;
}

std::vector<std::size_t> non_minimal(const EngineOutcome& out) {
    std::vector<std::size_t> idx;
    std::set<Theta> minimal(out.minimal_thetas.begin(), out.minimal_thetas.end());
    for (std::size_t i = 0; i < out.successes.size(); ++i) {
        if (!minimal.contains(out.success_thetas[i])) idx.push_back(i);
    }
    return idx;
}

int cmd_revise(const Flags& f) {
    ParsedFramework pf = load(f.path);
    Rule r_new = require_new(pf);
    EngineOutcome out = revise(pf.framework, r_new, engine_options(f, f.trace));

    if (f.as_json) {
        json doc;
        doc["revisions"] = json::array();
        for (std::size_t i = 0; i < out.revisions.size(); ++i) {
            json r = revision_to_json(out.revisions[i], pf.framework, r_new);
            r["verified"] = static_cast<bool>(out.verified[i]);
            doc["revisions"].push_back(std::move(r));
        }
        if (f.all) {
            doc["non_minimal"] = json::array();
            for (std::size_t i : non_minimal(out)) {
                doc["non_minimal"].push_back(
                    revision_to_json(extract_revision(out.success_thetas[i], pf.framework), pf.framework, r_new));
            }
        }
        if (f.trace) {
            doc["traces"] = json::array();
            for (const auto& s : out.successes) doc["traces"].push_back(trace_to_json(s.trace));
        }
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    for (std::size_t i = 0; i < out.revisions.size(); ++i) {
        print_revision(std::cout, i + 1, out.revisions[i], pf.framework, r_new);
        if (!out.verified[i]) std::cout << "  warning: revised program failed the consistency check\n";
    }
    if (f.all) {
        for (std::size_t i : non_minimal(out)) {
            std::cout << "non-minimal success: " << set_text(out.success_thetas[i]) << "\n";
        }
    }
    if (f.trace) {
        for (std::size_t i = 0; i < out.successes.size(); ++i) {
            std::cout << "% branch " << i + 1 << " " << set_text(out.success_thetas[i]) << "\n";
            for (const auto& r : out.successes[i].trace) std::cout << format_trace_line(r) << "\n";
        }
    }
    return 0;
}

int cmd_trace(const Flags& f) {
    ParsedFramework pf = load(f.path);
    Rule r_new = require_new(pf);
    EngineOutcome out = revise(pf.framework, r_new, engine_options(f, true));
    if (f.as_json) {
        json doc = json::array();
        for (std::size_t i = 0; i < out.successes.size(); ++i) {
            doc.push_back({{"theta", atoms_json(out.success_thetas[i])}, {"trace", trace_to_json(out.successes[i].trace)}});
        }
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    for (std::size_t i = 0; i < out.successes.size(); ++i) {
        if (i) std::cout << "\n";
        std::cout << "% branch " << i + 1 << " " << set_text(out.success_thetas[i]) << "\n";
        for (const auto& r : out.successes[i].trace) std::cout << format_trace_line(r) << "\n";
    }
    return 0;
}

int cmd_models(const Flags& f) {
    ParsedFramework pf = load(f.path);
    const auto& fw = pf.framework;
    Rule probe = pf.new_rule.value_or(Rule{});
    const HerbrandUniverse hu = herbrand_constants(fw, probe);

    if (f.abduce) {
        AbductiveFramework af = translate(fw, require_new(pf));
        auto models = generalized_stable_models(af, hu);
        if (f.as_json) {
            json doc = json::array();
            for (const auto& m : models) doc.push_back({{"theta", atoms_json(m.theta)}, {"model", atoms_json(m.model)}});
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const auto& m : models) std::cout << "theta=" << set_text(m.theta) << " model=" << set_text(m.model) << "\n";
            if (models.empty()) std::cout << "no generalized stable models\n";
        }
        return models.empty() ? 1 : 0;
    }

    Program p = fw.persistent;
    p.insert(p.end(), fw.temporal.begin(), fw.temporal.end());
    if (pf.new_rule) p.push_back(*pf.new_rule);
    auto models = stable_models(ground(p, hu));
    if (f.as_json) {
        json doc = json::array();
        for (const auto& m : models) doc.push_back(atoms_json(m));
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& m : models) std::cout << set_text(m) << "\n";
        if (models.empty()) std::cout << "no stable models\n";
    }
    return models.empty() ? 1 : 0;
}

int cmd_ground(const Flags& f) {
    ParsedFramework pf = load(f.path);
    const auto& fw = pf.framework;
    const HerbrandUniverse hu = herbrand_constants(fw, pf.new_rule.value_or(Rule{}));
    if (f.as_json) {
        json doc;
        doc["constants"] = json::array();
        for (const auto& c : hu) doc["constants"].push_back(c.name);
        auto section = [&](const Program& p) {
            json out = json::array();
            for (const auto& r : ground(p, hu)) out.push_back(render_rule(r));
            return out;
        };
        doc["persistent"] = section(fw.persistent);
        doc["temporal"] = section(fw.temporal);
        doc["backup"] = section(fw.backup);
        if (pf.new_rule) doc["new"] = section({*pf.new_rule});
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    std::cout << "% constants:";
    for (const auto& c : hu) std::cout << " " << c.name;
    std::cout << "\n";
    auto section = [&](const char* title, const Program& p) {
        std::cout << title << "\n" << render_program(ground(p, hu));
    };
    section("#persistent", fw.persistent);
    section("#temporal", fw.temporal);
    section("#backup", fw.backup);
    if (pf.new_rule) section("#new", {*pf.new_rule});
    return 0;
}

int cmd_check(const Flags& f) {
    ParsedFramework pf = load(f.path);
    OracleReport report = cross_check(pf.framework, require_new(pf), engine_options(f, false), f.oracle_bound);
    std::cout << report_to_json(report).dump(2) << "\n";
    return report.agreement ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal revision of normal logic programs"};
    app.require_subcommand(1);
    Flags f;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", f.path, "framework file")->required()->check(CLI::ExistingFile);
        cmd->add_flag("--json", f.as_json, "machine-readable output");
        cmd->add_option("--step-budget", f.step_budget, "maximum number of procedure calls")->check(CLI::PositiveNumber);
    };
    auto* revise_cmd = app.add_subcommand("revise", "print the minimal revisions");
    add_common(revise_cmd);
    revise_cmd->add_flag("--all", f.all, "also list non-minimal successes");
    revise_cmd->add_flag("--trace", f.trace, "print the call trace of every success");
    auto* models_cmd = app.add_subcommand("models", "stable models of persistent, temporal and new rules");
    add_common(models_cmd);
    models_cmd->add_flag("--abduce", f.abduce, "generalized stable models of the translated framework");
    auto* ground_cmd = app.add_subcommand("ground", "ground every section over the constants");
    add_common(ground_cmd);
    auto* check_cmd = app.add_subcommand("check", "compare the engine with the brute-force oracle");
    add_common(check_cmd);
    check_cmd->add_option("--oracle-bound", f.oracle_bound, "maximum revisable ground instances");
    auto* trace_cmd = app.add_subcommand("trace", "print the call trace of every success branch");
    add_common(trace_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*revise_cmd) return cmd_revise(f);
        if (*models_cmd) return cmd_models(f);
        if (*ground_cmd) return cmd_ground(f);
        if (*check_cmd) return cmd_check(f);
        if (*trace_cmd) return cmd_trace(f);
    } catch (const Unrevisable& e) {
        std::cerr << "unrevisable: " << e.what() << "\n";
        return 1;
    } catch (const NonTermination& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InitialInconsistent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const OracleBoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
