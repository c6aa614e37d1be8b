// Top-down abductive proof search over a translated revision framework.
//
// Four mutually recursive procedures (rule_con, literal_con, derive,
// deleted_con) thread an assumption set Delta through every branch. The
// search is exhaustive: each procedure returns every state its alternatives
// can reach, so the caller never needs to resume a choice point.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lprev/core.hpp"
#include "lprev/grounder.hpp"
#include "lprev/translator.hpp"

namespace lprev {

class RevisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// T_pst together with T_tmp has no stable model.
class InitialInconsistent : public RevisionError {
public:
    using RevisionError::RevisionError;
};

/// No branch of the search succeeded.
class Unrevisable : public RevisionError {
public:
    using RevisionError::RevisionError;
};

/// The step budget ran out.
class NonTermination : public RevisionError {
public:
    using RevisionError::RevisionError;
};

enum class Procedure { RuleCon, LiteralCon, Derive, DeletedCon, Select };

/// "rc", "lc", "dr", "dc" or "select".
const char* abbreviation(Procedure p);

struct TraceRecord {
    std::string index;  // dotted nesting path; empty for the root call
    Procedure proc;
    std::string argument;
    std::vector<Literal> delta;  // Delta on entry, display order
};

/// `<index> <proc>(<argument>) Δ={...}`. Select lines carry no Delta.
std::string format_trace_line(const TraceRecord& r);

struct SearchState {
    Delta delta;
    std::set<Rule> checked;  // rules already passed to deleted_con on this branch
    std::vector<TraceRecord> trace;

    struct Frame {
        Procedure proc;
        std::vector<int> path;
        int children = 0;
    };
    std::vector<Frame> frames;
};

struct EngineOptions {
    std::size_t step_budget = 1'000'000;
    bool record_trace = false;
    // Mutation switch for oracle tests: literal_con skips its deleted_con calls.
    bool skip_deleted_con = false;
};

/// Ground resolvents of `l` against `p`, in program order: for each rule the
/// head resolvent (naf `l` only) comes first, then one resolvent per matching
/// body literal. Free variables left over are ground over `hu`.
std::vector<Rule> resolve(const Literal& l, const Program& p, const HerbrandUniverse& hu);

/// Ground instances of rules of `p` containing the complement of `l`.
std::vector<Rule> del(const Literal& l, const Program& p, const HerbrandUniverse& hu);

class ProofSearch {
public:
    ProofSearch(AbductiveFramework af, HerbrandUniverse hu, EngineOptions options = {});

    std::vector<SearchState> rule_con(const Rule& r, const SearchState& s);
    std::vector<SearchState> literal_con(const Literal& l, const SearchState& s);
    std::vector<std::pair<Substitution, SearchState>> derive(const Atom& p, const SearchState& s);
    std::vector<SearchState> deleted_con(const Rule& r, const SearchState& s);

    bool is_abducible(const Atom& a) const { return af_.abducibles.contains(a.predicate); }
    const AbductiveFramework& framework() const { return af_; }
    const GroundProgram& relevant() const { return omega_; }
    std::size_t steps() const { return steps_; }

    /// Ground instances of `r` in the relevant ground program of the
    /// framework extended with `r`.
    std::vector<Rule> relevant_instances(const Rule& r);

private:
    std::vector<std::pair<Substitution, SearchState>> derive_chain(const Atom& p, const SearchState& s,
                                                                   const std::vector<Atom>& chain);
    std::vector<SearchState> literal_con_impl(const Literal& l, const SearchState& s);
    std::vector<std::pair<Substitution, SearchState>> derive_impl(const Atom& p, const SearchState& s,
                                                                  const std::vector<Atom>& chain);
    std::vector<SearchState> deleted_con_impl(const Rule& r, const SearchState& s);
    std::vector<SearchState> satisfy(const Rule& ground, const SearchState& s);
    std::vector<SearchState> falsify(const Literal& l, const SearchState& s);
    std::vector<SearchState> make_true(const Literal& l, const SearchState& s);
    const std::vector<Rule>& resolvents(const Literal& l);
    const std::vector<Rule>& deleted(const Literal& l);

    void tick();
    void enter(SearchState& s, Procedure p, std::string argument) const;
    void leave(SearchState& s) const;
    void leave(std::vector<SearchState>& states) const;
    void trivial(SearchState& s, Procedure p, std::string argument) const;

    AbductiveFramework af_;
    HerbrandUniverse hu_;
    EngineOptions options_;
    std::size_t steps_ = 0;
    std::set<Atom> m0_;
    GroundProgram omega_;
    std::map<Atom, std::vector<const Rule*>> by_head_;
    std::map<Rule, std::vector<Rule>> instance_cache_;
    std::map<Literal, std::vector<Rule>> resolve_cache_;
    std::map<Literal, std::vector<Rule>> del_cache_;

    // Without a trace, a call's outcome depends only on its argument, Delta,
    // the deleted_con memo and the derive chain.
    struct CallKey {
        Procedure proc;
        Rule rule;
        Literal literal;
        std::set<Literal> delta;
        std::set<Rule> checked;
        std::vector<Atom> chain;
        auto operator<=>(const CallKey&) const = default;
        bool operator==(const CallKey&) const = default;
    };
    std::map<CallKey, std::vector<SearchState>> memo_;
    std::map<CallKey, std::vector<std::pair<Substitution, SearchState>>> derive_memo_;
    bool memoize() const { return !options_.record_trace; }
};

/// States with equal Delta collapse onto the first one.
std::vector<SearchState> unique_by_delta(std::vector<SearchState> states);

struct EngineOutcome {
    std::vector<SearchState> successes;
    std::vector<Theta> success_thetas;  // parallel to successes
    std::vector<Theta> minimal_thetas;
    std::vector<Revision> revisions;  // parallel to minimal_thetas
    std::vector<bool> verified;       // revised program checked consistent
    std::size_t steps = 0;
};

/// Runs rule_con(r_new, {}) on the translated framework and keeps the
/// subset-minimal abducible sets.
EngineOutcome revise(const RevisionFramework& fw, const Rule& r_new, const EngineOptions& options = {});

}  // namespace lprev
