#ifndef DCALC_REWRITE_HPP
#define DCALC_REWRITE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcalc/term.hpp"

namespace dcalc {

// The Eq_D structural rules, each oriented. Mutually inverse pairs:
// *-add/*-drop, *-fwd/*-bwd, AsscD1/AsscD2.
enum class Rule {
    UnitILAdd,    // X           -> II + X
    UnitILDrop,   // II + X      -> X
    UnitIRAdd,    // X           -> X + II
    UnitIRDrop,   // X + II      -> X
    UnitJLAdd,    // X           -> JJ +1 X
    UnitJLDrop,   // JJ +1 X     -> X
    UnitJiAdd,    // X           -> X +i JJ
    UnitJiDrop,   // X +i JJ     -> X
    AsscCFwd,     // T1 + (T2 + T3)  -> (T1 + T2) + T3
    AsscCBwd,     // (T1 + T2) + T3  -> T1 + (T2 + T3)
    SWLeftFwd,    // T2 + T3     -> (JJ + T3) +1 T2
    SWLeftBwd,    // (JJ + T3) +1 T2 -> T2 + T3
    SWRightFwd,   // T2 + T3     -> (T2 + JJ) +(t2+1) T3
    SWRightBwd,   // (T2 + JJ) +(t2+1) T3 -> T2 + T3
    AsscD1,       // T1 +i (T2 +j T3) -> (T1 +i T2) +(i+j-1) T3
    AsscD2,       // (T1 +i T2) +j T3 -> T1 +i (T2 +(j-i+1) T3), T2 wraps T3
    MixPerm1Fwd,  // (T1 +i T2) +j T3 -> (T1 +(j-t2+1) T3) +i T2, T2 precedes T3
    MixPerm1Bwd,  // (T1 +i T3) +j T2 -> (T1 +j T2) +(i+t2-1) T3, j < i
    MixPerm2Fwd,  // (T1 +i T2) +j T3 -> (T1 +j T3) +(i+t3-1) T2, T3 precedes T2
    MixPerm2Bwd,  // (T1 +i T3) +j T2 -> (T1 +(j-t3+1) T2) +i T3, i+t3-1 < j
};

inline constexpr int kRuleCount = 20;

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
Rule inverse_rule(Rule r);
// Rules that grow the term out of nothing (unit introductions).
bool is_expanding(Rule r);

using Params = std::map<std::string, int>;

struct RuleApp {
    Rule rule;
    Path at;
    // Indices the schema mentions. For UnitJiAdd "i" is an input; for every
    // other rule they are read off the matched subterm and, when present,
    // must agree with it.
    Params params;

    friend bool operator==(const RuleApp&, const RuleApp&) = default;
};

class RuleError : public Error {
  public:
    using Error::Error;
};

// Relation between T2 and T3 in (T1 +i T2) +j T3.
enum class Relation { P1, P2, O };

std::string_view relation_name(Relation r);
Relation classify(int i, int t2_sort, int j);
// Throws RuleError unless `outer` has the shape (T1 +i T2) +j T3.
Relation classify(const Term& outer);

struct Rewritten {
    Term result;
    Params params;  // the schema indices of this instance
};

// Rewrites the subterm itself (no path); nullopt when the schema or a side
// condition does not match.
std::optional<Rewritten> rewrite_here(const Term& sub, Rule rule, const Params& given);

// Applies `app` at its path; throws RuleError on shape, side-condition or
// parameter mismatch.
Term apply_rule(const Term& t, const RuleApp& app);

// `app` with its params filled in from the matched subterm.
RuleApp annotate(const Term& t, const RuleApp& app);

// The application that undoes `app` on apply_rule(t, app).
RuleApp inverse(const Term& t, const RuleApp& app);

// Every rule instance applicable somewhere in `t`. Expanding rules are
// included only when `expanding` is set (they apply everywhere).
std::vector<RuleApp> applicable_rules(const Term& t, bool expanding);

// Results of every instance counted by applicable_rules.
std::vector<Term> neighbours(const Term& t, bool expanding);

struct TraceStep {
    RuleApp app;
    Term result;
};

struct RewriteTrace {
    Term start;
    std::vector<TraceStep> steps;

    explicit RewriteTrace(Term s) : start(std::move(s)) {}
    const Term& end() const { return steps.empty() ? start : steps.back().result; }
    std::size_t size() const { return steps.size(); }

    // Applies and records one step; returns the new end term.
    const Term& push(const RuleApp& app);
    // Appends `other`, whose start must equal end().
    void append(const RewriteTrace& other);
    // Trace from end() back to start.
    RewriteTrace reversed() const;
};

// Empty string when every step re-validates under apply_rule; otherwise a
// description of the first failing step.
std::string validate(const RewriteTrace& trace);

}  // namespace dcalc

#endif
