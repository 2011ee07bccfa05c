#include "dcalc/rewrite.hpp"

#include <array>
#include <functional>

namespace dcalc {

namespace {

struct RuleInfo {
    Rule rule;
    std::string_view name;
    Rule inverse;
};

constexpr std::array<RuleInfo, kRuleCount> kRules{{
    {Rule::UnitILAdd, "UnitI-L-add", Rule::UnitILDrop},
    {Rule::UnitILDrop, "UnitI-L-drop", Rule::UnitILAdd},
    {Rule::UnitIRAdd, "UnitI-R-add", Rule::UnitIRDrop},
    {Rule::UnitIRDrop, "UnitI-R-drop", Rule::UnitIRAdd},
    {Rule::UnitJLAdd, "UnitJ-L-add", Rule::UnitJLDrop},
    {Rule::UnitJLDrop, "UnitJ-L-drop", Rule::UnitJLAdd},
    {Rule::UnitJiAdd, "UnitJ-i-add", Rule::UnitJiDrop},
    {Rule::UnitJiDrop, "UnitJ-i-drop", Rule::UnitJiAdd},
    {Rule::AsscCFwd, "AsscC-fwd", Rule::AsscCBwd},
    {Rule::AsscCBwd, "AsscC-bwd", Rule::AsscCFwd},
    {Rule::SWLeftFwd, "SW-left-fwd", Rule::SWLeftBwd},
    {Rule::SWLeftBwd, "SW-left-bwd", Rule::SWLeftFwd},
    {Rule::SWRightFwd, "SW-right-fwd", Rule::SWRightBwd},
    {Rule::SWRightBwd, "SW-right-bwd", Rule::SWRightFwd},
    {Rule::AsscD1, "AsscD1", Rule::AsscD2},
    {Rule::AsscD2, "AsscD2", Rule::AsscD1},
    {Rule::MixPerm1Fwd, "MixPerm1-fwd", Rule::MixPerm1Bwd},
    {Rule::MixPerm1Bwd, "MixPerm1-bwd", Rule::MixPerm1Fwd},
    {Rule::MixPerm2Fwd, "MixPerm2-fwd", Rule::MixPerm2Bwd},
    {Rule::MixPerm2Bwd, "MixPerm2-bwd", Rule::MixPerm2Fwd},
}};

const RuleInfo& info(Rule r) {
    return kRules[static_cast<std::size_t>(r)];
}

bool params_agree(const Params& given, const Params& derived) {
    for (const auto& [key, value] : given) {
        auto it = derived.find(key);
        if (it == derived.end() || it->second != value)
            return false;
    }
    return true;
}

bool is_cat(const Term& t) { return t.kind() == TermKind::Cat; }
bool is_wrap(const Term& t) { return t.kind() == TermKind::Wrap; }

std::optional<Rewritten> rewrite_unchecked(const Term& t, Rule rule, const Params& given) {
    switch (rule) {
        case Rule::UnitILAdd:
            return Rewritten{Term::cat(Term::unit_i(), t), {}};
        case Rule::UnitILDrop:
            if (is_cat(t) && t.left().kind() == TermKind::UnitI)
                return Rewritten{t.right(), {}};
            return std::nullopt;
        case Rule::UnitIRAdd:
            return Rewritten{Term::cat(t, Term::unit_i()), {}};
        case Rule::UnitIRDrop:
            if (is_cat(t) && t.right().kind() == TermKind::UnitI)
                return Rewritten{t.left(), {}};
            return std::nullopt;
        case Rule::UnitJLAdd:
            return Rewritten{Term::wrap(1, Term::unit_j(), t), {}};
        case Rule::UnitJLDrop:
            if (is_wrap(t) && t.left().kind() == TermKind::UnitJ)
                return Rewritten{t.right(), {}};
            return std::nullopt;
        case Rule::UnitJiAdd: {
            auto it = given.find("i");
            if (it == given.end())
                return std::nullopt;
            return Rewritten{Term::wrap(it->second, t, Term::unit_j()), {{"i", it->second}}};
        }
        case Rule::UnitJiDrop:
            if (is_wrap(t) && t.right().kind() == TermKind::UnitJ)
                return Rewritten{t.left(), {{"i", t.index()}}};
            return std::nullopt;
        case Rule::AsscCFwd:
            if (is_cat(t) && is_cat(t.right()))
                return Rewritten{Term::cat(Term::cat(t.left(), t.right().left()), t.right().right()), {}};
            return std::nullopt;
        case Rule::AsscCBwd:
            if (is_cat(t) && is_cat(t.left()))
                return Rewritten{Term::cat(t.left().left(), Term::cat(t.left().right(), t.right())), {}};
            return std::nullopt;
        case Rule::SWLeftFwd:
            if (is_cat(t))
                return Rewritten{Term::wrap(1, Term::cat(Term::unit_j(), t.right()), t.left()), {}};
            return std::nullopt;
        case Rule::SWLeftBwd:
            if (is_wrap(t) && t.index() == 1 && is_cat(t.left()) && t.left().left().kind() == TermKind::UnitJ)
                return Rewritten{Term::cat(t.right(), t.left().right()), {}};
            return std::nullopt;
        case Rule::SWRightFwd:
            if (is_cat(t)) {
                const int k = t.left().sort() + 1;
                return Rewritten{Term::wrap(k, Term::cat(t.left(), Term::unit_j()), t.right()), {{"k", k}}};
            }
            return std::nullopt;
        case Rule::SWRightBwd:
            if (is_wrap(t) && is_cat(t.left()) && t.left().right().kind() == TermKind::UnitJ &&
                t.index() == t.left().left().sort() + 1)
                return Rewritten{Term::cat(t.left().left(), t.right()), {{"k", t.index()}}};
            return std::nullopt;
        case Rule::AsscD1: {
            if (!is_wrap(t) || !is_wrap(t.right()))
                return std::nullopt;
            const int i = t.index(), j = t.right().index();
            const Term t1 = t.left(), t2 = t.right().left(), t3 = t.right().right();
            if (classify(i, t2.sort(), i + j - 1) != Relation::O)
                return std::nullopt;
            return Rewritten{Term::wrap(i + j - 1, Term::wrap(i, t1, t2), t3), {{"i", i}, {"j", j}}};
        }
        case Rule::AsscD2: {
            if (!is_wrap(t) || !is_wrap(t.left()))
                return std::nullopt;
            const int i = t.left().index(), j = t.index();
            const Term t1 = t.left().left(), t2 = t.left().right(), t3 = t.right();
            if (classify(i, t2.sort(), j) != Relation::O || j - i + 1 < 1)
                return std::nullopt;
            return Rewritten{Term::wrap(i, t1, Term::wrap(j - i + 1, t2, t3)), {{"i", i}, {"j", j}}};
        }
        case Rule::MixPerm1Fwd:
        case Rule::MixPerm2Bwd: {
            // (T1 +i X) +j Y with X before Y  ->  (T1 +(j-x+1) Y) +i X
            if (!is_wrap(t) || !is_wrap(t.left()))
                return std::nullopt;
            const int i = t.left().index(), j = t.index();
            const Term t1 = t.left().left(), x = t.left().right(), y = t.right();
            if (classify(i, x.sort(), j) != Relation::P1)
                return std::nullopt;
            return Rewritten{Term::wrap(i, Term::wrap(j - x.sort() + 1, t1, y), x), {{"i", i}, {"j", j}}};
        }
        case Rule::MixPerm1Bwd:
        case Rule::MixPerm2Fwd: {
            // (T1 +i X) +j Y with Y before X  ->  (T1 +j Y) +(i+y-1) X
            if (!is_wrap(t) || !is_wrap(t.left()))
                return std::nullopt;
            const int i = t.left().index(), j = t.index();
            const Term t1 = t.left().left(), x = t.left().right(), y = t.right();
            if (classify(i, x.sort(), j) != Relation::P2)
                return std::nullopt;
            return Rewritten{Term::wrap(i + y.sort() - 1, Term::wrap(j, t1, y), x), {{"i", i}, {"j", j}}};
        }
    }
    return std::nullopt;
}

}  // namespace

std::string_view rule_name(Rule r) {
    return info(r).name;
}

std::optional<Rule> rule_from_name(std::string_view name) {
    for (const auto& ri : kRules)
        if (ri.name == name)
            return ri.rule;
    return std::nullopt;
}

Rule inverse_rule(Rule r) {
    return info(r).inverse;
}

bool is_expanding(Rule r) {
    switch (r) {
        case Rule::UnitILAdd:
        case Rule::UnitIRAdd:
        case Rule::UnitJLAdd:
        case Rule::UnitJiAdd:
            return true;
        default:
            return false;
    }
}

std::string_view relation_name(Relation r) {
    switch (r) {
        case Relation::P1:
            return "P1";
        case Relation::P2:
            return "P2";
        case Relation::O:
            return "O";
    }
    return "?";
}

Relation classify(int i, int t2_sort, int j) {
    if (i + t2_sort - 1 < j)
        return Relation::P1;
    if (j < i)
        return Relation::P2;
    return Relation::O;
}

Relation classify(const Term& outer) {
    if (!is_wrap(outer) || !is_wrap(outer.left()))
        throw RuleError("classify expects (T1 +i T2) +j T3, got " + outer.str());
    return classify(outer.left().index(), outer.left().right().sort(), outer.index());
}

std::optional<Rewritten> rewrite_here(const Term& sub, Rule rule, const Params& given) {
    std::optional<Rewritten> r;
    try {
        r = rewrite_unchecked(sub, rule, given);
    } catch (const SortError&) {
        return std::nullopt;
    }
    if (r && !params_agree(given, r->params))
        return std::nullopt;
    return r;
}

Term apply_rule(const Term& t, const RuleApp& app) {
    if (!has_path(t, app.at))
        throw RuleError(std::string(rule_name(app.rule)) + ": path " + path_str(app.at) + " leaves the term");
    const Term sub = subterm(t, app.at);
    auto r = rewrite_here(sub, app.rule, app.params);
    if (!r)
        throw RuleError(std::string(rule_name(app.rule)) + " does not apply to " + sub.str() + " at " +
                        path_str(app.at));
    return replace(t, app.at, r->result);
}

RuleApp annotate(const Term& t, const RuleApp& app) {
    auto r = rewrite_here(subterm(t, app.at), app.rule, app.params);
    if (!r)
        throw RuleError(std::string(rule_name(app.rule)) + " does not apply at " + path_str(app.at));
    return RuleApp{app.rule, app.at, r->params};
}

RuleApp inverse(const Term& t, const RuleApp& app) {
    const RuleApp full = annotate(t, app);
    RuleApp inv{inverse_rule(app.rule), app.at, {}};
    if (app.rule == Rule::UnitJiDrop)
        inv.params = {{"i", full.params.at("i")}};
    return inv;
}

namespace {

// Calls visit(app, rewritten subterm) for every rule instance in `t`.
template <class Visit>
void for_each_instance(const Term& t, bool expanding, Visit&& visit) {
    std::function<void(const Term&, Path&)> walk = [&](const Term& sub, Path& path) {
        for (const auto& ri : kRules) {
            if (is_expanding(ri.rule) && !expanding)
                continue;
            if (ri.rule == Rule::UnitJiAdd) {
                for (int i = 1; i <= sub.sort(); ++i)
                    visit(RuleApp{ri.rule, path, {{"i", i}}}, Term::wrap(i, sub, Term::unit_j()));
                continue;
            }
            if (auto r = rewrite_here(sub, ri.rule, {}))
                visit(RuleApp{ri.rule, path, r->params}, r->result);
        }
        if (sub.is_binary()) {
            path.push_back(Dir::Left);
            walk(sub.left(), path);
            path.back() = Dir::Right;
            walk(sub.right(), path);
            path.pop_back();
        }
    };
    Path p;
    walk(t, p);
}

}  // namespace

std::vector<RuleApp> applicable_rules(const Term& t, bool expanding) {
    std::vector<RuleApp> out;
    for_each_instance(t, expanding, [&](const RuleApp& app, const Term&) { out.push_back(app); });
    return out;
}

std::vector<Term> neighbours(const Term& t, bool expanding) {
    std::vector<Term> out;
    for_each_instance(t, expanding, [&](const RuleApp& app, const Term& r) { out.push_back(replace(t, app.at, r)); });
    return out;
}

// ---------------------------------------------------------------------------
// Traces

const Term& RewriteTrace::push(const RuleApp& app) {
    const Term& cur = end();
    RuleApp full = annotate(cur, app);
    Term next = apply_rule(cur, full);
    steps.push_back(TraceStep{std::move(full), std::move(next)});
    return steps.back().result;
}

void RewriteTrace::append(const RewriteTrace& other) {
    if (!(other.start == end()))
        throw RuleError("trace concatenation: " + other.start.str() + " does not continue " + end().str());
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

RewriteTrace RewriteTrace::reversed() const {
    RewriteTrace back(end());
    for (std::size_t n = steps.size(); n-- > 0;) {
        const Term& before = n == 0 ? start : steps[n - 1].result;
        back.push(inverse(before, steps[n].app));
    }
    return back;
}

std::string validate(const RewriteTrace& trace) {
    Term cur = trace.start;
    for (std::size_t n = 0; n < trace.steps.size(); ++n) {
        const auto& step = trace.steps[n];
        try {
            Term next = apply_rule(cur, step.app);
            if (!(next == step.result))
                return "step " + std::to_string(n) + " (" + std::string(rule_name(step.app.rule)) + "): expected " +
                       next.str() + ", recorded " + step.result.str();
            cur = std::move(next);
        } catch (const Error& e) {
            return "step " + std::to_string(n) + ": " + e.what();
        }
    }
    return {};
}

}  // namespace dcalc
