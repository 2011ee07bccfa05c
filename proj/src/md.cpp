#include "dcalc/md.hpp"

namespace dcalc {

std::string MSequent::str() const {
    return ant.str() + " -> " + succ.str();
}

MSequent make_msequent(Term ant, Type succ) {
    if (ant.sort() != succ.sort())
        throw SortError("antecedent of sort " + std::to_string(ant.sort()) + " against succedent " + succ.str() +
                        " of sort " + std::to_string(succ.sort()));
    return MSequent{std::move(ant), std::move(succ)};
}

MSequent parse_msequent(std::string_view text, const Signature& sig) {
    const auto arrow = text.find("->");
    if (arrow == std::string_view::npos)
        throw ParseError("expected '->' in sequent", text.size());
    Term ant = parse_term(text.substr(0, arrow), sig);
    Type succ = [&] {
        try {
            return parse_type(text.substr(arrow + 2), sig);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), arrow + 2 + e.position());
        }
    }();
    try {
        return make_msequent(std::move(ant), std::move(succ));
    } catch (const SortError& e) {
        throw ParseError(e.what(), arrow);
    }
}

std::string MDerivation::rule_name() const {
    if (structural)
        return std::string(dcalc::rule_name(structural->rule));
    return std::string(hrule_name(rule));
}

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw RuleApplicationError(msg);
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const RuleApplicationError&) {
        throw;
    } catch (const Error& e) {
        fail(e.what());
    }
}

Term active(const Term& t, const Path& p) {
    return guarded([&] { return subterm(t, p); });
}

const Type& leaf_type(const Term& t, const Path& p, const Term& sub) {
    if (sub.kind() != TermKind::Leaf)
        fail("no type leaf at " + path_str(p) + " in " + t.str());
    return sub.type();
}

// Y[B] -> C with B at `path`, rebuilt as Y[built(B)] -> C.
template <class Build>
MSequent replace_minor(const MSequent& minor, const Path& path, Build&& build) {
    const Term sub = active(minor.ant, path);
    const Type b = leaf_type(minor.ant, path, sub);
    return guarded([&] { return MSequent{replace(minor.ant, path, build(b)), minor.succ}; });
}

void expect_kind(const Term& t, TermKind k, const char* what) {
    if (t.kind() != k)
        fail(std::string("premise antecedent is not ") + what + ": " + t.str());
}

}  // namespace

MSequent md_conclude(HRule rule, const MParams& prm, const std::vector<MSequent>& prem) {
    if (static_cast<int>(prem.size()) != hrule_arity(rule))
        fail("expected " + std::to_string(hrule_arity(rule)) + " premises, got " + std::to_string(prem.size()));
    const int k = prm.k;
    switch (rule) {
        case HRule::Id:
        case HRule::IR:
        case HRule::JR:
            fail("axioms have no premises to build from");

        case HRule::Cut: {
            const Term sub = active(prem[1].ant, prm.path);
            if (sub.kind() != TermKind::Leaf || sub.type() != prem[0].succ)
                fail("cut formula " + prem[0].succ.str() + " not at " + path_str(prm.path));
            return guarded([&] { return MSequent{replace(prem[1].ant, prm.path, prem[0].ant), prem[1].succ}; });
        }
        case HRule::UnderL:
            return replace_minor(prem[1], prm.path, [&](const Type& c) {
                return Term::cat(prem[0].ant, Term::leaf(Type::under(prem[0].succ, c)));
            });
        case HRule::OverL:
            return replace_minor(prem[1], prm.path, [&](const Type& c) {
                return Term::cat(Term::leaf(Type::over(c, prem[0].succ)), prem[0].ant);
            });
        case HRule::DownL:
            return replace_minor(prem[1], prm.path, [&](const Type& c) {
                return Term::wrap(k, prem[0].ant, Term::leaf(Type::ddown(k, prem[0].succ, c)));
            });
        case HRule::UpL:
            return replace_minor(prem[1], prm.path, [&](const Type& c) {
                return Term::wrap(k, Term::leaf(Type::dup(k, c, prem[0].succ)), prem[0].ant);
            });

        case HRule::UnderR: {
            const Term& t = prem[0].ant;
            expect_kind(t, TermKind::Cat, "a concatenation");
            const Type a = leaf_type(t, {Dir::Left}, t.left());
            return guarded([&] { return MSequent{t.right(), Type::under(a, prem[0].succ)}; });
        }
        case HRule::OverR: {
            const Term& t = prem[0].ant;
            expect_kind(t, TermKind::Cat, "a concatenation");
            const Type b = leaf_type(t, {Dir::Right}, t.right());
            return guarded([&] { return MSequent{t.left(), Type::over(prem[0].succ, b)}; });
        }
        case HRule::DownR: {
            const Term& t = prem[0].ant;
            expect_kind(t, TermKind::Wrap, "a wrap");
            if (t.index() != k)
                fail("wrap index " + std::to_string(t.index()) + ", expected " + std::to_string(k));
            const Type a = leaf_type(t, {Dir::Left}, t.left());
            return guarded([&] { return MSequent{t.right(), Type::ddown(k, a, prem[0].succ)}; });
        }
        case HRule::UpR: {
            const Term& t = prem[0].ant;
            expect_kind(t, TermKind::Wrap, "a wrap");
            if (t.index() != k)
                fail("wrap index " + std::to_string(t.index()) + ", expected " + std::to_string(k));
            const Type b = leaf_type(t, {Dir::Right}, t.right());
            return guarded([&] { return MSequent{t.left(), Type::dup(k, prem[0].succ, b)}; });
        }

        case HRule::ProdL:
        case HRule::DProdL: {
            const Term sub = active(prem[0].ant, prm.path);
            const bool cont = rule == HRule::ProdL;
            if (sub.kind() != (cont ? TermKind::Cat : TermKind::Wrap) || (!cont && sub.index() != k))
                fail("no matching product structure at " + path_str(prm.path));
            const Type a = leaf_type(prem[0].ant, concat(prm.path, Dir::Left), sub.left());
            const Type b = leaf_type(prem[0].ant, concat(prm.path, Dir::Right), sub.right());
            return guarded([&] {
                const Type t = cont ? Type::prod(a, b) : Type::dprod(k, a, b);
                return MSequent{replace(prem[0].ant, prm.path, Term::leaf(t)), prem[0].succ};
            });
        }
        case HRule::ProdR:
            return guarded([&] {
                return MSequent{Term::cat(prem[0].ant, prem[1].ant), Type::prod(prem[0].succ, prem[1].succ)};
            });
        case HRule::DProdR:
            return guarded([&] {
                return MSequent{Term::wrap(k, prem[0].ant, prem[1].ant), Type::dprod(k, prem[0].succ, prem[1].succ)};
            });

        case HRule::IL:
        case HRule::JL: {
            const bool i = rule == HRule::IL;
            const Term sub = active(prem[0].ant, prm.path);
            if (sub.kind() != (i ? TermKind::UnitI : TermKind::UnitJ))
                fail(std::string("no ") + (i ? "II" : "JJ") + " at " + path_str(prm.path));
            const Type u = i ? Type::unit_i() : Type::unit_j();
            return guarded([&] { return MSequent{replace(prem[0].ant, prm.path, Term::leaf(u)), prem[0].succ}; });
        }
    }
    fail("unknown rule");
}

namespace {

std::optional<Violation> check_at(const MDerivation& d, std::vector<int>& node) {
    auto violation = [&](std::string msg) { return Violation{node, d.rule_name(), std::move(msg)}; };
    const MSequent& s = d.conclusion;
    if (s.ant.sort() != s.succ.sort())
        return violation("ill-sorted sequent " + s.str());
    if (d.structural) {
        if (d.premises.size() != 1)
            return violation("structural step needs exactly one premise");
        const MSequent& p = d.premises[0].conclusion;
        if (p.succ != s.succ)
            return violation("structural step changes the succedent");
        try {
            const Term r = apply_rule(p.ant, *d.structural);
            if (r != s.ant)
                return violation("rewrite yields " + r.str() + ", not " + s.ant.str());
        } catch (const Error& e) {
            return violation(e.what());
        }
    } else {
        if (static_cast<int>(d.premises.size()) != hrule_arity(d.rule))
            return violation("wrong number of premises");
        switch (d.rule) {
            case HRule::Id:
                if (s.ant.kind() != TermKind::Leaf || s.ant.type() != s.succ)
                    return violation("expected " + s.succ.str() + " -> " + s.succ.str());
                break;
            case HRule::IR:
                if (s.ant.kind() != TermKind::UnitI || s.succ.conn() != Conn::UnitI)
                    return violation("expected II -> I");
                break;
            case HRule::JR:
                if (s.ant.kind() != TermKind::UnitJ || s.succ.conn() != Conn::UnitJ)
                    return violation("expected JJ -> J");
                break;
            default: {
                std::vector<MSequent> prem;
                for (const auto& p : d.premises)
                    prem.push_back(p.conclusion);
                try {
                    const MSequent expected = md_conclude(d.rule, d.params, prem);
                    if (!(expected == s))
                        return violation("premises yield " + expected.str() + ", not " + s.str());
                } catch (const Error& e) {
                    return violation(e.what());
                }
            }
        }
    }
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
        node.push_back(static_cast<int>(i));
        if (auto v = check_at(d.premises[i], node))
            return v;
        node.pop_back();
    }
    return std::nullopt;
}

}  // namespace

std::optional<Violation> check_m(const MDerivation& d) {
    std::vector<int> node;
    return check_at(d, node);
}

MDerivation structural_step(MDerivation premise, const RuleApp& app) {
    MSequent c{apply_rule(premise.conclusion.ant, app), premise.conclusion.succ};
    RuleApp full = annotate(premise.conclusion.ant, app);
    return MDerivation{HRule::Id, std::move(full), std::move(c), {}, {std::move(premise)}};
}

MDerivation append_trace(MDerivation d, const RewriteTrace& trace) {
    if (trace.start != d.conclusion.ant)
        throw Error("trace starts at " + trace.start.str() + ", derivation ends at " + d.conclusion.ant.str());
    for (const TraceStep& step : trace.steps) {
        MSequent c{step.result, d.conclusion.succ};
        std::vector<MDerivation> prem;
        prem.push_back(std::move(d));
        d = MDerivation{HRule::Id, step.app, std::move(c), {}, std::move(prem)};
    }
    return d;
}

namespace {

template <class F>
void visit(const MDerivation& d, F&& f) {
    f(d);
    for (const auto& p : d.premises)
        visit(p, f);
}

}  // namespace

int structural_steps(const MDerivation& d) {
    int n = 0;
    visit(d, [&](const MDerivation& x) { n += x.is_structural(); });
    return n;
}

int logical_steps(const MDerivation& d) {
    int n = 0;
    visit(d, [&](const MDerivation& x) { n += !x.is_structural(); });
    return n;
}

std::set<Rule> structural_rules_used(const MDerivation& d) {
    std::set<Rule> out;
    visit(d, [&](const MDerivation& x) {
        if (x.structural)
            out.insert(x.structural->rule);
    });
    return out;
}

}  // namespace dcalc
