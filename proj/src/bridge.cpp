#include "dcalc/bridge.hpp"

namespace dcalc {

HDerivation lower(const MDerivation& d) {
    if (d.structural) {
        if (d.premises.size() != 1)
            throw RuleApplicationError("structural step needs exactly one premise");
        return lower(d.premises[0]);
    }
    HDerivation h{d.rule, HSequent{sharp(d.conclusion.ant), d.conclusion.succ}, {}, {}};
    for (const auto& p : d.premises)
        h.premises.push_back(lower(p));
    const int k = d.params.k;
    const Path& path = d.params.path;
    auto prem_ant = [&](std::size_t i) -> const Term& { return d.premises.at(i).conclusion.ant; };
    switch (d.rule) {
        case HRule::Id:
        case HRule::IR:
        case HRule::JR:
        case HRule::UnderR:
        case HRule::OverR:
        case HRule::ProdR:
            break;
        case HRule::DownR:
        case HRule::DProdR:
            h.params.k = k;
            break;
        case HRule::Cut:
        case HRule::UnderL:
        case HRule::OverL:
        case HRule::DownL:
        case HRule::UpL:
            h.params.loc = sharp_locator(prem_ant(1), path);
            h.params.k = k;
            break;
        case HRule::ProdL:
        case HRule::DProdL:
            h.params.loc = sharp_locator(prem_ant(0), concat(path, Dir::Left));
            h.params.k = k;
            break;
        case HRule::UpR:
            h.params.loc = sharp_locator(prem_ant(0), {Dir::Right});
            h.params.k = k;
            break;
        case HRule::IL:
            h.params.loc = sharp_locator(d.conclusion.ant, path);
            break;
        case HRule::JL: {
            const Locator loc = sharp_locator(d.conclusion.ant, path);
            const Item& j = item_at(h.conclusion.ant, loc);
            h.params.loc = loc;
            h.params.end = loc.index + static_cast<int>(j.gaps.at(0).items.size());
            break;
        }
    }
    return h;
}

namespace {

MDerivation node(HRule rule, MParams params, std::vector<MDerivation> premises) {
    std::vector<MSequent> prem;
    for (const auto& p : premises)
        prem.push_back(p.conclusion);
    MSequent c = md_conclude(rule, params, prem);
    return MDerivation{rule, std::nullopt, std::move(c), std::move(params), std::move(premises)};
}

MDerivation axiom(HRule rule, Term ant, Type succ) {
    return MDerivation{rule, std::nullopt, MSequent{std::move(ant), std::move(succ)}, {}, {}};
}

HyperConfig items(const std::vector<Item>& v, std::size_t b, std::size_t e) {
    return HyperConfig({v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(e)});
}

MDerivation lift_natural(const HDerivation& h, const LiftOptions& opts) {
    const HyperConfig& ant = h.conclusion.ant;
    const Type& succ = h.conclusion.succ;
    const int k = h.params.k;
    auto loc = [&]() -> const Locator& {
        if (!h.params.loc)
            throw RuleApplicationError("missing locator");
        return *h.params.loc;
    };
    auto sub = [&](std::size_t i, const std::optional<Term>& target = std::nullopt) {
        return lift(h.premises.at(i), target, opts);
    };
    auto prem_ant = [&](std::size_t i) -> const HyperConfig& { return h.premises.at(i).conclusion.ant; };

    switch (h.rule) {
        case HRule::Id:
            return axiom(HRule::Id, Term::leaf(succ), succ);
        case HRule::IR:
            return axiom(HRule::IR, Term::unit_i(), succ);
        case HRule::JR:
            return axiom(HRule::JR, Term::unit_j(), succ);

        case HRule::UnderR: {
            const auto& v = prem_ant(0).items;
            const Term x = term_of_config(items(v, 1, v.size()));
            return node(h.rule, {}, {sub(0, Term::cat(Term::leaf(v.front().ty()), x))});
        }
        case HRule::OverR: {
            const auto& v = prem_ant(0).items;
            const Term x = term_of_config(items(v, 0, v.size() - 1));
            return node(h.rule, {}, {sub(0, Term::cat(x, Term::leaf(v.back().ty())))});
        }
        case HRule::DownR: {
            const Item& a = prem_ant(0).items.at(0);
            const Term x = term_of_config(a.gaps.at(static_cast<std::size_t>(k - 1)));
            return node(h.rule, {{}, k}, {sub(0, Term::wrap(k, Term::leaf(a.ty()), x))});
        }
        case HRule::UpR: {
            MDerivation p = sub(0);
            const Path at = canonical_leaf_path(prem_ant(0), loc());
            Extraction e = extract(p.conclusion.ant, at, ExtractOptions{true, opts.budget});
            if (e.index != k)
                throw Error("extraction index " + std::to_string(e.index) + " disagrees with wrap index " +
                            std::to_string(k));
            return node(h.rule, {{}, k}, {append_trace(std::move(p), e.trace)});
        }
        case HRule::ProdR:
        case HRule::DProdR:
            return node(h.rule, {{}, k}, {sub(0), sub(1)});

        case HRule::Cut:
        case HRule::UnderL:
        case HRule::OverL:
        case HRule::DownL:
        case HRule::UpL: {
            const Path at = canonical_leaf_path(prem_ant(1), loc());
            return node(h.rule, {at, k}, {sub(0), sub(1)});
        }

        case HRule::ProdL:
        case HRule::DProdL:
        case HRule::IL:
        case HRule::JL: {
            const Term q = term_of_config(ant);
            const Path at = canonical_leaf_path(ant, loc());
            const Type active = subterm(q, at).type();
            Term pattern = [&] {
                switch (h.rule) {
                    case HRule::ProdL:
                        return Term::cat(Term::leaf(active.left()), Term::leaf(active.right()));
                    case HRule::DProdL:
                        return Term::wrap(k, Term::leaf(active.left()), Term::leaf(active.right()));
                    case HRule::IL:
                        return Term::unit_i();
                    default:
                        return Term::unit_j();
                }
            }();
            return node(h.rule, {at, k}, {sub(0, replace(q, at, pattern))});
        }
    }
    throw Error("unknown rule");
}

}  // namespace

MDerivation lift(const HDerivation& d, const std::optional<Term>& target, const LiftOptions& opts) {
    if (target && sharp(*target) != d.conclusion.ant)
        throw Error("target " + target->str() + " does not translate to " + d.conclusion.ant.str());
    MDerivation m = lift_natural(d, opts);
    const Term goal = target ? *target : term_of_config(d.conclusion.ant);
    if (m.conclusion.ant == goal)
        return m;
    const RewriteTrace trace = connect(m.conclusion.ant, goal, opts.budget);
    return append_trace(std::move(m), trace);
}

bool correspondence_check(const MDerivation& m, const HDerivation& h) {
    return Correspondence{m.conclusion, h.conclusion}.holds();
}

std::optional<MDerivation> prove_m(const MSequent& s, const LiftOptions& opts) {
    auto h = prove(HSequent{sharp(s.ant), s.succ});
    if (!h)
        return std::nullopt;
    return lift(*h, s.ant, opts);
}

}  // namespace dcalc
