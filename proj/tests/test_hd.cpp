#include <doctest.h>

#include <set>

#include "dcalc/hd.hpp"
#include "dcalc/term.hpp"
#include "lambek_oracle.hpp"

using namespace dcalc;

namespace {

const Signature& sig() {
    static const Signature s{{"a", 0}, {"b", 2}, {"c", 0}, {"d", 2}, {"e", 1}};
    return s;
}

HSequent H(std::string_view s) { return parse_hsequent(s, sig()); }
Type Ty(std::string_view s) { return parse_type(s, sig()); }

std::vector<HSequent> premises_of(const HDerivation& d) {
    std::vector<HSequent> out;
    for (const auto& p : d.premises)
        out.push_back(p.conclusion);
    return out;
}

// Every way to write Δ as Γ|_k Φ, found by cutting a token span out of the
// flat form and re-parsing both parts.
std::set<std::pair<std::string, std::string>> excisions(const HyperConfig& d, int k, int gamma_sort, int phi_sort) {
    const std::vector<Token> toks = flatten(d);
    std::set<std::pair<std::string, std::string>> out;
    for (std::size_t s = 0; s <= toks.size(); ++s)
        for (std::size_t t = s; t <= toks.size(); ++t) {
            std::vector<Token> outer(toks.begin(), toks.begin() + s), inner(toks.begin() + s, toks.begin() + t);
            outer.push_back(Token::sep());
            outer.insert(outer.end(), toks.begin() + t, toks.end());
            try {
                const HyperConfig g = parse_flat(outer), f = parse_flat(inner);
                if (g.sort() != gamma_sort || f.sort() != phi_sort || k > g.sort())
                    continue;
                if (wrap_at(g, k, f) == d)
                    out.emplace(g.str(), f.str());
            } catch (const Error&) {
            }
        }
    return out;
}

}  // namespace

TEST_CASE("hypersequent syntax") {
    const HSequent s = H("0:e, [], 1:e => e");
    CHECK(s.ant.sort() == 1);
    CHECK(s.str() == "0:e, [], 1:e => e");
    CHECK(H("0:e, a, 1:e => e@1a").ant.sort() == 0);
    CHECK_THROWS_AS(H("a => e"), ParseError);
    CHECK_THROWS_AS(H("a, a"), ParseError);
}

TEST_CASE("axioms and checker violations") {
    CHECK_FALSE(check(HDerivation{HRule::Id, H("0:b^2a, [], 1:b^2a, [], 2:b^2a, [], 3:b^2a => b^2a"), {}, {}}));
    CHECK_FALSE(check(HDerivation{HRule::IR, H("Lambda => I"), {}, {}}));
    CHECK_FALSE(check(HDerivation{HRule::JR, H("[] => J"), {}, {}}));
    const auto v = check(HDerivation{HRule::Id, H("a => c"), {}, {}});
    REQUIRE(v);
    CHECK(v->rule == "Id");
    CHECK(v->node.empty());

    // a wrong child is reported with its position
    HDerivation bad{HRule::UnderR, H("Lambda => a\\a"), {}, {HDerivation{HRule::IR, H("a => a"), {}, {}}}};
    const auto w = check(bad);
    REQUIRE(w);
    CHECK(w->node == std::vector<int>{0});
}

TEST_CASE("forward rule construction") {
    const HSequent prem1 = H("c => c"), prem2 = H("a => a");
    HParams p;
    p.loc = Locator{{}, 0};
    CHECK(hd_conclude(HRule::UnderL, p, {prem1, prem2}) == H("c, c\\a => a"));
    CHECK(hd_conclude(HRule::OverL, p, {prem1, prem2}) == H("a/c, c => a"));
    HParams k1;
    k1.k = 1;
    CHECK(hd_conclude(HRule::DProdR, k1, {H("0:e, [], 1:e => e"), H("a => a")}) == H("0:e, a, 1:e => e@1a"));
    CHECK_THROWS_AS(hd_conclude(HRule::UnderL, p, {prem1, H("Lambda => I")}), RuleApplicationError);
}

TEST_CASE("DProdR instances match every excision of the antecedent") {
    const HyperConfig d = parse_config("a, 0:b, c, [], 1:b, [], 2:b, a", sig());
    for (const char* goal : {"d@1e", "d@2e", "(b^1a)@1a", "(b^1a)@2a", "(b^1a)@3a"}) {
        const Type g = Ty(goal);
        const HSequent s{d, g};
        std::set<std::pair<std::string, std::string>> found;
        int n = 0;
        for (const auto& inst : enumerate_rule_instances(s))
            if (inst.rule == HRule::DProdR) {
                ++n;
                found.emplace(inst.premises[0].ant.str(), inst.premises[1].ant.str());
            }
        const auto expected = excisions(d, g.k(), g.left().sort(), g.right().sort());
        CHECK(n == static_cast<int>(found.size()));
        CHECK(found == expected);
        CHECK_FALSE(expected.empty());
    }
}

TEST_CASE("every enumerated instance concludes its sequent and shrinks the measure") {
    for (const char* text : {"c, c\\a => a", "0:e, [], 1:e => e", "0:e, a, 1:e => e@1a", "a, 0:b, c, [], 1:b, [], 2:b, a => d@2e",
                             "0:b^2a, [], 1:b^2a, [], 2:b^2a, c, 3:b^2a => b", "a/c, c.I, I => a.I",
                             "0:e!1e, 0:J, a, 1:J, 1:e!1e => J@1a", "[], 0:e^1c, [], 1:e^1c, [], 2:e^1c => J.(e^1c)"}) {
        const HSequent s = H(text);
        const int m = connective_count(s);
        for (const auto& inst : enumerate_rule_instances(s)) {
            CAPTURE(hrule_name(inst.rule));
            for (const auto& p : inst.premises)
                CHECK(connective_count(p) < m);
            if (inst.premises.empty())
                continue;
            CHECK(hd_conclude(inst.rule, inst.params, inst.premises) == s);
        }
    }
}

TEST_CASE("proof search") {
    for (const char* text : {"c, c\\a => a", "a => c/(a\\c)", "a/c, c/a => a/a", "Lambda => I", "0:e, a, 1:e => e@1a",
                             "a => (e^1a)!1e", "[] => J"}) {
        CAPTURE(text);
        Prover p;
        const auto d = p.prove(H(text));
        REQUIRE(d);
        CHECK(d->conclusion == H(text));
        CHECK_FALSE(check(*d));
    }
    CHECK_FALSE(prove(H("a, c => c.a")));
    CHECK_FALSE(prove(H("Lambda => a")));
}

TEST_CASE("worked example hypersequent") {
    const Term t = parse_term("((b^2a +1 d) +4 e) +3 (JJ + c\\a)", Signature{{"a", 0}, {"b", 2}, {"c", 0}, {"d", 2}, {"e", 1}});
    const HSequent s{sharp(t), Ty("((b@1d)@3e)^3c")};
    const auto d = prove(s);
    REQUIRE(d);
    CHECK_FALSE(check(*d));
    CHECK(d->rule == HRule::UpR);
    CHECK(d->params.k == 3);
}

TEST_CASE("sort-0 proof counts agree with an exhaustive Lambek enumeration") {
    const Signature l{{"p", 0}, {"q", 0}, {"r", 0}};
    auto seq = [&](std::vector<std::string> ant, std::string succ) {
        lambek::Seq a;
        HyperConfig g;
        for (const auto& t : ant) {
            a.push_back(parse_type(t, l));
            g = g + figure(a.back());
        }
        return std::pair{a, HSequent{g, parse_type(succ, l)}};
    };
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
        {{"p"}, "q/(p\\q)"},       {{"p/q", "q/r"}, "p/r"},        {{"p", "p\\q"}, "q"},
        {{"p.q"}, "p.q"},          {{"p\\p"}, "p\\p"},             {{}, "p/p"},
        {{"I", "p"}, "p.I"},       {{"p/p", "p/p"}, "p/p"},        {{"q/(p\\q)", "p\\q"}, "q"},
        {{"p/(q/q)"}, "p"},        {{"(p/p)/(p/p)", "p/p"}, "p/p"}, {{"p", "q"}, "q.p"}};
    for (const auto& [ant, succ] : cases) {
        auto [a, s] = seq(ant, succ);
        CAPTURE(s.str());
        lambek::Counter oracle(8);
        const long expected = oracle.count(a, s.succ);
        const auto proofs = prove_all(s, 1000);
        CHECK(static_cast<long>(proofs.size()) == expected);
        for (const auto& d : proofs)
            CHECK_FALSE(check(d));
    }
}
