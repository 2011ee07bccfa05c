#ifndef DCALC_MD_HPP
#define DCALC_MD_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcalc/hd.hpp"
#include "dcalc/rewrite.hpp"

namespace dcalc {

struct MSequent {
    Term ant;
    Type succ;

    std::string str() const;
    friend bool operator==(const MSequent& a, const MSequent& b) { return a.ant == b.ant && a.succ == b.succ; }
};

MSequent make_msequent(Term ant, Type succ);

// `<term> -> <type>`.
MSequent parse_msequent(std::string_view text, const Signature& sig);

// Logical rules reuse the hD rule names; the path addresses the active
// subterm (the minor leaf B for the two-premise left rules, the replaced
// leaf for Cut, 𝕀/𝕁 for IL/JL, the A∘B / A∘_k B pair for ProdL/DProdL) in
// the premise that carries it. Structural steps carry their RuleApp, which
// rewrites the premise antecedent into the conclusion antecedent.
struct MParams {
    Path path;
    int k = 0;

    friend bool operator==(const MParams&, const MParams&) = default;
};

struct MDerivation {
    HRule rule = HRule::Id;
    std::optional<RuleApp> structural;
    MSequent conclusion;
    MParams params;
    std::vector<MDerivation> premises;

    bool is_structural() const { return structural.has_value(); }
    std::string rule_name() const;

    friend bool operator==(const MDerivation&, const MDerivation&) = default;
};

// Logical rule applied forward; throws RuleApplicationError on mismatch.
MSequent md_conclude(HRule rule, const MParams& params, const std::vector<MSequent>& premises);

std::optional<Violation> check_m(const MDerivation& d);

// Unary structural step on top of `premise`.
MDerivation structural_step(MDerivation premise, const RuleApp& app);

// Appends the steps of `trace` (which must start at d's antecedent).
MDerivation append_trace(MDerivation d, const RewriteTrace& trace);

// Node counts by kind.
int structural_steps(const MDerivation& d);
int logical_steps(const MDerivation& d);

// Structural rules used anywhere in the derivation.
std::set<Rule> structural_rules_used(const MDerivation& d);

}  // namespace dcalc

#endif
