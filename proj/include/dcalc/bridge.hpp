#ifndef DCALC_BRIDGE_HPP
#define DCALC_BRIDGE_HPP

#include <optional>

#include "dcalc/hd.hpp"
#include "dcalc/md.hpp"
#include "dcalc/structterm.hpp"

namespace dcalc {

// An mD sequent and an hD sequent related by the sharp translation.
struct Correspondence {
    MSequent m;
    HSequent h;

    bool holds() const { return sharp(m.ant) == h.ant && m.succ == h.succ; }
};

// hD derivation of sharp(d.conclusion): logical nodes map rule for rule,
// structural steps are erased. Throws RuleApplicationError on a node whose
// active material cannot be located.
HDerivation lower(const MDerivation& d);

struct LiftOptions {
    int budget = kDefaultBudget;  // per normalize / extract call
};

// mD derivation ending at `target` (default: term_of_config of the
// antecedent). Throws Error if sharp(target) differs from the antecedent,
// BudgetError when a normalize budget runs out.
MDerivation lift(const HDerivation& d, const std::optional<Term>& target = std::nullopt,
                 const LiftOptions& opts = {});

bool correspondence_check(const MDerivation& m, const HDerivation& h);

// Proof search through hD; the result ends exactly at `s`.
std::optional<MDerivation> prove_m(const MSequent& s, const LiftOptions& opts = {});

}  // namespace dcalc

#endif
