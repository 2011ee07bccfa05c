#ifndef DCALC_HD_HPP
#define DCALC_HD_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dcalc/config.hpp"

namespace dcalc {

struct HSequent {
    HyperConfig ant;
    Type succ;

    std::string str() const;
    friend bool operator==(const HSequent& a, const HSequent& b) { return a.ant == b.ant && a.succ == b.succ; }
};

// Throws SortError unless sort(ant) = sort(succ).
HSequent make_hsequent(HyperConfig ant, Type succ);

// `<config> => <type>`.
HSequent parse_hsequent(std::string_view text, const Signature& sig);

enum class HRule {
    Id,
    Cut,
    UnderL,
    UnderR,
    OverL,
    OverR,
    ProdL,
    ProdR,
    IL,
    IR,
    DownL,
    DownR,
    UpL,
    UpR,
    DProdL,
    DProdR,
    JL,
    JR,
};

std::string_view hrule_name(HRule r);
std::optional<HRule> hrule_from_name(std::string_view name);
int hrule_arity(HRule r);

// Rule parameters. `loc` addresses, in the antecedent of the premise that
// carries the active material (the last premise):
//   UnderL, OverL, DownL, UpL, Cut - the item of the minor type (C, or A for Cut)
//   ProdL, DProdL                  - the item of the left component A
//   IL, JL                         - the insertion point / first item wrapped
//   UpR                            - the figure of B
// `k` is the wrap index of the discontinuous rules, `end` the end of the
// item range that JL wraps into the J occurrence.
struct HParams {
    std::optional<Locator> loc;
    int k = 0;
    int end = -1;

    friend bool operator==(const HParams&, const HParams&) = default;
};

struct HDerivation {
    HRule rule;
    HSequent conclusion;
    HParams params;
    std::vector<HDerivation> premises;

    friend bool operator==(const HDerivation&, const HDerivation&) = default;
};

class RuleApplicationError : public Error {
  public:
    using Error::Error;
};

// Conclusion obtained by applying the rule forward to the premises; throws
// RuleApplicationError when the premises do not fit the schema. The axioms
// (Id, IR, JR) have no forward reading; check handles them.
HSequent hd_conclude(HRule rule, const HParams& params, const std::vector<HSequent>& premises);

struct Violation {
    std::vector<int> node;  // premise indices from the root
    std::string rule;
    std::string message;

    std::string str() const;
};

// First violation in pre-order, if any. Cut is accepted.
std::optional<Violation> check(const HDerivation& d);

struct HInstance {
    HRule rule;
    HParams params;
    std::vector<HSequent> premises;
};

// Every cut-free rule instance whose conclusion is `s`, in search order.
std::vector<HInstance> enumerate_rule_instances(const HSequent& s);

// Total connective occurrences (units included) in a sequent.
int connective_count(const HSequent& s);

struct SearchStats {
    long sequents = 0;  // distinct sequents expanded
    long instances = 0;
};

class Prover {
  public:
    std::optional<HDerivation> prove(const HSequent& s);
    // Up to `limit` distinct cut-free proofs.
    std::vector<HDerivation> prove_all(const HSequent& s, int limit);
    const SearchStats& stats() const { return stats_; }

  private:
    const std::vector<HInstance>& instances(const HSequent& s, const std::string& key);
    const std::vector<HDerivation>& all_rec(const HSequent& s);

    int limit_ = -1;

    std::unordered_map<std::string, std::optional<HDerivation>> proved_;
    std::unordered_map<std::string, std::vector<HDerivation>> all_;
    std::unordered_map<std::string, std::vector<HInstance>> inst_;
    SearchStats stats_;
};

std::optional<HDerivation> prove(const HSequent& s);
std::vector<HDerivation> prove_all(const HSequent& s, int limit);

// Number of nodes.
int size(const HDerivation& d);

}  // namespace dcalc

#endif
