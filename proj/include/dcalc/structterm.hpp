#ifndef DCALC_STRUCTTERM_HPP
#define DCALC_STRUCTTERM_HPP

#include <cstdint>
#include <optional>
#include <unordered_set>

#include "dcalc/rewrite.hpp"

namespace dcalc {

class BudgetError : public Error {
  public:
    using Error::Error;
};

class ExtractError : public Error {
  public:
    using Error::Error;
};

inline constexpr int kDefaultBudget = 10000;

// T ~* S, decided by identity of the sharp images.
bool equiv(const Term& t, const Term& s);

// Terms reachable from `t` in at most `depth` single rule applications
// (either direction). Terms with more than `max_leaves` leaf and unit nodes
// are not explored; 0 means leaves(t) + 2.
std::unordered_set<Term> reachable_set(const Term& t, int depth, int max_leaves = 0);

// Breadth-first reachability of `s` from `t`; size cap as for reachable_set,
// defaulting to max(leaves(t), leaves(s)) + 2.
bool bounded_equiv_oracle(const Term& t, const Term& s, int depth, int max_leaves = 0);

// Trace from `t` to term_of_config(sharp(t)). Throws BudgetError if more
// than `budget` steps would be needed.
RewriteTrace normalize(const Term& t, int budget = kDefaultBudget);

// Trace from `t` to `s`; throws Error if they are not equivalent.
RewriteTrace connect(const Term& t, const Term& s, int budget = kDefaultBudget);

// Index i with sharp(t) = Δ|_i A⃗ for the leaf A at `at`, if visible.
std::optional<int> extractable(const Term& t, const Path& at);

struct Extraction {
    Term rest;  // T′
    int index;  // i
    RewriteTrace trace;  // ends at T′ +i A
};

struct ExtractOptions {
    // Take the direct split-wrap step when the leaf is an immediate child of
    // a concatenation, and stop early on terms already of the form T′ +k A.
    bool shortcuts = true;
    int budget = kDefaultBudget;
};

// Rewrites t into T′ +i A for the leaf A at `at`. Throws ExtractError when
// the occurrence is not visible.
Extraction extract(const Term& t, const Path& at, const ExtractOptions& opts = {});

// Extracts repeatedly from randomly pre-rewritten variants of `t`, with and
// without shortcuts; true iff every run yields the same index and a T′ with
// the same sharp image.
bool uniqueness_check(const Term& t, const Path& at, int trials, std::uint64_t seed = 1);

}  // namespace dcalc

#endif
