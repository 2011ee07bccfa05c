#ifndef DCALC_TERM_HPP
#define DCALC_TERM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcalc/config.hpp"
#include "dcalc/type.hpp"

namespace dcalc {

enum class TermKind { UnitI, UnitJ, Leaf, Cat, Wrap };

struct TermNode;

// Structural term of the multimodal calculus: 𝕀, 𝕁, type leaves,
// concatenation ∘ and wrapping ∘_i. Immutable, shared, structurally hashed.
class Term {
  public:
    static Term unit_i();
    static Term unit_j();
    static Term leaf(Type t);
    static Term cat(Term l, Term r);
    // Requires 1 <= i <= sort(l).
    static Term wrap(int i, Term l, Term r);

    TermKind kind() const;
    int index() const;  // wrap index; 0 otherwise
    Term left() const;
    Term right() const;
    const Type& type() const;  // leaves only
    int sort() const;
    int leaves() const;  // leaf and unit nodes
    std::size_t hash() const;

    bool is_binary() const { return kind() == TermKind::Cat || kind() == TermKind::Wrap; }
    std::string str() const;

    friend bool operator==(const Term& a, const Term& b);

  private:
    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const TermNode> node_;
};

struct TermNode {
    TermKind kind;
    int index = 0;
    std::optional<Type> type;
    std::shared_ptr<const TermNode> left, right;
    int sort = 0;
    int leaves = 1;
    std::size_t hash = 0;
};

inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

// Total order on the printed form; used for deterministic tie-breaking.
bool term_less(const Term& a, const Term& b);

enum class Dir : std::uint8_t { Left = 0, Right = 1 };
using Path = std::vector<Dir>;

std::string path_str(const Path& p);

Term subterm(const Term& t, const Path& p);
bool has_path(const Term& t, const Path& p);
// Replaces the subterm at `p`; the replacement must have the same sort.
Term replace(const Term& t, const Path& p, const Term& replacement);
Path concat(const Path& prefix, const Path& suffix);
Path concat(const Path& prefix, Dir d);

// Paths of all leaves (in left-to-right order).
std::vector<Path> leaf_paths(const Term& t);

// Term syntax: `II`, `JJ`, `(T + T)`, `(T +k T)`, or a type.
Term parse_term(std::string_view text, const Signature& sig);

// (·)^♯: 𝕀 ↦ Λ, 𝕁 ↦ [], A ↦ A⃗, ∘ ↦ concatenation, ∘_i ↦ |_i.
HyperConfig sharp(const Term& t);

// Canonical term T_Δ with sharp(T_Δ) = Δ.
Term term_of_config(const HyperConfig& d);

// A leaf type not producible by the parsers; used to track one occurrence
// through sort-driven constructions.
Type marker_type(int sort);

// Location of the item contributed by the leaf at `p` within sharp(t).
Locator sharp_locator(const Term& t, const Path& p);

// Path of the leaf of term_of_config(d) built from the item at `loc`.
Path canonical_leaf_path(const HyperConfig& d, const Locator& loc);

// Path of the unique leaf carrying `ty`.
std::optional<Path> find_leaf(const Term& t, const Type& ty);

}  // namespace dcalc

template <> struct std::hash<dcalc::Term> {
    std::size_t operator()(const dcalc::Term& t) const noexcept { return t.hash(); }
};

#endif
