#ifndef DCALC_CONFIG_HPP
#define DCALC_CONFIG_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcalc/type.hpp"

namespace dcalc {

struct HyperConfig;

// One element of a hyperconfiguration list. An occurrence of a type of sort
// a > 0 carries exactly a gap configurations; its segments ⁰A..ᵃA enclose
// them in the string presentation.
struct Item {
    enum class Kind { Leaf, Separator, Occurrence };

    Kind kind = Kind::Separator;
    std::optional<Type> type;
    std::vector<HyperConfig> gaps;

    static Item leaf(Type t);
    static Item separator() { return Item{}; }
    static Item occurrence(Type t, std::vector<HyperConfig> gaps);
    // Leaf for sort 0, otherwise an occurrence with the given gaps.
    static Item of_type(Type t, std::vector<HyperConfig> gaps);

    bool is_separator() const { return kind == Kind::Separator; }
    const Type& ty() const { return *type; }
};

// Tree form of the string-based antecedent syntax.
struct HyperConfig {
    std::vector<Item> items;

    HyperConfig() = default;
    explicit HyperConfig(std::vector<Item> it) : items(std::move(it)) {}

    bool empty() const { return items.empty(); }
    int sort() const;
    // Connective occurrences of all types in the configuration.
    int connectives() const;

    // Flat string form: `k:A` segments, `[]`, sort-0 types; `Lambda` if empty.
    std::string str() const;
    // Brace form: `{ A : g1 ; ... ; ga }` for occurrences.
    std::string tree_str() const;

    static HyperConfig separator();
};

bool operator==(const Item& a, const Item& b);
bool operator==(const HyperConfig& a, const HyperConfig& b);
inline bool operator!=(const HyperConfig& a, const HyperConfig& b) { return !(a == b); }

// Concatenation.
HyperConfig operator+(const HyperConfig& a, const HyperConfig& b);

struct Token {
    enum class Kind { Type0, Separator, Segment };

    Kind kind = Kind::Separator;
    std::optional<Type> type;
    int index = 0;

    static Token sep() { return Token{}; }
    static Token type0(Type t) { return Token{Kind::Type0, std::move(t), 0}; }
    static Token segment(Type t, int i) { return Token{Kind::Segment, std::move(t), i}; }
    std::string str() const;
};

bool operator==(const Token& a, const Token& b);

std::vector<Token> flatten(const HyperConfig& g);
HyperConfig parse_flat(const std::vector<Token>& tokens);
std::string tokens_str(const std::vector<Token>& tokens);

// A⃗: the type itself at sort 0, otherwise its segments around a separators.
HyperConfig figure(const Type& t);
Item figure_item(const Type& t);
bool is_figure_item(const Item& item);

// Γ|_k Φ: replaces the k-th separator (left-to-right in flat order,
// counting separators nested in gaps) by Φ.
HyperConfig wrap_at(const HyperConfig& g, int k, const HyperConfig& f);

// Γ ⊗ ⟨Φ1..Φn⟩: simultaneous replacement of the n separators of Γ.
HyperConfig generalized_wrap(const HyperConfig& g, const std::vector<HyperConfig>& fills);

// Addresses of item lists inside a configuration: a sequence of
// (item index, gap index) steps from the top-level list.
using ListPath = std::vector<std::pair<int, int>>;

struct Locator {
    ListPath list;
    int index = 0;

    friend bool operator==(const Locator&, const Locator&) = default;
    friend auto operator<=>(const Locator&, const Locator&) = default;
};

const std::vector<Item>& list_at(const HyperConfig& g, const ListPath& path);
std::vector<Item>& list_at(HyperConfig& g, const ListPath& path);
const Item& item_at(const HyperConfig& g, const Locator& loc);

// Every list path in the configuration, top-level list first, in flat order.
std::vector<ListPath> all_lists(const HyperConfig& g);
// Every item position, in flat (pre-)order.
std::vector<Locator> all_items(const HyperConfig& g);

// Location of the k-th separator.
Locator separator_location(const HyperConfig& g, int k);
// Number of separators strictly before the item at `loc` in flat order.
int separators_before(const HyperConfig& g, const Locator& loc);

// Replaces items [begin, end) of the list at `path` by `replacement`.
HyperConfig splice(const HyperConfig& g, const ListPath& path, int begin, int end, const std::vector<Item>& replacement);

// The unique item whose type is exactly `t`, if any.
std::optional<Locator> find_type_item(const HyperConfig& g, const Type& t);

// Parses either the flat segment form (`0:b^2a, [], 1:b^2a`) or the brace
// form, or a mix of both; `Lambda` (or blank text) is the empty config.
HyperConfig parse_config(std::string_view text, const Signature& sig);
std::vector<Token> parse_tokens(std::string_view text, const Signature& sig);

}  // namespace dcalc

#endif
