#include "dcalc/config.hpp"

#include <cctype>
#include <functional>

namespace dcalc {

Item Item::leaf(Type t) {
    if (t.sort() != 0)
        throw SortError("leaf item requires a sort-0 type, got " + t.str());
    Item it;
    it.kind = Kind::Leaf;
    it.type = std::move(t);
    return it;
}

Item Item::occurrence(Type t, std::vector<HyperConfig> gaps) {
    if (t.sort() < 1)
        throw SortError("occurrence item requires a type of positive sort, got " + t.str());
    if (static_cast<int>(gaps.size()) != t.sort())
        throw SortError("occurrence of " + t.str() + " needs " + std::to_string(t.sort()) + " gaps, got " +
                        std::to_string(gaps.size()));
    Item it;
    it.kind = Kind::Occurrence;
    it.type = std::move(t);
    it.gaps = std::move(gaps);
    return it;
}

Item Item::of_type(Type t, std::vector<HyperConfig> gaps) {
    if (t.sort() == 0) {
        if (!gaps.empty())
            throw SortError("sort-0 type " + t.str() + " takes no gaps");
        return leaf(std::move(t));
    }
    return occurrence(std::move(t), std::move(gaps));
}

HyperConfig HyperConfig::separator() {
    return HyperConfig({Item::separator()});
}

int HyperConfig::sort() const {
    int n = 0;
    for (const auto& it : items) {
        if (it.kind == Item::Kind::Separator)
            ++n;
        else
            for (const auto& g : it.gaps)
                n += g.sort();
    }
    return n;
}

int HyperConfig::connectives() const {
    int n = 0;
    for (const auto& it : items) {
        if (it.type)
            n += it.type->connectives();
        for (const auto& g : it.gaps)
            n += g.connectives();
    }
    return n;
}

std::string HyperConfig::str() const {
    if (items.empty())
        return "Lambda";
    return tokens_str(flatten(*this));
}

std::string HyperConfig::tree_str() const {
    if (items.empty())
        return "Lambda";
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ", ";
        const Item& it = items[i];
        switch (it.kind) {
            case Item::Kind::Separator:
                out += "[]";
                break;
            case Item::Kind::Leaf:
                out += it.ty().str();
                break;
            case Item::Kind::Occurrence:
                out += "{" + it.ty().str() + " : ";
                for (std::size_t g = 0; g < it.gaps.size(); ++g) {
                    if (g)
                        out += " ; ";
                    out += it.gaps[g].tree_str();
                }
                out += "}";
                break;
        }
    }
    return out;
}

bool operator==(const Item& a, const Item& b) {
    if (a.kind != b.kind)
        return false;
    if (a.kind == Item::Kind::Separator)
        return true;
    return *a.type == *b.type && a.gaps == b.gaps;
}

bool operator==(const HyperConfig& a, const HyperConfig& b) {
    return a.items == b.items;
}

HyperConfig operator+(const HyperConfig& a, const HyperConfig& b) {
    HyperConfig r = a;
    r.items.insert(r.items.end(), b.items.begin(), b.items.end());
    return r;
}

// ---------------------------------------------------------------------------
// Tokens

std::string Token::str() const {
    switch (kind) {
        case Kind::Separator:
            return "[]";
        case Kind::Type0:
            return type->str();
        case Kind::Segment:
            break;
    }
    return std::to_string(index) + ":" + type->str();
}

bool operator==(const Token& a, const Token& b) {
    if (a.kind != b.kind)
        return false;
    if (a.kind == Token::Kind::Separator)
        return true;
    return a.index == b.index && *a.type == *b.type;
}

namespace {

void flatten_into(const HyperConfig& g, std::vector<Token>& out) {
    for (const auto& it : g.items) {
        switch (it.kind) {
            case Item::Kind::Separator:
                out.push_back(Token::sep());
                break;
            case Item::Kind::Leaf:
                out.push_back(Token::type0(it.ty()));
                break;
            case Item::Kind::Occurrence:
                out.push_back(Token::segment(it.ty(), 0));
                for (std::size_t g2 = 0; g2 < it.gaps.size(); ++g2) {
                    flatten_into(it.gaps[g2], out);
                    out.push_back(Token::segment(it.ty(), static_cast<int>(g2) + 1));
                }
                break;
        }
    }
}

// Recursive descent over the flat grammar. A gap ends at the first segment
// token with a positive index, which must close the innermost open occurrence.
struct FlatParser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;

    HyperConfig config(bool nested) {
        HyperConfig g;
        while (pos < toks.size()) {
            const Token& t = toks[pos];
            if (t.kind == Token::Kind::Separator) {
                g.items.push_back(Item::separator());
                ++pos;
            } else if (t.kind == Token::Kind::Type0) {
                if (t.type->sort() != 0)
                    throw ParseError("type " + t.type->str() + " of sort " + std::to_string(t.type->sort()) +
                                         " must be written as segments",
                                     pos);
                g.items.push_back(Item::leaf(*t.type));
                ++pos;
            } else if (t.index == 0) {
                g.items.push_back(occurrence());
            } else {
                if (!nested)
                    throw ParseError("segment " + t.str() + " has no opening segment 0:" + t.type->str(), pos);
                break;
            }
        }
        return g;
    }

    Item occurrence() {
        const Token& open = toks[pos];
        const Type t = *open.type;
        if (t.sort() < 1)
            throw ParseError("segment token for sort-0 type " + t.str(), pos);
        ++pos;
        std::vector<HyperConfig> gaps;
        for (int i = 1; i <= t.sort(); ++i) {
            gaps.push_back(config(true));
            if (pos >= toks.size())
                throw ParseError("missing segment " + std::to_string(i) + ":" + t.str(), pos);
            const Token& close = toks[pos];
            if (!(*close.type == t) || close.index != i)
                throw ParseError("expected segment " + std::to_string(i) + ":" + t.str() + ", found " + close.str(), pos);
            ++pos;
        }
        return Item::occurrence(t, std::move(gaps));
    }
};

}  // namespace

std::vector<Token> flatten(const HyperConfig& g) {
    std::vector<Token> out;
    flatten_into(g, out);
    return out;
}

HyperConfig parse_flat(const std::vector<Token>& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.kind == Token::Kind::Segment && (t.index < 0 || t.index > t.type->sort()))
            throw ParseError("segment index " + std::to_string(t.index) + " out of range for " + t.type->str(), i);
    }
    FlatParser p{tokens};
    return p.config(false);
}

std::string tokens_str(const std::vector<Token>& tokens) {
    if (tokens.empty())
        return "Lambda";
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i)
            out += ", ";
        out += tokens[i].str();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Figures and wrapping

Item figure_item(const Type& t) {
    if (t.sort() == 0)
        return Item::leaf(t);
    return Item::occurrence(t, std::vector<HyperConfig>(static_cast<std::size_t>(t.sort()), HyperConfig::separator()));
}

HyperConfig figure(const Type& t) {
    return HyperConfig({figure_item(t)});
}

bool is_figure_item(const Item& item) {
    if (item.kind == Item::Kind::Leaf)
        return true;
    if (item.kind != Item::Kind::Occurrence)
        return false;
    for (const auto& g : item.gaps)
        if (g.items.size() != 1 || !g.items[0].is_separator())
            return false;
    return true;
}

namespace {

// Replaces separators numbered (1-based) by `fill(n)`; a null return keeps
// the separator.
void substitute(const std::vector<Item>& in, std::vector<Item>& out, int& counter,
                const std::function<const HyperConfig*(int)>& fill) {
    for (const auto& it : in) {
        if (it.kind == Item::Kind::Separator) {
            ++counter;
            if (const HyperConfig* f = fill(counter))
                out.insert(out.end(), f->items.begin(), f->items.end());
            else
                out.push_back(it);
        } else if (it.kind == Item::Kind::Leaf) {
            out.push_back(it);
        } else {
            Item copy;
            copy.kind = it.kind;
            copy.type = it.type;
            copy.gaps.reserve(it.gaps.size());
            for (const auto& g : it.gaps) {
                HyperConfig ng;
                substitute(g.items, ng.items, counter, fill);
                copy.gaps.push_back(std::move(ng));
            }
            out.push_back(std::move(copy));
        }
    }
}

}  // namespace

HyperConfig wrap_at(const HyperConfig& g, int k, const HyperConfig& f) {
    const int s = g.sort();
    if (k < 1 || k > s)
        throw Error("wrap index " + std::to_string(k) + " out of range 1.." + std::to_string(s));
    HyperConfig out;
    int counter = 0;
    substitute(g.items, out.items, counter, [&](int n) { return n == k ? &f : nullptr; });
    return out;
}

HyperConfig generalized_wrap(const HyperConfig& g, const std::vector<HyperConfig>& fills) {
    const int s = g.sort();
    if (static_cast<int>(fills.size()) != s)
        throw Error("generalized wrap needs " + std::to_string(s) + " fillers, got " + std::to_string(fills.size()));
    HyperConfig out;
    int counter = 0;
    substitute(g.items, out.items, counter, [&](int n) { return &fills[static_cast<std::size_t>(n - 1)]; });
    return out;
}

// ---------------------------------------------------------------------------
// Locations

const std::vector<Item>& list_at(const HyperConfig& g, const ListPath& path) {
    const HyperConfig* cur = &g;
    for (const auto& [item, gap] : path) {
        if (item < 0 || item >= static_cast<int>(cur->items.size()))
            throw Error("list path leaves the configuration");
        const Item& it = cur->items[static_cast<std::size_t>(item)];
        if (gap < 0 || gap >= static_cast<int>(it.gaps.size()))
            throw Error("list path names a missing gap");
        cur = &it.gaps[static_cast<std::size_t>(gap)];
    }
    return cur->items;
}

std::vector<Item>& list_at(HyperConfig& g, const ListPath& path) {
    return const_cast<std::vector<Item>&>(list_at(static_cast<const HyperConfig&>(g), path));
}

const Item& item_at(const HyperConfig& g, const Locator& loc) {
    const auto& list = list_at(g, loc.list);
    if (loc.index < 0 || loc.index >= static_cast<int>(list.size()))
        throw Error("locator index out of range");
    return list[static_cast<std::size_t>(loc.index)];
}

namespace {

void collect(const HyperConfig& g, ListPath& path, std::vector<ListPath>* lists, std::vector<Locator>* items) {
    if (lists)
        lists->push_back(path);
    for (int i = 0; i < static_cast<int>(g.items.size()); ++i) {
        if (items)
            items->push_back(Locator{path, i});
        const Item& it = g.items[static_cast<std::size_t>(i)];
        for (int k = 0; k < static_cast<int>(it.gaps.size()); ++k) {
            path.emplace_back(i, k);
            collect(it.gaps[static_cast<std::size_t>(k)], path, lists, items);
            path.pop_back();
        }
    }
}

}  // namespace

std::vector<ListPath> all_lists(const HyperConfig& g) {
    std::vector<ListPath> out;
    ListPath path;
    collect(g, path, &out, nullptr);
    return out;
}

std::vector<Locator> all_items(const HyperConfig& g) {
    std::vector<Locator> out;
    ListPath path;
    collect(g, path, nullptr, &out);
    return out;
}

Locator separator_location(const HyperConfig& g, int k) {
    int n = 0;
    for (const auto& loc : all_items(g))
        if (item_at(g, loc).is_separator() && ++n == k)
            return loc;
    throw Error("configuration has no separator number " + std::to_string(k));
}

int separators_before(const HyperConfig& g, const Locator& loc) {
    // Separators before an item are those in the flat prefix: in earlier
    // sibling lists' content along the path, plus earlier items of each list.
    int n = 0;
    const HyperConfig* cur = &g;
    auto count_items = [](const std::vector<Item>& items, int upto) {
        int c = 0;
        for (int i = 0; i < upto; ++i) {
            const Item& it = items[static_cast<std::size_t>(i)];
            if (it.is_separator())
                ++c;
            else
                for (const auto& gap : it.gaps)
                    c += gap.sort();
        }
        return c;
    };
    for (const auto& [item, gap] : loc.list) {
        n += count_items(cur->items, item);
        const Item& it = cur->items[static_cast<std::size_t>(item)];
        for (int k = 0; k < gap; ++k)
            n += it.gaps[static_cast<std::size_t>(k)].sort();
        cur = &it.gaps[static_cast<std::size_t>(gap)];
    }
    return n + count_items(cur->items, loc.index);
}

HyperConfig splice(const HyperConfig& g, const ListPath& path, int begin, int end, const std::vector<Item>& replacement) {
    HyperConfig out = g;
    auto& list = list_at(out, path);
    if (begin < 0 || end < begin || end > static_cast<int>(list.size()))
        throw Error("splice range out of bounds");
    list.erase(list.begin() + begin, list.begin() + end);
    list.insert(list.begin() + begin, replacement.begin(), replacement.end());
    return out;
}

std::optional<Locator> find_type_item(const HyperConfig& g, const Type& t) {
    std::optional<Locator> found;
    for (const auto& loc : all_items(g)) {
        const Item& it = item_at(g, loc);
        if (it.type && *it.type == t) {
            if (found)
                return std::nullopt;
            found = loc;
        }
    }
    return found;
}

// ---------------------------------------------------------------------------
// Text parser: flat tokens and brace occurrences, expanded to tokens.

namespace {

class ConfigLexer {
  public:
    ConfigLexer(std::string_view s, const Signature& sig) : s_(s), sig_(sig) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        skip();
        if (at_end())
            return out;
        if (at_word("Lambda")) {
            pos_ += 6;
            skip();
            if (!at_end())
                throw ParseError("'Lambda' must stand alone", pos_);
            return out;
        }
        items(out, /*in_braces=*/false);
        skip();
        if (!at_end())
            throw ParseError("unexpected input in configuration", pos_);
        return out;
    }

  private:
    bool at_end() const { return pos_ >= s_.size(); }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool at_word(std::string_view w) const {
        if (s_.substr(pos_, w.size()) != w)
            return false;
        const std::size_t after = pos_ + w.size();
        return after >= s_.size() || !(std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == '_');
    }

    // Comma-separated items up to a terminator (end, ';' or '}' in braces).
    void items(std::vector<Token>& out, bool in_braces) {
        skip();
        if (in_braces && (at_end() || s_[pos_] == ';' || s_[pos_] == '}'))
            return;
        if (in_braces && at_word("Lambda")) {
            pos_ += 6;
            return;
        }
        for (;;) {
            item(out);
            skip();
            if (!at_end() && s_[pos_] == ',') {
                ++pos_;
                continue;
            }
            return;
        }
    }

    void item(std::vector<Token>& out) {
        skip();
        if (at_end())
            throw ParseError("expected a configuration item", pos_);
        const char ch = s_[pos_];
        if (ch == '[') {
            ++pos_;
            skip();
            if (at_end() || s_[pos_] != ']')
                throw ParseError("expected ']'", pos_);
            ++pos_;
            out.push_back(Token::sep());
            return;
        }
        if (ch == '{') {
            const std::size_t start = pos_;
            ++pos_;
            Type t = parse_type_prefix(s_, pos_, sig_);
            skip();
            if (t.sort() < 1)
                throw ParseError("brace occurrence needs a type of positive sort", start);
            if (at_end() || s_[pos_] != ':')
                throw ParseError("expected ':' after occurrence type", pos_);
            ++pos_;
            out.push_back(Token::segment(t, 0));
            for (int g = 1; g <= t.sort(); ++g) {
                items(out, true);
                skip();
                out.push_back(Token::segment(t, g));
                if (g < t.sort()) {
                    if (at_end() || s_[pos_] != ';')
                        throw ParseError("occurrence of " + t.str() + " needs " + std::to_string(t.sort()) + " gaps",
                                         pos_);
                    ++pos_;
                }
            }
            skip();
            if (at_end() || s_[pos_] != '}')
                throw ParseError("expected '}'", pos_);
            ++pos_;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::size_t start = pos_;
            int idx = 0;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                idx = idx * 10 + (s_[pos_] - '0');
                ++pos_;
            }
            skip();
            if (at_end() || s_[pos_] != ':')
                throw ParseError("expected ':' after segment index", pos_);
            ++pos_;
            Type t = parse_type_prefix(s_, pos_, sig_);
            if (t.sort() == 0)
                throw ParseError("segment token for sort-0 type " + t.str(), start);
            if (idx > t.sort())
                throw ParseError("segment index " + std::to_string(idx) + " exceeds sort of " + t.str(), start);
            out.push_back(Token::segment(t, idx));
            return;
        }
        const std::size_t start = pos_;
        Type t = parse_type_prefix(s_, pos_, sig_);
        if (t.sort() != 0)
            throw ParseError("type " + t.str() + " has sort " + std::to_string(t.sort()) +
                                 "; write it as segments or as a brace occurrence",
                             start);
        out.push_back(Token::type0(t));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    const Signature& sig_;
};

}  // namespace

std::vector<Token> parse_tokens(std::string_view text, const Signature& sig) {
    return ConfigLexer(text, sig).run();
}

HyperConfig parse_config(std::string_view text, const Signature& sig) {
    return parse_flat(parse_tokens(text, sig));
}

}  // namespace dcalc
