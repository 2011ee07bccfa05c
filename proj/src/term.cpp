#include "dcalc/term.hpp"

#include <cctype>

namespace dcalc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term Term::unit_i() {
    static const Term t = [] {
        auto n = std::make_shared<TermNode>();
        n->kind = TermKind::UnitI;
        n->hash = 0x1111;
        return Term(std::move(n));
    }();
    return t;
}

Term Term::unit_j() {
    static const Term t = [] {
        auto n = std::make_shared<TermNode>();
        n->kind = TermKind::UnitJ;
        n->sort = 1;
        n->hash = 0x2222;
        return Term(std::move(n));
    }();
    return t;
}

Term Term::leaf(Type t) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Leaf;
    n->sort = t.sort();
    n->hash = mix(0x3333, t.hash());
    n->type = std::move(t);
    return Term(std::move(n));
}

Term Term::cat(Term l, Term r) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Cat;
    n->sort = l.sort() + r.sort();
    n->leaves = l.leaves() + r.leaves();
    n->hash = mix(mix(0x4444, l.hash()), r.hash());
    n->left = std::move(l.node_);
    n->right = std::move(r.node_);
    return Term(std::move(n));
}

Term Term::wrap(int i, Term l, Term r) {
    if (l.sort() < 1 || i < 1 || i > l.sort())
        throw SortError("wrap index " + std::to_string(i) + " out of range 1.." + std::to_string(l.sort()) + " in (" +
                        l.str() + " +" + std::to_string(i) + " " + r.str() + ")");
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Wrap;
    n->index = i;
    n->sort = l.sort() + r.sort() - 1;
    n->leaves = l.leaves() + r.leaves();
    n->hash = mix(mix(mix(0x5555, static_cast<std::size_t>(i)), l.hash()), r.hash());
    n->left = std::move(l.node_);
    n->right = std::move(r.node_);
    return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
int Term::index() const { return node_->index; }
Term Term::left() const { return Term(node_->left); }
Term Term::right() const { return Term(node_->right); }
const Type& Term::type() const { return *node_->type; }
int Term::sort() const { return node_->sort; }
int Term::leaves() const { return node_->leaves; }
std::size_t Term::hash() const { return node_->hash; }

namespace {

void print(const TermNode& n, std::string& out) {
    switch (n.kind) {
        case TermKind::UnitI:
            out += "II";
            return;
        case TermKind::UnitJ:
            out += "JJ";
            return;
        case TermKind::Leaf:
            out += n.type->str();
            return;
        case TermKind::Cat:
        case TermKind::Wrap:
            out += '(';
            print(*n.left, out);
            out += " +";
            if (n.kind == TermKind::Wrap)
                out += std::to_string(n.index);
            out += ' ';
            print(*n.right, out);
            out += ')';
            return;
    }
}

bool equal(const TermNode* a, const TermNode* b) {
    if (a == b)
        return true;
    if (a->hash != b->hash || a->kind != b->kind || a->index != b->index || a->sort != b->sort)
        return false;
    switch (a->kind) {
        case TermKind::UnitI:
        case TermKind::UnitJ:
            return true;
        case TermKind::Leaf:
            return *a->type == *b->type;
        default:
            return equal(a->left.get(), b->left.get()) && equal(a->right.get(), b->right.get());
    }
}

}  // namespace

std::string Term::str() const {
    std::string out;
    print(*node_, out);
    return out;
}

bool operator==(const Term& a, const Term& b) {
    return equal(a.node_.get(), b.node_.get());
}

bool term_less(const Term& a, const Term& b) {
    return a.str() < b.str();
}

// ---------------------------------------------------------------------------
// Paths

std::string path_str(const Path& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            s += ',';
        s += p[i] == Dir::Left ? '0' : '1';
    }
    return s + "]";
}

bool has_path(const Term& t, const Path& p) {
    Term cur = t;
    for (Dir d : p) {
        if (!cur.is_binary())
            return false;
        cur = d == Dir::Left ? cur.left() : cur.right();
    }
    return true;
}

Term subterm(const Term& t, const Path& p) {
    Term cur = t;
    for (Dir d : p) {
        if (!cur.is_binary())
            throw Error("path " + path_str(p) + " leaves the term " + t.str());
        cur = d == Dir::Left ? cur.left() : cur.right();
    }
    return cur;
}

namespace {

Term rebuild(const Term& t, const Path& p, std::size_t depth, const Term& repl) {
    if (depth == p.size())
        return repl;
    if (!t.is_binary())
        throw Error("path " + path_str(p) + " leaves the term");
    Term l = t.left(), r = t.right();
    if (p[depth] == Dir::Left)
        l = rebuild(l, p, depth + 1, repl);
    else
        r = rebuild(r, p, depth + 1, repl);
    return t.kind() == TermKind::Cat ? Term::cat(l, r) : Term::wrap(t.index(), l, r);
}

void collect_leaves(const Term& t, Path& cur, std::vector<Path>& out) {
    if (t.kind() == TermKind::Leaf) {
        out.push_back(cur);
        return;
    }
    if (!t.is_binary())
        return;
    cur.push_back(Dir::Left);
    collect_leaves(t.left(), cur, out);
    cur.back() = Dir::Right;
    collect_leaves(t.right(), cur, out);
    cur.pop_back();
}

}  // namespace

Term replace(const Term& t, const Path& p, const Term& replacement) {
    const Term old = subterm(t, p);
    if (old.sort() != replacement.sort())
        throw SortError("replacement of sort " + std::to_string(replacement.sort()) + " for subterm of sort " +
                        std::to_string(old.sort()));
    return rebuild(t, p, 0, replacement);
}

Path concat(const Path& prefix, const Path& suffix) {
    Path p = prefix;
    p.insert(p.end(), suffix.begin(), suffix.end());
    return p;
}

Path concat(const Path& prefix, Dir d) {
    Path p = prefix;
    p.push_back(d);
    return p;
}

std::vector<Path> leaf_paths(const Term& t) {
    std::vector<Path> out;
    Path cur;
    collect_leaves(t, cur, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class TermParser {
  public:
    TermParser(std::string_view s, const Signature& sig) : s_(s), sig_(sig) {}

    Term term() {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of term", pos_);
        if (word("II"))
            return Term::unit_i();
        if (word("JJ"))
            return Term::unit_j();
        if (s_[pos_] == '(' && composite_ahead())
            return composite();
        const std::size_t start = pos_;
        try {
            return Term::leaf(parse_type_prefix(s_, pos_, sig_));
        } catch (const SortError& e) {
            throw ParseError(e.what(), start);
        }
    }

    void finish() {
        skip();
        if (pos_ != s_.size())
            throw ParseError("trailing input after term", pos_);
    }

  private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool word(std::string_view w) {
        if (s_.substr(pos_, w.size()) != w)
            return false;
        const std::size_t after = pos_ + w.size();
        if (after < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == '_'))
            return false;
        pos_ = after;
        return true;
    }

    // A '(' opens a composite term iff a '+' occurs at depth one before the
    // matching ')'; otherwise it is a parenthesized type.
    bool composite_ahead() const {
        int depth = 0;
        for (std::size_t i = pos_; i < s_.size(); ++i) {
            if (s_[i] == '(')
                ++depth;
            else if (s_[i] == ')') {
                if (--depth == 0)
                    return false;
            } else if (s_[i] == '+' && depth == 1)
                return true;
        }
        return false;
    }

    Term composite() {
        const std::size_t start = pos_;
        ++pos_;
        Term l = term();
        skip();
        if (pos_ >= s_.size() || s_[pos_] != '+')
            throw ParseError("expected '+'", pos_);
        ++pos_;
        int k = 0;
        bool wrap = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            wrap = true;
            k = k * 10 + (s_[pos_] - '0');
            if (k > 1000000)
                throw ParseError("wrap index too large", pos_);
            ++pos_;
        }
        Term r = term();
        skip();
        if (pos_ >= s_.size() || s_[pos_] != ')')
            throw ParseError("expected ')'", pos_);
        ++pos_;
        if (!wrap)
            return Term::cat(l, r);
        try {
            return Term::wrap(k, l, r);
        } catch (const SortError& e) {
            throw ParseError(e.what(), start);
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    const Signature& sig_;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) {
    TermParser p(text, sig);
    Term t = p.term();
    try {
        p.finish();
    } catch (const ParseError&) {
        // Allow the outermost parentheses to be omitted.
        const std::string wrapped = "(" + std::string(text) + ")";
        TermParser outer(wrapped, sig);
        try {
            Term u = outer.term();
            outer.finish();
            return u;
        } catch (const ParseError&) {
        }
        throw;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Sharp and canonical terms

HyperConfig sharp(const Term& t) {
    switch (t.kind()) {
        case TermKind::UnitI:
            return HyperConfig{};
        case TermKind::UnitJ:
            return HyperConfig::separator();
        case TermKind::Leaf:
            return figure(t.type());
        case TermKind::Cat:
            return sharp(t.left()) + sharp(t.right());
        case TermKind::Wrap:
            return wrap_at(sharp(t.left()), t.index(), sharp(t.right()));
    }
    return HyperConfig{};
}

namespace {

Term canonical(const std::vector<Item>& items, std::size_t from) {
    if (from == items.size())
        return Term::unit_i();
    const Item& it = items[from];
    Term rest = canonical(items, from + 1);
    switch (it.kind) {
        case Item::Kind::Separator:
            return Term::cat(Term::unit_j(), rest);
        case Item::Kind::Leaf:
            return Term::cat(Term::leaf(it.ty()), rest);
        case Item::Kind::Occurrence:
            break;
    }
    Term w = Term::leaf(it.ty());
    int at = 1;
    for (const auto& gap : it.gaps) {
        w = Term::wrap(at, w, canonical(gap.items, 0));
        at += gap.sort();
    }
    return Term::cat(w, rest);
}

}  // namespace

Term term_of_config(const HyperConfig& d) {
    return canonical(d.items, 0);
}

Type marker_type(int sort) {
    return Type::atom("#marker", sort);
}

Locator sharp_locator(const Term& t, const Path& p) {
    const Term leaf = subterm(t, p);
    if (leaf.kind() != TermKind::Leaf)
        throw Error("path " + path_str(p) + " does not address a leaf");
    const Type m = marker_type(leaf.sort());
    auto loc = find_type_item(sharp(replace(t, p, Term::leaf(m))), m);
    if (!loc)
        throw Error("marker lost in sharp image");
    return *loc;
}

std::optional<Path> find_leaf(const Term& t, const Type& ty) {
    std::optional<Path> found;
    for (const auto& p : leaf_paths(t)) {
        if (subterm(t, p).type() == ty) {
            if (found)
                return std::nullopt;
            found = p;
        }
    }
    return found;
}

Path canonical_leaf_path(const HyperConfig& d, const Locator& loc) {
    const Item& it = item_at(d, loc);
    if (!it.type)
        throw Error("locator addresses a separator");
    const Type m = marker_type(it.ty().sort());
    Item marked = it;
    marked.type = m;
    auto p = find_leaf(term_of_config(splice(d, loc.list, loc.index, loc.index + 1, {marked})), m);
    if (!p)
        throw Error("marker lost in canonical term");
    return *p;
}

}  // namespace dcalc
