#include "dcalc/hd.hpp"

#include <array>
#include <functional>

namespace dcalc {

std::string HSequent::str() const {
    return ant.str() + " => " + succ.str();
}

HSequent make_hsequent(HyperConfig ant, Type succ) {
    if (ant.sort() != succ.sort())
        throw SortError("antecedent of sort " + std::to_string(ant.sort()) + " against succedent " + succ.str() +
                        " of sort " + std::to_string(succ.sort()));
    return HSequent{std::move(ant), std::move(succ)};
}

HSequent parse_hsequent(std::string_view text, const Signature& sig) {
    const auto arrow = text.find("=>");
    if (arrow == std::string_view::npos)
        throw ParseError("expected '=>' in hypersequent", text.size());
    HyperConfig ant = parse_config(text.substr(0, arrow), sig);
    Type succ = [&] {
        try {
            return parse_type(text.substr(arrow + 2), sig);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), arrow + 2 + e.position());
        }
    }();
    try {
        return make_hsequent(std::move(ant), std::move(succ));
    } catch (const SortError& e) {
        throw ParseError(e.what(), arrow);
    }
}

namespace {

constexpr std::array<std::pair<HRule, std::string_view>, 18> kNames{{
    {HRule::Id, "Id"},         {HRule::Cut, "Cut"},       {HRule::UnderL, "UnderL"}, {HRule::UnderR, "UnderR"},
    {HRule::OverL, "OverL"},   {HRule::OverR, "OverR"},   {HRule::ProdL, "ProdL"},   {HRule::ProdR, "ProdR"},
    {HRule::IL, "IL"},         {HRule::IR, "IR"},         {HRule::DownL, "DownL"},   {HRule::DownR, "DownR"},
    {HRule::UpL, "UpL"},       {HRule::UpR, "UpR"},       {HRule::DProdL, "DProdL"}, {HRule::DProdR, "DProdR"},
    {HRule::JL, "JL"},         {HRule::JR, "JR"},
}};

}  // namespace

std::string_view hrule_name(HRule r) {
    return kNames[static_cast<std::size_t>(r)].second;
}

std::optional<HRule> hrule_from_name(std::string_view name) {
    for (const auto& [r, n] : kNames)
        if (n == name)
            return r;
    return std::nullopt;
}

int hrule_arity(HRule r) {
    switch (r) {
        case HRule::Id:
        case HRule::IR:
        case HRule::JR:
            return 0;
        case HRule::Cut:
        case HRule::UnderL:
        case HRule::OverL:
        case HRule::ProdR:
        case HRule::DownL:
        case HRule::UpL:
        case HRule::DProdR:
            return 2;
        default:
            return 1;
    }
}

int connective_count(const HSequent& s) {
    return s.ant.connectives() + s.succ.connectives();
}

int size(const HDerivation& d) {
    int n = 1;
    for (const auto& p : d.premises)
        n += size(p);
    return n;
}

std::string Violation::str() const {
    std::string path = "[";
    for (std::size_t i = 0; i < node.size(); ++i)
        path += (i ? "," : "") + std::to_string(node[i]);
    return "node " + path + "] (" + rule + "): " + message;
}

// ---------------------------------------------------------------------------
// Forward construction

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw RuleApplicationError(msg);
}

const Locator& need_loc(const HParams& p) {
    if (!p.loc)
        fail("missing locator");
    return *p.loc;
}

const Item& type_item_at(const HyperConfig& g, const Locator& loc) {
    const Item* it = nullptr;
    try {
        it = &item_at(g, loc);
    } catch (const Error& e) {
        fail(e.what());
    }
    if (!it->type)
        fail("locator addresses a separator");
    return *it;
}

template <class F>
Type build_type(F&& f) {
    try {
        return f();
    } catch (const SortError& e) {
        fail(e.what());
    }
}

std::vector<HyperConfig> gaps_range(const std::vector<HyperConfig>& v, std::size_t from, std::size_t to) {
    return std::vector<HyperConfig>(v.begin() + static_cast<std::ptrdiff_t>(from),
                                    v.begin() + static_cast<std::ptrdiff_t>(to));
}

std::vector<HyperConfig> join(std::vector<HyperConfig> a, const std::vector<HyperConfig>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Δ⟨X⃗⟩ ⇒ D  to  Δ⟨pattern⟩ ⇒ D: the item at `loc` (of type `x`) is
// replaced by the pattern, its gaps filling the pattern's separators.
HSequent replace_active(const HSequent& minor, const Locator& loc, const Type& x, const HyperConfig& pattern) {
    const Item& it = type_item_at(minor.ant, loc);
    if (*it.type != x)
        fail("active item has type " + it.type->str() + ", expected " + x.str());
    if (pattern.sort() != static_cast<int>(it.gaps.size()))
        fail("pattern sort does not match the active item");
    const HyperConfig filled = generalized_wrap(pattern, it.gaps);
    return HSequent{splice(minor.ant, loc.list, loc.index, loc.index + 1, filled.items), minor.succ};
}

Item make_item(const Type& t, std::vector<HyperConfig> gaps) {
    try {
        return Item::of_type(t, std::move(gaps));
    } catch (const SortError& e) {
        fail(e.what());
    }
}

}  // namespace

HSequent hd_conclude(HRule rule, const HParams& prm, const std::vector<HSequent>& prem) {
    if (static_cast<int>(prem.size()) != hrule_arity(rule))
        fail("expected " + std::to_string(hrule_arity(rule)) + " premises, got " + std::to_string(prem.size()));
    switch (rule) {
        case HRule::Id:
        case HRule::IR:
        case HRule::JR:
            fail("axioms have no premises to build from");

        case HRule::Cut:
            return replace_active(prem[1], need_loc(prm), prem[0].succ, prem[0].ant);
        case HRule::UnderL: {
            const Type& a = prem[0].succ;
            const Type c = type_item_at(prem[1].ant, need_loc(prm)).ty();
            const Type t = build_type([&] { return Type::under(a, c); });
            return replace_active(prem[1], *prm.loc, c, prem[0].ant + figure(t));
        }
        case HRule::OverL: {
            const Type& b = prem[0].succ;
            const Type c = type_item_at(prem[1].ant, need_loc(prm)).ty();
            const Type t = build_type([&] { return Type::over(c, b); });
            return replace_active(prem[1], *prm.loc, c, figure(t) + prem[0].ant);
        }
        case HRule::DownL: {
            const Type& a = prem[0].succ;
            const Type c = type_item_at(prem[1].ant, need_loc(prm)).ty();
            const Type t = build_type([&] { return Type::ddown(prm.k, a, c); });
            return replace_active(prem[1], *prm.loc, c, wrap_at(prem[0].ant, prm.k, figure(t)));
        }
        case HRule::UpL: {
            const Type& b = prem[0].succ;
            const Type c = type_item_at(prem[1].ant, need_loc(prm)).ty();
            const Type t = build_type([&] { return Type::dup(prm.k, c, b); });
            return replace_active(prem[1], *prm.loc, c, wrap_at(figure(t), prm.k, prem[0].ant));
        }
        case HRule::UnderR: {
            const auto& items = prem[0].ant.items;
            if (items.empty() || !items.front().type || !is_figure_item(items.front()))
                fail("premise antecedent does not start with a figure");
            const Type t = build_type([&] { return Type::under(items.front().ty(), prem[0].succ); });
            return HSequent{HyperConfig({items.begin() + 1, items.end()}), t};
        }
        case HRule::OverR: {
            const auto& items = prem[0].ant.items;
            if (items.empty() || !items.back().type || !is_figure_item(items.back()))
                fail("premise antecedent does not end with a figure");
            const Type t = build_type([&] { return Type::over(prem[0].succ, items.back().ty()); });
            return HSequent{HyperConfig({items.begin(), items.end() - 1}), t};
        }
        case HRule::ProdL: {
            const Locator& loc = need_loc(prm);
            const Item& a = type_item_at(prem[0].ant, loc);
            const Item& b = type_item_at(prem[0].ant, Locator{loc.list, loc.index + 1});
            const Type t = build_type([&] { return Type::prod(a.ty(), b.ty()); });
            Item merged = make_item(t, join(a.gaps, b.gaps));
            return HSequent{splice(prem[0].ant, loc.list, loc.index, loc.index + 2, {merged}), prem[0].succ};
        }
        case HRule::ProdR: {
            const Type t = build_type([&] { return Type::prod(prem[0].succ, prem[1].succ); });
            return HSequent{prem[0].ant + prem[1].ant, t};
        }
        case HRule::IL: {
            const Locator& loc = need_loc(prm);
            const auto& list = list_at(prem[0].ant, loc.list);
            if (loc.index < 0 || loc.index > static_cast<int>(list.size()))
                fail("insertion point out of range");
            return HSequent{splice(prem[0].ant, loc.list, loc.index, loc.index, {Item::leaf(Type::unit_i())}),
                            prem[0].succ};
        }
        case HRule::DownR: {
            const auto& items = prem[0].ant.items;
            if (items.size() != 1 || items[0].kind != Item::Kind::Occurrence)
                fail("premise antecedent is not a single wrapped figure");
            const Item& a = items[0];
            if (prm.k < 1 || prm.k > static_cast<int>(a.gaps.size()))
                fail("wrap index out of range");
            for (int g = 0; g < static_cast<int>(a.gaps.size()); ++g)
                if (g != prm.k - 1 && a.gaps[static_cast<std::size_t>(g)] != HyperConfig::separator())
                    fail("premise figure has a filled gap other than " + std::to_string(prm.k));
            const Type t = build_type([&] { return Type::ddown(prm.k, a.ty(), prem[0].succ); });
            return HSequent{a.gaps[static_cast<std::size_t>(prm.k - 1)], t};
        }
        case HRule::UpR: {
            const Locator& loc = need_loc(prm);
            const Item& b = type_item_at(prem[0].ant, loc);
            if (!is_figure_item(b))
                fail("active item is not a figure");
            const HyperConfig g = splice(prem[0].ant, loc.list, loc.index, loc.index + 1, {Item::separator()});
            if (separators_before(g, loc) + 1 != prm.k)
                fail("figure sits at separator " + std::to_string(separators_before(g, loc) + 1) + ", not " +
                     std::to_string(prm.k));
            const Type t = build_type([&] { return Type::dup(prm.k, prem[0].succ, b.ty()); });
            return HSequent{g, t};
        }
        case HRule::DProdL: {
            const Locator& loc = need_loc(prm);
            const Item& a = type_item_at(prem[0].ant, loc);
            if (prm.k < 1 || prm.k > static_cast<int>(a.gaps.size()))
                fail("wrap index out of range");
            const auto k = static_cast<std::size_t>(prm.k);
            const HyperConfig& gap = a.gaps[k - 1];
            if (gap.items.size() != 1 || !gap.items[0].type)
                fail("gap " + std::to_string(prm.k) + " does not hold a single type occurrence");
            const Item& b = gap.items[0];
            const Type t = build_type([&] { return Type::dprod(prm.k, a.ty(), b.ty()); });
            auto gaps = join(join(gaps_range(a.gaps, 0, k - 1), b.gaps), gaps_range(a.gaps, k, a.gaps.size()));
            Item merged = make_item(t, std::move(gaps));
            return HSequent{splice(prem[0].ant, loc.list, loc.index, loc.index + 1, {merged}), prem[0].succ};
        }
        case HRule::DProdR: {
            const Type t = build_type([&] { return Type::dprod(prm.k, prem[0].succ, prem[1].succ); });
            if (prm.k < 1 || prm.k > prem[0].ant.sort())
                fail("wrap index out of range");
            return HSequent{wrap_at(prem[0].ant, prm.k, prem[1].ant), t};
        }
        case HRule::JL: {
            const Locator& loc = need_loc(prm);
            const auto& list = list_at(prem[0].ant, loc.list);
            if (loc.index < 0 || prm.end < loc.index || prm.end > static_cast<int>(list.size()))
                fail("wrapped range out of bounds");
            HyperConfig gap({list.begin() + loc.index, list.begin() + prm.end});
            Item j = Item::occurrence(Type::unit_j(), {std::move(gap)});
            return HSequent{splice(prem[0].ant, loc.list, loc.index, prm.end, {j}), prem[0].succ};
        }
    }
    fail("unknown rule");
}

// ---------------------------------------------------------------------------
// Checking

namespace {

std::optional<Violation> check_at(const HDerivation& d, std::vector<int>& node) {
    auto violation = [&](std::string msg) {
        return Violation{node, std::string(hrule_name(d.rule)), std::move(msg)};
    };
    const HSequent& s = d.conclusion;
    if (s.ant.sort() != s.succ.sort())
        return violation("ill-sorted sequent " + s.str());
    if (static_cast<int>(d.premises.size()) != hrule_arity(d.rule))
        return violation("wrong number of premises");
    switch (d.rule) {
        case HRule::Id:
            if (s.ant != figure(s.succ))
                return violation("antecedent is not the figure of " + s.succ.str());
            break;
        case HRule::IR:
            if (!s.ant.empty() || s.succ.conn() != Conn::UnitI)
                return violation("expected Lambda => I");
            break;
        case HRule::JR:
            if (s.ant != HyperConfig::separator() || s.succ.conn() != Conn::UnitJ)
                return violation("expected [] => J");
            break;
        default: {
            std::vector<HSequent> prem;
            for (const auto& p : d.premises)
                prem.push_back(p.conclusion);
            try {
                const HSequent expected = hd_conclude(d.rule, d.params, prem);
                if (!(expected == s))
                    return violation("premises yield " + expected.str() + ", not " + s.str());
            } catch (const Error& e) {
                return violation(e.what());
            }
        }
    }
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
        node.push_back(static_cast<int>(i));
        if (auto v = check_at(d.premises[i], node))
            return v;
        node.pop_back();
    }
    return std::nullopt;
}

}  // namespace

std::optional<Violation> check(const HDerivation& d) {
    std::vector<int> node;
    return check_at(d, node);
}

// ---------------------------------------------------------------------------
// Backward enumeration

namespace {

// One way to read a run of concrete material as Γ ⊗ ⟨chunks⟩: `pattern` is
// Γ, with a separator where each chunk (and the kept item, if any) was.
struct Abstraction {
    std::vector<Item> pattern;
    std::vector<HyperConfig> chunks;
    int keep_before = -1;  // chunks preceding the kept item
};

class Abstractor {
  public:
    Abstractor(int chunks, const Item* keep) : want_(chunks), keep_(keep) {}

    std::vector<Abstraction> run(const std::vector<Item>& items, std::size_t from, std::size_t to) {
        std::vector<Abstraction> out;
        for (auto& a : from_pos(items, from, to, want_))
            if (static_cast<int>(a.chunks.size()) == want_ && (!keep_ || a.keep_before >= 0))
                out.push_back(std::move(a));
        return out;
    }

  private:
    bool contains_keep(const std::vector<Item>& items, std::size_t b, std::size_t e) const {
        if (!keep_)
            return false;
        std::function<bool(const Item&)> has = [&](const Item& it) {
            if (&it == keep_)
                return true;
            for (const auto& g : it.gaps)
                for (const auto& x : g.items)
                    if (has(x))
                        return true;
            return false;
        };
        for (std::size_t i = b; i < e; ++i)
            if (has(items[i]))
                return true;
        return false;
    }

    // All abstractions of items[p, to) using at most `budget` chunks.
    std::vector<Abstraction> from_pos(const std::vector<Item>& items, std::size_t p, std::size_t to, int budget) {
        std::vector<Abstraction> out;
        if (budget > 0) {
            for (std::size_t q = p; q <= to; ++q) {
                if (contains_keep(items, p, q))
                    break;
                HyperConfig chunk({items.begin() + static_cast<std::ptrdiff_t>(p),
                                   items.begin() + static_cast<std::ptrdiff_t>(q)});
                for (auto& tail : from_pos(items, q, to, budget - 1)) {
                    Abstraction a;
                    a.pattern.push_back(Item::separator());
                    a.pattern.insert(a.pattern.end(), tail.pattern.begin(), tail.pattern.end());
                    a.chunks.push_back(chunk);
                    a.chunks.insert(a.chunks.end(), tail.chunks.begin(), tail.chunks.end());
                    a.keep_before = tail.keep_before >= 0 ? tail.keep_before + 1 : -1;
                    out.push_back(std::move(a));
                }
            }
        }
        if (p == to) {
            out.push_back(Abstraction{});
            return out;
        }
        const Item& it = items[p];
        if (it.is_separator())
            return out;  // every separator of the material must be abstracted
        if (&it == keep_) {
            for (auto& tail : from_pos(items, p + 1, to, budget)) {
                Abstraction a;
                a.pattern.push_back(Item::separator());
                a.pattern.insert(a.pattern.end(), tail.pattern.begin(), tail.pattern.end());
                a.chunks = std::move(tail.chunks);
                a.keep_before = 0;
                out.push_back(std::move(a));
            }
            return out;
        }
        // Keep the item; its gaps may hold chunks of their own.
        std::vector<Abstraction> heads{Abstraction{}};
        std::vector<std::vector<HyperConfig>> head_gaps{{}};
        for (const auto& gap : it.gaps) {
            std::vector<Abstraction> next;
            std::vector<std::vector<HyperConfig>> next_gaps;
            for (std::size_t h = 0; h < heads.size(); ++h) {
                const int used = static_cast<int>(heads[h].chunks.size());
                for (auto& g : from_pos(gap.items, 0, gap.items.size(), budget - used)) {
                    Abstraction a = heads[h];
                    if (g.keep_before >= 0)
                        a.keep_before = used + g.keep_before;
                    a.chunks.insert(a.chunks.end(), g.chunks.begin(), g.chunks.end());
                    auto gaps = head_gaps[h];
                    gaps.emplace_back(std::move(g.pattern));
                    next.push_back(std::move(a));
                    next_gaps.push_back(std::move(gaps));
                }
            }
            heads = std::move(next);
            head_gaps = std::move(next_gaps);
        }
        for (std::size_t h = 0; h < heads.size(); ++h) {
            const int used = static_cast<int>(heads[h].chunks.size());
            Item kept = it;
            kept.gaps = head_gaps[h];
            for (auto& tail : from_pos(items, p + 1, to, budget - used)) {
                Abstraction a;
                a.pattern.push_back(kept);
                a.pattern.insert(a.pattern.end(), tail.pattern.begin(), tail.pattern.end());
                a.chunks = heads[h].chunks;
                a.chunks.insert(a.chunks.end(), tail.chunks.begin(), tail.chunks.end());
                if (heads[h].keep_before >= 0)
                    a.keep_before = heads[h].keep_before;
                else if (tail.keep_before >= 0)
                    a.keep_before = used + tail.keep_before;
                out.push_back(std::move(a));
            }
        }
        return out;
    }

    int want_;
    const Item* keep_;
};

using Instances = std::vector<HInstance>;

HyperConfig items_config(const std::vector<Item>& items, std::size_t b, std::size_t e) {
    return HyperConfig({items.begin() + static_cast<std::ptrdiff_t>(b), items.begin() + static_cast<std::ptrdiff_t>(e)});
}

void left_under(const HSequent& s, const Locator& loc, const Item& it, Instances& out) {
    const Type a = it.ty().left(), c = it.ty().right();
    const auto& list = list_at(s.ant, loc.list);
    const auto idx = static_cast<std::size_t>(loc.index);
    for (std::size_t b = idx + 1; b-- > 0;) {
        for (auto& abs : Abstractor(a.sort(), nullptr).run(list, b, idx)) {
            Item citem = Item::of_type(c, join(abs.chunks, it.gaps));
            HyperConfig minor = splice(s.ant, loc.list, static_cast<int>(b), loc.index + 1, {citem});
            HParams p;
            p.loc = Locator{loc.list, static_cast<int>(b)};
            out.push_back({HRule::UnderL, p, {HSequent{HyperConfig(std::move(abs.pattern)), a}, HSequent{minor, s.succ}}});
        }
    }
}

void left_over(const HSequent& s, const Locator& loc, const Item& it, Instances& out) {
    const Type c = it.ty().left(), b = it.ty().right();
    const auto& list = list_at(s.ant, loc.list);
    const auto idx = static_cast<std::size_t>(loc.index);
    for (std::size_t e = idx + 1; e <= list.size(); ++e) {
        for (auto& abs : Abstractor(b.sort(), nullptr).run(list, idx + 1, e)) {
            Item citem = Item::of_type(c, join(it.gaps, abs.chunks));
            HyperConfig minor = splice(s.ant, loc.list, loc.index, static_cast<int>(e), {citem});
            HParams p;
            p.loc = loc;
            out.push_back({HRule::OverL, p, {HSequent{HyperConfig(std::move(abs.pattern)), b}, HSequent{minor, s.succ}}});
        }
    }
}

void left_down(const HSequent& s, const Locator& loc, const Item& it, Instances& out) {
    const int k = it.ty().k();
    const Type a = it.ty().left(), c = it.ty().right();
    // Regions: ranges of each list on the way down to the item, innermost first.
    for (std::size_t depth = loc.list.size() + 1; depth-- > 0;) {
        const ListPath path(loc.list.begin(), loc.list.begin() + static_cast<std::ptrdiff_t>(depth));
        const auto& list = list_at(s.ant, path);
        const auto pos =
            static_cast<std::size_t>(depth == loc.list.size() ? loc.index : loc.list[depth].first);
        for (std::size_t b = pos + 1; b-- > 0;) {
            for (std::size_t e = pos + 1; e <= list.size(); ++e) {
                for (auto& abs : Abstractor(a.sort() - 1, &it).run(list, b, e)) {
                    if (abs.keep_before != k - 1)
                        continue;
                    const auto kk = static_cast<std::size_t>(k - 1);
                    auto gaps = join(join(gaps_range(abs.chunks, 0, kk), it.gaps),
                                     gaps_range(abs.chunks, kk, abs.chunks.size()));
                    Item citem = Item::of_type(c, std::move(gaps));
                    HyperConfig minor = splice(s.ant, path, static_cast<int>(b), static_cast<int>(e), {citem});
                    HParams p;
                    p.loc = Locator{path, static_cast<int>(b)};
                    p.k = k;
                    out.push_back(
                        {HRule::DownL, p, {HSequent{HyperConfig(std::move(abs.pattern)), a}, HSequent{minor, s.succ}}});
                }
            }
        }
    }
}

void left_up(const HSequent& s, const Locator& loc, const Item& it, Instances& out) {
    const int k = it.ty().k();
    const Type c = it.ty().left(), b = it.ty().right();
    const auto kk = static_cast<std::size_t>(k - 1);
    const auto& gap = it.gaps[kk].items;
    for (auto& abs : Abstractor(b.sort(), nullptr).run(gap, 0, gap.size())) {
        auto gaps = join(join(gaps_range(it.gaps, 0, kk), abs.chunks), gaps_range(it.gaps, kk + 1, it.gaps.size()));
        Item citem = Item::of_type(c, std::move(gaps));
        HyperConfig minor = splice(s.ant, loc.list, loc.index, loc.index + 1, {citem});
        HParams p;
        p.loc = loc;
        p.k = k;
        out.push_back({HRule::UpL, p, {HSequent{HyperConfig(std::move(abs.pattern)), b}, HSequent{minor, s.succ}}});
    }
}

void left_prod(const HSequent& s, const Locator& loc, const Item& it, Instances& out) {
    const Type a = it.ty().left(), b = it.ty().right();
    const auto sa = static_cast<std::size_t>(a.sort());
    Item ai = Item::of_type(a, gaps_range(it.gaps, 0, sa));
    Item bi = Item::of_type(b, gaps_range(it.gaps, sa, it.gaps.size()));
    HParams p;
    p.loc = loc;
    out.push_back({HRule::ProdL, p, {HSequent{splice(s.ant, loc.list, loc.index, loc.index + 1, {ai, bi}), s.succ}}});
}

void left_dprod(const HSequent& s, const Locator& loc, const Item& it, Instances& out) {
    const int k = it.ty().k();
    const Type a = it.ty().left(), b = it.ty().right();
    const auto kk = static_cast<std::size_t>(k - 1), sb = static_cast<std::size_t>(b.sort());
    Item bi = Item::of_type(b, gaps_range(it.gaps, kk, kk + sb));
    auto gaps = gaps_range(it.gaps, 0, kk);
    gaps.push_back(HyperConfig({bi}));
    auto rest = gaps_range(it.gaps, kk + sb, it.gaps.size());
    gaps.insert(gaps.end(), rest.begin(), rest.end());
    Item ai = Item::of_type(a, std::move(gaps));
    HParams p;
    p.loc = loc;
    p.k = k;
    out.push_back({HRule::DProdL, p, {HSequent{splice(s.ant, loc.list, loc.index, loc.index + 1, {ai}), s.succ}}});
}

void left_i(const HSequent& s, const Locator& loc, Instances& out) {
    HParams p;
    p.loc = loc;
    out.push_back({HRule::IL, p, {HSequent{splice(s.ant, loc.list, loc.index, loc.index + 1, {}), s.succ}}});
}

void left_j(const HSequent& s, const Locator& loc, const Item& it, Instances& out) {
    const auto& inner = it.gaps[0].items;
    HParams p;
    p.loc = loc;
    p.end = loc.index + static_cast<int>(inner.size());
    out.push_back({HRule::JL, p, {HSequent{splice(s.ant, loc.list, loc.index, loc.index + 1, inner), s.succ}}});
}

// Left rule instances for items whose type has main connective `conn`.
template <class Gen>
void for_active(const HSequent& s, Conn conn, Gen&& gen) {
    for (const auto& loc : all_items(s.ant)) {
        const Item& it = item_at(s.ant, loc);
        if (it.type && it.ty().conn() == conn)
            gen(loc, it);
    }
}

}  // namespace

std::vector<HInstance> enumerate_rule_instances(const HSequent& s) {
    Instances out;
    const Type& g = s.succ;
    const Conn gc = g.conn();

    if (s.ant == figure(g))
        out.push_back({HRule::Id, {}, {}});

    for_active(s, Conn::Under, [&](const Locator& l, const Item& it) { left_under(s, l, it, out); });
    if (gc == Conn::Under)
        out.push_back({HRule::UnderR, {}, {HSequent{figure(g.left()) + s.ant, g.right()}}});

    for_active(s, Conn::Over, [&](const Locator& l, const Item& it) { left_over(s, l, it, out); });
    if (gc == Conn::Over)
        out.push_back({HRule::OverR, {}, {HSequent{s.ant + figure(g.right()), g.left()}}});

    for_active(s, Conn::Prod, [&](const Locator& l, const Item& it) { left_prod(s, l, it, out); });
    if (gc == Conn::Prod) {
        const auto& items = s.ant.items;
        for (std::size_t cut = 0; cut <= items.size(); ++cut) {
            HyperConfig l = items_config(items, 0, cut), r = items_config(items, cut, items.size());
            if (l.sort() == g.left().sort())
                out.push_back({HRule::ProdR, {}, {HSequent{std::move(l), g.left()}, HSequent{std::move(r), g.right()}}});
        }
    }

    for_active(s, Conn::UnitI, [&](const Locator& l, const Item&) { left_i(s, l, out); });
    if (gc == Conn::UnitI && s.ant.empty())
        out.push_back({HRule::IR, {}, {}});

    for_active(s, Conn::DDown, [&](const Locator& l, const Item& it) { left_down(s, l, it, out); });
    if (gc == Conn::DDown) {
        std::vector<HyperConfig> gaps(static_cast<std::size_t>(g.left().sort()), HyperConfig::separator());
        gaps[static_cast<std::size_t>(g.k() - 1)] = s.ant;
        HParams p;
        p.k = g.k();
        out.push_back({HRule::DownR, p, {HSequent{HyperConfig({Item::occurrence(g.left(), std::move(gaps))}), g.right()}}});
    }

    for_active(s, Conn::DUp, [&](const Locator& l, const Item& it) { left_up(s, l, it, out); });
    if (gc == Conn::DUp) {
        HParams p;
        p.k = g.k();
        p.loc = separator_location(s.ant, g.k());
        out.push_back({HRule::UpR, p, {HSequent{wrap_at(s.ant, g.k(), figure(g.right())), g.left()}}});
    }

    for_active(s, Conn::DProd, [&](const Locator& l, const Item& it) { left_dprod(s, l, it, out); });
    if (gc == Conn::DProd) {
        const Type a = g.left(), b = g.right();
        for (const auto& path : all_lists(s.ant)) {
            const auto& list = list_at(s.ant, path);
            for (std::size_t lo = 0; lo <= list.size(); ++lo) {
                for (std::size_t hi = lo; hi <= list.size(); ++hi) {
                    HyperConfig inner = items_config(list, lo, hi);
                    if (inner.sort() != b.sort())
                        continue;
                    HyperConfig outer =
                        splice(s.ant, path, static_cast<int>(lo), static_cast<int>(hi), {Item::separator()});
                    if (separators_before(outer, Locator{path, static_cast<int>(lo)}) + 1 != g.k())
                        continue;
                    HParams p;
                    p.k = g.k();
                    out.push_back({HRule::DProdR, p, {HSequent{std::move(outer), a}, HSequent{std::move(inner), b}}});
                }
            }
        }
    }

    for_active(s, Conn::UnitJ, [&](const Locator& l, const Item& it) { left_j(s, l, it, out); });
    if (gc == Conn::UnitJ && s.ant == HyperConfig::separator())
        out.push_back({HRule::JR, {}, {}});

    return out;
}

// ---------------------------------------------------------------------------
// Search

const std::vector<HInstance>& Prover::instances(const HSequent& s, const std::string& key) {
    auto it = inst_.find(key);
    if (it == inst_.end()) {
        ++stats_.sequents;
        it = inst_.emplace(key, enumerate_rule_instances(s)).first;
        stats_.instances += static_cast<long>(it->second.size());
    }
    return it->second;
}

std::optional<HDerivation> Prover::prove(const HSequent& s) {
    const std::string key = s.str();
    if (auto it = proved_.find(key); it != proved_.end())
        return it->second;
    std::optional<HDerivation> result;
    // Copy: the instance cache may rehash during recursion.
    const std::vector<HInstance> insts = instances(s, key);
    for (const auto& inst : insts) {
        std::vector<HDerivation> subs;
        bool ok = true;
        for (const auto& p : inst.premises) {
            auto d = prove(p);
            if (!d) {
                ok = false;
                break;
            }
            subs.push_back(std::move(*d));
        }
        if (ok) {
            result = HDerivation{inst.rule, s, inst.params, std::move(subs)};
            break;
        }
    }
    inst_.erase(key);
    proved_.emplace(key, result);
    return result;
}

const std::vector<HDerivation>& Prover::all_rec(const HSequent& s) {
    const std::string key = s.str();
    if (auto it = all_.find(key); it != all_.end())
        return it->second;
    std::vector<HDerivation> found;
    const std::vector<HInstance> insts = instances(s, key);
    for (const auto& inst : insts) {
        if (static_cast<int>(found.size()) >= limit_)
            break;
        std::vector<std::vector<HDerivation>> choices;
        bool ok = true;
        for (const auto& p : inst.premises) {
            choices.push_back(all_rec(p));
            if (choices.back().empty()) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        std::vector<std::size_t> pick(choices.size(), 0);
        while (static_cast<int>(found.size()) < limit_) {
            HDerivation d{inst.rule, s, inst.params, {}};
            for (std::size_t i = 0; i < choices.size(); ++i)
                d.premises.push_back(choices[i][pick[i]]);
            bool dup = false;
            for (const auto& f : found)
                if (f == d) {
                    dup = true;
                    break;
                }
            if (!dup)
                found.push_back(std::move(d));
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == choices[i].size())
                pick[i++] = 0;
            if (i == pick.size())
                break;
        }
    }
    return all_.emplace(key, std::move(found)).first->second;
}

std::vector<HDerivation> Prover::prove_all(const HSequent& s, int limit) {
    if (limit != limit_) {
        all_.clear();
        limit_ = limit;
    }
    if (limit <= 0)
        return {};
    return all_rec(s);
}

std::optional<HDerivation> prove(const HSequent& s) {
    return Prover().prove(s);
}

std::vector<HDerivation> prove_all(const HSequent& s, int limit) {
    return Prover().prove_all(s, limit);
}

}  // namespace dcalc
