#include "dcalc/structterm.hpp"

#include <deque>
#include <random>

namespace dcalc {

namespace {

Path child(const Path& p, Dir d) { return concat(p, d); }

// Accumulates rule applications on a whole term; rules address subterms by
// absolute path.
class Rewriter {
  public:
    Rewriter(Term start, int budget) : trace_(std::move(start)), budget_(budget) {}

    Term at(const Path& p) const { return subterm(trace_.end(), p); }

    void step(Rule r, const Path& p, Params params = {}) {
        if (static_cast<int>(trace_.size()) >= budget_)
            throw BudgetError("rewrite budget of " + std::to_string(budget_) + " steps exhausted");
        trace_.push(RuleApp{r, p, std::move(params)});
    }

    RewriteTrace take() { return std::move(trace_); }
    const RewriteTrace& trace() const { return trace_; }

    // Makes the subterm at `p` canonical.
    void canon(const Path& p) {
        const Term x = at(p);
        switch (x.kind()) {
            case TermKind::UnitI:
                return;
            case TermKind::UnitJ:
                step(Rule::UnitIRAdd, p);
                return;
            case TermKind::Leaf:
                canon_leaf(p, x.sort());
                return;
            case TermKind::Cat:
                canon(child(p, Dir::Left));
                canon(child(p, Dir::Right));
                append(p);
                return;
            case TermKind::Wrap:
                canon(child(p, Dir::Left));
                canon(child(p, Dir::Right));
                wrap_canon(p);
                return;
        }
    }

  private:
    // A  ->  (((A +1 (JJ + II)) +2 (JJ + II)) ... +a (JJ + II)) + II
    void canon_leaf(const Path& p, int a) {
        for (int g = 1; g <= a; ++g)
            step(Rule::UnitJiAdd, p, {{"i", g}});
        Path q = p;
        for (int g = a; g >= 1; --g) {
            step(Rule::UnitIRAdd, child(q, Dir::Right));
            q.push_back(Dir::Left);
        }
        step(Rule::UnitIRAdd, p);
    }

    // C + D with C, D canonical lists.
    void append(const Path& p) {
        if (at(child(p, Dir::Left)).kind() == TermKind::UnitI) {
            step(Rule::UnitILDrop, p);
            return;
        }
        step(Rule::AsscCBwd, p);
        append(child(p, Dir::Right));
    }

    // (H + C) +i F with H + C and F canonical.
    void wrap_canon(const Path& p) {
        const Term x = at(p);
        const Term head = x.left().left();
        const Path left = child(p, Dir::Left);
        if (x.index() > head.sort()) {
            step(Rule::SWRightFwd, left);
            step(Rule::AsscD2, p);
            step(Rule::SWRightBwd, p);
            wrap_canon(child(p, Dir::Right));
            return;
        }
        step(Rule::SWLeftFwd, left);
        step(Rule::AsscD2, p);
        step(Rule::SWLeftBwd, p);
        if (head.kind() == TermKind::UnitJ) {
            step(Rule::UnitJLDrop, left);
            append(p);
            return;
        }
        block_wrap(left);
    }

    // W +i F where W is a canonical occurrence block and F a canonical list.
    void block_wrap(const Path& p) {
        const Term x = at(p);
        const int i = x.index();
        const int e = x.left().index();
        const int g = x.left().right().sort();
        if (e <= i && i <= e + g - 1) {
            step(Rule::AsscD2, p);
            wrap_canon(child(p, Dir::Right));
            return;
        }
        step(Rule::MixPerm2Fwd, p);
        block_wrap(child(p, Dir::Left));
    }

    friend class Extractor;

    RewriteTrace trace_;
    int budget_;
};

class Extractor {
  public:
    Extractor(Rewriter& rw, const ExtractOptions& opts) : rw_(rw), opts_(opts) {}

    // Rewrites the subterm at `p` into X′ +i A, A the leaf at p·rel; returns i.
    int run(const Path& p, const Path& rel) {
        const Term x = rw_.at(p);
        if (rel.empty()) {
            rw_.step(Rule::UnitJLAdd, p);
            return 1;
        }
        const Dir d = rel.front();
        const Path rest(rel.begin() + 1, rel.end());
        if (opts_.shortcuts && x.kind() == TermKind::Wrap && d == Dir::Right && rest.empty())
            return x.index();
        if (x.kind() == TermKind::Cat)
            return d == Dir::Left ? cat_left(p, rest) : cat_right(p, rest);
        return d == Dir::Left ? wrap_left(p, rest) : wrap_right(p, rest);
    }

  private:
    int cat_left(const Path& p, const Path& rest) {
        if (opts_.shortcuts && rest.empty()) {
            rw_.step(Rule::SWLeftFwd, p);
            return 1;
        }
        const int j = run(child(p, Dir::Left), rest);
        rw_.step(Rule::SWLeftFwd, p);
        rw_.step(Rule::AsscD1, p);
        rw_.step(Rule::SWLeftBwd, child(p, Dir::Left));
        return j;
    }

    int cat_right(const Path& p, const Path& rest) {
        const int l = rw_.at(child(p, Dir::Left)).sort();
        if (opts_.shortcuts && rest.empty()) {
            rw_.step(Rule::SWRightFwd, p);
            return l + 1;
        }
        const int j = run(child(p, Dir::Right), rest);
        rw_.step(Rule::SWRightFwd, p);
        rw_.step(Rule::AsscD1, p);
        rw_.step(Rule::SWRightBwd, child(p, Dir::Left));
        return l + j;
    }

    int wrap_left(const Path& p, const Path& rest) {
        const int j = run(child(p, Dir::Left), rest);
        const Term x = rw_.at(p);
        const int k = x.index();
        const int a = x.left().right().sort();
        const Term r = x.right();
        switch (classify(j, a, k)) {
            case Relation::P1:
                rw_.step(Rule::MixPerm1Fwd, p);
                return j;
            case Relation::P2:
                rw_.step(Rule::MixPerm2Fwd, p);
                return j + r.sort() - 1;
            case Relation::O:
                break;
        }
        // The wrapped material lands in a gap of A; visibility forces it to
        // be a bare separator.
        if (sharp(r) != HyperConfig::separator())
            throw ExtractError("occurrence is not visible: " + r.str() + " fills one of its gaps");
        const Path right = child(p, Dir::Right);
        rw_.canon(right);
        rw_.step(Rule::UnitIRDrop, right);
        rw_.step(Rule::UnitJiDrop, p);
        return j;
    }

    int wrap_right(const Path& p, const Path& rest) {
        const int k = rw_.at(p).index();
        const int j = run(child(p, Dir::Right), rest);
        rw_.step(Rule::AsscD1, p);
        return k + j - 1;
    }

    Rewriter& rw_;
    const ExtractOptions& opts_;
};

}  // namespace

bool equiv(const Term& t, const Term& s) {
    return sharp(t).str() == sharp(s).str();
}

std::unordered_set<Term> reachable_set(const Term& t, int depth, int max_leaves) {
    if (max_leaves <= 0)
        max_leaves = t.leaves() + 2;
    std::unordered_set<Term> seen{t};
    std::vector<Term> frontier{t};
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<Term> next;
        for (const Term& cur : frontier) {
            for (Term& n : neighbours(cur, cur.leaves() < max_leaves)) {
                if (n.leaves() <= max_leaves && seen.insert(n).second)
                    next.push_back(std::move(n));
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

bool bounded_equiv_oracle(const Term& t, const Term& s, int depth, int max_leaves) {
    if (t == s)
        return true;
    if (t.sort() != s.sort())
        return false;
    if (max_leaves <= 0)
        max_leaves = std::max(t.leaves(), s.leaves()) + 2;
    std::unordered_set<Term> seen{t};
    std::vector<Term> frontier{t};
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<Term> next;
        for (const Term& cur : frontier) {
            for (Term& n : neighbours(cur, cur.leaves() < max_leaves)) {
                if (n == s)
                    return true;
                if (n.leaves() <= max_leaves && seen.insert(n).second)
                    next.push_back(std::move(n));
            }
        }
        frontier = std::move(next);
    }
    return false;
}

RewriteTrace normalize(const Term& t, int budget) {
    Rewriter rw(t, budget);
    rw.canon({});
    return rw.take();
}

RewriteTrace connect(const Term& t, const Term& s, int budget) {
    if (!equiv(t, s))
        throw Error("terms are not equivalent: " + t.str() + " and " + s.str());
    RewriteTrace tr = normalize(t, budget);
    tr.append(normalize(s, budget).reversed());
    if (static_cast<int>(tr.size()) > budget)
        throw BudgetError("rewrite budget of " + std::to_string(budget) + " steps exhausted");
    return tr;
}

std::optional<int> extractable(const Term& t, const Path& at) {
    const Term leaf = subterm(t, at);
    if (leaf.kind() != TermKind::Leaf)
        throw Error("path " + path_str(at) + " does not address a type leaf");
    const Type m = marker_type(leaf.sort());
    const HyperConfig d = sharp(replace(t, at, Term::leaf(m)));
    const auto loc = find_type_item(d, m);
    if (!loc || !is_figure_item(item_at(d, *loc)))
        return std::nullopt;
    return separators_before(d, *loc) + 1;
}

Extraction extract(const Term& t, const Path& at, const ExtractOptions& opts) {
    const auto expected = extractable(t, at);
    if (!expected)
        throw ExtractError("occurrence at " + path_str(at) + " is not visible for extraction in " + t.str());
    const Term leaf = subterm(t, at);
    Rewriter rw(t, opts.budget);
    Extractor ex(rw, opts);
    const int i = ex.run({}, at);
    RewriteTrace trace = rw.take();
    const Term& end = trace.end();
    if (end.kind() != TermKind::Wrap || end.index() != i || end.right() != leaf || i != *expected)
        throw ExtractError("extraction ended at " + end.str() + " with index " + std::to_string(i));
    return Extraction{end.left(), i, std::move(trace)};
}

bool uniqueness_check(const Term& t, const Path& at, int trials, std::uint64_t seed) {
    if (!extractable(t, at))
        return false;
    const Extraction first = extract(t, at);
    const std::string reference = sharp(first.rest).str();
    const Type m = marker_type(subterm(t, at).sort());
    const Term marked = replace(t, at, Term::leaf(m));
    std::mt19937_64 rng(seed);
    for (int n = 1; n < trials; ++n) {
        Term cur = marked;
        const int pre = static_cast<int>(rng() % 7);
        for (int s = 0; s < pre; ++s) {
            const bool grow = cur.leaves() < t.leaves() + 3 && rng() % 3 == 0;
            auto apps = applicable_rules(cur, grow);
            if (apps.empty())
                break;
            cur = apply_rule(cur, apps[rng() % apps.size()]);
        }
        if (rng() % 4 == 0)
            cur = normalize(cur).end();
        const auto path = find_leaf(cur, m);
        if (!path)
            return false;
        ExtractOptions opts;
        opts.shortcuts = rng() % 2 == 0;
        const Extraction e = extract(cur, *path, opts);
        if (e.index != first.index || sharp(e.rest).str() != reference)
            return false;
    }
    return true;
}

}  // namespace dcalc
