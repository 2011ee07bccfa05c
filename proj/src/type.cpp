#include "dcalc/type.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dcalc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::string operand_text(const Type& t) {
    return t.is_binary() ? "(" + t.str() + ")" : t.str();
}

std::string op_text(Conn c, int k) {
    switch (c) {
        case Conn::Prod:
            return ".";
        case Conn::Under:
            return "\\";
        case Conn::Over:
            return "/";
        case Conn::DProd:
            return "@" + std::to_string(k);
        case Conn::DDown:
            return "!" + std::to_string(k);
        case Conn::DUp:
            return "^" + std::to_string(k);
        default:
            return "";
    }
}

}  // namespace

Type Type::make(Conn c, int k, const Type& l, const Type& r, int sort) {
    auto n = std::make_shared<Node>();
    n->conn = c;
    n->k = k;
    n->left = l.node_;
    n->right = r.node_;
    n->sort = sort;
    n->connectives = 1 + l.connectives() + r.connectives();
    n->text = operand_text(l) + op_text(c, k) + operand_text(r);
    n->hash = mix(mix(mix(static_cast<std::size_t>(c), static_cast<std::size_t>(k)), l.hash()), r.hash());
    return Type(std::move(n));
}

Type Type::atom(std::string name, int sort) {
    if (sort < 0)
        throw SortError("atom '" + name + "' declared with negative sort");
    auto n = std::make_shared<Node>();
    n->conn = Conn::Atom;
    n->sort = sort;
    n->text = name;
    n->hash = mix(std::hash<std::string>{}(name), static_cast<std::size_t>(sort));
    n->name = std::move(name);
    return Type(std::move(n));
}

Type Type::unit_i() {
    static const Type t = [] {
        auto n = std::make_shared<Node>();
        n->conn = Conn::UnitI;
        n->connectives = 1;
        n->text = "I";
        n->hash = 0x49;
        return Type(std::move(n));
    }();
    return t;
}

Type Type::unit_j() {
    static const Type t = [] {
        auto n = std::make_shared<Node>();
        n->conn = Conn::UnitJ;
        n->sort = 1;
        n->connectives = 1;
        n->text = "J";
        n->hash = 0x4a;
        return Type(std::move(n));
    }();
    return t;
}

Type Type::prod(Type a, Type b) {
    return make(Conn::Prod, 0, a, b, a.sort() + b.sort());
}

Type Type::under(Type a, Type c) {
    if (c.sort() < a.sort())
        throw SortError("ill-sorted " + operand_text(a) + "\\" + operand_text(c) + ": sort would be negative");
    return make(Conn::Under, 0, a, c, c.sort() - a.sort());
}

Type Type::over(Type c, Type b) {
    if (c.sort() < b.sort())
        throw SortError("ill-sorted " + operand_text(c) + "/" + operand_text(b) + ": sort would be negative");
    return make(Conn::Over, 0, c, b, c.sort() - b.sort());
}

Type Type::dprod(int k, Type a, Type b) {
    if (a.sort() < 1 || k < 1 || k > a.sort())
        throw SortError("ill-sorted " + operand_text(a) + op_text(Conn::DProd, k) + operand_text(b) +
                        ": wrap index must lie in 1.." + std::to_string(a.sort()));
    return make(Conn::DProd, k, a, b, a.sort() + b.sort() - 1);
}

Type Type::ddown(int k, Type a, Type c) {
    if (a.sort() < 1 || k < 1 || k > a.sort())
        throw SortError("ill-sorted " + operand_text(a) + op_text(Conn::DDown, k) + operand_text(c) +
                        ": wrap index must lie in 1.." + std::to_string(a.sort()));
    if (c.sort() + 1 < a.sort())
        throw SortError("ill-sorted " + operand_text(a) + op_text(Conn::DDown, k) + operand_text(c) +
                        ": sort would be negative");
    return make(Conn::DDown, k, a, c, c.sort() + 1 - a.sort());
}

Type Type::dup(int k, Type c, Type b) {
    const int s = c.sort() + 1 - b.sort();
    if (s < 1 || k < 1 || k > s)
        throw SortError("ill-sorted " + operand_text(c) + op_text(Conn::DUp, k) + operand_text(b) +
                        ": wrap index must lie in 1.." + std::to_string(s));
    return make(Conn::DUp, k, c, b, s);
}

bool Type::is_binary() const {
    switch (conn()) {
        case Conn::Atom:
        case Conn::UnitI:
        case Conn::UnitJ:
            return false;
        default:
            return true;
    }
}

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash() || a.conn() != b.conn() || a.sort() != b.sort())
        return false;
    return a.str() == b.str();
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::initializer_list<std::pair<const std::string, int>> decls) {
    for (const auto& [name, sort] : decls)
        declare(name, sort);
}

void Signature::declare(const std::string& name, int sort) {
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
        throw Error("atom names must start with a lowercase letter: '" + name + "'");
    for (char ch : name)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
            throw Error("invalid character in atom name '" + name + "'");
    if (sort < 0)
        throw SortError("atom '" + name + "' declared with negative sort");
    auto [it, inserted] = sorts_.emplace(name, sort);
    if (!inserted && it->second != sort)
        throw Error("atom '" + name + "' declared twice with different sorts");
}

int Signature::sort_of(const std::string& name) const {
    auto it = sorts_.find(name);
    if (it == sorts_.end())
        throw Error("undeclared atom '" + name + "'");
    return it->second;
}

Signature Signature::parse(std::string_view text) {
    Signature sig;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string name, sort;
        if (!(fields >> name))
            continue;
        if (!(fields >> sort))
            throw Error("signature line " + std::to_string(lineno) + ": missing sort for '" + name + "'");
        int value = 0;
        try {
            std::size_t used = 0;
            value = std::stoi(sort, &used);
            if (used != sort.size())
                throw std::invalid_argument(sort);
        } catch (const std::exception&) {
            throw Error("signature line " + std::to_string(lineno) + ": bad sort '" + sort + "'");
        }
        sig.declare(name, value);
    }
    return sig;
}

Signature Signature::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open signature file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

// ---------------------------------------------------------------------------
// Type parser
//
//   type    := primary [binop primary]
//   primary := atom | 'I' | 'J' | '(' type ')'
//   binop   := '\' | '/' | '.' | ('@' | '!' | '^') digits
//
// Mixed or repeated operators must be parenthesized.

namespace {

class TypeParser {
  public:
    TypeParser(std::string_view text, std::size_t pos, const Signature& sig) : s_(text), pos_(pos), sig_(sig) {}

    Type type() {
        const std::size_t start = skip();
        Type left = primary();
        skip();
        if (!at_binop())
            return left;
        const char op = s_[pos_++];
        int k = 0;
        if (op == '@' || op == '!' || op == '^')
            k = number();
        Type right = primary();
        skip();
        if (at_binop())
            throw ParseError("operator chains must be parenthesized", pos_);
        try {
            switch (op) {
                case '.':
                    return Type::prod(left, right);
                case '\\':
                    return Type::under(left, right);
                case '/':
                    return Type::over(left, right);
                case '@':
                    return Type::dprod(k, left, right);
                case '!':
                    return Type::ddown(k, left, right);
                default:
                    return Type::dup(k, left, right);
            }
        } catch (const SortError& e) {
            throw ParseError(e.what(), start);
        }
    }

    std::size_t pos() const { return pos_; }

  private:
    std::size_t skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return pos_;
    }

    bool at_binop() const {
        if (pos_ >= s_.size())
            return false;
        switch (s_[pos_]) {
            case '\\':
            case '/':
            case '.':
            case '@':
            case '!':
            case '^':
                return true;
            default:
                return false;
        }
    }

    int number() {
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            value = value * 10 + (s_[pos_] - '0');
            if (value > 1000000)
                throw ParseError("wrap index too large", start);
            ++pos_;
        }
        if (pos_ == start)
            throw ParseError("expected a positive wrap index", start);
        if (value == 0)
            throw ParseError("wrap index must be positive", start);
        return static_cast<int>(value);
    }

    Type primary() {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of type", pos_);
        const char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            Type inner = type();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')')
                throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (ch == 'I' || ch == 'J') {
            const bool ident_follows = pos_ + 1 < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) ||
                                                                 s_[pos_ + 1] == '_');
            if (!ident_follows) {
                ++pos_;
                return ch == 'I' ? Type::unit_i() : Type::unit_j();
            }
        }
        if (std::islower(static_cast<unsigned char>(ch))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (!sig_.contains(name))
                throw ParseError("undeclared atom '" + name + "'", start);
            return sig_.atom(name);
        }
        throw ParseError(std::string("unexpected character '") + ch + "' in type", pos_);
    }

    std::string_view s_;
    std::size_t pos_;
    const Signature& sig_;
};

}  // namespace

Type parse_type_prefix(std::string_view text, std::size_t& pos, const Signature& sig) {
    TypeParser p(text, pos, sig);
    Type t = p.type();
    pos = p.pos();
    return t;
}

Type parse_type(std::string_view text, const Signature& sig) {
    std::size_t pos = 0;
    Type t = parse_type_prefix(text, pos, sig);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos != text.size())
        throw ParseError("trailing input after type", pos);
    return t;
}

}  // namespace dcalc
