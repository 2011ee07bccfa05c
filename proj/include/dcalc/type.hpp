#ifndef DCALC_TYPE_HPP
#define DCALC_TYPE_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dcalc {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Ill-sorted construction (negative sort, wrap index out of range, ...).
class SortError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

  private:
    std::size_t pos_;
};

enum class Conn { Atom, UnitI, UnitJ, Prod, Under, Over, DProd, DDown, DUp };

struct TypeNode {
    Conn conn;
    std::string name;
    int k = 0;
    std::shared_ptr<const TypeNode> left, right;
    std::string text;
    int sort = 0;
    int connectives = 0;
    std::size_t hash = 0;
};

// Sorted type of the discontinuous Lambek calculus. Immutable; cheap to copy.
//
// Operand naming follows the written form: Under(A, C) is A\C, Over(C, B) is
// C/B, DDown(k, A, C) is A!kC, DUp(k, C, B) is C^kB, DProd(k, A, B) is A@kB.
class Type {
  public:
    static Type atom(std::string name, int sort);
    static Type unit_i();
    static Type unit_j();
    static Type prod(Type a, Type b);
    static Type under(Type a, Type c);
    static Type over(Type c, Type b);
    static Type dprod(int k, Type a, Type b);
    static Type ddown(int k, Type a, Type c);
    static Type dup(int k, Type c, Type b);

    Conn conn() const { return node_->conn; }
    const std::string& name() const { return node_->name; }
    int k() const { return node_->k; }
    Type left() const { return Type(node_->left); }
    Type right() const { return Type(node_->right); }
    int sort() const { return node_->sort; }
    bool is_binary() const;
    // Number of connective occurrences; atoms count 0, units and binary
    // connectives count 1 each.
    int connectives() const { return node_->connectives; }
    std::size_t hash() const { return node_->hash; }

    const std::string& str() const { return node_->text; }

    friend bool operator==(const Type& a, const Type& b);
    friend bool operator<(const Type& a, const Type& b) { return a.str() < b.str(); }

  private:
    using Node = TypeNode;
    explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Type make(Conn c, int k, const Type& l, const Type& r, int sort);

    std::shared_ptr<const Node> node_;
};

inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }

// Atom sort declarations; undeclared atoms are rejected by the parsers.
class Signature {
  public:
    Signature() = default;
    Signature(std::initializer_list<std::pair<const std::string, int>> decls);

    void declare(const std::string& name, int sort);
    bool contains(const std::string& name) const { return sorts_.count(name) != 0; }
    int sort_of(const std::string& name) const;
    Type atom(const std::string& name) const { return Type::atom(name, sort_of(name)); }
    const std::map<std::string, int>& entries() const { return sorts_; }

    // One declaration per line, `name<TAB>sort`; blank lines and `#` comments
    // are skipped.
    static Signature parse(std::string_view text);
    static Signature load(const std::string& path);

  private:
    std::map<std::string, int> sorts_;
};

Type parse_type(std::string_view text, const Signature& sig);

// Parses a type starting at `pos`, advancing it past the consumed text.
// Stops at the first character that cannot continue the type.
Type parse_type_prefix(std::string_view text, std::size_t& pos, const Signature& sig);

}  // namespace dcalc

template <> struct std::hash<dcalc::Type> {
    std::size_t operator()(const dcalc::Type& t) const noexcept { return t.hash(); }
};

#endif
