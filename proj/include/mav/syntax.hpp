// MAV structures: atoms, unit and the five binary connectives, kept in
// negation normal form. Values are immutable and share subtrees.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mav {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidPath : public Error {
public:
    using Error::Error;
};

/// Node kinds, declared in the order used to sort commutative children.
enum class Kind : std::uint8_t { Unit, PosAtom, NegAtom, Seq, Tens, Parr, With, Plus };

inline bool isBinary(Kind k) { return k >= Kind::Seq; }

inline bool isValidAtomName(std::string_view name) {
    if (name.empty() || name.front() < 'a' || name.front() > 'z')
        return false;
    for (char c : name)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'))
            return false;
    return true;
}

enum class Dir : std::uint8_t { L, R };

/// A position inside a structure; empty means the root.
using Path = std::vector<Dir>;

inline Path extend(Path p, Dir d) {
    p.push_back(d);
    return p;
}

inline Path joinPaths(Path prefix, const Path& suffix) {
    prefix.insert(prefix.end(), suffix.begin(), suffix.end());
    return prefix;
}

struct StructureNode;

class Structure {
public:
    /// The unit.
    Structure();

    static Structure unit() { return Structure(); }
    static Structure pos(std::string name) { return atom(Kind::PosAtom, std::move(name)); }
    static Structure neg(std::string name) { return atom(Kind::NegAtom, std::move(name)); }
    static Structure seq(Structure l, Structure r) { return make(Kind::Seq, std::move(l), std::move(r)); }
    static Structure tens(Structure l, Structure r) { return make(Kind::Tens, std::move(l), std::move(r)); }
    static Structure parr(Structure l, Structure r) { return make(Kind::Parr, std::move(l), std::move(r)); }
    static Structure with(Structure l, Structure r) { return make(Kind::With, std::move(l), std::move(r)); }
    static Structure plus(Structure l, Structure r) { return make(Kind::Plus, std::move(l), std::move(r)); }

    static Structure make(Kind k, Structure l, Structure r);

    Kind kind() const;
    bool isUnit() const { return kind() == Kind::Unit; }
    bool isAtom() const { return kind() == Kind::PosAtom || kind() == Kind::NegAtom; }
    bool is(Kind k) const { return kind() == k; }

    /// Atom name; empty for non-atoms.
    const std::string& name() const;
    const Structure& left() const;
    const Structure& right() const;

    std::size_t size() const;
    std::size_t hash() const;

    friend bool operator==(const Structure& a, const Structure& b);
    friend bool operator!=(const Structure& a, const Structure& b) { return !(a == b); }

private:
    explicit Structure(std::shared_ptr<const StructureNode> n) : node_(std::move(n)) {}
    static Structure atom(Kind k, std::string name);

    std::shared_ptr<const StructureNode> node_;
};

struct StructureNode {
    Kind kind = Kind::Unit;
    std::string atom;
    std::shared_ptr<const Structure> left, right;
    std::size_t size = 1;
    std::size_t hash = 0;
};

namespace detail {
inline std::size_t hashMix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
inline const std::shared_ptr<const StructureNode>& unitNode() {
    static const std::shared_ptr<const StructureNode> n = [] {
        auto u = std::make_shared<StructureNode>();
        u->hash = 0x51ed270b;
        return u;
    }();
    return n;
}
} // namespace detail

inline Structure::Structure() : node_(detail::unitNode()) {}

inline Structure Structure::make(Kind k, Structure l, Structure r) {
    if (!isBinary(k))
        throw std::invalid_argument("Structure::make: kind is not a connective");
    auto n = std::make_shared<StructureNode>();
    n->kind = k;
    n->size = 1 + l.size() + r.size();
    n->hash = detail::hashMix(detail::hashMix(static_cast<std::size_t>(k) * 0x9e3779b97f4a7c15ULL, l.hash()),
                              r.hash());
    n->left = std::make_shared<const Structure>(std::move(l));
    n->right = std::make_shared<const Structure>(std::move(r));
    return Structure(std::move(n));
}

inline Structure Structure::atom(Kind k, std::string name) {
    if (!isValidAtomName(name))
        throw std::invalid_argument("invalid atom name '" + name + "'");
    auto n = std::make_shared<StructureNode>();
    n->kind = k;
    n->hash = detail::hashMix(std::hash<std::string>{}(name), k == Kind::PosAtom ? 0x1111 : 0x2222);
    n->atom = std::move(name);
    return Structure(std::move(n));
}

inline Kind Structure::kind() const { return node_->kind; }
inline const std::string& Structure::name() const { return node_->atom; }
inline const Structure& Structure::left() const { return *node_->left; }
inline const Structure& Structure::right() const { return *node_->right; }
inline std::size_t Structure::size() const { return node_->size; }
inline std::size_t Structure::hash() const { return node_->hash; }

inline bool operator==(const Structure& a, const Structure& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size())
        return false;
    if (!isBinary(a.kind()))
        return a.name() == b.name();
    return a.left() == b.left() && a.right() == b.right();
}

struct StructureHash {
    std::size_t operator()(const Structure& s) const { return s.hash(); }
};

/// De Morgan dual. Seq is self-dual and the unit is its own dual.
inline Structure dual(const Structure& p) {
    switch (p.kind()) {
    case Kind::Unit:
        return p;
    case Kind::PosAtom:
        return Structure::neg(p.name());
    case Kind::NegAtom:
        return Structure::pos(p.name());
    case Kind::Seq:
        return Structure::seq(dual(p.left()), dual(p.right()));
    case Kind::Tens:
        return Structure::parr(dual(p.left()), dual(p.right()));
    case Kind::Parr:
        return Structure::tens(dual(p.left()), dual(p.right()));
    case Kind::With:
        return Structure::plus(dual(p.left()), dual(p.right()));
    case Kind::Plus:
        return Structure::with(dual(p.left()), dual(p.right()));
    }
    return p;
}

inline std::size_t size(const Structure& p) { return p.size(); }

inline bool validPath(const Structure& p, const Path& path) {
    const Structure* cur = &p;
    for (Dir d : path) {
        if (!isBinary(cur->kind()))
            return false;
        cur = d == Dir::L ? &cur->left() : &cur->right();
    }
    return true;
}

inline const Structure& subtermAt(const Structure& p, const Path& path) {
    const Structure* cur = &p;
    for (Dir d : path) {
        if (!isBinary(cur->kind()))
            throw InvalidPath("path descends into a leaf");
        cur = d == Dir::L ? &cur->left() : &cur->right();
    }
    return *cur;
}

namespace detail {
inline Structure replaceFrom(const Structure& p, const Path& path, std::size_t i, const Structure& q) {
    if (i == path.size())
        return q;
    if (!isBinary(p.kind()))
        throw InvalidPath("path descends into a leaf");
    if (path[i] == Dir::L)
        return Structure::make(p.kind(), replaceFrom(p.left(), path, i + 1, q), p.right());
    return Structure::make(p.kind(), p.left(), replaceFrom(p.right(), path, i + 1, q));
}
} // namespace detail

inline Structure replaceAt(const Structure& p, const Path& path, const Structure& q) {
    return detail::replaceFrom(p, path, 0, q);
}

} // namespace mav
