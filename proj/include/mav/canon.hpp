// Canonical forms deciding the structural congruence: Seq, Tens and Parr
// are monoids with the unit, Tens and Parr are commutative. With and Plus
// carry no equations and stay binary.
#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "mav/syntax.hpp"

namespace mav {

struct CanonicalForm {
    Kind kind = Kind::Unit;
    std::string atom;
    std::vector<CanonicalForm> children;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Total order on canonical forms: node kind, then atom name, then
/// children lexicographically.
inline std::strong_ordering compare(const CanonicalForm& a, const CanonicalForm& b) {
    if (auto c = a.kind <=> b.kind; c != 0)
        return c;
    if (auto c = a.atom.compare(b.atom); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    std::size_t n = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = compare(a.children[i], b.children[i]); c != 0)
            return c;
    return a.children.size() <=> b.children.size();
}

inline bool operator<(const CanonicalForm& a, const CanonicalForm& b) { return compare(a, b) < 0; }

inline bool isMonoidKind(Kind k) { return k == Kind::Seq || k == Kind::Tens || k == Kind::Parr; }
inline bool isCommutativeKind(Kind k) { return k == Kind::Tens || k == Kind::Parr; }

inline CanonicalForm canon(const Structure& p) {
    CanonicalForm out;
    out.kind = p.kind();
    if (!isBinary(p.kind())) {
        out.atom = p.name();
        return out;
    }
    CanonicalForm l = canon(p.left());
    CanonicalForm r = canon(p.right());
    if (!isMonoidKind(p.kind())) {
        out.children.push_back(std::move(l));
        out.children.push_back(std::move(r));
        return out;
    }
    for (CanonicalForm* c : {&l, &r}) {
        if (c->kind == Kind::Unit)
            continue;
        if (c->kind == p.kind())
            for (auto& g : c->children)
                out.children.push_back(std::move(g));
        else
            out.children.push_back(std::move(*c));
    }
    if (isCommutativeKind(p.kind()))
        std::sort(out.children.begin(), out.children.end());
    if (out.children.empty())
        return CanonicalForm{};
    if (out.children.size() == 1)
        return std::move(out.children.front());
    return out;
}

/// Reads a canonical form back as a structure; n-ary nodes nest to the left.
inline Structure toStructure(const CanonicalForm& c) {
    switch (c.kind) {
    case Kind::Unit:
        return Structure::unit();
    case Kind::PosAtom:
        return Structure::pos(c.atom);
    case Kind::NegAtom:
        return Structure::neg(c.atom);
    default:
        break;
    }
    Structure acc = toStructure(c.children.front());
    for (std::size_t i = 1; i < c.children.size(); ++i)
        acc = Structure::make(c.kind, std::move(acc), toStructure(c.children[i]));
    return acc;
}

/// Canonical representative structure of the congruence class of p.
inline Structure canonicalStructure(const Structure& p) { return toStructure(canon(p)); }

inline bool equivalent(const Structure& p, const Structure& q) {
    if (p == q)
        return true;
    return canon(p) == canon(q);
}

/// Compact serialization usable as a hash key.
inline void appendKey(std::string& out, const CanonicalForm& c) {
    out.push_back(static_cast<char>('0' + static_cast<int>(c.kind)));
    if (!c.atom.empty()) {
        out += c.atom;
        out.push_back('.');
    }
    if (!c.children.empty()) {
        out.push_back('(');
        for (const auto& g : c.children)
            appendKey(out, g);
        out.push_back(')');
    }
}

inline std::string canonKey(const Structure& p) {
    std::string out;
    appendKey(out, canon(p));
    return out;
}

} // namespace mav
