// Explains an equivalence P ≃ Q as a chain of single monoid-axiom
// rewrites at explicit positions. Both sides are driven to the left-nested
// canonical representative; the chains meet there.
#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "mav/canon.hpp"
#include "mav/calculus.hpp"

namespace mav {

enum class Axiom : std::uint8_t {
    SeqUnitR,  // P◁1 ≃ P
    SeqUnitL,  // 1◁P ≃ P
    SeqAssoc,  // P◁(Q◁R) ≃ (P◁Q)◁R
    TensUnit,  // P⊗1 ≃ P
    TensComm,  // P⊗Q ≃ Q⊗P
    TensAssoc, // P⊗(Q⊗R) ≃ (P⊗Q)⊗R
    ParrUnit,
    ParrComm,
    ParrAssoc,
};

inline constexpr std::array<Axiom, 9> kAllAxioms = {
    Axiom::SeqUnitR, Axiom::SeqUnitL, Axiom::SeqAssoc,  Axiom::TensUnit, Axiom::TensComm,
    Axiom::TensAssoc, Axiom::ParrUnit, Axiom::ParrComm, Axiom::ParrAssoc,
};

inline constexpr std::string_view axiomName(Axiom a) {
    constexpr std::array<std::string_view, 9> names = {
        "Seq-UnitR", "Seq-UnitL", "Seq-Assoc", "Tens-Unit", "Tens-Comm",
        "Tens-Assoc", "Parr-Unit", "Parr-Comm", "Parr-Assoc",
    };
    return names[static_cast<std::size_t>(a)];
}

inline Kind axiomKind(Axiom a) {
    switch (a) {
    case Axiom::SeqUnitR:
    case Axiom::SeqUnitL:
    case Axiom::SeqAssoc:
        return Kind::Seq;
    case Axiom::TensUnit:
    case Axiom::TensComm:
    case Axiom::TensAssoc:
        return Kind::Tens;
    default:
        return Kind::Parr;
    }
}

/// One axiom use. `forward` rewrites the written left side into the right.
struct AxiomStep {
    Axiom axiom;
    bool forward;
    Path path;
};

/// Rewrites the root of s by one axiom; throws NoMatch if s has the wrong shape.
inline Structure rewriteAxiomRoot(Axiom a, bool forward, const Structure& s) {
    const Kind k = axiomKind(a);
    auto fail = [&]() -> Structure { throw NoMatch(std::string(axiomName(a)) + ": no match"); };
    auto op = [k](Structure l, Structure r) { return Structure::make(k, std::move(l), std::move(r)); };
    switch (a) {
    case Axiom::SeqUnitR:
    case Axiom::TensUnit:
    case Axiom::ParrUnit:
        if (forward)
            return s.is(k) && s.right().isUnit() ? s.left() : fail();
        return op(s, Structure::unit());
    case Axiom::SeqUnitL:
        if (forward)
            return s.is(k) && s.left().isUnit() ? s.right() : fail();
        return op(Structure::unit(), s);
    case Axiom::TensComm:
    case Axiom::ParrComm:
        return s.is(k) ? op(s.right(), s.left()) : fail();
    case Axiom::SeqAssoc:
    case Axiom::TensAssoc:
    case Axiom::ParrAssoc:
        if (forward) {
            if (!s.is(k) || !s.right().is(k))
                return fail();
            return op(op(s.left(), s.right().left()), s.right().right());
        }
        if (!s.is(k) || !s.left().is(k))
            return fail();
        return op(s.left().left(), op(s.left().right(), s.right()));
    }
    return fail();
}

inline Structure applyAxiom(const Structure& s, const AxiomStep& st) {
    return replaceAt(s, st.path, rewriteAxiomRoot(st.axiom, st.forward, subtermAt(s, st.path)));
}

namespace detail {

struct Rearranged {
    Structure result;
    std::vector<AxiomStep> steps;
};

inline void appendPrefixed(std::vector<AxiomStep>& out, const std::vector<AxiomStep>& in, Dir d) {
    for (const auto& st : in) {
        AxiomStep t = st;
        t.path.insert(t.path.begin(), d);
        out.push_back(std::move(t));
    }
}

inline Axiom unitAxiom(Kind k) {
    return k == Kind::Seq ? Axiom::SeqUnitR : k == Kind::Tens ? Axiom::TensUnit : Axiom::ParrUnit;
}
inline Axiom assocAxiom(Kind k) {
    return k == Kind::Seq ? Axiom::SeqAssoc : k == Kind::Tens ? Axiom::TensAssoc : Axiom::ParrAssoc;
}
inline Axiom commAxiom(Kind k) { return k == Kind::Tens ? Axiom::TensComm : Axiom::ParrComm; }

// op(a, e) with a sorted and e a single element: bubble e into place.
inline Rearranged insertSorted(Kind k, const Structure& a, const Structure& e) {
    auto op = [k](Structure l, Structure r) { return Structure::make(k, std::move(l), std::move(r)); };
    const Structure& last = a.is(k) ? a.right() : a;
    if (!(canon(e) < canon(last)))
        return {op(a, e), {}};
    if (!a.is(k))
        return {op(e, a), {{commAxiom(k), true, {}}}};
    Rearranged r;
    r.steps.push_back({assocAxiom(k), false, {}});
    r.steps.push_back({commAxiom(k), true, {Dir::R}});
    r.steps.push_back({assocAxiom(k), true, {}});
    Rearranged inner = insertSorted(k, a.left(), e);
    appendPrefixed(r.steps, inner.steps, Dir::L);
    r.result = op(inner.result, a.right());
    return r;
}

// op(a, b) with both sides already in canonical shape and not the unit.
inline Rearranged merge(Kind k, const Structure& a, const Structure& b) {
    auto op = [k](Structure l, Structure r) { return Structure::make(k, std::move(l), std::move(r)); };
    if (b.is(k)) {
        Rearranged r;
        r.steps.push_back({assocAxiom(k), true, {}});
        Rearranged inner = merge(k, a, b.left());
        appendPrefixed(r.steps, inner.steps, Dir::L);
        if (isCommutativeKind(k)) {
            Rearranged ins = insertSorted(k, inner.result, b.right());
            r.steps.insert(r.steps.end(), ins.steps.begin(), ins.steps.end());
            r.result = ins.result;
        } else {
            r.result = op(inner.result, b.right());
        }
        return r;
    }
    if (isCommutativeKind(k))
        return insertSorted(k, a, b);
    return {op(a, b), {}};
}

inline Rearranged toCanonical(const Structure& s) {
    if (!isBinary(s.kind()))
        return {s, {}};
    const Kind k = s.kind();
    Rearranged l = toCanonical(s.left());
    Rearranged r = toCanonical(s.right());
    Rearranged out;
    appendPrefixed(out.steps, l.steps, Dir::L);
    appendPrefixed(out.steps, r.steps, Dir::R);
    if (!isMonoidKind(k)) {
        out.result = Structure::make(k, l.result, r.result);
        return out;
    }
    if (l.result.isUnit()) {
        if (k == Kind::Seq) {
            out.steps.push_back({Axiom::SeqUnitL, true, {}});
        } else {
            out.steps.push_back({commAxiom(k), true, {}});
            out.steps.push_back({unitAxiom(k), true, {}});
        }
        out.result = r.result;
        return out;
    }
    if (r.result.isUnit()) {
        out.steps.push_back({unitAxiom(k), true, {}});
        out.result = l.result;
        return out;
    }
    Rearranged m = merge(k, l.result, r.result);
    out.steps.insert(out.steps.end(), m.steps.begin(), m.steps.end());
    out.result = m.result;
    return out;
}

} // namespace detail

/// Axiom steps taking s to canonicalStructure(s).
inline std::vector<AxiomStep> rearrangeToCanonical(const Structure& s) { return detail::toCanonical(s).steps; }

/// Axiom steps taking `from` to `to`; throws EndpointMismatch if they are
/// not equivalent.
inline std::vector<AxiomStep> explainEquivalence(const Structure& from, const Structure& to) {
    if (!equivalent(from, to))
        throw EndpointMismatch("explainEquivalence: structures are not equivalent");
    std::vector<AxiomStep> out = rearrangeToCanonical(from);
    std::vector<AxiomStep> back = rearrangeToCanonical(to);
    // Every axiom rewrite is inverted by the same axiom in the other direction.
    for (std::size_t i = back.size(); i-- > 0;) {
        AxiomStep inv = back[i];
        inv.forward = !inv.forward;
        out.push_back(std::move(inv));
    }
    return out;
}

} // namespace mav
