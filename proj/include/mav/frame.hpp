// Witnessed frames: a preorder whose ≤ is inhabited by explicit witnesses,
// with a commutative par-monoid, a seq-monoid sharing its unit, and a
// monotone plus, subject to the four frame laws. The ideal and Chu
// constructions are written against this signature; NMav, the frame of
// structures ordered by normal derivability, is the shipped instance.
#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <unordered_map>

#include "mav/calculus.hpp"
#include "mav/canon.hpp"
#include "mav/text.hpp"

namespace mav {

template <class Fr>
concept WitnessedFrame = requires(const typename Fr::Element& x, const typename Fr::Witness& w) {
    typename Fr::Element;
    typename Fr::Witness;
    { Fr::unit() } -> std::same_as<typename Fr::Element>;
    { Fr::par(x, x) } -> std::same_as<typename Fr::Element>;
    { Fr::seq(x, x) } -> std::same_as<typename Fr::Element>;
    { Fr::plus(x, x) } -> std::same_as<typename Fr::Element>;

    // Preorder.
    { Fr::refl(x) } -> std::same_as<typename Fr::Witness>;
    { Fr::trans(w, w) } -> std::same_as<typename Fr::Witness>;
    { Fr::source(w) } -> std::convertible_to<typename Fr::Element>;
    { Fr::target(w) } -> std::convertible_to<typename Fr::Element>;

    // Monotonicity of the three operations.
    { Fr::parMono(w, w) } -> std::same_as<typename Fr::Witness>;
    { Fr::seqMono(w, w) } -> std::same_as<typename Fr::Witness>;
    { Fr::plusMono(w, w) } -> std::same_as<typename Fr::Witness>;

    // Monoid laws, one witness per direction.
    { Fr::parComm(x, x) } -> std::same_as<typename Fr::Witness>;         // x⅋y ≤ y⅋x
    { Fr::parAssoc(x, x, x) } -> std::same_as<typename Fr::Witness>;     // x⅋(y⅋z) ≤ (x⅋y)⅋z
    { Fr::parAssocInv(x, x, x) } -> std::same_as<typename Fr::Witness>;  // (x⅋y)⅋z ≤ x⅋(y⅋z)
    { Fr::parUnit(x) } -> std::same_as<typename Fr::Witness>;            // x⅋1 ≤ x
    { Fr::parUnitInv(x) } -> std::same_as<typename Fr::Witness>;         // x ≤ x⅋1
    { Fr::seqAssoc(x, x, x) } -> std::same_as<typename Fr::Witness>;     // x◁(y◁z) ≤ (x◁y)◁z
    { Fr::seqAssocInv(x, x, x) } -> std::same_as<typename Fr::Witness>;  // (x◁y)◁z ≤ x◁(y◁z)
    { Fr::seqUnitR(x) } -> std::same_as<typename Fr::Witness>;           // x◁1 ≤ x
    { Fr::seqUnitRInv(x) } -> std::same_as<typename Fr::Witness>;        // x ≤ x◁1
    { Fr::seqUnitL(x) } -> std::same_as<typename Fr::Witness>;           // 1◁x ≤ x
    { Fr::seqUnitLInv(x) } -> std::same_as<typename Fr::Witness>;        // x ≤ 1◁x

    // The four frame laws.
    { Fr::sequence(x, x, x, x) } -> std::same_as<typename Fr::Witness>;  // (w◁x)⅋(y◁z) ≤ (w⅋y)◁(x⅋z)
    { Fr::external(x, x, x) } -> std::same_as<typename Fr::Witness>;     // (x+y)⅋z ≤ (x⅋z)+(y⅋z)
    { Fr::medial(x, x, x, x) } -> std::same_as<typename Fr::Witness>;    // (w◁x)+(y◁z) ≤ (w+y)◁(x+z)
    { Fr::tidy() } -> std::same_as<typename Fr::Witness>;                // 1+1 ≤ 1

    // Element comparison: literal identity, equality up to the frame's
    // equations, and a hash consistent with the latter.
    { Fr::same(x, x) } -> std::same_as<bool>;
    { Fr::equal(x, x) } -> std::same_as<bool>;
    { Fr::hashOf(x) } -> std::same_as<std::size_t>;

    /// Empty when w is a valid witness of source(w) ≤ target(w).
    { Fr::checkWitness(w) } -> std::same_as<std::string>;
    { Fr::show(x) } -> std::same_as<std::string>;
};

/// Structures ordered by normal derivability. The frame's + is With and its
/// unit is 1; witnesses are normal derivations.
struct NMav {
    using Element = Structure;
    using Witness = Derivation;

    static Element unit() { return Structure::unit(); }
    static Element par(const Element& x, const Element& y) { return Structure::parr(x, y); }
    static Element seq(const Element& x, const Element& y) { return Structure::seq(x, y); }
    static Element plus(const Element& x, const Element& y) { return Structure::with(x, y); }

    static Witness refl(const Element& x) { return mav::refl(x); }
    static Witness trans(const Witness& a, const Witness& b) { return concat(a, b); }
    static const Element& source(const Witness& w) { return w.goal; }
    static const Element& target(const Witness& w) { return w.last(); }

    static Witness parMono(const Witness& a, const Witness& b) { return congruence(Kind::Parr, a, b); }
    static Witness seqMono(const Witness& a, const Witness& b) { return congruence(Kind::Seq, a, b); }
    static Witness plusMono(const Witness& a, const Witness& b) { return congruence(Kind::With, a, b); }

    static Witness parComm(const Element& x, const Element& y) { return equivDerivation(par(x, y), par(y, x)); }
    static Witness parAssoc(const Element& x, const Element& y, const Element& z) {
        return equivDerivation(par(x, par(y, z)), par(par(x, y), z));
    }
    static Witness parAssocInv(const Element& x, const Element& y, const Element& z) {
        return equivDerivation(par(par(x, y), z), par(x, par(y, z)));
    }
    static Witness parUnit(const Element& x) { return equivDerivation(par(x, unit()), x); }
    static Witness parUnitInv(const Element& x) { return equivDerivation(x, par(x, unit())); }
    static Witness seqAssoc(const Element& x, const Element& y, const Element& z) {
        return equivDerivation(seq(x, seq(y, z)), seq(seq(x, y), z));
    }
    static Witness seqAssocInv(const Element& x, const Element& y, const Element& z) {
        return equivDerivation(seq(seq(x, y), z), seq(x, seq(y, z)));
    }
    static Witness seqUnitR(const Element& x) { return equivDerivation(seq(x, unit()), x); }
    static Witness seqUnitRInv(const Element& x) { return equivDerivation(x, seq(x, unit())); }
    static Witness seqUnitL(const Element& x) { return equivDerivation(seq(unit(), x), x); }
    static Witness seqUnitLInv(const Element& x) { return equivDerivation(x, seq(unit(), x)); }

    static Witness sequence(const Element& w, const Element& x, const Element& y, const Element& z) {
        return sequenceLaw(w, x, y, z);
    }
    static Witness external(const Element& x, const Element& y, const Element& z) { return externalLaw(x, y, z); }
    static Witness medial(const Element& w, const Element& x, const Element& y, const Element& z) {
        return medialLaw(w, x, y, z);
    }
    static Witness tidy() { return tidyLaw(); }

    static bool same(const Element& x, const Element& y) { return x == y; }
    static bool equal(const Element& x, const Element& y) { return equivalent(x, y); }
    static std::size_t hashOf(const Element& x) { return std::hash<std::string>{}(canonKey(x)); }

    /// Accepted witnesses are remembered, since nested members are
    /// revalidated every time an enclosing member is audited.
    static std::string checkWitness(const Witness& w) {
        auto& seen = acceptedWitnesses();
        std::size_t h = w.goal.hash();
        for (const Step& s : w.steps)
            h = detail::hashMix(h, s.target.hash() * 4 + static_cast<std::size_t>(s.kind) * 2 + s.path.size());
        auto [lo, hi] = seen.equal_range(h);
        for (auto it = lo; it != hi; ++it)
            if (sameDerivation(it->second, w))
                return {};
        Report r = checkDerivation(w, Fragment::Normal);
        if (!r)
            return "step " + std::to_string(*r.failedStep) + ": " + r.reason;
        if (seen.size() >= kWitnessCacheLimit)
            seen.clear();
        seen.emplace(h, w);
        return {};
    }
    static std::string show(const Element& x) { return text::render(x); }

private:
    static constexpr std::size_t kWitnessCacheLimit = 1 << 16;

    static std::unordered_multimap<std::size_t, Witness>& acceptedWitnesses() {
        static thread_local std::unordered_multimap<std::size_t, Witness> seen;
        return seen;
    }

    static bool sameDerivation(const Derivation& a, const Derivation& b) {
        if (a.goal != b.goal || a.steps.size() != b.steps.size())
            return false;
        for (std::size_t i = 0; i < a.steps.size(); ++i) {
            const Step& x = a.steps[i];
            const Step& y = b.steps[i];
            if (x.kind != y.kind || x.rule != y.rule || x.path != y.path || x.target != y.target)
                return false;
        }
        return true;
    }
};

static_assert(WitnessedFrame<NMav>);

} // namespace mav
