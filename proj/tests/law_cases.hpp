// Random rule and axiom instances in context, and a sampler that pushes
// members through the order each one denotes.
#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mav/nbe.hpp"
#include "mav/rearrange.hpp"
#include "support.hpp"

namespace mav::fixtures {

struct LawCase {
    std::string name;
    Structure from;
    Step step;
};

inline Structure smallStructure(std::mt19937& rng) { return randomStructureUpTo(rng, 3, {"a", "b"}); }

/// A root instance of r: the redex and the binding it needs.
inline std::pair<Structure, std::optional<Structure>> ruleRedex(RuleId r, std::mt19937& rng) {
    using St = Structure;
    auto x = [&]() { return smallStructure(rng); };
    const St one = St::unit();
    switch (r) {
    case RuleId::Interact: {
        St p = x();
        return {St::parr(p, dual(p)), {}};
    }
    case RuleId::AtomInteract:
        return {St::parr(St::neg("a"), St::pos("a")), {}};
    case RuleId::Switch:
        return {St::parr(St::tens(x(), x()), x()), {}};
    case RuleId::Sequence:
        return {St::parr(St::seq(x(), x()), St::seq(x(), x())), {}};
    case RuleId::Tidy:
        return {St::with(one, one), {}};
    case RuleId::Left:
    case RuleId::Right:
        return {St::plus(x(), x()), {}};
    case RuleId::External:
        return {St::parr(St::with(x(), x()), x()), {}};
    case RuleId::Medial:
        return {St::with(St::seq(x(), x()), St::seq(x(), x())), {}};
    case RuleId::CoInteract:
        return {one, x()};
    case RuleId::CoTidy:
        return {one, {}};
    case RuleId::CoSequence:
        return {St::seq(St::tens(x(), x()), St::tens(x(), x())), {}};
    case RuleId::CoLeft:
    case RuleId::CoRight:
        return {x(), x()};
    case RuleId::CoExternal: {
        St shared = x();
        return {St::plus(St::tens(x(), shared), St::tens(x(), shared)), {}};
    }
    case RuleId::CoMedial:
        return {St::seq(St::plus(x(), x()), St::plus(x(), x())), {}};
    }
    return {one, {}};
}

/// Puts `inner` under connective k on the given side of a random partner.
inline std::pair<Structure, Path> inContext(const Structure& inner, Kind k, Dir side, std::mt19937& rng) {
    Structure other = smallStructure(rng);
    if (side == Dir::L)
        return {Structure::make(k, inner, other), {Dir::L}};
    return {Structure::make(k, other, inner), {Dir::R}};
}

inline constexpr std::array<Kind, 5> kConnectives = {Kind::Seq, Kind::Tens, Kind::Parr, Kind::With, Kind::Plus};

/// Rule r at the root (k = Unit) or under k on one side.
inline LawCase ruleCase(RuleId r, Kind k, Dir side, std::mt19937& rng) {
    auto [redex, binding] = ruleRedex(r, rng);
    Structure from = redex;
    Path path;
    if (k != Kind::Unit)
        std::tie(from, path) = inContext(redex, k, side, rng);
    Structure to = applyRule(from, r, path, binding).front();
    std::string where = k == Kind::Unit ? "root" : std::string(side == Dir::L ? "left of " : "right of ") +
                                                     std::string(1, "1ab;*|&+"[static_cast<int>(k)]);
    return {std::string(ruleName(r)) + " at " + where, from, Step::infer(r, path, to)};
}

/// A random instance of axiom ax in the given direction, at the root.
inline Structure axiomRedex(Axiom ax, bool forward, std::mt19937& rng) {
    using St = Structure;
    auto x = [&]() { return smallStructure(rng); };
    const Kind k = axiomKind(ax);
    switch (ax) {
    case Axiom::SeqUnitR:
    case Axiom::TensUnit:
    case Axiom::ParrUnit:
        return forward ? St::make(k, x(), St::unit()) : x();
    case Axiom::SeqUnitL:
        return forward ? St::seq(St::unit(), x()) : x();
    case Axiom::TensComm:
    case Axiom::ParrComm:
        return St::make(k, x(), x());
    case Axiom::SeqAssoc:
    case Axiom::TensAssoc:
    case Axiom::ParrAssoc:
        return forward ? St::make(k, x(), St::make(k, x(), x())) : St::make(k, St::make(k, x(), x()), x());
    }
    return St::unit();
}

/// A member of η⁺(x) at some z ⟶* x, drawn from a few shapes of normal witness.
inline Member<NMav> etaSample(const Structure& x, std::mt19937& rng) {
    using I = Ideals<NMav>;
    switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 1:
        return I::downClose(I::etaRefl(x), NMav::parUnit(x));
    case 2: {
        Structure q = smallStructure(rng);
        return I::memberEta(x, singleStep(Structure::plus(x, q), RuleId::Left, {}));
    }
    case 3: {
        Structure a = Structure::pos("a");
        Structure z = Structure::parr(x, Structure::parr(dual(a), a));
        Derivation d = concat(singleStep(z, RuleId::AtomInteract, {Dir::R}),
                              equivDerivation(Structure::parr(x, Structure::unit()), x));
        return I::memberEta(x, d);
    }
    case 4:
        return I::plusCombine(I::etaRefl(x), I::downClose(I::etaRefl(x), NMav::parUnit(x)));
    default:
        return I::etaRefl(x);
    }
}

/// Pushes `samples` members each way through ⟦to⟧ ⊑ ⟦from⟧ and validates the
/// results. Returns a diagnostic on the first failure.
inline std::optional<std::string> checkOrder(Normalizer& n, const Structure& from, const Structure& to,
                                             const ChuOrder<NMav>& o, std::mt19937& rng, int samples) {
    using I = Ideals<NMav>;
    const auto& eFrom = n.interpret(from);
    const auto& eTo = n.interpret(to);
    if (!o.from().sameIdeals(eTo) || !o.to().sameIdeals(eFrom))
        return "order has the wrong endpoints";
    try {
        const Structure dualTo = dual(to);
        for (int i = 0; i < samples; ++i) {
            // Forward: pos⟦to⟧ is neg⟦~to⟧, reached by reflection.
            Member<NMav> in = n.reflect(dualTo)(etaSample(dualTo, rng));
            if (std::string why = I::validate(eTo.pos(), in.at(), in); !why.empty())
                return "forward sample: " + why;
            Member<NMav> out = o.forward(in);
            if (std::string why = I::validate(eFrom.pos(), out.at(), out); !why.empty())
                return "forward: " + why;

            Member<NMav> back = n.reflect(from)(etaSample(from, rng));
            Member<NMav> res = o.backward(back);
            if (std::string why = I::validate(eTo.neg(), res.at(), res); !why.empty())
                return "backward: " + why;
        }
    } catch (const Error& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

} // namespace mav::fixtures
