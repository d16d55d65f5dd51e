// Normalisation by evaluation. A structure P is interpreted as an element
// ⟦P⟧ of the Chu construction over ideals of the normal-proof frame; a
// derivation S ⟶* T becomes an order ⟦T⟧ ⊑ ⟦S⟧. A proof of P yields
// I ⊑ ⟦P⟧, and running its backward map on the reflection of P gives a
// member of K at P, which is a normal derivation P ⟶* 1.
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mav/calculus.hpp"
#include "mav/chu.hpp"
#include "mav/frame.hpp"
#include "mav/rearrange.hpp"

namespace mav {

/// Raised when normalisation is asked to process something that is not a
/// proof, or (defensively) when its output fails the normal checker.
class NormalizationError : public Error {
public:
    using Error::Error;
};

class Normalizer {
public:
    using C = Chu<NMav>;
    using I = Ideals<NMav>;
    using D = IdealDesc<NMav>;
    using M = Member<NMav>;
    using T = Transformer<NMav>;
    using E = ChuElement<NMav>;
    using O = ChuOrder<NMav>;

    /// ⟦P⟧. Memoised by the literal structure.
    const E& interpret(const Structure& p) {
        if (auto it = elements_.find(p); it != elements_.end())
            return it->second;
        return elements_.emplace(p, build(p)).first->second;
    }

    /// Do ⟦P̄⟧ and ¬⟦P⟧ carry the same pair of ideals? P and P̄ themselves
    /// are not memoised, only their proper subterms.
    bool dualCoherent(const Structure& p) { return build(dual(p)).sameIdeals(C::neg(build(p))); }

    // -----------------------------------------------------------------------
    // Evaluation

    /// ⟦T⟧ ⊑ ⟦S⟧ for a root instance of rule r rewriting `from` into `to`.
    O ruleAtRoot(RuleId r, const Structure& from, const Structure& to) {
        std::vector<E> args;
        auto push = [&](const Structure& x) { args.push_back(interpret(x)); };
        switch (r) {
        case RuleId::Interact:
        case RuleId::AtomInteract:
            push(from.left());
            break;
        case RuleId::Switch:
        case RuleId::External:
            push(from.left().left());
            push(from.left().right());
            push(from.right());
            break;
        case RuleId::Sequence:
        case RuleId::Medial:
        case RuleId::CoSequence:
        case RuleId::CoMedial:
            push(from.left().left());
            push(from.left().right());
            push(from.right().left());
            push(from.right().right());
            break;
        case RuleId::Left:
        case RuleId::Right:
            push(from.left());
            push(from.right());
            break;
        case RuleId::CoInteract:
            push(to.left());
            break;
        case RuleId::CoLeft:
        case RuleId::CoRight:
            push(to.left());
            push(to.right());
            break;
        case RuleId::CoExternal:
            push(from.left().left());
            push(from.right().left());
            push(from.left().right());
            break;
        case RuleId::Tidy:
        case RuleId::CoTidy:
            break;
        }
        return C::retype(C::ruleLaw(r, args), interpret(to), interpret(from));
    }

    /// ⟦T⟧ ⊑ ⟦S⟧ for a root axiom rewrite S ≃ T.
    O axiomAtRoot(Axiom ax, bool forward, const Structure& s) {
        std::vector<E> args;
        auto push = [&](const Structure& x) { args.push_back(interpret(x)); };
        switch (ax) {
        case Axiom::SeqUnitR:
        case Axiom::TensUnit:
        case Axiom::ParrUnit:
            push(forward ? s.left() : s);
            break;
        case Axiom::SeqUnitL:
            push(forward ? s.right() : s);
            break;
        case Axiom::TensComm:
        case Axiom::ParrComm:
            push(forward ? s.left() : s.right());
            push(forward ? s.right() : s.left());
            break;
        case Axiom::SeqAssoc:
        case Axiom::TensAssoc:
        case Axiom::ParrAssoc:
            if (forward) {
                push(s.left());
                push(s.right().left());
                push(s.right().right());
            } else {
                push(s.left().left());
                push(s.left().right());
                push(s.right());
            }
            break;
        }
        return C::axiomLaw(ax, forward, args);
    }

    /// Lifts an order ⟦t⟧ ⊑ ⟦subtermAt(s, p)⟧ to ⟦s[t]⟧ ⊑ ⟦s⟧.
    O lift(const Structure& s, const Path& p, std::size_t depth, const O& inner) {
        if (depth == p.size())
            return inner;
        const Kind k = s.kind();
        if (p[depth] == Dir::L)
            return C::monoLeft(k, lift(s.left(), p, depth + 1, inner), interpret(s.right()));
        return C::monoRight(k, interpret(s.left()), lift(s.right(), p, depth + 1, inner));
    }

    /// ⟦to⟧ ⊑ ⟦from⟧ for from ≃ to, one axiom at a time.
    O equivalence(const Structure& from, const Structure& to) {
        O acc = C::identity(interpret(from));
        Structure cur = from;
        for (const AxiomStep& st : explainEquivalence(from, to)) {
            const Structure sub = subtermAt(cur, st.path);
            O root = axiomAtRoot(st.axiom, st.forward, sub);
            acc = C::compose(lift(cur, st.path, 0, root), acc);
            cur = applyAxiom(cur, st);
        }
        return acc;
    }

    /// ⟦target⟧ ⊑ ⟦from⟧ for one derivation step.
    O lawFor(const Structure& from, const Step& step) {
        if (!step.isInfer())
            return equivalence(from, step.target);
        const Structure sub = subtermAt(from, step.path);
        const Structure res = subtermAt(step.target, step.path);
        return lift(from, step.path, 0, ruleAtRoot(step.rule, sub, res));
    }

    /// I ⊑ ⟦goal⟧ for a proof.
    O evalProof(const Derivation& d) {
        if (!d.isProof())
            throw NormalizationError("evalProof: derivation does not end in a unit");
        O acc = C::identity(interpret(d.goal));
        Structure cur = d.goal;
        for (const Step& s : d.steps) {
            acc = C::compose(lawFor(cur, s), acc);
            cur = s.target;
        }
        return C::compose(equivalence(cur, Structure::unit()), acc);
    }

    // -----------------------------------------------------------------------
    // Read-back

    /// η⁺(P) ⊆ neg⟦P⟧
    const T& reflect(const Structure& p) {
        if (auto it = reflections_.find(p); it != reflections_.end())
            return it->second;
        T t = buildReflect(p);
        return reflections_.emplace(p, std::move(t)).first->second;
    }

    /// From b in pos⟦P⟧ at u, a normal derivation u⅋P ⟶* 1.
    Derivation reify(const Structure& p, const M& b) {
        M k = interpret(p).pairUp(C::pairAt(b, reflect(p)(I::etaRefl(p))));
        return I::kCollapse(k);
    }

    /// A normal proof of P from I ⊑ ⟦P⟧.
    Derivation extract(const Structure& p, const O& o) {
        M k = o.backward(reflect(p)(I::etaRefl(p)));
        return mergeEquivSteps(I::kCollapse(k));
    }

    /// A normal proof with the same goal as the given proof.
    Derivation normalize(const Derivation& d) {
        Report r = checkProof(d, Fragment::Symmetric);
        if (!r)
            throw NormalizationError("input is not a proof: " + r.reason);
        Derivation out = extract(d.goal, evalProof(d));
        Report n = checkProof(out, Fragment::Normal);
        if (!n || out.goal != d.goal)
            throw NormalizationError("normal form failed the checker: " + n.reason);
        return out;
    }

private:
    // ⟦P⟧ from the memoised interpretations of its immediate subterms.
    E build(const Structure& p) {
        switch (p.kind()) {
        case Kind::Unit:
            return C::unit();
        case Kind::PosAtom:
            return C::generated(D::eta(Structure::neg(p.name())));
        case Kind::NegAtom:
            return C::neg(interpret(Structure::pos(p.name())));
        default:
            return C::binary(p.kind(), interpret(p.left()), interpret(p.right()));
        }
    }

    struct Hash {
        std::size_t operator()(const Structure& s) const { return s.hash(); }
    };

    /// a ⅋ ā ⟶* 1
    static Derivation atomKey(const Structure& a) {
        Structure na = dual(a);
        return concat(equivDerivation(Structure::parr(a, na), Structure::parr(na, a)),
                      singleStep(Structure::parr(na, a), RuleId::AtomInteract, {}));
    }

    /// From w: y ≤ P⊗Q and key: u⅋Q ≤ 1, the derivation y⅋u ≤ P.
    static Derivation tensorKey(const Derivation& w, const Structure& u, const Structure& keep,
                                const Structure& drop, const Derivation& key) {
        Derivation d = NMav::parMono(w, refl(u));
        Structure switched = Structure::parr(Structure::tens(keep, drop), u);
        d = concat(d, singleStep(switched, RuleId::Switch, {}));
        d = concat(d, congruence(Kind::Tens, refl(keep), key));
        return concat(d, refl(keep));
    }

    T buildReflect(const Structure& p) {
        switch (p.kind()) {
        case Kind::Unit:
        case Kind::NegAtom:
            return I::identity();
        case Kind::PosAtom: {
            Structure a = p, na = dual(p);
            Derivation key = atomKey(a);
            return [a, na, key](const M& m) {
                return I::residualIntro(m.at(), [a, na, key, m](const M& e) {
                    M eta = I::etaParBackward(a, na)(C::pairAt(m, e));
                    return I::etaMonotone(key)(eta);
                });
            };
        }
        case Kind::Parr:
            return I::compose(I::etaParForward(p.left(), p.right()),
                              I::dayParMap(reflect(p.left()), reflect(p.right())));
        case Kind::Seq:
            return I::compose(I::etaSeqForward(p.left(), p.right()),
                              I::daySeqMap(reflect(p.left()), reflect(p.right())));
        case Kind::With:
            return I::compose(I::etaPlusForward(p.left(), p.right()),
                              I::joinMap(reflect(p.left()), reflect(p.right())));
        case Kind::Plus: {
            T l = I::compose(I::etaMonotone(singleStep(p, RuleId::Left, {})), reflect(p.left()));
            T r = I::compose(I::etaMonotone(singleStep(p, RuleId::Right, {})), reflect(p.right()));
            return I::meetPair(l, r);
        }
        case Kind::Tens: {
            const Structure P = p.left(), Q = p.right();
            T reflP = reflect(P), reflQ = reflect(Q);
            return [this, P, Q, reflP, reflQ](const M& m) {
                const auto& e = I::expect<EtaEvidence<NMav>>(m, "reflect");
                return I::collect(e.leaves, e.outer, [&](const Derivation& w) {
                    const Structure y = w.goal;
                    M first = I::residualIntro(y, [this, w, P, Q, reflP](const M& b) {
                        Derivation key = reify(Q, b);
                        return reflP(I::memberEta(P, tensorKey(w, b.at(), P, Q, key)));
                    });
                    M second = I::residualIntro(y, [this, w, P, Q, reflQ](const M& a) {
                        Derivation key = reify(P, a);
                        return reflQ(I::memberEta(Q, tensorKey(w, a.at(), Q, P, key)));
                    });
                    return I::meetIntro(first, second);
                });
            };
        }
        }
        throw Error("reflect: unknown structure");
    }

    std::unordered_map<Structure, E, Hash> elements_;
    std::unordered_map<Structure, T, Hash> reflections_;
};

/// Normalises a symmetric proof into a normal proof of the same goal.
inline Derivation normalize(const Derivation& d) {
    Normalizer n;
    return n.normalize(d);
}

} // namespace mav
