// The Chu construction over ideals of a witnessed frame, with DayPar as the
// tensor of ideals and K as its unit. An element is a pair of ideals
// (pos, neg) with a compatibility map DayPar(pos, neg) ⊆ K. An order A ⊑ B
// is a pair of inclusions pos(A) ⊆ pos(B) and neg(B) ⊆ neg(A).
//
// Each inference rule S ⟶ T and each monoid axiom gets an order
// ⟦T⟧ ⊑ ⟦S⟧ between the elements interpreting its metavariables.
#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <vector>

#include "mav/calculus.hpp"
#include "mav/ideals.hpp"
#include "mav/rearrange.hpp"

namespace mav {

/// Raised by audited operations when a member fails validation.
class AuditFailure : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::atomic<bool>& auditSwitch() {
#ifdef NDEBUG
    static std::atomic<bool> on{false};
#else
    static std::atomic<bool> on{true};
#endif
    return on;
}

inline std::atomic<std::size_t>& auditCounter() {
    static std::atomic<std::size_t> n{0};
    return n;
}

inline std::atomic<std::size_t>& auditFailureCounter() {
    static std::atomic<std::size_t> n{0};
    return n;
}

// Set while a validation runs, so that transformers applied by the
// validator do not start audits of their own.
inline thread_local bool auditBusy = false;

} // namespace detail

inline bool auditEnabled() { return detail::auditSwitch().load(); }
inline void setAudit(bool on) { detail::auditSwitch().store(on); }
/// Number of members validated by audits so far.
inline std::size_t auditCount() { return detail::auditCounter().load(); }
/// Number of audits that rejected their member, whether or not the
/// resulting AuditFailure was caught.
inline std::size_t auditFailureCount() { return detail::auditFailureCounter().load(); }

/// Switches auditing on or off for the lifetime of the scope.
class AuditScope {
public:
    explicit AuditScope(bool on = true) : saved_(auditEnabled()) { setAudit(on); }
    ~AuditScope() { setAudit(saved_); }
    AuditScope(const AuditScope&) = delete;
    AuditScope& operator=(const AuditScope&) = delete;

private:
    bool saved_;
};

template <WitnessedFrame Fr>
void auditMember(const IdealDesc<Fr>& d, const Member<Fr>& m, const std::string& where) {
    if (!auditEnabled() || detail::auditBusy)
        return;
    detail::auditBusy = true;
    std::string why;
    try {
        why = Ideals<Fr>::validate(d, m.at(), m);
    } catch (...) {
        detail::auditBusy = false;
        throw;
    }
    detail::auditBusy = false;
    ++detail::auditCounter();
    if (!why.empty()) {
        ++detail::auditFailureCounter();
        throw AuditFailure(where + ": " + why);
    }
}

template <WitnessedFrame Fr>
class ChuElement {
public:
    using Desc = IdealDesc<Fr>;
    using M = Member<Fr>;
    using T = Transformer<Fr>;

    ChuElement(Desc pos, Desc neg, T compat)
        : d_(std::make_shared<const Data>(Data{std::move(pos), std::move(neg), std::move(compat)})) {}

    const Desc& pos() const { return d_->pos; }
    const Desc& neg() const { return d_->neg; }
    const T& compat() const { return d_->compat; }

    /// Applies the compatibility map, auditing when enabled.
    M pairUp(const M& m) const {
        auditMember(Desc::dayPar(pos(), neg()), m, "compat input");
        M out = d_->compat(m);
        Ideals<Fr>::requireSame(out.at(), m.at(), "compat");
        auditMember(Desc::unitK(), out, "compat output");
        return out;
    }

    /// Same pair of ideals; compatibility maps are not compared.
    bool sameIdeals(const ChuElement& o) const { return d_ == o.d_ || (pos() == o.pos() && neg() == o.neg()); }

    std::string show() const { return "(" + pos().show() + " | " + neg().show() + ")"; }

private:
    struct Data {
        Desc pos, neg;
        T compat;
    };
    std::shared_ptr<const Data> d_;
};

/// from ⊑ to
template <WitnessedFrame Fr>
class ChuOrder {
public:
    using E = ChuElement<Fr>;
    using M = Member<Fr>;
    using T = Transformer<Fr>;

    ChuOrder(E from, E to, T fwd, T bwd, std::string tag)
        : d_(std::make_shared<const Data>(
              Data{std::move(from), std::move(to), std::move(fwd), std::move(bwd), std::move(tag)})) {}

    const E& from() const { return d_->from; }
    const E& to() const { return d_->to; }
    const std::string& tag() const { return d_->tag; }

    /// pos(from) ⊆ pos(to)
    M forward(const M& m) const {
        auditMember(from().pos(), m, tag() + " forward input");
        M out = d_->fwd(m);
        Ideals<Fr>::requireSame(out.at(), m.at(), "forward");
        auditMember(to().pos(), out, tag() + " forward output");
        return out;
    }

    /// neg(to) ⊆ neg(from)
    M backward(const M& m) const {
        auditMember(to().neg(), m, tag() + " backward input");
        M out = d_->bwd(m);
        Ideals<Fr>::requireSame(out.at(), m.at(), "backward");
        auditMember(from().neg(), out, tag() + " backward output");
        return out;
    }

    T forwardMap() const {
        return [self = *this](const M& m) { return self.forward(m); };
    }
    T backwardMap() const {
        return [self = *this](const M& m) { return self.backward(m); };
    }

private:
    // Shared so that composing long chains copies pointers, not closures.
    struct Data {
        E from, to;
        T fwd, bwd;
        std::string tag;
    };
    std::shared_ptr<const Data> d_;
};

template <WitnessedFrame Fr>
struct Chu {
    using Element = typename Fr::Element;
    using Witness = typename Fr::Witness;
    using I = Ideals<Fr>;
    using D = IdealDesc<Fr>;
    using M = Member<Fr>;
    using T = Transformer<Fr>;
    using E = ChuElement<Fr>;
    using O = ChuOrder<Fr>;
    using Pair = PairLeaf<Fr>;
    using Tagged = JoinLeaf<Fr>;

    // -----------------------------------------------------------------------
    // Rearrangements of ⅋ used by the constructions below.

    static Element par(const Element& x, const Element& y) { return Fr::par(x, y); }

    /// (s⅋t)⅋y ≤ s⅋(y⅋t)
    static Witness swapTail(const Element& s, const Element& t, const Element& y) {
        return Fr::trans(Fr::parAssocInv(s, t, y), Fr::parMono(Fr::refl(s), Fr::parComm(t, y)));
    }
    /// (s⅋t)⅋y ≤ (s⅋y)⅋t
    static Witness exchange(const Element& s, const Element& t, const Element& y) {
        return Fr::trans(swapTail(s, t, y), Fr::parAssoc(s, y, t));
    }
    /// (s⅋t)⅋y ≤ t⅋(y⅋s)
    static Witness rotate(const Element& s, const Element& t, const Element& y) {
        Witness w = Fr::trans(Fr::parComm(par(s, t), y), Fr::parAssoc(y, s, t));
        return Fr::trans(w, Fr::parComm(par(y, s), t));
    }
    /// z⅋(s⅋t) ≤ (z⅋t)⅋s
    static Witness crossAssoc(const Element& z, const Element& s, const Element& t) {
        return Fr::trans(Fr::parMono(Fr::refl(z), Fr::parComm(s, t)), Fr::parAssoc(z, t, s));
    }

    static M pairAt(const M& a, const M& b) { return I::introDayPar(a, b, Fr::refl(par(a.at(), b.at()))); }

    template <class Ev>
    static const Ev& as(const M& m, const char* what) {
        return I::template expect<Ev>(m, what);
    }

    // -----------------------------------------------------------------------
    // Elements

    static E unit() { return E(D::unitK(), D::unitK(), I::dayParUnit()); }

    /// (F, Res(F,K)), the element generated by an ideal.
    static E generated(const D& f) {
        T compat = [](const M& m) {
            const auto& e = as<DayParEvidence<Fr>>(m, "generated compat");
            return I::collect(e.leaves, e.outer, [](const Pair& p) {
                return I::downClose(I::residualApply(p.right, p.left), Fr::parComm(p.left.at(), p.right.at()));
            });
        };
        return E(f, D::residual(f, D::unitK()), compat);
    }

    static E neg(const E& a) {
        T comm = I::dayParComm();
        return E(a.neg(), a.pos(), [a, comm](const M& m) { return a.pairUp(comm(m)); });
    }

    static E tensor(const E& a, const E& b) {
        D pos = D::dayPar(a.pos(), b.pos());
        D neg = D::meet(D::residual(b.pos(), a.neg()), D::residual(a.pos(), b.neg()));
        T compat = [a](const M& m) {
            const auto& e = as<DayParEvidence<Fr>>(m, "tensor compat");
            return I::collect(e.leaves, e.outer, [&](const Pair& p) {
                const auto& pe = as<DayParEvidence<Fr>>(p.left, "tensor compat");
                const M& r = I::meetFirst(p.right);
                const Element v = p.right.at();
                return I::spreadRight(pe.leaves, pe.outer, v, [&](const Pair& q) {
                    const Element s = q.left.at(), t = q.right.at();
                    M k = a.pairUp(pairAt(q.left, I::residualApply(r, q.right)));
                    return I::downClose(k, swapTail(s, t, v));
                });
            });
        };
        return E(pos, neg, compat);
    }

    static E parr(const E& a, const E& b) { return neg(tensor(neg(a), neg(b))); }

    static E with(const E& a, const E& b) {
        T compat = [a, b](const M& m) {
            const auto& e = as<DayParEvidence<Fr>>(m, "with compat");
            return I::collect(e.leaves, e.outer, [&](const Pair& p) {
                const auto& je = as<JoinEvidence<Fr>>(p.right, "with compat");
                const M& both = p.left;
                return I::spreadLeft(both.at(), je.leaves, je.outer, [&](const Tagged& t) {
                    if (t.side == Side::Left)
                        return a.pairUp(pairAt(I::meetFirst(both), t.member));
                    return b.pairUp(pairAt(I::meetSecond(both), t.member));
                });
            });
        };
        return E(D::meet(a.pos(), b.pos()), D::join(a.neg(), b.neg()), compat);
    }

    static E plus(const E& a, const E& b) { return neg(with(neg(a), neg(b))); }

    static E seq(const E& a, const E& b) {
        T compat = [a, b](const M& m) {
            const auto& e = as<DayParEvidence<Fr>>(m, "seq compat");
            return I::collect(e.leaves, e.outer, [&](const Pair& p) {
                const auto& ps = as<DaySeqEvidence<Fr>>(p.left, "seq compat");
                const auto& ns = as<DaySeqEvidence<Fr>>(p.right, "seq compat");
                M ka = a.pairUp(pairAt(ps.left, ns.left));
                M kb = b.pairUp(pairAt(ps.right, ns.right));
                M k = I::daySeqUnitR()(I::introDaySeq(ka, kb, Fr::refl(Fr::seq(ka.at(), kb.at()))));
                Witness w = Fr::trans(Fr::parMono(ps.outer, ns.outer),
                                      Fr::sequence(ps.left.at(), ps.right.at(), ns.left.at(), ns.right.at()));
                return I::downClose(k, w);
            });
        };
        return E(D::daySeq(a.pos(), b.pos()), D::daySeq(a.neg(), b.neg()), compat);
    }

    static E binary(Kind k, const E& a, const E& b) {
        switch (k) {
        case Kind::Seq:
            return seq(a, b);
        case Kind::Tens:
            return tensor(a, b);
        case Kind::Parr:
            return parr(a, b);
        case Kind::With:
            return with(a, b);
        case Kind::Plus:
            return plus(a, b);
        default:
            throw Error("binary: not a connective");
        }
    }

    // -----------------------------------------------------------------------
    // Orders

    static O identity(const E& a) { return O(a, a, I::identity(), I::identity(), "id"); }

    /// f: A ⊑ B and g: B ⊑ C give A ⊑ C.
    static O compose(const O& f, const O& g) {
        T fwd = [f, g](const M& m) { return g.forward(f.forward(m)); };
        T bwd = [f, g](const M& m) { return f.backward(g.backward(m)); };
        return O(f.from(), g.to(), fwd, bwd, "compose");
    }

    /// f: A ⊑ B gives ¬B ⊑ ¬A.
    static O negOrder(const O& f) {
        return O(neg(f.to()), neg(f.from()), f.backwardMap(), f.forwardMap(), "neg " + f.tag());
    }

    /// The same inclusions between elements with the same ideals.
    static O retype(const O& f, const E& from, const E& to) {
        if (auditEnabled() && (!from.sameIdeals(f.from()) || !to.sameIdeals(f.to()))) {
            ++detail::auditFailureCounter();
            throw AuditFailure("retype of " + f.tag() + ": ideals differ");
        }
        return O(from, to, f.forwardMap(), f.backwardMap(), f.tag());
    }

    static O make(const E& from, const E& to, T fwd, T bwd, std::string tag) {
        return O(from, to, std::move(fwd), std::move(bwd), std::move(tag));
    }

    // -----------------------------------------------------------------------
    // Rule laws

    /// I ⊑ A ⅋ ¬A
    static O interact(const E& a) {
        return make(unit(), parr(a, neg(a)), I::meetPair(I::residualUnit(), I::residualUnit()),
                    [a](const M& m) { return a.pairUp(I::dayParComm()(m)); }, "Interact");
    }

    /// A ⊗ (B ⅋ C) ⊑ (A ⊗ B) ⅋ C
    static O switchLaw(const E& a, const E& b, const E& c) {
        T fwd = [](const M& m) {
            const auto& e = as<DayParEvidence<Fr>>(m, "Switch");
            return I::collect(e.leaves, e.outer, [](const Pair& p) {
                const M am = p.left;
                const M q1 = I::meetFirst(p.right), q2 = I::meetSecond(p.right);
                const Element s = am.at(), t = p.right.at(), st = par(s, t);
                M first = I::residualIntro(st, [am, q1, s, t](const M& cm) {
                    return I::introDayPar(am, I::residualApply(q1, cm), Fr::parAssocInv(s, t, cm.at()));
                });
                M second = I::residualIntro(st, [am, q2, s, t](const M& n) {
                    M bm = I::residualApply(I::meetSecond(n), am);
                    return I::downClose(I::residualApply(q2, bm), rotate(s, t, n.at()));
                });
                return I::meetIntro(first, second);
            });
        };
        T bwd = [](const M& m) {
            const auto& e = as<DayParEvidence<Fr>>(m, "Switch");
            return I::collect(e.leaves, e.outer, [](const Pair& p) {
                const M r1 = I::meetFirst(p.left), r2 = I::meetSecond(p.left);
                const M cm = p.right;
                const Element s = p.left.at(), t = cm.at(), st = par(s, t);
                M first = I::residualIntro(st, [r1, cm, s, t](const M& pm) {
                    M bp = I::residualApply(I::meetFirst(pm), cm);
                    return I::downClose(I::residualApply(r1, bp), swapTail(s, t, pm.at()));
                });
                M second = I::residualIntro(st, [r2, cm, s, t](const M& am) {
                    return I::introDayPar(I::residualApply(r2, am), cm, exchange(s, t, am.at()));
                });
                return I::meetIntro(first, second);
            });
        };
        return make(tensor(a, parr(b, c)), parr(tensor(a, b), c), fwd, bwd, "Switch");
    }

    /// I ⊑ I & I
    static O tidy() {
        E i = unit();
        return make(i, with(i, i), I::meetPair(I::identity(), I::identity()),
                    I::joinElim(I::identity(), I::identity()), "Tidy");
    }

    /// A ⊑ A ⊕ B
    static O left(const E& a, const E& b) { return make(a, plus(a, b), I::joinLeft(), I::meetProjFirst(), "Left"); }
    /// B ⊑ A ⊕ B
    static O right(const E& a, const E& b) {
        return make(b, plus(a, b), I::joinRight(), I::meetProjSecond(), "Right");
    }
    /// A & B ⊑ A
    static O coLeft(const E& a, const E& b) { return make(with(a, b), a, I::meetProjFirst(), I::joinLeft(), "CoLeft"); }
    /// A & B ⊑ B
    static O coRight(const E& a, const E& b) {
        return make(with(a, b), b, I::meetProjSecond(), I::joinRight(), "CoRight");
    }

    /// (A ⅋ C) & (B ⅋ C) ⊑ (A & B) ⅋ C
    static O external(const E& a, const E& b, const E& c) {
        T fwd = [](const M& m) {
            const M ac = I::meetFirst(m), bc = I::meetSecond(m);
            const Element z = m.at();
            M first = I::residualIntro(z, [ac, bc](const M& cm) {
                return I::meetIntro(I::residualApply(I::meetFirst(ac), cm), I::residualApply(I::meetFirst(bc), cm));
            });
            M second = I::residualIntro(z, [ac, bc, z](const M& jm) {
                const auto& je = as<JoinEvidence<Fr>>(jm, "External");
                return I::spreadLeft(z, je.leaves, je.outer, [&](const Tagged& t) {
                    return I::residualApply(I::meetSecond(t.side == Side::Left ? ac : bc), t.member);
                });
            });
            return I::meetIntro(first, second);
        };
        T bwd = [](const M& m) {
            const auto& e = as<DayParEvidence<Fr>>(m, "External");
            return I::collect(e.leaves, e.outer, [](const Pair& p) {
                const auto& je = as<JoinEvidence<Fr>>(p.left, "External");
                const M cm = p.right;
                return I::spreadRight(je.leaves, je.outer, cm.at(),
                                      [&](const Tagged& t) { return I::joinInject(t.side, pairAt(t.member, cm)); });
            });
        };
        return make(with(parr(a, c), parr(b, c)), parr(with(a, b), c), fwd, bwd, "External");
    }

    /// (A ◁ B) ⊗ (C ◁ D) ⊑ (A ⊗ C) ◁ (B ⊗ D)
    static O duoidal(const E& a, const E& b, const E& c, const E& d) {
        T bwd = I::compose(I::meetsDuoidal(), I::meetMap(I::residualDuoidal(), I::residualDuoidal()));
        return make(tensor(seq(a, b), seq(c, d)), seq(tensor(a, c), tensor(b, d)), I::duoidalIdeal(), bwd,
                    "Duoidal");
    }

    /// (A & C) ◁ (B & D) ⊑ (A ◁ B) & (C ◁ D)
    static O medial(const E& a, const E& b, const E& c, const E& d) {
        return make(seq(with(a, c), with(b, d)), with(seq(a, b), seq(c, d)), I::meetsDuoidal(), I::joinsDuoidal(),
                    "Medial");
    }

    /// ⟦T⟧ ⊑ ⟦S⟧ for a root instance S ⟶ T of rule r. The arguments are the
    /// elements of the rule's metavariables in the order they occur in S
    /// (for CoInteract, CoLeft and CoRight: the occurrences in T).
    static O ruleLaw(RuleId r, const std::vector<E>& x) {
        auto arg = [&](std::size_t i) -> const E& {
            if (i >= x.size())
                throw Error("ruleLaw: missing argument for " + std::string(ruleName(r)));
            return x[i];
        };
        switch (r) {
        case RuleId::Interact:
        case RuleId::AtomInteract:
            return interact(arg(0));
        case RuleId::Switch:
            return switchLaw(arg(0), arg(1), arg(2));
        case RuleId::Tidy:
            return tidy();
        case RuleId::Sequence:
            return negOrder(duoidal(neg(arg(0)), neg(arg(1)), neg(arg(2)), neg(arg(3))));
        case RuleId::Left:
            return left(arg(0), arg(1));
        case RuleId::Right:
            return right(arg(0), arg(1));
        case RuleId::External:
            return external(arg(0), arg(1), arg(2));
        case RuleId::Medial:
            return medial(arg(0), arg(1), arg(2), arg(3));
        case RuleId::CoInteract:
            return negOrder(interact(neg(arg(0))));
        case RuleId::CoTidy:
            return negOrder(tidy());
        case RuleId::CoSequence:
            return duoidal(arg(0), arg(2), arg(1), arg(3));
        case RuleId::CoLeft:
            return coLeft(arg(0), arg(1));
        case RuleId::CoRight:
            return coRight(arg(0), arg(1));
        case RuleId::CoExternal:
            return negOrder(external(neg(arg(0)), neg(arg(1)), neg(arg(2))));
        case RuleId::CoMedial:
            return negOrder(medial(neg(arg(0)), neg(arg(2)), neg(arg(1)), neg(arg(3))));
        }
        throw Error("ruleLaw: unknown rule");
    }

    // -----------------------------------------------------------------------
    // Monoid axioms

    /// A ⊑ A ⊗ I
    static O tensorUnitIntro(const E& a) {
        T bwd = [](const M& n) {
            const Element z = n.at();
            return I::downClose(I::residualApply(I::meetFirst(n), I::unitMember()), Fr::parUnitInv(z));
        };
        return make(a, tensor(a, unit()), I::dayParUnitInv(), bwd, "Tens-Unit");
    }

    /// A ⊗ I ⊑ A
    static O tensorUnitElim(const E& a) {
        T bwd = [a](const M& n) {
            const Element z = n.at();
            M first = I::residualIntro(z, [n, z](const M& k) {
                return I::downClose(n, Fr::trans(Fr::parMono(Fr::refl(z), I::kCollapse(k)), Fr::parUnit(z)));
            });
            M second = I::residualIntro(z, [a, n, z](const M& am) {
                return a.pairUp(I::introDayPar(am, n, Fr::parComm(z, am.at())));
            });
            return I::meetIntro(first, second);
        };
        return make(tensor(a, unit()), a, I::dayParUnit(), bwd, "Tens-Unit");
    }

    /// A ⊗ B ⊑ B ⊗ A
    static O tensorComm(const E& a, const E& b) {
        return make(tensor(a, b), tensor(b, a), I::dayParComm(), I::meetPair(I::meetProjSecond(), I::meetProjFirst()),
                    "Tens-Comm");
    }

    /// (A ⊗ B) ⊗ C ⊑ A ⊗ (B ⊗ C)
    static O tensorAssocRight(const E& a, const E& b, const E& c) {
        T bwd = [](const M& n) {
            const M r1 = I::meetFirst(n), r2 = I::meetSecond(n);
            const Element z = n.at();
            M first = I::residualIntro(z, [r1, r2, z](const M& cm) {
                const Element y = cm.at(), zy = par(z, y);
                M ra = I::residualIntro(zy, [r1, cm, z, y](const M& bm) {
                    M arg = I::introDayPar(bm, cm, Fr::parComm(y, bm.at()));
                    return I::downClose(I::residualApply(r1, arg), Fr::parAssocInv(z, y, bm.at()));
                });
                M rb = I::residualIntro(zy, [r2, cm, z, y](const M& am) {
                    M inner = I::meetFirst(I::residualApply(r2, am));
                    return I::downClose(I::residualApply(inner, cm), exchange(z, y, am.at()));
                });
                return I::meetIntro(ra, rb);
            });
            M second = I::residualIntro(z, [r2, z](const M& pm) {
                const auto& pe = as<DayParEvidence<Fr>>(pm, "Tens-Assoc");
                return I::spreadLeft(z, pe.leaves, pe.outer, [&](const Pair& q) {
                    M inner = I::meetSecond(I::residualApply(r2, q.left));
                    return I::downClose(I::residualApply(inner, q.right),
                                        Fr::parAssoc(z, q.left.at(), q.right.at()));
                });
            });
            return I::meetIntro(first, second);
        };
        return make(tensor(tensor(a, b), c), tensor(a, tensor(b, c)), I::dayParAssoc(), bwd, "Tens-Assoc");
    }

    /// A ⊗ (B ⊗ C) ⊑ (A ⊗ B) ⊗ C
    static O tensorAssocLeft(const E& a, const E& b, const E& c) {
        T bwd = [](const M& n) {
            const M q1 = I::meetFirst(n), q2 = I::meetSecond(n);
            const Element z = n.at();
            M first = I::residualIntro(z, [q1, z](const M& pm) {
                const auto& pe = as<DayParEvidence<Fr>>(pm, "Tens-Assoc");
                return I::spreadLeft(z, pe.leaves, pe.outer, [&](const Pair& q) {
                    M inner = I::meetFirst(I::residualApply(q1, q.right));
                    return I::downClose(I::residualApply(inner, q.left),
                                        crossAssoc(z, q.left.at(), q.right.at()));
                });
            });
            M second = I::residualIntro(z, [q1, q2, z](const M& am) {
                const Element y = am.at(), zy = par(z, y);
                M rc = I::residualIntro(zy, [q1, am, z, y](const M& cm) {
                    M inner = I::meetSecond(I::residualApply(q1, cm));
                    return I::downClose(I::residualApply(inner, am), exchange(z, y, cm.at()));
                });
                M rb = I::residualIntro(zy, [q2, am, z, y](const M& bm) {
                    return I::downClose(I::residualApply(q2, pairAt(am, bm)), Fr::parAssocInv(z, y, bm.at()));
                });
                return I::meetIntro(rc, rb);
            });
            return I::meetIntro(first, second);
        };
        return make(tensor(a, tensor(b, c)), tensor(tensor(a, b), c), I::dayParAssocInv(), bwd, "Tens-Assoc");
    }

    /// A ⊑ A ⅋ I
    static O parUnitIntro(const E& a) { return retype(negOrder(tensorUnitElim(neg(a))), a, parr(a, unit())); }
    /// A ⅋ I ⊑ A
    static O parUnitElim(const E& a) { return retype(negOrder(tensorUnitIntro(neg(a))), parr(a, unit()), a); }
    /// A ⅋ B ⊑ B ⅋ A
    static O parComm(const E& a, const E& b) {
        return retype(negOrder(tensorComm(neg(b), neg(a))), parr(a, b), parr(b, a));
    }
    /// (A ⅋ B) ⅋ C ⊑ A ⅋ (B ⅋ C)
    static O parAssocRight(const E& a, const E& b, const E& c) {
        return retype(negOrder(tensorAssocLeft(neg(a), neg(b), neg(c))), parr(parr(a, b), c),
                      parr(a, parr(b, c)));
    }
    /// A ⅋ (B ⅋ C) ⊑ (A ⅋ B) ⅋ C
    static O parAssocLeft(const E& a, const E& b, const E& c) {
        return retype(negOrder(tensorAssocRight(neg(a), neg(b), neg(c))), parr(a, parr(b, c)),
                      parr(parr(a, b), c));
    }

    static O seqUnitRIntro(const E& a) {
        return make(a, seq(a, unit()), I::daySeqUnitRInv(), I::daySeqUnitR(), "Seq-UnitR");
    }
    static O seqUnitRElim(const E& a) {
        return make(seq(a, unit()), a, I::daySeqUnitR(), I::daySeqUnitRInv(), "Seq-UnitR");
    }
    static O seqUnitLIntro(const E& a) {
        return make(a, seq(unit(), a), I::daySeqUnitLInv(), I::daySeqUnitL(), "Seq-UnitL");
    }
    static O seqUnitLElim(const E& a) {
        return make(seq(unit(), a), a, I::daySeqUnitL(), I::daySeqUnitLInv(), "Seq-UnitL");
    }
    /// (A ◁ B) ◁ C ⊑ A ◁ (B ◁ C)
    static O seqAssocRight(const E& a, const E& b, const E& c) {
        return make(seq(seq(a, b), c), seq(a, seq(b, c)), I::daySeqAssocInv(), I::daySeqAssoc(), "Seq-Assoc");
    }
    /// A ◁ (B ◁ C) ⊑ (A ◁ B) ◁ C
    static O seqAssocLeft(const E& a, const E& b, const E& c) {
        return make(seq(a, seq(b, c)), seq(seq(a, b), c), I::daySeqAssoc(), I::daySeqAssocInv(), "Seq-Assoc");
    }

    /// ⟦T⟧ ⊑ ⟦S⟧ for a root axiom rewrite S ≃ T. Arguments are the elements
    /// of the metavariables in the axiom's written left side, left to right.
    static O axiomLaw(Axiom ax, bool forward, const std::vector<E>& x) {
        auto arg = [&](std::size_t i) -> const E& {
            if (i >= x.size())
                throw Error("axiomLaw: missing argument for " + std::string(axiomName(ax)));
            return x[i];
        };
        switch (ax) {
        case Axiom::SeqUnitR:
            return forward ? seqUnitRIntro(arg(0)) : seqUnitRElim(arg(0));
        case Axiom::SeqUnitL:
            return forward ? seqUnitLIntro(arg(0)) : seqUnitLElim(arg(0));
        case Axiom::SeqAssoc:
            return forward ? seqAssocRight(arg(0), arg(1), arg(2)) : seqAssocLeft(arg(0), arg(1), arg(2));
        case Axiom::TensUnit:
            return forward ? tensorUnitIntro(arg(0)) : tensorUnitElim(arg(0));
        case Axiom::TensComm:
            return forward ? tensorComm(arg(1), arg(0)) : tensorComm(arg(0), arg(1));
        case Axiom::TensAssoc:
            return forward ? tensorAssocRight(arg(0), arg(1), arg(2)) : tensorAssocLeft(arg(0), arg(1), arg(2));
        case Axiom::ParrUnit:
            return forward ? parUnitIntro(arg(0)) : parUnitElim(arg(0));
        case Axiom::ParrComm:
            return forward ? parComm(arg(1), arg(0)) : parComm(arg(0), arg(1));
        case Axiom::ParrAssoc:
            return forward ? parAssocRight(arg(0), arg(1), arg(2)) : parAssocLeft(arg(0), arg(1), arg(2));
        }
        throw Error("axiomLaw: unknown axiom");
    }

    // -----------------------------------------------------------------------
    // Monotonicity of the connectives

    /// From f: A ⊑ A', the order op(A, B) ⊑ op(A', B).
    static O monoLeft(Kind k, const O& f, const E& b) {
        T fw = f.forwardMap(), bw = f.backwardMap(), id = I::identity();
        T fwd, bwd;
        switch (k) {
        case Kind::Tens:
            fwd = I::dayParMap(fw, id);
            bwd = I::meetMap(I::residualMap(id, bw), I::residualMap(fw, id));
            break;
        case Kind::Parr:
            fwd = I::meetMap(I::residualMap(id, fw), I::residualMap(bw, id));
            bwd = I::dayParMap(bw, id);
            break;
        case Kind::With:
            fwd = I::meetMap(fw, id);
            bwd = I::joinMap(bw, id);
            break;
        case Kind::Plus:
            fwd = I::joinMap(fw, id);
            bwd = I::meetMap(bw, id);
            break;
        case Kind::Seq:
            fwd = I::daySeqMap(fw, id);
            bwd = I::daySeqMap(bw, id);
            break;
        default:
            throw Error("monoLeft: not a connective");
        }
        return make(binary(k, f.from(), b), binary(k, f.to(), b), fwd, bwd, f.tag());
    }

    /// From g: B ⊑ B', the order op(A, B) ⊑ op(A, B').
    static O monoRight(Kind k, const E& a, const O& g) {
        T fw = g.forwardMap(), bw = g.backwardMap(), id = I::identity();
        T fwd, bwd;
        switch (k) {
        case Kind::Tens:
            fwd = I::dayParMap(id, fw);
            bwd = I::meetMap(I::residualMap(fw, id), I::residualMap(id, bw));
            break;
        case Kind::Parr:
            fwd = I::meetMap(I::residualMap(bw, id), I::residualMap(id, fw));
            bwd = I::dayParMap(id, bw);
            break;
        case Kind::With:
            fwd = I::meetMap(id, fw);
            bwd = I::joinMap(id, bw);
            break;
        case Kind::Plus:
            fwd = I::joinMap(id, fw);
            bwd = I::meetMap(id, bw);
            break;
        case Kind::Seq:
            fwd = I::daySeqMap(id, fw);
            bwd = I::daySeqMap(id, bw);
            break;
        default:
            throw Error("monoRight: not a connective");
        }
        return make(binary(k, a, g.from()), binary(k, a, g.to()), fwd, bwd, g.tag());
    }
};

} // namespace mav
