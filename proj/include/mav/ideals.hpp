// +-closed lower sets (ideals) over a witnessed frame, with proof-relevant
// membership. An ideal is named by a descriptor; a Member is evidence that
// one frame element belongs to the described ideal, and its shape follows
// the descriptor:
//
//   Eta(x)        tree of witnesses yᵢ ≤ x, and z ≤ Σ yᵢ
//   DayPar(F,G)   tree of pairs (F at xᵢ, G at yᵢ), and z ≤ Σ xᵢ⅋yᵢ
//   DaySeq(F,G)   one pair (F at x, G at y), and z ≤ x◁y
//   Residual(F,G) a mapping from F at y to G at z⅋y
//   Meet(F,G)     F at z and G at z
//   Join(F,G)     tree of F- or G-members at yᵢ, and z ≤ Σ yᵢ
//
// K = Eta(1) is the unit of DayPar.
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mav/calculus.hpp"
#include "mav/frame.hpp"
#include "mav/plus_tree.hpp"

namespace mav {

enum class DescKind : std::uint8_t { Eta, DayPar, DaySeq, Residual, Meet, Join };

inline std::string_view descKindName(DescKind k) {
    switch (k) {
    case DescKind::Eta:
        return "Eta";
    case DescKind::DayPar:
        return "DayPar";
    case DescKind::DaySeq:
        return "DaySeq";
    case DescKind::Residual:
        return "Residual";
    case DescKind::Meet:
        return "Meet";
    case DescKind::Join:
        return "Join";
    }
    return "?";
}

/// Names an ideal. Equality is structural, comparing embedded elements up
/// to the frame's equations.
template <class Fr>
class IdealDesc {
public:
    using Element = typename Fr::Element;

    static IdealDesc eta(Element x) {
        auto n = std::make_shared<Node>();
        n->kind = DescKind::Eta;
        n->hash = Fr::hashOf(x) * 31 + 7;
        n->x.emplace(std::move(x));
        n->size = 1;
        return IdealDesc(std::move(n));
    }
    static IdealDesc unitK() { return eta(Fr::unit()); }
    static IdealDesc dayPar(const IdealDesc& a, const IdealDesc& b) { return make(DescKind::DayPar, a, b); }
    static IdealDesc daySeq(const IdealDesc& a, const IdealDesc& b) { return make(DescKind::DaySeq, a, b); }
    static IdealDesc residual(const IdealDesc& a, const IdealDesc& b) { return make(DescKind::Residual, a, b); }
    static IdealDesc meet(const IdealDesc& a, const IdealDesc& b) { return make(DescKind::Meet, a, b); }
    static IdealDesc join(const IdealDesc& a, const IdealDesc& b) { return make(DescKind::Join, a, b); }

    DescKind kind() const { return n_->kind; }
    bool isUnitK() const { return kind() == DescKind::Eta && Fr::equal(*n_->x, Fr::unit()); }
    /// Generator of an Eta descriptor.
    const Element& generator() const { return *n_->x; }
    IdealDesc left() const { return IdealDesc(n_->l); }
    IdealDesc right() const { return IdealDesc(n_->r); }
    std::size_t hash() const { return n_->hash; }
    std::size_t size() const { return n_->size; }

    friend bool operator==(const IdealDesc& a, const IdealDesc& b) {
        if (a.n_ == b.n_)
            return true;
        if (a.n_->hash != b.n_->hash || a.n_->kind != b.n_->kind || a.n_->size != b.n_->size)
            return false;
        if (a.kind() == DescKind::Eta)
            return Fr::equal(*a.n_->x, *b.n_->x);
        return a.left() == b.left() && a.right() == b.right();
    }

    std::string show() const {
        if (kind() == DescKind::Eta)
            return isUnitK() ? std::string("K") : "Eta(" + Fr::show(generator()) + ")";
        return std::string(descKindName(kind())) + "(" + left().show() + ", " + right().show() + ")";
    }

private:
    struct Node {
        DescKind kind = DescKind::Eta;
        std::optional<Element> x;
        std::shared_ptr<const Node> l, r;
        std::size_t hash = 0;
        std::size_t size = 1;
    };

    explicit IdealDesc(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    static IdealDesc make(DescKind k, const IdealDesc& a, const IdealDesc& b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->l = a.n_;
        n->r = b.n_;
        n->hash = detail::hashMix(detail::hashMix(static_cast<std::size_t>(k) + 0x5bd1e995, a.hash()), b.hash());
        n->size = 1 + a.size() + b.size();
        return IdealDesc(std::move(n));
    }

    std::shared_ptr<const Node> n_;
};

template <class Fr>
struct Evidence;

/// Evidence that `at()` belongs to some ideal.
template <class Fr>
class Member {
public:
    using Element = typename Fr::Element;

    Member(Element at, std::shared_ptr<const Evidence<Fr>> ev) : at_(std::move(at)), ev_(std::move(ev)) {}

    const Element& at() const { return at_; }
    const Evidence<Fr>& evidence() const { return *ev_; }

    template <class E>
    const E* as() const {
        return std::get_if<E>(&ev_->v);
    }

private:
    Element at_;
    std::shared_ptr<const Evidence<Fr>> ev_;
};

/// A membership transformer. Every transformer preserves `at()`.
template <class Fr>
using Transformer = std::function<Member<Fr>(const Member<Fr>&)>;

template <class Fr>
struct EtaEvidence {
    PlusTree<typename Fr::Witness> leaves;
    typename Fr::Witness outer;
};

template <class Fr>
struct PairLeaf {
    Member<Fr> left, right;
};

template <class Fr>
struct DayParEvidence {
    PlusTree<PairLeaf<Fr>> leaves;
    typename Fr::Witness outer;
};

template <class Fr>
struct DaySeqEvidence {
    Member<Fr> left, right;
    typename Fr::Witness outer;
};

/// Takes a member at y to a member at z⅋y, where z is the residual
/// member's own element.
template <class Fr>
struct ResidualEvidence {
    Transformer<Fr> apply;
};

template <class Fr>
struct MeetEvidence {
    Member<Fr> first, second;
};

enum class Side : std::uint8_t { Left, Right };

template <class Fr>
struct JoinLeaf {
    Side side;
    Member<Fr> member;
};

template <class Fr>
struct JoinEvidence {
    PlusTree<JoinLeaf<Fr>> leaves;
    typename Fr::Witness outer;
};

template <class Fr>
struct Evidence {
    std::variant<EtaEvidence<Fr>, DayParEvidence<Fr>, DaySeqEvidence<Fr>, ResidualEvidence<Fr>, MeetEvidence<Fr>,
                 JoinEvidence<Fr>>
        v;
};

/// Raised when a member does not have the shape an operation needs.
class ShapeError : public Error {
public:
    using Error::Error;
};

template <WitnessedFrame Fr>
struct Ideals {
    using Element = typename Fr::Element;
    using Witness = typename Fr::Witness;
    using Desc = IdealDesc<Fr>;
    using M = Member<Fr>;
    using T = Transformer<Fr>;
    using Eta = EtaEvidence<Fr>;
    using DayPar = DayParEvidence<Fr>;
    using DaySeq = DaySeqEvidence<Fr>;
    using Residual = ResidualEvidence<Fr>;
    using Meet = MeetEvidence<Fr>;
    using Join = JoinEvidence<Fr>;
    using Pair = PairLeaf<Fr>;
    using Tagged = JoinLeaf<Fr>;

    template <class E>
    static M make(Element at, E ev) {
        return M(std::move(at), std::make_shared<const Evidence<Fr>>(Evidence<Fr>{std::move(ev)}));
    }

    template <class E>
    static const E& expect(const M& m, const char* what) {
        if (const E* e = m.template as<E>())
            return *e;
        throw ShapeError(std::string(what) + ": member has the wrong shape");
    }

    static void requireSame(const Element& a, const Element& b, const char* what) {
        if (!Fr::same(a, b))
            throw EndpointMismatch(std::string(what) + ": expected " + Fr::show(b) + ", got " + Fr::show(a));
    }

    // -----------------------------------------------------------------------
    // Sums over trees

    static Element genOf(const Witness& w) { return Fr::source(w); }
    static Element genOf(const Pair& p) { return Fr::par(p.left.at(), p.right.at()); }
    static Element genOf(const Tagged& t) { return t.member.at(); }
    static Element genOf(const M& m) { return m.at(); }
    static Element genOf(const Element& e) { return e; }

    template <class L>
    static Element sumOf(const PlusTree<L>& t) {
        return t.fold([](const L& l) { return genOf(l); }, [](Element a, Element b) { return Fr::plus(a, b); });
    }

    /// Σ gᵢ ≤ Σ g'ᵢ from per-leaf witnesses gᵢ ≤ g'ᵢ.
    template <class L, class F>
    static Witness treeMono(const PlusTree<L>& t, F&& perLeaf) {
        return t.fold([&](const L& l) { return perLeaf(l); },
                      [](Witness a, Witness b) { return Fr::plusMono(a, b); });
    }

    /// (Σ gᵢ)⅋y ≤ Σ (gᵢ⅋y), by the external law.
    template <class L>
    static Witness distributeRight(const PlusTree<L>& t, const Element& y) {
        struct R {
            Element sum;
            Witness w;
        };
        return t
            .fold([&](const L& l) { return R{genOf(l), Fr::refl(Fr::par(genOf(l), y))}; },
                  [&](R a, R b) {
                      Element s = Fr::plus(a.sum, b.sum);
                      return R{s, Fr::trans(Fr::external(a.sum, b.sum, y), Fr::plusMono(a.w, b.w))};
                  })
            .w;
    }

    /// x⅋(Σ gᵢ) ≤ Σ (x⅋gᵢ).
    template <class L>
    static Witness distributeLeft(const Element& x, const PlusTree<L>& t) {
        Witness w = Fr::trans(Fr::parComm(x, sumOf(t)), distributeRight(t, x));
        return Fr::trans(w, treeMono(t, [&](const L& l) { return Fr::parComm(genOf(l), x); }));
    }

    // -----------------------------------------------------------------------
    // Introduction forms

    /// z ∈ η⁺(x) from a witness z ≤ x.
    static M memberEta(const Element& x, const Witness& d) {
        requireSame(Fr::target(d), x, "memberEta");
        return make(Fr::source(d), Eta{PlusTree<Witness>::leaf(d), Fr::refl(Fr::source(d))});
    }

    /// 1 ∈ K.
    static M unitMember() { return memberEta(Fr::unit(), Fr::refl(Fr::unit())); }

    static M introDayPar(const M& mx, const M& my, const Witness& d) {
        requireSame(Fr::target(d), Fr::par(mx.at(), my.at()), "introDayPar");
        return make(Fr::source(d), DayPar{PlusTree<Pair>::leaf(Pair{mx, my}), d});
    }

    static M introDaySeq(const M& mx, const M& my, const Witness& d) {
        requireSame(Fr::target(d), Fr::seq(mx.at(), my.at()), "introDaySeq");
        return make(Fr::source(d), DaySeq{mx, my, d});
    }

    /// Residual member at z from a mapping taking F at y to G at z⅋y.
    static M residualIntro(const Element& z, T f) { return make(z, Residual{std::move(f)}); }

    static M residualApply(const M& r, const M& arg) {
        M out = expect<Residual>(r, "residualApply").apply(arg);
        requireSame(out.at(), Fr::par(r.at(), arg.at()), "residualApply");
        return out;
    }

    static M meetIntro(const M& a, const M& b) {
        requireSame(b.at(), a.at(), "meetIntro");
        return make(a.at(), Meet{a, b});
    }
    static const M& meetFirst(const M& m) { return expect<Meet>(m, "meetFirst").first; }
    static const M& meetSecond(const M& m) { return expect<Meet>(m, "meetSecond").second; }

    static M joinInject(Side s, const M& m) {
        return make(m.at(), Join{PlusTree<Tagged>::leaf(Tagged{s, m}), Fr::refl(m.at())});
    }

    // -----------------------------------------------------------------------
    // Closure properties

    /// Down-closure: from m at x and d: y ≤ x, a member at y.
    static M downClose(const M& m, const Witness& d) {
        requireSame(Fr::target(d), m.at(), "downClose");
        const Element y = Fr::source(d);
        return std::visit(
            [&](const auto& e) -> M {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, Meet>) {
                    return make(y, Meet{downClose(e.first, d), downClose(e.second, d)});
                } else if constexpr (std::is_same_v<E, Residual>) {
                    T f = e.apply;
                    return make(y, Residual{[f, d](const M& arg) {
                                    return downClose(f(arg), Fr::parMono(d, Fr::refl(arg.at())));
                                }});
                } else {
                    E out = e;
                    out.outer = Fr::trans(d, e.outer);
                    return make(y, std::move(out));
                }
            },
            m.evidence().v);
    }

    /// +-closure: from members at x and y, a member at x+y.
    static M plusCombine(const M& a, const M& b) {
        const Element xy = Fr::plus(a.at(), b.at());
        return std::visit(
            [&](const auto& e) -> M {
                using E = std::decay_t<decltype(e)>;
                const E& f = expect<E>(b, "plusCombine");
                if constexpr (std::is_same_v<E, Meet>) {
                    return make(xy, Meet{plusCombine(e.first, f.first), plusCombine(e.second, f.second)});
                } else if constexpr (std::is_same_v<E, Residual>) {
                    // (x+y)⅋w ≤ (x⅋w)+(y⅋w) by the external law.
                    T g = e.apply, h = f.apply;
                    Element x = a.at(), y = b.at();
                    return make(xy, Residual{[g, h, x, y](const M& arg) {
                                    return downClose(plusCombine(g(arg), h(arg)), Fr::external(x, y, arg.at()));
                                }});
                } else if constexpr (std::is_same_v<E, DaySeq>) {
                    // (p◁q)+(r◁s) ≤ (p+r)◁(q+s) by the medial law.
                    M l = plusCombine(e.left, f.left);
                    M r = plusCombine(e.right, f.right);
                    Witness w = Fr::trans(Fr::plusMono(e.outer, f.outer),
                                          Fr::medial(e.left.at(), e.right.at(), f.left.at(), f.right.at()));
                    return make(xy, DaySeq{l, r, w});
                } else {
                    return make(xy, E{decltype(e.leaves)::node(e.leaves, f.leaves), Fr::plusMono(e.outer, f.outer)});
                }
            },
            a.evidence().v);
    }

    /// A member at Σ of the members' elements.
    static M combineTree(const PlusTree<M>& t) {
        return t.fold([](const M& m) { return m; }, [](M a, M b) { return plusCombine(a, b); });
    }

    /// Eliminates a tree-shaped member: each leaf yields a member at its
    /// generator, these are combined and then down-closed along `outer`.
    template <class L, class F>
    static M collect(const PlusTree<L>& leaves, const Witness& outer, F&& perLeaf) {
        return downClose(combineTree(leaves.map([&](const L& l) { return perLeaf(l); })), outer);
    }

    /// Like collect, in a context v on the right: each leaf yields a member
    /// at (its generator)⅋v and the result is at source(outer)⅋v.
    template <class L, class F>
    static M spreadRight(const PlusTree<L>& leaves, const Witness& outer, const Element& v, F&& perLeaf) {
        Witness w = Fr::trans(Fr::parMono(outer, Fr::refl(v)), distributeRight(leaves, v));
        return downClose(combineTree(leaves.map([&](const L& l) { return perLeaf(l); })), w);
    }

    /// Mirror image of spreadRight, with the context on the left.
    template <class L, class F>
    static M spreadLeft(const Element& v, const PlusTree<L>& leaves, const Witness& outer, F&& perLeaf) {
        Witness w = Fr::trans(Fr::parMono(Fr::refl(v), outer), distributeLeft(v, leaves));
        return downClose(combineTree(leaves.map([&](const L& l) { return perLeaf(l); })), w);
    }

    /// Rebuilds a tree-shaped member: each leaf becomes a subtree together
    /// with a witness from its generator to the subtree's sum.
    template <class L, class NewLeaf, class F>
    static std::pair<PlusTree<NewLeaf>, Witness> regraft(const PlusTree<L>& t, F&& perLeaf) {
        struct R {
            PlusTree<NewLeaf> tree;
            Witness w;
        };
        R r = t.fold(
            [&](const L& l) {
                std::pair<PlusTree<NewLeaf>, Witness> p = perLeaf(l);
                return R{p.first, p.second};
            },
            [](R a, R b) { return R{PlusTree<NewLeaf>::node(a.tree, b.tree), Fr::plusMono(a.w, b.w)}; });
        return {r.tree, r.w};
    }

    // -----------------------------------------------------------------------
    // The unit K

    /// From z ∈ K, a witness z ≤ 1: every leaf is ≤ 1, and 1+1 ≤ 1 folds
    /// the sum.
    static Witness kCollapse(const M& m) {
        const Eta& e = expect<Eta>(m, "kCollapse");
        Witness w = e.leaves.fold([](const Witness& leaf) { return leaf; },
                                  [](Witness a, Witness b) { return Fr::trans(Fr::plusMono(a, b), Fr::tidy()); });
        requireSame(Fr::target(w), Fr::unit(), "kCollapse");
        return Fr::trans(e.outer, w);
    }

    static M kFromWitness(const Witness& d) { return memberEta(Fr::unit(), d); }

    // -----------------------------------------------------------------------
    // Structure-preserving maps

    static T identity() {
        return [](const M& m) { return m; };
    }

    static T compose(T first, T second) {
        return [first, second](const M& m) { return second(first(m)); };
    }

    /// η⁺(x) ⊆ η⁺(x') from x ≤ x'.
    static T etaMonotone(const Witness& w) {
        return [w](const M& m) {
            const Eta& e = expect<Eta>(m, "etaMonotone");
            return make(m.at(), Eta{e.leaves.map([&](const Witness& leaf) { return Fr::trans(leaf, w); }), e.outer});
        };
    }

    static T dayParMap(T f, T g) {
        return [f, g](const M& m) {
            const DayPar& e = expect<DayPar>(m, "dayParMap");
            return make(m.at(), DayPar{e.leaves.map([&](const Pair& p) { return Pair{f(p.left), g(p.right)}; }),
                                       e.outer});
        };
    }

    static T daySeqMap(T f, T g) {
        return [f, g](const M& m) {
            const DaySeq& e = expect<DaySeq>(m, "daySeqMap");
            return make(m.at(), DaySeq{f(e.left), g(e.right), e.outer});
        };
    }

    static T meetMap(T f, T g) {
        return [f, g](const M& m) {
            const Meet& e = expect<Meet>(m, "meetMap");
            return make(m.at(), Meet{f(e.first), g(e.second)});
        };
    }

    static T joinMap(T f, T g) {
        return [f, g](const M& m) {
            const Join& e = expect<Join>(m, "joinMap");
            return make(m.at(), Join{e.leaves.map([&](const Tagged& t) {
                                         return Tagged{t.side, t.side == Side::Left ? f(t.member) : g(t.member)};
                                     }),
                                     e.outer});
        };
    }

    /// Res(F,G) ⊆ Res(F',G') from F' ⊆ F and G ⊆ G'.
    static T residualMap(T pre, T post) {
        return [pre, post](const M& m) {
            const Residual& e = expect<Residual>(m, "residualMap");
            T f = e.apply;
            return make(m.at(), Residual{[f, pre, post](const M& arg) { return post(f(pre(arg))); }});
        };
    }

    static T meetPair(T f, T g) {
        return [f, g](const M& m) { return meetIntro(f(m), g(m)); };
    }
    static T meetProjFirst() {
        return [](const M& m) { return meetFirst(m); };
    }
    static T meetProjSecond() {
        return [](const M& m) { return meetSecond(m); };
    }
    static T joinLeft() {
        return [](const M& m) { return joinInject(Side::Left, m); };
    }
    static T joinRight() {
        return [](const M& m) { return joinInject(Side::Right, m); };
    }

    /// Join(F,G) ⊆ H from F ⊆ H and G ⊆ H.
    static T joinElim(T f, T g) {
        return [f, g](const M& m) {
            const Join& e = expect<Join>(m, "joinElim");
            return collect(e.leaves, e.outer,
                           [&](const Tagged& t) { return t.side == Side::Left ? f(t.member) : g(t.member); });
        };
    }

    // -----------------------------------------------------------------------
    // Monoid laws for DayPar (commutative, with unit K) and DaySeq (unit K)

    static T dayParComm() {
        return [](const M& m) {
            const DayPar& e = expect<DayPar>(m, "dayParComm");
            Witness w = treeMono(e.leaves, [](const Pair& p) { return Fr::parComm(p.left.at(), p.right.at()); });
            return make(m.at(), DayPar{e.leaves.map([](const Pair& p) { return Pair{p.right, p.left}; }),
                                       Fr::trans(e.outer, w)});
        };
    }

    /// (F⊗̂G)⊗̂H ⊆ F⊗̂(G⊗̂H)
    static T dayParAssoc() {
        return [](const M& m) {
            const DayPar& e = expect<DayPar>(m, "dayParAssoc");
            auto [tree, w] = regraft<Pair, Pair>(e.leaves, [](const Pair& p) {
                const DayPar& inner = expect<DayPar>(p.left, "dayParAssoc");
                const M& h = p.right;
                const Element y = h.at();
                PlusTree<Pair> sub = inner.leaves.map([&](const Pair& q) {
                    return Pair{q.left, introDayPar(q.right, h, Fr::refl(Fr::par(q.right.at(), y)))};
                });
                Witness v = Fr::trans(Fr::parMono(inner.outer, Fr::refl(y)), distributeRight(inner.leaves, y));
                v = Fr::trans(v, treeMono(inner.leaves, [&](const Pair& q) {
                                  return Fr::parAssocInv(q.left.at(), q.right.at(), y);
                              }));
                return std::pair{sub, v};
            });
            return make(m.at(), DayPar{tree, Fr::trans(e.outer, w)});
        };
    }

    /// F⊗̂(G⊗̂H) ⊆ (F⊗̂G)⊗̂H
    static T dayParAssocInv() {
        return [](const M& m) {
            const DayPar& e = expect<DayPar>(m, "dayParAssocInv");
            auto [tree, w] = regraft<Pair, Pair>(e.leaves, [](const Pair& p) {
                const M& f = p.left;
                const Element x = f.at();
                const DayPar& inner = expect<DayPar>(p.right, "dayParAssocInv");
                PlusTree<Pair> sub = inner.leaves.map([&](const Pair& q) {
                    return Pair{introDayPar(f, q.left, Fr::refl(Fr::par(x, q.left.at()))), q.right};
                });
                Witness v = Fr::trans(Fr::parMono(Fr::refl(x), inner.outer), distributeLeft(x, inner.leaves));
                v = Fr::trans(v, treeMono(inner.leaves, [&](const Pair& q) {
                                  return Fr::parAssoc(x, q.left.at(), q.right.at());
                              }));
                return std::pair{sub, v};
            });
            return make(m.at(), DayPar{tree, Fr::trans(e.outer, w)});
        };
    }

    /// F⊗̂K ⊆ F
    static T dayParUnit() {
        return [](const M& m) {
            const DayPar& e = expect<DayPar>(m, "dayParUnit");
            return collect(e.leaves, e.outer, [](const Pair& p) {
                const Element x = p.left.at();
                return downClose(p.left, Fr::trans(Fr::parMono(Fr::refl(x), kCollapse(p.right)), Fr::parUnit(x)));
            });
        };
    }

    /// F ⊆ F⊗̂K
    static T dayParUnitInv() {
        return [](const M& m) { return introDayPar(m, unitMember(), Fr::parUnitInv(m.at())); };
    }

    /// DaySeq(F, DaySeq(G,H)) ⊆ DaySeq(DaySeq(F,G), H)
    static T daySeqAssoc() {
        return [](const M& m) {
            const DaySeq& e = expect<DaySeq>(m, "daySeqAssoc");
            const DaySeq& inner = expect<DaySeq>(e.right, "daySeqAssoc");
            const Element x = e.left.at(), u = inner.left.at(), v = inner.right.at();
            M fg = introDaySeq(e.left, inner.left, Fr::refl(Fr::seq(x, u)));
            Witness w = Fr::trans(Fr::trans(e.outer, Fr::seqMono(Fr::refl(x), inner.outer)), Fr::seqAssoc(x, u, v));
            return make(m.at(), DaySeq{fg, inner.right, w});
        };
    }

    /// DaySeq(DaySeq(F,G), H) ⊆ DaySeq(F, DaySeq(G,H))
    static T daySeqAssocInv() {
        return [](const M& m) {
            const DaySeq& e = expect<DaySeq>(m, "daySeqAssocInv");
            const DaySeq& inner = expect<DaySeq>(e.left, "daySeqAssocInv");
            const Element u = inner.left.at(), v = inner.right.at(), y = e.right.at();
            M gh = introDaySeq(inner.right, e.right, Fr::refl(Fr::seq(v, y)));
            Witness w =
                Fr::trans(Fr::trans(e.outer, Fr::seqMono(inner.outer, Fr::refl(y))), Fr::seqAssocInv(u, v, y));
            return make(m.at(), DaySeq{inner.left, gh, w});
        };
    }

    /// DaySeq(F,K) ⊆ F
    static T daySeqUnitR() {
        return [](const M& m) {
            const DaySeq& e = expect<DaySeq>(m, "daySeqUnitR");
            const Element x = e.left.at();
            Witness w = Fr::trans(Fr::trans(e.outer, Fr::seqMono(Fr::refl(x), kCollapse(e.right))), Fr::seqUnitR(x));
            return downClose(e.left, w);
        };
    }

    /// F ⊆ DaySeq(F,K)
    static T daySeqUnitRInv() {
        return [](const M& m) { return introDaySeq(m, unitMember(), Fr::seqUnitRInv(m.at())); };
    }

    /// DaySeq(K,F) ⊆ F
    static T daySeqUnitL() {
        return [](const M& m) {
            const DaySeq& e = expect<DaySeq>(m, "daySeqUnitL");
            const Element y = e.right.at();
            Witness w = Fr::trans(Fr::trans(e.outer, Fr::seqMono(kCollapse(e.left), Fr::refl(y))), Fr::seqUnitL(y));
            return downClose(e.right, w);
        };
    }

    /// F ⊆ DaySeq(K,F)
    static T daySeqUnitLInv() {
        return [](const M& m) { return introDaySeq(unitMember(), m, Fr::seqUnitLInv(m.at())); };
    }

    // -----------------------------------------------------------------------
    // Residuation

    /// Res(F,G) ⊗̂ F ⊆ G
    static T eval() {
        return [](const M& m) {
            const DayPar& e = expect<DayPar>(m, "eval");
            return collect(e.leaves, e.outer, [](const Pair& p) { return residualApply(p.left, p.right); });
        };
    }

    /// From t: F⊗̂G ⊆ H, the inclusion F ⊆ Res(G,H).
    static T curry(T t) {
        return [t](const M& f) {
            const Element x = f.at();
            return residualIntro(x, [t, f, x](const M& g) {
                return t(introDayPar(f, g, Fr::refl(Fr::par(x, g.at()))));
            });
        };
    }

    /// K ⊆ Res(F,F)
    static T residualUnit() {
        return [](const M& k) {
            const Element z = k.at();
            Witness toOne = kCollapse(k);
            return residualIntro(z, [toOne](const M& f) {
                const Element y = f.at();
                Witness w = Fr::trans(Fr::parMono(toOne, Fr::refl(y)), Fr::parComm(Fr::unit(), y));
                return downClose(f, Fr::trans(w, Fr::parUnit(y)));
            });
        };
    }

    // -----------------------------------------------------------------------
    // Duoidal structure

    /// DayPar(DaySeq(F,G), DaySeq(H,J)) ⊆ DaySeq(DayPar(F,H), DayPar(G,J))
    static T duoidalIdeal() {
        return [](const M& m) {
            const DayPar& e = expect<DayPar>(m, "duoidalIdeal");
            return collect(e.leaves, e.outer, [](const Pair& p) {
                const DaySeq& s = expect<DaySeq>(p.left, "duoidalIdeal");
                const DaySeq& t = expect<DaySeq>(p.right, "duoidalIdeal");
                const Element a = s.left.at(), b = s.right.at(), c = t.left.at(), d = t.right.at();
                M l = introDayPar(s.left, t.left, Fr::refl(Fr::par(a, c)));
                M r = introDayPar(s.right, t.right, Fr::refl(Fr::par(b, d)));
                return introDaySeq(l, r, Fr::trans(Fr::parMono(s.outer, t.outer), Fr::sequence(a, b, c, d)));
            });
        };
    }

    /// DaySeq(Res(F,G), Res(H,J)) ⊆ Res(DaySeq(F,H), DaySeq(G,J))
    static T residualDuoidal() {
        return [](const M& m) {
            const DaySeq& e = expect<DaySeq>(m, "residualDuoidal");
            M r1 = e.left, r2 = e.right;
            Witness outer = e.outer;
            return residualIntro(m.at(), [r1, r2, outer](const M& arg) {
                const DaySeq& s = expect<DaySeq>(arg, "residualDuoidal");
                M g = residualApply(r1, s.left);
                M j = residualApply(r2, s.right);
                Witness w = Fr::trans(Fr::parMono(outer, s.outer),
                                      Fr::sequence(r1.at(), r2.at(), s.left.at(), s.right.at()));
                return introDaySeq(g, j, w);
            });
        };
    }

    /// DaySeq(Meet(F1,F2), Meet(G1,G2)) ⊆ Meet(DaySeq(F1,G1), DaySeq(F2,G2))
    static T meetsDuoidal() {
        return [](const M& m) {
            const DaySeq& e = expect<DaySeq>(m, "meetsDuoidal");
            const Meet& l = expect<Meet>(e.left, "meetsDuoidal");
            const Meet& r = expect<Meet>(e.right, "meetsDuoidal");
            return make(m.at(), Meet{make(m.at(), DaySeq{l.first, r.first, e.outer}),
                                     make(m.at(), DaySeq{l.second, r.second, e.outer})});
        };
    }

    /// Join(DaySeq(F1,G1), DaySeq(F2,G2)) ⊆ DaySeq(Join(F1,F2), Join(G1,G2))
    static T joinsDuoidal() {
        return [](const M& m) {
            const Join& e = expect<Join>(m, "joinsDuoidal");
            return collect(e.leaves, e.outer, [](const Tagged& t) {
                const DaySeq& s = expect<DaySeq>(t.member, "joinsDuoidal");
                return make(t.member.at(), DaySeq{joinInject(t.side, s.left), joinInject(t.side, s.right), s.outer});
            });
        };
    }

    // -----------------------------------------------------------------------
    // η⁺ and the frame operations

    static M etaRefl(const Element& x) { return memberEta(x, Fr::refl(x)); }

    /// η⁺(x⅋y) ⊆ η⁺(x) ⊗̂ η⁺(y)
    static T etaParForward(const Element& x, const Element& y) {
        return [x, y](const M& m) {
            const Eta& e = expect<Eta>(m, "etaParForward");
            const Element xy = Fr::par(x, y);
            Witness w = treeMono(e.leaves, [&](const Witness& leaf) { return leaf; });
            PlusTree<Pair> leaves = e.leaves.map([&](const Witness&) { return Pair{etaRefl(x), etaRefl(y)}; });
            return make(m.at(), DayPar{leaves, Fr::trans(e.outer, w)});
        };
    }

    /// η⁺(x) ⊗̂ η⁺(y) ⊆ η⁺(x⅋y)
    static T etaParBackward(const Element& x, const Element& y) {
        return [x, y](const M& m) {
            const DayPar& e = expect<DayPar>(m, "etaParBackward");
            return collect(e.leaves, e.outer, [&](const Pair& p) {
                const Eta& ex = expect<Eta>(p.left, "etaParBackward");
                const Eta& ey = expect<Eta>(p.right, "etaParBackward");
                const Element sy = sumOf(ey.leaves);
                // u⅋v ≤ Σp ⅋ Σq ≤ Σᵢ (pᵢ ⅋ Σq) ≤ Σᵢ Σⱼ (pᵢ⅋qⱼ)
                auto [tree, w] = regraft<Witness, Witness>(ex.leaves, [&](const Witness& pi) {
                    const Element p = Fr::source(pi);
                    PlusTree<Witness> sub =
                        ey.leaves.map([&](const Witness& qj) { return Fr::parMono(pi, qj); });
                    return std::pair{sub, distributeLeft(p, ey.leaves)};
                });
                Witness outer = Fr::trans(Fr::parMono(ex.outer, ey.outer), distributeRight(ex.leaves, sy));
                outer = Fr::trans(outer, w);
                return make(Fr::par(p.left.at(), p.right.at()), Eta{tree, outer});
            });
        };
    }

    /// η⁺(x◁y) ⊆ DaySeq(η⁺(x), η⁺(y))
    static T etaSeqForward(const Element& x, const Element& y) {
        return [x, y](const M& m) {
            const Eta& e = expect<Eta>(m, "etaSeqForward");
            return collect(e.leaves, e.outer,
                           [&](const Witness& leaf) { return introDaySeq(etaRefl(x), etaRefl(y), leaf); });
        };
    }

    /// η⁺(x+y) ⊆ η⁺(x) ∨ η⁺(y)
    static T etaPlusForward(const Element& x, const Element& y) {
        return [x, y](const M& m) {
            const Eta& e = expect<Eta>(m, "etaPlusForward");
            return collect(e.leaves, e.outer, [&](const Witness& leaf) {
                auto both = PlusTree<Tagged>::node(PlusTree<Tagged>::leaf(Tagged{Side::Left, etaRefl(x)}),
                                                   PlusTree<Tagged>::leaf(Tagged{Side::Right, etaRefl(y)}));
                return make(Fr::source(leaf), Join{both, leaf});
            });
        };
    }

    // -----------------------------------------------------------------------
    // Samples and validation

    /// Some member of the ideal, when one can be built without search.
    static std::optional<M> sampleMember(const Desc& d) {
        switch (d.kind()) {
        case DescKind::Eta:
            return etaRefl(d.generator());
        case DescKind::DayPar:
        case DescKind::DaySeq: {
            auto a = sampleMember(d.left());
            auto b = sampleMember(d.right());
            if (!a || !b)
                return std::nullopt;
            if (d.kind() == DescKind::DayPar)
                return introDayPar(*a, *b, Fr::refl(Fr::par(a->at(), b->at())));
            return introDaySeq(*a, *b, Fr::refl(Fr::seq(a->at(), b->at())));
        }
        case DescKind::Join:
            if (auto a = sampleMember(d.left()))
                return joinInject(Side::Left, *a);
            if (auto b = sampleMember(d.right()))
                return joinInject(Side::Right, *b);
            return std::nullopt;
        case DescKind::Meet:
        case DescKind::Residual:
            return std::nullopt;
        }
        return std::nullopt;
    }

    static Report reject(std::string why) {
        Report r;
        r.accepted = false;
        r.reason = std::move(why);
        return r;
    }

    static std::string checkWitness(const Witness& w, const Element& from, const Element& to, const char* what) {
        std::string why = Fr::checkWitness(w);
        if (!why.empty())
            return std::string(what) + ": " + why;
        if (!Fr::same(Fr::source(w), from))
            return std::string(what) + ": witness starts at " + Fr::show(Fr::source(w)) + ", expected " +
                   Fr::show(from);
        if (!Fr::same(Fr::target(w), to))
            return std::string(what) + ": witness ends at " + Fr::show(Fr::target(w)) + ", expected " +
                   Fr::show(to);
        return {};
    }

    /// Checks every invariant of m as evidence that z belongs to d. Residual
    /// members are checked on the samples of their argument ideal.
    static Report validateMember(const Desc& d, const Element& z, const M& m) {
        std::string why = validate(d, z, m);
        return why.empty() ? Report{} : reject(why);
    }

    static std::string validate(const Desc& d, const Element& z, const M& m) {
        if (!Fr::same(m.at(), z))
            return "member is at " + Fr::show(m.at()) + ", expected " + Fr::show(z);
        const char* shape = "member shape does not match " ;
        switch (d.kind()) {
        case DescKind::Eta: {
            const Eta* e = m.template as<Eta>();
            if (!e)
                return shape + d.show();
            std::string why;
            std::size_t i = 0;
            for (const Witness& leaf : e->leaves.leaves()) {
                why = checkWitness(leaf, Fr::source(leaf), d.generator(), "Eta leaf");
                if (!why.empty())
                    return why + " (leaf " + std::to_string(i) + ")";
                ++i;
            }
            return checkWitness(e->outer, z, sumOf(e->leaves), "Eta outer");
        }
        case DescKind::DayPar: {
            const DayPar* e = m.template as<DayPar>();
            if (!e)
                return shape + d.show();
            for (const Pair& p : e->leaves.leaves()) {
                std::string why = validate(d.left(), p.left.at(), p.left);
                if (why.empty())
                    why = validate(d.right(), p.right.at(), p.right);
                if (!why.empty())
                    return "DayPar leaf: " + why;
            }
            return checkWitness(e->outer, z, sumOf(e->leaves), "DayPar outer");
        }
        case DescKind::DaySeq: {
            const DaySeq* e = m.template as<DaySeq>();
            if (!e)
                return shape + d.show();
            std::string why = validate(d.left(), e->left.at(), e->left);
            if (why.empty())
                why = validate(d.right(), e->right.at(), e->right);
            if (!why.empty())
                return "DaySeq component: " + why;
            return checkWitness(e->outer, z, Fr::seq(e->left.at(), e->right.at()), "DaySeq outer");
        }
        case DescKind::Residual: {
            const Residual* e = m.template as<Residual>();
            if (!e)
                return shape + d.show();
            if (auto s = sampleMember(d.left())) {
                try {
                    M out = e->apply(*s);
                    std::string why = validate(d.right(), Fr::par(z, s->at()), out);
                    if (!why.empty())
                        return "Residual output: " + why;
                } catch (const Error& ex) {
                    return std::string("Residual application failed: ") + ex.what();
                }
            }
            return {};
        }
        case DescKind::Meet: {
            const Meet* e = m.template as<Meet>();
            if (!e)
                return shape + d.show();
            std::string why = validate(d.left(), z, e->first);
            if (why.empty())
                why = validate(d.right(), z, e->second);
            return why.empty() ? why : "Meet component: " + why;
        }
        case DescKind::Join: {
            const Join* e = m.template as<Join>();
            if (!e)
                return shape + d.show();
            for (const Tagged& t : e->leaves.leaves()) {
                std::string why =
                    validate(t.side == Side::Left ? d.left() : d.right(), t.member.at(), t.member);
                if (!why.empty())
                    return "Join leaf: " + why;
            }
            return checkWitness(e->outer, z, sumOf(e->leaves), "Join outer");
        }
        }
        return "unknown descriptor";
    }

    /// Evidence equality up to witnesses: same tree shapes, generators and
    /// tags, with witnesses compared by their endpoints and residuals
    /// compared on samples.
    static bool sameEvidence(const Desc& d, const M& a, const M& b) {
        if (!Fr::same(a.at(), b.at()))
            return false;
        auto sameW = [](const Witness& x, const Witness& y) {
            return Fr::same(Fr::source(x), Fr::source(y)) && Fr::same(Fr::target(x), Fr::target(y));
        };
        switch (d.kind()) {
        case DescKind::Eta: {
            const Eta *x = a.template as<Eta>(), *y = b.template as<Eta>();
            if (!x || !y || !sameW(x->outer, y->outer))
                return false;
            return sameTrees(x->leaves, y->leaves, sameW);
        }
        case DescKind::DayPar: {
            const DayPar *x = a.template as<DayPar>(), *y = b.template as<DayPar>();
            if (!x || !y || !sameW(x->outer, y->outer))
                return false;
            return sameTrees(x->leaves, y->leaves, [&](const Pair& p, const Pair& q) {
                return sameEvidence(d.left(), p.left, q.left) && sameEvidence(d.right(), p.right, q.right);
            });
        }
        case DescKind::DaySeq: {
            const DaySeq *x = a.template as<DaySeq>(), *y = b.template as<DaySeq>();
            return x && y && sameW(x->outer, y->outer) && sameEvidence(d.left(), x->left, y->left) &&
                   sameEvidence(d.right(), x->right, y->right);
        }
        case DescKind::Residual: {
            const Residual *x = a.template as<Residual>(), *y = b.template as<Residual>();
            if (!x || !y)
                return false;
            if (auto s = sampleMember(d.left()))
                return sameEvidence(d.right(), x->apply(*s), y->apply(*s));
            return true;
        }
        case DescKind::Meet: {
            const Meet *x = a.template as<Meet>(), *y = b.template as<Meet>();
            return x && y && sameEvidence(d.left(), x->first, y->first) &&
                   sameEvidence(d.right(), x->second, y->second);
        }
        case DescKind::Join: {
            const Join *x = a.template as<Join>(), *y = b.template as<Join>();
            if (!x || !y || !sameW(x->outer, y->outer))
                return false;
            return sameTrees(x->leaves, y->leaves, [&](const Tagged& p, const Tagged& q) {
                return p.side == q.side &&
                       sameEvidence(p.side == Side::Left ? d.left() : d.right(), p.member, q.member);
            });
        }
        }
        return false;
    }

    template <class L, class Eq>
    static bool sameTrees(const PlusTree<L>& x, const PlusTree<L>& y, Eq&& eq) {
        if (x.isLeaf() != y.isLeaf())
            return false;
        if (x.isLeaf())
            return eq(x.value(), y.value());
        return sameTrees(x.left(), y.left(), eq) && sameTrees(x.right(), y.right(), eq);
    }
};

// ---------------------------------------------------------------------------
// The law table for the Day pomonoids, grouped for enumeration.

enum class IdealLaw : std::uint8_t {
    DayParComm,
    DayParAssoc,
    DayParAssocInv,
    DayParUnit,
    DayParUnitInv,
    DaySeqAssoc,
    DaySeqAssocInv,
    DaySeqUnitL,
    DaySeqUnitLInv,
    DaySeqUnitR,
    DaySeqUnitRInv,
};

inline constexpr std::array<IdealLaw, 11> kAllIdealLaws = {
    IdealLaw::DayParComm,     IdealLaw::DayParAssoc, IdealLaw::DayParAssocInv, IdealLaw::DayParUnit,
    IdealLaw::DayParUnitInv,  IdealLaw::DaySeqAssoc, IdealLaw::DaySeqAssocInv, IdealLaw::DaySeqUnitL,
    IdealLaw::DaySeqUnitLInv, IdealLaw::DaySeqUnitR, IdealLaw::DaySeqUnitRInv,
};

/// A law as a transformer together with its source and target ideals,
/// instantiated at the argument ideals (f, g, h; unused ones ignored).
template <WitnessedFrame Fr>
struct IdealLawInstance {
    IdealDesc<Fr> from, to;
    Transformer<Fr> apply;
};

template <WitnessedFrame Fr>
IdealLawInstance<Fr> idealLaw(IdealLaw law, const IdealDesc<Fr>& f, const IdealDesc<Fr>& g,
                              const IdealDesc<Fr>& h) {
    using I = Ideals<Fr>;
    using D = IdealDesc<Fr>;
    const D k = D::unitK();
    switch (law) {
    case IdealLaw::DayParComm:
        return {D::dayPar(f, g), D::dayPar(g, f), I::dayParComm()};
    case IdealLaw::DayParAssoc:
        return {D::dayPar(D::dayPar(f, g), h), D::dayPar(f, D::dayPar(g, h)), I::dayParAssoc()};
    case IdealLaw::DayParAssocInv:
        return {D::dayPar(f, D::dayPar(g, h)), D::dayPar(D::dayPar(f, g), h), I::dayParAssocInv()};
    case IdealLaw::DayParUnit:
        return {D::dayPar(f, k), f, I::dayParUnit()};
    case IdealLaw::DayParUnitInv:
        return {f, D::dayPar(f, k), I::dayParUnitInv()};
    case IdealLaw::DaySeqAssoc:
        return {D::daySeq(f, D::daySeq(g, h)), D::daySeq(D::daySeq(f, g), h), I::daySeqAssoc()};
    case IdealLaw::DaySeqAssocInv:
        return {D::daySeq(D::daySeq(f, g), h), D::daySeq(f, D::daySeq(g, h)), I::daySeqAssocInv()};
    case IdealLaw::DaySeqUnitL:
        return {D::daySeq(k, f), f, I::daySeqUnitL()};
    case IdealLaw::DaySeqUnitLInv:
        return {f, D::daySeq(k, f), I::daySeqUnitLInv()};
    case IdealLaw::DaySeqUnitR:
        return {D::daySeq(f, k), f, I::daySeqUnitR()};
    case IdealLaw::DaySeqUnitRInv:
        return {f, D::daySeq(f, k), I::daySeqUnitRInv()};
    }
    return {f, f, I::identity()};
}

} // namespace mav
