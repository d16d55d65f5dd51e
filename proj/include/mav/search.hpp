// Bounded proof search, structure enumeration and random provable goals.
//
// Search states are canonical forms. A state expands by every rule instance
// whose redex is found modulo the monoid axioms: inside an n-ary node any
// sub-multiset (⅋, ⊗) or adjacent pair (◁) of children can form the
// redex, and units are supplied where a pattern needs them (P ≃ P⊗1 for
// Switch, P ≃ P◁1 and P ≃ 1◁P for Sequence and Medial).
#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mav/calculus.hpp"
#include "mav/canon.hpp"
#include "mav/syntax.hpp"

namespace mav {

struct SearchBudget {
    std::size_t maxInferSteps = 16;
    std::size_t maxStructureSize = 16;
    std::size_t maxVisited = 20000;
};

enum class SearchStatus : std::uint8_t { Proved, RefutedWithinCap, Unknown };

inline std::string_view statusName(SearchStatus s) {
    switch (s) {
    case SearchStatus::Proved:
        return "Proved";
    case SearchStatus::RefutedWithinCap:
        return "RefutedWithinCap";
    case SearchStatus::Unknown:
        return "Unknown";
    }
    return "?";
}

struct SearchOutcome {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<Derivation> proof;
    std::size_t visited = 0;
};

/// One rule application found by search: `before` is equivalent to the
/// state and the rule matches it literally at `path`.
struct Move {
    Structure before;
    Path path;
    RuleId rule;
    std::optional<Structure> binding;
};

namespace detail {

inline CanonicalForm formOf(Kind k, std::vector<CanonicalForm> children) {
    if (children.empty())
        return CanonicalForm{};
    if (children.size() == 1)
        return std::move(children.front());
    CanonicalForm f;
    f.kind = k;
    f.children = std::move(children);
    return f;
}

inline Structure structOf(Kind k, const std::vector<CanonicalForm>& children) {
    return toStructure(formOf(k, children));
}

/// The operands of f under monoid k: its children if f is a k-node, nothing
/// for the unit, f itself otherwise.
inline std::vector<CanonicalForm> operands(Kind k, const CanonicalForm& f) {
    if (f.kind == k)
        return f.children;
    if (f.kind == Kind::Unit)
        return {};
    return {f};
}

template <class T>
std::vector<T> pick(const std::vector<T>& xs, std::uint32_t mask) {
    std::vector<T> out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (mask & (1u << i))
            out.push_back(xs[i]);
    return out;
}

/// Structures built from sub-multisets of a node's children, by bitmask.
class SubsetCache {
public:
    SubsetCache(Kind k, const std::vector<CanonicalForm>& xs) : kind_(k), xs_(xs), built_(std::size_t{1} << xs.size()) {}

    const Structure& operator()(std::uint32_t mask) {
        auto& slot = built_[mask];
        if (!slot)
            slot = structOf(kind_, pick(xs_, mask));
        return *slot;
    }

private:
    Kind kind_;
    const std::vector<CanonicalForm>& xs_;
    std::vector<std::optional<Structure>> built_;
};

class MoveGenerator {
public:
    MoveGenerator(Fragment fragment, std::vector<std::string> atoms)
        : symmetric_(fragment == Fragment::Symmetric), atoms_(std::move(atoms)) {}

    /// How many nodes a move may add before it is pointless to generate.
    void setRoom(std::size_t room) { room_ = room; }

    std::vector<Move> movesOf(const CanonicalForm& f) const {
        std::vector<Move> out;
        rootMoves(f, out);
        if (!isBinary(f.kind))
            return out;
        const std::size_t n = f.children.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Move> inner = movesOf(f.children[i]);
            if (inner.empty())
                continue;
            // The context around child i, built once for all its moves.
            std::optional<Structure> left, right;
            if (!isMonoidKind(f.kind)) {
                (i == 0 ? right : left) = toStructure(f.children[1 - i]);
            } else if (isCommutativeKind(f.kind)) {
                std::vector<CanonicalForm> rest = f.children;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                right = structOf(f.kind, rest);
            } else {
                segments(f, i, i + 1, left, right);
            }
            for (Move& m : inner) {
                wrap(f.kind, left, right, m);
                out.push_back(std::move(m));
            }
        }
        return out;
    }

private:
    /// The ◁-segments before and after children [from, to).
    static void segments(const CanonicalForm& f, std::size_t from, std::size_t to, std::optional<Structure>& left,
                         std::optional<Structure>& right) {
        if (from > 0)
            left = structOf(Kind::Seq, {f.children.begin(), f.children.begin() + static_cast<std::ptrdiff_t>(from)});
        if (to < f.children.size())
            right = structOf(Kind::Seq, {f.children.begin() + static_cast<std::ptrdiff_t>(to), f.children.end()});
    }

    /// Puts m.before between the optional neighbours under connective k.
    static void wrap(Kind k, const std::optional<Structure>& left, const std::optional<Structure>& right, Move& m) {
        if (right) {
            m.before = Structure::make(k, std::move(m.before), *right);
            m.path.insert(m.path.begin(), Dir::L);
        }
        if (left) {
            m.before = Structure::make(k, *left, std::move(m.before));
            m.path.insert(m.path.begin(), Dir::R);
        }
    }

    static void placeSegment(const CanonicalForm& f, std::size_t from, std::size_t to, Move& m) {
        std::optional<Structure> left, right;
        segments(f, from, to, left, right);
        wrap(Kind::Seq, left, right, m);
    }

    /// A redex built from the children selected by `used` of a
    /// commutative node, with the remaining children beside it.
    static Move commutativeRedex(const CanonicalForm& f, SubsetCache& sub, std::uint32_t used, Structure redex,
                                 RuleId r) {
        const std::uint32_t rest = ((1u << f.children.size()) - 1) & ~used;
        Move m{std::move(redex), {}, r, {}};
        if (rest) {
            m.before = Structure::make(f.kind, std::move(m.before), sub(rest));
            m.path = {Dir::L};
        }
        return m;
    }

    /// Every way to read f as X1◁X2, units included.
    static std::vector<Structure> seqSplits(const CanonicalForm& f) {
        const std::vector<CanonicalForm> xs = operands(Kind::Seq, f);
        std::vector<Structure> out;
        for (std::size_t a = 0; a <= xs.size(); ++a) {
            const auto mid = xs.begin() + static_cast<std::ptrdiff_t>(a);
            out.push_back(Structure::seq(structOf(Kind::Seq, {xs.begin(), mid}), structOf(Kind::Seq, {mid, xs.end()})));
        }
        return out;
    }

    void rootMoves(const CanonicalForm& f, std::vector<Move>& out) const {
        switch (f.kind) {
        case Kind::Parr:
            parrMoves(f, out);
            break;
        case Kind::Seq:
            if (symmetric_)
                seqMoves(f, out);
            break;
        case Kind::With:
            withMoves(f, out);
            break;
        case Kind::Plus:
            plusMoves(f, out);
            break;
        default:
            break;
        }
        if (symmetric_)
            unitMoves(f, out);
    }

    void parrMoves(const CanonicalForm& f, std::vector<Move>& out) const {
        const auto& c = f.children;
        const std::size_t n = c.size();
        const std::uint32_t all = (1u << n) - 1;
        SubsetCache sub(Kind::Parr, c);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t self = 1u << i;
            const Structure ci = toStructure(c[i]);

            // AtomInteract
            if (c[i].kind == Kind::NegAtom) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (c[j].kind == Kind::PosAtom && c[j].atom == c[i].atom) {
                        out.push_back(commutativeRedex(f, sub, self | (1u << j), Structure::parr(ci, toStructure(c[j])),
                                                       RuleId::AtomInteract));
                        break;
                    }
                }
            }

            // Interact, with the dual spread over several children.
            if (symmetric_) {
                std::vector<CanonicalForm> want = operands(Kind::Parr, canon(dual(ci)));
                std::uint32_t used = self;
                bool ok = !want.empty();
                for (const auto& w : want) {
                    bool found = false;
                    for (std::size_t j = 0; j < n && !found; ++j) {
                        if (!(used & (1u << j)) && c[j] == w) {
                            used |= 1u << j;
                            found = true;
                        }
                    }
                    ok = ok && found;
                }
                if (ok)
                    out.push_back(commutativeRedex(f, sub, used, Structure::parr(ci, dual(ci)), RuleId::Interact));
            }

            const std::uint32_t others = all & ~self;
            // Switch: c[i] as P⊗Q, with R drawn from the other children.
            const std::vector<CanonicalForm> tens = operands(Kind::Tens, c[i]);
            const std::uint32_t tensAll = (1u << tens.size()) - 1;
            SubsetCache tsub(Kind::Tens, tens);
            for (std::uint32_t r = others; r; r = (r - 1) & others) {
                const Structure& rs = sub(r);
                for (std::uint32_t p = tensAll; p; p = (p - 1) & tensAll) {
                    Structure redex = Structure::parr(Structure::tens(tsub(p), tsub(tensAll & ~p)), rs);
                    out.push_back(commutativeRedex(f, sub, self | r, redex, RuleId::Switch));
                }
            }

            // Sequence: c[i] as X1◁X2 against Y1◁Y2 drawn from the others.
            const std::vector<Structure> xs = seqSplits(c[i]);
            for (std::uint32_t r = others; r; r = (r - 1) & others) {
                const bool single = (r & (r - 1)) == 0;
                const std::vector<Structure> ys =
                    single ? seqSplits(c[static_cast<std::size_t>(std::countr_zero(r))])
                           : std::vector<Structure>{Structure::seq(sub(r), Structure::unit()),
                                                    Structure::seq(Structure::unit(), sub(r))};
                for (const Structure& x : xs)
                    for (const Structure& y : ys)
                        out.push_back(commutativeRedex(f, sub, self | r, Structure::parr(x, y), RuleId::Sequence));
            }

            // External
            if (c[i].kind == Kind::With) {
                for (std::uint32_t r = others; r; r = (r - 1) & others)
                    out.push_back(commutativeRedex(f, sub, self | r, Structure::parr(ci, sub(r)),
                                                   RuleId::External));
            }
        }
    }

    void seqMoves(const CanonicalForm& f, std::vector<Move>& out) const {
        const auto& c = f.children;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            // CoSequence
            std::vector<CanonicalForm> xs = operands(Kind::Tens, c[i]), ys = operands(Kind::Tens, c[i + 1]);
            const std::uint32_t xAll = (1u << xs.size()) - 1, yAll = (1u << ys.size()) - 1;
            for (std::uint32_t p = 0; p <= xAll; ++p) {
                for (std::uint32_t q = 0; q <= yAll; ++q) {
                    Structure redex =
                        Structure::seq(Structure::tens(structOf(Kind::Tens, pick(xs, p)), structOf(Kind::Tens, pick(xs, xAll & ~p))),
                                       Structure::tens(structOf(Kind::Tens, pick(ys, q)), structOf(Kind::Tens, pick(ys, yAll & ~q))));
                    Move m{redex, {}, RuleId::CoSequence, {}};
                    placeSegment(f, i, i + 2, m);
                    out.push_back(std::move(m));
                }
            }
            // CoMedial
            if (c[i].kind == Kind::Plus && c[i + 1].kind == Kind::Plus) {
                Move m{Structure::seq(toStructure(c[i]), toStructure(c[i + 1])), {}, RuleId::CoMedial, {}};
                placeSegment(f, i, i + 2, m);
                out.push_back(std::move(m));
            }
        }
    }

    void withMoves(const CanonicalForm& f, std::vector<Move>& out) const {
        const auto& l = f.children[0];
        const auto& r = f.children[1];
        if (l.kind == Kind::Unit && r.kind == Kind::Unit)
            out.push_back(Move{toStructure(f), {}, RuleId::Tidy, {}});
        const std::vector<Structure> xs = seqSplits(l), ys = seqSplits(r);
        for (const Structure& x : xs)
            for (const Structure& y : ys)
                out.push_back(Move{Structure::with(x, y), {}, RuleId::Medial, {}});
    }

    void plusMoves(const CanonicalForm& f, std::vector<Move>& out) const {
        Structure s = toStructure(f);
        out.push_back(Move{s, {}, RuleId::Left, {}});
        out.push_back(Move{s, {}, RuleId::Right, {}});
        if (!symmetric_)
            return;
        // CoExternal: a common ⊗-factor R of both branches.
        std::vector<CanonicalForm> xs = operands(Kind::Tens, f.children[0]);
        std::vector<CanonicalForm> ys = operands(Kind::Tens, f.children[1]);
        const std::uint32_t xAll = (1u << xs.size()) - 1;
        for (std::uint32_t r = xAll; r; r = (r - 1) & xAll) {
            std::vector<CanonicalForm> common = pick(xs, r);
            std::vector<CanonicalForm> rest = ys;
            bool ok = true;
            for (const auto& g : common) {
                auto it = std::find(rest.begin(), rest.end(), g);
                if (it == rest.end()) {
                    ok = false;
                    break;
                }
                rest.erase(it);
            }
            if (!ok)
                continue;
            Structure rs = structOf(Kind::Tens, common);
            Structure redex = Structure::plus(Structure::tens(structOf(Kind::Tens, pick(xs, xAll & ~r)), rs),
                                              Structure::tens(structOf(Kind::Tens, rest), rs));
            out.push_back(Move{redex, {}, RuleId::CoExternal, {}});
        }
    }

    /// Co-rules that grow a unit: CoTidy at unit leaves, and CoInteract
    /// with an atom of the goal beside any node.
    void unitMoves(const CanonicalForm& f, std::vector<Move>& out) const {
        if (f.kind == Kind::Unit) {
            if (room_ < 2)
                return;
            out.push_back(Move{Structure::unit(), {}, RuleId::CoTidy, {}});
            for (const auto& a : atoms_) {
                out.push_back(Move{Structure::unit(), {}, RuleId::CoInteract, Structure::pos(a)});
                out.push_back(Move{Structure::unit(), {}, RuleId::CoInteract, Structure::neg(a)});
            }
            return;
        }
        if (room_ < 4)
            return;
        Structure s = Structure::parr(toStructure(f), Structure::unit());
        for (const auto& a : atoms_) {
            out.push_back(Move{s, {Dir::R}, RuleId::CoInteract, Structure::pos(a)});
            out.push_back(Move{s, {Dir::R}, RuleId::CoInteract, Structure::neg(a)});
        }
    }

    bool symmetric_;
    std::vector<std::string> atoms_;
    std::size_t room_ = static_cast<std::size_t>(-1);
};

/// Size of toStructure(f), without building it.
inline std::size_t formSize(const CanonicalForm& f) {
    if (f.children.empty())
        return 1;
    std::size_t n = f.children.size() - 1;
    for (const auto& c : f.children)
        n += formSize(c);
    return n;
}

inline void collectAtoms(const Structure& p, std::set<std::string>& out) {
    if (p.kind() == Kind::PosAtom || p.kind() == Kind::NegAtom)
        out.insert(p.name());
    else if (isBinary(p.kind())) {
        collectAtoms(p.left(), out);
        collectAtoms(p.right(), out);
    }
}

} // namespace detail

/// Every rule application available from the state p, modulo ≃.
inline std::vector<Move> searchMoves(const Structure& p, Fragment fragment) {
    std::set<std::string> atoms;
    detail::collectAtoms(p, atoms);
    detail::MoveGenerator gen(fragment, {atoms.begin(), atoms.end()});
    return gen.movesOf(canon(p));
}

/// Breadth-first search for a proof of p in the given fragment.
inline SearchOutcome prove(const Structure& p, Fragment fragment, const SearchBudget& budget = {}) {
    std::set<std::string> atomSet;
    detail::collectAtoms(p, atomSet);
    detail::MoveGenerator gen(fragment, {atomSet.begin(), atomSet.end()});

    struct Node {
        CanonicalForm form;
        std::size_t parent;
        std::optional<Move> move;
        Structure after;
        std::size_t depth;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::string, std::size_t> seen;

    auto finish = [&](std::size_t i) {
        std::vector<std::size_t> chain;
        for (std::size_t k = i; nodes[k].move; k = nodes[k].parent)
            chain.push_back(k);
        Derivation d = refl(p);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const Node& nd = nodes[*it];
            if (nd.move->before != d.last())
                d.steps.push_back(Step::equiv(nd.move->before));
            d.steps.push_back(Step::infer(nd.move->rule, nd.move->path, nd.after));
        }
        if (d.last() != Structure::unit())
            d.steps.push_back(Step::equiv(Structure::unit()));
        d = mergeEquivSteps(d);
        Report r = checkProof(d, fragment);
        if (!r)
            throw std::logic_error("search produced an invalid proof: " + r.reason);
        return SearchOutcome{SearchStatus::Proved, std::move(d), nodes.size()};
    };

    CanonicalForm start = canon(p);
    nodes.push_back(Node{start, 0, std::nullopt, p, 0});
    seen.emplace(canonKey(p), 0);
    if (start.kind == Kind::Unit)
        return finish(0);

    bool truncated = false;
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (nodes[head].depth >= budget.maxInferSteps) {
            truncated = true;
            continue;
        }
        const CanonicalForm form = nodes[head].form;
        const std::size_t depth = nodes[head].depth;
        const std::size_t size = detail::formSize(form);
        gen.setRoom(budget.maxStructureSize > size ? budget.maxStructureSize - size : 0);
        for (Move& m : gen.movesOf(form)) {
            Structure after = applyRule(m.before, m.rule, m.path, m.binding).front();
            CanonicalForm af = canon(after);
            if (detail::formSize(af) > budget.maxStructureSize)
                continue;
            std::string key;
            appendKey(key, af);
            if (seen.count(key))
                continue;
            if (nodes.size() >= budget.maxVisited)
                return SearchOutcome{SearchStatus::Unknown, std::nullopt, nodes.size()};
            seen.emplace(std::move(key), nodes.size());
            const bool done = af.kind == Kind::Unit;
            nodes.push_back(Node{std::move(af), head, std::move(m), std::move(after), depth + 1});
            if (done)
                return finish(nodes.size() - 1);
        }
    }
    // Symmetric expansion omits CoLeft/CoRight and most unit-growing
    // instances, so only the normal fragment is ever exhausted.
    const bool complete = !truncated && fragment == Fragment::Normal;
    return SearchOutcome{complete ? SearchStatus::RefutedWithinCap : SearchStatus::Unknown, std::nullopt,
                         nodes.size()};
}

// ---------------------------------------------------------------------------
// Enumeration

/// Every structure of size ≤ maxSize over the given atoms, one canonical
/// representative per ≃-class, ordered by size.
/// Calls `visit` on one representative of every ≃-class of structures over
/// `atoms` with at most `maxSize` nodes, smallest first. Only the classes
/// below the largest size are kept in memory.
template <class Visit>
void forEachStructure(const std::vector<std::string>& atoms, std::size_t maxSize, Visit&& visit) {
    std::vector<std::vector<CanonicalForm>> bySize(maxSize + 1);
    auto emit = [&](std::size_t s, CanonicalForm f) {
        visit(toStructure(f));
        if (s < maxSize)
            bySize[s].push_back(std::move(f));
    };
    if (maxSize >= 1) {
        emit(1, CanonicalForm{});
        for (const auto& a : atoms) {
            emit(1, canon(Structure::pos(a)));
            emit(1, canon(Structure::neg(a)));
        }
    }
    for (std::size_t s = 3; s <= maxSize; s += 2) {
        for (Kind k : {Kind::With, Kind::Plus}) {
            for (std::size_t sl = 1; sl + 2 <= s; sl += 2)
                for (const auto& l : bySize[sl])
                    for (const auto& r : bySize[s - 1 - sl])
                        emit(s, detail::formOf(k, {l, r}));
        }
        for (Kind k : {Kind::Seq, Kind::Tens, Kind::Parr}) {
            // Children of a k-node: non-unit forms of another kind. Sizes
            // add up with one extra node per extra child.
            std::vector<std::pair<std::size_t, std::size_t>> pool; // (size, index)
            for (std::size_t cs = 1; cs < s; cs += 2)
                for (std::size_t i = 0; i < bySize[cs].size(); ++i)
                    if (bySize[cs][i].kind != Kind::Unit && bySize[cs][i].kind != k)
                        pool.emplace_back(cs, i);
            std::vector<std::size_t> chosen;
            std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t budget, std::size_t minIndex) {
                if (budget == 0 && chosen.size() >= 2) {
                    std::vector<CanonicalForm> cs;
                    for (std::size_t j : chosen)
                        cs.push_back(bySize[pool[j].first][pool[j].second]);
                    if (isCommutativeKind(k))
                        std::sort(cs.begin(), cs.end());
                    emit(s, detail::formOf(k, std::move(cs)));
                    return;
                }
                // Each further child costs its size plus one joining node.
                // The pool is ordered by size, so the first misfit ends the loop.
                for (std::size_t j = isCommutativeKind(k) ? minIndex : 0; j < pool.size(); ++j) {
                    std::size_t cost = pool[j].first + (chosen.empty() ? 0 : 1);
                    if (cost > budget)
                        break;
                    std::size_t after = budget - cost;
                    if (chosen.empty() && after == 0)
                        continue;
                    chosen.push_back(j);
                    grow(after, j);
                    chosen.pop_back();
                }
            };
            grow(s, 0);
        }
    }
}

inline std::vector<Structure> enumerate(const std::vector<std::string>& atoms, std::size_t maxSize) {
    std::vector<Structure> result;
    forEachStructure(atoms, maxSize, [&](Structure p) { result.push_back(std::move(p)); });
    return result;
}

// ---------------------------------------------------------------------------
// Random provable goals

namespace detail {

/// A backward rule application: inside the subterm t, the rule rewrites
/// `from` (at `sub`) into `to`, and to ≃ t.
struct Inverse {
    RuleId rule;
    Structure from;
    Path sub;
    Structure to;
    std::optional<Structure> binding;
};

class ProofGrower {
public:
    explicit ProofGrower(std::uint64_t seed) : rng_(static_cast<std::mt19937::result_type>(seed)) {}

    std::pair<Structure, Derivation> grow(std::size_t nSteps) {
        Structure cur = Structure::unit();
        std::vector<Step> reversed; // forward steps, last first
        for (std::size_t k = 0; k < nSteps; ++k) {
            std::vector<std::pair<Path, Inverse>> options;
            collect(cur, {}, options);
            if (options.empty())
                break;
            std::uniform_int_distribution<std::size_t> pickOne(0, options.size() - 1);
            auto [path, inv] = options[pickOne(rng_)];
            Structure next = replaceAt(cur, path, inv.from);
            Structure mid = replaceAt(cur, path, inv.to);
            if (mid != cur)
                reversed.push_back(Step::equiv(cur));
            reversed.push_back(Step::infer(inv.rule, joinPaths(path, inv.sub), mid));
            cur = next;
        }
        Derivation d = refl(cur);
        d.steps.assign(reversed.rbegin(), reversed.rend());
        return {cur, d};
    }

private:
    Structure smallStructure() {
        static const char* pool[] = {"a", "b", "c"};
        std::uniform_int_distribution<int> atom(0, 2), kind(static_cast<int>(Kind::Seq), static_cast<int>(Kind::Plus));
        auto leaf = [&]() {
            const char* a = pool[atom(rng_)];
            return std::bernoulli_distribution(0.5)(rng_) ? Structure::pos(a) : Structure::neg(a);
        };
        if (std::bernoulli_distribution(0.6)(rng_))
            return leaf();
        return Structure::make(static_cast<Kind>(kind(rng_)), leaf(), leaf());
    }

    static std::pair<Structure, Structure> splitPar(const Structure& x) {
        if (x.is(Kind::Parr))
            return {x.left(), x.right()};
        return {x, Structure::unit()};
    }
    static std::pair<Structure, Structure> splitSeq(const Structure& x) {
        if (x.is(Kind::Seq))
            return {x.left(), x.right()};
        return {x, Structure::unit()};
    }

    void inverses(const Structure& t, std::vector<Inverse>& out) {
        using S = Structure;
        const S one = S::unit();
        // Interact and AtomInteract beside t.
        {
            S p = smallStructure();
            out.push_back({RuleId::Interact, S::parr(t, S::parr(p, dual(p))), {Dir::R}, S::parr(t, one), {}});
            S a = S::pos(std::string(1, static_cast<char>('a' + std::uniform_int_distribution<int>(0, 2)(rng_))));
            out.push_back({RuleId::AtomInteract, S::parr(t, S::parr(dual(a), a)), {Dir::R}, S::parr(t, one), {}});
        }
        out.push_back({RuleId::Tidy, S::parr(t, S::with(one, one)), {Dir::R}, S::parr(t, one), {}});
        {
            S q = smallStructure();
            out.push_back({RuleId::Left, S::plus(t, q), {}, t, {}});
            out.push_back({RuleId::Right, S::plus(q, t), {}, t, {}});
        }
        if (t.is(Kind::Tens)) {
            auto [q, r] = splitPar(t.right());
            out.push_back({RuleId::Switch, S::parr(S::tens(t.left(), q), r), {}, S::tens(t.left(), S::parr(q, r)), {}});
            auto [p, q2] = splitSeq(t.left());
            auto [r2, u] = splitSeq(t.right());
            out.push_back({RuleId::CoSequence, S::seq(S::tens(p, r2), S::tens(q2, u)), {}, S::tens(S::seq(p, q2), S::seq(r2, u)), {}});
            if (t.left().is(Kind::Plus)) {
                const S& l = t.left();
                out.push_back({RuleId::CoExternal, S::plus(S::tens(l.left(), t.right()), S::tens(l.right(), t.right())), {},
                               t, {}});
            }
            if (equivalent(t.right(), dual(t.left())))
                out.push_back({RuleId::CoInteract, one, {}, S::tens(t.left(), dual(t.left())), t.left()});
        }
        if (t.is(Kind::Seq)) {
            auto [x1, x2] = splitPar(t.left());
            auto [y1, y2] = splitPar(t.right());
            out.push_back({RuleId::Sequence, S::parr(S::seq(x1, y1), S::seq(x2, y2)), {}, S::seq(S::parr(x1, x2), S::parr(y1, y2)), {}});
            if (t.left().is(Kind::With) && t.right().is(Kind::With)) {
                const S &l = t.left(), &r = t.right();
                out.push_back({RuleId::Medial, S::with(S::seq(l.left(), r.left()), S::seq(l.right(), r.right())), {}, t, {}});
            }
        }
        if (t.is(Kind::With)) {
            auto [p, r] = splitPar(t.left());
            auto [q, r2] = splitPar(t.right());
            if (r == r2)
                out.push_back({RuleId::External, S::parr(S::with(p, q), r), {}, S::with(S::parr(p, r), S::parr(q, r)), {}});
            else
                out.push_back({RuleId::External, S::parr(S::with(t.left(), t.right()), one), {},
                               S::with(S::parr(t.left(), one), S::parr(t.right(), one)), {}});
            out.push_back({RuleId::CoLeft, t.left(), {}, t, t.right()});
            out.push_back({RuleId::CoRight, t.right(), {}, t, t.left()});
        }
        if (t.is(Kind::Plus)) {
            if (equivalent(t.left(), one) && equivalent(t.right(), one))
                out.push_back({RuleId::CoTidy, one, {}, S::plus(one, one), {}});
            auto [p, r] = splitSeq(t.left());
            auto [q, u] = splitSeq(t.right());
            out.push_back({RuleId::CoMedial, S::seq(S::plus(p, q), S::plus(r, u)), {}, S::plus(S::seq(p, r), S::seq(q, u)), {}});
        }
    }

    void collect(const Structure& s, const Path& at, std::vector<std::pair<Path, Inverse>>& out) {
        std::vector<Inverse> here;
        inverses(s, here);
        for (auto& inv : here)
            out.emplace_back(at, std::move(inv));
        if (isBinary(s.kind())) {
            collect(s.left(), extend(at, Dir::L), out);
            collect(s.right(), extend(at, Dir::R), out);
        }
    }

    std::mt19937 rng_;
};

} // namespace detail

/// A random goal together with a symmetric proof of it, grown backwards
/// from 1 by nSteps inverted rule instances.
inline std::pair<Structure, Derivation> randomProvable(std::uint64_t seed, std::size_t nSteps) {
    return detail::ProofGrower(seed).grow(nSteps);
}

} // namespace mav
