// Inference rules as literal rewrites, derivations as checkable step
// sequences, and the combinators that build derivations out of smaller
// ones (context lifting, concatenation, congruence).
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mav/canon.hpp"
#include "mav/syntax.hpp"

namespace mav {

class NoMatch : public Error {
public:
    using Error::Error;
};

class EndpointMismatch : public Error {
public:
    using Error::Error;
};

class GoalMismatch : public Error {
public:
    using Error::Error;
};

/// Raised when a rule whose premise mentions a structure absent from the
/// conclusion (CoInteract, CoLeft, CoRight) is applied without a binding.
class MissingBinding : public Error {
public:
    using Error::Error;
};

enum class RuleId : std::uint8_t {
    Interact,
    AtomInteract,
    Switch,
    Tidy,
    Sequence,
    Left,
    Right,
    External,
    Medial,
    CoInteract,
    CoTidy,
    CoSequence,
    CoLeft,
    CoRight,
    CoExternal,
    CoMedial,
};

inline constexpr std::array<RuleId, 16> kAllRules = {
    RuleId::Interact,   RuleId::AtomInteract, RuleId::Switch,     RuleId::Tidy,
    RuleId::Sequence,   RuleId::Left,         RuleId::Right,      RuleId::External,
    RuleId::Medial,     RuleId::CoInteract,   RuleId::CoTidy,     RuleId::CoSequence,
    RuleId::CoLeft,     RuleId::CoRight,      RuleId::CoExternal, RuleId::CoMedial,
};

inline constexpr std::string_view ruleName(RuleId r) {
    constexpr std::array<std::string_view, 16> names = {
        "Interact", "AtomInteract", "Switch",     "Tidy",    "Sequence", "Left",
        "Right",    "External",     "Medial",     "CoInteract", "CoTidy", "CoSequence",
        "CoLeft",   "CoRight",      "CoExternal", "CoMedial",
    };
    return names[static_cast<std::size_t>(r)];
}

inline std::optional<RuleId> ruleFromName(std::string_view name) {
    for (RuleId r : kAllRules)
        if (ruleName(r) == name)
            return r;
    return std::nullopt;
}

/// The analytic rules: no Co- rules, and Interact only on atoms.
inline bool isNormalRule(RuleId r) {
    switch (r) {
    case RuleId::AtomInteract:
    case RuleId::Switch:
    case RuleId::Tidy:
    case RuleId::Sequence:
    case RuleId::Left:
    case RuleId::Right:
    case RuleId::External:
    case RuleId::Medial:
        return true;
    default:
        return false;
    }
}

inline bool isCoRule(RuleId r) { return r >= RuleId::CoInteract; }

/// Does `from ⟶ to` hold as a single root instance of rule r?
inline bool matchesRule(RuleId r, const Structure& from, const Structure& to) {
    using K = Kind;
    switch (r) {
    case RuleId::Interact:
        return from.is(K::Parr) && to.isUnit() && from.right() == dual(from.left());
    case RuleId::AtomInteract:
        return from.is(K::Parr) && to.isUnit() && from.left().is(K::NegAtom) &&
               from.right().is(K::PosAtom) && from.left().name() == from.right().name();
    case RuleId::Switch:
        return from.is(K::Parr) && from.left().is(K::Tens) && to.is(K::Tens) && to.right().is(K::Parr) &&
               to.left() == from.left().left() && to.right().left() == from.left().right() &&
               to.right().right() == from.right();
    case RuleId::Tidy:
        return from.is(K::With) && from.left().isUnit() && from.right().isUnit() && to.isUnit();
    case RuleId::Sequence:
        return from.is(K::Parr) && from.left().is(K::Seq) && from.right().is(K::Seq) && to.is(K::Seq) &&
               to.left().is(K::Parr) && to.right().is(K::Parr) && to.left().left() == from.left().left() &&
               to.left().right() == from.right().left() && to.right().left() == from.left().right() &&
               to.right().right() == from.right().right();
    case RuleId::Left:
        return from.is(K::Plus) && to == from.left();
    case RuleId::Right:
        return from.is(K::Plus) && to == from.right();
    case RuleId::External:
        return from.is(K::Parr) && from.left().is(K::With) && to.is(K::With) && to.left().is(K::Parr) &&
               to.right().is(K::Parr) && to.left().left() == from.left().left() &&
               to.right().left() == from.left().right() && to.left().right() == from.right() &&
               to.right().right() == from.right();
    case RuleId::Medial:
        return from.is(K::With) && from.left().is(K::Seq) && from.right().is(K::Seq) && to.is(K::Seq) &&
               to.left().is(K::With) && to.right().is(K::With) && to.left().left() == from.left().left() &&
               to.left().right() == from.right().left() && to.right().left() == from.left().right() &&
               to.right().right() == from.right().right();
    case RuleId::CoInteract:
        return from.isUnit() && to.is(K::Tens) && to.right() == dual(to.left());
    case RuleId::CoTidy:
        return from.isUnit() && to.is(K::Plus) && to.left().isUnit() && to.right().isUnit();
    case RuleId::CoSequence:
        return from.is(K::Seq) && from.left().is(K::Tens) && from.right().is(K::Tens) && to.is(K::Tens) &&
               to.left().is(K::Seq) && to.right().is(K::Seq) && to.left().left() == from.left().left() &&
               to.left().right() == from.right().left() && to.right().left() == from.left().right() &&
               to.right().right() == from.right().right();
    case RuleId::CoLeft:
        return to.is(K::With) && to.left() == from;
    case RuleId::CoRight:
        return to.is(K::With) && to.right() == from;
    case RuleId::CoExternal:
        return from.is(K::Plus) && from.left().is(K::Tens) && from.right().is(K::Tens) &&
               from.left().right() == from.right().right() && to.is(K::Tens) && to.left().is(K::Plus) &&
               to.left().left() == from.left().left() && to.left().right() == from.right().left() &&
               to.right() == from.left().right();
    case RuleId::CoMedial:
        return from.is(K::Seq) && from.left().is(K::Plus) && from.right().is(K::Plus) && to.is(K::Plus) &&
               to.left().is(K::Seq) && to.right().is(K::Seq) && to.left().left() == from.left().left() &&
               to.left().right() == from.right().left() && to.right().left() == from.left().right() &&
               to.right().right() == from.right().right();
    }
    return false;
}

/// Rewrites the root of `s` by rule r. `binding` supplies the structure a
/// synthetic rule introduces (P for CoInteract, the new branch for
/// CoLeft/CoRight).
inline Structure rewriteRoot(RuleId r, const Structure& s, const std::optional<Structure>& binding = {}) {
    using S = Structure;
    auto fail = [&]() -> S { throw NoMatch(std::string(ruleName(r)) + ": subterm does not match the rule"); };
    auto needBinding = [&]() -> const S& {
        if (!binding)
            throw MissingBinding(std::string(ruleName(r)) + " needs a binding for its new structure");
        return *binding;
    };
    using K = Kind;
    switch (r) {
    case RuleId::Interact:
    case RuleId::AtomInteract:
    case RuleId::Tidy:
        return matchesRule(r, s, S::unit()) ? S::unit() : fail();
    case RuleId::Switch:
        if (!s.is(K::Parr) || !s.left().is(K::Tens))
            return fail();
        return S::tens(s.left().left(), S::parr(s.left().right(), s.right()));
    case RuleId::Sequence:
        if (!s.is(K::Parr) || !s.left().is(K::Seq) || !s.right().is(K::Seq))
            return fail();
        return S::seq(S::parr(s.left().left(), s.right().left()), S::parr(s.left().right(), s.right().right()));
    case RuleId::Left:
        return s.is(K::Plus) ? s.left() : fail();
    case RuleId::Right:
        return s.is(K::Plus) ? s.right() : fail();
    case RuleId::External:
        if (!s.is(K::Parr) || !s.left().is(K::With))
            return fail();
        return S::with(S::parr(s.left().left(), s.right()), S::parr(s.left().right(), s.right()));
    case RuleId::Medial:
        if (!s.is(K::With) || !s.left().is(K::Seq) || !s.right().is(K::Seq))
            return fail();
        return S::seq(S::with(s.left().left(), s.right().left()), S::with(s.left().right(), s.right().right()));
    case RuleId::CoInteract: {
        if (!s.isUnit())
            return fail();
        const S& p = needBinding();
        return S::tens(p, dual(p));
    }
    case RuleId::CoTidy:
        return s.isUnit() ? S::plus(S::unit(), S::unit()) : fail();
    case RuleId::CoSequence:
        if (!s.is(K::Seq) || !s.left().is(K::Tens) || !s.right().is(K::Tens))
            return fail();
        return S::tens(S::seq(s.left().left(), s.right().left()), S::seq(s.left().right(), s.right().right()));
    case RuleId::CoLeft:
        return S::with(s, needBinding());
    case RuleId::CoRight:
        return S::with(needBinding(), s);
    case RuleId::CoExternal:
        if (!s.is(K::Plus) || !s.left().is(K::Tens) || !s.right().is(K::Tens) ||
            s.left().right() != s.right().right())
            return fail();
        return S::tens(S::plus(s.left().left(), s.right().left()), s.left().right());
    case RuleId::CoMedial:
        if (!s.is(K::Seq) || !s.left().is(K::Plus) || !s.right().is(K::Plus))
            return fail();
        return S::plus(S::seq(s.left().left(), s.right().left()), S::seq(s.left().right(), s.right().right()));
    }
    return fail();
}

/// All results of one literal application of r at path p. With a binary
/// syntax tree every instance is unique, so the list has at most one entry.
inline std::vector<Structure> applyRule(const Structure& p, RuleId r, const Path& path,
                                        const std::optional<Structure>& binding = {}) {
    const Structure& sub = subtermAt(p, path);
    return {replaceAt(p, path, rewriteRoot(r, sub, binding))};
}

// ---------------------------------------------------------------------------
// Derivations

struct Step {
    enum class Kind : std::uint8_t { Equiv, Infer };
    Kind kind = Kind::Equiv;
    RuleId rule = RuleId::Interact;
    Path path;
    Structure target;

    static Step equiv(Structure target) { return Step{Kind::Equiv, RuleId::Interact, {}, std::move(target)}; }
    static Step infer(RuleId r, Path p, Structure target) {
        return Step{Kind::Infer, r, std::move(p), std::move(target)};
    }
    bool isInfer() const { return kind == Kind::Infer; }
};

struct Derivation {
    Structure goal;
    std::vector<Step> steps;

    const Structure& last() const { return steps.empty() ? goal : steps.back().target; }
    bool isProof() const { return equivalent(last(), Structure::unit()); }
};

enum class Fragment : std::uint8_t { Symmetric, Normal };

struct Report {
    bool accepted = true;
    std::size_t equivSteps = 0;
    std::size_t inferSteps = 0;
    /// Index of the offending step on rejection.
    std::optional<std::size_t> failedStep;
    std::string reason;

    explicit operator bool() const { return accepted; }
};

/// Checks a single step from `prev`. Returns an empty string on success.
inline std::string checkStep(const Structure& prev, const Step& s, Fragment fragment) {
    if (!s.isInfer())
        return equivalent(prev, s.target) ? std::string() : std::string("equiv step: structures are not equivalent");
    if (fragment == Fragment::Normal && !isNormalRule(s.rule))
        return "rule " + std::string(ruleName(s.rule)) + " is not in the normal fragment";
    if (!validPath(prev, s.path) || !validPath(s.target, s.path))
        return "invalid path";
    const Structure& from = subtermAt(prev, s.path);
    const Structure& to = subtermAt(s.target, s.path);
    if (replaceAt(prev, s.path, to) != s.target)
        return "target differs from the source outside the rewritten position";
    if (!matchesRule(s.rule, from, to))
        return "subterm does not match rule " + std::string(ruleName(s.rule));
    return {};
}

inline Report checkDerivation(const Derivation& d, Fragment fragment) {
    Report rep;
    const Structure* prev = &d.goal;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const Step& s = d.steps[i];
        std::string why = checkStep(*prev, s, fragment);
        if (!why.empty()) {
            rep.accepted = false;
            rep.failedStep = i;
            rep.reason = std::move(why);
            return rep;
        }
        ++(s.isInfer() ? rep.inferSteps : rep.equivSteps);
        prev = &s.target;
    }
    return rep;
}

/// Accepts a derivation that is also a proof (ends in something ≃ 1).
inline Report checkProof(const Derivation& d, Fragment fragment) {
    Report rep = checkDerivation(d, fragment);
    if (rep && !d.isProof()) {
        rep.accepted = false;
        rep.failedStep = d.steps.empty() ? 0 : d.steps.size() - 1;
        rep.reason = "derivation does not end in the unit";
    }
    return rep;
}

inline Derivation refl(Structure p) { return Derivation{std::move(p), {}}; }

/// A derivation consisting of at most one Equiv step.
inline Derivation equivDerivation(const Structure& from, const Structure& to) {
    Derivation d = refl(from);
    if (from == to)
        return d;
    if (!equivalent(from, to))
        throw EndpointMismatch("structures are not equivalent");
    d.steps.push_back(Step::equiv(to));
    return d;
}

inline Derivation singleStep(const Structure& from, RuleId r, const Path& path,
                             const std::optional<Structure>& binding = {}) {
    Derivation d = refl(from);
    d.steps.push_back(Step::infer(r, path, applyRule(from, r, path, binding).front()));
    return d;
}

/// Appends e to d; if d's endpoint and e's goal differ but are equivalent,
/// an Equiv step bridges them.
inline void appendTo(Derivation& d, const Derivation& e) {
    if (d.last() != e.goal) {
        if (!equivalent(d.last(), e.goal))
            throw EndpointMismatch("concat: endpoints are not equivalent");
        d.steps.push_back(Step::equiv(e.goal));
    }
    d.steps.insert(d.steps.end(), e.steps.begin(), e.steps.end());
}

inline Derivation concat(Derivation d1, const Derivation& d2) {
    appendTo(d1, d2);
    return d1;
}

/// Replays d inside the hole of `outer` at path p.
inline Derivation liftInContext(const Path& p, const Structure& outer, const Derivation& d) {
    if (subtermAt(outer, p) != d.goal)
        throw GoalMismatch("liftInContext: hole does not contain the derivation's goal");
    if (p.empty())
        return d;
    Derivation out = refl(outer);
    out.steps.reserve(d.steps.size());
    for (const Step& s : d.steps) {
        Step t = s;
        t.target = replaceAt(outer, p, s.target);
        if (t.isInfer())
            t.path = joinPaths(p, s.path);
        out.steps.push_back(std::move(t));
    }
    return out;
}

/// From l ⟶* l' and r ⟶* r' builds op(l, r) ⟶* op(l', r').
inline Derivation congruence(Kind op, const Derivation& l, const Derivation& r) {
    Structure start = Structure::make(op, l.goal, r.goal);
    Derivation out = liftInContext({Dir::L}, start, l);
    Structure mid = Structure::make(op, l.last(), r.goal);
    appendTo(out, liftInContext({Dir::R}, mid, r));
    return out;
}

/// Merges runs of adjacent Equiv steps and drops Equiv steps that do not
/// change the structure.
inline Derivation mergeEquivSteps(const Derivation& d) {
    Derivation out = refl(d.goal);
    for (const Step& s : d.steps) {
        if (!s.isInfer()) {
            if (s.target == out.last())
                continue;
            if (!out.steps.empty() && !out.steps.back().isInfer()) {
                out.steps.back().target = s.target;
                if (out.steps.size() >= 2 ? out.steps[out.steps.size() - 2].target == s.target : d.goal == s.target)
                    out.steps.pop_back();
                continue;
            }
        }
        out.steps.push_back(s);
    }
    return out;
}

struct Census {
    std::size_t equivSteps = 0;
    std::size_t inferSteps = 0;
    std::map<RuleId, std::size_t> rules;

    bool usesCoRules() const {
        for (const auto& [r, n] : rules)
            if (isCoRule(r) && n > 0)
                return true;
        return false;
    }
};

inline Census census(const Derivation& d) {
    Census c;
    for (const Step& s : d.steps) {
        if (s.isInfer()) {
            ++c.inferSteps;
            ++c.rules[s.rule];
        } else {
            ++c.equivSteps;
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Frame-law witnesses of the normal-proof frame, where the frame's + is With
// and its unit is 1.

enum class FrameLaw : std::uint8_t { Sequence, External, Medial, Tidy };

/// (w◁x)⅋(y◁z) ⟶ (w⅋y)◁(x⅋z)
inline Derivation sequenceLaw(const Structure& w, const Structure& x, const Structure& y, const Structure& z) {
    return singleStep(Structure::parr(Structure::seq(w, x), Structure::seq(y, z)), RuleId::Sequence, {});
}

/// (x&y)⅋z ⟶ (x⅋z)&(y⅋z)
inline Derivation externalLaw(const Structure& x, const Structure& y, const Structure& z) {
    return singleStep(Structure::parr(Structure::with(x, y), z), RuleId::External, {});
}

/// (w◁x)&(y◁z) ⟶ (w&y)◁(x&z)
inline Derivation medialLaw(const Structure& w, const Structure& x, const Structure& y, const Structure& z) {
    return singleStep(Structure::with(Structure::seq(w, x), Structure::seq(y, z)), RuleId::Medial, {});
}

/// 1&1 ⟶ 1
inline Derivation tidyLaw() {
    return singleStep(Structure::with(Structure::unit(), Structure::unit()), RuleId::Tidy, {});
}

/// Uniform entry point; unused instance arguments are ignored (Tidy takes none,
/// External takes three).
inline Derivation frameLaw(FrameLaw law, const std::vector<Structure>& args = {}) {
    auto arg = [&](std::size_t i) { return i < args.size() ? args[i] : Structure::unit(); };
    switch (law) {
    case FrameLaw::Sequence:
        return sequenceLaw(arg(0), arg(1), arg(2), arg(3));
    case FrameLaw::External:
        return externalLaw(arg(0), arg(1), arg(2));
    case FrameLaw::Medial:
        return medialLaw(arg(0), arg(1), arg(2), arg(3));
    case FrameLaw::Tidy:
        return tidyLaw();
    }
    return tidyLaw();
}

} // namespace mav
