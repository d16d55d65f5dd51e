#include <gtest/gtest.h>

#include <random>

#include "law_cases.hpp"
#include "mav/chu.hpp"
#include "mav/nbe.hpp"

using namespace mav;
using namespace mav::fixtures;

namespace {

using C = Chu<NMav>;
using I = Ideals<NMav>;
using D = IdealDesc<NMav>;

void expectSound(Normalizer& n, const LawCase& c, std::mt19937& rng, int samples) {
    auto o = n.lawFor(c.from, c.step);
    auto why = checkOrder(n, c.from, c.step.target, o, rng, samples);
    EXPECT_FALSE(why) << c.name << " on " << text::render(c.from) << ": " << *why;
}

} // namespace

TEST(Chu, UnitAndAtoms) {
    AuditScope audit;
    Normalizer n;
    auto one = n.interpret(S("1"));
    EXPECT_TRUE(one.pos().isUnitK());
    EXPECT_TRUE(one.neg().isUnitK());
    Member<NMav> k = one.pairUp(C::pairAt(I::unitMember(), I::unitMember()));
    EXPECT_EQ(k.at(), S("1 | 1"));

    auto a = n.interpret(S("a"));
    EXPECT_EQ(a.pos(), D::eta(S("~a")));
    EXPECT_TRUE(n.interpret(S("~a")).sameIdeals(C::neg(a)));
    EXPECT_TRUE(C::neg(C::neg(a)).sameIdeals(a));
}

TEST(Chu, ConnectivesAreDualCoherent) {
    Normalizer n;
    for (const char* src : {"a * b", "a | ~b", "a ; b", "a & (b + 1)", "(a * ~a) ; (b & 1)"})
        EXPECT_TRUE(n.dualCoherent(S(src))) << src;
}

TEST(Chu, CompatibilityOnReflectedMembers) {
    AuditScope audit;
    Normalizer n;
    std::mt19937 rng(31);
    for (int i = 0; i < 40; ++i) {
        Structure p = randomStructureUpTo(rng, 5, {"a", "b"});
        auto e = n.interpret(p);
        Member<NMav> pos = n.reflect(dual(p))(etaSample(dual(p), rng));
        Member<NMav> neg = n.reflect(p)(etaSample(p, rng));
        Member<NMav> k = e.pairUp(C::pairAt(pos, neg));
        Derivation w = I::kCollapse(k);
        EXPECT_EQ(w.goal, k.at());
        EXPECT_TRUE(checkProof(w, Fragment::Normal).accepted) << text::render(p);
    }
}

TEST(Chu, RuleLawsAtRoot) {
    AuditScope audit;
    std::mt19937 rng(32);
    for (RuleId r : kAllRules) {
        Normalizer n;
        for (int i = 0; i < 4; ++i)
            expectSound(n, ruleCase(r, Kind::Unit, Dir::L, rng), rng, 5);
    }
}

TEST(Chu, RuleLawsInContext) {
    AuditScope audit;
    std::mt19937 rng(33);
    for (RuleId r : kAllRules) {
        Normalizer n;
        for (Kind k : kConnectives)
            for (Dir side : {Dir::L, Dir::R})
                expectSound(n, ruleCase(r, k, side, rng), rng, 2);
    }
}

TEST(Chu, AxiomLawsBothDirections) {
    AuditScope audit;
    std::mt19937 rng(34);
    Normalizer n;
    for (Axiom ax : kAllAxioms) {
        for (bool forward : {true, false}) {
            for (int i = 0; i < 4; ++i) {
                Structure s = axiomRedex(ax, forward, rng);
                Structure t = rewriteAxiomRoot(ax, forward, s);
                auto o = n.axiomAtRoot(ax, forward, s);
                auto why = checkOrder(n, s, t, o, rng, 5);
                EXPECT_FALSE(why) << axiomName(ax) << (forward ? " forward " : " backward ") << text::render(s)
                                  << ": " << *why;
            }
        }
    }
}

TEST(Chu, EquivalenceChains) {
    AuditScope audit;
    std::mt19937 rng(35);
    Normalizer n;
    for (int i = 0; i < 20; ++i) {
        Structure p = randomStructureUpTo(rng, 7, {"a", "b"});
        Structure q = canonicalStructure(p);
        auto why = checkOrder(n, p, q, n.equivalence(p, q), rng, 3);
        EXPECT_FALSE(why) << text::render(p) << ": " << *why;
    }
}

TEST(Chu, ComposeAndIdentity) {
    AuditScope audit;
    std::mt19937 rng(36);
    Normalizer n;
    Structure s = S("(~a | a) & (~a | a)");
    Structure mid = S("(~a | a) & 1");
    Structure t = S("1 & 1");
    auto f = n.lawFor(s, Step::infer(RuleId::AtomInteract, {Dir::R}, mid));
    auto g = n.lawFor(mid, Step::infer(RuleId::AtomInteract, {Dir::L}, t));
    auto both = C::compose(g, f);
    EXPECT_FALSE(checkOrder(n, s, t, both, rng, 5));
    EXPECT_FALSE(checkOrder(n, s, s, C::identity(n.interpret(s)), rng, 5));
}

TEST(Chu, AuditRejectsMistypedOrder) {
    AuditScope audit;
    Normalizer n;
    auto a = n.interpret(S("a")), b = n.interpret(S("b"));
    auto bogus = C::make(a, b, I::identity(), I::identity(), "bogus");
    Member<NMav> m = n.reflect(S("~a"))(I::etaRefl(S("~a")));
    const std::size_t failuresBefore = auditFailureCount();
    EXPECT_THROW(bogus.forward(m), AuditFailure);
    EXPECT_EQ(auditFailureCount(), failuresBefore + 1);
    const std::size_t before = auditCount();
    {
        AuditScope off(false);
        EXPECT_NO_THROW(bogus.forward(m));
    }
    EXPECT_EQ(auditCount(), before);
}
