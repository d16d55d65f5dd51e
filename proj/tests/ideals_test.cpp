#include <gtest/gtest.h>

#include <random>

#include "mav/ideals.hpp"
#include "support.hpp"

using namespace mav;
using mav::fixtures::S;

namespace {

using I = Ideals<NMav>;
using D = IdealDesc<NMav>;
using M = Member<NMav>;

const Structure one = Structure::unit();

void expectValid(const D& d, const M& m) {
    Report r = I::validateMember(d, m.at(), m);
    EXPECT_TRUE(r.accepted) << d.show() << " at " << text::render(m.at()) << ": " << r.reason;
}

// Random descriptors over Eta generators, without Residual or Meet at the
// top so that random members can be built directly.
D randomDesc(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 3 : 0);
    switch (pick(rng)) {
    case 1:
        return D::dayPar(randomDesc(rng, depth - 1), randomDesc(rng, depth - 1));
    case 2:
        return D::daySeq(randomDesc(rng, depth - 1), randomDesc(rng, depth - 1));
    case 3:
        return D::join(randomDesc(rng, depth - 1), randomDesc(rng, depth - 1));
    default:
        return std::bernoulli_distribution(0.2)(rng) ? D::unitK()
                                                     : D::eta(fixtures::randomStructureUpTo(rng, 5, {"a", "b"}));
    }
}

// A random member of d, with random +-combinations and down-closures along
// equivalences.
M randomMember(std::mt19937& rng, const D& d) {
    M m = [&]() -> M {
        switch (d.kind()) {
        case DescKind::DayPar: {
            M l = randomMember(rng, d.left()), r = randomMember(rng, d.right());
            return I::introDayPar(l, r, NMav::refl(NMav::par(l.at(), r.at())));
        }
        case DescKind::DaySeq: {
            M l = randomMember(rng, d.left()), r = randomMember(rng, d.right());
            return I::introDaySeq(l, r, NMav::refl(NMav::seq(l.at(), r.at())));
        }
        case DescKind::Join:
            return std::bernoulli_distribution(0.5)(rng) ? I::joinInject(Side::Left, randomMember(rng, d.left()))
                                                         : I::joinInject(Side::Right, randomMember(rng, d.right()));
        default:
            return I::etaRefl(d.generator());
        }
    }();
    if (std::bernoulli_distribution(0.3)(rng))
        m = I::plusCombine(m, randomMember(rng, d));
    if (std::bernoulli_distribution(0.3)(rng))
        m = I::downClose(m, NMav::parUnit(m.at()));
    return m;
}

} // namespace

TEST(Ideals, EtaMembership) {
    Structure x = S("a | b");
    M m = I::memberEta(x, equivDerivation(S("b | a"), x));
    EXPECT_EQ(m.at(), S("b | a"));
    expectValid(D::eta(x), m);
    EXPECT_THROW(I::memberEta(S("a"), refl(S("b"))), EndpointMismatch);
}

TEST(Ideals, UnitAndCollapse) {
    M k = I::unitMember();
    expectValid(D::unitK(), k);
    M two = I::plusCombine(k, k);
    EXPECT_EQ(two.at(), S("1 & 1"));
    Derivation w = I::kCollapse(two);
    EXPECT_EQ(w.goal, S("1 & 1"));
    EXPECT_EQ(w.last(), one);
    EXPECT_TRUE(checkDerivation(w, Fragment::Normal).accepted);
}

TEST(Ideals, DescriptorEquality) {
    EXPECT_EQ(D::eta(S("a | b")), D::eta(S("b | a")));
    EXPECT_EQ(D::dayPar(D::unitK(), D::eta(S("a"))), D::dayPar(D::eta(S("1 | 1")), D::eta(S("a"))));
    EXPECT_FALSE(D::dayPar(D::unitK(), D::eta(S("a"))) == D::daySeq(D::unitK(), D::eta(S("a"))));
    EXPECT_EQ(D::join(D::eta(S("a")), D::unitK()).show(), "Join(Eta(a), K)");
}

TEST(Ideals, RandomMembersValidate) {
    std::mt19937 rng(21);
    for (int i = 0; i < 300; ++i) {
        D d = randomDesc(rng, 2);
        M m = randomMember(rng, d);
        Report r = I::validateMember(d, m.at(), m);
        ASSERT_TRUE(r.accepted) << d.show() << ": " << r.reason;
    }
}

TEST(Ideals, LawsPreserveValidity) {
    std::mt19937 rng(22);
    for (IdealLaw law : kAllIdealLaws) {
        for (int i = 0; i < 50; ++i) {
            D f = randomDesc(rng, 1), g = randomDesc(rng, 1), h = randomDesc(rng, 1);
            auto inst = idealLaw<NMav>(law, f, g, h);
            M src = randomMember(rng, inst.from);
            M out = inst.apply(src);
            EXPECT_EQ(out.at(), src.at());
            Report r = I::validateMember(inst.to, out.at(), out);
            ASSERT_TRUE(r.accepted) << static_cast<int>(law) << " " << inst.from.show() << ": " << r.reason;
        }
    }
}

TEST(Ideals, DownClosureComposes) {
    std::mt19937 rng(23);
    for (int i = 0; i < 100; ++i) {
        D d = randomDesc(rng, 2);
        M m = randomMember(rng, d);
        Derivation d1 = NMav::parUnit(m.at());
        Derivation d2 = NMav::seqUnitL(d1.goal);
        M stepwise = I::downClose(I::downClose(m, d1), d2);
        M direct = I::downClose(m, NMav::trans(d2, d1));
        ASSERT_TRUE(I::sameEvidence(d, stepwise, direct)) << d.show();
        expectValid(d, stepwise);
    }
}

TEST(Ideals, ResidualBeta) {
    std::mt19937 rng(24);
    for (int i = 0; i < 100; ++i) {
        D f = randomDesc(rng, 1), g = randomDesc(rng, 1);
        // t: F ⊗̂ G ⊆ G ⊗̂ F
        auto t = I::dayParComm();
        M mf = randomMember(rng, f), mg = randomMember(rng, g);
        M viaCurry = I::eval()(I::introDayPar(I::curry(t)(mf), mg, NMav::refl(NMav::par(mf.at(), mg.at()))));
        M direct = t(I::introDayPar(mf, mg, NMav::refl(NMav::par(mf.at(), mg.at()))));
        ASSERT_TRUE(I::sameEvidence(D::dayPar(g, f), viaCurry, direct));
        expectValid(D::dayPar(g, f), viaCurry);
    }
}

TEST(Ideals, ResidualUnitIsIdentityOnSamples) {
    std::mt19937 rng(25);
    for (int i = 0; i < 50; ++i) {
        D f = randomDesc(rng, 2);
        M r = I::residualUnit()(I::unitMember());
        expectValid(D::residual(f, f), r);
    }
}

TEST(Ideals, DuoidalMaps) {
    std::mt19937 rng(26);
    for (int i = 0; i < 100; ++i) {
        D a = randomDesc(rng, 1), b = randomDesc(rng, 1), c = randomDesc(rng, 1), d = randomDesc(rng, 1);
        D from = D::dayPar(D::daySeq(a, b), D::daySeq(c, d));
        M m = randomMember(rng, from);
        M out = I::duoidalIdeal()(m);
        Report r = I::validateMember(D::daySeq(D::dayPar(a, c), D::dayPar(b, d)), m.at(), out);
        ASSERT_TRUE(r.accepted) << r.reason;

        D jfrom = D::join(D::daySeq(a, b), D::daySeq(c, d));
        M jm = randomMember(rng, jfrom);
        M jout = I::joinsDuoidal()(jm);
        r = I::validateMember(D::daySeq(D::join(a, c), D::join(b, d)), jm.at(), jout);
        ASSERT_TRUE(r.accepted) << r.reason;
    }
}

TEST(Ideals, EtaPreservesOperations) {
    std::mt19937 rng(27);
    for (int i = 0; i < 100; ++i) {
        Structure x = fixtures::randomStructureUpTo(rng, 5, {"a", "b"});
        Structure y = fixtures::randomStructureUpTo(rng, 5, {"a", "b"});
        D ex = D::eta(x), ey = D::eta(y);

        M p = randomMember(rng, D::eta(NMav::par(x, y)));
        M fwd = I::etaParForward(x, y)(p);
        expectValid(D::dayPar(ex, ey), fwd);
        M back = I::etaParBackward(x, y)(fwd);
        expectValid(D::eta(NMav::par(x, y)), back);

        M s = randomMember(rng, D::eta(NMav::seq(x, y)));
        expectValid(D::daySeq(ex, ey), I::etaSeqForward(x, y)(s));

        M w = randomMember(rng, D::eta(NMav::plus(x, y)));
        expectValid(D::join(ex, ey), I::etaPlusForward(x, y)(w));
    }
}

TEST(Ideals, RejectsNonNormalWitness) {
    // a ≃ a ⅋ 1 ⟶ a ⅋ (b ⊗ ~b) uses CoInteract, which is outside the normal fragment.
    Structure x = S("a | (b * ~b)");
    Derivation w = concat(equivDerivation(S("a"), S("a | 1")),
                          singleStep(S("a | 1"), RuleId::CoInteract, {Dir::R}, S("b")));
    ASSERT_EQ(w.last(), x);
    M m = I::memberEta(x, w);
    Report r = I::validateMember(D::eta(x), m.at(), m);
    EXPECT_FALSE(r.accepted);
}

TEST(Ideals, RejectsCorruptedEndpoints) {
    M m = I::etaRefl(S("a"));
    EXPECT_FALSE(I::validateMember(D::eta(S("b")), m.at(), m).accepted);
    EXPECT_FALSE(I::validateMember(D::eta(S("a")), S("b"), m).accepted);
    EXPECT_FALSE(I::validateMember(D::dayPar(D::eta(S("a")), D::unitK()), m.at(), m).accepted);
    M pair = I::introDayPar(m, I::unitMember(), NMav::refl(S("a | 1")));
    EXPECT_TRUE(I::validateMember(D::dayPar(D::eta(S("a")), D::unitK()), pair.at(), pair).accepted);
    EXPECT_FALSE(I::validateMember(D::dayPar(D::unitK(), D::eta(S("a"))), pair.at(), pair).accepted);
}

TEST(Ideals, ShapeErrors) {
    M m = I::etaRefl(S("a"));
    EXPECT_THROW(I::dayParComm()(m), ShapeError);
    EXPECT_THROW(I::kCollapse(I::etaRefl(S("a"))), EndpointMismatch);
    EXPECT_THROW(I::downClose(m, refl(S("b"))), EndpointMismatch);
}
