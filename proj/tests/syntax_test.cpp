#include <gtest/gtest.h>

#include <random>

#include "mav/canon.hpp"
#include "mav/rearrange.hpp"
#include "support.hpp"

using namespace mav;
using mav::fixtures::S;

namespace {

const Structure a = Structure::pos("a");
const Structure b = Structure::pos("b");
const Structure c = Structure::pos("c");
const Structure na = Structure::neg("a");
const Structure one = Structure::unit();

} // namespace

TEST(Dual, Examples) {
    EXPECT_EQ(dual(na), a);
    EXPECT_EQ(dual(one), one);
    EXPECT_EQ(dual(Structure::tens(a, Structure::seq(b, c))),
              Structure::parr(na, Structure::seq(Structure::neg("b"), Structure::neg("c"))));
    EXPECT_EQ(dual(Structure::with(a, b)), Structure::plus(na, Structure::neg("b")));
}

TEST(Dual, Involution) {
    std::mt19937 rng(1);
    for (int i = 0; i < 1000; ++i) {
        Structure p = fixtures::randomStructureUpTo(rng, 15);
        ASSERT_EQ(dual(dual(p)), p);
    }
}

TEST(Structure, AtomNamesAreValidated) {
    EXPECT_THROW(Structure::pos(""), std::invalid_argument);
    EXPECT_THROW(Structure::pos("A"), std::invalid_argument);
    EXPECT_THROW(Structure::neg("1x"), std::invalid_argument);
    EXPECT_NO_THROW(Structure::pos("x_1"));
}

TEST(Size, Examples) {
    EXPECT_EQ(size(one), 1u);
    EXPECT_EQ(size(Structure::parr(a, na)), 3u);
    EXPECT_EQ(size(Structure::seq(Structure::plus(a, b), c)), 5u);
}

TEST(Paths, SubtermAt) {
    EXPECT_EQ(subtermAt(Structure::tens(a, b), {Dir::L}), a);
    EXPECT_EQ(subtermAt(a, {}), a);
    EXPECT_THROW(subtermAt(a, {Dir::L}), InvalidPath);
}

TEST(Paths, ReplaceAt) {
    EXPECT_EQ(replaceAt(Structure::tens(a, b), {Dir::R}, one), Structure::tens(a, one));
    EXPECT_EQ(replaceAt(Structure::tens(a, b), {}, c), c);
    EXPECT_THROW(replaceAt(a, {Dir::L, Dir::R}, b), InvalidPath);
}

TEST(Paths, ReplaceWithOwnSubtermIsIdentity) {
    std::mt19937 rng(2);
    for (int i = 0; i < 500; ++i) {
        Structure p = fixtures::randomStructureUpTo(rng, 15);
        Path path = fixtures::randomPath(rng, p);
        ASSERT_EQ(replaceAt(p, path, subtermAt(p, path)), p);
    }
}

TEST(Canon, Examples) {
    EXPECT_EQ(canon(Structure::parr(a, one)), canon(a));
    EXPECT_EQ(canon(Structure::parr(b, a)), canon(Structure::parr(a, b)));
    EXPECT_EQ(canon(Structure::seq(Structure::seq(a, b), c)), canon(Structure::seq(a, Structure::seq(b, c))));
    EXPECT_EQ(canon(Structure::parr(one, one)), canon(one));
    EXPECT_TRUE(equivalent(Structure::tens(a, one), a));
    EXPECT_FALSE(equivalent(Structure::plus(a, b), Structure::plus(b, a)));
    EXPECT_TRUE(equivalent(Structure::seq(one, a), Structure::seq(a, one)));
    EXPECT_FALSE(equivalent(Structure::seq(a, b), Structure::seq(b, a)));
    EXPECT_FALSE(equivalent(Structure::with(a, one), a));
}

TEST(Canon, ShapeInvariants) {
    std::mt19937 rng(3);
    auto check = [](auto&& self, const CanonicalForm& f) -> void {
        if (isMonoidKind(f.kind)) {
            ASSERT_GE(f.children.size(), 2u);
            for (const auto& g : f.children) {
                ASSERT_NE(g.kind, Kind::Unit);
                ASSERT_NE(g.kind, f.kind);
            }
            if (isCommutativeKind(f.kind)) {
                ASSERT_TRUE(std::is_sorted(f.children.begin(), f.children.end()));
            }
        } else if (isBinary(f.kind)) {
            ASSERT_EQ(f.children.size(), 2u);
        }
        for (const auto& g : f.children)
            self(self, g);
    };
    for (int i = 0; i < 1000; ++i)
        check(check, canon(fixtures::randomStructureUpTo(rng, 17)));
}

TEST(Canon, Idempotence) {
    std::mt19937 rng(4);
    for (int i = 0; i < 1000; ++i) {
        Structure p = fixtures::randomStructureUpTo(rng, 17);
        ASSERT_EQ(canon(canonicalStructure(p)), canon(p));
        ASSERT_EQ(canonicalStructure(canonicalStructure(p)), canonicalStructure(p));
    }
}

TEST(Canon, Congruence) {
    std::mt19937 rng(5);
    for (int i = 0; i < 1000; ++i) {
        Structure p = fixtures::randomStructureUpTo(rng, 9);
        Structure q = canonicalStructure(p);
        Structure r = fixtures::randomStructureUpTo(rng, 11);
        Path path = fixtures::randomPath(rng, r);
        ASSERT_TRUE(equivalent(replaceAt(r, path, p), replaceAt(r, path, q)));
    }
}

TEST(Canon, RandomShuffleInvariance) {
    std::mt19937 rng(6);
    for (int i = 0; i < 1000; ++i) {
        Structure p = fixtures::randomStructureUpTo(rng, 13);
        Structure q = p;
        for (int k = 0; k < 10; ++k)
            q = fixtures::randomAxiomStep(rng, q);
        ASSERT_EQ(canon(q), canon(p));
    }
}

TEST(Canon, EquivalenceRelation) {
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
        // Bias towards related triples so transitivity is exercised non-vacuously.
        Structure p = fixtures::randomStructureUpTo(rng, 9, {"a", "b"});
        Structure q = fixtures::randomAxiomStep(rng, fixtures::randomAxiomStep(rng, p));
        Structure r = i % 2 ? fixtures::randomAxiomStep(rng, q) : fixtures::randomStructureUpTo(rng, 9, {"a", "b"});
        ASSERT_TRUE(equivalent(p, p));
        ASSERT_EQ(equivalent(p, r), equivalent(r, p));
        if (equivalent(p, q) && equivalent(q, r)) {
            ASSERT_TRUE(equivalent(p, r));
        }
    }
}

TEST(Canon, KeyMatchesCanonicalForm) {
    std::mt19937 rng(8);
    for (int i = 0; i < 1000; ++i) {
        Structure p = fixtures::randomStructureUpTo(rng, 9, {"a", "b"});
        Structure q = fixtures::randomStructureUpTo(rng, 9, {"a", "b"});
        ASSERT_EQ(canonKey(p) == canonKey(q), equivalent(p, q));
    }
}

TEST(Rearrange, ReachesCanonicalStructure) {
    std::mt19937 rng(9);
    for (int i = 0; i < 1000; ++i) {
        Structure p = fixtures::randomStructureUpTo(rng, 17);
        Structure q = p;
        for (const AxiomStep& st : rearrangeToCanonical(p))
            q = applyAxiom(q, st);
        ASSERT_EQ(q, canonicalStructure(p));
    }
}

TEST(Rearrange, ExplainsEquivalence) {
    std::mt19937 rng(10);
    for (int i = 0; i < 500; ++i) {
        Structure p = fixtures::randomStructureUpTo(rng, 13);
        Structure q = p;
        for (int k = 0; k < 8; ++k)
            q = fixtures::randomAxiomStep(rng, q);
        Structure cur = p;
        for (const AxiomStep& st : explainEquivalence(p, q))
            cur = applyAxiom(cur, st);
        ASSERT_EQ(cur, q);
    }
    EXPECT_THROW(explainEquivalence(a, b), EndpointMismatch);
}
