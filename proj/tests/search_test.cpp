#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mav/search.hpp"
#include "mav/text.hpp"
#include "mutations.hpp"
#include "support.hpp"

using namespace mav;
using mav::fixtures::S;

namespace {

SearchBudget capped(const Structure& p, std::size_t extra) {
    SearchBudget b;
    b.maxStructureSize = p.size() + extra;
    return b;
}

/// All literal structures with exactly `size` nodes.
std::vector<Structure> allTrees(std::size_t size, const std::vector<std::string>& atoms) {
    std::vector<Structure> out;
    if (size == 1) {
        out.push_back(Structure::unit());
        for (const auto& a : atoms) {
            out.push_back(Structure::pos(a));
            out.push_back(Structure::neg(a));
        }
        return out;
    }
    for (std::size_t l = 1; l + 2 <= size; l += 2)
        for (const auto& x : allTrees(l, atoms))
            for (const auto& y : allTrees(size - 1 - l, atoms))
                for (int k = static_cast<int>(Kind::Seq); k <= static_cast<int>(Kind::Plus); ++k)
                    out.push_back(Structure::make(static_cast<Kind>(k), x, y));
    return out;
}

std::size_t countCoRules(const Derivation& d) {
    std::size_t n = 0;
    for (const Step& s : d.steps)
        n += s.isInfer() && isCoRule(s.rule);
    return n;
}

} // namespace

TEST(Prove, NormalExamples) {
    for (const char* src : {"a | ~a", "(a | ~a) ; (b | ~b)", "1 & 1", "(a * b) | (~a | ~b)", "a | (~a & ~a)"}) {
        Structure p = S(src);
        SearchOutcome o = prove(p, Fragment::Normal);
        ASSERT_EQ(o.status, SearchStatus::Proved) << src;
        EXPECT_EQ(o.proof->goal, p);
        EXPECT_TRUE(checkProof(*o.proof, Fragment::Normal).accepted) << src;
    }
}

TEST(Prove, RefutedWithinCap) {
    for (const char* src : {"a", "a * ~a", "a | a", "a ; ~b"}) {
        Structure p = S(src);
        EXPECT_EQ(prove(p, Fragment::Normal, capped(p, 2)).status, SearchStatus::RefutedWithinCap) << src;
    }
}

TEST(Prove, SymmetricNeverRefutes) {
    Structure p = S("a * ~a");
    SearchBudget b = capped(p, 2);
    b.maxVisited = 2000;
    EXPECT_EQ(prove(p, Fragment::Symmetric, b).status, SearchStatus::Unknown);
}

TEST(Prove, SymmetricExamples) {
    for (const char* src : {"a | ~a", "((1+1);(1&1)) | ((1&1);(1+1))", "(a;b) | (~a;~b)"}) {
        Structure p = S(src);
        SearchBudget b = capped(p, 2);
        b.maxVisited = 5000;
        SearchOutcome o = prove(p, Fragment::Symmetric, b);
        ASSERT_EQ(o.status, SearchStatus::Proved) << src;
        EXPECT_TRUE(checkProof(*o.proof, Fragment::Symmetric).accepted);
    }
}

TEST(Prove, BudgetExhaustionIsUnknown) {
    Structure p = S("(a * b) | (~a | ~b)");
    SearchBudget b;
    b.maxVisited = 2;
    EXPECT_EQ(prove(p, Fragment::Normal, b).status, SearchStatus::Unknown);
    b = SearchBudget{};
    b.maxInferSteps = 1;
    EXPECT_EQ(prove(p, Fragment::Normal, b).status, SearchStatus::Unknown);
}

TEST(Prove, Deterministic) {
    Structure p = S("((a | ~a) ; (b | ~b)) & (c | ~c)");
    SearchOutcome x = prove(p, Fragment::Normal), y = prove(p, Fragment::Normal);
    ASSERT_EQ(x.status, SearchStatus::Proved);
    EXPECT_EQ(text::writeProof(*x.proof), text::writeProof(*y.proof));
    EXPECT_EQ(x.visited, y.visited);
}

TEST(Prove, LargerBudgetKeepsRefutation) {
    for (const char* src : {"a * ~a", "a | a", "(a | b) ; ~a"}) {
        Structure p = S(src);
        SearchBudget small = capped(p, 2), large = capped(p, 2);
        large.maxVisited *= 10;
        large.maxInferSteps *= 2;
        EXPECT_EQ(prove(p, Fragment::Normal, small).status, SearchStatus::RefutedWithinCap);
        EXPECT_EQ(prove(p, Fragment::Normal, large).status, SearchStatus::RefutedWithinCap);
    }
}

TEST(Enumerate, Trivial) {
    std::vector<Structure> got = enumerate({"a"}, 1);
    std::set<std::string> keys;
    for (const auto& s : got)
        keys.insert(canonKey(s));
    EXPECT_EQ(got.size(), 3u);
    EXPECT_EQ(keys, (std::set<std::string>{canonKey(S("1")), canonKey(S("a")), canonKey(S("~a"))}));
}

TEST(Enumerate, MatchesBruteForce) {
    for (std::size_t maxSize : {3u, 5u}) {
        std::set<std::string> brute;
        for (std::size_t s = 1; s <= maxSize; s += 2)
            for (const auto& t : allTrees(s, {"a"}))
                brute.insert(canonKey(t));
        std::vector<Structure> got = enumerate({"a"}, maxSize);
        std::set<std::string> keys;
        for (const auto& s : got)
            keys.insert(canonKey(s));
        EXPECT_EQ(keys.size(), got.size()) << "duplicates at size " << maxSize;
        EXPECT_EQ(keys, brute) << "size " << maxSize;
    }
}

TEST(Enumerate, CanonicalAndBounded) {
    for (const auto& s : enumerate({"a", "b"}, 7)) {
        EXPECT_EQ(s, canonicalStructure(s));
        EXPECT_LE(s.size(), 7u);
    }
}

TEST(RandomProvable, ZeroSteps) {
    auto [p, d] = randomProvable(5, 0);
    EXPECT_EQ(p, Structure::unit());
    EXPECT_TRUE(d.steps.empty());
}

TEST(RandomProvable, CheckerValid) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto [p, d] = randomProvable(seed, 1 + seed % 8);
        EXPECT_EQ(d.goal, p);
        Report r = checkProof(d, Fragment::Symmetric);
        ASSERT_TRUE(r.accepted) << "seed " << seed << ": " << r.reason << "\n" << text::writeProof(d);
    }
}

TEST(RandomProvable, UsesCoRules) {
    std::size_t withCo = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        withCo += countCoRules(randomProvable(seed, 6).second) > 0;
    EXPECT_GT(withCo, 0u);
}

TEST(RandomProvable, Deterministic) {
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        EXPECT_EQ(text::writeProof(randomProvable(seed, 6).second), text::writeProof(randomProvable(seed, 6).second));
}

// ---------------------------------------------------------------------------
// Checker mutation suite over a corpus of random proofs.

TEST(Checker, MutationCorpusIsRejected) {
    std::mt19937 rng(77);
    std::size_t mutants = 0;
    for (const Derivation& d : fixtures::mutationCorpus()) {
        ASSERT_TRUE(checkProof(d, Fragment::Symmetric).accepted);
        for (const auto& m : fixtures::mutantsOf(d, rng)) {
            ++mutants;
            Report r = checkDerivation(m.proof, Fragment::Symmetric);
            EXPECT_FALSE(r.accepted) << m.what << " at step " << m.step << "\n" << text::writeProof(m.proof);
            if (!r.accepted) {
                EXPECT_EQ(r.failedStep, m.step) << m.what;
            }
        }
    }
    EXPECT_GT(mutants, 300u);
}
