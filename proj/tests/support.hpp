// Shared helpers for the test suites.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "mav/rearrange.hpp"
#include "mav/syntax.hpp"
#include "mav/text.hpp"

namespace mav::fixtures {

inline Structure S(std::string_view src) { return text::parseStructure(src); }

/// Uniform-ish random structure with exactly `size` nodes (size must be odd).
inline Structure randomStructure(std::mt19937& rng, std::size_t size, const std::vector<std::string>& atoms = {"a", "b", "c"}) {
    if (size <= 1) {
        std::uniform_int_distribution<std::size_t> leaf(0, 2 * atoms.size());
        std::size_t i = leaf(rng);
        if (i == 2 * atoms.size())
            return Structure::unit();
        return i % 2 == 0 ? Structure::pos(atoms[i / 2]) : Structure::neg(atoms[i / 2]);
    }
    std::size_t inner = size - 1;
    std::uniform_int_distribution<std::size_t> split(0, inner / 2 - 1);
    std::size_t left = 2 * split(rng) + 1;
    std::uniform_int_distribution<int> kind(static_cast<int>(Kind::Seq), static_cast<int>(Kind::Plus));
    Kind k = static_cast<Kind>(kind(rng));
    return Structure::make(k, randomStructure(rng, left, atoms), randomStructure(rng, inner - left, atoms));
}

inline Structure randomStructureUpTo(std::mt19937& rng, std::size_t maxSize,
                                     const std::vector<std::string>& atoms = {"a", "b", "c"}) {
    std::uniform_int_distribution<std::size_t> sz(0, (maxSize - 1) / 2);
    return randomStructure(rng, 2 * sz(rng) + 1, atoms);
}

/// A random valid path into s.
inline Path randomPath(std::mt19937& rng, const Structure& s) {
    Path p;
    const Structure* cur = &s;
    std::bernoulli_distribution stop(0.3);
    std::bernoulli_distribution dir(0.5);
    while (isBinary(cur->kind()) && !stop(rng)) {
        Dir d = dir(rng) ? Dir::L : Dir::R;
        p.push_back(d);
        cur = d == Dir::L ? &cur->left() : &cur->right();
    }
    return p;
}

/// One random axiom application somewhere in s, or s if none was found.
inline Structure randomAxiomStep(std::mt19937& rng, const Structure& s) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        Path path = randomPath(rng, s);
        std::uniform_int_distribution<std::size_t> pick(0, kAllAxioms.size() - 1);
        Axiom ax = kAllAxioms[pick(rng)];
        bool forward = std::bernoulli_distribution(0.5)(rng);
        try {
            return applyAxiom(s, {ax, forward, path});
        } catch (const NoMatch&) {
        }
    }
    return s;
}

} // namespace mav::fixtures
