// Command-line front end: canon, equiv, check, normalize, prove.
//
// Exit codes: 0 success, 1 rejected / not equivalent, 2 refuted within the
// size cap, 3 search budget exhausted, 4 unparsable input.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "mav/calculus.hpp"
#include "mav/canon.hpp"
#include "mav/nbe.hpp"
#include "mav/search.hpp"
#include "mav/text.hpp"

namespace {

using namespace mav;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kRefuted = 2;
constexpr int kUnknown = 3;
constexpr int kParseError = 4;

struct InputError : Error {
    using Error::Error;
};

Derivation loadProof(const std::string& path) {
    if (path == "-")
        return text::readProof(std::cin);
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return text::readProof(in);
}

void printCensus(std::ostream& out, const Derivation& d) {
    Census c = census(d);
    out << "steps: " << d.steps.size() << " (" << c.equivSteps << " equiv, " << c.inferSteps << " infer)\n";
    for (const auto& [rule, n] : c.rules)
        out << "  " << ruleName(rule) << ": " << n << '\n';
}

void printRejection(const Report& r) {
    std::cerr << "rejected";
    if (r.failedStep)
        std::cerr << " at step " << *r.failedStep + 1;
    std::cerr << ": " << r.reason << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proofs and normal forms for a logic with sequential, multiplicative and additive connectives"};
    app.require_subcommand(1);

    std::string structure, other, proofPath, outPath = "-";
    bool normal = false;
    std::size_t maxSize = 0, maxSteps = 16, maxVisited = 20000;
    std::uint64_t seed = 0;

    auto* canonCmd = app.add_subcommand("canon", "Print the canonical representative of a structure");
    canonCmd->add_option("structure", structure)->required();

    auto* equivCmd = app.add_subcommand("equiv", "Exit 0 if two structures are equivalent, 1 otherwise");
    equivCmd->add_option("p", structure)->required();
    equivCmd->add_option("q", other)->required();

    auto* checkCmd = app.add_subcommand("check", "Check a proof file");
    checkCmd->add_flag("--normal", normal, "Only accept rules of the normal fragment");
    checkCmd->add_option("prooffile", proofPath, "Proof file, or - for standard input")->required();

    auto* normCmd = app.add_subcommand("normalize", "Normalise a proof file into a normal proof");
    normCmd->add_option("prooffile", proofPath, "Proof file, or - for standard input")->required();
    normCmd->add_option("-o,--output", outPath, "Where to write the normal proof (default: standard output)");

    auto* proveCmd = app.add_subcommand("prove", "Search for a proof");
    proveCmd->add_flag("--normal", normal, "Search in the normal fragment");
    proveCmd->add_option("--max-size", maxSize, "Largest structure size explored (default: goal size + 4)");
    proveCmd->add_option("--max-steps", maxSteps, "Largest number of inference steps")->capture_default_str();
    proveCmd->add_option("--max-visited", maxVisited, "Largest number of states explored")->capture_default_str();
    proveCmd->add_option("--seed", seed, "Accepted for reproducible scripts; search is deterministic");
    proveCmd->add_option("structure", structure)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }

    try {
        if (*canonCmd) {
            std::cout << text::render(canonicalStructure(text::parseStructure(structure))) << '\n';
            return kOk;
        }
        if (*equivCmd) {
            bool same = equivalent(text::parseStructure(structure), text::parseStructure(other));
            std::cout << (same ? "equivalent" : "not equivalent") << '\n';
            return same ? kOk : kRejected;
        }
        if (*checkCmd) {
            Derivation d = loadProof(proofPath);
            Report r = checkProof(d, normal ? Fragment::Normal : Fragment::Symmetric);
            if (!r) {
                printRejection(r);
                return kRejected;
            }
            std::cout << "accepted (" << r.equivSteps << " equiv, " << r.inferSteps << " infer)\n";
            return kOk;
        }
        if (*normCmd) {
            Derivation d = loadProof(proofPath);
            Report r = checkProof(d, Fragment::Symmetric);
            if (!r) {
                printRejection(r);
                return kRejected;
            }
            Derivation out = normalize(d);
            std::string text = text::writeProof(out);
            if (outPath == "-") {
                std::cout << text;
            } else {
                std::ofstream f(outPath);
                if (!f)
                    throw InputError("cannot write " + outPath);
                f << text;
            }
            printCensus(outPath == "-" ? std::cerr : std::cout, out);
            return kOk;
        }
        if (*proveCmd) {
            Structure p = text::parseStructure(structure);
            SearchBudget b;
            b.maxStructureSize = maxSize ? maxSize : p.size() + 4;
            b.maxInferSteps = maxSteps;
            b.maxVisited = maxVisited;
            SearchOutcome o = prove(p, normal ? Fragment::Normal : Fragment::Symmetric, b);
            switch (o.status) {
            case SearchStatus::Proved:
                std::cout << text::writeProof(*o.proof);
                return kOk;
            case SearchStatus::RefutedWithinCap:
                std::cerr << "no proof within size " << b.maxStructureSize << " (" << o.visited << " states)\n";
                return kRefuted;
            case SearchStatus::Unknown:
                std::cerr << "search budget exhausted (" << o.visited << " states)\n";
                return kUnknown;
            }
        }
    } catch (const text::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const InputError& e) {
        std::cerr << e.what() << '\n';
        return kParseError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRejected;
    }
    return kOk;
}
