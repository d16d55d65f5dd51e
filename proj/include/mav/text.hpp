// Surface syntax for structures and the line-oriented proof file format.
//
// Grammar, tightest binding first (all binary operators left-associative):
//   ~   duality (pushed to the atoms when parsed)
//   ;   seq
//   *   tensor
//   |   par
//   &   with
//   +   plus
// Atoms match [a-z][a-z0-9_]*, the unit is 1, parentheses group.
//
// Note that `&` is the logic's With connective. It is also the frame-level
// "+" of the normal-proof frame; `+` in this grammar is Plus.
#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include "mav/calculus.hpp"
#include "mav/syntax.hpp"

namespace mav::text {

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline int precedence(Kind k) {
    switch (k) {
    case Kind::Seq:
        return 5;
    case Kind::Tens:
        return 4;
    case Kind::Parr:
        return 3;
    case Kind::With:
        return 2;
    case Kind::Plus:
        return 1;
    default:
        return 6;
    }
}

inline char operatorChar(Kind k) {
    switch (k) {
    case Kind::Seq:
        return ';';
    case Kind::Tens:
        return '*';
    case Kind::Parr:
        return '|';
    case Kind::With:
        return '&';
    case Kind::Plus:
        return '+';
    default:
        return '?';
    }
}

namespace detail {

class Parser {
public:
    Parser(std::string_view src, std::size_t line, std::size_t columnOffset = 0)
        : src_(src), line_(line), offset_(columnOffset) {}

    Structure parseAll() {
        Structure s = parseBinary(1);
        skipSpace();
        if (pos_ != src_.size())
            fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, offset_ + pos_ + 1); }

    void skipSpace() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r'))
            ++pos_;
    }

    static std::optional<Kind> binaryOp(char c) {
        switch (c) {
        case ';':
            return Kind::Seq;
        case '*':
            return Kind::Tens;
        case '|':
            return Kind::Parr;
        case '&':
            return Kind::With;
        case '+':
            return Kind::Plus;
        default:
            return std::nullopt;
        }
    }

    Structure parseBinary(int minPrec) {
        Structure lhs = parseUnary();
        for (;;) {
            skipSpace();
            if (pos_ >= src_.size())
                return lhs;
            auto k = binaryOp(src_[pos_]);
            if (!k || precedence(*k) < minPrec)
                return lhs;
            ++pos_;
            Structure rhs = parseBinary(precedence(*k) + 1);
            lhs = Structure::make(*k, std::move(lhs), std::move(rhs));
        }
    }

    Structure parseUnary() {
        skipSpace();
        if (pos_ >= src_.size())
            fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '~') {
            ++pos_;
            return dual(parseUnary());
        }
        if (c == '(') {
            ++pos_;
            Structure inner = parseBinary(1);
            skipSpace();
            if (pos_ >= src_.size() || src_[pos_] != ')')
                fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '1') {
            ++pos_;
            return Structure::unit();
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   ((src_[pos_] >= 'a' && src_[pos_] <= 'z') || (src_[pos_] >= '0' && src_[pos_] <= '9') ||
                    src_[pos_] == '_'))
                ++pos_;
            return Structure::pos(std::string(src_.substr(start, pos_ - start)));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view src_;
    std::size_t line_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

inline void render(std::string& out, const Structure& s) {
    switch (s.kind()) {
    case Kind::Unit:
        out += '1';
        return;
    case Kind::PosAtom:
        out += s.name();
        return;
    case Kind::NegAtom:
        out += '~';
        out += s.name();
        return;
    default:
        break;
    }
    const int p = precedence(s.kind());
    const bool parenL = precedence(s.left().kind()) < p;
    const bool parenR = precedence(s.right().kind()) <= p;
    if (parenL)
        out += '(';
    render(out, s.left());
    if (parenL)
        out += ')';
    out += ' ';
    out += operatorChar(s.kind());
    out += ' ';
    if (parenR)
        out += '(';
    render(out, s.right());
    if (parenR)
        out += ')';
}

} // namespace detail

inline Structure parseStructure(std::string_view src, std::size_t line = 1) {
    return detail::Parser(src, line).parseAll();
}

/// Renders with the minimal parentheses the precedence table allows;
/// parseStructure(render(s)) == s.
inline std::string render(const Structure& s) {
    std::string out;
    detail::render(out, s);
    return out;
}

inline std::string renderPath(const Path& p) {
    if (p.empty())
        return ".";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            out += '/';
        out += p[i] == Dir::L ? 'L' : 'R';
    }
    return out;
}

inline Path parsePath(std::string_view src, std::size_t line = 1, std::size_t column = 1) {
    if (src == ".")
        return {};
    Path p;
    bool expectDir = true;
    for (std::size_t i = 0; i < src.size(); ++i) {
        char c = src[i];
        if (expectDir && (c == 'L' || c == 'R')) {
            p.push_back(c == 'L' ? Dir::L : Dir::R);
            expectDir = false;
        } else if (!expectDir && c == '/') {
            expectDir = true;
        } else {
            throw ParseError("malformed path '" + std::string(src) + "'", line, column + i);
        }
    }
    if (expectDir)
        throw ParseError("malformed path '" + std::string(src) + "'", line, column + src.size());
    return p;
}

/// Proof file:
///   goal <structure>
///   equiv <structure>
///   infer <Rule> <path> <structure>
///   qed
/// Blank lines and lines starting with '#' are ignored.
inline std::string writeProof(const Derivation& d) {
    std::ostringstream out;
    out << "goal " << render(d.goal) << '\n';
    for (const Step& s : d.steps) {
        if (s.isInfer())
            out << "infer " << ruleName(s.rule) << ' ' << renderPath(s.path) << ' ' << render(s.target) << '\n';
        else
            out << "equiv " << render(s.target) << '\n';
    }
    out << "qed\n";
    return out.str();
}

inline Derivation readProof(std::istream& in) {
    Derivation d;
    bool haveGoal = false, done = false;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string_view v(line);
        while (!v.empty() && (v.back() == '\r' || v.back() == ' ' || v.back() == '\t'))
            v.remove_suffix(1);
        std::size_t lead = 0;
        while (lead < v.size() && (v[lead] == ' ' || v[lead] == '\t'))
            ++lead;
        v.remove_prefix(lead);
        if (v.empty() || v.front() == '#')
            continue;
        if (done)
            throw ParseError("content after 'qed'", lineNo, lead + 1);
        auto space = v.find(' ');
        std::string_view keyword = v.substr(0, space);
        std::string_view rest = space == std::string_view::npos ? std::string_view() : v.substr(space + 1);
        std::size_t restCol = lead + (space == std::string_view::npos ? v.size() : space + 1) + 1;
        if (!haveGoal) {
            if (keyword != "goal")
                throw ParseError("expected 'goal'", lineNo, lead + 1);
            d.goal = detail::Parser(rest, lineNo, restCol - 1).parseAll();
            haveGoal = true;
        } else if (keyword == "equiv") {
            d.steps.push_back(Step::equiv(detail::Parser(rest, lineNo, restCol - 1).parseAll()));
        } else if (keyword == "infer") {
            auto sp1 = rest.find(' ');
            if (sp1 == std::string_view::npos)
                throw ParseError("expected rule name and path", lineNo, restCol);
            auto rule = ruleFromName(rest.substr(0, sp1));
            if (!rule)
                throw ParseError("unknown rule '" + std::string(rest.substr(0, sp1)) + "'", lineNo, restCol);
            std::string_view afterRule = rest.substr(sp1 + 1);
            auto sp2 = afterRule.find(' ');
            if (sp2 == std::string_view::npos)
                throw ParseError("expected path and structure", lineNo, restCol + sp1 + 1);
            Path path = parsePath(afterRule.substr(0, sp2), lineNo, restCol + sp1 + 1);
            d.steps.push_back(Step::infer(
                *rule, std::move(path),
                detail::Parser(afterRule.substr(sp2 + 1), lineNo, restCol + sp1 + sp2 + 1).parseAll()));
        } else if (keyword == "qed") {
            if (!rest.empty())
                throw ParseError("unexpected text after 'qed'", lineNo, restCol);
            done = true;
        } else {
            throw ParseError("unknown keyword '" + std::string(keyword) + "'", lineNo, lead + 1);
        }
    }
    if (!haveGoal)
        throw ParseError("missing 'goal' line", lineNo + 1, 1);
    if (!done)
        throw ParseError("missing 'qed'", lineNo + 1, 1);
    return d;
}

inline Derivation readProof(std::string_view src) {
    std::istringstream in{std::string(src)};
    return readProof(in);
}

} // namespace mav::text
