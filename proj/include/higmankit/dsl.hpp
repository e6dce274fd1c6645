// Parenthesized prefix DSL for set expressions:
//   (iota) (diag) (half >= c) (lit [1,2] [3]) (union E E) (meet E E)
//   (shift E) (swap01 E) (neg0 E) (zero0 E) (proj0 E) (stride m E)
//   (addc c E) (mulc c E) (perm (i j ...) E) (prod k E E)
//   (pattern <name>)
// Pattern names resolve through a caller-supplied hook (catalog entries
// or pattern files).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "higmankit/setexpr.hpp"

namespace higman {

struct DslError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using PatternResolver = std::function<ExprPtr(const std::string&)>;

namespace detail {

struct DslToken {
    enum Kind { LParen, RParen, Atom } kind;
    std::string text;
    size_t pos;
};

inline std::vector<DslToken> dslTokens(const std::string& text) {
    std::vector<DslToken> out;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == '(') {
            out.push_back({DslToken::LParen, "(", i++});
        } else if (ch == ')') {
            out.push_back({DslToken::RParen, ")", i++});
        } else if (ch == '[') {
            const size_t start = i;
            while (i < n && text[i] != ']') ++i;
            if (i == n) throw DslError("unterminated '[' at position " + std::to_string(start));
            ++i;
            out.push_back({DslToken::Atom, text.substr(start, i - start), start});
        } else {
            const size_t start = i;
            while (i < n && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
                   text[i] != ')')
                ++i;
            out.push_back({DslToken::Atom, text.substr(start, i - start), start});
        }
    }
    return out;
}

class DslParser {
public:
    DslParser(std::vector<DslToken> toks, PatternResolver resolver)
        : toks_(std::move(toks)), resolver_(std::move(resolver)) {}

    ExprPtr parseAll() {
        ExprPtr e = parseExpr();
        if (pos_ != toks_.size()) throw DslError("trailing input after expression");
        return e;
    }

private:
    const DslToken& peek() {
        if (pos_ >= toks_.size()) throw DslError("unexpected end of expression");
        return toks_[pos_];
    }
    DslToken take() {
        const DslToken& t = peek();
        ++pos_;
        return t;
    }
    std::string atom() {
        const DslToken t = take();
        if (t.kind != DslToken::Atom)
            throw DslError("expected atom at position " + std::to_string(t.pos));
        return t.text;
    }
    std::int64_t integer() {
        const auto a = atom();
        try {
            size_t used = 0;
            const std::int64_t v = std::stoll(a, &used);
            if (used != a.size()) throw std::invalid_argument(a);
            return v;
        } catch (const std::exception&) {
            throw DslError("expected integer, got '" + a + "'");
        }
    }
    void expect(DslToken::Kind k, const char* what) {
        const DslToken t = take();
        if (t.kind != k)
            throw DslError(std::string("expected ") + what + " at position " + std::to_string(t.pos));
    }

    ExprPtr parseExpr() {
        expect(DslToken::LParen, "'('");
        const std::string head = atom();
        ExprPtr result;
        if (head == "iota") {
            result = mkIota();
        } else if (head == "diag") {
            result = mkDiag();
        } else if (head == "half") {
            const std::string dir = atom();
            if (dir != ">=" && dir != "<=") throw DslError("half: expected >= or <=");
            result = mkHalf(integer(), dir == ">=");
        } else if (head == "lit") {
            std::vector<ExpTuple> items;
            while (peek().kind == DslToken::Atom) items.push_back(parseTuple(atom()));
            result = mkLit(std::move(items));
        } else if (head == "union") {
            auto a = parseExpr();
            result = mkUnion(std::move(a), parseExpr());
        } else if (head == "meet") {
            auto a = parseExpr();
            result = mkMeet(std::move(a), parseExpr());
        } else if (head == "shift") {
            result = mkShift(parseExpr());
        } else if (head == "swap01") {
            result = mkSwap01(parseExpr());
        } else if (head == "neg0") {
            result = mkNeg0(parseExpr());
        } else if (head == "zero0") {
            result = mkZero0(parseExpr());
        } else if (head == "proj0") {
            result = mkProj0(parseExpr());
        } else if (head == "stride") {
            const std::int64_t m = integer();
            result = mkStride(m, parseExpr());
        } else if (head == "addc") {
            const std::int64_t c = integer();
            result = mkAddC(parseExpr(), c);
        } else if (head == "mulc") {
            const std::int64_t c = integer();
            result = mkMulC(parseExpr(), c);
        } else if (head == "perm") {
            expect(DslToken::LParen, "'(' starting the image list");
            std::vector<size_t> images;
            while (peek().kind == DslToken::Atom) {
                const std::int64_t v = integer();
                if (v < 0) throw DslError("perm images must be nonnegative");
                images.push_back(static_cast<size_t>(v));
            }
            expect(DslToken::RParen, "')' ending the image list");
            result = mkPerm(parseExpr(), std::move(images));
        } else if (head == "prod") {
            const std::int64_t k = integer();
            auto a = parseExpr();
            result = mkProd(k, std::move(a), parseExpr());
        } else if (head == "pattern") {
            const std::string name = atom();
            if (!resolver_) throw DslError("no pattern resolver for '" + name + "'");
            result = resolver_(name);
        } else {
            throw DslError("unknown operator '" + head + "'");
        }
        expect(DslToken::RParen, "')'");
        return result;
    }

    std::vector<DslToken> toks_;
    PatternResolver resolver_;
    size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parseExpr(const std::string& text, PatternResolver resolver = nullptr) {
    return detail::DslParser(detail::dslTokens(text), std::move(resolver)).parseAll();
}

inline std::string printExpr(const SetExpr& e) {
    std::string out = "(";
    out += nodeName(e.kind);
    switch (e.kind) {
        case NodeKind::Half:
            out += e.geq ? " >= " : " <= ";
            out += std::to_string(e.c);
            break;
        case NodeKind::Lit:
            for (const auto& t : e.lit) out += " " + printTuple(t);
            break;
        case NodeKind::Pattern:
            out += " " + (e.patternName.empty() ? std::string("<anonymous>") : e.patternName);
            break;
        case NodeKind::Stride:
        case NodeKind::Prod:
            out += " " + std::to_string(e.m);
            break;
        case NodeKind::AddC:
        case NodeKind::MulC:
            out += " " + std::to_string(e.c);
            break;
        case NodeKind::Perm: {
            out += " (";
            for (size_t i = 0; i < e.perm.size(); ++i) {
                if (i) out += ' ';
                out += std::to_string(e.perm[i]);
            }
            out += ")";
            break;
        }
        default:
            break;
    }
    for (const auto& c : e.children) out += " " + printExpr(*c);
    return out + ")";
}

inline std::string printExpr(const ExprPtr& e) { return printExpr(*e); }

}  // namespace higman
