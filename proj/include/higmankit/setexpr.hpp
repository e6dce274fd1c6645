// Expression trees over subsets of E, the finitely supported integer
// sequences. Bases: Iota, Lit, Diag, Half, Pattern. Operation nodes:
// Union, Meet, Shift, Swap01, Neg0, Zero0, Proj0, Stride(m), plus the
// auxiliary AddC, MulC, Perm, Prod.
//
// The denotational semantics of every node is fixed in exactly two
// dispatch switches: membership here, enumeration in enumerate.hpp.
// Swapping a node's meaning is a local edit to those two switches
// (and the window solver's, when structurally supported).
//
// Adopted semantics:
//   Iota          { f : supp(f) <= {0} }
//   Diag          { f : f(0)=f(1), supp <= {0,1} }
//   Half(c,>=)    { f : supp <= {0}, f(0) >= c }   (and the <= twin)
//   Union / Meet  set union / intersection
//   Shift(A)      { (0, g(0), g(1), ...) : g in A }
//   Swap01(A)     coordinates 0 and 1 swapped
//   Neg0(A)       coordinate 0 negated
//   Zero0(A)      { g in A : g(0) = 0 }
//   Proj0(A)      { f : f(0)=0 and exists n with f[0:=n] in A }
//   Stride(m,A)   { f : every stride subsequence f(m*i+j), j<m, is in A }
//   AddC(A,c)     coordinate 0 shifted by c
//   MulC(A,c)     coordinate 0 multiplied by c (c != 0)
//   Perm(A,p)     coordinates permuted by p
//   Prod(k,A,B)   { f : f|[0,k) in A and f(k+.) in B }

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "higmankit/codec.hpp"
#include "higmankit/pattern.hpp"

namespace higman {

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NodeKind {
    Iota,
    Lit,
    Diag,
    Half,
    Pattern,
    Union,
    Meet,
    Shift,
    Swap01,
    Neg0,
    Zero0,
    Proj0,
    Stride,
    AddC,
    MulC,
    Perm,
    Prod,
};

inline const char* nodeName(NodeKind k) {
    switch (k) {
        case NodeKind::Iota: return "iota";
        case NodeKind::Lit: return "lit";
        case NodeKind::Diag: return "diag";
        case NodeKind::Half: return "half";
        case NodeKind::Pattern: return "pattern";
        case NodeKind::Union: return "union";
        case NodeKind::Meet: return "meet";
        case NodeKind::Shift: return "shift";
        case NodeKind::Swap01: return "swap01";
        case NodeKind::Neg0: return "neg0";
        case NodeKind::Zero0: return "zero0";
        case NodeKind::Proj0: return "proj0";
        case NodeKind::Stride: return "stride";
        case NodeKind::AddC: return "addc";
        case NodeKind::MulC: return "mulc";
        case NodeKind::Perm: return "perm";
        case NodeKind::Prod: return "prod";
    }
    return "?";
}

struct SetExpr;
using ExprPtr = std::shared_ptr<const SetExpr>;

struct SetExpr {
    NodeKind kind;
    std::vector<ExprPtr> children;
    std::vector<ExpTuple> lit;                     // Lit: sorted, deduplicated
    std::shared_ptr<const PatternSet> pattern;     // Pattern
    std::string patternName;                       // Pattern: label for printing
    std::int64_t c = 0;                            // Half bound / AddC / MulC constant
    bool geq = true;                               // Half direction
    std::int64_t m = 1;                            // Stride modulus / Prod split point
    std::vector<size_t> perm;                      // Perm: image list, i -> perm[i]
};

// --- constructors -----------------------------------------------------

inline ExprPtr mkIota() { return std::make_shared<SetExpr>(SetExpr{NodeKind::Iota}); }
inline ExprPtr mkDiag() { return std::make_shared<SetExpr>(SetExpr{NodeKind::Diag}); }

inline ExprPtr mkHalf(std::int64_t c, bool geq) {
    SetExpr e{NodeKind::Half};
    e.c = c;
    e.geq = geq;
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkLit(std::vector<ExpTuple> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    SetExpr e{NodeKind::Lit};
    e.lit = std::move(items);
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkPattern(PatternSet p, std::string name = "") {
    SetExpr e{NodeKind::Pattern};
    e.pattern = std::make_shared<const PatternSet>(std::move(p));
    e.patternName = std::move(name);
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkUnion(ExprPtr a, ExprPtr b) {
    SetExpr e{NodeKind::Union};
    e.children = {std::move(a), std::move(b)};
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkMeet(ExprPtr a, ExprPtr b) {
    SetExpr e{NodeKind::Meet};
    e.children = {std::move(a), std::move(b)};
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkUnary(NodeKind k, ExprPtr a) {
    SetExpr e{k};
    e.children = {std::move(a)};
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkShift(ExprPtr a) { return mkUnary(NodeKind::Shift, std::move(a)); }
inline ExprPtr mkSwap01(ExprPtr a) { return mkUnary(NodeKind::Swap01, std::move(a)); }
inline ExprPtr mkNeg0(ExprPtr a) { return mkUnary(NodeKind::Neg0, std::move(a)); }
inline ExprPtr mkZero0(ExprPtr a) { return mkUnary(NodeKind::Zero0, std::move(a)); }
inline ExprPtr mkProj0(ExprPtr a) { return mkUnary(NodeKind::Proj0, std::move(a)); }

inline ExprPtr mkStride(std::int64_t m, ExprPtr a) {
    if (m < 1) throw ExprError("stride modulus must be >= 1");
    SetExpr e{NodeKind::Stride};
    e.m = m;
    e.children = {std::move(a)};
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkAddC(ExprPtr a, std::int64_t c) {
    SetExpr e{NodeKind::AddC};
    e.c = c;
    e.children = {std::move(a)};
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkMulC(ExprPtr a, std::int64_t c) {
    if (c == 0) throw ExprError("mulc constant must be nonzero");
    SetExpr e{NodeKind::MulC};
    e.c = c;
    e.children = {std::move(a)};
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkPerm(ExprPtr a, std::vector<size_t> images) {
    std::vector<bool> seen(images.size(), false);
    for (size_t v : images) {
        if (v >= images.size() || seen[v]) throw ExprError("perm image list is not a permutation");
        seen[v] = true;
    }
    SetExpr e{NodeKind::Perm};
    e.perm = std::move(images);
    e.children = {std::move(a)};
    return std::make_shared<SetExpr>(std::move(e));
}

inline ExprPtr mkProd(std::int64_t k, ExprPtr a, ExprPtr b) {
    if (k < 0) throw ExprError("prod split point must be >= 0");
    SetExpr e{NodeKind::Prod};
    e.m = k;
    e.children = {std::move(a), std::move(b)};
    return std::make_shared<SetExpr>(std::move(e));
}

// --- tuple coordinate helpers ----------------------------------------

inline ExpTuple tupleShiftLeft(const ExpTuple& t) {
    std::vector<std::int64_t> e;
    for (size_t i = 1; i < t.size(); ++i) e.push_back(t.entries()[i]);
    return ExpTuple(std::move(e));
}

inline ExpTuple tupleShiftRight(const ExpTuple& t) {
    std::vector<std::int64_t> e{0};
    e.insert(e.end(), t.entries().begin(), t.entries().end());
    return ExpTuple(std::move(e));
}

inline ExpTuple tupleSwap01(const ExpTuple& t) {
    return t.with(0, t.at(1)).with(1, t.at(0));
}

/// g such that apply(p, g) = t, i.e. g(i) = t(p(i)).
inline ExpTuple tuplePermInverse(const ExpTuple& t, const std::vector<size_t>& p) {
    std::vector<std::int64_t> e(std::max(t.size(), p.size()), 0);
    for (size_t i = 0; i < e.size(); ++i) e[i] = t.at(i < p.size() ? p[i] : i);
    return ExpTuple(std::move(e));
}

/// apply(p, g): f(p(i)) = g(i).
inline ExpTuple tuplePermApply(const ExpTuple& g, const std::vector<size_t>& p) {
    std::vector<std::int64_t> e(std::max(g.size(), p.size()), 0);
    for (size_t i = 0; i < e.size(); ++i) e[i < p.size() ? p[i] : i] = g.at(i);
    return ExpTuple(std::move(e));
}

inline ExpTuple tupleStrideSub(const ExpTuple& t, std::int64_t m, std::int64_t j) {
    std::vector<std::int64_t> e;
    for (size_t i = static_cast<size_t>(j); i < t.size(); i += static_cast<size_t>(m))
        e.push_back(t.entries()[i]);
    return ExpTuple(std::move(e));
}

inline ExpTuple tupleTruncate(const ExpTuple& t, std::int64_t k) {
    std::vector<std::int64_t> e;
    for (std::int64_t i = 0; i < k && i < static_cast<std::int64_t>(t.size()); ++i)
        e.push_back(t.entries()[static_cast<size_t>(i)]);
    return ExpTuple(std::move(e));
}

inline ExpTuple tupleDropPrefix(const ExpTuple& t, std::int64_t k) {
    std::vector<std::int64_t> e;
    for (size_t i = static_cast<size_t>(k); i < t.size(); ++i) e.push_back(t.entries()[i]);
    return ExpTuple(std::move(e));
}

/// Interleave m tuples: f(m*i + j) = parts[j](i).
inline ExpTuple tupleInterleave(const std::vector<ExpTuple>& parts) {
    size_t maxLen = 0;
    for (const auto& p : parts) maxLen = std::max(maxLen, p.size());
    std::vector<std::int64_t> e(parts.size() * maxLen, 0);
    for (size_t j = 0; j < parts.size(); ++j)
        for (size_t i = 0; i < parts[j].size(); ++i) e[parts.size() * i + j] = parts[j].entries()[i];
    return ExpTuple(std::move(e));
}

/// Concatenate at split point k: f = a on [0,k), b shifted to [k, ...).
inline ExpTuple tupleConcatAt(const ExpTuple& a, std::int64_t k, const ExpTuple& b) {
    std::vector<std::int64_t> e(static_cast<size_t>(k) + b.size(), 0);
    for (size_t i = 0; i < a.size() && i < static_cast<size_t>(k); ++i) e[i] = a.entries()[i];
    for (size_t i = 0; i < b.size(); ++i) e[static_cast<size_t>(k) + i] = b.entries()[i];
    return ExpTuple(std::move(e));
}

// --- membership -------------------------------------------------------

enum class Verdict { Yes, No, Unknown };

struct Membership3 {
    Verdict verdict;
    bool yes() const { return verdict == Verdict::Yes; }
    bool no() const { return verdict == Verdict::No; }
    bool unknown() const { return verdict == Verdict::Unknown; }
};

struct Budget {
    std::int64_t steps;
    bool spend(std::int64_t n = 1) {
        if (steps < n) {
            steps = 0;
            return false;
        }
        steps -= n;
        return true;
    }
};

namespace detail {

inline std::int64_t floorDiv(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline std::int64_t ceilDiv(std::int64_t a, std::int64_t b) { return -floorDiv(-a, b); }

// Exists n with f[0:=n] in Pattern(p)? Decidable: every parameter is
// pivoted, so at most one parameter (the one pivoted at coordinate 0)
// is not determined by the remaining coordinates.
inline bool projPatternHas(const PatternSet& p, const ExpTuple& f) {
    if (f.size() > p.arity()) return false;
    const size_t d = p.paramCount();
    std::vector<std::int64_t> params(d, 0);
    std::vector<bool> known(d, false);
    std::optional<size_t> freeParam;
    for (size_t i = 0; i < d; ++i) {
        if (p.pivots()[i] == 0) {
            freeParam = i;  // at most one: the pivot form involves it alone
            continue;
        }
        const AffineForm& g = p.coordForms()[p.pivots()[i]];
        params[i] = g.coeffs[i] * (f.at(p.pivots()[i]) - g.c0);
        known[i] = true;
    }
    auto checkCoords = [&]() {
        for (size_t j = 1; j < p.arity(); ++j)
            if (p.coordForms()[j].eval(params) != f.at(j)) return false;
        return true;
    };
    if (!freeParam) return p.domainHolds(params) && checkCoords();

    const size_t q = *freeParam;
    // Solve q from any other coordinate that mentions it.
    for (size_t j = 1; j < p.arity(); ++j) {
        const AffineForm& g = p.coordForms()[j];
        if (g.coeffs[q] == 0) continue;
        std::int64_t rest = g.c0;
        for (size_t i = 0; i < d; ++i)
            if (i != q) rest += g.coeffs[i] * params[i];
        const std::int64_t num = f.at(j) - rest;
        if (num % g.coeffs[q] != 0) return false;
        params[q] = num / g.coeffs[q];
        known[q] = true;
        return p.domainHolds(params) && checkCoords();
    }
    // q appears only at coordinate 0: it is existentially free, bounded
    // only by the domain. One-dimensional integer feasibility.
    if (!checkCoords()) return false;
    bool hasLo = false, hasHi = false;
    std::int64_t lo = 0, hi = 0;
    for (const auto& ineq : p.domain()) {
        std::int64_t rest = 0;
        bool involvesQ = false;
        for (size_t i = 0; i < ineq.coeffs.size(); ++i) {
            if (i == q) {
                involvesQ = ineq.coeffs[i] != 0;
                continue;
            }
            rest += ineq.coeffs[i] * params[i];
        }
        if (!involvesQ) {
            if (rest < ineq.c) return false;
            continue;
        }
        const std::int64_t a = ineq.coeffs[q];
        const std::int64_t r = ineq.c - rest;  // a*q >= r
        if (a > 0) {
            const std::int64_t bound = ceilDiv(r, a);
            if (!hasLo || bound > lo) lo = bound;
            hasLo = true;
        } else {
            const std::int64_t bound = floorDiv(r, a);  // q <= r/a
            if (!hasHi || bound < hi) hi = bound;
            hasHi = true;
        }
    }
    return !(hasLo && hasHi && lo > hi);
}

}  // namespace detail

/// Three-valued membership. Decidable nodes answer without spending
/// budget; Proj0 over non-certifying children runs a witness search that
/// consumes one budget step per candidate.
inline Membership3 member(const SetExpr& e, const ExpTuple& t, Budget& budget) {
    switch (e.kind) {
        case NodeKind::Iota:
            return {t.size() <= 1 ? Verdict::Yes : Verdict::No};
        case NodeKind::Lit:
            return {std::binary_search(e.lit.begin(), e.lit.end(), t) ? Verdict::Yes : Verdict::No};
        case NodeKind::Diag:
            return {(t.size() <= 2 && t.at(0) == t.at(1)) ? Verdict::Yes : Verdict::No};
        case NodeKind::Half: {
            const bool ok = t.size() <= 1 && (e.geq ? t.at(0) >= e.c : t.at(0) <= e.c);
            return {ok ? Verdict::Yes : Verdict::No};
        }
        case NodeKind::Pattern:
            return {patternMember(*e.pattern, t) ? Verdict::Yes : Verdict::No};
        case NodeKind::Union: {
            const auto a = member(*e.children[0], t, budget);
            if (a.yes()) return a;
            const auto b = member(*e.children[1], t, budget);
            if (b.yes()) return b;
            if (a.no() && b.no()) return {Verdict::No};
            return {Verdict::Unknown};
        }
        case NodeKind::Meet: {
            const auto a = member(*e.children[0], t, budget);
            if (a.no()) return a;
            const auto b = member(*e.children[1], t, budget);
            if (b.no()) return b;
            if (a.yes() && b.yes()) return {Verdict::Yes};
            return {Verdict::Unknown};
        }
        case NodeKind::Shift:
            if (t.at(0) != 0) return {Verdict::No};
            return member(*e.children[0], tupleShiftLeft(t), budget);
        case NodeKind::Swap01:
            return member(*e.children[0], tupleSwap01(t), budget);
        case NodeKind::Neg0:
            return member(*e.children[0], t.with(0, -t.at(0)), budget);
        case NodeKind::Zero0:
            if (t.at(0) != 0) return {Verdict::No};
            return member(*e.children[0], t, budget);
        case NodeKind::Proj0: {
            if (t.at(0) != 0) return {Verdict::No};
            const SetExpr& child = *e.children[0];
            switch (child.kind) {
                case NodeKind::Pattern:
                    return {detail::projPatternHas(*child.pattern, t) ? Verdict::Yes : Verdict::No};
                case NodeKind::Lit:
                    for (const auto& u : child.lit)
                        if (u.with(0, 0) == t) return {Verdict::Yes};
                    return {Verdict::No};
                // Children whose members all carry 0 at coordinate 0:
                // the only viable witness is n = 0.
                case NodeKind::Proj0:
                case NodeKind::Zero0:
                case NodeKind::Shift:
                    return member(child, t, budget);
                default:
                    break;
            }
            // Witness search 0, 1, -1, 2, -2, ...
            for (std::int64_t n = 0;; n = n > 0 ? -n : -n + 1) {
                if (!budget.spend()) return {Verdict::Unknown};
                if (member(child, t.with(0, n), budget).yes()) return {Verdict::Yes};
            }
        }
        case NodeKind::Stride: {
            bool unknown = false;
            for (std::int64_t j = 0; j < e.m; ++j) {
                const auto v = member(*e.children[0], tupleStrideSub(t, e.m, j), budget);
                if (v.no()) return v;
                if (v.unknown()) unknown = true;
            }
            return {unknown ? Verdict::Unknown : Verdict::Yes};
        }
        case NodeKind::AddC:
            return member(*e.children[0], t.with(0, t.at(0) - e.c), budget);
        case NodeKind::MulC:
            if (t.at(0) % e.c != 0) return {Verdict::No};
            return member(*e.children[0], t.with(0, t.at(0) / e.c), budget);
        case NodeKind::Perm:
            return member(*e.children[0], tuplePermInverse(t, e.perm), budget);
        case NodeKind::Prod: {
            const auto a = member(*e.children[0], tupleTruncate(t, e.m), budget);
            if (a.no()) return a;
            const auto b = member(*e.children[1], tupleDropPrefix(t, e.m), budget);
            if (b.no()) return b;
            if (a.yes() && b.yes()) return {Verdict::Yes};
            return {Verdict::Unknown};
        }
    }
    throw ExprError("unhandled node kind");
}

inline Membership3 member(const ExprPtr& e, const ExpTuple& t, std::int64_t budget) {
    Budget b{budget};
    return member(*e, t, b);
}

// --- stats -------------------------------------------------------------

struct ExprStats {
    size_t nodeCount = 0;
    size_t depth = 0;
    std::vector<std::pair<std::string, size_t>> histogram;  // sorted by name
};

inline void exprStatsWalk(const SetExpr& e, size_t depth, ExprStats& s,
                          std::vector<std::pair<std::string, size_t>>& h) {
    ++s.nodeCount;
    s.depth = std::max(s.depth, depth);
    const std::string name = nodeName(e.kind);
    auto it = std::lower_bound(h.begin(), h.end(), name,
                               [](const auto& p, const std::string& n) { return p.first < n; });
    if (it != h.end() && it->first == name)
        ++it->second;
    else
        h.insert(it, {name, 1});
    for (const auto& c : e.children) exprStatsWalk(*c, depth + 1, s, h);
}

inline ExprStats exprStats(const SetExpr& e) {
    ExprStats s;
    exprStatsWalk(e, 1, s, s.histogram);
    return s;
}

}  // namespace higman
