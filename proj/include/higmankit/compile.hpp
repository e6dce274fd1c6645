// Compiles a PatternSet into a SetExpr over the bases Iota/Diag/Half/Lit
// and the operation nodes, with no Pattern node remaining.
//
// Scheme: one conjunct per constrained coordinate, intersected with a
// bounded-support guard.
//   - constant coordinate: a one-coordinate Lit routed to its place;
//   - pivot coordinate with domain bounds: Half cylinders;
//   - parameter-dependent coordinate: a Diag-based two-coordinate affine
//     link pairing it with the parameter's pivot coordinate.
// Every conjunct leaves the other coordinates free inside the guard, so
// Meet of all conjuncts equals the pattern on the nose.
//
// Supported class: pivoted-affine patterns whose coordinate forms and
// domain inequalities each involve at most one parameter. Forms mixing
// two parameters would need a ternary relation (x = y + z), which the
// binary Diag links cannot express; they are rejected.

#pragma once

#include "higmankit/pattern.hpp"
#include "higmankit/setexpr.hpp"
#include "higmankit/window.hpp"

namespace higman {

struct UnsupportedPattern : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// All tuples with support inside [0,n): a chain of Prod(1, Iota, ...).
inline ExprPtr fullSupport(std::int64_t n) {
    ExprPtr e = mkLit({ExpTuple{}});
    for (std::int64_t i = 0; i < n; ++i) e = mkProd(1, mkIota(), std::move(e));
    return e;
}

inline ExprPtr permuted(ExprPtr e, std::vector<size_t> images) {
    bool ident = true;
    for (size_t i = 0; i < images.size(); ++i) ident = ident && images[i] == i;
    if (ident) return e;
    return mkPerm(std::move(e), std::move(images));
}

/// base holds one-coordinate members; place them at coordinate j with all
/// other coordinates of [0,L) free.
inline ExprPtr cylinderAt(std::int64_t j, ExprPtr base, std::int64_t L) {
    ExprPtr e = mkProd(1, std::move(base), fullSupport(L - 1));
    std::vector<size_t> images(static_cast<size_t>(j) + 1);
    images[0] = static_cast<size_t>(j);
    for (std::int64_t i = 1; i <= j; ++i) images[static_cast<size_t>(i)] = static_cast<size_t>(i - 1);
    return permuted(std::move(e), std::move(images));
}

inline ExprPtr affineBase(std::int64_t alpha, std::int64_t beta) {
    // { (alpha*v + beta, v) : v integer }
    ExprPtr e = mkDiag();
    if (alpha == -1)
        e = mkNeg0(std::move(e));
    else if (alpha != 1)
        e = mkMulC(std::move(e), alpha);
    if (beta != 0) e = mkAddC(std::move(e), beta);
    return e;
}

/// Link coordinate j2 = alpha * coordinate j1 + beta, others free in [0,L).
inline ExprPtr linkCoords(std::int64_t j1, std::int64_t j2, std::int64_t alpha, std::int64_t beta,
                          std::int64_t L) {
    ExprPtr e = mkProd(2, affineBase(alpha, beta), fullSupport(L - 2));
    const size_t m = static_cast<size_t>(std::max(j1, j2)) + 1;
    std::vector<size_t> images(m);
    images[0] = static_cast<size_t>(j2);
    images[1] = static_cast<size_t>(j1);
    size_t nextFree = 0;
    for (size_t i = 2; i < m; ++i) {
        while (nextFree == static_cast<size_t>(j1) || nextFree == static_cast<size_t>(j2)) ++nextFree;
        images[i] = nextFree++;
    }
    return permuted(std::move(e), std::move(images));
}

struct ParamBounds {
    std::optional<std::int64_t> lo, hi;
};

}  // namespace detail

inline ExprPtr compilePattern(const PatternSet& p) {
    const auto L = static_cast<std::int64_t>(p.arity());
    const size_t d = p.paramCount();

    for (const auto& f : p.coordForms())
        if (f.paramCount() > 1)
            throw UnsupportedPattern("coordinate form involves more than one parameter");

    // Fold the domain into per-parameter integer bounds.
    std::vector<detail::ParamBounds> bounds(d);
    bool infeasible = false;
    for (const auto& q : p.domain()) {
        size_t nz = 0, idx = 0;
        for (size_t i = 0; i < q.coeffs.size(); ++i)
            if (q.coeffs[i] != 0) {
                ++nz;
                idx = i;
            }
        if (nz == 0) {
            if (0 < q.c) infeasible = true;
            continue;
        }
        if (nz > 1)
            throw UnsupportedPattern("domain inequality involves more than one parameter");
        const std::int64_t a = q.coeffs[idx];
        if (a > 0) {
            const std::int64_t b = detail::ceilDiv(q.c, a);
            if (!bounds[idx].lo || b > *bounds[idx].lo) bounds[idx].lo = b;
        } else {
            const std::int64_t b = detail::floorDiv(q.c, a);
            if (!bounds[idx].hi || b < *bounds[idx].hi) bounds[idx].hi = b;
        }
    }
    for (const auto& pb : bounds)
        if (pb.lo && pb.hi && *pb.lo > *pb.hi) infeasible = true;
    if (infeasible) return mkLit({});
    if (L == 0) return mkLit({ExpTuple{}});

    // Pivot coordinate value ranges: v = c0 + s*p with s = +-1.
    auto pivotValueRange = [&](size_t i) -> detail::ParamBounds {
        const AffineForm& f = p.coordForms()[p.pivots()[i]];
        const std::int64_t s = f.coeffs[i];
        detail::ParamBounds r;
        if (s == 1) {
            if (bounds[i].lo) r.lo = f.c0 + *bounds[i].lo;
            if (bounds[i].hi) r.hi = f.c0 + *bounds[i].hi;
        } else {
            if (bounds[i].hi) r.lo = f.c0 - *bounds[i].hi;
            if (bounds[i].lo) r.hi = f.c0 - *bounds[i].lo;
        }
        return r;
    };

    // Single free coordinate: direct bases, no guard needed.
    if (L == 1) {
        const AffineForm& f = p.coordForms()[0];
        const auto sole = f.soleParam();
        if (!sole) return mkLit({ExpTuple({f.c0})});
        const auto r = pivotValueRange(*sole);
        if (r.lo && r.hi) return mkMeet(mkHalf(*r.lo, true), mkHalf(*r.hi, false));
        if (r.lo) return mkHalf(*r.lo, true);
        if (r.hi) return mkHalf(*r.hi, false);
        return mkIota();
    }

    ExprPtr result = detail::fullSupport(L);
    auto conjoin = [&](ExprPtr e) { result = mkMeet(std::move(result), std::move(e)); };

    for (std::int64_t j = 0; j < L; ++j) {
        const AffineForm& f = p.coordForms()[static_cast<size_t>(j)];
        const auto sole = f.soleParam();
        if (!sole) {
            conjoin(detail::cylinderAt(j, mkLit({ExpTuple({f.c0})}), L));
            continue;
        }
        const size_t i = *sole;
        const auto pj = static_cast<std::int64_t>(p.pivots()[i]);
        if (j == pj) {
            const auto r = pivotValueRange(i);
            if (r.lo) conjoin(detail::cylinderAt(j, mkHalf(*r.lo, true), L));
            if (r.hi) conjoin(detail::cylinderAt(j, mkHalf(*r.hi, false), L));
            continue;
        }
        // v_j = c0_j + c*p and p = s*(v_pivot - b): affine in the pivot.
        const AffineForm& g = p.coordForms()[static_cast<size_t>(pj)];
        const std::int64_t s = g.coeffs[i];
        const std::int64_t alpha = f.coeffs[i] * s;
        const std::int64_t beta = f.c0 - f.coeffs[i] * s * g.c0;
        conjoin(detail::linkCoords(pj, j, alpha, beta, L));
    }
    return result;
}

struct VerifyReport {
    EqReport eq;
    std::int64_t coords = 0;
    std::int64_t maxAbs = 0;
};

/// Window-equality check of a pattern against a compiled expression.
inline VerifyReport verifyCompilation(const PatternSet& p, const ExprPtr& e, std::int64_t L,
                                      std::int64_t N, std::int64_t budget) {
    const auto lhs = mkPattern(p);
    VerifyReport rep;
    rep.coords = L;
    rep.maxAbs = N;
    rep.eq = eqOnWindow(lhs, e, L, N, budget);
    return rep;
}

}  // namespace higman
