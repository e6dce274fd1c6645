// Window evaluation: all members of a SetExpr with support in [0,L) and
// entries bounded by N, plus window equality of two expressions.
//
// Two routes:
//  - exhaustive scan: every window tuple through member(); budgeted, may
//    leave Unknown residue; only feasible for small (2N+1)^L.
//  - structural solve: the expression is lowered to a union of integer
//    "cylinders" (binary affine equalities, single-variable inequalities
//    and existential ghost variables over the coordinates), which are
//    then materialized exactly inside the window. This route is exact
//    and handles windows far beyond scanning range (e.g. L=19, N=10),
//    but rejects nodes it cannot lower (stride with m > 1, patterns
//    whose forms mix parameters).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <set>

#include "higmankit/setexpr.hpp"

namespace higman {

struct StructuralUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace cyl {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Variables: coordinates of the ambient tuple (id >= 0) and existential
// ghosts (id < 0). Ghosts must take integer values but are not part of
// the output and not bounded by the window.
using VarId = std::int64_t;

struct Eq {  // a*x + b*y = c   (y optional: pin a*x = c)
    VarId x;
    std::int64_t a;
    bool hasY = false;
    VarId y = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
};

struct Ineq {  // a*x >= c
    VarId x;
    std::int64_t a;
    std::int64_t c;
};

struct Cylinder {
    std::int64_t support = 0;  // coordinates >= support are zero
    std::vector<Eq> eqs;
    std::vector<Ineq> ineqs;
    std::int64_t ghostCount = 0;

    VarId freshGhost() { return -(++ghostCount); }

    template <typename F>
    void renameVars(F&& f) {
        for (auto& e : eqs) {
            e.x = f(e.x);
            if (e.hasY) e.y = f(e.y);
        }
        for (auto& q : ineqs) q.x = f(q.x);
    }

    void pin(VarId v, std::int64_t value) { eqs.push_back(Eq{v, 1, false, 0, 0, value}); }
};

// --- lowering ----------------------------------------------------------

inline std::vector<Cylinder> lower(const SetExpr& e);

inline Cylinder lowerPattern(const PatternSet& p) {
    Cylinder cy;
    cy.support = static_cast<std::int64_t>(p.arity());
    std::vector<VarId> paramVar(p.paramCount());
    for (size_t i = 0; i < p.paramCount(); ++i) paramVar[i] = cy.freshGhost();
    for (size_t j = 0; j < p.arity(); ++j) {
        const AffineForm& f = p.coordForms()[j];
        const auto sole = f.soleParam();
        if (f.paramCount() == 0) {
            cy.pin(static_cast<VarId>(j), f.c0);
        } else if (sole) {
            // val(j) - coeff*param = c0
            cy.eqs.push_back(Eq{static_cast<VarId>(j), 1, true, paramVar[*sole],
                                -f.coeffs[*sole], f.c0});
        } else {
            throw StructuralUnsupported("pattern coordinate form mixes parameters");
        }
    }
    for (const auto& q : p.domain()) {
        size_t nz = 0, idx = 0;
        for (size_t i = 0; i < q.coeffs.size(); ++i)
            if (q.coeffs[i] != 0) {
                ++nz;
                idx = i;
            }
        if (nz == 0) {
            if (0 < q.c) cy.ineqs.push_back(Ineq{0, 0, 1});  // unsatisfiable
            continue;
        }
        if (nz > 1) throw StructuralUnsupported("pattern domain inequality mixes parameters");
        cy.ineqs.push_back(Ineq{paramVar[idx], q.coeffs[idx], q.c});
    }
    return cy;
}

// Meet: constraints of both; the tuple is zero beyond the smaller support.
inline Cylinder lowerMeet(Cylinder a, Cylinder b) {
    const std::int64_t sup = std::min(a.support, b.support);
    const std::int64_t wide = std::max(a.support, b.support);
    const std::int64_t off = a.ghostCount;
    b.renameVars([off](VarId v) { return v < 0 ? v - off : v; });
    a.ghostCount += b.ghostCount;
    a.eqs.insert(a.eqs.end(), b.eqs.begin(), b.eqs.end());
    a.ineqs.insert(a.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
    for (std::int64_t cnum = sup; cnum < wide; ++cnum) a.pin(cnum, 0);
    a.support = sup;
    return a;
}

// Prod(k, A, B): A constrains the zero-extended truncation to [0,k), so
// A's coordinates >= k become ghosts pinned to zero; B's coordinates
// shift up by k.
inline Cylinder lowerProd(std::int64_t k, Cylinder a, Cylinder b) {
    std::map<VarId, VarId> tail;
    for (std::int64_t cnum = k; cnum < a.support; ++cnum) {
        const VarId g = a.freshGhost();
        tail[cnum] = g;
    }
    a.renameVars([&](VarId v) {
        auto it = tail.find(v);
        return it == tail.end() ? v : it->second;
    });
    for (const auto& [cnum, g] : tail) a.pin(g, 0);
    // A-members are zero beyond A's support, so the truncation pins any
    // gap coordinates up to the split point.
    for (std::int64_t cnum = a.support; cnum < k; ++cnum) a.pin(cnum, 0);
    const std::int64_t off = a.ghostCount;
    b.renameVars([&](VarId v) { return v < 0 ? v - off : v + k; });
    a.ghostCount += b.ghostCount;
    a.eqs.insert(a.eqs.end(), b.eqs.begin(), b.eqs.end());
    a.ineqs.insert(a.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
    a.support = k + b.support;
    return a;
}

// Permutation by image list: coordinate i of the child lands at p(i).
inline Cylinder lowerPermuted(Cylinder cy, const std::vector<size_t>& images) {
    const std::int64_t w = std::max<std::int64_t>(cy.support, static_cast<std::int64_t>(images.size()));
    for (std::int64_t cnum = cy.support; cnum < w; ++cnum) cy.pin(cnum, 0);
    cy.support = w;
    cy.renameVars([&](VarId v) {
        if (v < 0 || v >= static_cast<VarId>(images.size())) return v;
        return static_cast<VarId>(images[static_cast<size_t>(v)]);
    });
    // Pins added above for padding coords must move with the renaming —
    // renameVars already covered them since they were pushed first.
    return cy;
}

// Detach coordinate 0 into a ghost and relate the new coordinate 0 to it
// by newVal = a*old + b. Used by AddC, MulC, Neg0.
inline Cylinder lowerCoord0Affine(Cylinder cy, std::int64_t a, std::int64_t b) {
    const VarId g = cy.freshGhost();
    cy.renameVars([&](VarId v) { return v == 0 ? g : v; });
    if (cy.support < 1) cy.pin(g, 0);
    cy.support = std::max<std::int64_t>(cy.support, 1);
    cy.eqs.push_back(Eq{0, 1, true, g, -a, b});  // val(0) - a*g = b
    return cy;
}

inline std::vector<Cylinder> lower(const SetExpr& e) {
    std::vector<Cylinder> out;
    switch (e.kind) {
        case NodeKind::Iota: {
            Cylinder cy;
            cy.support = 1;
            out.push_back(std::move(cy));
            break;
        }
        case NodeKind::Diag: {
            Cylinder cy;
            cy.support = 2;
            cy.eqs.push_back(Eq{0, 1, true, 1, -1, 0});
            out.push_back(std::move(cy));
            break;
        }
        case NodeKind::Half: {
            Cylinder cy;
            cy.support = 1;
            cy.ineqs.push_back(e.geq ? Ineq{0, 1, e.c} : Ineq{0, -1, -e.c});
            out.push_back(std::move(cy));
            break;
        }
        case NodeKind::Lit:
            for (const auto& t : e.lit) {
                Cylinder cy;
                cy.support = static_cast<std::int64_t>(t.size());
                for (size_t i = 0; i < t.size(); ++i)
                    cy.pin(static_cast<VarId>(i), t.entries()[i]);
                out.push_back(std::move(cy));
            }
            break;
        case NodeKind::Pattern:
            out.push_back(lowerPattern(*e.pattern));
            break;
        case NodeKind::Union: {
            out = lower(*e.children[0]);
            auto rhs = lower(*e.children[1]);
            out.insert(out.end(), std::make_move_iterator(rhs.begin()),
                       std::make_move_iterator(rhs.end()));
            break;
        }
        case NodeKind::Meet: {
            const auto lhs = lower(*e.children[0]);
            const auto rhs = lower(*e.children[1]);
            for (const auto& a : lhs)
                for (const auto& b : rhs) out.push_back(lowerMeet(a, b));
            break;
        }
        case NodeKind::Shift:
            for (auto cy : lower(*e.children[0])) {
                cy.renameVars([](VarId v) { return v >= 0 ? v + 1 : v; });
                ++cy.support;
                cy.pin(0, 0);
                out.push_back(std::move(cy));
            }
            break;
        case NodeKind::Swap01:
            for (auto cy : lower(*e.children[0]))
                out.push_back(lowerPermuted(std::move(cy), {1, 0}));
            break;
        case NodeKind::Perm:
            for (auto cy : lower(*e.children[0]))
                out.push_back(lowerPermuted(std::move(cy), e.perm));
            break;
        case NodeKind::Neg0:
            for (auto cy : lower(*e.children[0]))
                out.push_back(lowerCoord0Affine(std::move(cy), -1, 0));
            break;
        case NodeKind::AddC:
            for (auto cy : lower(*e.children[0]))
                out.push_back(lowerCoord0Affine(std::move(cy), 1, e.c));
            break;
        case NodeKind::MulC:
            for (auto cy : lower(*e.children[0]))
                out.push_back(lowerCoord0Affine(std::move(cy), e.c, 0));
            break;
        case NodeKind::Zero0:
            for (auto cy : lower(*e.children[0])) {
                cy.pin(0, 0);
                cy.support = std::max<std::int64_t>(cy.support, 1);
                out.push_back(std::move(cy));
            }
            break;
        case NodeKind::Proj0:
            for (auto cy : lower(*e.children[0])) {
                const VarId g = cy.freshGhost();
                cy.renameVars([&](VarId v) { return v == 0 ? g : v; });
                if (cy.support < 1) cy.pin(g, 0);
                cy.support = std::max<std::int64_t>(cy.support, 1);
                cy.pin(0, 0);
                out.push_back(std::move(cy));
            }
            break;
        case NodeKind::Stride:
            if (e.m == 1) {
                out = lower(*e.children[0]);
                break;
            }
            throw StructuralUnsupported("stride with m > 1 has no structural lowering");
        case NodeKind::Prod: {
            const auto lhs = lower(*e.children[0]);
            const auto rhs = lower(*e.children[1]);
            for (const auto& a : lhs)
                for (const auto& b : rhs) out.push_back(lowerProd(e.m, a, b));
            break;
        }
    }
    return out;
}

// --- materialization ---------------------------------------------------

inline std::int64_t ratFloor(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) % denominator(r) != 0 && r < 0) --q;
    return q.convert_to<std::int64_t>();
}
inline std::int64_t ratCeil(const Rat& r) { return -ratFloor(-r); }

/// Exact member list of one cylinder inside the window. Throws
/// StructuralUnsupported when an unbounded ghost class defies the
/// bounded feasibility scan, or the candidate product exceeds the cap.
inline std::vector<ExpTuple> materialize(const Cylinder& cy, std::int64_t L, std::int64_t N,
                                         std::uint64_t productCap = 1u << 21) {
    // Narrow to the window: coordinates beyond L are zero.
    std::vector<Eq> eqs = cy.eqs;
    for (std::int64_t cnum = L; cnum < cy.support; ++cnum)
        eqs.push_back(Eq{cnum, 1, false, 0, 0, 0});
    const std::int64_t effSup = std::min(cy.support, L);

    // Union-find with affine labels, iterative path handling.
    std::map<VarId, std::tuple<VarId, Rat, Rat>> link;  // v -> (parent, a, b)
    auto ensure = [&](VarId v) {
        if (!link.count(v)) link[v] = {v, Rat(1), Rat(0)};
    };
    std::function<std::tuple<VarId, Rat, Rat>(VarId)> find = [&](VarId v) -> std::tuple<VarId, Rat, Rat> {
        ensure(v);
        auto [p, a, b] = link[v];
        if (p == v) return {v, a, b};
        auto [root, pa, pb] = find(p);
        // val(v) = a*val(p) + b, val(p) = pa*val(root) + pb
        const Rat na = a * pa, nb = a * pb + b;
        link[v] = {root, na, nb};
        return {root, na, nb};
    };

    bool empty = false;
    std::map<VarId, std::pair<std::optional<Rat>, std::optional<Rat>>> bounds;  // root -> lo/hi

    auto addBound = [&](VarId root, const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
        auto& [blo, bhi] = bounds[root];
        if (lo && (!blo || *lo > *blo)) blo = lo;
        if (hi && (!bhi || *hi < *bhi)) bhi = hi;
        if (blo && bhi && *blo > *bhi) empty = true;
    };

    // a*val(x) >= c as a bound on the root variable.
    auto applyIneqOnVar = [&](VarId x, const Rat& a, const Rat& c) {
        if (a == 0) {
            if (0 < c) empty = true;
            return;
        }
        auto [root, ra, rb] = find(x);
        const Rat coeff = a * ra;  // coeff*t >= c - a*rb
        const Rat rhs = c - a * rb;
        if (coeff == 0) {
            if (0 < rhs) empty = true;
        } else if (coeff > 0) {
            addBound(root, rhs / coeff, std::nullopt);
        } else {
            addBound(root, std::nullopt, rhs / coeff);
        }
    };

    for (const auto& eq : eqs) {
        if (empty) break;
        if (!eq.hasY) {
            // a*x = c: pin the root.
            auto [root, ra, rb] = find(eq.x);
            const Rat coeff = Rat(eq.a) * ra;
            const Rat rhs = Rat(eq.c) - Rat(eq.a) * rb;
            if (coeff == 0) {
                if (rhs != 0) empty = true;
                continue;
            }
            const Rat v = rhs / coeff;
            addBound(root, v, v);
            continue;
        }
        auto [rx, ax, bx] = find(eq.x);
        auto [ry, ay, by] = find(eq.y);
        // a*(ax*tx+bx) + b*(ay*ty+by) = c
        const Rat ca = Rat(eq.a) * ax;
        const Rat cb = Rat(eq.b) * ay;
        const Rat rhs = Rat(eq.c) - Rat(eq.a) * bx - Rat(eq.b) * by;
        if (rx == ry) {
            const Rat coeff = ca + cb;
            if (coeff == 0) {
                if (rhs != 0) empty = true;
            } else {
                const Rat v = rhs / coeff;
                addBound(rx, v, v);
            }
            continue;
        }
        if (ca != 0) {
            // tx = (rhs - cb*ty)/ca: hang rx below ry.
            link[rx] = {ry, -cb / ca, rhs / ca};
            // Re-express bounds accumulated on rx through the new root.
            auto it = bounds.find(rx);
            if (it != bounds.end()) {
                const auto [lo, hi] = it->second;
                bounds.erase(it);
                if (lo) applyIneqOnVar(rx, 1, *lo);
                if (hi) applyIneqOnVar(rx, -1, -*hi);
            }
        } else {
            // cb*ty = rhs: pin ty.
            const Rat v = rhs / cb;
            addBound(ry, v, v);
        }
    }

    if (!empty) {
        for (const auto& q : cy.ineqs) applyIneqOnVar(q.x, q.a, q.c);
        // Window bounds on every real coordinate.
        for (std::int64_t cnum = 0; cnum < effSup; ++cnum) {
            applyIneqOnVar(cnum, 1, -N);
            applyIneqOnVar(cnum, -1, -N);
        }
    }
    if (empty) return {};

    // Group members by root. The window-bound pass already registered
    // every real coordinate in [0, effSup).
    std::map<VarId, std::vector<VarId>> classes;
    std::vector<VarId> allVars;
    for (const auto& [v, entry] : link) allVars.push_back(v);
    for (VarId v : allVars) {
        auto [root, a, b] = find(v);
        classes[root].push_back(v);
    }

    struct ClassChoice {
        std::vector<VarId> coords;                       // real coordinates in class
        std::vector<std::vector<std::int64_t>> values;   // per candidate: coord values
    };
    std::vector<ClassChoice> chosen;
    std::uint64_t product = 1;

    for (auto& [root, members] : classes) {
        auto [lo, hi] = bounds.count(root) ? bounds[root]
                                           : std::pair<std::optional<Rat>, std::optional<Rat>>{};
        std::vector<VarId> coordMembers;
        for (VarId v : members)
            if (v >= 0 && v < effSup) coordMembers.push_back(v);
        if (!lo || !hi) {
            if (!coordMembers.empty())
                throw StructuralUnsupported("window-bounded class missing bounds");
            // Ghost-only class (an existential witness). Scan a bounded
            // slab anchored at whatever bound exists; divisibility
            // residues repeat, so 128 consecutive values suffice for the
            // denominators arising here.
            std::int64_t slo, shi;
            if (lo) {
                slo = ratCeil(*lo);
                shi = slo + 128;
            } else if (hi) {
                shi = ratFloor(*hi);
                slo = shi - 128;
            } else {
                slo = -64;
                shi = 64;
            }
            bool feasible = false;
            for (std::int64_t t = slo; t <= shi && !feasible; ++t) {
                bool ok = true;
                for (VarId v : members) {
                    auto [r, a, b] = find(v);
                    const Rat val = a * t + b;
                    if (denominator(val) != 1) ok = false;
                }
                if (ok) feasible = true;
            }
            if (!feasible)
                throw StructuralUnsupported("ghost class with no feasible scan point");
            continue;
        }
        const std::int64_t tlo = ratCeil(*lo), thi = ratFloor(*hi);
        ClassChoice cc;
        cc.coords = coordMembers;
        for (std::int64_t t = tlo; t <= thi; ++t) {
            bool ok = true;
            std::vector<std::int64_t> vals;
            vals.reserve(coordMembers.size());
            for (VarId v : members) {
                auto [r, a, b] = find(v);
                const Rat val = a * t + b;
                if (denominator(val) != 1) {
                    ok = false;
                    break;
                }
                if (v >= 0 && v < effSup) {
                    const std::int64_t iv = numerator(val).convert_to<std::int64_t>();
                    if (iv < -N || iv > N) {
                        ok = false;
                        break;
                    }
                    vals.push_back(iv);
                }
            }
            if (ok) cc.values.push_back(std::move(vals));
        }
        if (cc.values.empty()) return {};
        if (!coordMembers.empty()) {
            product *= cc.values.size();
            if (product > productCap)
                throw StructuralUnsupported("window candidate product exceeds cap");
            chosen.push_back(std::move(cc));
        }
        // Classes with candidates but no coordinates just attest feasibility.
    }

    // Cartesian product over classes.
    std::vector<ExpTuple> out;
    std::vector<size_t> idx(chosen.size(), 0);
    while (true) {
        std::vector<std::int64_t> entries(static_cast<size_t>(effSup), 0);
        for (size_t ci = 0; ci < chosen.size(); ++ci) {
            const auto& cc = chosen[ci];
            const auto& vals = cc.values[idx[ci]];
            for (size_t mi = 0; mi < cc.coords.size(); ++mi)
                entries[static_cast<size_t>(cc.coords[mi])] = vals[mi];
        }
        out.emplace_back(entries);
        size_t ci = 0;
        while (ci < chosen.size() && ++idx[ci] == chosen[ci].values.size()) idx[ci++] = 0;
        if (ci == chosen.size()) break;
    }
    return out;
}

}  // namespace cyl

// --- public window interface -------------------------------------------

struct WindowResult {
    std::vector<ExpTuple> members;     // sorted by (support length, lex)
    std::vector<ExpTuple> unresolved;  // budget-exhausted coordinates (scan route only)
};

namespace detail {

inline std::uint64_t windowCardinality(std::int64_t L, std::int64_t N) {
    // sum_{l<=L} (2N+1)^(l-1) * 2N  + 1, capped to avoid overflow
    const std::uint64_t base = static_cast<std::uint64_t>(2 * N + 1);
    std::uint64_t total = 1, power = 1;
    for (std::int64_t l = 1; l <= L; ++l) {
        if (power > (1ull << 40) / base) return 1ull << 40;
        power *= base;
        total += power;
    }
    return total;
}

/// Exhaustive member() scan over every canonical window tuple.
inline WindowResult windowScan(const SetExpr& e, std::int64_t L, std::int64_t N,
                               std::int64_t budget) {
    WindowResult res;
    std::vector<std::int64_t> entries;
    auto visit = [&](const ExpTuple& t) {
        Budget b{budget};
        const auto v = member(e, t, b);
        if (v.yes())
            res.members.push_back(t);
        else if (v.unknown())
            res.unresolved.push_back(t);
    };
    visit(ExpTuple{});
    for (std::int64_t len = 1; len <= L; ++len) {
        entries.assign(static_cast<size_t>(len), -N);
        while (true) {
            if (entries.back() != 0) visit(ExpTuple(entries));
            size_t i = 0;
            while (i < entries.size() && entries[i] == N) entries[i++] = -N;
            if (i == entries.size()) break;
            ++entries[i];
        }
    }
    std::sort(res.members.begin(), res.members.end());
    std::sort(res.unresolved.begin(), res.unresolved.end());
    return res;
}

/// Exact structural route; throws StructuralUnsupported.
inline WindowResult windowStructural(const SetExpr& e, std::int64_t L, std::int64_t N) {
    std::set<ExpTuple> got;
    for (const auto& cy : cyl::lower(e))
        for (auto& t : cyl::materialize(cy, L, N)) got.insert(std::move(t));
    WindowResult res;
    res.members.assign(got.begin(), got.end());
    return res;
}

constexpr std::uint64_t kScanLimit = 6'000'000;

}  // namespace detail

/// Window members, structural route first, member() scan as fallback.
inline WindowResult window(const SetExpr& e, std::int64_t L, std::int64_t N,
                           std::int64_t budget) {
    try {
        return detail::windowStructural(e, L, N);
    } catch (const StructuralUnsupported&) {
        if (detail::windowCardinality(L, N) > detail::kScanLimit)
            throw WindowError("window too large for exhaustive scan and expression has no "
                              "structural lowering");
        return detail::windowScan(e, L, N, budget);
    }
}

inline WindowResult window(const ExprPtr& e, std::int64_t L, std::int64_t N, std::int64_t budget) {
    return window(*e, L, N, budget);
}

enum class EqVerdict { Equal, Differ, Unknown };

struct EqReport {
    EqVerdict verdict;
    std::optional<ExpTuple> witness;  // smallest element of the symmetric difference
    size_t sizeA = 0;
    size_t sizeB = 0;
    size_t unresolvedA = 0;
    size_t unresolvedB = 0;
};

/// Window comparison. A witness is reported only when it is certainly in
/// the symmetric difference; unresolved residue downgrades Equal to Unknown.
inline EqReport eqOnWindow(const SetExpr& a, const SetExpr& b, std::int64_t L, std::int64_t N,
                           std::int64_t budget) {
    const WindowResult wa = window(a, L, N, budget);
    const WindowResult wb = window(b, L, N, budget);
    EqReport rep{EqVerdict::Equal, std::nullopt, wa.members.size(), wb.members.size(),
                 wa.unresolved.size(), wb.unresolved.size()};
    std::vector<ExpTuple> diff;
    std::set_symmetric_difference(wa.members.begin(), wa.members.end(), wb.members.begin(),
                                  wb.members.end(), std::back_inserter(diff));
    const std::set<ExpTuple> fuzzy(wa.unresolved.begin(), wa.unresolved.end());
    const std::set<ExpTuple> fuzzyB(wb.unresolved.begin(), wb.unresolved.end());
    for (const auto& t : diff) {
        if (fuzzy.count(t) || fuzzyB.count(t)) continue;  // might be on both sides
        rep.verdict = EqVerdict::Differ;
        rep.witness = t;
        return rep;
    }
    if (!wa.unresolved.empty() || !wb.unresolved.empty()) rep.verdict = EqVerdict::Unknown;
    return rep;
}

inline EqReport eqOnWindow(const ExprPtr& a, const ExprPtr& b, std::int64_t L, std::int64_t N,
                           std::int64_t budget) {
    return eqOnWindow(*a, *b, L, N, budget);
}

}  // namespace higman
