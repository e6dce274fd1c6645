// Fair enumeration of SetExpr denotations under a fixed stage schedule,
// so stream prefixes are deterministic and testable.
//
// Stage s:
//   Lit          everything at stage 0
//   Iota/Diag/Half   values with |v| = s (positive before negative)
//   Pattern      parameter points with Chebyshev norm s, inside the domain
//   Union        alternates the children's stage-s items
//   Meet         items newly seen in both children's first s stages
//   unary nodes  map the child's stage-s items
//   Stride/Prod  pair child stages by Cantor diagonal (stage sums = s)
//
// Duplicates are permitted; every member appears at a finite position.

#pragma once

#include <optional>
#include <set>
#include <vector>

#include "higmankit/setexpr.hpp"

namespace higman {

class Enumerator {
public:
    explicit Enumerator(ExprPtr root) : root_(std::move(root)), top_(build(root_.get())) {}

    /// Next stream item, or nullopt when the denotation is exhausted.
    std::optional<ExpTuple> next() {
        while (true) {
            const auto& items = stage(*top_, stage_);
            if (pos_ < items.size()) return items[pos_++];
            const auto done = doneStage(*top_);
            if (done && stage_ >= *done) return std::nullopt;
            ++stage_;
            pos_ = 0;
        }
    }

    std::vector<ExpTuple> take(size_t n) {
        std::vector<ExpTuple> out;
        out.reserve(n);
        while (out.size() < n) {
            auto t = next();
            if (!t) break;
            out.push_back(std::move(*t));
        }
        return out;
    }

private:
    struct Node {
        const SetExpr* expr;
        std::vector<std::unique_ptr<Node>> kids;
        std::vector<std::vector<ExpTuple>> stages;  // cache of computed stages
        // Meet bookkeeping.
        std::set<ExpTuple> seenA, seenB, emitted;
    };

    static std::unique_ptr<Node> build(const SetExpr* e) {
        auto n = std::make_unique<Node>();
        n->expr = e;
        for (const auto& c : e->children) n->kids.push_back(build(c.get()));
        return n;
    }

    /// Smallest stage after which the node yields nothing new, if known.
    static std::optional<size_t> doneStage(const Node& n) {
        switch (n.expr->kind) {
            case NodeKind::Lit:
                return 0;
            case NodeKind::Iota:
            case NodeKind::Diag:
            case NodeKind::Half:
            case NodeKind::Pattern:
                return std::nullopt;
            case NodeKind::Union:
            case NodeKind::Meet: {
                const auto a = doneStage(*n.kids[0]);
                const auto b = doneStage(*n.kids[1]);
                if (a && b) return std::max(*a, *b);
                return std::nullopt;
            }
            case NodeKind::Prod: {
                const auto a = doneStage(*n.kids[0]);
                const auto b = doneStage(*n.kids[1]);
                if (a && b) return *a + *b;
                return std::nullopt;
            }
            case NodeKind::Stride: {
                const auto a = doneStage(*n.kids[0]);
                if (a) return static_cast<size_t>(n.expr->m) * *a;
                return std::nullopt;
            }
            default: {
                return doneStage(*n.kids[0]);
            }
        }
    }

    const std::vector<ExpTuple>& stage(Node& n, size_t s) {
        while (n.stages.size() <= s) n.stages.push_back(computeStage(n, n.stages.size()));
        return n.stages[s];
    }

    std::vector<ExpTuple> computeStage(Node& n, size_t s) {
        const SetExpr& e = *n.expr;
        const auto si = static_cast<std::int64_t>(s);
        std::vector<ExpTuple> out;
        switch (e.kind) {
            case NodeKind::Lit:
                if (s == 0) out = e.lit;
                break;
            case NodeKind::Iota:
                if (s == 0)
                    out.push_back(ExpTuple{});
                else {
                    out.push_back(ExpTuple({si}));
                    out.push_back(ExpTuple({-si}));
                }
                break;
            case NodeKind::Diag:
                if (s == 0)
                    out.push_back(ExpTuple{});
                else {
                    out.push_back(ExpTuple({si, si}));
                    out.push_back(ExpTuple({-si, -si}));
                }
                break;
            case NodeKind::Half: {
                auto admit = [&](std::int64_t v) {
                    if (e.geq ? v >= e.c : v <= e.c) out.push_back(v == 0 ? ExpTuple{} : ExpTuple({v}));
                };
                if (s == 0)
                    admit(0);
                else {
                    admit(si);
                    admit(-si);
                }
                break;
            }
            case NodeKind::Pattern: {
                const PatternSet& p = *e.pattern;
                const size_t d = p.paramCount();
                if (d == 0) {
                    if (s == 0 && p.domainHolds({})) out.push_back(p.instantiate({}));
                    break;
                }
                std::vector<std::int64_t> pt(d, -si);
                while (true) {
                    std::int64_t norm = 0;
                    for (auto v : pt) norm = std::max(norm, v < 0 ? -v : v);
                    if (norm == si && p.domainHolds(pt)) out.push_back(p.instantiate(pt));
                    size_t i = 0;
                    while (i < d && pt[i] == si) pt[i++] = -si;
                    if (i == d) break;
                    ++pt[i];
                }
                break;
            }
            case NodeKind::Union: {
                const auto& a = stage(*n.kids[0], s);
                const auto& b = stage(*n.kids[1], s);
                for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
                    if (i < a.size()) out.push_back(a[i]);
                    if (i < b.size()) out.push_back(b[i]);
                }
                break;
            }
            case NodeKind::Meet: {
                const auto& a = stage(*n.kids[0], s);
                const auto& b = stage(*n.kids[1], s);
                for (const auto& t : a) n.seenA.insert(t);
                for (const auto& t : b) n.seenB.insert(t);
                for (const auto& t : a)
                    if (n.seenB.count(t) && n.emitted.insert(t).second) out.push_back(t);
                for (const auto& t : b)
                    if (n.seenA.count(t) && n.emitted.insert(t).second) out.push_back(t);
                break;
            }
            case NodeKind::Shift:
                for (const auto& t : stage(*n.kids[0], s)) out.push_back(tupleShiftRight(t));
                break;
            case NodeKind::Swap01:
                for (const auto& t : stage(*n.kids[0], s)) out.push_back(tupleSwap01(t));
                break;
            case NodeKind::Neg0:
                for (const auto& t : stage(*n.kids[0], s)) out.push_back(t.with(0, -t.at(0)));
                break;
            case NodeKind::Zero0:
                for (const auto& t : stage(*n.kids[0], s))
                    if (t.at(0) == 0) out.push_back(t);
                break;
            case NodeKind::Proj0:
                for (const auto& t : stage(*n.kids[0], s)) out.push_back(t.with(0, 0));
                break;
            case NodeKind::AddC:
                for (const auto& t : stage(*n.kids[0], s)) out.push_back(t.with(0, t.at(0) + e.c));
                break;
            case NodeKind::MulC:
                for (const auto& t : stage(*n.kids[0], s)) out.push_back(t.with(0, t.at(0) * e.c));
                break;
            case NodeKind::Perm:
                for (const auto& t : stage(*n.kids[0], s)) out.push_back(tuplePermApply(t, e.perm));
                break;
            case NodeKind::Stride: {
                const auto m = static_cast<size_t>(e.m);
                // Compositions of s into m parts, lexicographic.
                std::vector<size_t> parts(m, 0);
                parts[0] = s;
                while (true) {
                    std::vector<const std::vector<ExpTuple>*> lists(m);
                    for (size_t j = 0; j < m; ++j) lists[j] = &stage(*n.kids[0], parts[j]);
                    bool nonempty = true;
                    for (size_t j = 0; j < m; ++j) nonempty = nonempty && !lists[j]->empty();
                    if (nonempty) {
                        std::vector<size_t> idx(m, 0);
                        while (true) {
                            std::vector<ExpTuple> chosen;
                            chosen.reserve(m);
                            for (size_t j = 0; j < m; ++j) chosen.push_back((*lists[j])[idx[j]]);
                            out.push_back(tupleInterleave(chosen));
                            size_t j = 0;
                            while (j < m && ++idx[j] == lists[j]->size()) idx[j++] = 0;
                            if (j == m) break;
                        }
                    }
                    // Next composition: move one unit from the first
                    // nonzero part into the part to its right.
                    size_t j = 0;
                    while (j < m && parts[j] == 0) ++j;
                    if (j + 1 >= m) break;
                    const size_t head = parts[j];
                    parts[j] = 0;
                    ++parts[j + 1];
                    parts[0] = head - 1;
                }
                break;
            }
            case NodeKind::Prod: {
                for (size_t i = 0; i <= s; ++i) {
                    const auto& a = stage(*n.kids[0], i);
                    const auto& b = stage(*n.kids[1], s - i);
                    for (const auto& x : a) {
                        if (x.size() > static_cast<size_t>(e.m)) continue;
                        for (const auto& y : b) out.push_back(tupleConcatAt(x, e.m, y));
                    }
                }
                break;
            }
        }
        return out;
    }

    ExprPtr root_;
    std::unique_ptr<Node> top_;
    size_t stage_ = 0;
    size_t pos_ = 0;
};

}  // namespace higman
