#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "higmankit/catalog.hpp"
#include "higmankit/compile.hpp"

using namespace higman;

namespace {

AffineForm aff(std::int64_t c0, std::vector<std::int64_t> coeffs) {
    AffineForm f;
    f.c0 = c0;
    f.coeffs = std::move(coeffs);
    return f;
}

// Random pivoted-affine pattern where every non-pivot coordinate depends
// on at most one parameter (the compilable class).
PatternSet randomCompilable(std::mt19937& rng, size_t arity, size_t d) {
    std::uniform_int_distribution<std::int64_t> small(-2, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<AffineForm> forms(arity);
    std::vector<size_t> pivots(d);
    for (size_t i = 0; i < d; ++i) {
        pivots[i] = i;
        std::vector<std::int64_t> coeffs(d, 0);
        coeffs[i] = coin(rng) ? 1 : -1;
        forms[i] = aff(small(rng), std::move(coeffs));
    }
    std::uniform_int_distribution<size_t> which(0, d - 1);
    for (size_t j = d; j < arity; ++j) {
        std::vector<std::int64_t> coeffs(d, 0);
        if (coin(rng)) coeffs[which(rng)] = small(rng);
        forms[j] = aff(small(rng), std::move(coeffs));
    }
    std::vector<LinearIneq> domain;
    for (size_t i = 0; i < d; ++i) {
        std::vector<std::int64_t> lo(d, 0), hi(d, 0);
        lo[i] = 1;
        hi[i] = -1;
        domain.push_back({lo, small(rng) - 2});  // p_i >= c
        domain.push_back({hi, small(rng) - 2});  // p_i <= -c
    }
    return PatternSet(arity, std::vector<std::string>(d, "p"), forms, pivots, domain);
}

}  // namespace

TEST_CASE("compiled tower pattern matches on its window") {
    const auto q = buildQ();
    const auto e = compilePattern(*q.patternStd);
    const auto rep = verifyCompilation(*q.patternStd, e, 5, 10, 1000000);
    CHECK(rep.eq.verdict == EqVerdict::Equal);
    CHECK(rep.eq.sizeA == 9);  // k = 2..10
}

TEST_CASE("compiled published pattern matches on the large window") {
    const auto q = buildQ();
    const auto e = compilePattern(*q.patternPaper);
    const auto rep = verifyCompilation(*q.patternPaper, e, 19, 10, 1000000);
    CHECK(rep.eq.verdict == EqVerdict::Equal);
    CHECK(rep.eq.sizeA == 9);
}

TEST_CASE("compiled expressions use only the algebra") {
    const auto q = buildQ();
    const auto e = compilePattern(*q.patternStd);
    for (const auto& [name, n] : exprStats(*e).histogram)
        CHECK(name != nodeName(NodeKind::Pattern));
}

TEST_CASE("synthetic pivoted-affine patterns compile correctly") {
    std::mt19937 rng(515151);
    int done = 0;
    while (done < 20) {
        const size_t d = 1 + static_cast<size_t>(done % 2);
        const size_t arity = d + 1 + static_cast<size_t>(rng() % (6 - d));
        const PatternSet p = randomCompilable(rng, arity, d);
        const auto e = compilePattern(p);
        const auto rep = verifyCompilation(p, e, static_cast<std::int64_t>(arity), 8, 2000000);
        CAPTURE(printPatternFile(p));
        REQUIRE(rep.eq.verdict == EqVerdict::Equal);
        ++done;
    }
}

TEST_CASE("degenerate patterns") {
    // Empty domain compiles to the empty set.
    const PatternSet empty(2, {"k"}, {aff(0, {1}), aff(0, {0})}, {0},
                           {LinearIneq{{1}, 5}, LinearIneq{{-1}, -2}});  // 5 <= k <= 2
    const auto e = compilePattern(empty);
    CHECK(window(e, 2, 8, 1000).members.empty());
    // Arity zero: the set containing only the zero tuple.
    const PatternSet zero(0, {}, {}, {}, {});
    const auto z = compilePattern(zero);
    CHECK(member(z, ExpTuple(), 100).yes());
    CHECK(member(z, ExpTuple({1}), 100).no());
    // Arity one, pure constant.
    const PatternSet c1(1, {}, {aff(4, {})}, {}, {});
    const auto e1 = compilePattern(c1);
    CHECK(member(e1, ExpTuple({4}), 100).yes());
    CHECK(member(e1, ExpTuple({5}), 100).no());
}

TEST_CASE("multi-parameter coordinate forms are rejected") {
    const PatternSet p(3, {"k", "m"},
                       {aff(0, {1, 0}), aff(0, {0, 1}), aff(0, {1, 1})}, {0, 1}, {});
    CHECK_THROWS_AS(compilePattern(p), UnsupportedPattern);
    const PatternSet q(2, {"k", "m"}, {aff(0, {1, 0}), aff(0, {0, 1})}, {0, 1},
                       {LinearIneq{{1, 1}, 0}});
    CHECK_THROWS_AS(compilePattern(q), UnsupportedPattern);
}

TEST_CASE("single-coordinate patterns compile to base sets") {
    const PatternSet p(1, {"k"}, {aff(0, {1})}, {0}, {LinearIneq{{1}, 3}});
    const auto e = compilePattern(p);
    CHECK(member(e, ExpTuple({3}), 100).yes());
    CHECK(member(e, ExpTuple({2}), 100).no());
    CHECK(member(e, ExpTuple({1, 1}), 100).no());
}
