#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "higmankit/pattern.hpp"

using namespace higman;

namespace {

AffineForm aff(std::int64_t c0, std::vector<std::int64_t> coeffs) {
    AffineForm f;
    f.c0 = c0;
    f.coeffs = std::move(coeffs);
    return f;
}

// arity 5, forms (-k, k, 1, -1, k-1), domain k >= 2.
PatternSet towerPattern() {
    return PatternSet(5, {"k"},
                      {aff(0, {-1}), aff(0, {1}), aff(1, {0}), aff(-1, {0}), aff(-1, {1})}, {1},
                      {LinearIneq{{1}, 2}});
}

// Oracle: exhaustive parameter scan over a box wide enough to cover any
// parameter consistent with the tuple's entries.
bool memberOracle(const PatternSet& p, const ExpTuple& t, std::int64_t box) {
    const size_t d = p.paramCount();
    std::vector<std::int64_t> params(d, -box);
    while (true) {
        if (p.domainHolds(params)) {
            bool all = true;
            for (size_t j = 0; j < p.arity() && all; ++j)
                if (p.coordForms()[j].eval(params) != t.at(j)) all = false;
            if (all && t.size() <= p.arity()) return true;
        }
        size_t i = 0;
        while (i < d && params[i] == box) params[i++] = -box;
        if (i == d) return false;
        ++params[i];
    }
}

// Random pattern with d pivoted parameters; pivot coordinates are the
// first d, carrying coefficient +-1 each.
PatternSet randomPattern(std::mt19937& rng, size_t arity, size_t d) {
    std::uniform_int_distribution<std::int64_t> small(-3, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<AffineForm> forms(arity);
    std::vector<size_t> pivots(d);
    for (size_t i = 0; i < d; ++i) {
        pivots[i] = i;
        std::vector<std::int64_t> coeffs(d, 0);
        coeffs[i] = coin(rng) ? 1 : -1;
        forms[i] = aff(small(rng), std::move(coeffs));
    }
    for (size_t j = d; j < arity; ++j) {
        std::vector<std::int64_t> coeffs(d);
        for (auto& c : coeffs) c = small(rng);
        forms[j] = aff(small(rng), std::move(coeffs));
    }
    std::vector<LinearIneq> domain;
    for (size_t i = 0; i < d; ++i) {
        std::vector<std::int64_t> coeffs(d, 0);
        coeffs[i] = coin(rng) ? 1 : -1;
        domain.push_back({coeffs, small(rng)});
    }
    return PatternSet(arity, std::vector<std::string>(d, "p"), forms, pivots, domain);
}

}  // namespace

TEST_CASE("tower pattern membership") {
    const PatternSet p = towerPattern();
    for (std::int64_t k = 2; k <= 12; ++k)
        CHECK(patternMember(p, p.instantiate({k})));
    CHECK(!patternMember(p, p.instantiate({1})));  // outside the domain
    CHECK(!patternMember(p, ExpTuple()));
    CHECK(!patternMember(p, ExpTuple({-2, 2, 1, -1, 1, 7})));  // too long
    CHECK(!patternMember(p, ExpTuple({-2, 2, 1, -1, 2})));     // broken link
}

TEST_CASE("membership agrees with the parameter-scan oracle") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::int64_t> paramD(-5, 5);
    std::uniform_int_distribution<std::int64_t> entryD(-6, 6);
    std::uniform_int_distribution<size_t> arityD(1, 5);
    for (int trial = 0; trial < 400; ++trial) {
        const size_t d = 1 + static_cast<size_t>(trial % 2);
        const size_t arity = std::max(arityD(rng), d);
        const PatternSet p = randomPattern(rng, arity, d);
        // Near-hit: instantiate, then sometimes perturb one coordinate.
        std::vector<std::int64_t> params(d);
        for (auto& x : params) x = paramD(rng);
        ExpTuple t = p.instantiate(params);
        if (trial % 3 == 0) t = t.with(static_cast<size_t>(rng() % arity), entryD(rng));
        CHECK(patternMember(p, t) == memberOracle(p, t, 40));
        // Unstructured random tuple.
        std::vector<std::int64_t> e(arity);
        for (auto& x : e) x = entryD(rng);
        const ExpTuple u{std::move(e)};
        CHECK(patternMember(p, u) == memberOracle(p, u, 40));
    }
}

TEST_CASE("pivot validation") {
    CHECK_THROWS_AS(PatternSet(2, {"k"}, {aff(0, {2}), aff(0, {0})}, {0}, {}), PatternError);
    CHECK_THROWS_AS(PatternSet(2, {"k", "m"},
                               {aff(0, {1, 1}), aff(0, {0, 1})}, {0, 1}, {}),
                    PatternError);
    CHECK_THROWS_AS(PatternSet(2, {"k"}, {aff(0, {1})}, {0}, {}), PatternError);
    CHECK_THROWS_AS(PatternSet(2, {"k"}, {aff(0, {1}), aff(0, {0})}, {5}, {}), PatternError);
}

TEST_CASE("pattern file round trip") {
    const PatternSet p = towerPattern();
    const std::string text = printPatternFile(p);
    const PatternSet q = parsePatternFile(text);
    CHECK(q.arity() == p.arity());
    CHECK(q.pivots() == p.pivots());
    for (std::int64_t k = 0; k <= 8; ++k) {
        CHECK(patternMember(q, p.instantiate({k})) == patternMember(p, p.instantiate({k})));
    }
    CHECK(printPatternFile(q) == text);
}

TEST_CASE("pattern file parsing") {
    const std::string text =
        "arity 3\n"
        "param k pivot 0 domain k>=2\n"
        "coord 0 = k\n"
        "coord 1 = 2*k - 1\n";
    const PatternSet p = parsePatternFile(text);
    CHECK(p.arity() == 3);
    CHECK(p.instantiate({3}) == ExpTuple({3, 5, 0}));
    CHECK(patternMember(p, ExpTuple({3, 5})));
    CHECK(!patternMember(p, ExpTuple({1, 1})));  // domain k >= 2
}

TEST_CASE("affine expression parsing") {
    const auto f = detail::parseAffine("2*k - 3*m + 5", {"k", "m"});
    CHECK(f.eval({1, 1}) == 4);
    CHECK(f.eval({0, 0}) == 5);
    const auto g = detail::parseAffine("-(k - 1)", {"k"});
    CHECK(g.eval({4}) == -3);
    const auto h = detail::parseAffine("k", {"k"});
    CHECK(h.eval({9}) == 9);
    CHECK_THROWS_AS(detail::parseAffine("k*m", {"k", "m"}), PatternError);
    CHECK_THROWS_AS(detail::parseAffine("2*", {"k"}), PatternError);
    CHECK_THROWS_AS(detail::parseAffine("q", {"k"}), PatternError);
}
