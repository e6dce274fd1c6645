// Concrete group families: the rationals under addition, free abelian
// groups, and quasicyclic groups. Each family carries a presentation,
// tuple pattern sets, and an exact-arithmetic model for relator checks.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "higmankit/presentation.hpp"
#include "higmankit/setexpr.hpp"

namespace higman {

using Rat = boost::multiprecision::cpp_rational;

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GroupFamily {
    std::string name;
    Presentation presentation;
    std::optional<PatternSet> patternPaper;
    std::optional<PatternSet> patternStd;
    std::function<std::vector<Rat>(std::int64_t)> model;  // generator index -> value
    bool modZ = false;                                    // values live in Q/Z
};

namespace detail {

inline AffineForm aff(std::int64_t c0, std::int64_t ck) {
    AffineForm f;
    f.c0 = c0;
    f.coeffs = {ck};
    return f;
}

inline Rat factorial(std::int64_t n) {
    Rat r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Rat fracPart(const Rat& v) {
    using boost::multiprecision::cpp_int;
    const cpp_int n = numerator(v), d = denominator(v);
    cpp_int m = n % d;
    if (m < 0) m += d;
    return Rat(m, d);
}

}  // namespace detail

/// Q = <a_1, a_2, ... | a_k^k = a_{k-1}, k >= 2>, with a_k modeled as 1/k!.
/// Carries two tuple families: the published arity-19 one (opaque data)
/// and the arity-5 one derived via the standard substitution scheme.
inline GroupFamily buildQ() {
    using detail::aff;
    GroupFamily g;
    g.name = "q";
    g.presentation = parsePresentation("gens countable\nfamily tower from 2: a{k}^{k} a{k-1}^-1\n");
    std::vector<AffineForm> paperForms;
    const std::vector<std::pair<std::int64_t, std::int64_t>> pf = {
        {1, 0},  {0, -1}, {-1, 0}, {0, -1}, {-1, 0}, {0, 1},  {1, 0},
        {0, 1},  {1, 0},  {1, 0},  {-1, 0}, {1, -1}, {-1, 0}, {-1, 0},
        {1, 0},  {-1, 1}, {1, 0},  {-1, 1}, {-1, 0}};
    for (const auto& [c0, ck] : pf) paperForms.push_back(aff(c0, ck));
    g.patternPaper =
        PatternSet(19, {"k"}, paperForms, {1}, {LinearIneq{{1}, 2}});
    g.patternStd = PatternSet(
        5, {"k"}, {aff(0, -1), aff(0, 1), aff(1, 0), aff(-1, 0), aff(-1, 1)}, {1},
        {LinearIneq{{1}, 2}});
    g.model = [](std::int64_t k) { return std::vector<Rat>{Rat(1) / detail::factorial(k)}; };
    return g;
}

/// Z^n = <a_1..a_n | [a_i, a_j], i < j>, with a_i the i-th unit vector.
inline GroupFamily buildZn(std::int64_t n) {
    if (n < 1) throw CatalogError("zn: n must be >= 1");
    GroupFamily g;
    g.name = "zn." + std::to_string(n);
    g.presentation.genCount = n;
    for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t j = i + 1; j <= n; ++j) {
            const Gen ai{"a" + std::to_string(i)}, aj{"a" + std::to_string(j)};
            g.presentation.relators.push_back(
                reduce(alphabetAIndexed(), {{ai, 1}, {aj, 1}, {ai, -1}, {aj, -1}}));
        }
    g.model = [n](std::int64_t k) {
        if (k < 1 || k > n) throw CatalogError("zn model: generator index out of range");
        std::vector<Rat> v(static_cast<size_t>(n), 0);
        v[static_cast<size_t>(k - 1)] = 1;
        return v;
    };
    return g;
}

/// C_{p^inf} = <a_1, a_2, ... | a_1^p = 1, a_{k+1}^p = a_k>, with a_k
/// modeled as p^{-k} in Q/Z. p must be prime.
inline GroupFamily buildQuasicyclic(std::int64_t p) {
    if (p < 2) throw CatalogError("cpinf: p must be prime");
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw CatalogError("cpinf: p must be prime");
    using detail::aff;
    GroupFamily g;
    g.name = "cpinf." + std::to_string(p);
    g.presentation = parsePresentation(
        "gens countable\nrel a1^" + std::to_string(p) +
        "\nfamily tower from 1: a{k+1}^{" + std::to_string(p) + "} a{k}^-1\n");
    // a_{k+1}^p a_k^-1 rewrites to b^-(k+1) c^p b c^-1 b^k.
    g.patternStd = PatternSet(
        5, {"k"}, {aff(-1, -1), aff(p, 0), aff(1, 0), aff(-1, 0), aff(0, 1)}, {4},
        {LinearIneq{{1}, 1}});
    g.model = [p](std::int64_t k) {
        Rat v = 1;
        for (std::int64_t i = 0; i < k; ++i) v /= p;
        return std::vector<Rat>{v};
    };
    g.modZ = true;
    return g;
}

struct ModelCheckItem {
    std::string source;
    std::optional<std::int64_t> k;
    bool zero = false;
    std::vector<Rat> value;
};

struct ModelCheckReport {
    std::vector<ModelCheckItem> items;
    size_t failures = 0;
    bool ok() const { return failures == 0; }
};

namespace detail {

inline ModelCheckItem checkWord(const GroupFamily& fam, std::string source,
                                std::optional<std::int64_t> k, const Word& w) {
    ModelCheckItem item{std::move(source), k, true, {}};
    for (const auto& syl : w.syllables()) {
        const auto v = fam.model(syl.gen.index());
        if (item.value.size() < v.size()) item.value.resize(v.size(), 0);
        for (size_t i = 0; i < v.size(); ++i) item.value[i] += Rat(syl.exp) * v[i];
    }
    if (fam.modZ)
        for (auto& x : item.value) x = fracPart(x);
    for (const auto& x : item.value)
        if (x != 0) item.zero = false;
    return item;
}

}  // namespace detail

/// Evaluates every relator and every family member up to kMax in the
/// exact model. All target groups are abelian, so a word's value is the
/// exponent-weighted sum of generator values.
inline ModelCheckReport modelCheck(const GroupFamily& fam, std::int64_t kMax) {
    ModelCheckReport rep;
    for (const auto& r : fam.presentation.relators)
        rep.items.push_back(detail::checkWord(fam, "rel", std::nullopt, r));
    for (const auto& f : fam.presentation.families)
        for (std::int64_t k = f.domainStart; k <= kMax; ++k)
            rep.items.push_back(detail::checkWord(fam, f.name, k, f.at(k)));
    for (const auto& it : rep.items)
        if (!it.zero) ++rep.failures;
    return rep;
}

/// The embedding's distinguished F_3 elements for a coded tuple t:
/// b_f conjugates b-powers along the support of t, and a_f = b_f^-1 a b_f.
struct HigmanWords {
    Word bf;
    Word af;
};

inline HigmanWords higmanWords(const ExpTuple& t) {
    const Alphabet& abc = alphabetABC();
    std::vector<Syllable> raw;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t.at(i) == 0) continue;
        const auto ii = static_cast<std::int64_t>(i);
        raw.push_back({Gen{"c"}, -ii});
        raw.push_back({Gen{"b"}, t.at(i)});
        raw.push_back({Gen{"c"}, ii});
    }
    const Word bf = reduce(abc, raw);
    const Word af = mul(mul(inv(bf), reduce(abc, {{Gen{"a"}, 1}})), bf);
    return {bf, af};
}

/// Resolves `q`, `zn.<n>`, `cpinf.<p>` (used by the CLI).
inline GroupFamily catalogFamily(const std::string& name) {
    if (name == "q" || name == "q.paper" || name == "q.std") return buildQ();
    if (name.rfind("zn.", 0) == 0) return buildZn(std::stoll(name.substr(3)));
    if (name.rfind("cpinf.", 0) == 0) return buildQuasicyclic(std::stoll(name.substr(6)));
    throw CatalogError("unknown catalog family: " + name);
}

/// Resolves a catalog name to a set expression:
///   q.paper   pattern with the published arity-19 tuple family
///   q.std     pattern derived via the standard scheme
///   zn.<n>    literal set of coded commutator relators
///   cpinf.<p> base relator tuple joined with the tower pattern
inline ExprPtr catalogExpr(const std::string& name) {
    if (name == "q.paper") return mkPattern(*buildQ().patternPaper, name);
    if (name == "q.std") return mkPattern(*buildQ().patternStd, name);
    if (name.rfind("zn.", 0) == 0) {
        const GroupFamily g = catalogFamily(name);
        std::vector<ExpTuple> items;
        for (const auto& it : rewriteFamily(g.presentation, stdScheme(), 0))
            items.push_back(it.code);
        return mkLit(std::move(items));
    }
    if (name.rfind("cpinf.", 0) == 0) {
        const GroupFamily g = catalogFamily(name);
        const std::int64_t p = std::stoll(name.substr(6));
        return mkUnion(mkLit({ExpTuple({-1, p, 1})}), mkPattern(*g.patternStd, name));
    }
    throw CatalogError("unknown catalog name: " + name);
}

}  // namespace higman
