// Rewriting countably-generated presentations into 2-generator form:
// a substitution scheme sends each generator a_i to a word over {b,c},
// relators are rewritten syllable by syllable and coded as tuples.

#pragma once

#include <functional>
#include <optional>
#include <sstream>

#include "higmankit/codec.hpp"
#include "higmankit/pattern.hpp"
#include "higmankit/word.hpp"

namespace higman {

struct PresentationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Relator family k |-> word, given as a syllable template whose
/// generator indices and exponents are affine expressions in k.
struct FamilyTemplate {
    std::string name;
    std::int64_t domainStart = 1;
    std::string genLetter = "a";
    std::vector<std::pair<AffineForm, AffineForm>> syllables;  // (index form, exponent form)

    Word at(std::int64_t k) const {
        std::vector<Syllable> raw;
        for (const auto& [idxForm, expForm] : syllables) {
            const std::int64_t idx = idxForm.eval({k});
            if (idx < 1)
                throw PresentationError("family " + name + " at k=" + std::to_string(k) +
                                        ": generator index " + std::to_string(idx) + " < 1");
            raw.push_back({Gen{genLetter + std::to_string(idx)}, expForm.eval({k})});
        }
        return reduce(alphabetAIndexed(), raw);
    }
};

struct Presentation {
    std::optional<std::int64_t> genCount;  // nullopt: countably many
    std::vector<Word> relators;
    std::vector<FamilyTemplate> families;
};

/// i |-> word over {b,c}; total on positive integers.
struct SubstScheme {
    std::function<Word(std::int64_t)> map;
};

/// a_i |-> b^-i c b^i. These words freely generate an infinite-rank
/// subgroup of F_2, and keep coded relators affine in family parameters.
inline SubstScheme stdScheme() {
    return SubstScheme{[](std::int64_t i) {
        return reduce(alphabetBC(), {{Gen{"b"}, -i}, {Gen{"c"}, 1}, {Gen{"b"}, i}});
    }};
}

/// Substitute each syllable a_i^e by scheme(i)^e and reduce.
inline Word rewriteRelator(const Word& r, const SubstScheme& s) {
    Word acc = identity(alphabetBC());
    for (const auto& syl : r.syllables()) {
        const int idx = syl.gen.index();
        if (idx < 1)
            throw PresentationError("relator generator " + syl.gen.name +
                                    " has no index in the scheme domain");
        acc = mul(acc, pow(s.map(idx), syl.exp));
    }
    return acc;
}

struct RewriteItem {
    std::string source;           // "rel" or the family name
    std::optional<std::int64_t> k;
    Word word;
    ExpTuple code;

    RewriteItem(std::string src, std::optional<std::int64_t> kk, Word w)
        : source(std::move(src)), k(kk), word(std::move(w)), code(encode(word)) {}
};

/// Rewrites every plain relator, then every family member for k in
/// [domainStart, kMax], in declaration order.
inline std::vector<RewriteItem> rewriteFamily(const Presentation& p, const SubstScheme& s,
                                              std::int64_t kMax) {
    std::vector<RewriteItem> out;
    for (const auto& r : p.relators)
        out.emplace_back("rel", std::nullopt, rewriteRelator(r, s));
    for (const auto& fam : p.families)
        for (std::int64_t k = fam.domainStart; k <= kMax; ++k)
            out.emplace_back(fam.name, k, rewriteRelator(fam.at(k), s));
    return out;
}

namespace detail {

// Template token: <letter>[{expr}|digits][^({expr}|int)].
inline std::pair<AffineForm, AffineForm> parseTemplateSyllable(const std::string& tok,
                                                               std::string& letterOut) {
    size_t i = 0;
    if (i >= tok.size() || !std::islower(static_cast<unsigned char>(tok[i])))
        throw PresentationError("template syllable must start with a generator letter: " + tok);
    const std::string letter(1, tok[i]);
    if (!letterOut.empty() && letterOut != letter)
        throw PresentationError("template mixes generator letters: " + tok);
    letterOut = letter;
    ++i;
    auto readBraced = [&]() {
        if (tok[i] != '{') throw PresentationError("expected '{' in " + tok);
        const size_t start = ++i;
        int depth = 1;
        while (i < tok.size() && depth > 0) {
            if (tok[i] == '{') ++depth;
            if (tok[i] == '}') --depth;
            ++i;
        }
        if (depth != 0) throw PresentationError("unbalanced braces in " + tok);
        return tok.substr(start, i - start - 1);
    };
    AffineForm idxForm;
    if (i < tok.size() && tok[i] == '{') {
        idxForm = parseAffine(readBraced(), {"k"});
    } else {
        const size_t start = i;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
        if (i == start) throw PresentationError("expected generator index in " + tok);
        idxForm.c0 = std::stoll(tok.substr(start, i - start));
        idxForm.coeffs = {0};
    }
    AffineForm expForm;
    expForm.c0 = 1;
    expForm.coeffs = {0};
    if (i < tok.size()) {
        if (tok[i] != '^') throw PresentationError("expected '^' in " + tok);
        ++i;
        if (i < tok.size() && tok[i] == '{') {
            expForm = parseAffine(readBraced(), {"k"});
        } else {
            expForm.c0 = std::stoll(tok.substr(i));
            i = tok.size();
        }
    }
    if (i != tok.size()) throw PresentationError("trailing characters in " + tok);
    idxForm.coeffs.resize(1, 0);
    expForm.coeffs.resize(1, 0);
    return {idxForm, expForm};
}

}  // namespace detail

/// Line-oriented presentation format:
///   gens <n|countable>
///   rel <word>
///   family <name> from <k0>: <word-template>
inline Presentation parsePresentation(const std::string& text) {
    Presentation p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "gens") {
            std::string v;
            ls >> v;
            if (v == "countable")
                p.genCount = std::nullopt;
            else
                p.genCount = std::stoll(v);
        } else if (kw == "rel") {
            std::string rest;
            std::getline(ls, rest);
            p.relators.push_back(parseWord(rest, alphabetAIndexed()));
        } else if (kw == "family") {
            FamilyTemplate fam;
            std::string fromKw;
            char colon;
            if (!(ls >> fam.name >> fromKw >> fam.domainStart >> colon) || fromKw != "from" ||
                colon != ':')
                throw PresentationError("family: expected `family <name> from <k0>: <template>`");
            std::string tok;
            std::string letter;
            while (ls >> tok) fam.syllables.push_back(detail::parseTemplateSyllable(tok, letter));
            if (!letter.empty()) fam.genLetter = letter;
            p.families.push_back(std::move(fam));
        } else {
            throw PresentationError("unknown presentation directive: " + kw);
        }
    }
    return p;
}

}  // namespace higman
