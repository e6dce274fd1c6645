// Free-group word arithmetic over named alphabets.
//
// Words are immutable values in freely reduced, merged-syllable form:
// a list of (generator, nonzero exponent) pairs with no two adjacent
// syllables sharing a generator. The empty list is the identity.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace higman {

struct WordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generator symbol. Names match [a-z]([0-9]+)?, e.g. "b", "c", "a17".
struct Gen {
    std::string name;

    friend bool operator==(const Gen&, const Gen&) = default;
    friend auto operator<=>(const Gen&, const Gen&) = default;

    // Index suffix, or -1 when the name is a bare letter.
    int index() const {
        if (name.size() < 2) return -1;
        return std::stoi(name.substr(1));
    }
};

/// Declared alphabet: either a finite symbol list or an indexed family
/// prefix "a" covering a1, a2, ... (the countable case).
class Alphabet {
public:
    static Alphabet finite(std::vector<std::string> names) {
        Alphabet a;
        a.names_ = std::move(names);
        return a;
    }
    static Alphabet indexed(std::string prefix) {
        Alphabet a;
        a.prefix_ = std::move(prefix);
        a.indexed_ = true;
        return a;
    }

    bool contains(const Gen& g) const {
        if (indexed_) {
            if (g.name.size() < prefix_.size() + 1 ||
                g.name.compare(0, prefix_.size(), prefix_) != 0)
                return false;
            for (size_t i = prefix_.size(); i < g.name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(g.name[i]))) return false;
            return g.name[prefix_.size()] != '0';
        }
        return std::find(names_.begin(), names_.end(), g.name) != names_.end();
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

    bool indexed() const { return indexed_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& prefix() const { return prefix_; }

private:
    std::vector<std::string> names_;
    std::string prefix_;
    bool indexed_ = false;
};

inline const Alphabet& alphabetBC() {
    static const Alphabet a = Alphabet::finite({"b", "c"});
    return a;
}
inline const Alphabet& alphabetABC() {
    static const Alphabet a = Alphabet::finite({"a", "b", "c"});
    return a;
}
inline const Alphabet& alphabetAIndexed() {
    static const Alphabet a = Alphabet::indexed("a");
    return a;
}

struct Syllable {
    Gen gen;
    std::int64_t exp;  // nonzero

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

class Word {
public:
    explicit Word(const Alphabet& alphabet) : alphabet_(&alphabet) {}

    const Alphabet& alphabet() const { return *alphabet_; }
    const std::vector<Syllable>& syllables() const { return syllables_; }
    bool isIdentity() const { return syllables_.empty(); }

    friend bool operator==(const Word& u, const Word& v) {
        return *u.alphabet_ == *v.alphabet_ && u.syllables_ == v.syllables_;
    }

private:
    friend Word reduce(const Alphabet&, const std::vector<Syllable>&);
    const Alphabet* alphabet_;
    std::vector<Syllable> syllables_;
};

/// Free reduction: drop zero exponents, merge adjacent equal generators,
/// cancel recursively. The result is the unique reduced merged form.
inline Word reduce(const Alphabet& alphabet, const std::vector<Syllable>& raw) {
    Word w(alphabet);
    auto& out = w.syllables_;
    out.reserve(raw.size());
    for (const auto& s : raw) {
        if (!alphabet.contains(s.gen))
            throw WordError("unknown generator symbol: " + s.gen.name);
        if (s.exp == 0) continue;
        if (!out.empty() && out.back().gen == s.gen) {
            out.back().exp += s.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(s);
        }
    }
    return w;
}

inline Word identity(const Alphabet& alphabet) { return reduce(alphabet, {}); }

inline Word mul(const Word& u, const Word& v) {
    if (!(u.alphabet() == v.alphabet()))
        throw WordError("alphabet mismatch in mul");
    std::vector<Syllable> raw = u.syllables();
    raw.insert(raw.end(), v.syllables().begin(), v.syllables().end());
    return reduce(u.alphabet(), raw);
}

inline Word inv(const Word& w) {
    std::vector<Syllable> raw(w.syllables().rbegin(), w.syllables().rend());
    for (auto& s : raw) s.exp = -s.exp;
    return reduce(w.alphabet(), raw);
}

inline Word pow(const Word& w, std::int64_t n) {
    if (n == 0) return identity(w.alphabet());
    const Word base = n < 0 ? inv(w) : w;
    std::int64_t count = n < 0 ? -n : n;
    // A single syllable powers directly; otherwise the middle collapses to
    // a conjugate shape after one product, so repeated mul stays linear.
    Word acc = base;
    for (std::int64_t i = 1; i < count; ++i) acc = mul(acc, base);
    return acc;
}

inline std::string printWord(const Word& w) {
    std::string out;
    for (const auto& s : w.syllables()) {
        if (!out.empty()) out += ' ';
        out += s.gen.name;
        if (s.exp != 1) {
            out += '^';
            out += std::to_string(s.exp);
        }
    }
    return out;
}

/// Grammar: whitespace-separated tokens; token = name optionally followed
/// by '^' and a signed decimal integer; names match [a-z]([0-9]+)?.
inline Word parseWord(const std::string& text, const Alphabet& alphabet) {
    std::vector<Syllable> raw;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const size_t tokStart = i;
        if (!(text[i] >= 'a' && text[i] <= 'z'))
            throw WordError("syntax error at position " + std::to_string(i) +
                            ": expected generator name");
        std::string name(1, text[i]);
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i])))
            name += text[i++];
        std::int64_t exp = 1;
        if (i < n && text[i] == '^') {
            ++i;
            const size_t expStart = i;
            if (i < n && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == expStart || (i == expStart + 1 && !std::isdigit(static_cast<unsigned char>(text[expStart]))))
                throw WordError("syntax error at position " + std::to_string(expStart) +
                                ": expected integer exponent");
            exp = std::stoll(text.substr(expStart, i - expStart));
        }
        if (i < n && !std::isspace(static_cast<unsigned char>(text[i])))
            throw WordError("syntax error at position " + std::to_string(i) +
                            ": unexpected character in token starting at " +
                            std::to_string(tokStart));
        if (!alphabet.contains(Gen{name}))
            throw WordError("unknown generator symbol: " + name);
        raw.push_back({Gen{name}, exp});
    }
    return reduce(alphabet, raw);
}

}  // namespace higman
