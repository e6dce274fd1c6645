// Bijective coding between freely reduced {b,c}-words and integer tuples:
// b^{n0} c^{n1} ... b^{n_2m} c^{n_2m+1}  <->  (n0, n1, ..., n_2m+1).
// Interior entries of the even-length extension are nonzero; only the
// first and last may vanish. Canonical tuples carry no trailing zeros.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "higmankit/word.hpp"

namespace higman {

struct CodecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finitely supported integer sequence, stored as a trailing-zero-stripped
/// vector. The empty vector is the zero sequence.
class ExpTuple {
public:
    ExpTuple() = default;
    explicit ExpTuple(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
        while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
    }

    const std::vector<std::int64_t>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }
    bool isZero() const { return entries_.empty(); }

    /// Coordinate value, zero beyond the stored support.
    std::int64_t at(size_t i) const { return i < entries_.size() ? entries_[i] : 0; }

    /// Copy with coordinate i replaced by v.
    ExpTuple with(size_t i, std::int64_t v) const {
        std::vector<std::int64_t> e = entries_;
        if (e.size() <= i) e.resize(i + 1, 0);
        e[i] = v;
        return ExpTuple(std::move(e));
    }

    friend bool operator==(const ExpTuple&, const ExpTuple&) = default;

    // Sort key: (support length, lexicographic).
    friend bool operator<(const ExpTuple& a, const ExpTuple& b) {
        if (a.entries_.size() != b.entries_.size())
            return a.entries_.size() < b.entries_.size();
        return a.entries_ < b.entries_;
    }

private:
    std::vector<std::int64_t> entries_;
};

inline std::string printTuple(const ExpTuple& t) {
    std::string out = "[";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(t.entries()[i]);
    }
    return out + "]";
}

/// Parses `[n,n,...]`, comma-separated signed decimals.
inline ExpTuple parseTuple(const std::string& text) {
    size_t i = 0;
    const size_t n = text.size();
    auto skipWs = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skipWs();
    if (i >= n || text[i] != '[') throw CodecError("tuple syntax error: expected '['");
    ++i;
    std::vector<std::int64_t> entries;
    skipWs();
    if (i < n && text[i] == ']') {
        ++i;
    } else {
        while (true) {
            skipWs();
            const size_t start = i;
            if (i < n && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start || !std::isdigit(static_cast<unsigned char>(text[i - 1])))
                throw CodecError("tuple syntax error at position " + std::to_string(start));
            entries.push_back(std::stoll(text.substr(start, i - start)));
            skipWs();
            if (i < n && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < n && text[i] == ']') {
                ++i;
                break;
            }
            throw CodecError("tuple syntax error: expected ',' or ']'");
        }
    }
    skipWs();
    if (i != n) throw CodecError("tuple syntax error: trailing input");
    return ExpTuple(std::move(entries));
}

/// Codes a reduced {b,c}-word as the minimal alternating-exponent tuple,
/// canonical form. The identity maps to the empty tuple.
inline ExpTuple encode(const Word& w) {
    if (!(w.alphabet() == alphabetBC()))
        throw CodecError("encode requires a word over alphabet {b,c}");
    std::vector<std::int64_t> entries;
    size_t pos = 0;  // even positions hold b-exponents, odd hold c-exponents
    for (const auto& s : w.syllables()) {
        const bool isB = s.gen.name == "b";
        if ((pos % 2 == 0) != isB) {
            entries.push_back(0);
            ++pos;
        }
        entries.push_back(s.exp);
        ++pos;
    }
    return ExpTuple(std::move(entries));
}

/// True iff every interior entry of the even-length zero-extension is
/// nonzero, i.e. decode accepts the tuple.
inline bool validCoding(const ExpTuple& t) {
    size_t len = t.size();
    if (len % 2) ++len;  // implicit trailing zero
    for (size_t i = 1; i + 1 < len; ++i)
        if (t.at(i) == 0) return false;
    return true;
}

/// Interprets any tuple as alternating powers b^{n0} c^{n1} ... and
/// freely reduces; total on all tuples.
inline Word decodeLenient(const ExpTuple& t) {
    std::vector<Syllable> raw;
    raw.reserve(t.size());
    for (size_t i = 0; i < t.size(); ++i)
        raw.push_back({Gen{i % 2 == 0 ? "b" : "c"}, t.entries()[i]});
    return reduce(alphabetBC(), raw);
}

/// Inverse of encode on valid codings; rejects malformed codes.
inline Word decode(const ExpTuple& t) {
    if (!validCoding(t))
        throw CodecError("invalid coding: interior zero entry in " + printTuple(t));
    return decodeLenient(t);
}

}  // namespace higman
