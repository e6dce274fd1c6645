// Parametric tuple families: per-coordinate affine forms in integer
// parameters plus linear parameter-domain inequalities. Every parameter
// must own a pivot coordinate (it appears there alone with coefficient
// +-1), which makes membership a direct solve-and-check.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "higmankit/codec.hpp"

namespace higman {

struct PatternError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// c0 + sum_i coeff[i] * p_i
struct AffineForm {
    std::int64_t c0 = 0;
    std::vector<std::int64_t> coeffs;  // indexed by parameter

    std::int64_t eval(const std::vector<std::int64_t>& params) const {
        std::int64_t v = c0;
        for (size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * params[i];
        return v;
    }
    int paramCount() const {
        int n = 0;
        for (auto c : coeffs)
            if (c != 0) ++n;
        return n;
    }
    // Index of the single parameter with nonzero coefficient, if exactly one.
    std::optional<size_t> soleParam() const {
        std::optional<size_t> got;
        for (size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) {
                if (got) return std::nullopt;
                got = i;
            }
        return got;
    }
};

/// sum_i coeff[i] * p_i >= c
struct LinearIneq {
    std::vector<std::int64_t> coeffs;
    std::int64_t c = 0;

    bool holds(const std::vector<std::int64_t>& params) const {
        std::int64_t v = 0;
        for (size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * params[i];
        return v >= c;
    }
};

class PatternSet {
public:
    /// Validates pivots: coordForm[pivot[i]] must be c0 +- p_i.
    PatternSet(size_t arity, std::vector<std::string> paramNames,
               std::vector<AffineForm> coordForms, std::vector<size_t> pivots,
               std::vector<LinearIneq> domain)
        : arity_(arity),
          paramNames_(std::move(paramNames)),
          coordForms_(std::move(coordForms)),
          pivots_(std::move(pivots)),
          domain_(std::move(domain)) {
        if (coordForms_.size() != arity_)
            throw PatternError("pattern needs one coordinate form per coordinate");
        if (pivots_.size() != paramNames_.size())
            throw PatternError("pattern needs one pivot per parameter");
        const size_t d = paramNames_.size();
        for (auto& f : coordForms_) f.coeffs.resize(d, 0);
        for (auto& q : domain_) q.coeffs.resize(d, 0);
        for (size_t i = 0; i < d; ++i) {
            if (pivots_[i] >= arity_) throw PatternError("pivot coordinate out of range");
            const AffineForm& f = coordForms_[pivots_[i]];
            if (f.coeffs[i] != 1 && f.coeffs[i] != -1)
                throw PatternError("pivot of parameter " + paramNames_[i] +
                                   " must carry coefficient +-1");
            for (size_t j = 0; j < d; ++j)
                if (j != i && f.coeffs[j] != 0)
                    throw PatternError("pivot coordinate of " + paramNames_[i] +
                                       " must involve that parameter alone");
        }
    }

    size_t arity() const { return arity_; }
    size_t paramCount() const { return paramNames_.size(); }
    const std::vector<std::string>& paramNames() const { return paramNames_; }
    const std::vector<AffineForm>& coordForms() const { return coordForms_; }
    const std::vector<size_t>& pivots() const { return pivots_; }
    const std::vector<LinearIneq>& domain() const { return domain_; }

    bool domainHolds(const std::vector<std::int64_t>& params) const {
        for (const auto& q : domain_)
            if (!q.holds(params)) return false;
        return true;
    }

    ExpTuple instantiate(const std::vector<std::int64_t>& params) const {
        std::vector<std::int64_t> e(arity_);
        for (size_t j = 0; j < arity_; ++j) e[j] = coordForms_[j].eval(params);
        return ExpTuple(std::move(e));
    }

    /// Unique candidate parameter valuation read off the pivots.
    std::vector<std::int64_t> solveParams(const ExpTuple& t) const {
        std::vector<std::int64_t> params(paramNames_.size());
        for (size_t i = 0; i < paramNames_.size(); ++i) {
            const AffineForm& f = coordForms_[pivots_[i]];
            params[i] = f.coeffs[i] * (t.at(pivots_[i]) - f.c0);  // coeff is +-1
        }
        return params;
    }

private:
    size_t arity_;
    std::vector<std::string> paramNames_;
    std::vector<AffineForm> coordForms_;
    std::vector<size_t> pivots_;
    std::vector<LinearIneq> domain_;
};

/// Decidable membership: solve parameters via pivots, check every
/// coordinate form, the implicit zeros beyond arity, and the domain.
inline bool patternMember(const PatternSet& p, const ExpTuple& t) {
    if (t.size() > p.arity()) return false;
    const auto params = p.solveParams(t);
    if (!p.domainHolds(params)) return false;
    for (size_t j = 0; j < p.arity(); ++j)
        if (p.coordForms()[j].eval(params) != t.at(j)) return false;
    return true;
}

namespace detail {

// Affine expressions over named parameters: terms like `3`, `k`, `-k`,
// `2k`, `1-k`, `-(k-1)`, joined by + and -.
inline AffineForm parseAffine(const std::string& text, const std::vector<std::string>& params) {
    AffineForm form;
    form.coeffs.assign(params.size(), 0);
    size_t i = 0;
    const size_t n = text.size();
    auto skipWs = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto paramIndex = [&](const std::string& name) -> std::optional<size_t> {
        for (size_t k = 0; k < params.size(); ++k)
            if (params[k] == name) return k;
        return std::nullopt;
    };

    // Recursive-descent over sums; sign distributes into parentheses.
    std::function<void(std::int64_t)> parseSum = [&](std::int64_t sign) {
        bool first = true;
        while (true) {
            skipWs();
            if (i >= n || text[i] == ')') break;
            std::int64_t s = sign;
            if (text[i] == '+') {
                ++i;
            } else if (text[i] == '-') {
                s = -s;
                ++i;
            } else if (!first) {
                throw PatternError("affine syntax error at position " + std::to_string(i) +
                                   " in '" + text + "'");
            }
            skipWs();
            if (i < n && text[i] == '(') {
                ++i;
                parseSum(s);
                skipWs();
                if (i >= n || text[i] != ')') throw PatternError("affine: missing ')' in '" + text + "'");
                ++i;
            } else {
                std::int64_t coeff = 1;
                bool sawNumber = false, sawStar = false;
                if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    const size_t start = i;
                    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                    coeff = std::stoll(text.substr(start, i - start));
                    sawNumber = true;
                    if (i < n && text[i] == '*') {
                        ++i;
                        sawStar = true;
                    }
                }
                skipWs();
                if (i < n && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                    const size_t start = i;
                    while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
                    const std::string name = text.substr(start, i - start);
                    const auto idx = paramIndex(name);
                    if (!idx) throw PatternError("unknown parameter '" + name + "' in '" + text + "'");
                    form.coeffs[*idx] += s * coeff;
                } else if (sawNumber && !sawStar) {
                    form.c0 += s * coeff;
                } else {
                    throw PatternError("affine syntax error at position " + std::to_string(i) +
                                       " in '" + text + "'");
                }
            }
            first = false;
        }
    };
    parseSum(1);
    return form;
}

}  // namespace detail

/// Pattern file format, line oriented:
///   arity L
///   param <name> pivot <j> [domain <name><=|>=<int> ...]
///   coord <j> = <affine expr in params>
/// Unlisted coordinates default to the constant 0.
inline PatternSet parsePatternFile(const std::string& text) {
    std::optional<size_t> arity;
    std::vector<std::string> params;
    std::vector<size_t> pivots;
    std::vector<LinearIneq> domain;
    std::vector<std::pair<size_t, std::string>> coordTexts;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "arity") {
            size_t l;
            if (!(ls >> l)) throw PatternError("arity: expected integer");
            arity = l;
        } else if (kw == "param") {
            std::string name, pivotKw;
            size_t pivot;
            if (!(ls >> name >> pivotKw >> pivot) || pivotKw != "pivot")
                throw PatternError("param: expected `param <name> pivot <j>`");
            params.push_back(name);
            pivots.push_back(pivot);
            std::string tok;
            if (ls >> tok) {
                if (tok != "domain") throw PatternError("param: expected `domain`, got " + tok);
                while (ls >> tok) {
                    size_t rel = tok.find(">=");
                    bool ge = true;
                    if (rel == std::string::npos) {
                        rel = tok.find("<=");
                        ge = false;
                    }
                    if (rel == std::string::npos)
                        throw PatternError("domain: expected <name>>=<int> or <name><=<int>");
                    const std::string pname = tok.substr(0, rel);
                    const std::int64_t bound = std::stoll(tok.substr(rel + 2));
                    size_t idx = params.size();
                    for (size_t k = 0; k < params.size(); ++k)
                        if (params[k] == pname) idx = k;
                    if (idx == params.size())
                        throw PatternError("domain references unknown parameter " + pname);
                    LinearIneq q;
                    q.coeffs.assign(params.size(), 0);
                    // x >= b, or x <= b as -x >= -b.
                    q.coeffs[idx] = ge ? 1 : -1;
                    q.c = ge ? bound : -bound;
                    domain.push_back(q);
                }
            }
        } else if (kw == "coord") {
            size_t j;
            std::string eq;
            if (!(ls >> j >> eq) || eq != "=")
                throw PatternError("coord: expected `coord <j> = <expr>`");
            std::string rest;
            std::getline(ls, rest);
            coordTexts.emplace_back(j, rest);
        } else {
            throw PatternError("unknown pattern directive: " + kw);
        }
    }
    if (!arity) throw PatternError("pattern file lacks an arity line");
    std::vector<AffineForm> forms(*arity);
    for (auto& f : forms) f.coeffs.assign(params.size(), 0);
    for (const auto& [j, expr] : coordTexts) {
        if (j >= *arity) throw PatternError("coord index out of range");
        forms[j] = detail::parseAffine(expr, params);
    }
    return PatternSet(*arity, params, forms, pivots, domain);
}

inline std::string printPatternFile(const PatternSet& p) {
    std::ostringstream out;
    out << "arity " << p.arity() << "\n";
    for (size_t i = 0; i < p.paramCount(); ++i) {
        out << "param " << p.paramNames()[i] << " pivot " << p.pivots()[i];
        bool firstDomain = true;
        for (const auto& q : p.domain()) {
            // Only single-parameter unit-coefficient rows print in the
            // compact <name>>=<c> syntax; others have no file form.
            size_t nz = 0, idx = 0;
            for (size_t k = 0; k < q.coeffs.size(); ++k)
                if (q.coeffs[k] != 0) {
                    ++nz;
                    idx = k;
                }
            if (nz != 1 || idx != i || (q.coeffs[idx] != 1 && q.coeffs[idx] != -1)) continue;
            if (firstDomain) {
                out << " domain";
                firstDomain = false;
            }
            if (q.coeffs[idx] == 1)
                out << ' ' << p.paramNames()[i] << ">=" << q.c;
            else
                out << ' ' << p.paramNames()[i] << "<=" << -q.c;
        }
        out << "\n";
    }
    for (size_t j = 0; j < p.arity(); ++j) {
        const AffineForm& f = p.coordForms()[j];
        out << "coord " << j << " = ";
        std::string expr;
        for (size_t i = 0; i < f.coeffs.size(); ++i) {
            const auto c = f.coeffs[i];
            if (c == 0) continue;
            if (c > 0 && !expr.empty()) expr += "+";
            if (c == -1)
                expr += "-";
            else if (c != 1)
                expr += std::to_string(c) + "*";
            expr += p.paramNames()[i];
        }
        if (f.c0 != 0 || expr.empty()) {
            if (f.c0 >= 0 && !expr.empty()) expr += "+";
            expr += std::to_string(f.c0);
        }
        out << expr << "\n";
    }
    return out.str();
}

}  // namespace higman
