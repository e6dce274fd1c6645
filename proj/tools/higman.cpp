// Command-line front end. Exit codes are a contract:
//   0 ok / 1 parse / 2 invalid coding / 3 member-no / 4 unknown-budget / 5 differ

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "higmankit/catalog.hpp"
#include "higmankit/compile.hpp"
#include "higmankit/dsl.hpp"
#include "higmankit/enumerate.hpp"
#include "higmankit/window.hpp"

namespace {

using namespace higman;
using nlohmann::json;

constexpr int kOk = 0, kParse = 1, kCoding = 2, kNo = 3, kUnknown = 4, kDiffer = 5;

std::int64_t defaultBudget() {
    if (const char* v = std::getenv("HIGMANKIT_BUDGET")) return std::strtoll(v, nullptr, 10);
    return 1'000'000;
}

bool jsonMode = false;

void emitTuple(const ExpTuple& t) {
    if (jsonMode) {
        json a = json::array();
        for (size_t i = 0; i < t.size(); ++i) a.push_back(t.at(i));
        std::cout << a.dump() << "\n";
    } else {
        std::cout << printTuple(t) << "\n";
    }
}

void emitLine(const std::string& key, const std::string& value) {
    if (jsonMode)
        std::cout << json{{key, value}}.dump() << "\n";
    else
        std::cout << value << "\n";
}

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// (pattern <name>) resolves against the catalog first, then as a file.
ExprPtr catalogResolver(const std::string& name) {
    try {
        return catalogExpr(name);
    } catch (const CatalogError&) {
        return mkPattern(parsePatternFile(readFile(name)), name);
    }
}

// Tuple syntax problems are parse errors (exit 1); only decode's coding
// check may exit 2.
ExpTuple parseTupleArg(const std::string& text) {
    try {
        return parseTuple(text);
    } catch (const CodecError& e) {
        throw std::runtime_error(e.what());
    }
}

bool looksLikeCatalog(const std::string& s) {
    return s == "q.paper" || s == "q.std" || s.rfind("zn.", 0) == 0 || s.rfind("cpinf.", 0) == 0;
}

// Expression argument: inline DSL `(...)`, a catalog name, or a file of DSL text.
ExprPtr loadExpr(const std::string& arg) {
    if (!arg.empty() && arg[0] == '(') return parseExpr(arg, catalogResolver);
    if (looksLikeCatalog(arg)) return catalogExpr(arg);
    return parseExpr(readFile(arg), catalogResolver);
}

// Pattern argument: catalog name or pattern file.
PatternSet loadPattern(const std::string& arg) {
    if (arg == "q.paper") return *buildQ().patternPaper;
    if (arg == "q.std" || arg == "q") return *buildQ().patternStd;
    if (arg.rfind("cpinf.", 0) == 0) return *buildQuasicyclic(std::stoll(arg.substr(6))).patternStd;
    return parsePatternFile(readFile(arg));
}

struct KRange {
    std::int64_t lo = 2, hi = 2;
};

KRange parseKRange(const std::string& s) {
    KRange r;
    const size_t dots = s.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = std::stoll(s);
    } else {
        r.lo = std::stoll(s.substr(0, dots));
        r.hi = std::stoll(s.substr(dots + 2));
    }
    return r;
}

int cmdEncode(const std::string& wordText) {
    const Word w = parseWord(wordText, alphabetBC());
    emitTuple(encode(w));
    return kOk;
}

int cmdDecode(const std::string& tupleText) {
    const ExpTuple t = parseTupleArg(tupleText);
    try {
        emitLine("word", printWord(decode(t)));
    } catch (const CodecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCoding;
    }
    return kOk;
}

int cmdEnum(const std::string& exprArg, std::int64_t limit) {
    Enumerator en(loadExpr(exprArg));
    for (std::int64_t i = 0; i < limit; ++i) {
        const auto t = en.next();
        if (!t) break;
        emitTuple(*t);
    }
    return kOk;
}

int cmdMember(const std::string& exprArg, const std::string& tupleText, std::int64_t budget) {
    const ExprPtr e = loadExpr(exprArg);
    const ExpTuple t = parseTupleArg(tupleText);
    const Membership3 m = member(e, t, budget);
    if (m.yes()) {
        emitLine("member", "yes");
        return kOk;
    }
    if (m.no()) {
        emitLine("member", "no");
        return kNo;
    }
    emitLine("member", "unknown");
    return kUnknown;
}

int cmdWindow(const std::string& exprArg, std::int64_t L, std::int64_t N, std::int64_t budget) {
    const WindowResult res = window(loadExpr(exprArg), L, N, budget);
    for (const auto& t : res.members) emitTuple(t);
    if (!res.unresolved.empty()) {
        std::cerr << "warning: " << res.unresolved.size() << " tuples unresolved at this budget\n";
        return kUnknown;
    }
    return kOk;
}

int cmdCompile(const std::string& patternArg, const std::string& outPath) {
    const PatternSet p = loadPattern(patternArg);
    const std::string text = printExpr(compilePattern(p));
    if (outPath.empty()) {
        emitLine("expr", text);
    } else {
        std::ofstream out(outPath);
        if (!out) throw std::runtime_error("cannot open file: " + outPath);
        out << text << "\n";
    }
    return kOk;
}

int cmdVerify(const std::string& patternArg, const std::string& exprArg, std::int64_t L,
              std::int64_t N, std::int64_t budget) {
    const PatternSet p = loadPattern(patternArg);
    const ExprPtr e = loadExpr(exprArg);
    const VerifyReport rep = verifyCompilation(p, e, L, N, budget);
    switch (rep.eq.verdict) {
        case EqVerdict::Equal:
            emitLine("verdict", "Equal");
            return kOk;
        case EqVerdict::Differ:
            emitLine("verdict",
                     "Differ " + (rep.eq.witness ? printTuple(*rep.eq.witness) : std::string()));
            return kDiffer;
        default:
            emitLine("verdict", "Unknown");
            return kUnknown;
    }
}

int cmdCatalog(const std::string& name, const std::string& kRangeText, const std::string& emit,
               const std::string& familyChoice) {
    const GroupFamily fam = catalogFamily(name);
    const KRange kr = parseKRange(kRangeText);
    const PatternSet* pat = nullptr;
    if (familyChoice == "paper") {
        if (!fam.patternPaper) throw CatalogError("family has no published pattern: " + name);
        pat = &*fam.patternPaper;
    } else {
        if (!fam.patternStd) throw CatalogError("family has no derived pattern: " + name);
        pat = &*fam.patternStd;
    }
    if (emit == "pattern") {
        std::cout << printPatternFile(*pat);
        return kOk;
    }
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
        if (!pat->domainHolds({k})) continue;
        const ExpTuple t = pat->instantiate({k});
        if (emit == "tuples") {
            emitTuple(t);
        } else if (emit == "words") {
            const HigmanWords hw = higmanWords(t);
            if (jsonMode) {
                std::cout << json{{"k", k}, {"bf", printWord(hw.bf)}, {"af", printWord(hw.af)}}
                                 .dump()
                          << "\n";
            } else {
                std::cout << "k=" << k << " bf " << printWord(hw.bf) << "\n";
                std::cout << "k=" << k << " af " << printWord(hw.af) << "\n";
            }
        } else {
            throw std::runtime_error("unknown --emit mode: " + emit);
        }
    }
    return kOk;
}

int cmdRewrite(const std::string& presFile, const std::string& scheme, std::int64_t kMax) {
    if (scheme != "std") throw std::runtime_error("unknown scheme: " + scheme);
    const Presentation p = parsePresentation(readFile(presFile));
    for (const auto& it : rewriteFamily(p, stdScheme(), kMax)) {
        const std::string k = it.k ? std::to_string(*it.k) : "-";
        if (jsonMode) {
            std::cout << json{{"source", it.source},
                              {"k", k},
                              {"word", printWord(it.word)},
                              {"tuple", printTuple(it.code)}}
                             .dump()
                      << "\n";
        } else {
            std::cout << it.source << " " << k << " " << printWord(it.word) << "  "
                      << printTuple(it.code) << "\n";
        }
    }
    return kOk;
}

int cmdModelCheck(const std::string& name, std::int64_t kMax) {
    const GroupFamily fam = catalogFamily(name);
    const ModelCheckReport rep = modelCheck(fam, kMax);
    const size_t total = rep.items.size();
    std::ostringstream line;
    if (rep.ok())
        line << "OK " << total << "/" << total;
    else
        line << "FAIL " << (total - rep.failures) << "/" << total;
    emitLine("modelcheck", line.str());
    if (!rep.ok()) {
        for (const auto& it : rep.items)
            if (!it.zero)
                std::cerr << "nonzero: " << it.source << (it.k ? " k=" + std::to_string(*it.k) : "")
                          << "\n";
        return kDiffer;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Higman-style embedding toolkit"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string wordText, tupleText, exprArg, patternArg, outPath, presFile;
    std::string kRangeText = "2..2", emit = "tuples", familyChoice = "std", scheme = "std";
    std::string catalogName;
    std::int64_t limit = 20, L = 4, N = 4, kMax = 10;
    std::int64_t budget = defaultBudget();

    auto* encodeCmd = app.add_subcommand("encode", "Code a {b,c} word as an exponent tuple");
    encodeCmd->add_option("word", wordText)->required();

    auto* decodeCmd = app.add_subcommand("decode", "Decode an exponent tuple back to a word");
    decodeCmd->add_option("tuple", tupleText)->required();

    auto* enumCmd = app.add_subcommand("enum", "Enumerate a set expression fairly");
    enumCmd->add_option("expr", exprArg)->required();
    enumCmd->add_option("--limit", limit);

    auto* memberCmd = app.add_subcommand("member", "Budgeted three-valued membership");
    memberCmd->add_option("expr", exprArg)->required();
    memberCmd->add_option("tuple", tupleText)->required();
    memberCmd->add_option("--budget", budget);

    auto* windowCmd = app.add_subcommand("window", "Members within a bounded window");
    windowCmd->add_option("expr", exprArg)->required();
    windowCmd->add_option("--coords", L)->required();
    windowCmd->add_option("--max", N)->required();
    windowCmd->add_option("--budget", budget);

    auto* compileCmd = app.add_subcommand("compile", "Compile a pattern to a set expression");
    compileCmd->add_option("pattern", patternArg)->required();
    compileCmd->add_option("-o,--output", outPath);

    auto* verifyCmd = app.add_subcommand("verify", "Compare a pattern and an expression on a window");
    verifyCmd->add_option("pattern", patternArg)->required();
    verifyCmd->add_option("expr", exprArg)->required();
    verifyCmd->add_option("--coords", L)->required();
    verifyCmd->add_option("--max", N)->required();
    verifyCmd->add_option("--budget", budget);

    auto* catalogCmd = app.add_subcommand("catalog", "Emit tuples, words, or the pattern of a family");
    catalogCmd->add_option("name", catalogName)->required();
    catalogCmd->add_option("--k", kRangeText);
    catalogCmd->add_option("--emit", emit)->check(CLI::IsMember({"tuples", "words", "pattern"}));
    catalogCmd->add_option("--family", familyChoice)->check(CLI::IsMember({"paper", "std"}));

    auto* rewriteCmd = app.add_subcommand("rewrite", "Rewrite a presentation over two generators");
    rewriteCmd->add_option("presentation", presFile)->required();
    rewriteCmd->add_option("--scheme", scheme);
    rewriteCmd->add_option("--kmax", kMax);

    auto* modelCmd = app.add_subcommand("modelcheck", "Check relators in the exact model");
    modelCmd->add_option("name", catalogName)->required();
    modelCmd->add_option("--kmax", kMax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParse;
    }
    jsonMode = (format == "json");

    try {
        if (encodeCmd->parsed()) return cmdEncode(wordText);
        if (decodeCmd->parsed()) return cmdDecode(tupleText);
        if (enumCmd->parsed()) return cmdEnum(exprArg, limit);
        if (memberCmd->parsed()) return cmdMember(exprArg, tupleText, budget);
        if (windowCmd->parsed()) return cmdWindow(exprArg, L, N, budget);
        if (compileCmd->parsed()) return cmdCompile(patternArg, outPath);
        if (verifyCmd->parsed()) return cmdVerify(patternArg, exprArg, L, N, budget);
        if (catalogCmd->parsed()) return cmdCatalog(catalogName, kRangeText, emit, familyChoice);
        if (rewriteCmd->parsed()) return cmdRewrite(presFile, scheme, kMax);
        if (modelCmd->parsed()) return cmdModelCheck(catalogName, kMax);
    } catch (const CodecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCoding;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    return kParse;
}
