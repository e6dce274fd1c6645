// CLI integration tests. argv[1] is the path to the higman binary.
// Prints one line per check; exits nonzero on any failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

std::string gBin;
int gFailures = 0;

struct RunResult {
    int exitCode;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = gBin + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        std::cerr << "popen failed\n";
        std::exit(2);
    }
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

void check(const std::string& label, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << label << "\n";
    if (!ok) ++gFailures;
}

void expect(const std::string& args, int wantExit, const std::string& wantOut) {
    const RunResult r = run(args);
    check(args, r.exitCode == wantExit && r.out == wantOut);
    if (r.exitCode != wantExit)
        std::cout << "     exit " << r.exitCode << ", want " << wantExit << "\n";
    if (r.out != wantOut) std::cout << "     got: " << r.out;
}

void expectExit(const std::string& args, int wantExit) {
    const RunResult r = run(args);
    check(args, r.exitCode == wantExit);
    if (r.exitCode != wantExit)
        std::cout << "     exit " << r.exitCode << ", want " << wantExit << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <higman-binary>\n";
        return 2;
    }
    gBin = argv[1];
    const std::string f2 = "[1,-2,-1,-2,-1,2,1,2,1,1,-1,-1,-1,-1,1,1,1,1,-1]";

    expect("encode \"b^-1 c^-1 b c\"", 0, "[-1,-1,1,1]\n");
    expect("decode \"[-1,-1,1,1]\"", 0, "b^-1 c^-1 b c\n");
    expect("decode \"[]\"", 0, "\n");
    expectExit("decode \"[1,0,2,1]\"", 2);
    expectExit("encode \"b^\"", 1);
    expectExit("decode \"[1,2\"", 1);
    expectExit("bogus-subcommand", 1);

    expect("member q.paper \"" + f2 + "\"", 0, "yes\n");
    expectExit("member q.paper \"[]\"", 3);
    expectExit("member \"(proj0 (union (diag) (diag)))\" \"[0,50]\" --budget 3", 4);

    expect("enum \"(lit [1,2])\" --limit 5", 0, "[1,2]\n");
    {
        const RunResult a = run("enum \"(union (iota) (shift (iota)))\" --limit 50");
        const RunResult b = run("enum \"(union (iota) (shift (iota)))\" --limit 50");
        check("enum is deterministic", a.exitCode == 0 && a.out == b.out && !a.out.empty());
    }

    {
        const RunResult r = run("window q.std --coords 5 --max 10");
        int lines = 0;
        for (char ch : r.out)
            if (ch == '\n') ++lines;
        check("window q.std --coords 5 --max 10 has 9 rows", r.exitCode == 0 && lines == 9);
    }

    const std::string exprFile = "/tmp/higman_cli_test_expr.txt";
    expectExit("compile q.std -o " + exprFile, 0);
    expect("verify q.std " + exprFile + " --coords 5 --max 10", 0, "Equal\n");
    expectExit("verify q.std \"(lit)\" --coords 5 --max 10", 5);
    expectExit("verify q.std \"(stride 2 (proj0 (meet (diag) (diag))))\" --coords 3 --max 2 --budget 1",
               4);

    expect("catalog q --k 2 --emit tuples --family paper", 0, f2 + "\n");
    expect("catalog q --k 2..3 --emit tuples --family std", 0,
           "[-2,2,1,-1,1]\n[-3,3,1,-1,2]\n");
    {
        const RunResult r = run("catalog q --k 2 --emit words --family std");
        check("catalog words emits bf and af", r.exitCode == 0 &&
                                                   r.out.find("bf") != std::string::npos &&
                                                   r.out.find("af") != std::string::npos);
        const RunResult p = run("catalog q --emit pattern --family std");
        check("catalog pattern emits a pattern file",
              p.exitCode == 0 && p.out.rfind("arity 5", 0) == 0);
    }

    expect("modelcheck q --kmax 50", 0, "OK 49/49\n");
    expect("modelcheck cpinf.2 --kmax 20", 0, "OK 21/21\n");

    {
        const std::string presFile = "/tmp/higman_cli_test_pres.txt";
        std::ofstream(presFile) << "gens countable\nfamily tower from 2: a{k}^{k} a{k-1}^-1\n";
        const RunResult r = run("rewrite " + presFile + " --scheme std --kmax 3");
        check("rewrite emits tower steps",
              r.exitCode == 0 &&
                  r.out.find("b^-3 c^3 b c^-1 b^2") != std::string::npos &&
                  r.out.find("[-2,2,1,-1,1]") != std::string::npos);
    }

    expect("--format json encode \"b^-1 c^-1 b c\"", 0, "[-1,-1,1,1]\n");
    expect("--format json member q.std \"[-2,2,1,-1,1]\"", 0, "{\"member\":\"yes\"}\n");

    {
        // HIGMANKIT_BUDGET env var supplies the default budget.
        const std::string cmd = "HIGMANKIT_BUDGET=3 " + gBin +
                                " member \"(proj0 (union (diag) (diag)))\" \"[0,50]\" 2>/dev/null";
        FILE* p = popen(cmd.c_str(), "r");
        std::string out;
        char buf[256];
        size_t n;
        while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
        const int status = pclose(p);
        check("HIGMANKIT_BUDGET env var", WEXITSTATUS(status) == 4 && out == "unknown\n");
    }

    if (gFailures) {
        std::cout << gFailures << " failures\n";
        return 1;
    }
    std::cout << "all cli checks passed\n";
    return 0;
}
