#include <cstdio>
#include <map>
#include <string>

#include "g2sew/verify.hpp"

// One line per acceptance criterion; the exit status is nonzero if any fails.
int main(int argc, char **argv)
{
    g2sew::VerifyOptions opt;
    bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    auto results = g2sew::run_verification(opt);

    std::map<int, std::pair<int, int>> tally;  // criterion -> (passed, total)
    for (const auto &r : results) {
        auto &t = tally[r.criterion];
        t.first += r.pass;
        ++t.second;
        if (verbose || !r.pass)
            std::printf("  %-48s %s residual %.3e tol %.1e %s\n", r.id.c_str(), r.pass ? "ok  " : "FAIL", r.residual,
                        r.tolerance, r.note.c_str());
    }
    bool all = tally.size() == 10;
    for (int c = 1; c <= 10; ++c) {
        auto it = tally.find(c);
        bool pass = it != tally.end() && it->second.first == it->second.second;
        all = all && pass;
        std::printf("Criterion %d: %s", c, pass ? "PASS" : "FAIL");
        if (it != tally.end()) std::printf(" (%d/%d checks)", it->second.first, it->second.second);
        std::printf("\n");
    }
    return all ? 0 : 1;
}
