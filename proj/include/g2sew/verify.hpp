#ifndef G2SEW_VERIFY_HPP
#define G2SEW_VERIFY_HPP

#include <string>
#include <vector>

namespace g2sew {

struct CheckResult {
    std::string id;  // "cNN.name", sorts by criterion
    int criterion = 0;
    std::string suite;  // geometry, graphs, oracles, modular, npoint
    std::string anchor;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyOptions {
    std::string suite = "all";
    unsigned seed = 20240611;
    bool inject_liz_sign = false;  // drop the sign of the Fock norm
    int K = 16;
    int D = 10;
    int N_max = 8;
    int samples = 64;  // DFT samples for coefficient comparisons
};

const std::vector<std::string> &verify_suites();

// Runs every check of the selected suite concurrently; results are sorted by id.
std::vector<CheckResult> run_verification(const VerifyOptions &opt);

} // namespace g2sew

#endif
