// Identity suite and table spot-checks behind `kdvtau selftest`.
#pragma once

#include <string>
#include <vector>

namespace kdvtau::tools {

struct SelftestOptions {
    // Perturbs C_1 before the Faber-Zagier checks.
    bool corrupt_c1 = false;
    // Builds the doubling-check table below its minimum depth.
    bool shallow = false;
    int workers = 1;
};

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

std::vector<CheckResult> run_selftest(const SelftestOptions &opt);

} // namespace kdvtau::tools
