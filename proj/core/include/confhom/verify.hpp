#pragma once

#include <string>
#include <vector>

#include "confhom/exactla.hpp"

// The acceptance suite: one callable check per criterion, shared by the
// CLI `verify` command and the standalone acceptance test binary.

namespace confhom {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool hard = true;  // reported-only entries set this to false
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    bool full = true;  // false: reduced ranges, runs in well under a minute
    int threads = 1;
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt);

}  // namespace confhom
