#pragma once

#include "confhom/extengine.hpp"

// Drivers assembling homology tables: the cellular pipeline (data-parallel
// over weight slices) and the comparison against the structured pipeline.

namespace confhom {

struct BettiOptions {
    int genus = 0;
    CoefficientRing ring = CoefficientRing::rationals();
    int max_n = 4;
    int threads = 1;
    bool verify_d_squared = false;
};

// H_i(C_n(Sigma_{g,1})) for n <= max_n from the cellular slices. Slices are
// independent; workers fill a pre-sized vector so the merged table does not
// depend on the thread count.
HomologyTable cellular_betti(const BettiOptions& opt);

struct Discrepancy {
    int n = 0;
    int i = 0;
    std::string detail;
};

// Bidegree-by-bidegree comparison of two tables on 0 <= i <= n <= max_n.
std::vector<Discrepancy> compare_tables(const HomologyTable& a, const HomologyTable& b, int max_n);

}  // namespace confhom
