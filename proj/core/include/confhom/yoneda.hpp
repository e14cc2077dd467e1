#pragma once

#include "confhom/cellcx.hpp"

// The stabilisation class eps acts on cellular cochains by prepending a bar
// of size one: eps . e_t^dual = (-1)^{b(t)} e_{(b+1, (1,P), v)}^dual. This
// file computes the cochain-level matrices and the induced maps
// H_i(C_n) -> H_i(C_{n+1}) over a prime field.

namespace confhom {

// Matrix of the eps action from the bar-b cochains of `src` (weight n) to
// the bar-(b+1) cochains of `tgt` (weight n+1); integer entries +-1.
SparseMatrix eps_cochain_matrix(const ChainSlice& src, const ChainSlice& tgt, int bar);

// True iff eps is a cochain map between the two slices in every bar-degree.
bool eps_commutes_with_codifferential(const ChainSlice& src, const ChainSlice& tgt);

struct EpsActionReport {
    int n = 0;       // source weight
    int i = 0;       // homological degree, i = n - bar
    i64 dim_src = 0;  // dim H_i(C_n)
    i64 dim_tgt = 0;  // dim H_i(C_{n+1})
    bool injective = false;
    bool bijective = false;
};

// Induced maps on cohomology classes over F_p for all bidegrees of the
// source slice.
std::vector<EpsActionReport> eps_homology_action(const ChainSlice& src, const ChainSlice& tgt,
                                                 i64 p);

}  // namespace confhom
