#pragma once

#include "confhom/cellcx.hpp"
#include "confhom/weighted_module.hpp"

// The structural pipeline: B_u modules, tame-module machinery (free-narrow
// decomposition, propagation), the N_{u,i} recursion, Ext assembly, and the
// independent cobar oracle.

namespace confhom {

// Sparse bigraded dimension table, weight >= 0 and bar-degree <= 0, with
// explicit truncation bounds. Exact inside the stated window.
struct BigradedSeries {
    int max_weight = 0;
    int min_bar = 0;  // <= 0; entries kept have bar >= min_bar
    std::map<std::pair<int, int>, i64> dims;  // (weight, bar) -> dim

    void add(int weight, int bar, i64 d);
    i64 at(int weight, int bar) const;
    BigradedSeries convolved(const BigradedSeries& o) const;
    BigradedSeries shifted_weight(int s) const;
    BigradedSeries scaled(i64 c) const;
    bool agrees_with(const BigradedSeries& o, int max_weight_cap, int min_bar_cap,
                     std::string* first_mismatch = nullptr) const;
};

// ------------------------------------------------------------------- B_u ----

// B_u = F_p[z_1..z_u]/(z_i^2) with y^{[k]} acting by the k-th elementary
// subset sum (times 2^k in the doubled variant); a module over gamma(p).
WeightedModule build_Bu(int u, i64 p, bool doubled);

// ---------------------------------------------------------------- tameness --

struct TamenessReport {
    bool tame = true;
    std::vector<std::string> violations;
};

// Checks the necessary barcode conditions (palindromic around -u, narrow
// bars near the barycentre) for every relevant variable, and the
// freeness-in-range condition via greedily constructed psi_k.
TamenessReport check_tame(const WeightedModule& m, int u_shift);

// ------------------------------------------------------------- free-narrow --

struct FreeNarrow {
    WeightedModule F;        // free over the first variable of the algebra
    WeightedModule N;        // narrow; higher variables act as zero
    Barcode narrow_barcode;  // barcode of N over the first variable
    // change of basis per weight: columns are the F basis then the N basis,
    // expressed in M's coordinates (block-diagonalises every action)
    std::map<int, FpMatrix> basis;
    int free_generators = 0;
};

// Constructive decomposition M = F (+) N over the first variable of M's
// algebra. Throws a tameness-violation diagnostic when an interior solve
// has no solution.
FreeNarrow free_narrow(const WeightedModule& m, int u_shift);

// F/y_0 F with the induced action of the later variables, over the
// next-stage algebra. Requires F free over variable 0 (checked).
WeightedModule quotient_mod_variable(const WeightedModule& f);

// --------------------------------------------------------------- recursion --

struct NuiEntry {
    int stage = 0;       // i
    int u_shift = 0;     // u - p^i + 1: the tameness shift at this stage
    Barcode bars;        // barcode of N_{u,i} over y_i
};

// Alternates free_narrow and quotient_mod_variable starting from B_u.
// Stops when the module is exhausted; asserts the Theorem-C stage bound
// p^h - 1 <= u <= p^{h+1} - 2 and the narrow support windows.
std::vector<NuiEntry> compute_Nui(int u, i64 p, bool doubled);

// h with p^h - 1 <= u <= p^{h+1} - 2.
int theoremC_stage_bound(int u, i64 p);

// Poincare identity of the N_{u,i}: (1+s^-2)^u = sum_i P_{N_{u,i}}(s) *
// (1 + s^-2 + ... + s^{-2 p^i + 2}).
bool nui_poincare_identity(int u, i64 p, const std::vector<NuiEntry>& entries);

// ------------------------------------------------------------ Ext assembly --

// One summand of Ext(B_u) in the shape of the qualitative module-structure
// corollary: a bar (m, c) of N_{u,i}. For c = p the summand is free over
// the variables above stage i and annihilated by everything through
// (alpha_i, beta_i); for c < p it is spanned by two generators e0, e1 over
// F[beta_i] (x) F[alpha_j, beta_j : j > i], annihilated by alpha_j (j <= i)
// and beta_j (j < i).
struct ExtSummand {
    int stage = 0;
    int start = 0;  // bar start weight m
    int size = 0;   // bar size c
    // generator bidegrees: (-m, 0) and, when c < p, (-m + 2 p^i c, -1)
    std::vector<std::pair<int, int>> generators(i64 p) const;
    bool free_type(i64 p) const { return size == p; }
};

// Ext over F[y_i]/(y_i^p) of a single-variable barcode, inside the window.
BigradedSeries ext_of_barcode(const Barcode& bars, i64 p, int stage, int max_weight, int min_bar);

// Bigraded dimensions of F_p[alpha_j, beta_j : j >= from_stage], truncated.
BigradedSeries tail_ring_series(i64 p, int from_stage, int max_weight, int min_bar);

struct TheoremC {
    BigradedSeries series;
    std::vector<ExtSummand> summands;
    std::vector<NuiEntry> nui;
};

// Ext(B_u) assembled from the N_{u,i} barcodes per Theorem C.
TheoremC theoremC_assemble(int u, i64 p, int max_weight, int min_bar);

// Independent brute-force oracle: exact Ext^{-b}(M)(w) dimensions from the
// finite cobar cochain complex, for 0 <= w <= max_weight, 0 <= b <= -min_bar.
// M is a module over gamma(p).
BigradedSeries cobar_ext_dims(const WeightedModule& m, int max_weight, int min_bar,
                              int threads = 1);

// Matrix of y^{[c]} on a gamma(p)-module, via base-p digits of c.
FpMatrix divided_power_action(const WeightedModule& m, int c, int weight);

// ------------------------------------------------------- rational pipeline --

// Barcode of B_u over Gamma_Q(y) = Q[y]: l_{u,k} bars (-2k, u+1-2k).
Barcode rational_Bu_barcode(int u);
// Ext over Q[y]: each bar (m, c) gives classes at (-m, 0), (-m + 2c, -1).
BigradedSeries rational_ext_Bu(int u, int max_weight, int min_bar);

// --------------------------------------------------------------- Theorem B --

// Multiset of (u, weight shift) with multiplicities from the splitting of
// M_g: for r = 0..g, binom(g, r) 2^{g-r} copies of (r, r - g).
struct MgSummand {
    int u = 0;
    int shift = 0;  // r - g <= 0; Ext series shifts up by -shift
    i64 multiplicity = 0;
};
std::vector<MgSummand> split_Mg(int g);

// Bigraded homology dims of C_n(Sigma_{g,1}) via Theorem B: the product of
// the epsilon series, Ext(M_g) and the symmetric algebra on H_g, reindexed
// (n, i) = (weight, weight + bar). Supports F_p (odd p via Theorem C) and Q.
HomologyTable theoremB_betti(int g, const CoefficientRing& ring, int max_n);

// l_{u,k} = binom(u,k) - binom(u,k-1).
i64 sparse_count(int u, int k);
// Sparse subsets of {1..u} (as bitmasks, ascending), optionally capped size.
std::vector<unsigned> sparse_subsets(int u);

struct SparseToolsReport {
    bool counts_match = true;          // #sparse k-subsets == l_{u,k}
    bool theta_surjective = true;      // Theta_u onto in every weight
    bool theta_injective = true;       // Theta_{u,k} injective in range
    bool hard_lefschetz = true;        // z_T in the range submodule
    bool duality_shift = true;         // barcode(B_u^dual) = barcode(B_u)[2u]
    bool doubled_conjugate = true;     // doubled ~ plain via z_S -> 2^{|S|} z_S
    std::vector<std::string> violations;
    bool all() const {
        return counts_match && theta_surjective && theta_injective && hard_lefschetz &&
               duality_shift && doubled_conjugate;
    }
};

SparseToolsReport sparse_tools(int u, i64 p);

}  // namespace confhom
