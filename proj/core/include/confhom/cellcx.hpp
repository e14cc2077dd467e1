#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "confhom/umor.hpp"

// The cellular chain complex of compactified configuration spaces of a
// genus-g surface with one boundary curve. A record t = (b, P, v) indexes a
// cell of dimension n(t) + b, where n(t) = sum P_i + sum v_j; the generator
// e_t sits in weight -n(t) and bar-degree b. The differential has bidegree
// (0, -1): it preserves the weight, so the complex splits into finite
// slices, one per weight.

namespace confhom {

struct Record {
    std::vector<int> P;  // b positive bar sizes
    std::vector<int> v;  // 2g circle occupancies

    int b() const { return static_cast<int>(P.size()); }
    int n() const;
    int dim() const { return n() + b(); }

    auto key() const { return std::tuple(b(), P, v); }
    bool operator==(const Record&) const = default;
    bool operator<(const Record& o) const { return key() < o.key(); }
    std::string str() const;
};

using Chain = std::map<Record, i64>;

// All records of weight n, ordered by (b, P lex, v lex).
std::vector<Record> enumerate_records(int genus, int n);
// Count without materializing (memory guard).
i64 count_records(int genus, int n);
// Weak compositions of `sum` into `parts` nonnegative integers.
i64 count_weak_compositions(int sum, int parts);
i64 count_records_up_to(int genus, int max_n);

// d = d_B + d_M on a single record, extended from the (b, P, 0) formula by
// right multiplication with e_v.
Chain differential(const Record& t, int genus);
Chain apply_differential(const Chain& c, int genus);

// Superposition product, bilinear in both chains.
Chain chain_product(const Chain& a, const Chain& b, int genus);
Chain record_chain(const Record& t, i64 c = 1);

// Deconcatenation terms (left disc record, right record, sign) with sign
// (-1)^{(b-i) * (P_1+...+P_i)}, i = 0..b.
struct Deconcatenation {
    Record left;   // genus-0 record (empty v)
    Record right;  // same genus as input
    int sign;
};
std::vector<Deconcatenation> deconcatenate(const Record& t);

// Weight-n slice: records bucketed by bar-degree plus the differential
// matrices (bar b -> b-1); columns indexed by the bucket order.
class ChainSlice {
  public:
    ChainSlice(int genus, int n, bool verify_d_squared = true);

    int genus() const { return genus_; }
    int n() const { return n_; }
    int max_bar() const { return static_cast<int>(basis_.size()) - 1; }

    const std::vector<Record>& basis(int bar) const;
    int dim(int bar) const;
    int index_of(const Record& t) const;  // within its bucket
    // differential matrix from bar-degree b to b-1 (b >= 1)
    const SparseMatrix& diff(int bar) const;

    // Matrix of a chain endomorphism given record-wise, block of bar-degree b.
    SparseMatrix matrix_of(int bar, const std::function<Chain(const Record&)>& f) const;

  private:
    int genus_;
    int n_;
    std::vector<std::vector<Record>> basis_;
    std::map<Record, int> index_;
    std::vector<SparseMatrix> diff_;  // diff_[b]: bar b -> b-1; diff_[0] empty
};

// One homology group: field dimension, or free rank plus torsion orders.
struct HomologyEntry {
    i64 dim = 0;
    std::vector<i64> torsion;
    bool operator==(const HomologyEntry&) const = default;
};

struct HomologyTable {
    CoefficientRing ring;
    int genus = 0;
    std::map<std::pair<int, int>, HomologyEntry> entries;  // (n, i) -> entry

    HomologyEntry at(int n, int i) const;
};

// H_i(C_n) rows for this slice; i = n - bar. For Z the torsion is read off
// the Smith form of the transposed (cochain) differentials, which have the
// same invariant factors as the chain differentials.
std::map<int, HomologyEntry> slice_homology(const ChainSlice& slice, const CoefficientRing& ring);

// Action of a rank-2g free group endomorphism: identity on the bar part,
// UMor(phi) on the v part. One block matrix per bar-degree.
std::vector<SparseMatrix> act(const FreeGroupMap& phi, const ChainSlice& slice);

// True iff every act() block commutes with the differential.
bool act_commutes_with_differential(const FreeGroupMap& phi, const ChainSlice& slice);

// True iff the chain map given by `blocks` induces the identity on the
// homology of the slice over F_p.
bool induces_identity_on_homology(const ChainSlice& slice, const std::vector<SparseMatrix>& blocks,
                                  i64 p);

}  // namespace confhom
