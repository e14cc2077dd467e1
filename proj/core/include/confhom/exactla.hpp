#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact sparse linear algebra over F_p, Q and Z: rank, Smith normal form
// and linear solving. Everything in this artifact produces matrices with
// integer entries; the coefficient ring selects the semantics.

namespace confhom {

using i64 = long long;

// ---------------------------------------------------------------- F_p ----

// Normalises x into [0, p). p is an odd-or-2 prime below 2^31.
inline i64 fp_norm(i64 x, i64 p) {
    i64 r = x % p;
    return r < 0 ? r + p : r;
}

inline i64 fp_mul(i64 a, i64 b, i64 p) { return (a * b) % p; }

i64 fp_pow(i64 a, i64 e, i64 p);
i64 fp_inv(i64 a, i64 p);

bool is_prime(i64 p);

// ------------------------------------------------------ coefficient ring --

enum class RingKind { PrimeField, Rationals, Integers };

struct CoefficientRing {
    RingKind kind = RingKind::Rationals;
    i64 p = 0;  // prime, only for PrimeField

    static CoefficientRing prime_field(i64 p);
    static CoefficientRing rationals() { return {RingKind::Rationals, 0}; }
    static CoefficientRing integers() { return {RingKind::Integers, 0}; }

    bool is_field() const { return kind != RingKind::Integers; }
    std::string name() const;
};

// ---------------------------------------------------------- sparse matrix --

struct MatrixEntry {
    int row = 0;
    int col = 0;
    i64 value = 0;
    bool operator==(const MatrixEntry&) const = default;
};

// Sparse matrix with integer entries; no duplicate positions, no stored
// zeros. Entries are kept sorted row-major so iteration order (and hence
// every downstream output) is reproducible.
class SparseMatrix {
  public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
    SparseMatrix(int rows, int cols, std::vector<MatrixEntry> entries);

    static SparseMatrix identity(int n);
    static SparseMatrix from_dense(const std::vector<std::vector<i64>>& a);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<MatrixEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    // Adds v at (r, c); entries must be pushed in strictly increasing
    // row-major order. Zero values are skipped.
    void push(int r, int c, i64 v);

    SparseMatrix transposed() const;
    std::vector<std::vector<i64>> to_dense() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<MatrixEntry> entries_;
};

// -------------------------------------------------------------- operations --

// Rank over the given field (PrimeField or Rationals). Rejects Integers.
int rank(const SparseMatrix& m, const CoefficientRing& ring);

int rank_mod_p(const SparseMatrix& m, i64 p);
int rank_rational(const SparseMatrix& m);

// Invariant factors d_1 | d_2 | ... | d_r of an integer matrix. The
// cokernel of the map is Z^{cols-r} (+) sum of Z/d_i.
struct SmithForm {
    std::vector<i64> invariant_factors;

    int matrix_rank() const { return static_cast<int>(invariant_factors.size()); }
    // Factors > 1, i.e. the torsion orders of the cokernel.
    std::vector<i64> torsion() const;
    // Number of factors not divisible by p = rank of the matrix mod p.
    int rank_mod(i64 p) const;
};

SmithForm smith_normal_form(const SparseMatrix& m);

// A solution x of m x = b over the given field, or nullopt when b is not in
// the column space. Over the rationals the result is returned as a pair of
// (numerators, common denominator).
struct RationalVector {
    std::vector<i64> num;
    i64 den = 1;
};

std::optional<std::vector<i64>> solve_mod_p(const SparseMatrix& m,
                                            const std::vector<i64>& b, i64 p);
std::optional<RationalVector> solve_rational(const SparseMatrix& m,
                                             const std::vector<i64>& b);
// Dispatcher over the two field cases; rejects the integers.
std::optional<RationalVector> solve_linear(const SparseMatrix& m, const std::vector<i64>& b,
                                           const CoefficientRing& ring);

// ------------------------------------------------------------ dense F_p ----

// Small dense matrix over F_p; the workhorse of the structural pipeline,
// where weight-homogeneous blocks are tiny.
class FpMatrix {
  public:
    FpMatrix() = default;
    FpMatrix(int rows, int cols, i64 p)
        : rows_(rows), cols_(cols), p_(p), a_(static_cast<size_t>(rows) * cols, 0) {}

    static FpMatrix identity(int n, i64 p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    i64 p() const { return p_; }

    i64& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    i64 at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, i64 v) { at(r, c) = fp_norm(v, p_); }

    bool is_zero() const;
    bool operator==(const FpMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    FpMatrix mul(const FpMatrix& o) const;
    FpMatrix add(const FpMatrix& o) const;
    FpMatrix scaled(i64 c) const;
    FpMatrix transposed() const;
    FpMatrix pow(int e) const;  // square matrices only

    int rank() const;
    // Basis of the kernel / column space, as column matrices.
    FpMatrix kernel_basis() const;
    FpMatrix image_basis() const;

    // Columns of `cols` appended to the right.
    FpMatrix hstack(const FpMatrix& o) const;
    FpMatrix vstack(const FpMatrix& o) const;

    std::vector<i64> apply(const std::vector<i64>& x) const;
    std::optional<std::vector<i64>> solve(const std::vector<i64>& b) const;
    FpMatrix inverse() const;  // throws if singular

  private:
    int rows_ = 0;
    int cols_ = 0;
    i64 p_ = 2;
    std::vector<i64> a_;
};

// Rank of a subspace sum: columns of a and b together.
int fp_span_rank(const FpMatrix& a, const FpMatrix& b);

// Extends the column space of `have` to that of `want`: returns columns of
// `want` that are independent of `have` (greedy, deterministic order).
FpMatrix fp_complement_in(const FpMatrix& want, const FpMatrix& have);

// Intersection of two column spaces, as a column basis.
FpMatrix fp_intersection(const FpMatrix& a, const FpMatrix& b);

}  // namespace confhom
