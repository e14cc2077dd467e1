#include "confhom/exactla.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace confhom {

i64 fp_pow(i64 a, i64 e, i64 p) {
    a = fp_norm(a, p);
    i64 r = 1 % p;
    while (e > 0) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

i64 fp_inv(i64 a, i64 p) {
    a = fp_norm(a, p);
    if (a == 0) throw std::domain_error("fp_inv: zero is not invertible");
    // extended Euclid
    i64 t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        i64 q = r / new_r;
        std::swap(t -= q * new_t, new_t);
        std::swap(r -= q * new_r, new_r);
    }
    assert(r == 1);
    return fp_norm(t, p);
}

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

CoefficientRing CoefficientRing::prime_field(i64 p) {
    if (p >= (i64(1) << 31) || !is_prime(p))
        throw std::invalid_argument("prime_field: p must be a prime below 2^31");
    return {RingKind::PrimeField, p};
}

std::string CoefficientRing::name() const {
    switch (kind) {
        case RingKind::PrimeField: return "F" + std::to_string(p);
        case RingKind::Rationals: return "Q";
        case RingKind::Integers: return "Z";
    }
    return "?";
}

// ---------------------------------------------------------- sparse matrix --

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<MatrixEntry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
        return std::pair(a.row, a.col) < std::pair(b.row, b.col);
    });
    for (size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_)
            throw std::invalid_argument("SparseMatrix: entry out of range");
        if (e.value == 0) throw std::invalid_argument("SparseMatrix: stored zero");
        if (i > 0 && entries_[i - 1].row == e.row && entries_[i - 1].col == e.col)
            throw std::invalid_argument("SparseMatrix: duplicate entry");
    }
}

void SparseMatrix::push(int r, int c, i64 v) {
    if (v == 0) return;
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::invalid_argument("SparseMatrix::push: out of range");
    if (!entries_.empty()) {
        const auto& last = entries_.back();
        if (std::pair(last.row, last.col) >= std::pair(r, c))
            throw std::invalid_argument("SparseMatrix::push: not row-major ordered");
    }
    entries_.push_back({r, c, v});
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.push(i, i, 1);
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<i64>>& a) {
    int rows = static_cast<int>(a.size());
    int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    SparseMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(a[r].size()) != cols)
            throw std::invalid_argument("from_dense: ragged rows");
        for (int c = 0; c < cols; ++c) m.push(r, c, a[r][c]);
    }
    return m;
}

SparseMatrix SparseMatrix::transposed() const {
    std::vector<MatrixEntry> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    return SparseMatrix(cols_, rows_, std::move(t));
}

std::vector<std::vector<i64>> SparseMatrix::to_dense() const {
    std::vector<std::vector<i64>> a(rows_, std::vector<i64>(cols_, 0));
    for (const auto& e : entries_) a[e.row][e.col] = e.value;
    return a;
}

// ------------------------------------------------------------------ rank ----

namespace {

// Column-echelon reduction; Col is a vector of (row, coeff) sorted by row,
// reduced against earlier columns by their largest ("low") row index.
template <typename Scalar, typename Ops>
int column_echelon_rank(int cols, const std::vector<std::vector<std::pair<int, Scalar>>>& columns,
                        const Ops& ops) {
    std::map<int, int> pivot_of_low;  // low row -> index into reduced
    std::vector<std::vector<std::pair<int, Scalar>>> reduced;
    reduced.reserve(columns.size());
    int rk = 0;
    std::vector<std::pair<int, Scalar>> work, tmp;
    for (int j = 0; j < cols; ++j) {
        work = columns[j];
        while (!work.empty()) {
            int low = work.back().first;
            auto it = pivot_of_low.find(low);
            if (it == pivot_of_low.end()) break;
            const auto& piv = reduced[it->second];
            Scalar c = ops.neg_ratio(work.back().second, piv.back().second);
            // work += c * piv, merged by row
            tmp.clear();
            size_t a = 0, b = 0;
            while (a < work.size() || b < piv.size()) {
                if (b == piv.size() || (a < work.size() && work[a].first < piv[b].first)) {
                    tmp.push_back(work[a++]);
                } else if (a == work.size() || piv[b].first < work[a].first) {
                    Scalar v = ops.mul(c, piv[b].second);
                    if (!ops.is_zero(v)) tmp.emplace_back(piv[b].first, v);
                    ++b;
                } else {
                    Scalar v = ops.add(work[a].second, ops.mul(c, piv[b].second));
                    if (!ops.is_zero(v)) tmp.emplace_back(work[a].first, v);
                    ++a, ++b;
                }
            }
            work.swap(tmp);
        }
        if (!work.empty()) {
            pivot_of_low[work.back().first] = static_cast<int>(reduced.size());
            reduced.push_back(work);
            ++rk;
        }
    }
    return rk;
}

struct FpOps {
    i64 p;
    bool is_zero(i64 v) const { return v == 0; }
    i64 add(i64 a, i64 b) const { return fp_norm(a + b, p); }
    i64 mul(i64 a, i64 b) const { return fp_mul(a, b, p); }
    i64 neg_ratio(i64 a, i64 b) const { return fp_norm(-a * fp_inv(b, p), p); }
};

struct QOps {
    bool is_zero(const mpq_class& v) const { return v == 0; }
    mpq_class add(const mpq_class& a, const mpq_class& b) const { return a + b; }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return a * b; }
    mpq_class neg_ratio(const mpq_class& a, const mpq_class& b) const { return -a / b; }
};

template <typename Scalar>
std::vector<std::vector<std::pair<int, Scalar>>> columns_of(const SparseMatrix& m,
                                                            auto&& convert) {
    std::vector<std::vector<std::pair<int, Scalar>>> cols(m.cols());
    for (const auto& e : m.entries()) {
        Scalar v = convert(e.value);
        if (!(v == Scalar(0))) cols[e.col].emplace_back(e.row, v);
    }
    for (auto& c : cols) std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return cols;
}

}  // namespace

int rank_mod_p(const SparseMatrix& m, i64 p) {
    auto cols = columns_of<i64>(m, [p](i64 v) { return fp_norm(v, p); });
    return column_echelon_rank<i64>(m.cols(), cols, FpOps{p});
}

int rank_rational(const SparseMatrix& m) {
    auto cols = columns_of<mpq_class>(m, [](i64 v) { return mpq_class(static_cast<long>(v)); });
    return column_echelon_rank<mpq_class>(m.cols(), cols, QOps{});
}

int rank(const SparseMatrix& m, const CoefficientRing& ring) {
    switch (ring.kind) {
        case RingKind::PrimeField: return rank_mod_p(m, ring.p);
        case RingKind::Rationals: return rank_rational(m);
        case RingKind::Integers:
            throw std::invalid_argument("rank: use smith_normal_form over the integers");
    }
    return 0;
}

// ------------------------------------------------------------------- SNF ----

namespace {

// Quotient minimizing |a - q*b|.
mpz_class balanced_quot(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > abs(b)) q += (b > 0 ? 1 : -1);
    return q;
}

struct SnfWorkspace {
    std::vector<std::map<int, mpz_class>> row;  // row -> (col -> value)
    std::vector<std::set<int>> col_rows;        // col -> rows with a nonzero

    void set(int r, int c, const mpz_class& v) {
        if (v == 0) {
            row[r].erase(c);
            col_rows[c].erase(r);
        } else {
            row[r][c] = v;
            col_rows[c].insert(r);
        }
    }
    mpz_class get(int r, int c) const {
        auto it = row[r].find(c);
        return it == row[r].end() ? mpz_class(0) : it->second;
    }
    // row[r] -= q * row[i]
    void row_sub(int r, int i, const mpz_class& q) {
        for (const auto& [c, v] : row[i]) set(r, c, get(r, c) - q * v);
    }
    // col[c] -= q * col[j]
    void col_sub(int c, int j, const mpz_class& q) {
        auto rows = col_rows[j];  // copy; mutation below
        for (int r : rows) set(r, c, get(r, c) - q * get(r, j));
    }
};

}  // namespace

SmithForm smith_normal_form(const SparseMatrix& m) {
    SnfWorkspace w;
    w.row.resize(m.rows());
    w.col_rows.resize(m.cols());
    for (const auto& e : m.entries()) w.set(e.row, e.col, mpz_class(static_cast<long>(e.value)));

    std::vector<mpz_class> diag;
    std::vector<bool> row_done(m.rows(), false), col_done(m.cols(), false);

    while (true) {
        // pivot with minimal absolute value keeps coefficient growth down
        int pi = -1, pj = -1;
        mpz_class best;
        for (int r = 0; r < m.rows(); ++r) {
            if (row_done[r]) continue;
            for (const auto& [c, v] : w.row[r]) {
                if (col_done[c]) continue;
                mpz_class av = abs(v);
                if (pi < 0 || av < best) {
                    best = av;
                    pi = r;
                    pj = c;
                    if (best == 1) break;
                }
            }
            if (pi >= 0 && best == 1) break;
        }
        if (pi < 0) break;

        for (bool stable = false; !stable;) {
            stable = true;
            // clear column pj
            for (bool again = true; again;) {
                again = false;
                auto rows = w.col_rows[pj];
                for (int r : rows) {
                    if (r == pi || row_done[r]) continue;
                    mpz_class piv = w.get(pi, pj);
                    mpz_class q = balanced_quot(w.get(r, pj), piv);
                    w.row_sub(r, pi, q);
                    if (w.get(r, pj) != 0) {
                        pi = r;  // smaller remainder takes over as pivot
                        again = true;
                        break;
                    }
                }
            }
            // clear row pi
            for (bool again = true; again;) {
                again = false;
                auto cols = w.row[pi];
                for (const auto& [c, v0] : cols) {
                    if (c == pj || col_done[c]) continue;
                    mpz_class piv = w.get(pi, pj);
                    mpz_class q = balanced_quot(w.get(pi, c), piv);
                    w.col_sub(c, pj, q);
                    if (w.get(pi, c) != 0) {
                        pj = c;
                        again = true;
                        break;
                    }
                }
                if (again) stable = false;  // column clearing must be redone
            }
            if (!stable) continue;
            // pivot must divide every remaining entry before being split off
            mpz_class piv = w.get(pi, pj);
            bool fixed = false;
            for (int r = 0; r < m.rows() && !fixed; ++r) {
                if (row_done[r] || r == pi) continue;
                for (const auto& [c, v] : w.row[r]) {
                    if (col_done[c]) continue;
                    if (v % piv != 0) {
                        w.row_sub(pi, r, mpz_class(-1));  // row_pi += row_r
                        fixed = true;
                        break;
                    }
                }
            }
            if (fixed) stable = false;
        }

        diag.push_back(abs(w.get(pi, pj)));
        row_done[pi] = true;
        col_done[pj] = true;
        w.set(pi, pj, 0);
    }

    // enforce d_1 | d_2 | ... by pairwise gcd/lcm exchanges
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i + 1 < diag.size(); ++i) {
            for (size_t j = i + 1; j < diag.size(); ++j) {
                if (diag[j] % diag[i] != 0) {
                    mpz_class g = gcd(diag[i], diag[j]);
                    mpz_class l = diag[i] / g * diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
    }
    std::sort(diag.begin(), diag.end());

    SmithForm out;
    for (const auto& d : diag) {
        if (!d.fits_slong_p())
            throw std::overflow_error("smith_normal_form: invariant factor exceeds 64 bits");
        out.invariant_factors.push_back(d.get_si());
    }
    return out;
}

std::vector<i64> SmithForm::torsion() const {
    std::vector<i64> t;
    for (i64 d : invariant_factors)
        if (d > 1) t.push_back(d);
    return t;
}

int SmithForm::rank_mod(i64 p) const {
    int r = 0;
    for (i64 d : invariant_factors)
        if (d % p != 0) ++r;
    return r;
}

// ------------------------------------------------------------------ solve ----

std::optional<std::vector<i64>> solve_mod_p(const SparseMatrix& m, const std::vector<i64>& b,
                                            i64 p) {
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve_mod_p: dimension mismatch");
    int R = m.rows(), C = m.cols();
    std::vector<std::vector<i64>> a(R, std::vector<i64>(C + 1, 0));
    for (const auto& e : m.entries()) a[e.row][e.col] = fp_norm(e.value, p);
    for (int r = 0; r < R; ++r) a[r][C] = fp_norm(b[r], p);

    std::vector<int> pivot_col(R, -1);
    int prow = 0;
    for (int c = 0; c < C && prow < R; ++c) {
        int sel = -1;
        for (int r = prow; r < R; ++r)
            if (a[r][c] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(a[sel], a[prow]);
        i64 inv = fp_inv(a[prow][c], p);
        for (int k = c; k <= C; ++k) a[prow][k] = fp_mul(a[prow][k], inv, p);
        for (int r = 0; r < R; ++r) {
            if (r == prow || a[r][c] == 0) continue;
            i64 f = a[r][c];
            for (int k = c; k <= C; ++k) a[r][k] = fp_norm(a[r][k] - f * a[prow][k], p);
        }
        pivot_col[prow] = c;
        ++prow;
    }
    for (int r = prow; r < R; ++r)
        if (a[r][C] != 0) return std::nullopt;
    std::vector<i64> x(C, 0);
    for (int r = 0; r < prow; ++r) x[pivot_col[r]] = a[r][C];
    return x;
}

std::optional<RationalVector> solve_rational(const SparseMatrix& m, const std::vector<i64>& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve_rational: dimension mismatch");
    int R = m.rows(), C = m.cols();
    std::vector<std::vector<mpq_class>> a(R, std::vector<mpq_class>(C + 1, 0));
    for (const auto& e : m.entries()) a[e.row][e.col] = static_cast<long>(e.value);
    for (int r = 0; r < R; ++r) a[r][C] = static_cast<long>(b[r]);

    std::vector<int> pivot_col(R, -1);
    int prow = 0;
    for (int c = 0; c < C && prow < R; ++c) {
        int sel = -1;
        for (int r = prow; r < R; ++r)
            if (a[r][c] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(a[sel], a[prow]);
        mpq_class inv = 1 / a[prow][c];
        for (int k = c; k <= C; ++k) a[prow][k] *= inv;
        for (int r = 0; r < R; ++r) {
            if (r == prow || a[r][c] == 0) continue;
            mpq_class f = a[r][c];
            for (int k = c; k <= C; ++k) a[r][k] -= f * a[prow][k];
        }
        pivot_col[prow] = c;
        ++prow;
    }
    for (int r = prow; r < R; ++r)
        if (a[r][C] != 0) return std::nullopt;

    std::vector<mpq_class> x(C, 0);
    for (int r = 0; r < prow; ++r) x[pivot_col[r]] = a[r][C];
    mpz_class den = 1;
    for (const auto& v : x) den = lcm(den, v.get_den());
    RationalVector out;
    out.num.resize(C);
    for (int c = 0; c < C; ++c) {
        mpz_class n = x[c].get_num() * (den / x[c].get_den());
        if (!n.fits_slong_p() || !den.fits_slong_p())
            throw std::overflow_error("solve_rational: solution exceeds 64 bits");
        out.num[c] = n.get_si();
    }
    out.den = den.get_si();
    return out;
}

std::optional<RationalVector> solve_linear(const SparseMatrix& m, const std::vector<i64>& b,
                                           const CoefficientRing& ring) {
    switch (ring.kind) {
        case RingKind::PrimeField: {
            auto x = solve_mod_p(m, b, ring.p);
            if (!x) return std::nullopt;
            return RationalVector{std::move(*x), 1};
        }
        case RingKind::Rationals:
            return solve_rational(m, b);
        case RingKind::Integers:
            throw std::invalid_argument("solve_linear: pick a field (use smith_normal_form over Z)");
    }
    return std::nullopt;
}

// ------------------------------------------------------------- dense F_p ----

FpMatrix FpMatrix::identity(int n, i64 p) {
    FpMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
}

bool FpMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](i64 v) { return v == 0; });
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("FpMatrix::mul: shape mismatch");
    FpMatrix r(rows_, o.cols_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            i64 v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = fp_norm(r.at(i, j) + v * o.at(k, j), p_);
        }
    return r;
}

FpMatrix FpMatrix::add(const FpMatrix& o) const {
    if (cols_ != o.cols_ || rows_ != o.rows_ || p_ != o.p_)
        throw std::invalid_argument("FpMatrix::add: shape mismatch");
    FpMatrix r(rows_, cols_, p_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp_norm(a_[i] + o.a_[i], p_);
    return r;
}

FpMatrix FpMatrix::scaled(i64 c) const {
    FpMatrix r(rows_, cols_, p_);
    c = fp_norm(c, p_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp_mul(a_[i], c, p_);
    return r;
}

FpMatrix FpMatrix::transposed() const {
    FpMatrix r(cols_, rows_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

FpMatrix FpMatrix::pow(int e) const {
    if (rows_ != cols_) throw std::invalid_argument("FpMatrix::pow: square matrices only");
    FpMatrix r = identity(rows_, p_), base = *this;
    while (e > 0) {
        if (e & 1) r = r.mul(base);
        base = base.mul(base);
        e >>= 1;
    }
    return r;
}

namespace {

// Row echelon in place; returns pivot columns.
std::vector<int> row_echelon(FpMatrix& m) {
    std::vector<int> pivots;
    int prow = 0;
    for (int c = 0; c < m.cols() && prow < m.rows(); ++c) {
        int sel = -1;
        for (int r = prow; r < m.rows(); ++r)
            if (m.at(r, c) != 0) { sel = r; break; }
        if (sel < 0) continue;
        if (sel != prow)
            for (int k = 0; k < m.cols(); ++k) std::swap(m.at(sel, k), m.at(prow, k));
        i64 inv = fp_inv(m.at(prow, c), m.p());
        for (int k = c; k < m.cols(); ++k) m.at(prow, k) = fp_mul(m.at(prow, k), inv, m.p());
        for (int r = 0; r < m.rows(); ++r) {
            if (r == prow || m.at(r, c) == 0) continue;
            i64 f = m.at(r, c);
            for (int k = c; k < m.cols(); ++k)
                m.at(r, k) = fp_norm(m.at(r, k) - f * m.at(prow, k), m.p());
        }
        pivots.push_back(c);
        ++prow;
    }
    return pivots;
}

}  // namespace

int FpMatrix::rank() const {
    FpMatrix c = *this;
    return static_cast<int>(row_echelon(c).size());
}

FpMatrix FpMatrix::kernel_basis() const {
    FpMatrix e = *this;
    auto pivots = row_echelon(e);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    int nfree = cols_ - static_cast<int>(pivots.size());
    FpMatrix k(cols_, nfree, p_);
    int out = 0;
    for (int c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        k.at(c, out) = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            k.at(pivots[r], out) = fp_norm(-e.at(static_cast<int>(r), c), p_);
        ++out;
    }
    return k;
}

FpMatrix FpMatrix::image_basis() const {
    FpMatrix e = *this;
    auto pivots = row_echelon(e);
    FpMatrix b(rows_, static_cast<int>(pivots.size()), p_);
    for (size_t j = 0; j < pivots.size(); ++j)
        for (int r = 0; r < rows_; ++r) b.at(r, static_cast<int>(j)) = at(r, pivots[j]);
    return b;
}

FpMatrix FpMatrix::hstack(const FpMatrix& o) const {
    if (rows_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("hstack: shape mismatch");
    FpMatrix r(rows_, cols_ + o.cols_, p_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

FpMatrix FpMatrix::vstack(const FpMatrix& o) const {
    if (cols_ != o.cols_ || p_ != o.p_) throw std::invalid_argument("vstack: shape mismatch");
    FpMatrix r(rows_ + o.rows_, cols_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

std::vector<i64> FpMatrix::apply(const std::vector<i64>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<i64> y(rows_, 0);
    for (int i = 0; i < rows_; ++i) {
        i64 acc = 0;
        for (int j = 0; j < cols_; ++j) acc = fp_norm(acc + at(i, j) * fp_norm(x[j], p_), p_);
        y[i] = acc;
    }
    return y;
}

std::optional<std::vector<i64>> FpMatrix::solve(const std::vector<i64>& b) const {
    SparseMatrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (at(r, c) != 0) m.push(r, c, at(r, c));
    return solve_mod_p(m, b, p_);
}

FpMatrix FpMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: square matrices only");
    FpMatrix aug = hstack(identity(rows_, p_));
    auto pivots = row_echelon(aug);
    if (static_cast<int>(pivots.size()) != rows_)
        throw std::domain_error("inverse: singular matrix");
    FpMatrix inv(rows_, rows_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

int fp_span_rank(const FpMatrix& a, const FpMatrix& b) { return a.hstack(b).rank(); }

FpMatrix fp_complement_in(const FpMatrix& want, const FpMatrix& have) {
    FpMatrix acc = have;
    int base = have.rank();
    std::vector<int> keep;
    for (int j = 0; j < want.cols(); ++j) {
        FpMatrix col(want.rows(), 1, want.p());
        for (int r = 0; r < want.rows(); ++r) col.at(r, 0) = want.at(r, j);
        FpMatrix test = acc.hstack(col);
        if (test.rank() > base) {
            acc = test;
            ++base;
            keep.push_back(j);
        }
    }
    FpMatrix out(want.rows(), static_cast<int>(keep.size()), want.p());
    for (size_t j = 0; j < keep.size(); ++j)
        for (int r = 0; r < want.rows(); ++r) out.at(r, static_cast<int>(j)) = want.at(r, keep[j]);
    return out;
}

FpMatrix fp_intersection(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows() != b.rows() || a.p() != b.p())
        throw std::invalid_argument("fp_intersection: shape mismatch");
    FpMatrix k = a.hstack(b).kernel_basis();
    FpMatrix vecs(a.rows(), k.cols(), a.p());
    for (int j = 0; j < k.cols(); ++j)
        for (int r = 0; r < a.rows(); ++r) {
            i64 acc = 0;
            for (int c = 0; c < a.cols(); ++c)
                acc = fp_norm(acc + a.at(r, c) * k.at(c, j), a.p());
            vecs.at(r, j) = acc;
        }
    return vecs.image_basis();
}

}  // namespace confhom
