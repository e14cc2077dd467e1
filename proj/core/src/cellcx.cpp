#include "confhom/cellcx.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace confhom {

int Record::n() const {
    return std::accumulate(P.begin(), P.end(), 0) + std::accumulate(v.begin(), v.end(), 0);
}

std::string Record::str() const {
    std::ostringstream os;
    os << "(" << b() << ",(";
    for (size_t i = 0; i < P.size(); ++i) os << (i ? "," : "") << P[i];
    os << "),(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "))";
    return os.str();
}

namespace {

void compositions_of(int m, std::vector<std::vector<int>>& out) {
    out.clear();
    if (m == 0) {
        out.push_back({});
        return;
    }
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int first = 1; first <= rem; ++first) {
            cur.push_back(first);
            self(self, rem - first);
            cur.pop_back();
        }
    };
    rec(rec, m);
}

void chain_add(Chain& ch, const Record& t, i64 c) {
    if (c == 0) return;
    i64& slot = ch[t];
    slot += c;
    if (slot == 0) ch.erase(t);
}

}  // namespace

std::vector<Record> enumerate_records(int genus, int n) {
    if (n < 0) throw std::invalid_argument("enumerate_records: negative weight");
    std::vector<Record> out;
    std::vector<std::vector<int>> comps;
    for (int m = 0; m <= n; ++m) {
        compositions_of(m, comps);
        auto vs = umor_monomials_of_weight(2 * genus, n - m);
        for (const auto& P : comps)
            for (const auto& v : vs) out.push_back({P, v});
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 count_weak_compositions(int sum, int parts) {
    if (parts == 0) return sum == 0 ? 1 : 0;
    return binomial(sum + parts - 1, parts - 1);
}

i64 count_records(int genus, int n) {
    i64 total = 0;
    for (int m = 0; m <= n; ++m) {
        i64 comp = m == 0 ? 1 : (i64(1) << (m - 1));
        total += comp * count_weak_compositions(n - m, 2 * genus);
    }
    return total;
}

i64 count_records_up_to(int genus, int max_n) {
    i64 total = 0;
    for (int n = 0; n <= max_n; ++n) total += count_records(genus, n);
    return total;
}

Chain record_chain(const Record& t, i64 c) {
    Chain ch;
    if (c != 0) ch[t] = c;
    return ch;
}

Chain differential(const Record& t, int genus) {
    Chain out;
    int b = t.b();
    if (b == 0) return out;
    // d_B: adjacent bars collide
    for (int i = 1; i <= b - 1; ++i) {
        i64 ss = signed_shuffle_coeff(t.P[i - 1], t.P[i]);
        if (ss == 0) continue;
        Record m;
        m.P = t.P;
        m.P[i - 1] += m.P[i];
        m.P.erase(m.P.begin() + i);
        m.v = t.v;
        chain_add(out, m, (i % 2 ? -1 : 1) * ss);
    }
    // d_M: the right-most bar collides with the embedded bouquet
    UMorElement big = umor_big_omega(genus, t.P[b - 1]);
    if (!big.is_zero()) {
        UMorElement prod = big * UMorElement::from_vector(t.v);
        std::vector<int> head(t.P.begin(), t.P.end() - 1);
        i64 sign = (b % 2) ? -1 : 1;
        for (const auto& [w, c] : prod.terms()) chain_add(out, Record{head, w}, sign * c);
    }
    return out;
}

Chain apply_differential(const Chain& c, int genus) {
    Chain out;
    for (const auto& [t, coef] : c)
        for (const auto& [s, d] : differential(t, genus)) chain_add(out, s, coef * d);
    return out;
}

namespace {

// e_t e_s expanded over shuffles of the bar blocks with P-twisted signs,
// the UMor product on the v parts, the global sign (-1)^{b' sum(P)} of the
// bar product and the Koszul sign for moving e_v past the second bar block.
void record_product(const Record& a, const Record& b, i64 scale, Chain& out) {
    int ba = a.b(), bb = b.b();
    i64 sumPa = std::accumulate(a.P.begin(), a.P.end(), i64(0));
    i64 sumPb = std::accumulate(b.P.begin(), b.P.end(), i64(0));
    i64 dva = std::accumulate(a.v.begin(), a.v.end(), i64(0));

    UMorElement vprod = UMorElement::from_vector(a.v) * UMorElement::from_vector(b.v);
    if (vprod.is_zero()) return;

    i64 outer = scale;
    if ((dva * (bb + sumPb)) & 1) outer = -outer;
    if ((bb * sumPa) & 1) outer = -outer;

    // shuffles: positions of a's bars among 0..ba+bb-1, in order
    std::vector<int> pos(ba);
    std::iota(pos.begin(), pos.end(), 0);
    while (true) {
        std::vector<bool> taken(ba + bb, false);
        for (int p : pos) taken[p] = true;
        std::vector<int> comp;
        for (int p = 0; p < ba + bb; ++p)
            if (!taken[p]) comp.push_back(p);
        // inversions of the shuffle are exactly the cross pairs with
        // pos[i] > comp[t]; each contributes 1 + P_i P'_t to the twist
        i64 N = 0;
        for (int i = 0; i < ba; ++i)
            for (int t = 0; t < bb; ++t)
                if (pos[i] > comp[t]) N += 1 + i64(a.P[i]) * b.P[t];
        i64 sgn = (N & 1) ? -1 : 1;
        std::vector<int> Q(ba + bb);
        for (int i = 0; i < ba; ++i) Q[pos[i]] = a.P[i];
        for (int t = 0; t < bb; ++t) Q[comp[t]] = b.P[t];
        for (const auto& [w, cw] : vprod.terms()) chain_add(out, Record{Q, w}, outer * sgn * cw);

        if (ba == 0) break;
        int i = ba - 1;
        while (i >= 0 && pos[i] == bb + i) --i;
        if (i < 0) break;
        ++pos[i];
        for (int j = i + 1; j < ba; ++j) pos[j] = pos[j - 1] + 1;
    }
}

}  // namespace

Chain chain_product(const Chain& a, const Chain& b, int genus) {
    (void)genus;
    Chain out;
    for (const auto& [t, ct] : a)
        for (const auto& [s, cs] : b) record_product(t, s, ct * cs, out);
    return out;
}

std::vector<Deconcatenation> deconcatenate(const Record& t) {
    std::vector<Deconcatenation> out;
    int b = t.b();
    i64 prefix = 0;
    for (int i = 0; i <= b; ++i) {
        if (i > 0) prefix += t.P[i - 1];
        Record left{std::vector<int>(t.P.begin(), t.P.begin() + i), {}};
        Record right{std::vector<int>(t.P.begin() + i, t.P.end()), t.v};
        int sign = ((i64(b - i) * prefix) & 1) ? -1 : 1;
        out.push_back({std::move(left), std::move(right), sign});
    }
    return out;
}

ChainSlice::ChainSlice(int genus, int n, bool verify_d_squared) : genus_(genus), n_(n) {
    auto records = enumerate_records(genus, n);
    basis_.resize(n + 1);
    for (auto& t : records) basis_[t.b()].push_back(t);
    for (int b = 0; b <= n; ++b)
        for (size_t j = 0; j < basis_[b].size(); ++j) index_[basis_[b][j]] = static_cast<int>(j);

    diff_.resize(n + 1);
    for (int b = 1; b <= n; ++b) {
        std::vector<MatrixEntry> entries;
        for (size_t j = 0; j < basis_[b].size(); ++j) {
            for (const auto& [s, c] : differential(basis_[b][j], genus_)) {
                auto it = index_.find(s);
                if (it == index_.end()) throw std::logic_error("differential leaves the slice");
                entries.push_back({it->second, static_cast<int>(j), c});
            }
        }
        diff_[b] = SparseMatrix(dim(b - 1), dim(b), std::move(entries));
    }
    diff_[0] = SparseMatrix(0, dim(0));

    if (verify_d_squared) {
        for (int b = 2; b <= n; ++b)
            for (const auto& t : basis_[b])
                if (!apply_differential(differential(t, genus_), genus_).empty())
                    throw std::logic_error("d^2 != 0 at " + t.str());
    }
}

const std::vector<Record>& ChainSlice::basis(int bar) const {
    static const std::vector<Record> kEmpty;
    if (bar < 0 || bar > max_bar()) return kEmpty;
    return basis_[bar];
}

int ChainSlice::dim(int bar) const { return static_cast<int>(basis(bar).size()); }

int ChainSlice::index_of(const Record& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) throw std::invalid_argument("index_of: record not in slice");
    return it->second;
}

const SparseMatrix& ChainSlice::diff(int bar) const {
    static const SparseMatrix kEmpty;
    if (bar < 1 || bar > max_bar()) return kEmpty;
    return diff_[bar];
}

SparseMatrix ChainSlice::matrix_of(int bar, const std::function<Chain(const Record&)>& f) const {
    std::vector<MatrixEntry> entries;
    const auto& bas = basis(bar);
    for (size_t j = 0; j < bas.size(); ++j) {
        for (const auto& [s, c] : f(bas[j])) {
            if (s.b() != bar || s.n() != n_)
                throw std::invalid_argument("matrix_of: image leaves the bidegree");
            entries.push_back({index_of(s), static_cast<int>(j), c});
        }
    }
    return SparseMatrix(dim(bar), dim(bar), std::move(entries));
}

HomologyEntry HomologyTable::at(int n, int i) const {
    auto it = entries.find({n, i});
    return it == entries.end() ? HomologyEntry{} : it->second;
}

std::map<int, HomologyEntry> slice_homology(const ChainSlice& slice, const CoefficientRing& ring) {
    int n = slice.n();
    std::map<int, HomologyEntry> rows;
    std::vector<int> rk(n + 2, 0);
    std::vector<std::vector<i64>> tors(n + 1);
    for (int b = 1; b <= n; ++b) {
        const auto& d = slice.diff(b);
        if (d.rows() == 0 || d.cols() == 0 || d.empty()) continue;
        if (ring.kind == RingKind::Integers) {
            auto snf = smith_normal_form(d);
            rk[b] = snf.matrix_rank();
            tors[b] = snf.torsion();
        } else {
            rk[b] = rank(d, ring);
        }
    }
    for (int b = 0; b <= n; ++b) {
        // e_t has weight -n and bar-degree b; dualizing and reindexing puts
        // H^b of the slice at H_i(C_n) with i = n - b. Torsion of H^b is
        // carried by the invariant factors of the incoming chain
        // differential at bar-degree b (transposition preserves them).
        int i = n - b;
        HomologyEntry e;
        e.dim = slice.dim(b) - rk[b] - rk[b + 1];
        if (ring.kind == RingKind::Integers) e.torsion = tors[b];
        if (e.dim != 0 || !e.torsion.empty()) rows[i] = e;
    }
    return rows;
}

std::vector<SparseMatrix> act(const FreeGroupMap& phi, const ChainSlice& slice) {
    if (phi.source_rank != 2 * slice.genus() || phi.target_rank != 2 * slice.genus())
        throw std::invalid_argument("act: endomorphism of rank 2g expected");
    UMorRingMap u(phi);
    std::map<std::vector<int>, UMorElement> cache;
    auto image_of = [&](const std::vector<int>& v) -> const UMorElement& {
        auto it = cache.find(v);
        if (it == cache.end()) it = cache.emplace(v, u.apply_monomial(v)).first;
        return it->second;
    };
    std::vector<SparseMatrix> blocks;
    for (int b = 0; b <= slice.max_bar(); ++b) {
        blocks.push_back(slice.matrix_of(b, [&](const Record& t) {
            Chain ch;
            for (const auto& [w, c] : image_of(t.v).terms()) ch[Record{t.P, w}] = c;
            return ch;
        }));
    }
    return blocks;
}

namespace {

SparseMatrix sparse_mul(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("sparse_mul: shape mismatch");
    std::vector<std::vector<std::pair<int, i64>>> acols(a.cols()), bcols(b.cols());
    for (const auto& e : a.entries()) acols[e.col].emplace_back(e.row, e.value);
    for (const auto& e : b.entries()) bcols[e.col].emplace_back(e.row, e.value);
    std::vector<MatrixEntry> out;
    for (int j = 0; j < b.cols(); ++j) {
        std::map<int, i64> col;
        for (auto [k, bv] : bcols[j])
            for (auto [r, av] : acols[k]) {
                i64& slot = col[r];
                slot += av * bv;
                if (slot == 0) col.erase(r);
            }
        for (const auto& [r, v] : col) out.push_back({r, j, v});
    }
    return SparseMatrix(a.rows(), b.cols(), std::move(out));
}

FpMatrix to_fp(const SparseMatrix& m, i64 p) {
    FpMatrix f(m.rows(), m.cols(), p);
    for (const auto& e : m.entries()) f.set(e.row, e.col, e.value);
    return f;
}

}  // namespace

bool act_commutes_with_differential(const FreeGroupMap& phi, const ChainSlice& slice) {
    auto blocks = act(phi, slice);
    for (int b = 1; b <= slice.max_bar(); ++b) {
        auto lhs = sparse_mul(slice.diff(b), blocks[b]);
        auto rhs = sparse_mul(blocks[b - 1], slice.diff(b));
        if (!(lhs.entries() == rhs.entries())) return false;
    }
    return true;
}

bool induces_identity_on_homology(const ChainSlice& slice, const std::vector<SparseMatrix>& blocks,
                                  i64 p) {
    for (int b = 0; b <= slice.max_bar(); ++b) {
        if (slice.dim(b) == 0) continue;
        FpMatrix m = to_fp(blocks[b], p);
        FpMatrix cycles = slice.diff(b).rows() == 0 || slice.diff(b).empty()
                              ? FpMatrix::identity(slice.dim(b), p)
                              : to_fp(slice.diff(b), p).kernel_basis();
        bool has_in = b + 1 <= slice.max_bar() && !slice.diff(b + 1).empty();
        FpMatrix boundaries =
            has_in ? to_fp(slice.diff(b + 1), p).image_basis() : FpMatrix(slice.dim(b), 0, p);
        // (m - 1) z must be a boundary for every cycle z
        FpMatrix delta = m.add(FpMatrix::identity(slice.dim(b), p).scaled(p - 1));
        FpMatrix moved = delta.mul(cycles);
        int base = boundaries.cols() == 0 ? 0 : boundaries.rank();
        if (fp_span_rank(boundaries, moved) != base) return false;
    }
    return true;
}

}  // namespace confhom
