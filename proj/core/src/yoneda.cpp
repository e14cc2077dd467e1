#include "confhom/yoneda.hpp"

namespace confhom {

SparseMatrix eps_cochain_matrix(const ChainSlice& src, const ChainSlice& tgt, int bar) {
    if (tgt.n() != src.n() + 1 || tgt.genus() != src.genus())
        throw std::invalid_argument("eps_cochain_matrix: target must be the next slice");
    std::vector<MatrixEntry> entries;
    const auto& basis = src.basis(bar);
    for (size_t j = 0; j < basis.size(); ++j) {
        Record image;
        image.P.reserve(basis[j].P.size() + 1);
        image.P.push_back(1);
        image.P.insert(image.P.end(), basis[j].P.begin(), basis[j].P.end());
        image.v = basis[j].v;
        int sign = (bar % 2) ? -1 : 1;
        entries.push_back({tgt.index_of(image), static_cast<int>(j), sign});
    }
    return SparseMatrix(tgt.dim(bar + 1), static_cast<int>(basis.size()), std::move(entries));
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

bool eps_commutes_with_codifferential(const ChainSlice& src, const ChainSlice& tgt) {
    // codifferential at bar b is the transpose of the chain differential
    // from bar b+1; compare delta . eps with eps . delta
    for (int b = 0; b < src.max_bar(); ++b) {
        SparseMatrix eb = eps_cochain_matrix(src, tgt, b);
        SparseMatrix eb1 = eps_cochain_matrix(src, tgt, b + 1);
        SparseMatrix delta_src = src.diff(b + 1).transposed();
        SparseMatrix delta_tgt = tgt.diff(b + 2).transposed();
        auto lhs = sparse_mul(delta_tgt, eb);
        auto rhs = sparse_mul(eb1, delta_src);
        if (!(lhs.entries() == rhs.entries())) return false;
    }
    return true;
}

std::vector<EpsActionReport> eps_homology_action(const ChainSlice& src, const ChainSlice& tgt,
                                                 i64 p) {
    std::vector<EpsActionReport> out;
    for (int b = 0; b <= src.max_bar(); ++b) {
        EpsActionReport rep;
        rep.n = src.n();
        rep.i = src.n() - b;
        // cocycles and coboundaries of the source at bar b
        FpMatrix delta_out = to_fp(src.diff(b + 1).transposed(), p);  // C^b -> C^{b+1}
        FpMatrix delta_in = to_fp(src.diff(b).transposed(), p);       // C^{b-1} -> C^b
        FpMatrix cocycles = delta_out.rows() == 0 ? FpMatrix::identity(src.dim(b), p)
                                                  : delta_out.kernel_basis();
        FpMatrix cobound = delta_in.cols() == 0 ? FpMatrix(src.dim(b), 0, p)
                                                : delta_in.image_basis();
        rep.dim_src = cocycles.cols() - (cobound.cols() == 0 ? 0 : cobound.rank());

        int tb = b + 1;  // image bar-degree in the next slice
        FpMatrix tgt_delta_out = to_fp(tgt.diff(tb + 1).transposed(), p);
        FpMatrix tgt_delta_in = to_fp(tgt.diff(tb).transposed(), p);
        FpMatrix tgt_cocycles = tgt_delta_out.rows() == 0 ? FpMatrix::identity(tgt.dim(tb), p)
                                                          : tgt_delta_out.kernel_basis();
        FpMatrix tgt_cobound = tgt_delta_in.cols() == 0 ? FpMatrix(tgt.dim(tb), 0, p)
                                                        : tgt_delta_in.image_basis();
        int tgt_cobound_rank = tgt_cobound.cols() == 0 ? 0 : tgt_cobound.rank();
        rep.dim_tgt = tgt_cocycles.cols() - tgt_cobound_rank;

        FpMatrix eb = to_fp(eps_cochain_matrix(src, tgt, b), p);
        FpMatrix moved = eb.mul(cocycles);
        // injective iff (eps z in coboundaries => z in coboundaries):
        // rank [tgt_cobound | moved] - rank tgt_cobound counts the surviving
        // classes; the map factors through H^b = cocycles / coboundaries
        int survivors = fp_span_rank(tgt_cobound, moved) - tgt_cobound_rank;
        rep.injective = survivors == rep.dim_src;
        rep.bijective = rep.injective && rep.dim_src == rep.dim_tgt;
        out.push_back(rep);
    }
    return out;
}

}  // namespace confhom
