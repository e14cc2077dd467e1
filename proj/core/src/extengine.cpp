#include "confhom/extengine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace confhom {

void BigradedSeries::add(int weight, int bar, i64 d) {
    if (d == 0) return;
    if (weight > max_weight || bar < min_bar) return;
    auto key = std::pair(weight, bar);
    i64& slot = dims[key];
    slot += d;
    if (slot == 0) dims.erase(key);
}

i64 BigradedSeries::at(int weight, int bar) const {
    auto it = dims.find({weight, bar});
    return it == dims.end() ? 0 : it->second;
}

BigradedSeries BigradedSeries::convolved(const BigradedSeries& o) const {
    // weights are >= 0 and bars <= 0 on both sides, so truncation is exact
    BigradedSeries out;
    out.max_weight = std::min(max_weight, o.max_weight);
    out.min_bar = std::max(min_bar, o.min_bar);
    for (const auto& [k1, d1] : dims)
        for (const auto& [k2, d2] : o.dims)
            out.add(k1.first + k2.first, k1.second + k2.second, d1 * d2);
    return out;
}

BigradedSeries BigradedSeries::shifted_weight(int s) const {
    BigradedSeries out;
    out.max_weight = max_weight + s;
    out.min_bar = min_bar;
    for (const auto& [k, d] : dims) out.dims[{k.first + s, k.second}] = d;
    return out;
}

BigradedSeries BigradedSeries::scaled(i64 c) const {
    BigradedSeries out{max_weight, min_bar, {}};
    if (c != 0)
        for (const auto& [k, d] : dims) out.dims[k] = d * c;
    return out;
}

bool BigradedSeries::agrees_with(const BigradedSeries& o, int max_weight_cap, int min_bar_cap,
                                 std::string* first_mismatch) const {
    for (int w = 0; w <= max_weight_cap; ++w)
        for (int b = min_bar_cap; b <= 0; ++b) {
            if (at(w, b) != o.at(w, b)) {
                if (first_mismatch) {
                    std::ostringstream os;
                    os << "(" << w << "," << b << "): " << at(w, b) << " vs " << o.at(w, b);
                    *first_mismatch = os.str();
                }
                return false;
            }
        }
    return true;
}

// ------------------------------------------------------------------- B_u ----

namespace {

std::vector<unsigned> subsets_of_size(int u, int k) {
    std::vector<unsigned> out;
    for (unsigned s = 0; s < (1u << u); ++s)
        if (__builtin_popcount(s) == k) out.push_back(s);
    return out;  // ascending bitmask order
}

}  // namespace

WeightedModule build_Bu(int u, i64 p, bool doubled) {
    if (u < 0 || u > 20) throw std::invalid_argument("build_Bu: u out of range");
    WeightedModule m(TruncatedAlgebra::gamma(p), p);
    std::vector<std::vector<unsigned>> basis(u + 1);
    std::vector<std::map<unsigned, int>> index(u + 1);
    for (int k = 0; k <= u; ++k) {
        basis[k] = subsets_of_size(u, k);
        for (size_t j = 0; j < basis[k].size(); ++j) index[k][basis[k][j]] = static_cast<int>(j);
        m.set_dim(-2 * k, static_cast<int>(basis[k].size()));
    }
    for (int var = 0;; ++var) {
        i64 step = 1;
        for (int i = 0; i < var; ++i) step *= p;  // p^var
        if (step > u) break;
        i64 coef = 1;
        if (doubled) coef = fp_pow(2, step, p);
        for (int k = 0; k + step <= u; ++k) {
            int kk = k + static_cast<int>(step);
            FpMatrix mat(static_cast<int>(basis[kk].size()), static_cast<int>(basis[k].size()), p);
            for (size_t j = 0; j < basis[k].size(); ++j) {
                unsigned s = basis[k][j];
                // all supersets with step extra elements
                for (unsigned t : basis[kk])
                    if ((t & s) == s) mat.set(index[kk][t], static_cast<int>(j), coef);
            }
            m.set_action(var, -2 * k, std::move(mat));
        }
    }
    m.validate();
    return m;
}

// ---------------------------------------------------------------- tameness --

namespace {

// exponent vectors (e_0..e_{nvars-1}), e_j < d(j+1), sum e_j D(j) = s
void monomials_of_half_weight(const TruncatedAlgebra& alg, int nvars, i64 s,
                              std::vector<std::vector<int>>& out) {
    out.clear();
    std::vector<int> e(nvars, 0);
    auto rec = [&](auto&& self, int var, i64 rem) -> void {
        if (var == nvars) {
            if (rem == 0) out.push_back(e);
            return;
        }
        i64 D = alg.D(var);
        for (int a = 0; a < alg.var_order(var) && a * D <= rem; ++a) {
            e[var] = a;
            self(self, var + 1, rem - a * D);
        }
        e[var] = 0;
    };
    rec(rec, 0, s);
}

// column basis of A_+ M at the given weight
FpMatrix augmentation_image(const WeightedModule& m, int weight) {
    FpMatrix acc(m.dim(weight), 0, m.p());
    int nv = m.relevant_vars();
    for (int var = 0; var < nv; ++var) {
        int src = weight - static_cast<int>(m.algebra().var_weight(var));
        if (m.dim(src) == 0) continue;
        acc = acc.hstack(m.action(var, src));
    }
    return acc.cols() == 0 ? acc : acc.image_basis();
}

}  // namespace

TamenessReport check_tame(const WeightedModule& m, int u_shift) {
    TamenessReport rep;
    auto fail = [&](const std::string& s) {
        rep.tame = false;
        rep.violations.push_back(s);
    };
    if (m.is_zero()) return rep;
    const auto& alg = m.algebra();
    int nv = std::max(m.relevant_vars(), 1);

    for (int var = 0; var < nv; ++var) {
        Barcode bc = barcode(m, var);
        i64 Dv = alg.D(var);
        i64 order = alg.var_order(var);
        // palindromic barcode around barycentre -u, size by size
        std::map<std::pair<i64, int>, i64> counts;  // (barycentre, size)
        for (const auto& [bar, mult] : bc.bars)
            counts[{bar.first - i64(bar.second - 1) * Dv, bar.second}] += mult;
        for (const auto& [key, mult] : counts) {
            auto [bcentre, c] = key;
            auto mirror = counts.find({-2 * i64(u_shift) - bcentre, c});
            i64 got = mirror == counts.end() ? 0 : mirror->second;
            if (got != mult) {
                std::ostringstream os;
                os << "variable " << var << ": " << mult << " bars of size " << c
                   << " at barycentre " << bcentre << " vs " << got << " mirrored";
                fail(os.str());
            }
            if (c < order && !(-u_shift - Dv < bcentre && bcentre < -u_shift + Dv)) {
                std::ostringstream os;
                os << "variable " << var << ": short bar of size " << c << " has barycentre "
                   << bcentre << " outside ]" << -u_shift - Dv << "," << -u_shift + Dv << "[";
                fail(os.str());
            }
        }
    }

    // freeness in range via greedy psi_k on the shifted module
    WeightedModule s = m.shifted(u_shift);
    int kmax = std::max(s.max_weight(), -s.min_weight());
    for (int k = 0; k <= kmax; ++k) {
        // generators: lift of a basis of (M/A_+M) in weights >= k
        std::vector<std::pair<int, std::vector<i64>>> gens;
        for (const auto& [w, dw] : s.dims()) {
            if (w < k) continue;
            FpMatrix img = augmentation_image(s, w);
            FpMatrix lift = fp_complement_in(FpMatrix::identity(dw, s.p()), img);
            for (int j = 0; j < lift.cols(); ++j) {
                std::vector<i64> v(dw);
                for (int r = 0; r < dw; ++r) v[r] = lift.at(r, j);
                gens.emplace_back(w, std::move(v));
            }
        }
        std::vector<std::vector<int>> monos;
        for (const auto& [w, dw] : s.dims()) {
            if (w < -k) continue;
            // columns: a * g for monomials a of half-weight (wg - w)/2
            std::vector<std::vector<i64>> cols;
            for (const auto& [wg, gv] : gens) {
                if ((wg - w) % 2 != 0 || wg < w) continue;
                monomials_of_half_weight(alg, nv, (wg - w) / 2, monos);
                for (const auto& e : monos) {
                    auto col = s.action_monomial(e, wg).apply(gv);
                    cols.push_back(std::move(col));
                }
            }
            FpMatrix psi(dw, static_cast<int>(cols.size()), s.p());
            for (size_t j = 0; j < cols.size(); ++j)
                for (int r = 0; r < dw; ++r) psi.set(r, static_cast<int>(j), cols[j][r]);
            int rk = psi.rank();
            if (w >= k) {
                if (rk != dw || psi.cols() != dw) {
                    std::ostringstream os;
                    os << "psi_" << k << " not bijective at weight " << w << " (rank " << rk
                       << ", cols " << psi.cols() << ", dim " << dw << ")";
                    fail(os.str());
                }
            } else if (rk != psi.cols()) {
                std::ostringstream os;
                os << "psi_" << k << " not injective at weight " << w;
                fail(os.str());
            }
        }
    }
    return rep;
}

// ------------------------------------------------------------- free-narrow --

FreeNarrow free_narrow(const WeightedModule& m, int u_shift) {
    const auto& alg = m.algebra();
    const i64 p = m.p();
    const int d1 = static_cast<int>(alg.var_order(0));
    const int D0 = static_cast<int>(alg.D(0));
    const int step0 = 2 * D0;
    const int nv = std::max(m.relevant_vars(), 1);

    auto bcg = barcode_with_generators(m, 0);

    struct Gen {
        int weight;
        int size;
        std::vector<i64> vec;
    };
    std::vector<Gen> free_gens, narrow_gens;
    for (const auto& g : bcg.gens) {
        if (g.size == d1)
            free_gens.push_back({g.start, g.size, g.vec});
        else
            narrow_gens.push_back({g.start, g.size, g.vec});
    }

    // Perturb each narrow generator so that all higher variables kill it.
    for (auto& nu : narrow_gens) {
        std::vector<i64> w_vec(m.dim(nu.weight), 0);
        for (int h = 1; h < nv; ++h) {
            std::vector<i64> moved(nu.vec.size());
            for (size_t r = 0; r < nu.vec.size(); ++r)
                moved[r] = fp_norm(nu.vec[r] - w_vec[r], p);
            std::vector<i64> z = m.apply(h, nu.weight, moved);
            if (std::all_of(z.begin(), z.end(), [](i64 x) { return x == 0; })) continue;
            // z must be divisible by a = y_0^{d1-c} y_1^{d2-1} ... y_{h-1}^{dh-1} y_h
            std::vector<int> expo(nv, 0);
            expo[0] = d1 - nu.size;
            for (int j = 1; j < h; ++j) expo[j] = static_cast<int>(alg.var_order(j)) - 1;
            expo[h] = 1;
            i64 half_weight = 0;
            for (int j = 0; j < nv; ++j) half_weight += expo[j] * alg.D(j);
            int src = nu.weight - 2 * static_cast<int>(alg.D(h)) + 2 * static_cast<int>(half_weight);
            FpMatrix amat = m.action_monomial(expo, src);
            auto zprime = amat.solve(z);
            if (!zprime)
                throw std::runtime_error(
                    "free_narrow: perturbation solve failed (tameness violation) at weight " +
                    std::to_string(nu.weight));
            expo[h] = 0;  // apply the monomial without the trailing y_h
            auto delta = m.action_monomial(expo, src).apply(*zprime);
            for (size_t r = 0; r < w_vec.size(); ++r) w_vec[r] = fp_norm(w_vec[r] + delta[r], p);
        }
        for (size_t r = 0; r < nu.vec.size(); ++r) nu.vec[r] = fp_norm(nu.vec[r] - w_vec[r], p);
    }

    // Narrow basis: orbits of the corrected generators under y_0,
    // kept in N-coordinates as (generator, power) pairs.
    struct NarrowBasisElt {
        int gen;
        int power;
        std::vector<i64> vec;  // in M coordinates at its weight
    };
    std::map<int, std::vector<NarrowBasisElt>> nbasis;  // weight -> elements
    for (size_t j = 0; j < narrow_gens.size(); ++j) {
        std::vector<i64> v = narrow_gens[j].vec;
        int w = narrow_gens[j].weight;
        for (int t = 0; t < narrow_gens[j].size; ++t) {
            nbasis[w].push_back({static_cast<int>(j), t, v});
            if (t + 1 < narrow_gens[j].size) {
                v = m.apply(0, w, v);
                w -= step0;
            }
        }
    }

    // Correct the free generators by narrow elements so their R-span is
    // A-stable: for every variable j >= 1 and free generator f_t,
    //   sum_{(r,a)} c_{r,a} (y_0^a n_r) = eta_{j,t}
    // where c/eta are the coordinates of y_j f_t in the adapted basis and
    // y_j kills the narrow part.
    std::map<int, FpMatrix> adapted;  // weight -> [Fhat | N] basis columns
    std::map<int, std::vector<std::pair<int, int>>> flabels;  // weight -> (gen, power)
    for (const auto& [w, dw] : m.dims()) {
        std::vector<std::vector<i64>> cols;
        std::vector<std::pair<int, int>> labels;
        for (size_t t = 0; t < free_gens.size(); ++t) {
            std::vector<i64> v = free_gens[t].vec;
            int wg = free_gens[t].weight;
            for (int a = 0; a < d1; ++a) {
                if (wg == w) {
                    cols.push_back(v);
                    labels.push_back({static_cast<int>(t), a});
                }
                if (a + 1 < d1) {
                    v = m.apply(0, wg, v);
                    wg -= step0;
                }
            }
        }
        auto nit = nbasis.find(w);
        if (nit != nbasis.end())
            for (const auto& e : nit->second) cols.push_back(e.vec);
        if (static_cast<int>(cols.size()) != dw)
            throw std::logic_error("free_narrow: adapted basis has wrong size");
        FpMatrix t(dw, dw, p);
        for (size_t j = 0; j < cols.size(); ++j)
            for (int r = 0; r < dw; ++r) t.set(r, static_cast<int>(j), cols[j][r]);
        if (t.rank() != dw) throw std::logic_error("free_narrow: adapted basis is singular");
        adapted[w] = std::move(t);
        flabels[w] = std::move(labels);
    }

    if (!narrow_gens.empty() && !free_gens.empty()) {
        // global unknown vector: narrow coordinates of n_t per free generator
        std::vector<int> offset(free_gens.size(), 0);
        int nunk = 0;
        for (size_t t = 0; t < free_gens.size(); ++t) {
            offset[t] = nunk;
            auto it = nbasis.find(free_gens[t].weight);
            nunk += it == nbasis.end() ? 0 : static_cast<int>(it->second.size());
        }
        std::vector<MatrixEntry> sys;
        std::vector<i64> rhs;
        int neq = 0;
        for (int j = 1; j < nv; ++j) {
            int stepj = -2 * static_cast<int>(alg.D(j));
            for (size_t t = 0; t < free_gens.size(); ++t) {
                int w = free_gens[t].weight;
                int wp = w + stepj;
                auto nit = nbasis.find(wp);
                int neqs = nit == nbasis.end() ? 0 : static_cast<int>(nit->second.size());
                if (m.dim(wp) == 0) continue;
                auto img = m.apply(j, w, free_gens[t].vec);
                auto coords = adapted[wp].solve(img);
                if (!coords) throw std::logic_error("free_narrow: adapted solve failed");
                const auto& labels = flabels[wp];
                // eta part = narrow coordinates of the image
                std::vector<i64> eta(coords->begin() + labels.size(), coords->end());
                if (neqs == 0) {
                    for (i64 x : eta)
                        if (x != 0) throw std::logic_error("free_narrow: narrow leak");
                    continue;
                }
                // lhs: sum over (r, a) with coefficient c of y_0^a acting on
                // n_r; in narrow coordinates y_0^a maps (gen, s) to (gen, s+a)
                for (size_t col = 0; col < labels.size(); ++col) {
                    i64 c = (*coords)[col];
                    if (c == 0) continue;
                    auto [r, a] = labels[col];
                    auto rit = nbasis.find(free_gens[r].weight);
                    if (rit == nbasis.end()) continue;
                    const auto& src_elts = rit->second;
                    const auto& dst_elts = nit->second;
                    for (size_t sj = 0; sj < src_elts.size(); ++sj) {
                        int gen = src_elts[sj].gen, pow = src_elts[sj].power + a;
                        if (pow >= narrow_gens[gen].size) continue;  // y_0^a kills it
                        for (size_t dj = 0; dj < dst_elts.size(); ++dj) {
                            if (dst_elts[dj].gen == gen && dst_elts[dj].power == pow) {
                                sys.push_back({neq + static_cast<int>(dj),
                                               offset[r] + static_cast<int>(sj), c});
                            }
                        }
                    }
                }
                for (int e = 0; e < neqs; ++e) rhs.push_back(eta[e]);
                neq += neqs;
            }
        }
        if (neq > 0 && nunk > 0) {
            // merge duplicate entries
            std::map<std::pair<int, int>, i64> merged;
            for (const auto& e : sys) merged[{e.row, e.col}] += e.value;
            std::vector<MatrixEntry> ments;
            for (const auto& [k, v] : merged)
                if (fp_norm(v, p) != 0) ments.push_back({k.first, k.second, fp_norm(v, p)});
            SparseMatrix sysm(neq, nunk, std::move(ments));
            auto sol = solve_mod_p(sysm, rhs, p);
            if (!sol)
                throw std::runtime_error(
                    "free_narrow: complement correction unsolvable (tameness violation)");
            // apply: f_t <- f_t + n_t
            for (size_t t = 0; t < free_gens.size(); ++t) {
                auto it = nbasis.find(free_gens[t].weight);
                if (it == nbasis.end()) continue;
                const auto& elts = it->second;
                for (size_t sj = 0; sj < elts.size(); ++sj) {
                    i64 c = (*sol)[offset[t] + sj];
                    if (c == 0) continue;
                    for (size_t r = 0; r < free_gens[t].vec.size(); ++r)
                        free_gens[t].vec[r] = fp_norm(free_gens[t].vec[r] + c * elts[sj].vec[r], p);
                }
            }
        } else if (neq > 0) {
            for (i64 x : rhs)
                if (x != 0) throw std::logic_error("free_narrow: inconsistent empty system");
        }
    }

    // Final change of basis: F columns (corrected) then N columns.
    FreeNarrow out;
    out.free_generators = static_cast<int>(free_gens.size());
    out.F = WeightedModule(alg, p);
    out.N = WeightedModule(alg, p);
    std::map<int, int> fdim, ndim;
    std::map<int, FpMatrix> basis;
    for (const auto& [w, dw] : m.dims()) {
        std::vector<std::vector<i64>> cols;
        int nf = 0;
        for (size_t t = 0; t < free_gens.size(); ++t) {
            std::vector<i64> v = free_gens[t].vec;
            int wg = free_gens[t].weight;
            for (int a = 0; a < d1; ++a) {
                if (wg == w) {
                    cols.push_back(v);
                    ++nf;
                }
                if (a + 1 < d1) {
                    v = m.apply(0, wg, v);
                    wg -= step0;
                }
            }
        }
        auto nit = nbasis.find(w);
        int nn = 0;
        if (nit != nbasis.end())
            for (const auto& e : nit->second) {
                cols.push_back(e.vec);
                ++nn;
            }
        FpMatrix t(dw, dw, p);
        for (size_t j = 0; j < cols.size(); ++j)
            for (int r = 0; r < dw; ++r) t.set(r, static_cast<int>(j), cols[j][r]);
        if (t.rank() != dw)
            throw std::logic_error("free_narrow: corrected basis is singular at weight " +
                                   std::to_string(w));
        basis[w] = std::move(t);
        fdim[w] = nf;
        ndim[w] = nn;
        out.F.set_dim(w, nf);
        out.N.set_dim(w, nn);
    }

    for (int var = 0; var < nv; ++var) {
        int step = 2 * static_cast<int>(alg.D(var));
        for (const auto& [w, dw] : m.dims()) {
            int wp = w - step;
            if (m.dim(wp) == 0) continue;
            FpMatrix conj = basis[wp].inverse().mul(m.action(var, w).mul(basis[w]));
            int nfs = fdim[w], nns = ndim[w], nft = fdim[wp], nnt = ndim[wp];
            FpMatrix fblock(nft, nfs, p), nblock(nnt, nns, p);
            for (int r = 0; r < nft + nnt; ++r)
                for (int c = 0; c < nfs + nns; ++c) {
                    i64 v = conj.at(r, c);
                    bool rf = r < nft, cf = c < nfs;
                    if (rf && cf)
                        fblock.at(r, c) = v;
                    else if (!rf && !cf)
                        nblock.at(r - nft, c - nfs) = v;
                    else if (v != 0)
                        throw std::logic_error(
                            "free_narrow: conjugated action is not block diagonal");
                }
            if (nft > 0 && nfs > 0) out.F.set_action(var, w, std::move(fblock));
            if (nnt > 0 && nns > 0) out.N.set_action(var, w, std::move(nblock));
        }
    }
    out.F.validate();
    out.N.validate();
    // higher variables must kill N outright
    for (int var = 1; var < nv; ++var)
        for (const auto& [w, dw] : out.N.dims())
            if (!out.N.action(var, w).is_zero())
                throw std::logic_error("free_narrow: higher variable acts on the narrow part");
    out.basis = std::move(basis);
    out.narrow_barcode = barcode(out.N, 0);
    // F must be genuinely free over the first variable
    for (const auto& [bar, mult] : barcode(out.F, 0).bars)
        if (bar.second != d1) throw std::logic_error("free_narrow: F is not free over y_0");
    (void)u_shift;  // the shift enters through the caller's tameness check
    return out;
}

WeightedModule quotient_mod_variable(const WeightedModule& f) {
    const auto& alg = f.algebra();
    i64 p = f.p();
    int d1 = static_cast<int>(alg.var_order(0));
    for (const auto& [bar, mult] : barcode(f, 0).bars)
        if (bar.second != d1)
            throw std::invalid_argument("quotient_mod_variable: module is not free over y_0");

    WeightedModule q(alg.next_stage(), p);
    int step0 = -2 * static_cast<int>(alg.D(0));
    std::map<int, FpMatrix> lifts;       // weight -> complement columns
    std::map<int, FpMatrix> full_basis;  // weight -> [img | lift]
    std::map<int, int> imgdim;
    for (const auto& [w, dw] : f.dims()) {
        FpMatrix img = f.action(0, w - step0).image_basis();
        FpMatrix lift = fp_complement_in(FpMatrix::identity(dw, p), img);
        q.set_dim(w, lift.cols());
        full_basis[w] = img.hstack(lift);
        imgdim[w] = img.cols();
        lifts[w] = std::move(lift);
    }
    if (q.total_dim() * d1 != f.total_dim())
        throw std::logic_error("quotient_mod_variable: wrong quotient dimension");

    int nv = f.relevant_vars();
    for (int var = 1; var < nv; ++var) {
        int step = 2 * static_cast<int>(alg.D(var));
        for (const auto& [w, dq] : q.dims()) {
            int wp = w - step;
            if (q.dim(wp) == 0) continue;
            FpMatrix out(q.dim(wp), dq, p);
            for (int j = 0; j < dq; ++j) {
                std::vector<i64> lift(f.dim(w));
                for (int r = 0; r < f.dim(w); ++r) lift[r] = lifts[w].at(r, j);
                auto img = f.apply(var, w, lift);
                auto coords = full_basis[wp].solve(img);
                if (!coords) throw std::logic_error("quotient_mod_variable: projection failed");
                for (int r = 0; r < q.dim(wp); ++r) out.at(r, j) = (*coords)[imgdim[wp] + r];
            }
            q.set_action(var - 1, w, std::move(out));
        }
    }
    q.validate();
    return q;
}

// --------------------------------------------------------------- recursion --

int theoremC_stage_bound(int u, i64 p) {
    int h = 0;
    i64 ph = 1;
    while (ph * p <= u + 1) {
        ph *= p;
        ++h;
    }
    return h;
}

std::vector<NuiEntry> compute_Nui(int u, i64 p, bool doubled) {
    int h = theoremC_stage_bound(u, p);
    std::vector<NuiEntry> out;
    WeightedModule m = build_Bu(u, p, doubled);
    i64 pi = 1;  // p^i
    for (int i = 0; !m.is_zero(); ++i, pi *= p) {
        if (i > h)
            throw std::logic_error("compute_Nui: recursion exceeded the Theorem C stage bound");
        int u_i = u - static_cast<int>(pi) + 1;
        auto tame = check_tame(m, u_i);
        if (!tame.tame)
            throw std::logic_error("compute_Nui: stage " + std::to_string(i) +
                                   " module is not tame: " + tame.violations.front());
        FreeNarrow fn = free_narrow(m, u_i);
        // narrow support window of the stage-i decomposition
        int lo = -u - static_cast<int>(pi * p) + 2 * static_cast<int>(pi) - 1;
        int hi = -u + static_cast<int>(pi * p) - 1;
        for (const auto& [w, d] : fn.N.dims())
            if (!(lo < w && w < hi))
                throw std::logic_error("compute_Nui: narrow part escapes its window");
        out.push_back({i, u_i, fn.narrow_barcode});
        if (fn.F.is_zero()) break;
        m = quotient_mod_variable(fn.F);
    }
    return out;
}

bool nui_poincare_identity(int u, i64 p, const std::vector<NuiEntry>& entries) {
    std::map<int, i64> lhs, rhs;
    for (int k = 0; k <= u; ++k) lhs[-2 * k] = binomial(u, k);
    for (const auto& e : entries) {
        i64 pi = 1;
        for (int j = 0; j < e.stage; ++j) pi *= p;
        // a bar (m, c) over y_i occupies weights m - 2 p^i t, t < c
        for (const auto& [bar, mult] : e.bars.bars) {
            auto [m, c] = bar;
            for (int t = 0; t < c; ++t)
                for (i64 s = 0; s < pi; ++s)
                    rhs[m - 2 * static_cast<int>(pi) * t - 2 * static_cast<int>(s)] += mult;
        }
    }
    return lhs == rhs;
}

// ------------------------------------------------------------ Ext assembly --

std::vector<std::pair<int, int>> ExtSummand::generators(i64 p) const {
    std::vector<std::pair<int, int>> g;
    g.push_back({-start, 0});
    if (size < p) {
        i64 wv = 2;
        for (int i = 0; i < stage; ++i) wv *= p;
        g.push_back({-start + static_cast<int>(size * wv), -1});
    }
    return g;
}

BigradedSeries ext_of_barcode(const Barcode& bars, i64 p, int stage, int max_weight, int min_bar) {
    BigradedSeries out{max_weight, min_bar, {}};
    i64 wv = 2;
    for (int i = 0; i < stage; ++i) wv *= p;  // 2 p^stage
    for (const auto& [bar, mult] : bars.bars) {
        auto [m, c] = bar;
        if (c == p) {
            out.add(-m, 0, mult);
            continue;
        }
        // minimal resolution generators at m - (jp)wv/2... classes at
        // (-m + j p wv, -2j) and (-m + j p wv + c wv, -2j-1) for all j >= 0
        for (int j = 0;; ++j) {
            i64 w0 = -m + i64(j) * p * wv;
            int b0 = -2 * j;
            if (w0 > max_weight || b0 < min_bar) break;
            out.add(static_cast<int>(w0), b0, mult);
            out.add(static_cast<int>(w0 + c * wv), b0 - 1, mult);
        }
    }
    return out;
}

BigradedSeries tail_ring_series(i64 p, int from_stage, int max_weight, int min_bar) {
    BigradedSeries out{max_weight, min_bar, {}};
    out.add(0, 0, 1);
    i64 wj = 2;
    for (int i = 0; i < from_stage; ++i) wj *= p;  // 2 p^j
    for (int j = from_stage; wj <= max_weight; ++j, wj *= p) {
        // factor (1 + alpha_j) (x) F[beta_j], with alpha_j at (2p^j, -1)
        // and beta_j at (2p^{j+1}, -2)
        BigradedSeries factor{max_weight, min_bar, {}};
        for (int eps = 0; eps <= 1; ++eps) {
            for (int k = 0;; ++k) {
                i64 w = eps * wj + i64(k) * wj * p;
                int b = -eps - 2 * k;
                if (w > max_weight || b < min_bar) break;
                factor.add(static_cast<int>(w), b, 1);
            }
        }
        out = out.convolved(factor);
    }
    return out;
}

TheoremC theoremC_assemble(int u, i64 p, int max_weight, int min_bar) {
    TheoremC out;
    out.series = BigradedSeries{max_weight, min_bar, {}};
    out.nui = compute_Nui(u, p, false);
    {
        // the doubled module must produce the same barcodes at odd p
        auto doubled = compute_Nui(u, p, true);
        if (doubled.size() != out.nui.size())
            throw std::logic_error("theoremC_assemble: doubled recursion differs");
        for (size_t i = 0; i < doubled.size(); ++i)
            if (!(doubled[i].bars == out.nui[i].bars))
                throw std::logic_error("theoremC_assemble: doubled barcodes differ");
    }
    for (const auto& e : out.nui) {
        BigradedSeries ext = ext_of_barcode(e.bars, p, e.stage, max_weight, min_bar);
        BigradedSeries piece = ext.convolved(tail_ring_series(p, e.stage + 1, max_weight, min_bar));
        for (const auto& [k, d] : piece.dims) out.series.add(k.first, k.second, d);
        for (const auto& [bar, mult] : e.bars.bars)
            for (i64 c = 0; c < mult; ++c) out.summands.push_back({e.stage, bar.first, bar.second});
    }
    return out;
}

// ------------------------------------------------------- rational pipeline --

i64 sparse_count(int u, int k) {
    if (k < 0) return 0;
    return binomial(u, k) - (k == 0 ? 0 : binomial(u, k - 1));
}

Barcode rational_Bu_barcode(int u) {
    Barcode out{u + 1, 2, {}};
    for (int k = 0; 2 * k <= u; ++k) out.bars[{-2 * k, u + 1 - 2 * k}] = sparse_count(u, k);
    return out;
}

BigradedSeries rational_ext_Bu(int u, int max_weight, int min_bar) {
    BigradedSeries out{max_weight, min_bar, {}};
    for (const auto& [bar, mult] : rational_Bu_barcode(u).bars) {
        auto [m, c] = bar;
        out.add(-m, 0, mult);
        out.add(-m + 2 * c, -1, mult);
    }
    return out;
}

// --------------------------------------------------------------- Theorem B --

std::vector<MgSummand> split_Mg(int g) {
    std::vector<MgSummand> out;
    for (int r = 0; r <= g; ++r) {
        i64 mult = binomial(g, r);
        for (int i = 0; i < g - r; ++i) mult *= 2;
        out.push_back({r, r - g, mult});
    }
    return out;
}

HomologyTable theoremB_betti(int g, const CoefficientRing& ring, int max_n) {
    if (ring.kind == RingKind::Integers)
        throw std::invalid_argument("theoremB_betti: integral homology goes through the cellular pipeline");
    if (ring.kind == RingKind::PrimeField && ring.p == 2)
        throw std::invalid_argument("theoremB_betti: F_2 goes through the cellular pipeline");

    int W = max_n, B = max_n;
    BigradedSeries ext_mg{W, -B, {}};
    for (const auto& s : split_Mg(g)) {
        BigradedSeries ext_bu = ring.kind == RingKind::Rationals
                                    ? rational_ext_Bu(s.u, W, -B)
                                    : theoremC_assemble(s.u, ring.p, W, -B).series;
        BigradedSeries shifted = ext_bu.shifted_weight(-s.shift);
        shifted.max_weight = W;
        for (const auto& [k, d] : shifted.dims) ext_mg.add(k.first, k.second, d * s.multiplicity);
    }
    BigradedSeries eps{W, -B, {}};
    for (int a = 0; a <= std::min(W, B); ++a) eps.add(a, -a, 1);
    BigradedSeries hg{W, -B, {}};
    for (int m = 0; 2 * m <= W; ++m) hg.add(2 * m, 0, count_weak_compositions(m, 2 * g));

    BigradedSeries total = eps.convolved(ext_mg).convolved(hg);
    HomologyTable table;
    table.ring = ring;
    table.genus = g;
    for (const auto& [k, d] : total.dims) {
        auto [w, b] = k;
        int n = w, i = w + b;
        if (n <= max_n && i >= 0) table.entries[{n, i}] = HomologyEntry{d, {}};
    }
    return table;
}

std::vector<unsigned> sparse_subsets(int u) {
    std::vector<unsigned> out;
    for (unsigned s = 0; s < (1u << u); ++s) {
        bool ok = true;
        int seen = 0;
        for (int i = 1; i <= u && ok; ++i) {
            if (s & (1u << (i - 1))) ++seen;
            ok = 2 * seen <= i;
        }
        if (ok) out.push_back(s);
    }
    return out;
}

// y^{[c]} action via the base-p digit factorisation y^{[c]} =
// C^{-1} prod yhat_i^{a_i}, with C a product of binomials not divisible by p.
FpMatrix divided_power_action(const WeightedModule& m, int c, int weight) {
    i64 p = m.p();
    if (m.algebra().d0 != 1)
        throw std::invalid_argument("divided_power_action: module must live over gamma(p)");
    std::vector<int> digits;
    i64 rest = c;
    while (rest > 0) {
        digits.push_back(static_cast<int>(rest % p));
        rest /= p;
    }
    i64 coef = 1, cur = 0, pi = 1;
    std::vector<int> expo(digits.size(), 0);
    for (size_t i = 0; i < digits.size(); ++i, pi *= p) {
        expo[i] = digits[i];
        for (int a = 0; a < digits[i]; ++a) {
            coef = fp_mul(coef, fp_norm(binomial(cur + pi, pi), p), p);
            cur += pi;
        }
    }
    FpMatrix mat = m.action_monomial(expo, weight);
    return mat.scaled(fp_inv(coef, p));
}

SparseToolsReport sparse_tools(int u, i64 p) {
    SparseToolsReport rep;
    auto fail = [&](bool& flag, const std::string& s) {
        flag = false;
        rep.violations.push_back(s);
    };
    WeightedModule bu = build_Bu(u, p, false);
    auto sparse = sparse_subsets(u);
    // counts per cardinality
    std::map<int, i64> bycard;
    for (unsigned s : sparse) bycard[__builtin_popcount(s)]++;
    for (int k = 0; k <= u / 2; ++k)
        if (bycard[k] != sparse_count(u, k))
            fail(rep.counts_match, "sparse subset count mismatch at k=" + std::to_string(k));
    for (const auto& [k, cnt] : bycard)
        if (k > u / 2) fail(rep.counts_match, "sparse subset of cardinality above u/2");

    auto basis_index = [&](int k) { return subsets_of_size(u, k); };
    // Theta_u columns at weight -2m: y^{[m-|S|]} z_S for sparse S, |S| <= m
    auto theta_columns = [&](int m, int max_card) {
        std::vector<std::vector<i64>> cols;
        for (unsigned s : sparse) {
            int k = __builtin_popcount(s);
            if (k > m || k > max_card) continue;
            auto bi = basis_index(k);
            std::vector<i64> zs(bu.dim(-2 * k), 0);
            zs[std::lower_bound(bi.begin(), bi.end(), s) - bi.begin()] = 1;
            cols.push_back(divided_power_action(bu, m - k, -2 * k).apply(zs));
        }
        FpMatrix mat(bu.dim(-2 * m), static_cast<int>(cols.size()), p);
        for (size_t j = 0; j < cols.size(); ++j)
            for (int r = 0; r < bu.dim(-2 * m); ++r) mat.set(r, static_cast<int>(j), cols[j][r]);
        return mat;
    };
    for (int m = 0; m <= u; ++m) {
        FpMatrix th = theta_columns(m, u);
        if (th.rank() != bu.dim(-2 * m))
            fail(rep.theta_surjective, "Theta_u not surjective in weight " + std::to_string(-2 * m));
    }
    for (int k = 0; k <= u / 2; ++k)
        for (int m = 0; m <= u - k; ++m) {
            FpMatrix th = theta_columns(m, k);
            if (th.rank() != th.cols())
                fail(rep.theta_injective, "Theta_{u," + std::to_string(k) +
                                              "} not injective in weight " + std::to_string(-2 * m));
        }
    // hard Lefschetz: span(z_T : |T| >= (u+k)/2) inside the submodule
    // generated in weights >= -u+k, i.e. by z_S with 2|S| <= u-k
    for (int k = 0; k <= u; ++k) {
        for (int tcard = (u + k + 1) / 2; tcard <= u; ++tcard) {
            int m = tcard;
            std::vector<std::vector<i64>> cols;
            for (int scard = 0; 2 * scard <= u - k && scard <= m; ++scard) {
                auto bi = basis_index(scard);
                for (size_t j = 0; j < bi.size(); ++j) {
                    std::vector<i64> zs(bu.dim(-2 * scard), 0);
                    zs[j] = 1;
                    cols.push_back(divided_power_action(bu, m - scard, -2 * scard).apply(zs));
                }
            }
            FpMatrix span(bu.dim(-2 * m), static_cast<int>(cols.size()), p);
            for (size_t j = 0; j < cols.size(); ++j)
                for (int r = 0; r < bu.dim(-2 * m); ++r)
                    span.set(r, static_cast<int>(j), cols[j][r]);
            if (span.rank() != bu.dim(-2 * m))
                fail(rep.hard_lefschetz,
                     "hard Lefschetz containment fails at k=" + std::to_string(k) +
                         " card=" + std::to_string(tcard));
        }
    }
    // Poincare duality: barcode of the dual is the barcode shifted by 2u
    if (!(barcode(bu.dualized(), 0) == barcode(bu, 0).shifted(2 * u)))
        fail(rep.duality_shift, "dual barcode is not the 2u-shift");
    // doubled ~ plain via z_S -> 2^{|S|} z_S
    WeightedModule bu2 = build_Bu(u, p, true);
    int nv = bu.relevant_vars();
    for (int var = 0; var < nv; ++var) {
        i64 pi = 1;
        for (int i = 0; i < var; ++i) pi *= p;
        for (int k = 0; k + pi <= u; ++k) {
            // D^-1 A_doubled D with D = diag(2^{|S|}) equals A_plain
            i64 dsrc = fp_pow(2, k, p), dtgt = fp_pow(2, k + pi, p);
            FpMatrix lhs = bu2.action(var, -2 * k).scaled(fp_mul(dsrc, fp_inv(dtgt, p), p));
            if (!(lhs == bu.action(var, -2 * k)))
                fail(rep.doubled_conjugate, "doubled/plain conjugation fails");
        }
    }
    return rep;
}

}  // namespace confhom
