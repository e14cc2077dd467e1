#include "confhom/umor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace confhom {

namespace {

i64 mul_checked(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("umor: coefficient overflow");
    return r;
}

i64 add_checked(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("umor: coefficient overflow");
    return r;
}

i64 pow_checked(i64 a, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = mul_checked(r, a);
    return r;
}

}  // namespace

i64 binomial(i64 n, i64 k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    i64 r = 1;
    for (i64 i = 1; i <= k; ++i) r = mul_checked(r, n - k + i) / i;
    return r;
}

i64 signed_shuffle_coeff(i64 m, i64 n) {
    if (m < 0 || n < 0) throw std::invalid_argument("signed_shuffle_coeff: negative argument");
    if ((m & 1) && (n & 1)) return 0;
    return binomial(m / 2 + n / 2, m / 2);
}

i64 signed_shuffle_bruteforce(int m, int n) {
    // enumerate (m,n)-shuffles as m-subsets of positions 1..m+n
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    i64 total = 0;
    auto sign_of = [&](const std::vector<int>& first_block) {
        // permutation sigma: sigma(i) = position of i-th element of block 1,
        // remaining positions taken by block 2 in order; count inversions
        std::vector<bool> taken(m + n, false);
        for (int p : first_block) taken[p] = true;
        std::vector<int> sigma(m + n);
        for (int i = 0; i < m; ++i) sigma[i] = first_block[i];
        int q = m;
        for (int p = 0; p < m + n; ++p)
            if (!taken[p]) sigma[q++] = p;
        int inv = 0;
        for (int i = 0; i < m + n; ++i)
            for (int j = i + 1; j < m + n; ++j)
                if (sigma[i] > sigma[j]) ++inv;
        return (inv & 1) ? -1 : 1;
    };
    if (m == 0) return 1;
    while (true) {
        total += sign_of(idx);
        int i = m - 1;
        while (i >= 0 && idx[i] == n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return total;
}

UMorElement UMorElement::unit(int rank) {
    UMorElement e(rank);
    e.terms_[std::vector<int>(rank, 0)] = 1;
    return e;
}

UMorElement UMorElement::monomial(std::vector<int> v, i64 c) {
    UMorElement e(static_cast<int>(v.size()));
    if (c != 0) e.terms_[std::move(v)] = c;
    return e;
}

UMorElement UMorElement::x(int rank, int i) {
    std::vector<int> v(rank, 0);
    v.at(i - 1) = 1;
    return monomial(std::move(v));
}

UMorElement UMorElement::y(int rank, int i, int m) {
    std::vector<int> v(rank, 0);
    v.at(i - 1) = 2 * m;
    return monomial(std::move(v));
}

UMorElement UMorElement::from_vector(const std::vector<int>& v) { return monomial(v); }

i64 UMorElement::coeff(const std::vector<int>& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? 0 : it->second;
}

void UMorElement::add_term(const std::vector<int>& v, i64 c) {
    if (static_cast<int>(v.size()) != rank_)
        throw std::invalid_argument("UMorElement::add_term: rank mismatch");
    if (c == 0) return;
    i64& slot = terms_[v];
    slot = add_checked(slot, c);
    if (slot == 0) terms_.erase(v);
}

UMorElement UMorElement::operator+(const UMorElement& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("UMorElement: rank mismatch");
    UMorElement r = *this;
    for (const auto& [v, c] : o.terms_) r.add_term(v, c);
    return r;
}

UMorElement UMorElement::operator-(const UMorElement& o) const { return *this + o.scaled(-1); }

UMorElement UMorElement::scaled(i64 c) const {
    UMorElement r(rank_);
    if (c == 0) return r;
    for (const auto& [v, a] : terms_) r.terms_[v] = mul_checked(a, c);
    return r;
}

UMorElement UMorElement::operator*(const UMorElement& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("UMorElement: rank mismatch");
    UMorElement r(rank_);
    for (const auto& [v, cv] : terms_) {
        for (const auto& [w, cw] : o.terms_) {
            // e_v e_w = (-1)^{sum_{i<j} v_j w_i} prod_i ss(v_i, w_i) e_{v+w}
            i64 coef = mul_checked(cv, cw);
            bool dead = false;
            for (int i = 0; i < rank_ && !dead; ++i) {
                i64 ss = signed_shuffle_coeff(v[i], w[i]);
                if (ss == 0) dead = true;
                coef = mul_checked(coef, ss);
            }
            if (dead || coef == 0) continue;
            i64 cross = 0;
            i64 wsum = 0;  // sum of w_i for i < j as j decreases later; do directly
            // sum_{i<j} v_j w_i: accumulate prefix sums of w
            i64 prefix_w = 0;
            for (int j = 0; j < rank_; ++j) {
                cross += static_cast<i64>(v[j]) * prefix_w;
                prefix_w += w[j];
            }
            (void)wsum;
            if (cross & 1) coef = -coef;
            std::vector<int> sum(rank_);
            for (int i = 0; i < rank_; ++i) sum[i] = v[i] + w[i];
            r.add_term(sum, coef);
        }
    }
    return r;
}

UMorElement UMorElement::reduced_mod(i64 p) const {
    UMorElement r(rank_);
    for (const auto& [v, c] : terms_) {
        i64 m = fp_norm(c, p);
        if (m != 0) r.terms_[v] = m;
    }
    return r;
}

UMorElement UMorElement::weight_part(int weight) const {
    UMorElement r(rank_);
    for (const auto& [v, c] : terms_)
        if (-std::accumulate(v.begin(), v.end(), 0) == weight) r.terms_[v] = c;
    return r;
}

UMorElement UMorElement::y_linear_part() const {
    UMorElement r(rank_);
    for (const auto& [v, c] : terms_) {
        int nz = 0, val = 0;
        for (int vi : v) {
            if (vi != 0) ++nz, val = vi;
        }
        if (nz == 1 && val == 2) r.terms_[v] = c;
    }
    return r;
}

UMorElement UMorElement::x_quadratic_part() const {
    UMorElement r(rank_);
    for (const auto& [v, c] : terms_) {
        int ones = 0, other = 0;
        for (int vi : v) {
            if (vi == 1) ++ones;
            else if (vi != 0) ++other;
        }
        if (ones == 2 && other == 0) r.terms_[v] = c;
    }
    return r;
}

std::string UMorElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c << "*e(";
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ")";
    }
    return os.str();
}

UMorElement umor_omega(int genus) {
    UMorElement r(2 * genus);
    for (int i = 0; i < genus; ++i) {
        std::vector<int> v(2 * genus, 0);
        v[2 * i] = v[2 * i + 1] = 1;
        r.add_term(v, 1);
    }
    return r;
}

UMorElement umor_big_omega(int genus, int P) {
    int rank = 2 * genus;
    if (P < 0) throw std::invalid_argument("umor_big_omega: negative P");
    if (P == 0) return UMorElement::unit(rank);
    if (P & 1) return UMorElement(rank);
    int k = P / 2;
    UMorElement r(rank);
    if (k > genus) return r;
    // 2^k sum over k-subsets of handles
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    i64 coef = pow_checked(2, k);
    while (true) {
        std::vector<int> v(rank, 0);
        for (int i : idx) v[2 * i] = v[2 * i + 1] = 1;
        r.add_term(v, coef);
        int i = k - 1;
        while (i >= 0 && idx[i] == genus - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return r;
}

UMorRingMap::UMorRingMap(const FreeGroupMap& phi)
    : source_rank_(phi.source_rank), target_rank_(phi.target_rank) {
    for (int i = 0; i < source_rank_; ++i) {
        const Word& im = phi.images.at(i);
        auto ab = abelianize(im, target_rank_);
        UMorElement xi(target_rank_), ylin(target_rank_);
        for (int t = 0; t < target_rank_; ++t) {
            if (ab[t] == 0) continue;
            std::vector<int> vx(target_rank_, 0), vy(target_rank_, 0);
            vx[t] = 1;
            vy[t] = 2;
            xi.add_term(vx, ab[t]);
            ylin.add_term(vy, ab[t]);
        }
        UMorElement yquad(target_rank_);
        const ExteriorClass c2 = content2(im, target_rank_);
        for (const auto& [tuple, c] : c2.terms()) {
            std::vector<int> v(target_rank_, 0);
            v[tuple[0] - 1] = v[tuple[1] - 1] = 1;
            yquad.add_term(v, c);
        }
        x_image_.push_back(std::move(xi));
        y_image_lin_.push_back(std::move(ylin));
        y_image_quad_.push_back(std::move(yquad));
    }
}

UMorElement UMorRingMap::y_divided_power(int i, int m) const {
    auto key = std::pair(i, m);
    auto it = dp_cache_.find(key);
    if (it != dp_cache_.end()) return it->second;

    const UMorElement& A = y_image_lin_[i];
    const UMorElement& B = y_image_quad_[i];

    // A^{[j]} for A = sum n_t y_t: sum over exponent vectors (j_t), sum = j,
    // of prod n_t^{j_t} * prod y_t^{[j_t]}.
    std::vector<std::pair<int, i64>> yterms;  // (t, n_t)
    for (const auto& [v, c] : A.terms()) {
        for (int t = 0; t < target_rank_; ++t)
            if (v[t] == 2) yterms.emplace_back(t, c);
    }
    auto a_power = [&](int j) {
        UMorElement out(target_rank_);
        std::vector<int> expo(yterms.size(), 0);
        // enumerate compositions of j over yterms
        auto rec = [&](auto&& self, size_t pos, int rem) -> void {
            if (pos + 1 == yterms.size() || yterms.empty()) {
                if (yterms.empty()) {
                    if (rem == 0) out = out + UMorElement::unit(target_rank_);
                    return;
                }
                expo[pos] = rem;
                std::vector<int> v(target_rank_, 0);
                i64 c = 1;
                for (size_t q = 0; q < yterms.size(); ++q) {
                    v[yterms[q].first] = 2 * expo[q];
                    c = mul_checked(c, pow_checked(yterms[q].second, expo[q]));
                }
                out.add_term(v, c);
                return;
            }
            for (int e = 0; e <= rem; ++e) {
                expo[pos] = e;
                self(self, pos + 1, rem - e);
            }
        };
        if (yterms.empty()) {
            if (j == 0) return UMorElement::unit(target_rank_);
            return out;
        }
        rec(rec, 0, j);
        return out;
    };

    // B^{[r]} for B = sum c_s beta_s over distinct quadratic monomials:
    // sum over r-subsets of the product of coefficients and wedge of betas.
    std::vector<std::pair<std::vector<int>, i64>> betas(B.terms().begin(), B.terms().end());
    auto b_power = [&](int r) {
        UMorElement out(target_rank_);
        if (r == 0) return UMorElement::unit(target_rank_);
        if (r > static_cast<int>(betas.size())) return out;
        std::vector<int> idx(r);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            UMorElement prod = UMorElement::unit(target_rank_);
            for (int q : idx) prod = prod * UMorElement::monomial(betas[q].first, betas[q].second);
            out = out + prod;
            int q = r - 1;
            while (q >= 0 && idx[q] == static_cast<int>(betas.size()) - r + q) --q;
            if (q < 0) break;
            ++idx[q];
            for (int t = q + 1; t < r; ++t) idx[t] = idx[t - 1] + 1;
        }
        return out;
    };

    UMorElement result(target_rank_);
    for (int j = 0; j <= m; ++j) result = result + a_power(j) * b_power(m - j);
    dp_cache_[key] = result;
    return result;
}

UMorElement UMorRingMap::apply_monomial(const std::vector<int>& v) const {
    if (static_cast<int>(v.size()) != source_rank_)
        throw std::invalid_argument("UMorRingMap: rank mismatch");
    UMorElement acc = UMorElement::unit(target_rank_);
    for (int i = 0; i < source_rank_; ++i) {
        int eps = v[i] & 1, m = v[i] / 2;
        if (eps) acc = acc * x_image_[i];
        if (m > 0) acc = acc * y_divided_power(i, m);
        if (acc.is_zero()) break;
    }
    return acc;
}

UMorElement UMorRingMap::apply(const UMorElement& a) const {
    if (a.rank() != source_rank_) throw std::invalid_argument("UMorRingMap: rank mismatch");
    UMorElement out(target_rank_);
    for (const auto& [v, c] : a.terms()) out = out + apply_monomial(v).scaled(c);
    return out;
}

std::vector<std::vector<int>> umor_monomials_of_weight(int rank, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(rank, 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos + 1 == rank) {
            v[pos] = rem;
            out.push_back(v);
            return;
        }
        for (int a = 0; a <= rem; ++a) {
            v[pos] = a;
            self(self, pos + 1, rem - a);
        }
    };
    if (rank == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, n);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace confhom
