#include <atomic>
#include <thread>

#include "confhom/extengine.hpp"

// Brute-force Ext oracle: the reduced bar complex Gamma_+^{(x) b} (x) M is
// built weight by weight and the ranks of its differentials are taken over
// F_p. Dualizing a finite complex over a field preserves dimensions, so
// these are the cobar Ext^{-b} dimensions. This path is deliberately
// independent of the tame-module machinery it cross-checks.

namespace confhom {



namespace {

struct BarBasis {
    // columns: (composition of s into b parts, module weight, position)
    std::vector<std::vector<int>> comp;
    std::vector<int> mweight;
    std::vector<int> mpos;
    std::map<std::pair<std::vector<int>, std::pair<int, int>>, int> index;

    int size() const { return static_cast<int>(comp.size()); }
    void push(std::vector<int> cs, int w, int pos) {
        index[{cs, {w, pos}}] = size();
        comp.push_back(std::move(cs));
        mweight.push_back(w);
        mpos.push_back(pos);
    }
};

void compositions_into(int s, int parts, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (s == 0) out.push_back(cur);
        return;
    }
    for (int first = 1; first + (parts - 1) <= s; ++first) {
        cur.push_back(first);
        compositions_into(s - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

BarBasis bar_basis(const WeightedModule& m, int total_weight, int b) {
    BarBasis out;
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    for (int s = b; 2 * s <= total_weight; ++s) {
        int mw = -(total_weight - 2 * s);
        if (m.dim(mw) == 0) continue;
        comps.clear();
        compositions_into(s, b, cur, comps);
        for (auto& cs : comps)
            for (int pos = 0; pos < m.dim(mw); ++pos) out.push(cs, mw, pos);
    }
    return out;
}

SparseMatrix bar_differential(const WeightedModule& m, const BarBasis& src, const BarBasis& tgt,
                              int b) {
    i64 p = m.p();
    std::vector<MatrixEntry> entries;
    std::map<std::pair<int, int>, FpMatrix> dp_cache;  // (c, weight) -> action
    auto dp = [&](int c, int w) -> const FpMatrix& {
        auto key = std::pair(c, w);
        auto it = dp_cache.find(key);
        if (it == dp_cache.end()) it = dp_cache.emplace(key, divided_power_action(m, c, w)).first;
        return it->second;
    };
    for (int j = 0; j < src.size(); ++j) {
        const auto& cs = src.comp[j];
        // inner merges
        for (int i = 1; i <= b - 1; ++i) {
            i64 coef = fp_norm(binomial(cs[i - 1] + cs[i], cs[i - 1]), p);
            if (coef == 0) continue;
            if (i % 2) coef = fp_norm(-coef, p);
            std::vector<int> merged;
            merged.reserve(cs.size() - 1);
            for (int t = 0; t < b; ++t) {
                if (t == i - 1) {
                    merged.push_back(cs[t] + cs[t + 1]);
                    ++t;
                } else {
                    merged.push_back(cs[t]);
                }
            }
            auto it = tgt.index.find({merged, {src.mweight[j], src.mpos[j]}});
            if (it == tgt.index.end()) throw std::logic_error("bar_differential: missing target");
            entries.push_back({it->second, j, coef});
        }
        // final slot acts on the module
        {
            const FpMatrix& act = dp(cs[b - 1], src.mweight[j]);
            int wt = src.mweight[j] - 2 * cs[b - 1];
            std::vector<int> rest(cs.begin(), cs.end() - 1);
            for (int r = 0; r < act.rows(); ++r) {
                i64 coef = act.at(r, src.mpos[j]);
                if (coef == 0) continue;
                if (b % 2) coef = fp_norm(-coef, p);
                auto it = tgt.index.find({rest, {wt, r}});
                if (it == tgt.index.end())
                    throw std::logic_error("bar_differential: missing module target");
                entries.push_back({it->second, j, coef});
            }
        }
    }
    std::map<std::pair<int, int>, i64> merged_entries;
    for (const auto& e : entries) {
        i64& slot = merged_entries[{e.row, e.col}];
        slot = fp_norm(slot + e.value, p);
    }
    std::vector<MatrixEntry> final_entries;
    for (const auto& [k, v] : merged_entries)
        if (v != 0) final_entries.push_back({k.first, k.second, v});
    return SparseMatrix(tgt.size(), src.size(), std::move(final_entries));
}

}  // namespace

BigradedSeries cobar_ext_dims(const WeightedModule& m, int max_weight, int min_bar, int threads) {
    int max_b = -min_bar;
    BigradedSeries out{max_weight, min_bar, {}};
    std::vector<std::map<int, i64>> per_weight(max_weight + 1);

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int w = next.fetch_add(1); w <= max_weight; w = next.fetch_add(1)) {
            std::vector<BarBasis> bases(max_b + 3);
            for (int b = 0; b <= max_b + 1; ++b) bases[b] = bar_basis(m, w, b);
            std::vector<int> rk(max_b + 3, 0);
            for (int b = 1; b <= max_b + 1; ++b) {
                if (bases[b].size() == 0 || bases[b - 1].size() == 0) continue;
                rk[b] = rank_mod_p(bar_differential(m, bases[b], bases[b - 1], b), m.p());
            }
            for (int b = 0; b <= max_b; ++b) {
                i64 d = bases[b].size() - rk[b] - rk[b + 1];
                if (d != 0) per_weight[w][-b] = d;
            }
        }
    };
    int nthreads = std::max(1, std::min(threads, max_weight + 1));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (int w = 0; w <= max_weight; ++w)
        for (const auto& [b, d] : per_weight[w]) out.add(w, b, d);
    return out;
}

}  // namespace confhom
