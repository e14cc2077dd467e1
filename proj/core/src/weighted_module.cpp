#include "confhom/weighted_module.hpp"

#include <algorithm>
#include <sstream>

namespace confhom {

TruncatedAlgebra TruncatedAlgebra::gamma_stage(i64 p, int stage) {
    i64 d0 = 1;
    for (int i = 0; i < stage; ++i) d0 *= p;
    return {d0, {}, p};
}

i64 TruncatedAlgebra::d(int i) const {
    if (i == 0) return d0;
    if (i - 1 < static_cast<int>(head.size())) return head[i - 1];
    return tail;
}

i64 TruncatedAlgebra::D(int i) const {
    i64 r = 1;
    for (int j = 0; j <= i; ++j) r *= d(j);
    return r;
}

TruncatedAlgebra TruncatedAlgebra::next_stage() const {
    TruncatedAlgebra next;
    next.d0 = d0 * d(1);
    if (!head.empty()) next.head.assign(head.begin() + 1, head.end());
    next.tail = tail;
    return next;
}

std::string TruncatedAlgebra::str() const {
    std::ostringstream os;
    os << "A(" << d0;
    for (i64 h : head) os << "," << h;
    os << "," << tail << "...)";
    return os.str();
}

void WeightedModule::set_dim(int weight, int dim) {
    if (dim < 0) throw std::invalid_argument("WeightedModule: negative dimension");
    if (dim == 0)
        dims_.erase(weight);
    else
        dims_[weight] = dim;
}

int WeightedModule::dim(int weight) const {
    auto it = dims_.find(weight);
    return it == dims_.end() ? 0 : it->second;
}

i64 WeightedModule::total_dim() const {
    i64 t = 0;
    for (const auto& [w, d] : dims_) t += d;
    return t;
}

int WeightedModule::min_weight() const { return dims_.empty() ? 0 : dims_.begin()->first; }
int WeightedModule::max_weight() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }

int WeightedModule::relevant_vars() const {
    int span = max_weight() - min_weight();
    int n = 0;
    while (-alg_.var_weight(n) <= span) ++n;
    return n;
}

void WeightedModule::set_action(int var, int weight, FpMatrix m) {
    int target = weight + static_cast<int>(alg_.var_weight(var));
    if (m.rows() != dim(target) || m.cols() != dim(weight))
        throw std::invalid_argument("WeightedModule::set_action: shape mismatch");
    if (m.p() != p_) throw std::invalid_argument("WeightedModule::set_action: field mismatch");
    // canonical storage: degenerate and zero matrices are never kept, so
    // equality of modules is equality of the stored maps
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero())
        mult_.erase({var, weight});
    else
        mult_[{var, weight}] = std::move(m);
}

FpMatrix WeightedModule::action(int var, int weight) const {
    auto it = mult_.find({var, weight});
    if (it != mult_.end()) return it->second;
    int target = weight + static_cast<int>(alg_.var_weight(var));
    return FpMatrix(dim(target), dim(weight), p_);
}

FpMatrix WeightedModule::action_power(int var, int weight, int e) const {
    int step = static_cast<int>(alg_.var_weight(var));
    FpMatrix acc = FpMatrix::identity(dim(weight), p_);
    int w = weight;
    for (int i = 0; i < e; ++i) {
        acc = action(var, w).mul(acc);
        w += step;
    }
    return acc;
}

FpMatrix WeightedModule::action_monomial(const std::vector<int>& exponents, int weight) const {
    FpMatrix acc = FpMatrix::identity(dim(weight), p_);
    int w = weight;
    for (size_t var = 0; var < exponents.size(); ++var) {
        for (int i = 0; i < exponents[var]; ++i) {
            acc = action(static_cast<int>(var), w).mul(acc);
            w += static_cast<int>(alg_.var_weight(static_cast<int>(var)));
        }
    }
    return acc;
}

std::vector<i64> WeightedModule::apply(int var, int weight, const std::vector<i64>& x) const {
    return action(var, weight).apply(x);
}

void WeightedModule::validate() const {
    int nv = relevant_vars();
    for (const auto& [key, m] : mult_) {
        auto [var, w] = key;
        int target = w + static_cast<int>(alg_.var_weight(var));
        if (m.rows() != dim(target) || m.cols() != dim(w))
            throw std::invalid_argument("WeightedModule: action shape mismatch");
    }
    for (int var = 0; var < nv; ++var) {
        int ord = static_cast<int>(alg_.var_order(var));
        for (const auto& [w, d] : dims_) {
            if (!action_power(var, w, ord).is_zero())
                throw std::invalid_argument("WeightedModule: y_" + std::to_string(var) +
                                            "^" + std::to_string(ord) + " != 0");
        }
    }
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b) {
            int wa = static_cast<int>(alg_.var_weight(a)), wb = static_cast<int>(alg_.var_weight(b));
            for (const auto& [w, d] : dims_) {
                FpMatrix ab = action(a, w + wb).mul(action(b, w));
                FpMatrix ba = action(b, w + wa).mul(action(a, w));
                if (!(ab == ba))
                    throw std::invalid_argument("WeightedModule: variables " + std::to_string(a) +
                                                " and " + std::to_string(b) + " do not commute");
            }
        }
}

WeightedModule WeightedModule::dualized() const {
    WeightedModule out(alg_, p_);
    for (const auto& [w, d] : dims_) out.set_dim(-w, d);
    int nv = relevant_vars();
    for (int var = 0; var < nv; ++var) {
        int step = static_cast<int>(alg_.var_weight(var));
        for (const auto& [w, d] : out.dims_) {
            // (a f)(x) = f(a x): the matrix at dual source weight w is the
            // transpose of the action at primal source weight -w + 2 D_var
            FpMatrix primal = action(var, -w - step);
            if (primal.rows() == 0 && primal.cols() == 0) continue;
            out.set_action(var, w, primal.transposed());
        }
    }
    return out;
}

WeightedModule WeightedModule::shifted(int s) const {
    WeightedModule out(alg_, p_);
    for (const auto& [w, d] : dims_) out.set_dim(w + s, d);
    for (const auto& [key, m] : mult_) out.mult_[{key.first, key.second + s}] = m;
    return out;
}

i64 Barcode::total_dim() const {
    i64 t = 0;
    for (const auto& [bar, mult] : bars) t += static_cast<i64>(bar.second) * mult;
    return t;
}

std::map<int, int> Barcode::dims() const {
    std::map<int, int> out;
    for (const auto& [bar, mult] : bars) {
        auto [m, c] = bar;
        for (int t = 0; t < c; ++t) out[m - static_cast<int>(var_weight_step) * t] += mult;
    }
    return out;
}

Barcode Barcode::shifted(int s) const {
    Barcode out{d, var_weight_step, {}};
    for (const auto& [bar, mult] : bars) out.bars[{bar.first + s, bar.second}] = mult;
    return out;
}

std::string Barcode::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [bar, mult] : bars) {
        if (!first) os << ", ";
        first = false;
        os << mult << "x(" << bar.first << "," << bar.second << ")";
    }
    os << "}";
    return os.str();
}

namespace {

// rank of y^j restricted to weight w
int bar_rank(const WeightedModule& m, int var, int w, int j) {
    if (j == 0) return m.dim(w);
    return m.action_power(var, w, j).rank();
}

}  // namespace

Barcode barcode(const WeightedModule& m, int var) {
    int d = static_cast<int>(m.algebra().var_order(var));
    int step = static_cast<int>(-m.algebra().var_weight(var));
    Barcode out{d, step, {}};
    // N_{j+1}(w) = rank_j(w) - rank_{j+1}(w + step); mult(w,c) = N_c - N_{c+1}
    for (const auto& [w, dw] : m.dims()) {
        for (int c = 1; c <= d; ++c) {
            i64 n_c = bar_rank(m, var, w, c - 1) - bar_rank(m, var, w + step, c);
            i64 n_c1 = bar_rank(m, var, w, c) - bar_rank(m, var, w + step, c + 1);
            i64 mult = n_c - n_c1;
            if (mult < 0) throw std::logic_error("barcode: negative multiplicity");
            if (mult > 0) out.bars[{w, c}] += mult;
        }
    }
    // reconstruction check: dims and all ranks must match exactly
    if (out.dims() != std::map<int, int>(m.dims().begin(), m.dims().end()))
        throw std::logic_error("barcode: reconstructed dimensions disagree");
    for (const auto& [w, dw] : m.dims())
        for (int j = 1; j < d; ++j) {
            i64 expect = 0;
            for (const auto& [bar, mult] : out.bars) {
                auto [bm, bc] = bar;
                // bar contributes to rank_j at source w if w = bm - step*t
                // with t + j <= bc - 1
                if ((bm - w) % step != 0) continue;
                int t = (bm - w) / step;
                if (t >= 0 && t + j <= bc - 1) expect += mult;
            }
            if (expect != bar_rank(m, var, w, j))
                throw std::logic_error("barcode: reconstructed rank disagrees");
        }
    return out;
}

BarcodeGenerators barcode_with_generators(const WeightedModule& m, int var) {
    BarcodeGenerators out;
    out.bc = barcode(m, var);
    int d = static_cast<int>(m.algebra().var_order(var));
    int step = static_cast<int>(-m.algebra().var_weight(var));
    i64 p = m.p();
    for (const auto& [w, dw] : m.dims()) {
        // U_c = ker(y^c) at weight w; generators of size-c bars at w span a
        // complement of U_{c-1} + (im y cap U_c) inside U_c
        FpMatrix img = m.action(var, w + step).image_basis();
        for (int c = d; c >= 1; --c) {
            auto it = out.bc.bars.find({w, c});
            if (it == out.bc.bars.end()) continue;
            FpMatrix uc = m.action_power(var, w, c).kernel_basis();
            FpMatrix ucm1 = m.action_power(var, w, c - 1).kernel_basis();
            FpMatrix img_in_uc = img.cols() == 0 ? img : fp_intersection(img, uc);
            FpMatrix q = ucm1.hstack(img_in_uc);
            FpMatrix gens = fp_complement_in(uc, q);
            if (gens.cols() != it->second)
                throw std::logic_error("barcode_with_generators: generator count mismatch");
            for (int j = 0; j < gens.cols(); ++j) {
                BarGenerator g;
                g.start = w;
                g.size = c;
                g.vec.resize(dw);
                for (int r = 0; r < dw; ++r) g.vec[r] = gens.at(r, j);
                out.gens.push_back(std::move(g));
            }
        }
    }
    // independence of the full orbit family, weight by weight
    std::map<int, std::vector<std::vector<i64>>> family;
    for (const auto& g : out.gens) {
        std::vector<i64> v = g.vec;
        int w = g.start;
        for (int t = 0; t < g.size; ++t) {
            family[w].push_back(v);
            if (t + 1 < g.size) {
                v = m.apply(var, w, v);
                w -= step;
            }
        }
    }
    for (const auto& [w, vecs] : family) {
        if (static_cast<int>(vecs.size()) != m.dim(w))
            throw std::logic_error("barcode_with_generators: orbit family has wrong size");
        FpMatrix mat(m.dim(w), static_cast<int>(vecs.size()), p);
        for (size_t j = 0; j < vecs.size(); ++j)
            for (int r = 0; r < m.dim(w); ++r) mat.set(r, static_cast<int>(j), vecs[j][r]);
        if (mat.rank() != m.dim(w))
            throw std::logic_error("barcode_with_generators: orbits are not independent");
    }
    return out;
}

}  // namespace confhom
