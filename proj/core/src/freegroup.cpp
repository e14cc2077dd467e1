#include "confhom/freegroup.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace confhom {

Word Word::from_runs(std::vector<Run> runs) {
    Word w;
    for (const auto& r : runs) {
        if (r.gen < 1) throw std::invalid_argument("Word: generator index out of range");
        if (r.exp == 0) continue;
        if (!w.runs_.empty() && w.runs_.back().gen == r.gen) {
            w.runs_.back().exp += r.exp;
            if (w.runs_.back().exp == 0) w.runs_.pop_back();
        } else {
            w.runs_.push_back(r);
        }
    }
    // a cancellation may expose two mergeable runs; run to a fixed point
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Run> out;
        for (const auto& r : w.runs_) {
            if (!out.empty() && out.back().gen == r.gen) {
                out.back().exp += r.exp;
                if (out.back().exp == 0) out.pop_back();
                changed = true;
            } else {
                out.push_back(r);
            }
        }
        w.runs_ = std::move(out);
    }
    return w;
}

Word Word::generator(int gen, i64 exp) { return from_runs({{gen, exp}}); }

Word Word::boundary_word(int genus) {
    std::vector<Run> runs;
    for (int i = 0; i < genus; ++i) {
        int a = 2 * i + 1, b = 2 * i + 2;
        runs.insert(runs.end(), {Run{a, 1}, Run{b, 1}, Run{a, -1}, Run{b, -1}});
    }
    return from_runs(std::move(runs));
}

Word Word::commutator(const Word& a, const Word& b) {
    return a * b * a.inverse() * b.inverse();
}

i64 Word::length() const {
    i64 n = 0;
    for (const auto& r : runs_) n += r.exp < 0 ? -r.exp : r.exp;
    return n;
}

int Word::max_generator() const {
    int m = 0;
    for (const auto& r : runs_) m = std::max(m, r.gen);
    return m;
}

Word Word::operator*(const Word& o) const {
    std::vector<Run> runs = runs_;
    runs.insert(runs.end(), o.runs_.begin(), o.runs_.end());
    return from_runs(std::move(runs));
}

Word Word::inverse() const {
    Word w;
    w.runs_.reserve(runs_.size());
    for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) w.runs_.push_back({it->gen, -it->exp});
    return w;
}

Word Word::pow(i64 e) const {
    if (e == 0) return {};
    Word base = e < 0 ? inverse() : *this;
    i64 n = e < 0 ? -e : e;
    Word acc;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Word Word::conjugated_by(const Word& u) const { return u * *this * u.inverse(); }

Word Word::cyclically_reduced() const {
    Word w = *this;
    while (w.runs_.size() >= 2 && w.runs_.front().gen == w.runs_.back().gen) {
        i64 a = w.runs_.front().exp, b = w.runs_.back().exp;
        if ((a > 0) == (b > 0)) break;  // same sign: reduced as a cyclic word
        i64 cancel = std::min(a < 0 ? -a : a, b < 0 ? -b : b);
        Word u = Word::generator(w.runs_.front().gen, a > 0 ? cancel : -cancel);
        Word next = u.inverse() * w * u;
        if (next == w) break;
        w = next;
    }
    return w;
}

bool Word::conjugate_as_cyclic_word(const Word& o) const {
    Word a = cyclically_reduced(), b = o.cyclically_reduced();
    if (a.length() != b.length()) return false;
    if (a == b) return true;
    auto letters = [](const Word& w) {
        std::vector<std::pair<int, int>> ls;
        for (const auto& r : w.runs_)
            for (i64 i = 0; i < (r.exp < 0 ? -r.exp : r.exp); ++i)
                ls.emplace_back(r.gen, r.exp < 0 ? -1 : 1);
        return ls;
    };
    auto la = letters(a), lb = letters(b);
    if (la.size() != lb.size()) return false;
    size_t n = la.size();
    for (size_t s = 0; s < n; ++s) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = la[(s + i) % n] == lb[i];
        if (ok) return true;
    }
    return false;
}

Word Word::parse(const std::string& text, int rank) {
    std::vector<Run> runs;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        char c = text[i];
        if (c == '1') {
            ++i;  // literal identity token
            skip_ws();
            continue;
        }
        if (c != 'g' && c != 'G')
            throw std::invalid_argument("word parse: expected g<k> or G<k> at '" + text.substr(i) +
                                        "'");
        int sign = c == 'G' ? -1 : 1;
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("word parse: generator index expected");
        int gen = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            gen = gen * 10 + (text[i++] - '0');
        if (gen < 1 || gen > rank)
            throw std::invalid_argument("word parse: generator g" + std::to_string(gen) +
                                        " out of range for rank " + std::to_string(rank));
        i64 exp = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            bool neg = false;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw std::invalid_argument("word parse: integer exponent expected after ^");
            i64 e = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                e = e * 10 + (text[i++] - '0');
            exp = neg ? -e : e;
        }
        runs.push_back({gen, sign * exp});
        skip_ws();
    }
    return from_runs(std::move(runs));
}

std::string Word::str() const {
    if (runs_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& r : runs_) {
        if (!first) os << ' ';
        first = false;
        os << (r.exp < 0 ? 'G' : 'g') << r.gen;
        i64 a = r.exp < 0 ? -r.exp : r.exp;
        if (a != 1) os << '^' << a;
    }
    return os.str();
}

FreeGroupMap FreeGroupMap::identity(int rank) {
    FreeGroupMap f;
    f.source_rank = f.target_rank = rank;
    for (int i = 1; i <= rank; ++i) f.images.push_back(Word::generator(i));
    return f;
}

Word FreeGroupMap::apply(const Word& w) const {
    if (static_cast<int>(images.size()) != source_rank)
        throw std::invalid_argument("FreeGroupMap: images.size() != source_rank");
    if (w.max_generator() > source_rank)
        throw std::invalid_argument("FreeGroupMap::apply: word not in source group");
    Word out;
    for (const auto& r : w.runs()) out = out * images[r.gen - 1].pow(r.exp);
    return out;
}

FreeGroupMap FreeGroupMap::compose_after(const FreeGroupMap& first) const {
    if (first.target_rank != source_rank)
        throw std::invalid_argument("FreeGroupMap::compose_after: rank mismatch");
    FreeGroupMap f;
    f.source_rank = first.source_rank;
    f.target_rank = target_rank;
    for (const auto& w : first.images) f.images.push_back(apply(w));
    return f;
}

std::vector<std::vector<i64>> FreeGroupMap::abelianized() const {
    std::vector<std::vector<i64>> a(target_rank, std::vector<i64>(source_rank, 0));
    for (int j = 0; j < source_rank; ++j) {
        auto col = abelianize(images[j], target_rank);
        for (int i = 0; i < target_rank; ++i) a[i][j] = col[i];
    }
    return a;
}

void ExteriorClass::add(std::vector<int> tuple, i64 c) {
    if (static_cast<int>(tuple.size()) != degree_)
        throw std::invalid_argument("ExteriorClass::add: wrong tuple degree");
    if (c == 0) return;
    int sign = 1;
    for (size_t i = 1; i < tuple.size(); ++i)
        for (size_t j = i; j > 0 && tuple[j] < tuple[j - 1]; --j) {
            std::swap(tuple[j], tuple[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < tuple.size(); ++i)
        if (tuple[i] == tuple[i - 1]) return;
    i64& slot = terms_[tuple];
    slot += sign * c;
    if (slot == 0) terms_.erase(tuple);
}

i64 ExteriorClass::coeff(const std::vector<int>& tuple) const {
    auto it = terms_.find(tuple);
    return it == terms_.end() ? 0 : it->second;
}

ExteriorClass ExteriorClass::operator+(const ExteriorClass& o) const {
    if (degree_ != o.degree_) throw std::invalid_argument("ExteriorClass: degree mismatch");
    ExteriorClass r = *this;
    for (const auto& [t, c] : o.terms_) {
        i64& slot = r.terms_[t];
        slot += c;
        if (slot == 0) r.terms_.erase(t);
    }
    return r;
}

ExteriorClass ExteriorClass::operator-() const { return scaled(-1); }

ExteriorClass ExteriorClass::scaled(i64 c) const {
    ExteriorClass r(degree_);
    if (c == 0) return r;
    for (const auto& [t, v] : terms_) r.terms_[t] = v * c;
    return r;
}

ExteriorClass ExteriorClass::wedge(const ExteriorClass& o) const {
    ExteriorClass r(degree_ + o.degree_);
    for (const auto& [t1, c1] : terms_)
        for (const auto& [t2, c2] : o.terms_) {
            std::vector<int> t = t1;
            t.insert(t.end(), t2.begin(), t2.end());
            r.add(std::move(t), c1 * c2);
        }
    return r;
}

ExteriorClass ExteriorClass::reduced_mod(i64 p) const {
    ExteriorClass r(degree_);
    for (const auto& [t, v] : terms_) {
        i64 m = fp_norm(v, p);
        if (m != 0) r.terms_[t] = m;
    }
    return r;
}

ExteriorClass ExteriorClass::from_vector(const std::vector<i64>& v) {
    ExteriorClass r(1);
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) r.terms_[{static_cast<int>(i) + 1}] = v[i];
    return r;
}

std::string ExteriorClass::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (int g : t) os << "^e" << g;
    }
    return os.str();
}

std::vector<i64> abelianize(const Word& w, int rank) {
    if (w.max_generator() > rank) throw std::invalid_argument("abelianize: rank too small");
    std::vector<i64> v(rank, 0);
    for (const auto& r : w.runs()) v[r.gen - 1] += r.exp;
    return v;
}

ExteriorClass abelianize_class(const Word& w, int rank) {
    return ExteriorClass::from_vector(abelianize(w, rank));
}

ExteriorClass content2(const Word& w, int rank) {
    if (w.max_generator() > rank) throw std::invalid_argument("content2: rank too small");
    // c2 vanishes on pure powers of one generator, so scan whole runs:
    // c2(w g^e) = c2(w) + e [w]^[g]
    std::vector<i64> ab(rank, 0);
    ExteriorClass c2(2);
    for (const auto& r : w.runs()) {
        for (int i = 0; i < rank; ++i) {
            if (ab[i] == 0 || i + 1 == r.gen) continue;
            c2.add({i + 1, r.gen}, ab[i] * r.exp);
        }
        ab[r.gen - 1] += r.exp;
    }
    return c2;
}

ExteriorClass content_component(const Word& w, int rank, int degree) {
    if (degree < 0 || degree > rank)
        throw std::invalid_argument("content_component: degree out of range");
    // truncated product of the run factors in Lambda H; a run g^e contributes
    // the factor 1 + e [g] since [g]^2 = 0
    std::vector<ExteriorClass> acc(degree + 1);
    for (int d = 0; d <= degree; ++d) acc[d] = ExteriorClass(d);
    acc[0].add({}, 1);
    for (const auto& r : w.runs()) {
        for (int d = degree; d >= 1; --d) {
            ExteriorClass lift(d);
            for (const auto& [t, c] : acc[d - 1].terms()) {
                std::vector<int> tuple = t;
                tuple.push_back(r.gen);
                lift.add(std::move(tuple), c * r.exp);
            }
            acc[d] = acc[d] + lift;
        }
    }
    return acc[degree];
}

}  // namespace confhom
