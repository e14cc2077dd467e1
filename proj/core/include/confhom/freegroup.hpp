#pragma once

#include <map>
#include <string>
#include <vector>

#include "confhom/exactla.hpp"

// Reduced words in the free group Z^{*k} on generators g1..gk, group
// homomorphisms between free groups, abelianisation and the quadratic
// content map c2.

namespace confhom {

// Freely reduced word, stored run-length compressed as (generator, signed
// exponent) with 1-based generator indices, no zero exponents and no two
// adjacent runs on the same generator.
class Word {
  public:
    struct Run {
        int gen = 0;  // 1..rank
        i64 exp = 0;  // nonzero
        auto operator<=>(const Run&) const = default;
    };

    Word() = default;

    // Reduces an arbitrary run sequence.
    static Word from_runs(std::vector<Run> runs);
    static Word generator(int gen, i64 exp = 1);
    // g1 g2 g1^-1 g2^-1 ... g_{2g-1} g_{2g} g_{2g-1}^-1 g_{2g}^-1
    static Word boundary_word(int genus);
    static Word commutator(const Word& a, const Word& b);

    const std::vector<Run>& runs() const { return runs_;  }
    bool is_identity() const { return runs_.empty(); }
    i64 length() const;  // number of letters after reduction
    int max_generator() const;

    Word operator*(const Word& o) const;
    Word inverse() const;
    Word pow(i64 e) const;
    Word conjugated_by(const Word& u) const;  // u * this * u^-1
    bool operator==(const Word&) const = default;
    bool operator<(const Word& o) const { return runs_ < o.runs_; }

    Word cyclically_reduced() const;
    // Equality up to cyclic rotation of the (cyclically reduced) letters.
    bool conjugate_as_cyclic_word(const Word& o) const;

    // CLI grammar: `g1 g2 G1 G2` with `G1` = g1^-1, optional `^n` powers.
    static Word parse(const std::string& text, int rank);
    std::string str() const;

  private:
    std::vector<Run> runs_;
};

// Homomorphism G_k -> G_l given by the images of the k generators.
struct FreeGroupMap {
    int source_rank = 0;
    int target_rank = 0;
    std::vector<Word> images;  // size k, words in G_l

    static FreeGroupMap identity(int rank);

    Word apply(const Word& w) const;
    FreeGroupMap compose_after(const FreeGroupMap& first) const;  // this o first
    // Abelianised matrix: column i = exponent vector of images[i].
    std::vector<std::vector<i64>> abelianized() const;
    bool operator==(const FreeGroupMap&) const = default;
};

// Homogeneous element of Lambda^d H_k: coefficients on strictly increasing
// d-tuples of generator indices.
class ExteriorClass {
  public:
    ExteriorClass() = default;
    explicit ExteriorClass(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    const std::map<std::vector<int>, i64>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds c * e_{t}, where t may be unsorted; sorts and applies the sign.
    void add(std::vector<int> tuple, i64 c);
    i64 coeff(const std::vector<int>& tuple) const;

    ExteriorClass operator+(const ExteriorClass& o) const;
    ExteriorClass operator-() const;
    ExteriorClass scaled(i64 c) const;
    ExteriorClass wedge(const ExteriorClass& o) const;
    ExteriorClass reduced_mod(i64 p) const;
    bool operator==(const ExteriorClass&) const = default;

    static ExteriorClass from_vector(const std::vector<i64>& v);  // degree 1
    std::string str() const;

  private:
    int degree_ = 0;
    std::map<std::vector<int>, i64> terms_;
};

// Exponent-sum vector [w] in H_k = Z^k (index 0 = generator 1).
std::vector<i64> abelianize(const Word& w, int rank);
ExteriorClass abelianize_class(const Word& w, int rank);

// The quadratic component c2(w) of the content map, by a single
// left-to-right scan: c2(w * g^s) = c2(w) + s [w] ^ [g].
ExteriorClass content2(const Word& w, int rank);

// Component c_i(w) of the content map, by multiplying out the factors
// (1 + e [gamma]) in Lambda H truncated above degree i.
ExteriorClass content_component(const Word& w, int rank, int degree);

}  // namespace confhom
