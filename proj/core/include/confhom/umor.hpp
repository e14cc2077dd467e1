#pragma once

#include <map>
#include <vector>

#include "confhom/freegroup.hpp"

// The weighted ring UMor(k) = Lambda(x_1..x_k) (x) Gamma(y_1..y_k) over Z,
// with monomial basis e_v for v in Z_{>=0}^k, where e_v decodes as
// prod x_i^{eps_i} y_i^{[m_i]} with v_i = 2 m_i + eps_i. The element e_v
// sits in weight -sum(v) and homological dimension sum(v).
//
// Coefficients stay integral throughout; divided powers are expanded by
// binomial/subset rules, never by dividing by factorials.

namespace confhom {

// binom(n, k) as i64, overflow-checked.
i64 binomial(i64 n, i64 k);

// 0 if m, n both odd, else binom((m+n)/2 floored, m/2 floored).
i64 signed_shuffle_coeff(i64 m, i64 n);

// Brute-force sum of shuffle signs, for the oracle tests.
i64 signed_shuffle_bruteforce(int m, int n);

class UMorElement {
  public:
    UMorElement() = default;
    explicit UMorElement(int rank) : rank_(rank) {}

    static UMorElement unit(int rank);
    static UMorElement monomial(std::vector<int> v, i64 c = 1);
    static UMorElement x(int rank, int i);                // e_{e_i}
    static UMorElement y(int rank, int i, int m = 1);     // y_i^{[m]} = e_{2m e_i}
    // v-decoding of a record vector: prod x_i^{eps} y_i^{[m]}.
    static UMorElement from_vector(const std::vector<int>& v);

    int rank() const { return rank_; }
    const std::map<std::vector<int>, i64>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    i64 coeff(const std::vector<int>& v) const;

    void add_term(const std::vector<int>& v, i64 c);
    UMorElement operator+(const UMorElement& o) const;
    UMorElement operator-(const UMorElement& o) const;
    UMorElement scaled(i64 c) const;
    UMorElement operator*(const UMorElement& o) const;
    UMorElement reduced_mod(i64 p) const;
    bool operator==(const UMorElement&) const = default;

    // Restriction to homogeneous weight (weight of e_v is -sum v <= 0).
    UMorElement weight_part(int weight) const;
    // Nonzero only on monomials of pure y type (all v_i even) / pure
    // quadratic x type; used to split images of generators.
    UMorElement y_linear_part() const;   // terms 2 e_t
    UMorElement x_quadratic_part() const;  // terms e_s + e_t, s < t

    std::string str() const;

  private:
    int rank_ = 0;
    std::map<std::vector<int>, i64> terms_;
};

// omega = x1^x2 + x3^x4 + ... + x_{2g-1}^x_{2g}, rank 2g.
UMorElement umor_omega(int genus);

// Omega_P: zero for odd P, and for P = 2k the subset expansion
// 2^k sum x_{2i_1+1}^x_{2i_1+2}^...^x_{2i_k+1}^x_{2i_k+2}.
UMorElement umor_big_omega(int genus, int P);

// Ring map UMor(k) -> UMor(l) induced by a free-group homomorphism:
// x_i -> [phi(g_i)]_x and y_i -> [phi(g_i)]_y + [c2(phi(g_i))]_x,
// extended to divided powers by (A+B)^{[m]} = sum_j A^{[j]} B^{[m-j]}.
class UMorRingMap {
  public:
    explicit UMorRingMap(const FreeGroupMap& phi);

    int source_rank() const { return source_rank_; }
    int target_rank() const { return target_rank_; }

    UMorElement apply(const UMorElement& a) const;
    UMorElement apply_monomial(const std::vector<int>& v) const;

  private:
    UMorElement y_divided_power(int i, int m) const;

    int source_rank_ = 0;
    int target_rank_ = 0;
    std::vector<UMorElement> x_image_;       // [phi(g_i)]_x
    std::vector<UMorElement> y_image_lin_;   // [phi(g_i)]_y
    std::vector<UMorElement> y_image_quad_;  // [c2(phi(g_i))]_x
    mutable std::map<std::pair<int, int>, UMorElement> dp_cache_;
};

// All monomial vectors of rank k with given |v| = n, lexicographically.
std::vector<std::vector<int>> umor_monomials_of_weight(int rank, int n);

}  // namespace confhom
