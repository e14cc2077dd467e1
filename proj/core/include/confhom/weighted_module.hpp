#pragma once

#include <map>
#include <string>
#include <vector>

#include "confhom/exactla.hpp"

// Finite weighted modules over truncated polynomial algebras
// A(d) = F[y_0, y_1, ...]/(y_0^{d_1}, y_1^{d_2}, ...), with y_i of weight
// -2 d_0 d_1 ... d_i. The main instance A(1, p, p, ...) is the mod-p divided
// power algebra on one generator, with y_i = y^{[p^i]}.

namespace confhom {

struct TruncatedAlgebra {
    i64 d0 = 1;             // d_0 >= 1
    std::vector<i64> head;  // d_1, d_2, ... explicit prefix, each >= 2
    i64 tail = 2;           // value of d_i beyond the prefix

    static TruncatedAlgebra gamma(i64 p) { return {1, {}, p}; }
    // A(p^i, p, p, ...): the algebra generated by y_i, y_{i+1}, ... inside
    // gamma(p), with local variable 0 = global y_i.
    static TruncatedAlgebra gamma_stage(i64 p, int stage);

    i64 d(int i) const;
    i64 D(int i) const;  // d_0 ... d_i, with D(-1) = 1
    i64 var_weight(int i) const { return -2 * D(i); }
    i64 var_order(int i) const { return d(i + 1); }  // y_i^{order} = 0
    // A' = A(d_0 d_1, d_2, ...): quotient by y_0 re-indexes the variables.
    TruncatedAlgebra next_stage() const;

    bool operator==(const TruncatedAlgebra&) const = default;
    std::string str() const;
};

// Dimensions per weight plus one matrix per variable per source weight.
class WeightedModule {
  public:
    WeightedModule() = default;
    WeightedModule(TruncatedAlgebra alg, i64 p) : alg_(std::move(alg)), p_(p) {}

    const TruncatedAlgebra& algebra() const { return alg_; }
    i64 p() const { return p_; }

    void set_dim(int weight, int dim);
    int dim(int weight) const;
    i64 total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    const std::map<int, int>& dims() const { return dims_; }
    int min_weight() const;
    int max_weight() const;
    // Number of variables that can act within the weight span.
    int relevant_vars() const;

    // Sets the matrix of y_i from weight w to w + var_weight(i).
    void set_action(int var, int weight, FpMatrix m);
    // Zero matrix of the right shape when unset.
    FpMatrix action(int var, int weight) const;
    FpMatrix action_power(int var, int weight, int e) const;
    // Matrix of a monomial prod y_i^{e_i} from the given source weight.
    FpMatrix action_monomial(const std::vector<int>& exponents, int weight) const;
    std::vector<i64> apply(int var, int weight, const std::vector<i64>& x) const;

    // Shape, nilpotency (y_i^{d_{i+1}} = 0) and pairwise commutation; throws
    // on the first violation.
    void validate() const;

    WeightedModule dualized() const;
    WeightedModule shifted(int s) const;  // weights move up by s

    bool operator==(const WeightedModule&) const = default;

  private:
    TruncatedAlgebra alg_;
    i64 p_ = 2;
    std::map<int, int> dims_;
    std::map<std::pair<int, int>, FpMatrix> mult_;  // (var, source weight)
};

// Multiset of bars (start weight m, size c), classifying the module over
// the single variable F[y]/(y^d).
struct Barcode {
    i64 d = 0;                            // sizes range over 1..d
    i64 var_weight_step = 0;              // positive: 2 D_i of the variable
    std::map<std::pair<int, int>, i64> bars;  // (m, c) -> multiplicity

    i64 total_dim() const;
    std::map<int, int> dims() const;  // reconstructed weight dimensions
    Barcode shifted(int s) const;
    bool operator==(const Barcode&) const = default;
    std::string str() const;
};

// Barcode of M over its variable `var`, by rank inclusion-exclusion,
// verified by reconstructing every dimension and rank from the bars.
Barcode barcode(const WeightedModule& m, int var);

// Same, plus explicit generators (coordinates at the bar's start weight).
struct BarGenerator {
    int start = 0;
    int size = 0;
    std::vector<i64> vec;
};
struct BarcodeGenerators {
    Barcode bc;
    std::vector<BarGenerator> gens;
};
BarcodeGenerators barcode_with_generators(const WeightedModule& m, int var);

}  // namespace confhom
