#pragma once

#include <optional>
#include <string>
#include <vector>

#include "confhom/cellcx.hpp"

// Mapping classes presented as endomorphisms of the free group on 2g
// generators, the xi invariants built from the quadratic content map, and
// the chain-level triviality checks.

namespace confhom {

struct MappingClassCandidate {
    FreeGroupMap phi;
    std::string label;

    int genus() const { return phi.source_rank / 2; }
};

struct ValidationReport {
    bool boundary_conjugate = false;  // phi(zeta_g) ~ zeta_g as cyclic words
    bool boundary_strict = false;     // phi(zeta_g) == zeta_g on the nose
    bool omega_preserved = false;     // Lambda^2 of the abelianisation fixes omega

    bool passed() const { return boundary_conjugate && omega_preserved; }
};

ValidationReport validate(const FreeGroupMap& phi, int genus);

// xi(phi): [g_i] -> c2(phi(g_i)), one degree-2 class per generator.
struct XiValue {
    std::vector<ExteriorClass> columns;  // indexed by generator, 2g entries

    bool is_zero() const;
    XiValue reduced_mod(i64 p) const;
    // Linear extension to an arbitrary H-vector.
    ExteriorClass apply(const std::vector<i64>& a) const;
    bool operator==(const XiValue&) const = default;
};

XiValue xi(const FreeGroupMap& phi);
XiValue xi_p(const FreeGroupMap& phi, i64 p);

// xi(phi psi)(a) = phi *_H xi(psi)(a) + xi(phi)(psi *_H a) on all basis
// vectors a = [g_i].
bool check_cocycle(const FreeGroupMap& phi, const FreeGroupMap& psi);

// Report for the mod-p chain triviality check of Prop-5.12 type: requires
// abelianisation == id mod p and xi^p == 0, then tests UMor(phi) == id mod p
// on all monomials of weight >= -weight_bound.
struct TrivialityReport {
    bool precondition_abelian = false;
    bool precondition_xi = false;
    bool trivial = false;  // meaningful only when preconditions hold
    std::string detail;

    bool preconditions() const { return precondition_abelian && precondition_xi; }
};

TrivialityReport check_umor_triviality(const FreeGroupMap& phi, i64 p, int weight_bound);

// Built-in candidates. The twist formula is the one acting on the last
// handle: g_{2g} -> g_{2g-1} g_{2g}, all other generators fixed. It fixes
// the boundary word up to conjugacy only for genus 1; for higher genus it
// conjugates only the last handle commutator, so the validator flags it.
MappingClassCandidate candidate_identity(int genus);
MappingClassCandidate candidate_dehn_twist(int genus, i64 power = 1);
// Suffix variant g_{2g} -> g_{2g} g_{2g-1}^k; fixes the boundary word on
// the nose for every genus.
MappingClassCandidate candidate_dehn_twist_strict(int genus, i64 power = 1);
// Same on the first handle: g_2 -> g_2 g_1^k.
MappingClassCandidate candidate_first_twist_strict(int genus, i64 power = 1);
// For g >= 2: g_1, g_2 fixed and g_j -> z' g_j z'^-1 for j >= 3, where
// z' = [g_1, g_2]; passes validation with identity abelianisation.
MappingClassCandidate candidate_separating(int genus);

// Candidate file: one block per line, `name: g1 -> <word>; g2 -> <word>`;
// omitted generators are fixed. Throws with a line number on parse errors.
std::vector<MappingClassCandidate> parse_candidate_file(const std::string& text, int genus);

}  // namespace confhom
