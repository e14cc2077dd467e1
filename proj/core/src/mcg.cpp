#include "confhom/mcg.hpp"

#include <sstream>

namespace confhom {

ValidationReport validate(const FreeGroupMap& phi, int genus) {
    if (phi.source_rank != 2 * genus || phi.target_rank != 2 * genus)
        throw std::invalid_argument("validate: endomorphism of rank 2g expected");
    ValidationReport rep;
    Word zeta = Word::boundary_word(genus);
    Word image = phi.apply(zeta);
    rep.boundary_strict = image == zeta;
    rep.boundary_conjugate = image.conjugate_as_cyclic_word(zeta);

    // Lambda^2 of the abelianised matrix must fix omega
    auto a = phi.abelianized();
    ExteriorClass omega(2), image_omega(2);
    for (int h = 0; h < genus; ++h) {
        int c1 = 2 * h, c2 = 2 * h + 1;
        omega.add({c1 + 1, c2 + 1}, 1);
        for (int r1 = 0; r1 < 2 * genus; ++r1)
            for (int r2 = 0; r2 < 2 * genus; ++r2) {
                i64 c = a[r1][c1] * a[r2][c2];
                if (c != 0) image_omega.add({r1 + 1, r2 + 1}, c);
            }
    }
    rep.omega_preserved = image_omega == omega;
    return rep;
}

bool XiValue::is_zero() const {
    for (const auto& c : columns)
        if (!c.is_zero()) return false;
    return true;
}

XiValue XiValue::reduced_mod(i64 p) const {
    XiValue out;
    for (const auto& c : columns) out.columns.push_back(c.reduced_mod(p));
    return out;
}

ExteriorClass XiValue::apply(const std::vector<i64>& a) const {
    if (a.size() != columns.size()) throw std::invalid_argument("XiValue::apply: rank mismatch");
    ExteriorClass out(2);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) out = out + columns[i].scaled(a[i]);
    return out;
}

XiValue xi(const FreeGroupMap& phi) {
    XiValue out;
    for (const auto& w : phi.images) out.columns.push_back(content2(w, phi.target_rank));
    return out;
}

XiValue xi_p(const FreeGroupMap& phi, i64 p) { return xi(phi).reduced_mod(p); }

bool check_cocycle(const FreeGroupMap& phi, const FreeGroupMap& psi) {
    if (phi.source_rank != psi.source_rank || phi.target_rank != psi.target_rank ||
        phi.source_rank != phi.target_rank)
        throw std::invalid_argument("check_cocycle: equal-rank endomorphisms expected");
    int rank = phi.source_rank;
    XiValue xphi = xi(phi), xpsi = xi(psi);
    auto aphi = phi.abelianized();
    for (int i = 0; i < rank; ++i) {
        // left side: c2(phi(psi(g_i)))
        ExteriorClass lhs = content2(phi.apply(psi.images[i]), rank);
        // phi *_H xi(psi)(g_i): push the 2-form forward along the
        // abelianisation of phi
        ExteriorClass pushed(2);
        for (const auto& [t, c] : xpsi.columns[i].terms()) {
            for (int r1 = 0; r1 < rank; ++r1)
                for (int r2 = 0; r2 < rank; ++r2) {
                    i64 coef = c * aphi[r1][t[0] - 1] * aphi[r2][t[1] - 1];
                    if (coef != 0) pushed.add({r1 + 1, r2 + 1}, coef);
                }
        }
        ExteriorClass rhs = pushed + xphi.apply(abelianize(psi.images[i], rank));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

TrivialityReport check_umor_triviality(const FreeGroupMap& phi, i64 p, int weight_bound) {
    if (phi.source_rank != phi.target_rank)
        throw std::invalid_argument("check_umor_triviality: endomorphism expected");
    int rank = phi.source_rank;
    TrivialityReport rep;

    auto a = phi.abelianized();
    rep.precondition_abelian = true;
    for (int r = 0; r < rank && rep.precondition_abelian; ++r)
        for (int c = 0; c < rank; ++c)
            if (fp_norm(a[r][c] - (r == c ? 1 : 0), p) != 0) {
                rep.precondition_abelian = false;
                std::ostringstream os;
                os << "abelianisation is not the identity mod " << p << " at entry (" << r + 1
                   << "," << c + 1 << ")";
                rep.detail = os.str();
                break;
            }
    rep.precondition_xi = xi_p(phi, p).is_zero();
    if (!rep.precondition_xi && rep.detail.empty()) rep.detail = "xi^p(phi) is nonzero";
    if (!rep.preconditions()) return rep;

    UMorRingMap u(phi);
    rep.trivial = true;
    for (int w = 0; w <= weight_bound && rep.trivial; ++w) {
        for (const auto& v : umor_monomials_of_weight(rank, w)) {
            UMorElement delta = u.apply_monomial(v) - UMorElement::monomial(v);
            if (!delta.reduced_mod(p).is_zero()) {
                rep.trivial = false;
                rep.detail = "UMor(phi) moves e_" + UMorElement::monomial(v).str() + " mod " +
                             std::to_string(p);
                break;
            }
        }
    }
    return rep;
}

MappingClassCandidate candidate_identity(int genus) {
    return {FreeGroupMap::identity(2 * genus), "identity"};
}

MappingClassCandidate candidate_dehn_twist(int genus, i64 power) {
    FreeGroupMap f = FreeGroupMap::identity(2 * genus);
    // twist about a curve parallel to g_{2g}: g_{2g} -> g_{2g-1}^k g_{2g}
    f.images[2 * genus - 1] =
        Word::generator(2 * genus - 1, power) * Word::generator(2 * genus);
    std::ostringstream os;
    os << "dehn_twist";
    if (power != 1) os << "^" << power;
    return {std::move(f), os.str()};
}

MappingClassCandidate candidate_dehn_twist_strict(int genus, i64 power) {
    FreeGroupMap f = FreeGroupMap::identity(2 * genus);
    f.images[2 * genus - 1] =
        Word::generator(2 * genus) * Word::generator(2 * genus - 1, power);
    std::ostringstream os;
    os << "dehn_twist_strict";
    if (power != 1) os << "^" << power;
    return {std::move(f), os.str()};
}

MappingClassCandidate candidate_first_twist_strict(int genus, i64 power) {
    FreeGroupMap f = FreeGroupMap::identity(2 * genus);
    f.images[1] = Word::generator(2) * Word::generator(1, power);
    std::ostringstream os;
    os << "first_twist_strict";
    if (power != 1) os << "^" << power;
    return {std::move(f), os.str()};
}

MappingClassCandidate candidate_separating(int genus) {
    if (genus < 2)
        throw std::invalid_argument("candidate_separating: needs genus >= 2");
    FreeGroupMap f = FreeGroupMap::identity(2 * genus);
    Word zp = Word::commutator(Word::generator(1), Word::generator(2));
    for (int j = 3; j <= 2 * genus; ++j)
        f.images[j - 1] = Word::generator(j).conjugated_by(zp);
    return {std::move(f), "separating_candidate"};
}

std::vector<MappingClassCandidate> parse_candidate_file(const std::string& text, int genus) {
    std::vector<MappingClassCandidate> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("candidate file line " + std::to_string(lineno) +
                                        ": missing `name:`");
        MappingClassCandidate cand{FreeGroupMap::identity(2 * genus), {}};
        cand.label = line.substr(0, colon);
        // trim
        cand.label.erase(0, cand.label.find_first_not_of(" \t"));
        cand.label.erase(cand.label.find_last_not_of(" \t") + 1);

        std::string rest = line.substr(colon + 1);
        std::istringstream parts(rest);
        std::string assignment;
        while (std::getline(parts, assignment, ';')) {
            if (assignment.find_first_not_of(" \t\r") == std::string::npos) continue;
            auto arrow = assignment.find("->");
            if (arrow == std::string::npos)
                throw std::invalid_argument("candidate file line " + std::to_string(lineno) +
                                            ": expected `g<i> -> <word>`");
            std::string lhs = assignment.substr(0, arrow);
            std::string rhs = assignment.substr(arrow + 2);
            lhs.erase(0, lhs.find_first_not_of(" \t"));
            lhs.erase(lhs.find_last_not_of(" \t") + 1);
            if (lhs.size() < 2 || lhs[0] != 'g')
                throw std::invalid_argument("candidate file line " + std::to_string(lineno) +
                                            ": generator `g<i>` expected on the left");
            int gen = 0;
            try {
                gen = std::stoi(lhs.substr(1));
            } catch (const std::exception&) {
                throw std::invalid_argument("candidate file line " + std::to_string(lineno) +
                                            ": bad generator index");
            }
            if (gen < 1 || gen > 2 * genus)
                throw std::invalid_argument("candidate file line " + std::to_string(lineno) +
                                            ": generator out of range");
            try {
                cand.phi.images[gen - 1] = Word::parse(rhs, 2 * genus);
            } catch (const std::exception& e) {
                throw std::invalid_argument("candidate file line " + std::to_string(lineno) + ": " +
                                            e.what());
            }
        }
        out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace confhom
