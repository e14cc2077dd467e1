#include "doctest.h"

#include <random>

#include "confhom/mcg.hpp"

using namespace confhom;

namespace {

// random product of validated catalog candidates and their inverses
FreeGroupMap random_validated(std::mt19937_64& rng, int genus, int factors) {
    std::vector<FreeGroupMap> gens;
    gens.push_back(candidate_dehn_twist_strict(genus, 1).phi);
    gens.push_back(candidate_dehn_twist_strict(genus, -1).phi);
    gens.push_back(candidate_first_twist_strict(genus, 1).phi);
    gens.push_back(candidate_first_twist_strict(genus, -1).phi);
    if (genus == 1) {
        gens.push_back(candidate_dehn_twist(genus, 1).phi);
        gens.push_back(candidate_dehn_twist(genus, -1).phi);
    }
    if (genus >= 2) {
        gens.push_back(candidate_separating(genus).phi);
        // inverse of the separating candidate: conjugate by z'^-1
        FreeGroupMap inv = FreeGroupMap::identity(2 * genus);
        Word zp = Word::commutator(Word::generator(1), Word::generator(2));
        for (int j = 3; j <= 2 * genus; ++j)
            inv.images[j - 1] = Word::generator(j).conjugated_by(zp.inverse());
        gens.push_back(inv);
    }
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    FreeGroupMap f = FreeGroupMap::identity(2 * genus);
    for (int i = 0; i < factors; ++i) f = gens[pick(rng)].compose_after(f);
    return f;
}

}  // namespace

TEST_CASE("validate catalog candidates") {
    for (int g = 1; g <= 3; ++g) {
        auto id = validate(FreeGroupMap::identity(2 * g), g);
        CHECK(id.boundary_conjugate);
        CHECK(id.boundary_strict);
        CHECK(id.omega_preserved);

        auto tw = validate(candidate_dehn_twist(g).phi, g);
        CHECK(tw.omega_preserved);
        CHECK(!tw.boundary_strict);
        // the stated twist formula conjugates only the last handle
        // commutator, so it preserves zeta_g up to conjugacy exactly when
        // there is a single handle
        CHECK(tw.boundary_conjugate == (g == 1));

        auto ts = validate(candidate_dehn_twist_strict(g).phi, g);
        CHECK(ts.boundary_strict);
        CHECK(ts.boundary_conjugate);
        CHECK(ts.omega_preserved);
        auto tf = validate(candidate_first_twist_strict(g).phi, g);
        CHECK(tf.boundary_strict);
        CHECK(tf.omega_preserved);
    }
    for (int g = 2; g <= 3; ++g) {
        auto sep = validate(candidate_separating(g).phi, g);
        CHECK(sep.boundary_conjugate);
        CHECK(sep.omega_preserved);
        // identity abelianisation
        auto a = candidate_separating(g).phi.abelianized();
        for (int r = 0; r < 2 * g; ++r)
            for (int c = 0; c < 2 * g; ++c) CHECK(a[r][c] == (r == c ? 1 : 0));
    }

    // g1 -> g1^2 breaks the boundary word
    FreeGroupMap bad = FreeGroupMap::identity(2);
    bad.images[0] = Word::generator(1, 2);
    CHECK(!validate(bad, 1).boundary_conjugate);
}

TEST_CASE("xi on catalog candidates") {
    for (int g = 1; g <= 2; ++g) {
        CHECK(xi(FreeGroupMap::identity(2 * g)).is_zero());
        for (i64 p : {3, 5}) {
            auto tw = candidate_dehn_twist(g, p);
            auto val = xi(tw.phi);
            ExteriorClass expect(2);
            expect.add({2 * g - 1, 2 * g}, p);
            for (int i = 0; i < 2 * g - 1; ++i) CHECK(val.columns[i].is_zero());
            CHECK(val.columns[2 * g - 1] == expect);
            CHECK(xi_p(tw.phi, p).is_zero());
            CHECK(!xi_p(candidate_dehn_twist(g, 1).phi, p).is_zero());
        }
    }
    CHECK(xi(candidate_separating(2).phi).is_zero());
    CHECK(xi(candidate_separating(3).phi).is_zero());
}

TEST_CASE("xi cocycle identity") {
    // identity with anything
    std::mt19937_64 rng(8080);
    for (int g = 1; g <= 2; ++g) {
        auto id = FreeGroupMap::identity(2 * g);
        auto da = candidate_dehn_twist(g).phi;
        CHECK(check_cocycle(id, da));
        CHECK(check_cocycle(da, id));
        CHECK(check_cocycle(da, da));
    }
    // random validated pairs
    for (int it = 0; it < 100; ++it) {
        int g = 1 + it % 2;
        auto phi = random_validated(rng, g, 3);
        auto psi = random_validated(rng, g, 3);
        CHECK(check_cocycle(phi, psi));
    }
}

TEST_CASE("xi equivariance under conjugation") {
    // xi(phi psi phi^-1)(e_i) = Lambda^2[phi]( xi(psi)( [phi]^-1 e_i ) ) for
    // validated phi with supplied inverse and psi with identity abelianisation
    int g = 2;
    auto phi = candidate_dehn_twist(g, 1).phi;
    auto phi_inv = candidate_dehn_twist(g, -1).phi;
    REQUIRE(phi.compose_after(phi_inv) == FreeGroupMap::identity(2 * g));
    auto psi = candidate_separating(g).phi;

    auto conj = phi.compose_after(psi).compose_after(phi_inv);
    auto lhs = xi(conj);
    auto a = phi.abelianized();
    auto ainv = phi_inv.abelianized();
    auto xpsi = xi(psi);
    for (int i = 0; i < 2 * g; ++i) {
        std::vector<i64> pre(2 * g, 0);
        for (int r = 0; r < 2 * g; ++r) pre[r] = ainv[r][i];
        ExteriorClass mid = xpsi.apply(pre);
        ExteriorClass pushed(2);
        for (const auto& [t, c] : mid.terms())
            for (int r1 = 0; r1 < 2 * g; ++r1)
                for (int r2 = 0; r2 < 2 * g; ++r2) {
                    i64 coef = c * a[r1][t[0] - 1] * a[r2][t[1] - 1];
                    if (coef != 0) pushed.add({r1 + 1, r2 + 1}, coef);
                }
        CHECK(lhs.columns[i] == pushed);
    }
}

TEST_CASE("umor triviality checks") {
    auto id_rep = check_umor_triviality(FreeGroupMap::identity(2), 3, 6);
    CHECK(id_rep.preconditions());
    CHECK(id_rep.trivial);

    // p-th twist power is chain-trivial mod p
    auto rep = check_umor_triviality(candidate_dehn_twist(1, 3).phi, 3, 8);
    CHECK(rep.preconditions());
    CHECK(rep.trivial);

    // separating candidate too
    auto sep = check_umor_triviality(candidate_separating(2).phi, 3, 6);
    CHECK(sep.preconditions());
    CHECK(sep.trivial);

    // single twist: abelianisation is not the identity mod 3
    auto bad = check_umor_triviality(candidate_dehn_twist(1, 1).phi, 3, 6);
    CHECK(!bad.precondition_abelian);
    CHECK(!bad.detail.empty());

    // twist^p to the wrong modulus: abelianisation precondition fails
    auto wrong = check_umor_triviality(candidate_dehn_twist(1, 3).phi, 5, 6);
    CHECK(!wrong.precondition_abelian);
}

TEST_CASE("triviality propagates to chain slices") {
    // UMor(phi) == id mod p implies the act() blocks reduce to the identity
    auto phi = candidate_dehn_twist(1, 3).phi;
    for (int n = 0; n <= 5; ++n) {
        ChainSlice slice(1, n, false);
        auto blocks = act(phi, slice);
        for (int b = 0; b <= slice.max_bar(); ++b) {
            auto dense = blocks[b].to_dense();
            for (int r = 0; r < blocks[b].rows(); ++r)
                for (int c = 0; c < blocks[b].cols(); ++c)
                    CHECK(fp_norm(dense[r][c] - (r == c ? 1 : 0), 3) == 0);
        }
    }
}

TEST_CASE("candidate file parsing") {
    auto cands = parse_candidate_file(
        "twist: g2 -> g1 g2\n"
        "# a comment line\n"
        "conj: g1 -> g2 g1 G2; g2 -> g2\n",
        1);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0].label == "twist");
    CHECK(cands[0].phi.images[1] == Word::parse("g1 g2", 2));
    CHECK(cands[0].phi.images[0] == Word::generator(1));  // omitted => fixed
    CHECK(cands[1].label == "conj");

    CHECK_THROWS_WITH_AS(parse_candidate_file("oops g2 -> g1\n", 1), doctest::Contains("line 1"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_candidate_file("a: g9 -> g1\n", 1), doctest::Contains("line 1"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_candidate_file("a: g1 -> gQ\n", 1), doctest::Contains("line 1"),
                         std::invalid_argument);
}

TEST_CASE("xi additive on identity-abelianisation candidates") {
    // restricted to candidates with trivial action on H, xi is additive
    int g = 2;
    auto s = candidate_separating(g).phi;
    auto t = candidate_dehn_twist(g, 3).phi;  // not Torelli but id mod 3; use integral pair below
    (void)t;
    auto ss = s.compose_after(s);
    auto lhs = xi(ss);
    for (int i = 0; i < 2 * g; ++i)
        CHECK(lhs.columns[i] == xi(s).columns[i] + xi(s).columns[i]);
}

TEST_CASE("separating candidate fixes the chains integrally") {
    // its generator images have trivial quadratic content, so the induced
    // ring map is the identity on every monomial, hence on every slice
    auto sep = candidate_separating(2).phi;
    for (int n = 0; n <= 4; ++n) {
        ChainSlice slice(2, n, false);
        auto blocks = act(sep, slice);
        for (int b = 0; b <= slice.max_bar(); ++b)
            CHECK(blocks[b].entries() == SparseMatrix::identity(slice.dim(b)).entries());
    }
}

TEST_CASE("validated products act compatibly with the differential") {
    std::mt19937_64 rng(1212);
    for (int it = 0; it < 6; ++it) {
        int g = 1 + it % 2;
        auto phi = random_validated(rng, g, 4);
        REQUIRE(validate(phi, g).passed());
        ChainSlice slice(g, 4, false);
        CHECK(act_commutes_with_differential(phi, slice));
    }
}

TEST_CASE("cube of the strict twist acts trivially on F_3 homology at genus 2") {
    auto phi = candidate_dehn_twist_strict(2, 3).phi;
    auto rep = check_umor_triviality(phi, 3, 6);
    REQUIRE(rep.preconditions());
    REQUIRE(rep.trivial);
    for (int n = 0; n <= 3; ++n) {
        ChainSlice slice(2, n, false);
        REQUIRE(act_commutes_with_differential(phi, slice));
        CHECK(induces_identity_on_homology(slice, act(phi, slice), 3));
    }
}
