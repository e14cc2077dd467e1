#include "doctest.h"

#include <random>

#include "confhom/freegroup.hpp"

using namespace confhom;

namespace {

Word random_word(std::mt19937_64& rng, int rank, int len) {
    std::uniform_int_distribution<int> gen(1, rank), sgn(0, 1);
    std::vector<Word::Run> runs;
    for (int i = 0; i < len; ++i) runs.push_back({gen(rng), sgn(rng) ? 1 : -1});
    return Word::from_runs(std::move(runs));
}

}  // namespace

TEST_CASE("free reduction") {
    auto w1 = Word::from_runs({{1, 1}, {1, -1}});
    CHECK(w1.is_identity());

    auto w2 = Word::from_runs({{1, 1}, {2, 1}, {2, -1}, {1, 1}});
    CHECK(w2 == Word::generator(1, 2));

    auto w3 = Word::from_runs({{1, 1}, {2, 1}, {1, -1}});
    CHECK(w3 == Word::from_runs({{1, 1}, {2, 1}, {1, -1}}));  // already reduced

    // cascading cancellation across several runs
    auto w4 = Word::from_runs({{1, 1}, {2, 1}, {2, -1}, {1, -1}, {3, 1}});
    CHECK(w4 == Word::generator(3));

    CHECK_THROWS(Word::generator(0));
}

TEST_CASE("group operations") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 50; ++it) {
        Word a = random_word(rng, 4, 12), b = random_word(rng, 4, 12);
        CHECK((a * b) * b.inverse() == a);
        CHECK((a * a.inverse()).is_identity());
        CHECK(a.pow(3) == a * a * a);
        CHECK(a.pow(-2) == (a * a).inverse());
    }
}

TEST_CASE("word grammar") {
    CHECK(Word::parse("g1 g2 G1 G2", 2) == Word::boundary_word(1));
    CHECK(Word::parse("g1^3", 2) == Word::generator(1, 3));
    CHECK(Word::parse("g2^-2 g1", 2) == Word::from_runs({{2, -2}, {1, 1}}));
    CHECK(Word::parse("1", 2).is_identity());
    CHECK(Word::parse("", 4).is_identity());
    CHECK_THROWS(Word::parse("g3", 2));
    CHECK_THROWS(Word::parse("x1", 2));
    CHECK_THROWS(Word::parse("g1^", 2));

    std::mt19937_64 rng(5);
    for (int it = 0; it < 30; ++it) {
        Word w = random_word(rng, 6, 15);
        CHECK(Word::parse(w.str(), 6) == w);
    }
}

TEST_CASE("apply homomorphisms") {
    auto id = FreeGroupMap::identity(3);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 20; ++it) {
        Word w = random_word(rng, 3, 10);
        CHECK(id.apply(w) == w);
    }

    // pinch p: g1 -> g1 g2 applied to g1^-1 gives G2 G1
    FreeGroupMap pinch{1, 2, {Word::parse("g1 g2", 2)}};
    CHECK(pinch.apply(Word::generator(1, -1)) == Word::parse("G2 G1", 2));

    // D_a: g2 -> g1 g2 (genus 1) applied to the boundary word zeta_1
    FreeGroupMap da{2, 2, {Word::generator(1), Word::parse("g1 g2", 2)}};
    Word z = Word::boundary_word(1);
    CHECK(da.apply(z) == z.conjugated_by(Word::generator(1)));

    // homomorphism property on random words
    for (int it = 0; it < 30; ++it) {
        Word a = random_word(rng, 2, 8), b = random_word(rng, 2, 8);
        CHECK(da.apply(a * b) == da.apply(a) * da.apply(b));
    }

    CHECK_THROWS(da.apply(Word::generator(3)));
}

TEST_CASE("cyclic conjugacy") {
    Word z = Word::boundary_word(2);
    CHECK(z.conjugate_as_cyclic_word(z.conjugated_by(Word::parse("g1 g3 G2", 4))));
    CHECK(!z.conjugate_as_cyclic_word(Word::generator(1)));
    std::mt19937_64 rng(11);
    for (int it = 0; it < 25; ++it) {
        Word w = random_word(rng, 4, 9), u = random_word(rng, 4, 6);
        CHECK(w.conjugate_as_cyclic_word(w.conjugated_by(u)));
    }
}

TEST_CASE("abelianize") {
    CHECK(abelianize(Word::parse("g1 g2 G1 G2", 2), 2) == std::vector<i64>{0, 0});
    CHECK(abelianize(Word::generator(1, 3), 2) == std::vector<i64>{3, 0});
    for (int g = 1; g <= 3; ++g) {
        auto v = abelianize(Word::boundary_word(g), 2 * g);
        CHECK(std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; }));
    }
}

TEST_CASE("content2 on stated examples") {
    for (int i = 1; i <= 4; ++i) CHECK(content2(Word::generator(i), 4).is_zero());

    ExteriorClass e12(2);
    e12.add({1, 2}, 1);
    CHECK(content2(Word::parse("g1 g2", 2), 2) == e12);

    // c2(zeta_g) = 2 omega
    for (int g = 1; g <= 3; ++g) {
        ExteriorClass two_omega(2);
        for (int i = 0; i < g; ++i) two_omega.add({2 * i + 1, 2 * i + 2}, 2);
        CHECK(content2(Word::boundary_word(g), 2 * g) == two_omega);
    }
}

TEST_CASE("content2 cocycle, inversion and conjugation invariance") {
    std::mt19937_64 rng(31337);
    for (int it = 0; it < 200; ++it) {
        int rank = 2 + 2 * (it % 3);
        Word a = random_word(rng, rank, 10), b = random_word(rng, rank, 10);
        auto lhs = content2(a * b, rank);
        auto rhs = content2(a, rank) + content2(b, rank) +
                   abelianize_class(a, rank).wedge(abelianize_class(b, rank));
        CHECK(lhs == rhs);
        CHECK(content2(a.inverse(), rank) == -content2(a, rank));
    }
    // conjugation invariance on commutator words
    for (int it = 0; it < 50; ++it) {
        Word a = random_word(rng, 4, 6), b = random_word(rng, 4, 6), u = random_word(rng, 4, 8);
        Word w = Word::commutator(a, b);
        CHECK(content2(w.conjugated_by(u), 4) == content2(w, 4));
    }
}

TEST_CASE("content components") {
    std::mt19937_64 rng(4242);
    for (int it = 0; it < 1000; ++it) {
        int rank = 2 * (1 + it % 3);
        Word w = random_word(rng, rank, 1 + it % 30);
        // c0 = 1
        ExteriorClass one(0);
        one.add({}, 1);
        CHECK(content_component(w, rank, 0) == one);
        // c1 = abelianisation
        CHECK(content_component(w, rank, 1) == abelianize_class(w, rank));
        // c2 agrees with the one-pass scan
        CHECK(content_component(w, rank, 2) == content2(w, rank));
    }
}

TEST_CASE("exterior classes") {
    ExteriorClass a(2);
    a.add({2, 1}, 1);  // sorts with sign
    ExteriorClass b(2);
    b.add({1, 2}, -1);
    CHECK(a == b);

    ExteriorClass rep(2);
    rep.add({1, 1}, 5);
    CHECK(rep.is_zero());

    ExteriorClass x(1), y(1);
    x.add({1}, 1);
    y.add({2}, 1);
    CHECK(x.wedge(y) == -(y.wedge(x)));
    CHECK(x.wedge(x).is_zero());
}
