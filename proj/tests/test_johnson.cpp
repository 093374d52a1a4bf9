#include "doctest.h"

#include <random>

#include "replab/johnson.hpp"

using namespace replab;

namespace {

int A(int i) { return SymplecticSpace::a(i); }
int B(int i) { return SymplecticSpace::b(i); }

MultiVector wedge3(int g, int p, int q, int r) {
    return wedge_vectors({h_basis(g, p), h_basis(g, q), h_basis(g, r)});
}

// Deterministic random product of elementary symplectic generators.
SpMatrix random_symplectic(int g, std::mt19937& rng, int length = 8) {
    auto gens = all_generators(g);
    SpMatrix m = SpMatrix::identity(g);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    for (int i = 0; i < length; ++i) m = m * gens[pick(rng)].mat;
    return m;
}

}  // namespace

TEST_CASE("tau1 closed forms") {
    int g = 4;
    // bounding pair with full complement: a1 ^ omega
    std::vector<std::pair<MultiVector, MultiVector>> v;
    for (int i = 2; i <= g; ++i) v.push_back({h_basis(g, A(i)), h_basis(g, B(i))});
    GeneratorSpec bp = GeneratorSpec::bounding_pair(g, h_basis(g, A(1)), v);
    CHECK(tau1(bp).value == iota(h_basis(g, A(1))));

    // simply intersecting pair
    GeneratorSpec f = GeneratorSpec::sip(g, h_basis(g, A(1)), h_basis(g, A(2)), h_basis(g, A(3)));
    CHECK(tau1(f).value == wedge3(g, A(1), A(2), A(3)));

    // separating twists vanish
    GeneratorSpec tz = GeneratorSpec::sep_twist_genus(g, 2);
    CHECK(tau1(tz).value.is_zero());

    // invalid bounding pair: x not orthogonal to the list
    CHECK_THROWS_AS(GeneratorSpec::bounding_pair(
                        g, h_basis(g, B(2)),
                        {{h_basis(g, A(2)), h_basis(g, B(2))}}),
                    InvalidSpec);
}

TEST_CASE("tau1 as a map on H") {
    int g = 3;
    std::vector<std::pair<MultiVector, MultiVector>> v = {
        {h_basis(g, A(2)), h_basis(g, B(2))}, {h_basis(g, A(3)), h_basis(g, B(3))}};
    GeneratorSpec bp = GeneratorSpec::bounding_pair(g, h_basis(g, A(1)), v);
    // integral dual to [x] = a1: omega(h, a1) = 1 forces h = -b1
    MultiVector dual = Rat(-1) * h_basis(g, B(1));
    Tau1Map m = tau1_as_map(bp, dual);

    // (i) u in U goes to -[x] ^ u
    CHECK(m.apply(h_basis(g, A(2))) ==
          Rat(-1) * wedge_vectors({h_basis(g, A(1)), h_basis(g, A(2))}));
    // (ii) x itself dies: -[x]^[x] = 0
    CHECK(m.apply(h_basis(g, A(1))).is_zero());
    // (iii) the integral dual goes to -omega_V
    MultiVector omega_v = wedge_vectors({h_basis(g, A(2)), h_basis(g, B(2))}) +
                          wedge_vectors({h_basis(g, A(3)), h_basis(g, B(3))});
    CHECK(m.apply(dual) == Rat(-1) * omega_v);

    CHECK_THROWS_AS(tau1_as_map(bp, h_basis(g, A(1))), InvalidSpec);
}

TEST_CASE("tau2 of separating twists") {
    int g = 2;
    GeneratorSpec t1 = GeneratorSpec::sep_twist_genus(g, 1);
    JohnsonValue v1 = tau2_septwist(t1);
    CHECK(v1.level == 2);
    // class of -(a1^b1)(x)(a1^b1): build the raw representative and reduce
    const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
    int32_t a1b1[2] = {A(1), B(1)};
    int32_t w = w2.rank_of(a1b1);
    MultiVector raw(shape_quot_tau2(), g);
    raw.add((A(1) * 2 * g + B(1)) * w2.dim + w, Rat(-1));
    raw.add((B(1) * 2 * g + A(1)) * w2.dim + w, Rat(1));
    CHECK(v1.value == reduce_quot(raw));
    CHECK(!v1.value.is_zero());

    // empty support gives zero
    GeneratorSpec t0 = GeneratorSpec::sep_twist_genus(g, 0);
    CHECK(tau2_septwist(t0).value.is_zero());

    // the full-genus twist (the boundary curve) gives the class of
    // -omega (x) omega, nonzero in the quotient
    GeneratorSpec tb = GeneratorSpec::sep_twist_genus(g, g);
    CHECK(!tau2_septwist(tb).value.is_zero());
}

TEST_CASE("bracket vanishing") {
    int g = 3;
    // tau1 values land in the kernel of the bracket map
    CHECK(check_bracket(tau1(GeneratorSpec::sip(g, h_basis(g, A(1)), h_basis(g, A(2)),
                                                h_basis(g, A(3))))));
    std::vector<std::pair<MultiVector, MultiVector>> v = {
        {h_basis(g, A(2)), h_basis(g, B(2))}};
    CHECK(check_bracket(tau1(GeneratorSpec::bounding_pair(g, h_basis(g, A(1)), v))));

    // tau2 values land in the kernel of the bracket map
    CHECK(check_bracket(tau2_septwist(GeneratorSpec::sep_twist_genus(g, 1))));
    CHECK(check_bracket(tau2_septwist(GeneratorSpec::sep_twist_genus(g, 3))));

    // a generic element of H (x) wedge^2 H is not in the kernel
    const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
    int32_t a1a2[2] = {A(1), A(2)};
    MultiVector generic(shape_h_wedge2(), g);
    generic.add(A(1) * w2.dim + w2.rank_of(a1a2), Rat(1));
    CHECK_FALSE(check_bracket_h_wedge2(generic));
}

TEST_CASE("randomized bracket vanishing") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        int g = 3 + trial % 3;
        SpMatrix m = random_symplectic(g, rng);
        REQUIRE(m.is_symplectic());
        int h = 1 + trial % (g - 1);
        std::vector<std::pair<MultiVector, MultiVector>> v;
        for (int i = 1; i <= h; ++i)
            v.push_back({apply_matrix(m, h_basis(g, A(i)), false),
                         apply_matrix(m, h_basis(g, B(i)), false)});
        if (trial % 3 == 0) {
            GeneratorSpec bp = GeneratorSpec::bounding_pair(
                g, apply_matrix(m, h_basis(g, A(h + 1)), false), v);
            CHECK(check_bracket(tau1(bp)));
        } else if (trial % 3 == 1) {
            GeneratorSpec f = GeneratorSpec::sip(g, apply_matrix(m, h_basis(g, A(1)), false),
                                                 apply_matrix(m, h_basis(g, A(2)), false),
                                                 apply_matrix(m, h_basis(g, A(3)), false));
            CHECK(check_bracket(tau1(f)));
        } else {
            GeneratorSpec tz = GeneratorSpec::sep_twist(g, v);
            CHECK(check_bracket(tau2_septwist(tz)));
        }
    }
}

TEST_CASE("tau1 is equivariant on homology data") {
    int g = 3;
    std::mt19937 rng(77);
    std::vector<std::pair<MultiVector, MultiVector>> v = {
        {h_basis(g, A(2)), h_basis(g, B(2))}};
    GeneratorSpec bp = GeneratorSpec::bounding_pair(g, h_basis(g, A(1)), v);
    GeneratorSpec f = GeneratorSpec::sip(g, h_basis(g, A(1)), h_basis(g, A(2)),
                                         h_basis(g, B(3)));
    for (int trial = 0; trial < 10; ++trial) {
        SpMatrix m = random_symplectic(g, rng, 5);
        CHECK(tau1(bp.transformed(m)).value == apply_matrix(m, tau1(bp).value, false));
        CHECK(tau1(f.transformed(m)).value == apply_matrix(m, tau1(f).value, false));
    }
    for (const auto& gen : all_generators(g)) {
        CHECK(tau1(bp.transformed(gen.mat)).value ==
              apply_generator(gen, tau1(bp).value));
    }
}

TEST_CASE("image spans of tau1 and tau2") {
    CHECK(tau1_image_span(3) == 20);   // C(6,3)
    CHECK(tau1_image_span(4) == 56);   // C(8,3)
    CHECK(tau2_image_span(4) == 336);  // dim Sym^2 wedge^2 - dim wedge^4 = 406 - 70
    CHECK_THROWS_AS(tau1_image_span(2), GenusTooSmall);
    CHECK_THROWS_AS(tau2_image_span(3), GenusTooSmall);
}

TEST_CASE("the tau2 span is stable under group generators") {
    int g = 4;
    std::vector<MultiVector> seeds;
    for (int h = 1; h <= g; ++h)
        seeds.push_back(tau2_septwist(GeneratorSpec::sep_twist_genus(g, h)).value);
    SpSubspace span = sp_span_closure(seeds);
    CHECK(span.dim() == 336);
    auto gens = all_generators(g);
    for (size_t i = 0; i < gens.size(); i += 5) CHECK(span.stable_under(gens[i].mat));
}

TEST_CASE("abelian cycles") {
    int g = 6;
    GeneratorSpec f = detail::sip_a(g, 1, 2, 3);
    GeneratorSpec h = detail::sip_a(g, 1, 2, 4);
    CHECK(abelian_cycle(f, h) ==
          wedge_pair(wedge3(g, A(1), A(2), A(3)), wedge3(g, A(1), A(2), A(4))));
    CHECK(abelian_cycle(f, f).is_zero());

    GeneratorSpec bp = detail::bp_omega(g, 1);
    CHECK(abelian_cycle(f, bp) ==
          wedge_pair(wedge3(g, A(1), A(2), A(3)), iota(h_basis(g, A(1)))));
}

TEST_CASE("morita core values") {
    CHECK(morita_core(0) == 0);
    CHECK(morita_core(1) == 0);
    CHECK(morita_core(3) == 24);
    CHECK_THROWS_AS(morita_core(-1), Error);
}
