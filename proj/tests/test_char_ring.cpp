#include "doctest.h"

#include <algorithm>
#include <set>

#include "replab/char_ring.hpp"

using namespace replab;

namespace {

Weight wt(std::initializer_list<int> v) { return Weight(v); }

// Number of perfect matchings of d points (independent oracle for the
// trivial multiplicity of H^{tensor d}).
long long matchings(int d) {
    if (d % 2) return 0;
    long long r = 1;
    for (int k = d - 1; k >= 1; k -= 2) r *= k;
    return r;
}

FormalCharacter tensor_power(const FormalCharacter& a, int d) {
    FormalCharacter out = trivial_char(a.group);
    for (int i = 0; i < d; ++i) out = tensor(out, a);
    return out;
}

}  // namespace

TEST_CASE("standard characters") {
    FormalCharacter s1 = std_char(GroupFamily::sp(1));
    CHECK(s1.mult(wt({1})).to_int64() == 1);
    CHECK(s1.mult(wt({-1})).to_int64() == 1);
    CHECK(s1.table.size() == 2);

    FormalCharacter s3 = std_char(GroupFamily::sp(3));
    CHECK(s3.table.size() == 6);
    CHECK(s3.dimension().to_int64() == 6);

    FormalCharacter sl2 = std_char(GroupFamily::sl(2));
    CHECK(sl2.mult(wt({1, 0})).to_int64() == 1);
    CHECK(sl2.mult(wt({-1, 0})).to_int64() == 1);
}

TEST_CASE("tensor products") {
    GroupFamily sp2 = GroupFamily::sp(2);
    FormalCharacter h = std_char(sp2);
    FormalCharacter hh = tensor(h, h);
    CHECK(hh.dimension().to_int64() == 16);
    // brute-force oracle over all 4x4 weight pairs
    FormalCharacter oracle(sp2);
    for (const auto& [wa, ma] : h.table)
        for (const auto& [wb, mb] : h.table) {
            Weight w = {wa[0] + wb[0], wa[1] + wb[1]};
            oracle.add(w, ma * mb);
        }
    CHECK(hh == oracle);
    CHECK(hh.mult(wt({0, 0})).to_int64() == 4);

    CHECK(tensor(h, trivial_char(sp2)) == h);
    CHECK_THROWS_AS(tensor(h, std_char(GroupFamily::sp(3))), GroupMismatch);

    // (k^2)^{x2} decomposes as W_0 + W_2
    GroupFamily sl2 = GroupFamily::sl(2);
    Decomposition d = decompose(tensor(std_char(sl2), std_char(sl2)));
    CHECK(d.same_terms(make_decomposition(sl2, {{{}, 1}, {{2}, 1}})));
}

TEST_CASE("exterior and symmetric powers") {
    GroupFamily sp3 = GroupFamily::sp(3);
    FormalCharacter w2 = wedge_power(std_char(sp3), 2);
    CHECK(w2.dimension().to_int64() == 15);
    CHECK(w2.mult(wt({0, 0, 0})).to_int64() == 3);
    // brute-force oracle over unordered basis pairs
    std::vector<Weight> basis;
    for (int i = 0; i < 3; ++i) {
        Weight a(3, 0), b(3, 0);
        a[i] = 1;
        b[i] = -1;
        basis.push_back(a);
        basis.push_back(b);
    }
    FormalCharacter oracle(sp3);
    for (size_t p = 0; p < 6; ++p)
        for (size_t q = p + 1; q < 6; ++q) {
            Weight w(3);
            for (int i = 0; i < 3; ++i) w[i] = basis[p][i] + basis[q][i];
            oracle.add(w, BigInt(1));
        }
    CHECK(w2 == oracle);

    CHECK(wedge_power(std_char(sp3), 0) == trivial_char(sp3));

    GroupFamily sl2 = GroupFamily::sl(2);
    FormalCharacter s2 = sym_power(std_char(sl2), 2);
    CHECK(s2.table.size() == 3);
    CHECK(s2.mult(wt({2, 0})).to_int64() == 1);
    CHECK(s2.mult(wt({0, 0})).to_int64() == 1);
    CHECK(s2.mult(wt({-2, 0})).to_int64() == 1);

    FormalCharacter virt(sp3);
    virt.add(wt({1, 0, 0}), BigInt(-1));
    CHECK_THROWS_AS(wedge_power(virt, 2), NonGenuineCharacter);
}

TEST_CASE("duals") {
    GroupFamily sp3 = GroupFamily::sp(3);
    CHECK(dual(std_char(sp3)) == std_char(sp3));

    GroupFamily sl3 = GroupFamily::sl(3);
    FormalCharacter s = std_char(sl3);
    CHECK(dual(s).table != s.table);
    CHECK(dual(dual(s)) == s);
    // dual of the standard SL_3 representation has the weights of wedge^2
    CHECK(dual(s) == wedge_power(s, 2));
}

TEST_CASE("decompose: paper lists for Sp") {
    GroupFamily sp6 = GroupFamily::sp(6);
    FormalCharacter w3 = wedge_power(std_char(sp6), 3);
    Decomposition dw2w3 = decompose(wedge_power(w3, 2));
    CHECK(dw2w3.same_terms(make_decomposition(
        sp6, {{{}, 2}, {{1, 1}, 3}, {{2, 2}, 1}, {{2, 1, 1}, 1}, {{1, 1, 1, 1}, 2},
              {{2, 2, 1, 1}, 1}, {{1, 1, 1, 1, 1, 1}, 1}})));

    // wedge^2((wedge^3 H)/H): subtract the embedded copy of H first
    FormalCharacter quot = w3;
    for (const auto& [w, m] : std_char(sp6).table) quot.add(w, BigInt(-1) * m);
    Decomposition dq = decompose(wedge_power(quot, 2));
    CHECK(dq.same_terms(make_decomposition(
        sp6, {{{}, 1}, {{1, 1}, 1}, {{2, 2}, 1}, {{1, 1, 1, 1}, 1}, {{2, 2, 1, 1}, 1},
              {{1, 1, 1, 1, 1, 1}, 1}})));

    // Sym^2(wedge^2 H) at g >= 4
    GroupFamily sp4 = GroupFamily::sp(4);
    Decomposition ds = decompose(sym_power(wedge_power(std_char(sp4), 2), 2));
    CHECK(ds.same_terms(make_decomposition(
        sp4, {{{}, 2}, {{1, 1}, 2}, {{2, 2}, 1}, {{1, 1, 1, 1}, 1}})));
}

TEST_CASE("decompose: SL examples including unstable ranks") {
    GroupFamily sl3 = GroupFamily::sl(3);
    Decomposition d3 = decompose(tensor_power(std_char(sl3), 3));
    CHECK(d3.same_terms(make_decomposition(sl3, {{{}, 1}, {{2, 1}, 2}, {{3}, 1}})));

    GroupFamily sl2 = GroupFamily::sl(2);
    Decomposition d2 = decompose(tensor_power(std_char(sl2), 2));
    CHECK(d2.same_terms(make_decomposition(sl2, {{{}, 1}, {{2}, 1}})));
}

TEST_CASE("decompose rejects non-representations") {
    GroupFamily sp2 = GroupFamily::sp(2);
    FormalCharacter bad = std_char(sp2);
    bad.add(wt({1, 0}), BigInt(-2));  // multiplicity -1 at the top weight
    CHECK_THROWS_AS(decompose(bad), NotARepresentation);
}

TEST_CASE("peeling round-trip rebuilds the character") {
    GroupFamily sp3 = GroupFamily::sp(3);
    FormalCharacter chi = tensor(wedge_power(std_char(sp3), 2), std_char(sp3));
    Decomposition dec = decompose(chi);
    FormalCharacter rebuilt(sp3);
    for (const auto& [p, m] : dec.terms)
        for (const auto& [w, mm] : freudenthal_char(sp3, p).table)
            rebuilt.add(w, mm * BigInt(m));
    CHECK(rebuilt == chi);
}

TEST_CASE("hom_dim") {
    GroupFamily sp3 = GroupFamily::sp(3);
    CHECK(hom_dim(trivial_char(sp3), trivial_char(sp3)).to_int64() == 1);
    FormalCharacter h = std_char(sp3);
    CHECK(hom_dim(h, tensor(h, tensor(h, h))).to_int64() == 3);
    CHECK_THROWS_AS(hom_dim(h, std_char(GroupFamily::sp(4))), GroupMismatch);

    // SL: Hom(k^3, k^3) is one-dimensional, Hom(k^3, wedge^2 k^3) is zero
    GroupFamily sl3 = GroupFamily::sl(3);
    FormalCharacter s = std_char(sl3);
    CHECK(hom_dim(s, s).to_int64() == 1);
    CHECK(hom_dim(s, wedge_power(s, 2)).to_int64() == 0);
    CHECK(hom_dim(tensor(s, s), tensor(s, s)).to_int64() == 2);
}

TEST_CASE("trivial multiplicity of tensor powers") {
    CHECK(trivial_multiplicity(2, 4).value.to_int64() == 1);
    CHECK(trivial_multiplicity(4, 4).value.to_int64() == 3);
    CHECK(trivial_multiplicity(6, 6).value.to_int64() == 15);
    CHECK(trivial_multiplicity(1, 4).value.is_zero());
    CHECK(trivial_multiplicity(3, 4).value.is_zero());
    CHECK(trivial_multiplicity(5, 6).value.is_zero());
    // perfect-matching oracle
    for (int d = 2; d <= 6; d += 2)
        CHECK(trivial_multiplicity(d, d).value.to_int64() == matchings(d));
    CHECK_FALSE(trivial_multiplicity(4, 3).stable);
}

TEST_CASE("stable decompositions are independent of the rank") {
    // H^{x d} for Sp at ranks r and r+1, r >= d
    for (int d = 2; d <= 4; ++d) {
        Decomposition a = decompose(tensor_power(std_char(GroupFamily::sp(d)), d));
        Decomposition b = decompose(tensor_power(std_char(GroupFamily::sp(d + 1)), d));
        REQUIRE(a.terms.size() == b.terms.size());
        for (size_t i = 0; i < a.terms.size(); ++i) CHECK(a.terms[i] == b.terms[i]);
    }
    // wedge^2 wedge^2 for SL at ranks 5 and 6 (degree 4)
    Decomposition a = decompose(wedge_power(wedge_power(std_char(GroupFamily::sl(5)), 2), 2));
    Decomposition b = decompose(wedge_power(wedge_power(std_char(GroupFamily::sl(6)), 2), 2));
    REQUIRE(a.terms.size() == b.terms.size());
    for (size_t i = 0; i < a.terms.size(); ++i) CHECK(a.terms[i] == b.terms[i]);
}

TEST_CASE("wedge powers of the standard Sp representation telescope") {
    for (int g = 3; g <= 5; ++g) {
        GroupFamily sp = GroupFamily::sp(g);
        for (int k = 1; k <= g; ++k) {
            Decomposition d = decompose(wedge_power(std_char(sp), k));
            std::vector<std::pair<Partition, long long>> expect;
            for (int j = k; j >= 0; j -= 2) expect.push_back({Partition(j, 1), 1});
            CHECK(d.same_terms(make_decomposition(sp, expect)));
        }
    }
}

TEST_CASE("branching from Sp_2g to Sp_2(g-1)") {
    Decomposition b1 = branch_sp({1}, 3);
    CHECK(b1.same_terms(make_decomposition(GroupFamily::sp(2), {{{}, 2}, {{1}, 1}})));

    Decomposition b11 = branch_sp({1, 1}, 3);
    CHECK(b11.same_terms(make_decomposition(GroupFamily::sp(2), {{{}, 1}, {{1}, 2}, {{1, 1}, 1}})));

    Decomposition b0 = branch_sp({}, 5);
    CHECK(b0.same_terms(make_decomposition(GroupFamily::sp(4), {{{}, 1}})));

    CHECK_THROWS_AS(branch_sp({1, 1, 1}, 2), PartitionTooLong);

    // factor set matches the interval rule
    for (const Partition& lam : std::vector<Partition>{{1}, {2}, {1, 1}, {2, 1}, {2, 2}, {3, 1}}) {
        auto rule = branch_interval_rule(lam, 5);
        auto got = branch_sp(lam, 5).factor_set();
        std::sort(got.begin(), got.end());
        CHECK(got == rule);
    }

    // restriction contains lambda itself and a factor of degree d-1
    for (const Partition& lam : std::vector<Partition>{{1}, {2, 1}, {1, 1, 1}}) {
        Decomposition br = branch_sp(lam, 5);
        CHECK(br.mult(lam) >= 1);
        bool has_lower = false;
        for (const auto& [p, m] : br.terms)
            if (degree(p) == degree(lam) - 1) has_lower = true;
        CHECK(has_lower);
    }
}
