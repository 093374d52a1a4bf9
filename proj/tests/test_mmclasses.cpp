#include "doctest.h"

#include "replab/mmclasses.hpp"

using namespace replab;

namespace {

// Independent oracle: number of set partitions of {1..d} with no singleton
// block, by inclusion-exclusion over Bell numbers.
long long no_singleton_partitions(int d) {
    // Bell triangle
    std::vector<std::vector<long long>> bell = {{1}};
    for (int i = 1; i <= d; ++i) {
        std::vector<long long> row = {bell.back().back()};
        for (long long v : bell.back()) row.push_back(row.back() + v);
        bell.push_back(row);
    }
    auto B = [&](int n) { return bell[n][0]; };
    long long binom = 1, sum = 0;
    for (int j = 0; j <= d; ++j) {
        sum += (j % 2 ? -1 : 1) * binom * B(d - j);
        binom = binom * (d - j) / (j + 1);
    }
    return sum;
}

long long double_factorial(int d) {
    long long r = 1;
    for (int k = d - 1; k >= 1; k -= 2) r *= k;
    return r;
}

}  // namespace

TEST_CASE("k_of") {
    WeightedPartition p1{{{1, 2}}, {0}};
    CHECK(k_of(p1) == 0);

    WeightedPartition p2{{{1}, {2}}, {1, 1}};
    CHECK(k_of(p2) == 2);

    WeightedPartition p3{{{1}}, {1}};
    CHECK(k_of(p3) == 1);

    // canonical-form independence: permuting blocks changes nothing
    WeightedPartition p4{{{2}, {1}}, {3, 1}};
    WeightedPartition p5{{{1}, {2}}, {1, 3}};
    CHECK(k_of(p4) == k_of(p5));
    p4.canonicalize();
    CHECK(p4 == p5);

    WeightedPartition bad{{{1}, {2}}, {0, 1}};
    CHECK_THROWS_AS(k_of(bad), Error);
}

TEST_CASE("enumerate weighted partitions") {
    CHECK(enumerate_weighted_partitions(4, 0).size() == 3);
    CHECK(enumerate_weighted_partitions(4, 2).size() == 17);
    CHECK(enumerate_weighted_partitions(6, 0).size() == 15);
    CHECK(enumerate_weighted_partitions(6, 2).size() == 175);
    for (int d : {1, 3, 5}) {
        CHECK(enumerate_weighted_partitions(d, 0).empty());
        CHECK(enumerate_weighted_partitions(d, 2).empty());
    }
    // every enumerated partition is valid, canonical and has the right k
    for (int d = 1; d <= 6; ++d)
        for (int k : {0, 2}) {
            for (const auto& p : enumerate_weighted_partitions(d, k)) {
                CHECK(k_of(p) == k);
                WeightedPartition q = p;
                q.canonicalize();
                CHECK(q == p);
            }
        }
}

TEST_CASE("all-zero-weight partitions across k match the no-singleton count") {
    for (int d = 2; d <= 7; ++d) {
        long long count = 0;
        for (int k = 0; k <= d; ++k) {
            for (const auto& p : enumerate_weighted_partitions(d, k)) {
                bool all_zero = true;
                bool no_singleton = true;
                for (size_t i = 0; i < p.blocks.size(); ++i) {
                    if (p.weights[i] != 0) all_zero = false;
                    if (p.blocks[i].size() < 2) no_singleton = false;
                }
                if (all_zero) {
                    CHECK(no_singleton);
                    ++count;
                }
            }
        }
        CHECK(count == no_singleton_partitions(d));
    }
}

TEST_CASE("k=0 counts match trivial multiplicities and double factorials") {
    for (int d = 2; d <= 8; d += 2) {
        long long n0 = static_cast<long long>(enumerate_weighted_partitions(d, 0).size());
        CHECK(n0 == double_factorial(d));
        CHECK(BigInt(n0) == trivial_multiplicity(d, d).value);
    }
}

TEST_CASE("kawazumi dimensions") {
    CHECK(kawazumi_h2_dim(2) == 3);
    CHECK(kawazumi_h2_dim(4) == 20);
    CHECK(kawazumi_h2_dim(6) == 190);
    CHECK(kawazumi_h2_dim(1) == 0);
    CHECK(kawazumi_h2_dim(3) == 0);
    CHECK(kawazumi_h2_dim(5) == 0);
}

TEST_CASE("comparison table rows against a stated cup-image list") {
    // the stable boundary cup-image decomposition, stated explicitly
    Decomposition cup = make_decomposition(
        GroupFamily::sp(6), {{{1, 1}, 2},
                             {{2, 1, 1}, 1},
                             {{1, 1, 1, 1}, 2},
                             {{2, 2, 1, 1}, 1},
                             {{1, 1, 1, 1, 1, 1}, 1}});
    auto rows = comparison_table_rows(6, 4, cup);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1].d == 2);
    CHECK(rows[1].t_d == 1);
    CHECK(rows[1].hom == 2);
    CHECK(rows[1].sum == 3);
    CHECK(rows[1].kawazumi == 3);
    CHECK(rows[1].match());
    CHECK(rows[3].d == 4);
    CHECK(rows[3].t_d == 3);
    CHECK(rows[3].hom == 17);
    CHECK(rows[3].sum == 20);
    CHECK(rows[3].kawazumi == 20);
    for (const auto& r : rows) CHECK(r.match());
    CHECK(rows[0].sum == 0);
    CHECK(rows[2].sum == 0);

    // dual route: the hom column equals hom_dim applied to the character
    // rebuilt from the cup-image term list
    GroupFamily sp6 = GroupFamily::sp(6);
    FormalCharacter cup_char(sp6);
    for (const auto& [p, m] : cup.terms)
        for (const auto& [w, mm] : freudenthal_char(sp6, p).table)
            cup_char.add(w, mm * BigInt(m));
    FormalCharacter h = std_char(sp6);
    FormalCharacter pow = trivial_char(sp6);
    for (int d = 1; d <= 4; ++d) {
        pow = tensor(pow, h);
        CHECK(hom_dim(cup_char, pow) == BigInt(rows[d - 1].hom));
    }
}
