#include "doctest.h"

#include <set>

#include "replab/free_lie.hpp"

using namespace replab;

namespace {

Word w(std::initializer_list<int> v) { return Word(v); }

long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_CASE("witt dimensions") {
    for (int n = 1; n <= 6; ++n) CHECK(witt_dim(n, 1) == n);
    CHECK(witt_dim(4, 2) == 6);  // = C(4,2)
    // brute-force Lyndon count over {1,2}
    CHECK(witt_dim(2, 3) == 2);
    CHECK(lyndon_words(2, 3).size() == 2);
    for (int n = 2; n <= 6; ++n)
        for (int d = 1; d <= 7; ++d)
            CHECK(lyndon_words(n, d).size() == static_cast<size_t>(witt_dim(n, d)));
    // lyndon_basis validates its own size against the Witt dimension
    for (int n = 2; n <= 6; ++n)
        for (int d = 1; d <= (n <= 4 ? 7 : 5); ++d)
            CHECK(lyndon_basis(n, d).size() == static_cast<size_t>(witt_dim(n, d)));
    CHECK_THROWS_AS(witt_dim(24, 20), ArithmeticOverflow);
}

TEST_CASE("lyndon basis") {
    auto b22 = lyndon_basis(2, 2);
    REQUIRE(b22.size() == 1);
    CHECK(b22[0].word == w({1, 2}));

    auto b23 = lyndon_basis(2, 3);
    REQUIRE(b23.size() == 2);
    CHECK(b23[0].word == w({1, 1, 2}));
    CHECK(b23[0].bracketing->str() == "[1,[1,2]]");
    CHECK(b23[1].word == w({1, 2, 2}));
    CHECK(b23[1].bracketing->str() == "[[1,2],2]");

    auto b31 = lyndon_basis(3, 1);
    REQUIRE(b31.size() == 3);
    CHECK(b31[0].word == w({1}));
    CHECK(b31[2].word == w({3}));
}

TEST_CASE("bracket expansion in the tensor algebra") {
    auto e1 = BracketTree::leaf(1);
    auto e2 = BracketTree::leaf(2);

    TensorVector v12 = expand_bracket(*BracketTree::node(e1, e2));
    CHECK(v12.coeffs.at(w({1, 2})) == Rat(1));
    CHECK(v12.coeffs.at(w({2, 1})) == Rat(-1));
    CHECK(v12.coeffs.size() == 2);

    TensorVector v112 = expand_bracket(*BracketTree::node(e1, BracketTree::node(e1, e2)));
    CHECK(v112.coeffs.at(w({1, 1, 2})) == Rat(1));
    CHECK(v112.coeffs.at(w({1, 2, 1})) == Rat(-2));
    CHECK(v112.coeffs.at(w({2, 1, 1})) == Rat(1));
    CHECK(v112.coeffs.size() == 3);

    CHECK(expand_bracket(*BracketTree::node(e1, e1)).is_zero());
}

TEST_CASE("jacobi identity vanishes up to total degree 6") {
    // leaves drawn from brackets of degree 1 and 2 over a 3-letter alphabet
    std::vector<TreePtr> pieces;
    for (int c = 1; c <= 3; ++c) pieces.push_back(BracketTree::leaf(c));
    pieces.push_back(BracketTree::node(BracketTree::leaf(1), BracketTree::leaf(2)));
    pieces.push_back(BracketTree::node(BracketTree::leaf(2), BracketTree::leaf(3)));
    for (const auto& x : pieces)
        for (const auto& y : pieces)
            for (const auto& z : pieces) {
                if (x->foliage().size() + y->foliage().size() + z->foliage().size() > 6) continue;
                TensorVector jac =
                    expand_bracket(*BracketTree::node(x, BracketTree::node(y, z))) +
                    expand_bracket(*BracketTree::node(y, BracketTree::node(z, x))) +
                    expand_bracket(*BracketTree::node(z, BracketTree::node(x, y)));
                CHECK(jac.is_zero());
            }
}

TEST_CASE("lyndon expansions are linearly independent") {
    for (int n = 2; n <= 3; ++n)
        for (int d = 2; d <= 5; ++d) {
            auto basis = lyndon_basis(n, d);
            std::map<Word, int> word_index;
            int next = 0;
            std::vector<std::vector<Rat>> rows;
            for (const auto& lb : basis) {
                TensorVector v = expand_bracket(*lb.bracketing);
                for (const auto& [word, c] : v.coeffs)
                    if (!word_index.count(word)) word_index[word] = next++;
            }
            for (const auto& lb : basis) {
                TensorVector v = expand_bracket(*lb.bracketing);
                std::vector<Rat> row(next, Rat(0));
                for (const auto& [word, c] : v.coeffs) row[word_index[word]] = c;
                rows.push_back(row);
            }
            RrefMatrix r(next);
            for (auto& row : rows) CHECK(r.insert(row));
            CHECK(r.rank() == witt_dim(n, d));
        }
}

TEST_CASE("to_lyndon recovers bracket coordinates") {
    // [e1,[e1,e2]] is the Lyndon basis vector of the word 112
    TensorVector v = expand_bracket(*BracketTree::node(
        BracketTree::leaf(1), BracketTree::node(BracketTree::leaf(1), BracketTree::leaf(2))));
    auto coords = to_lyndon(v);
    REQUIRE(coords.size() == 1);
    CHECK(coords.at(w({1, 1, 2})) == Rat(1));

    // a non-Lie element is rejected
    TensorVector bad;
    bad.degree = 2;
    bad.add(w({1, 2}), Rat(1));
    bad.add(w({2, 1}), Rat(1));
    CHECK_THROWS_AS(to_lyndon(bad), Error);
}

TEST_CASE("bracket map ranks and kernels") {
    // n=4, d=2: kernel dimension 4*6 - 20 = 4 = C(4,3)
    BracketMap b42 = bracket_map(4, 2);
    CHECK(b42.rank() == witt_dim(4, 3));
    CHECK(b42.kernel_basis().size() == 4);

    // n=5, d=3: kernel dimension 5*40 - 150 = 50 = dim Sym^2 wedge^2 - dim wedge^4
    BracketMap b53 = bracket_map(5, 3);
    CHECK(b53.rank() == witt_dim(5, 4));
    long long wedge2 = binom(5, 2);
    CHECK(static_cast<long long>(b53.kernel_basis().size()) ==
          wedge2 * (wedge2 + 1) / 2 - binom(5, 4));
    CHECK(b53.kernel_basis().size() == 50);

    // n=2, d=1: kernel dimension 2*2 - 1 = 3
    BracketMap b21 = bracket_map(2, 1);
    CHECK(b21.rank() == 1);
    CHECK(b21.kernel_basis().size() == 3);

    // surjectivity across a range
    for (int n = 2; n <= 4; ++n)
        for (int d = 1; d <= 3; ++d) CHECK(bracket_map(n, d).rank() == witt_dim(n, d + 1));

    // kernel vectors actually map to zero
    for (const auto& v : b42.kernel_basis()) {
        auto img = b42.apply(v);
        for (const Rat& c : img) CHECK(c.is_zero());
    }
}

TEST_CASE("lie characters") {
    // SL: degree 3 is W_{2,1}, degree 4 is W_{3,1} + W_{2,1,1}
    GroupFamily sl4 = GroupFamily::sl(4);
    Decomposition d3 = decompose(lie_character(sl4, 3));
    CHECK(d3.same_terms(make_decomposition(sl4, {{{2, 1}, 1}})));

    GroupFamily sl5 = GroupFamily::sl(5);
    Decomposition d4 = decompose(lie_character(sl5, 4));
    CHECK(d4.same_terms(make_decomposition(sl5, {{{3, 1}, 1}, {{2, 1, 1}, 1}})));

    // Sp: degree 2 is wedge^2 H = V_0 + V_11
    GroupFamily sp3 = GroupFamily::sp(3);
    Decomposition dsp = decompose(lie_character(sp3, 2));
    CHECK(dsp.same_terms(make_decomposition(sp3, {{{}, 1}, {{1, 1}, 1}})));
    CHECK(lie_character(sp3, 2) == wedge_power(std_char(sp3), 2));

    // dimension equals the Witt dimension (alphabet size 2g for Sp)
    for (int d = 1; d <= 5; ++d) {
        CHECK(lie_character(GroupFamily::sl(3), d).dimension().to_int64() == witt_dim(3, d));
        CHECK(lie_character(GroupFamily::sp(2), d).dimension().to_int64() == witt_dim(4, d));
    }

    // cross-check the content-based count against explicit Lyndon words
    for (int d = 1; d <= 6; ++d) {
        GroupFamily sp2 = GroupFamily::sp(2);
        FormalCharacter explicit_ch(sp2);
        for (const Word& word : lyndon_words(4, d)) {
            Weight wt(2, 0);
            for (int letter : word) {
                int i = (letter - 1) / 2;
                wt[i] += (letter % 2) ? 1 : -1;
            }
            explicit_ch.add(wt, BigInt(1));
        }
        CHECK(lie_character(sp2, d) == explicit_ch);
    }
}

TEST_CASE("bracket expansions are highest weight vectors for the elementary action") {
    // E_ij sends e_j to e_j + e_i and fixes the other letters; extend to
    // words multiplicatively.
    auto apply_eij = [](int i, int j, const TensorVector& v) {
        TensorVector out;
        out.degree = v.degree;
        for (const auto& [word, c] : v.coeffs) {
            std::vector<int> slots;
            for (size_t s = 0; s < word.size(); ++s)
                if (word[s] == j) slots.push_back(static_cast<int>(s));
            // expand the product of (e_j + e_i) over the occurrences of e_j
            for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
                Word w = word;
                for (size_t b = 0; b < slots.size(); ++b)
                    if ((mask >> b) & 1u) w[slots[b]] = i;
                out.add(w, c);
            }
        }
        return out;
    };
    // [e1,[e1,e2]] has weight 2E_1 + E_2 and is fixed by every E_ij, i < j
    TensorVector v = expand_bracket(*BracketTree::node(
        BracketTree::leaf(1), BracketTree::node(BracketTree::leaf(1), BracketTree::leaf(2))));
    int n = 4;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) CHECK(apply_eij(i, j, v) == v);
    for (const auto& [word, c] : v.coeffs) {
        int ones = 0, twos = 0;
        for (int letter : word) (letter == 1 ? ones : twos)++;
        CHECK(ones == 2);
        CHECK(twos == 1);
    }
    // ... while [e2,[e2,e1]] is moved by E_12
    TensorVector u = expand_bracket(*BracketTree::node(
        BracketTree::leaf(2), BracketTree::node(BracketTree::leaf(2), BracketTree::leaf(1))));
    CHECK_FALSE(apply_eij(1, 2, u) == u);
}

TEST_CASE("H tensor FLie_3 decomposition for Sp") {
    GroupFamily sp4 = GroupFamily::sp(4);
    FormalCharacter hl3 = tensor(std_char(sp4), lie_character(sp4, 3));
    Decomposition d = decompose(hl3);
    CHECK(d.same_terms(make_decomposition(sp4, {{{}, 1},
                                                {{1, 1}, 2},
                                                {{2}, 2},
                                                {{2, 2}, 1},
                                                {{2, 1, 1}, 1},
                                                {{3, 1}, 1}})));
}
