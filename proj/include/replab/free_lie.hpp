#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "replab/char_ring.hpp"
#include "replab/qlinalg.hpp"

namespace replab {

// The free Lie algebra on letters {1..n}, realized inside the tensor algebra
// with the Lyndon-word basis.

using Word = std::vector<int>;  // letters 1..n

// ---------------------------------------------------------------------------
// Witt dimensions
// ---------------------------------------------------------------------------

inline int moebius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

inline long long witt_dim(long long n, int d) {
    if (n < 1 || d < 1) throw Error("witt_dim arguments must be positive");
    __int128 sum = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        __int128 pw = 1;
        for (int i = 0; i < e; ++i) {
            pw *= n;
            if (pw > static_cast<__int128>(INT64_MAX)) throw ArithmeticOverflow("witt_dim overflow");
        }
        sum += moebius(d / e) * pw;
    }
    return static_cast<long long>(sum / d);
}

// ---------------------------------------------------------------------------
// Lyndon words and standard bracketings
// ---------------------------------------------------------------------------

inline bool is_lyndon(const Word& w) {
    for (size_t i = 1; i < w.size(); ++i) {
        // compare w with its rotation starting at i
        Word rot(w.begin() + i, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + i);
        if (!(w < rot)) return false;
    }
    return !w.empty();
}

// All Lyndon words of length exactly d over {1..n}, in lexicographic order
// (Duval's algorithm).
inline std::vector<Word> lyndon_words(int n, int d) {
    std::vector<Word> out;
    Word w = {1};
    while (!w.empty()) {
        if (static_cast<int>(w.size()) == d) out.push_back(w);
        size_t k = w.size();
        while (static_cast<int>(w.size()) < d) w.push_back(w[w.size() - k]);
        while (!w.empty() && w.back() == n) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

// Binary bracketing tree with letters at the leaves.
struct BracketTree {
    int letter = 0;  // leaf when left is null
    std::shared_ptr<const BracketTree> left, right;

    static std::shared_ptr<const BracketTree> leaf(int c) {
        auto t = std::make_shared<BracketTree>();
        t->letter = c;
        return t;
    }
    static std::shared_ptr<const BracketTree> node(std::shared_ptr<const BracketTree> a,
                                                   std::shared_ptr<const BracketTree> b) {
        auto t = std::make_shared<BracketTree>();
        t->left = std::move(a);
        t->right = std::move(b);
        return t;
    }
    bool is_leaf() const { return left == nullptr; }

    Word foliage() const {
        if (is_leaf()) return {letter};
        Word w = left->foliage();
        Word r = right->foliage();
        w.insert(w.end(), r.begin(), r.end());
        return w;
    }
    std::string str() const {
        if (is_leaf()) return std::to_string(letter);
        return "[" + left->str() + "," + right->str() + "]";
    }
};

using TreePtr = std::shared_ptr<const BracketTree>;

struct LyndonBracket {
    Word word;
    TreePtr bracketing;
};

// Right-standard factorization: w = uv with v the longest proper Lyndon
// suffix; bracketing is built recursively.
inline TreePtr standard_bracketing(const Word& w) {
    if (w.size() == 1) return BracketTree::leaf(w[0]);
    size_t split = 0;
    for (size_t i = 1; i < w.size(); ++i) {
        Word suffix(w.begin() + i, w.end());
        if (is_lyndon(suffix)) {
            split = i;
            break;
        }
    }
    Word u(w.begin(), w.begin() + split), v(w.begin() + split, w.end());
    return BracketTree::node(standard_bracketing(u), standard_bracketing(v));
}

inline std::vector<LyndonBracket> lyndon_basis(int n, int d) {
    std::vector<LyndonBracket> out;
    for (const Word& w : lyndon_words(n, d)) out.push_back({w, standard_bracketing(w)});
    if (out.size() != static_cast<size_t>(witt_dim(n, d)))
        throw Error("lyndon basis size disagrees with the Witt dimension");
    return out;
}

// ---------------------------------------------------------------------------
// Tensor algebra
// ---------------------------------------------------------------------------

// Degree-homogeneous element of the tensor algebra with rational coefficients.
struct TensorVector {
    int degree = 0;
    std::map<Word, Rat> coeffs;

    void add(const Word& w, const Rat& c) {
        if (c.is_zero()) return;
        auto it = coeffs.find(w);
        if (it == coeffs.end()) {
            coeffs.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }
    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const TensorVector& o) const {
        return degree == o.degree && coeffs == o.coeffs;
    }

    friend TensorVector operator+(const TensorVector& a, const TensorVector& b) {
        TensorVector out = a;
        for (const auto& [w, c] : b.coeffs) out.add(w, c);
        return out;
    }
    friend TensorVector operator*(const Rat& s, const TensorVector& a) {
        TensorVector out;
        out.degree = a.degree;
        for (const auto& [w, c] : a.coeffs) out.add(w, s * c);
        return out;
    }
};

inline TensorVector concat_product(const TensorVector& a, const TensorVector& b) {
    TensorVector out;
    out.degree = a.degree + b.degree;
    for (const auto& [wa, ca] : a.coeffs)
        for (const auto& [wb, cb] : b.coeffs) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add(w, ca * cb);
        }
    return out;
}

// [t, t'] = t t' - t' t, expanded recursively over a bracketing tree.
inline TensorVector expand_bracket(const BracketTree& t) {
    if (t.is_leaf()) {
        TensorVector v;
        v.degree = 1;
        v.add({t.letter}, Rat(1));
        return v;
    }
    TensorVector a = expand_bracket(*t.left);
    TensorVector b = expand_bracket(*t.right);
    return concat_product(a, b) + (Rat(-1) * concat_product(b, a));
}

namespace detail {

inline const TensorVector& expanded_lyndon(const Word& w) {
    static std::map<Word, TensorVector> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    return cache.emplace(w, expand_bracket(*standard_bracketing(w))).first->second;
}

}  // namespace detail

// Coordinates of a free-Lie-algebra element (given inside the tensor
// algebra) with respect to the Lyndon basis of its degree.  Works by
// triangularity: the expansion of the standard bracketing of a Lyndon word
// is that word plus lexicographically larger words.
inline std::map<Word, Rat> to_lyndon(const TensorVector& v) {
    TensorVector work = v;
    std::map<Word, Rat> out;
    while (!work.is_zero()) {
        const Word w = work.coeffs.begin()->first;  // lex-least word; copy before mutating
        const Rat coeff = work.coeffs.begin()->second;
        if (!is_lyndon(w))
            throw Error("element is not in the free Lie algebra (leading word is not Lyndon)");
        const TensorVector& basis = detail::expanded_lyndon(w);
        for (const auto& [bw, bc] : basis.coeffs) work.add(bw, Rat(-1) * coeff * bc);
        out.emplace(w, coeff);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The bracket map  k^n (x) FLie_d -> FLie_{d+1}
// ---------------------------------------------------------------------------

struct BracketMap {
    int n = 0, d = 0;
    std::vector<Word> domain_words;      // Lyndon words of length d (lex order)
    std::vector<Word> codomain_words;    // Lyndon words of length d+1 (lex order)
    // matrix[row][col] over columns ordered (letter-1)*witt(n,d) + word rank
    std::vector<std::vector<Rat>> matrix;

    int domain_dim() const { return n * static_cast<int>(domain_words.size()); }
    int codomain_dim() const { return static_cast<int>(codomain_words.size()); }

    std::vector<Rat> apply(const std::vector<Rat>& x) const {
        std::vector<Rat> y(codomain_dim(), Rat(0));
        for (int col = 0; col < domain_dim(); ++col) {
            if (x[col].is_zero()) continue;
            for (int row = 0; row < codomain_dim(); ++row)
                if (!matrix[row][col].is_zero()) y[row] += x[col] * matrix[row][col];
        }
        return y;
    }

    int rank() const {
        RrefMatrix r(domain_dim());
        for (const auto& row : matrix) r.insert(row);
        return r.rank();
    }

    // Kernel in reduced echelon form over the fixed column order.
    std::vector<std::vector<Rat>> kernel_basis() const { return nullspace(matrix, domain_dim()); }
};

inline BracketMap bracket_map(int n, int d) {
    if (n < 2 || d < 1) throw Error("bracket_map needs n >= 2, d >= 1");
    BracketMap bm;
    bm.n = n;
    bm.d = d;
    bm.domain_words = lyndon_words(n, d);
    bm.codomain_words = lyndon_words(n, d + 1);
    std::map<Word, int> codomain_rank;
    for (size_t i = 0; i < bm.codomain_words.size(); ++i)
        codomain_rank[bm.codomain_words[i]] = static_cast<int>(i);
    int wd = static_cast<int>(bm.domain_words.size());
    bm.matrix.assign(bm.codomain_words.size(), std::vector<Rat>(n * wd, Rat(0)));
    for (int letter = 1; letter <= n; ++letter) {
        for (int j = 0; j < wd; ++j) {
            TensorVector image = expand_bracket(*BracketTree::node(
                BracketTree::leaf(letter), standard_bracketing(bm.domain_words[j])));
            int col = (letter - 1) * wd + j;
            for (const auto& [w, c] : to_lyndon(image)) bm.matrix[codomain_rank.at(w)][col] = c;
        }
    }
    return bm;
}

// ---------------------------------------------------------------------------
// Lie characters
// ---------------------------------------------------------------------------

namespace detail {

// Number of Lyndon words with the given letter content (Witt's formula
// applied content-wise).
inline long long lyndon_count_for_content(const std::vector<int>& content, int d) {
    int g = d;
    for (int c : content)
        if (c > 0) g = std::gcd(g, c);
    long long total = 0;
    for (int e = 1; e <= g; ++e) {
        if (g % e) continue;
        int mu = moebius(e);
        if (mu == 0) continue;
        // multinomial (d/e; content/e)
        BigInt mult(1);
        int placed = 0;
        for (int c : content) {
            int k = c / e;
            for (int i = 1; i <= k; ++i) {
                mult *= BigInt(placed + i);
                mult = mult.div_exact(i);
            }
            placed += k;
        }
        total += mu * mult.to_int64();
    }
    return total / d;
}

}  // namespace detail

// Character of the degree-d piece of the free Lie algebra on the standard
// representation.  Letters carry the weights of std_char: E_1..E_n for SL_n,
// the 2g weights +-E_i for Sp_2g.
inline FormalCharacter lie_character(const GroupFamily& group, int d) {
    if (d < 1 || d > 7) throw Error("lie_character supports 1 <= d <= 7");
    int m = group.family == Family::SL ? group.rank : 2 * group.rank;
    std::vector<Weight> letter_weight(m, Weight(group.rank, 0));
    if (group.family == Family::SL) {
        for (int i = 0; i < m; ++i) letter_weight[i][i] = 1;
    } else {
        for (int i = 0; i < group.rank; ++i) {
            letter_weight[2 * i][i] = 1;       // a_{i+1}
            letter_weight[2 * i + 1][i] = -1;  // b_{i+1}
        }
    }
    FormalCharacter ch(group);
    std::vector<int> content(m, 0);
    auto rec = [&](auto&& self, int letter, int rem) -> void {
        if (letter == m - 1) {
            content[letter] = rem;
            long long count = detail::lyndon_count_for_content(content, d);
            if (count > 0) {
                Weight w(group.rank, 0);
                for (int i = 0; i < m; ++i)
                    for (int k = 0; k < group.rank; ++k) w[k] += content[i] * letter_weight[i][k];
                if (group.family == Family::SL) w = normalize_sl(w);
                ch.add(w, BigInt(count));
            }
            return;
        }
        for (int c = rem; c >= 0; --c) {
            content[letter] = c;
            self(self, letter + 1, rem - c);
        }
    };
    rec(rec, 0, d);
    return ch;
}

}  // namespace replab
