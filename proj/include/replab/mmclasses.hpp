#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "replab/johnson.hpp"

namespace replab {

// Weighted-partition enumeration and the dimension-counting tables for
// H^2(Mod; H^{(x)d}) in the stable range.

// ---------------------------------------------------------------------------
// Weighted partitions
// ---------------------------------------------------------------------------

// A set partition of {1..d} with a nonnegative weight per block; singleton
// blocks carry weight >= 1.  Canonical form: blocks sorted by their minimum
// element (elements within a block ascending).
struct WeightedPartition {
    std::vector<std::vector<int>> blocks;
    std::vector<int> weights;

    int d() const {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.size());
        return n;
    }
    void canonicalize() {
        std::vector<size_t> order(blocks.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(order.begin(), order.end(),
                  [&](size_t x, size_t y) { return blocks[x][0] < blocks[y][0]; });
        std::vector<std::vector<int>> nb;
        std::vector<int> nw;
        for (size_t i : order) {
            nb.push_back(blocks[i]);
            nw.push_back(weights[i]);
        }
        blocks = std::move(nb);
        weights = std::move(nw);
    }
    void validate() const {
        if (blocks.size() != weights.size()) throw Error("weighted partition: size mismatch");
        std::vector<int> seen;
        for (size_t i = 0; i < blocks.size(); ++i) {
            if (blocks[i].empty()) throw Error("weighted partition: empty block");
            if (blocks[i].size() == 1 && weights[i] < 1)
                throw Error("weighted partition: singleton block needs weight >= 1");
            if (weights[i] < 0) throw Error("weighted partition: negative weight");
            for (int e : blocks[i]) seen.push_back(e);
        }
        std::sort(seen.begin(), seen.end());
        for (size_t i = 0; i < seen.size(); ++i)
            if (seen[i] != static_cast<int>(i) + 1)
                throw Error("weighted partition: blocks do not partition {1..d}");
    }
    bool operator==(const WeightedPartition& o) const {
        return blocks == o.blocks && weights == o.weights;
    }
    std::string str() const {
        std::string s;
        for (size_t i = 0; i < blocks.size(); ++i) {
            if (i) s += " ";
            s += "{";
            for (size_t j = 0; j < blocks[i].size(); ++j) {
                if (j) s += ",";
                s += std::to_string(blocks[i][j]);
            }
            s += "}:" + std::to_string(weights[i]);
        }
        return s;
    }
};

// k(P) = d + 2 sum (w_i - 1)
inline int k_of(const WeightedPartition& p) {
    p.validate();
    int k = p.d();
    for (int w : p.weights) k += 2 * (w - 1);
    if (k < 0) throw Error("k(P) went negative");
    return k;
}

namespace detail {

// Set partitions of {1..d} by restricted growth strings, blocks ordered by
// minimum element.
template <typename F>
inline void for_each_set_partition(int d, F&& f) {
    std::vector<int> rgs(d, 0);
    auto emit = [&]() {
        int nblocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> blocks(nblocks);
        for (int i = 0; i < d; ++i) blocks[rgs[i]].push_back(i + 1);
        f(blocks);
    };
    auto rec = [&](auto&& self, int i, int maxv) -> void {
        if (i == d) {
            emit();
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[i] = v;
            self(self, i + 1, std::max(maxv, v));
        }
    };
    if (d == 0) return;
    rgs[0] = 0;
    rec(rec, 1, 0);
}

}  // namespace detail

// All weighted partitions of {1..d} with k(P) = k, in deterministic order
// (restricted-growth order of the block structure, then lexicographic order
// of the weight vector).
inline std::vector<WeightedPartition> enumerate_weighted_partitions(int d, int k) {
    if (d < 1 || d > 10) throw Error("enumerate supports 1 <= d <= 10");
    if (k < 0) throw Error("negative k");
    std::vector<WeightedPartition> out;
    if ((k - d) % 2 != 0) return out;  // parity obstruction
    detail::for_each_set_partition(d, [&](const std::vector<std::vector<int>>& blocks) {
        int n = static_cast<int>(blocks.size());
        // sum of weights = (k - d)/2 + n
        int budget = (k - d) / 2 + n;
        if (budget < 0) return;
        std::vector<int> w(n, 0);
        auto rec = [&](auto&& self, int i, int rest) -> void {
            if (i == n) {
                if (rest == 0) {
                    WeightedPartition p{blocks, w};
                    p.canonicalize();
                    out.push_back(std::move(p));
                }
                return;
            }
            int lo = blocks[i].size() == 1 ? 1 : 0;
            for (int v = lo; v <= rest; ++v) {
                w[i] = v;
                self(self, i + 1, rest - v);
            }
        };
        rec(rec, 0, budget);
    });
    return out;
}

// dim H^2(Mod; H^{(x)d}) in the stable range: free-module basis m_P with
// k(P) = 2 together with kappa_1 m_P with k(P) = 0.
inline long long kawazumi_h2_dim(int d) {
    return static_cast<long long>(enumerate_weighted_partitions(d, 0).size()) +
           static_cast<long long>(enumerate_weighted_partitions(d, 2).size());
}

// ---------------------------------------------------------------------------
// The comparison table
// ---------------------------------------------------------------------------

struct TableRow {
    int d = 0;
    long long t_d = 0;        // trivial multiplicity of H^{(x)d}
    long long hom = 0;        // dim Hom(V_cup, H^{(x)d})
    long long sum = 0;        // t_d + hom
    long long kawazumi = 0;   // |k=0| + |k=2|
    bool match() const { return sum == kawazumi; }
};

// Rows of the table for a given cup-product-image decomposition.  The
// decomposition's partition list must be stable (independent of its rank),
// which holds for the boundary cup image once g >= 6.
inline std::vector<TableRow> comparison_table_rows(int g, int d_max, const Decomposition& cup) {
    if (g < d_max) throw Error("comparison_table needs g >= d_max (stable range)");
    std::vector<TableRow> rows;
    GroupFamily sp = GroupFamily::sp(g);
    FormalCharacter h = std_char(sp);
    FormalCharacter pow = trivial_char(sp);
    for (int d = 1; d <= d_max; ++d) {
        pow = tensor(pow, h);
        Decomposition dec = decompose(pow);
        TableRow row;
        row.d = d;
        row.t_d = dec.mult({});
        BigInt hom;
        for (const auto& [p, m] : cup.terms) hom += BigInt(m) * BigInt(dec.mult(p));
        row.hom = hom.to_int64();
        row.sum = row.t_d + row.hom;
        row.kawazumi = kawazumi_h2_dim(d);
        rows.push_back(row);
    }
    return rows;
}

// Full-pipeline variant: the hom side uses the cup-image decomposition
// computed by the johnson module (at g=6, where the list is already stable).
inline std::vector<TableRow> comparison_table(int g, int d_max = 6) {
    std::vector<TableRow> rows = comparison_table_rows(g, d_max, cup_image_boundary(6));
    for (const TableRow& r : rows)
        if (!r.match())
            throw TableMismatch("row d=" + std::to_string(r.d) + ": t_d + hom = " +
                                std::to_string(r.sum) + " but the weighted-partition count is " +
                                std::to_string(r.kawazumi));
    return rows;
}

// ---------------------------------------------------------------------------
// Dimension bookkeeping across the three surface types
// ---------------------------------------------------------------------------

struct BookkeepingReport {
    int g = 0;
    BigInt boundary_dim;   // dim of the cup image for one boundary component
    BigInt punctured_dim;  // boundary list plus one trivial factor
    BigInt closed_dim;     // closed-surface cup image
    BigInt h_tensor_quot_dim;  // dim H (x) (wedge^3 H)/H
    bool punctured_identity = false;  // punctured = boundary + 1
    bool closed_identity = false;     // punctured = 1 + dim(H (x) (w3H)/H) + closed
    bool difference_matches = false;  // punctured - closed = V_0 + H (x) (w3H)/H
};

inline BookkeepingReport bookkeeping_identities(int g) {
    if (g < 6) throw GenusTooSmall("bookkeeping_identities needs g >= 6");
    BookkeepingReport rep;
    rep.g = g;
    const CupImage& ci = cup_image_full(g);
    rep.boundary_dim = ci.boundary_dec.total_dim();
    rep.punctured_dim = rep.boundary_dim + BigInt(1);
    rep.closed_dim = ci.closed_dec.total_dim();

    GroupFamily sp = GroupFamily::sp(g);
    FormalCharacter quot = wedge_power(std_char(sp), 3);
    for (const auto& [w, m] : std_char(sp).table) quot.add(w, BigInt(-1) * m);
    FormalCharacter hq = tensor(std_char(sp), quot);
    rep.h_tensor_quot_dim = hq.dimension();

    rep.punctured_identity = rep.punctured_dim == rep.boundary_dim + BigInt(1);
    rep.closed_identity =
        rep.punctured_dim == BigInt(1) + rep.h_tensor_quot_dim + rep.closed_dim;

    // punctured list = boundary list + V_0; its difference with the closed
    // list should decompose as V_0 + (H (x) (wedge^3 H)/H)
    Decomposition punctured = ci.boundary_dec;
    punctured.terms.push_back({{}, 1});
    punctured.sort_terms();
    Decomposition diff = decomposition_difference(punctured, ci.closed_dec);
    Decomposition expected = decompose(hq);
    expected.terms.push_back({{}, 1});
    expected.sort_terms();
    rep.difference_matches = diff.same_terms(expected);
    return rep;
}

}  // namespace replab
