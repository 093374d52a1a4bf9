#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "replab/char_ring.hpp"
#include "replab/qlinalg.hpp"

namespace replab {

// Exact multilinear algebra over Q on spaces built from H = Q^{2g} with its
// symplectic basis a_1, b_1, ..., a_g, b_g.  Basis index 2i is a_{i+1},
// index 2i+1 is b_{i+1}; this order fixes all exterior-algebra signs.

// ---------------------------------------------------------------------------
// The symplectic space H
// ---------------------------------------------------------------------------

struct SymplecticSpace {
    int g;

    explicit SymplecticSpace(int genus) : g(genus) {
        if (g < 1) throw Error("genus must be positive");
    }
    int dim() const { return 2 * g; }

    static int a(int i) { return 2 * (i - 1); }      // 1-based
    static int b(int i) { return 2 * (i - 1) + 1; }  // 1-based

    // omega(e_p, e_q)
    static int form(int p, int q) {
        if (p / 2 != q / 2) return 0;
        if (p == q) return 0;
        return p < q ? 1 : -1;
    }
    Weight basis_weight(int p) const {
        Weight w(g, 0);
        w[p / 2] = (p % 2 == 0) ? 1 : -1;
        return w;
    }
    static std::string basis_name(int p) {
        return std::string(p % 2 == 0 ? "a" : "b") + std::to_string(p / 2 + 1);
    }
};

// ---------------------------------------------------------------------------
// Tensor shapes
// ---------------------------------------------------------------------------

struct Shape;
using ShapePtr = std::shared_ptr<const Shape>;

struct Shape {
    enum class Kind { H, Wedge, Sym, Tensor, Quot };
    Kind kind = Kind::H;
    int power = 0;
    ShapePtr a, b;
    std::string quot_name;

    static ShapePtr h() {
        static ShapePtr s = std::make_shared<Shape>();
        return s;
    }
    static ShapePtr wedge(int k, ShapePtr inner) {
        auto s = std::make_shared<Shape>();
        s->kind = Kind::Wedge;
        s->power = k;
        s->a = std::move(inner);
        return s;
    }
    static ShapePtr sym(int k, ShapePtr inner) {
        auto s = std::make_shared<Shape>();
        s->kind = Kind::Sym;
        s->power = k;
        s->a = std::move(inner);
        return s;
    }
    static ShapePtr tensor(ShapePtr x, ShapePtr y) {
        auto s = std::make_shared<Shape>();
        s->kind = Kind::Tensor;
        s->a = std::move(x);
        s->b = std::move(y);
        return s;
    }
    static ShapePtr quot(ShapePtr ambient, const std::string& name) {
        auto s = std::make_shared<Shape>();
        s->kind = Kind::Quot;
        s->a = std::move(ambient);
        s->quot_name = name;
        return s;
    }

    std::string str() const {
        switch (kind) {
            case Kind::H:
                return "H";
            case Kind::Wedge:
                return "wedge(" + std::to_string(power) + "," + a->str() + ")";
            case Kind::Sym:
                return "sym(" + std::to_string(power) + "," + a->str() + ")";
            case Kind::Tensor:
                return "tensor(" + a->str() + "," + b->str() + ")";
            case Kind::Quot:
                return "quot(" + a->str() + "," + quot_name + ")";
        }
        return "";
    }
    const Shape& ambient() const { return kind == Kind::Quot ? *a : *this; }
};

// The shapes this project names.
inline ShapePtr shape_wedge_h(int k) { return Shape::wedge(k, Shape::h()); }
inline ShapePtr shape_h_wedge2() { return Shape::tensor(Shape::h(), shape_wedge_h(2)); }
inline ShapePtr shape_hh_wedge2() {
    return Shape::tensor(Shape::h(), Shape::tensor(Shape::h(), shape_wedge_h(2)));
}
inline ShapePtr shape_wedge2_wedge3() { return Shape::wedge(2, shape_wedge_h(3)); }
inline ShapePtr shape_sym2_wedge2() { return Shape::sym(2, shape_wedge_h(2)); }
inline ShapePtr shape_quot_wedge3_h() { return Shape::quot(shape_wedge_h(3), "H-in-wedge3"); }
inline ShapePtr shape_quot_tau2() {
    return Shape::quot(shape_hh_wedge2(), "HxWedge3-in-HHxWedge2");
}
inline ShapePtr shape_quot_sym2() {
    return Shape::quot(shape_sym2_wedge2(), "wedge4-in-sym2wedge2");
}

// ---------------------------------------------------------------------------
// Basis tables
// ---------------------------------------------------------------------------

// Enumerated basis with weight grading for one (shape, g) pair.  Basis
// elements of wedge/sym shapes are increasing tuples over the child basis in
// lexicographic order.
struct BasisTable {
    ShapePtr shape;
    int g = 0;
    int dim = 0;
    const BasisTable* child_a = nullptr;
    const BasisTable* child_b = nullptr;
    int k = 0;                     // tuple length for wedge/sym
    std::vector<int32_t> tuples;   // k entries per basis element
    std::vector<Weight> weights;   // per basis element

    struct Block {
        Weight weight;
        std::vector<int32_t> ids;
    };
    std::vector<Block> blocks;
    std::map<Weight, int32_t> block_of_weight;
    std::vector<int32_t> id2block, id2pos;

    // tuple -> id lookup: flat table when small, binary search otherwise
    std::vector<int32_t> flat;
    bool use_flat = false;

    const int32_t* tuple(int id) const { return tuples.data() + static_cast<size_t>(id) * k; }

    int32_t rank_of(const int32_t* t) const {
        if (use_flat) {
            long long key = 0;
            for (int j = 0; j < k; ++j) key = key * child_a->dim + t[j];
            return flat[key];
        }
        // binary search over the lex-sorted tuple list
        int lo = 0, hi = dim - 1;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            const int32_t* m = tuple(mid);
            bool less = std::lexicographical_compare(m, m + k, t, t + k);
            if (less)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }
};

namespace detail {

inline void enumerate_tuples(BasisTable& bt, bool strict) {
    int n = bt.child_a->dim;
    int k = bt.k;
    std::vector<int32_t> cur(k);
    auto rec = [&](auto&& self, int j, int from) -> void {
        if (j == k) {
            bt.tuples.insert(bt.tuples.end(), cur.begin(), cur.end());
            return;
        }
        for (int v = from; v < n; ++v) {
            cur[j] = v;
            self(self, j + 1, strict ? v + 1 : v);
        }
    };
    rec(rec, 0, 0);
    bt.dim = static_cast<int>(bt.tuples.size() / k);
    double flat_size = 1;
    for (int j = 0; j < k; ++j) flat_size *= n;
    if (flat_size <= 3e6) {
        bt.use_flat = true;
        bt.flat.assign(static_cast<size_t>(flat_size), -1);
        for (int id = 0; id < bt.dim; ++id) {
            const int32_t* t = bt.tuple(id);
            long long key = 0;
            for (int j = 0; j < k; ++j) key = key * n + t[j];
            bt.flat[key] = id;
        }
    }
}

inline void build_weights_and_blocks(BasisTable& bt) {
    SymplecticSpace sp(bt.g);
    bt.weights.resize(bt.dim);
    for (int id = 0; id < bt.dim; ++id) {
        Weight w(bt.g, 0);
        switch (bt.shape->kind) {
            case Shape::Kind::H:
                w = sp.basis_weight(id);
                break;
            case Shape::Kind::Wedge:
            case Shape::Kind::Sym: {
                const int32_t* t = bt.tuple(id);
                for (int j = 0; j < bt.k; ++j) {
                    const Weight& cw = bt.child_a->weights[t[j]];
                    for (int i = 0; i < bt.g; ++i) w[i] += cw[i];
                }
                break;
            }
            case Shape::Kind::Tensor: {
                int ia = id / bt.child_b->dim, ib = id % bt.child_b->dim;
                for (int i = 0; i < bt.g; ++i)
                    w[i] = bt.child_a->weights[ia][i] + bt.child_b->weights[ib][i];
                break;
            }
            case Shape::Kind::Quot:
                break;  // handled by sharing the ambient table
        }
        bt.weights[id] = std::move(w);
    }
    bt.id2block.resize(bt.dim);
    bt.id2pos.resize(bt.dim);
    for (int id = 0; id < bt.dim; ++id) {
        auto it = bt.block_of_weight.find(bt.weights[id]);
        int32_t bi;
        if (it == bt.block_of_weight.end()) {
            bi = static_cast<int32_t>(bt.blocks.size());
            bt.blocks.push_back({bt.weights[id], {}});
            bt.block_of_weight.emplace(bt.weights[id], bi);
        } else {
            bi = it->second;
        }
        bt.id2block[id] = bi;
        bt.id2pos[id] = static_cast<int32_t>(bt.blocks[bi].ids.size());
        bt.blocks[bi].ids.push_back(id);
    }
}

}  // namespace detail

inline const BasisTable& basis_table(const ShapePtr& shape, int g) {
    static std::map<std::pair<std::string, int>, std::unique_ptr<BasisTable>> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto key = std::make_pair(shape->str(), g);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto bt = std::make_unique<BasisTable>();
    bt->shape = shape;
    bt->g = g;
    switch (shape->kind) {
        case Shape::Kind::H:
            bt->dim = 2 * g;
            break;
        case Shape::Kind::Wedge:
        case Shape::Kind::Sym: {
            bt->child_a = &basis_table(shape->a, g);
            bt->k = shape->power;
            detail::enumerate_tuples(*bt, shape->kind == Shape::Kind::Wedge);
            break;
        }
        case Shape::Kind::Tensor: {
            bt->child_a = &basis_table(shape->a, g);
            bt->child_b = &basis_table(shape->b, g);
            bt->dim = bt->child_a->dim * bt->child_b->dim;
            break;
        }
        case Shape::Kind::Quot: {
            // quotient indexing piggybacks on the ambient basis
            const BasisTable& amb = basis_table(shape->a, g);
            bt->child_a = &amb;
            bt->child_b = amb.child_b;
            bt->dim = amb.dim;
            bt->k = amb.k;
            bt->tuples = amb.tuples;
            bt->flat = amb.flat;
            bt->use_flat = amb.use_flat;
            bt->weights = amb.weights;
            bt->blocks = amb.blocks;
            bt->block_of_weight = amb.block_of_weight;
            bt->id2block = amb.id2block;
            bt->id2pos = amb.id2pos;
            return *cache.emplace(key, std::move(bt)).first->second;
        }
    }
    detail::build_weights_and_blocks(*bt);
    return *cache.emplace(key, std::move(bt)).first->second;
}

// ---------------------------------------------------------------------------
// Multivectors
// ---------------------------------------------------------------------------

struct MultiVector {
    ShapePtr shape;
    int g = 0;
    std::map<int32_t, Rat> c;

    MultiVector() = default;
    MultiVector(ShapePtr s, int genus) : shape(std::move(s)), g(genus) {}

    bool is_zero() const { return c.empty(); }
    void add(int32_t id, const Rat& v) {
        if (v.is_zero()) return;
        auto it = c.find(id);
        if (it == c.end()) {
            c.emplace(id, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) c.erase(it);
        }
    }
    Rat coeff(int32_t id) const {
        auto it = c.find(id);
        return it == c.end() ? Rat(0) : it->second;
    }
    friend MultiVector operator+(const MultiVector& x, const MultiVector& y) {
        if (x.shape->str() != y.shape->str() || x.g != y.g)
            throw ShapeMismatch("adding multivectors of different shapes");
        MultiVector out = x;
        for (const auto& [id, v] : y.c) out.add(id, v);
        return out;
    }
    friend MultiVector operator-(const MultiVector& x, const MultiVector& y) {
        return x + (Rat(-1) * y);
    }
    friend MultiVector operator*(const Rat& s, const MultiVector& x) {
        MultiVector out(x.shape, x.g);
        if (s.is_zero()) return out;
        for (const auto& [id, v] : x.c) out.c.emplace(id, s * v);
        return out;
    }
    bool operator==(const MultiVector& o) const {
        return shape->str() == o.shape->str() && g == o.g && c == o.c;
    }

    std::string str() const;  // defined after basis helpers
};

// Sparse vector in H.
inline MultiVector h_vector(int g, const std::vector<long long>& coords) {
    if (static_cast<int>(coords.size()) != 2 * g) throw ShapeMismatch("H vector has wrong length");
    MultiVector v(Shape::h(), g);
    for (int p = 0; p < 2 * g; ++p) v.add(p, Rat(coords[p]));
    return v;
}
inline MultiVector h_basis(int g, int p) {
    MultiVector v(Shape::h(), g);
    v.add(p, Rat(1));
    return v;
}

inline Rat omega_form(const MultiVector& u, const MultiVector& v) {
    Rat s(0);
    for (const auto& [p, cu] : u.c)
        for (const auto& [q, cv] : v.c) {
            int f = SymplecticSpace::form(p, q);
            if (f) s += Rat(f) * cu * cv;
        }
    return s;
}

// Wedge of k vectors in H, expanded over the basis of wedge(k, H).
inline MultiVector wedge_vectors(const std::vector<MultiVector>& hs) {
    if (hs.empty()) throw ShapeMismatch("empty wedge");
    int g = hs[0].g;
    int k = static_cast<int>(hs.size());
    const BasisTable& bt = basis_table(shape_wedge_h(k), g);
    MultiVector out(shape_wedge_h(k), g);
    std::vector<std::pair<int32_t, Rat>> cur(k);
    auto rec = [&](auto&& self, int j, Rat coef) -> void {
        if (j == k) {
            std::vector<std::pair<int32_t, int>> idx(k);
            for (int t = 0; t < k; ++t) idx[t] = {cur[t].first, t};
            std::sort(idx.begin(), idx.end());
            for (int t = 0; t + 1 < k; ++t)
                if (idx[t].first == idx[t + 1].first) return;
            int sign = 1;  // parity of the sorting permutation
            std::vector<int> perm(k);
            for (int t = 0; t < k; ++t) perm[t] = idx[t].second;
            std::vector<bool> seen(k, false);
            for (int t = 0; t < k; ++t) {
                if (seen[t]) continue;
                int len = 0, u = t;
                while (!seen[u]) {
                    seen[u] = true;
                    u = perm[u];
                    ++len;
                }
                if (len % 2 == 0) sign = -sign;
            }
            std::vector<int32_t> tup(k);
            for (int t = 0; t < k; ++t) tup[t] = idx[t].first;
            out.add(bt.rank_of(tup.data()), Rat(sign) * coef);
            return;
        }
        for (const auto& [p, v] : hs[j].c) {
            cur[j] = {p, v};
            self(self, j + 1, coef * v);
        }
    };
    rec(rec, 0, Rat(1));
    return out;
}

// omega = a_1 ^ b_1 + ... + a_g ^ b_g
inline MultiVector omega_mv(int g) {
    const BasisTable& bt = basis_table(shape_wedge_h(2), g);
    MultiVector out(shape_wedge_h(2), g);
    for (int i = 1; i <= g; ++i) {
        int32_t t[2] = {SymplecticSpace::a(i), SymplecticSpace::b(i)};
        out.add(bt.rank_of(t), Rat(1));
    }
    return out;
}

// omega_V = u_1 ^ v_1 + ... + u_h ^ v_h for a symplectic set of pairs.
inline MultiVector omega_of(int g, const std::vector<std::pair<MultiVector, MultiVector>>& pairs) {
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = 0; j < pairs.size(); ++j) {
            if (omega_form(pairs[i].first, pairs[j].first) != Rat(0) ||
                omega_form(pairs[i].second, pairs[j].second) != Rat(0))
                throw NotSymplecticSet("u/u or v/v pairing is nonzero");
            Rat expect = i == j ? Rat(1) : Rat(0);
            if (omega_form(pairs[i].first, pairs[j].second) != expect)
                throw NotSymplecticSet("omega(u_i, v_j) != delta_ij");
        }
    MultiVector out(shape_wedge_h(2), g);
    for (const auto& [u, v] : pairs) out = out + wedge_vectors({u, v});
    return out;
}

// ---------------------------------------------------------------------------
// Group generators and Lie operators
// ---------------------------------------------------------------------------

// Sparse 2g x 2g matrix, stored by columns.
struct SpMatrix {
    int g = 0;
    std::vector<std::vector<std::pair<int, Rat>>> cols;

    explicit SpMatrix(int genus) : g(genus), cols(2 * genus) {}
    static SpMatrix identity(int g) {
        SpMatrix m(g);
        for (int p = 0; p < 2 * g; ++p) m.cols[p].push_back({p, Rat(1)});
        return m;
    }
    void set_entry(int row, int col, const Rat& v) { cols[col].push_back({row, v}); }

    Rat entry(int row, int col) const {
        Rat s(0);
        for (const auto& [r, v] : cols[col])
            if (r == row) s += v;
        return s;
    }
    friend SpMatrix operator*(const SpMatrix& x, const SpMatrix& y) {
        SpMatrix out(x.g);
        for (int col = 0; col < 2 * y.g; ++col)
            for (const auto& [mid, v] : y.cols[col])
                for (const auto& [row, u] : x.cols[mid]) {
                    bool found = false;
                    for (auto& e : out.cols[col])
                        if (e.first == row) {
                            e.second += u * v;
                            found = true;
                            break;
                        }
                    if (!found) out.cols[col].push_back({row, u * v});
                }
        for (auto& col : out.cols) {
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            col.erase(std::remove_if(col.begin(), col.end(),
                                     [](const auto& e) { return e.second.is_zero(); }),
                      col.end());
        }
        return out;
    }
    bool is_symplectic() const {
        // M^t J M = J, with J the block form pairing a_i with b_i
        for (int p = 0; p < 2 * g; ++p)
            for (int q = 0; q < 2 * g; ++q) {
                Rat s(0);
                for (const auto& [r1, v1] : cols[p])
                    for (const auto& [r2, v2] : cols[q]) {
                        int f = SymplecticSpace::form(r1, r2);
                        if (f) s += Rat(f) * v1 * v2;
                    }
                if (s != Rat(SymplecticSpace::form(p, q))) return false;
            }
        return true;
    }
    // nilpotent part M - I
    SpMatrix minus_identity() const {
        SpMatrix out(g);
        for (int p = 0; p < 2 * g; ++p) {
            for (const auto& [r, v] : cols[p]) {
                Rat w = v - (r == p ? Rat(1) : Rat(0));
                if (!w.is_zero()) out.cols[p].push_back({r, w});
            }
            bool diag_present = false;
            for (const auto& [r, v] : cols[p])
                if (r == p) diag_present = true;
            if (!diag_present) out.cols[p].push_back({p, Rat(-1)});
        }
        return out;
    }
};

enum class GenKind { X, Y, Z, LowerX, LowerY, LowerZ };

struct GroupGenerator {
    GenKind kind;
    int i = 0, j = 0;  // 1-based indices
    SpMatrix mat;
    std::string name;
};

namespace detail {

inline GroupGenerator make_generator(int g, GenKind kind, int i, int j) {
    SpMatrix m = SpMatrix::identity(g);
    auto A = [&](int t) { return SymplecticSpace::a(t); };
    auto B = [&](int t) { return SymplecticSpace::b(t); };
    std::string name;
    switch (kind) {
        case GenKind::X:  // a_j -> a_j + a_i, b_i -> b_i - b_j
            m.set_entry(A(i), A(j), Rat(1));
            m.set_entry(B(j), B(i), Rat(-1));
            name = "X" + std::to_string(i) + std::to_string(j);
            break;
        case GenKind::Y:  // b_i -> b_i + a_i
            m.set_entry(A(i), B(i), Rat(1));
            name = "Y" + std::to_string(i);
            break;
        case GenKind::Z:  // b_i -> b_i + a_j, b_j -> b_j + a_i
            m.set_entry(A(j), B(i), Rat(1));
            m.set_entry(A(i), B(j), Rat(1));
            name = "Z" + std::to_string(i) + std::to_string(j);
            break;
        case GenKind::LowerX:  // a_i -> a_i - a_j, b_j -> b_j + b_i
            m.set_entry(A(j), A(i), Rat(-1));
            m.set_entry(B(i), B(j), Rat(1));
            name = "X'" + std::to_string(i) + std::to_string(j);
            break;
        case GenKind::LowerY:  // a_i -> a_i - b_i
            m.set_entry(B(i), A(i), Rat(-1));
            name = "Y'" + std::to_string(i);
            break;
        case GenKind::LowerZ:  // a_i -> a_i - b_j, a_j -> a_j - b_i
            m.set_entry(B(j), A(i), Rat(-1));
            m.set_entry(B(i), A(j), Rat(-1));
            name = "Z'" + std::to_string(i) + std::to_string(j);
            break;
    }
    for (auto& col : m.cols)
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    GroupGenerator gen{kind, i, j, std::move(m), name};
    if (!gen.mat.is_symplectic()) throw Error("generator is not symplectic: " + gen.name);
    return gen;
}

}  // namespace detail

// X_ij, Y_i, Z_ij: the generators fixing highest weight vectors.
inline std::vector<GroupGenerator> upper_generators(int g) {
    std::vector<GroupGenerator> out;
    for (int i = 1; i <= g; ++i)
        for (int j = i + 1; j <= g; ++j) out.push_back(detail::make_generator(g, GenKind::X, i, j));
    for (int i = 1; i <= g; ++i) out.push_back(detail::make_generator(g, GenKind::Y, i, 0));
    for (int i = 1; i <= g; ++i)
        for (int j = i + 1; j <= g; ++j) out.push_back(detail::make_generator(g, GenKind::Z, i, j));
    return out;
}

inline std::vector<GroupGenerator> all_generators(int g) {
    std::vector<GroupGenerator> out = upper_generators(g);
    for (int i = 1; i <= g; ++i)
        for (int j = i + 1; j <= g; ++j)
            out.push_back(detail::make_generator(g, GenKind::LowerX, i, j));
    for (int i = 1; i <= g; ++i) out.push_back(detail::make_generator(g, GenKind::LowerY, i, 0));
    for (int i = 1; i <= g; ++i)
        for (int j = i + 1; j <= g; ++j)
            out.push_back(detail::make_generator(g, GenKind::LowerZ, i, j));
    return out;
}

// Nilpotent logarithms of the generators attached to simple roots; a subspace
// is stable under all group generators iff it is stable under these.
inline std::vector<SpMatrix> simple_root_operators(int g) {
    std::vector<SpMatrix> ops;
    for (int i = 1; i < g; ++i) {
        ops.push_back(detail::make_generator(g, GenKind::X, i, i + 1).mat.minus_identity());
        ops.push_back(detail::make_generator(g, GenKind::LowerX, i, i + 1).mat.minus_identity());
    }
    ops.push_back(detail::make_generator(g, GenKind::Y, g, 0).mat.minus_identity());
    ops.push_back(detail::make_generator(g, GenKind::LowerY, g, 0).mat.minus_identity());
    return ops;
}

// ---------------------------------------------------------------------------
// Functorial application of a matrix (group action or derivation action)
// ---------------------------------------------------------------------------

using SparseVec = std::vector<std::pair<int32_t, Rat>>;

namespace detail {

inline void accumulate(SparseVec& out, int32_t id, const Rat& v) {
    if (v.is_zero()) return;
    for (auto& e : out)
        if (e.first == id) {
            e.second += v;
            return;
        }
    out.push_back({id, v});
}

// Image of the basis element `id` of `bt` under the matrix m acting on H,
// either as a group element (multiplicative on slots) or as a derivation.
inline SparseVec apply_elem(const BasisTable& bt, const SpMatrix& m, int32_t id, bool derivation);

inline SparseVec apply_elem_tuple(const BasisTable& bt, const SpMatrix& m, int32_t id,
                                  bool derivation, bool strict) {
    const int k = bt.k;
    const int32_t* t = bt.tuple(id);
    SparseVec out;
    auto push_sorted = [&](std::vector<int32_t> tup, Rat coef) {
        if (strict) {
            int sign = 1;
            for (size_t x = 1; x < tup.size(); ++x)
                for (size_t y = x; y > 0 && tup[y] < tup[y - 1]; --y) {
                    std::swap(tup[y], tup[y - 1]);
                    sign = -sign;
                }
            for (size_t x = 0; x + 1 < tup.size(); ++x)
                if (tup[x] == tup[x + 1]) return;
            accumulate(out, bt.rank_of(tup.data()), Rat(sign) * coef);
        } else {
            std::sort(tup.begin(), tup.end());
            accumulate(out, bt.rank_of(tup.data()), coef);
        }
    };
    if (derivation) {
        for (int slot = 0; slot < k; ++slot) {
            SparseVec img = apply_elem(*bt.child_a, m, t[slot], true);
            for (const auto& [cid, cv] : img) {
                std::vector<int32_t> tup(t, t + k);
                tup[slot] = cid;
                push_sorted(std::move(tup), cv);
            }
        }
        return out;
    }
    std::vector<SparseVec> imgs(k);
    for (int slot = 0; slot < k; ++slot) imgs[slot] = apply_elem(*bt.child_a, m, t[slot], false);
    std::vector<int32_t> tup(k);
    auto rec = [&](auto&& self, int slot, Rat coef) -> void {
        if (slot == k) {
            push_sorted(tup, coef);
            return;
        }
        for (const auto& [cid, cv] : imgs[slot]) {
            tup[slot] = cid;
            self(self, slot + 1, coef * cv);
        }
    };
    rec(rec, 0, Rat(1));
    return out;
}

inline SparseVec apply_elem(const BasisTable& bt, const SpMatrix& m, int32_t id, bool derivation) {
    switch (bt.shape->kind) {
        case Shape::Kind::H: {
            SparseVec out;
            for (const auto& [row, v] : m.cols[id]) out.push_back({row, v});
            return out;
        }
        case Shape::Kind::Wedge:
            return apply_elem_tuple(bt, m, id, derivation, true);
        case Shape::Kind::Sym:
            return apply_elem_tuple(bt, m, id, derivation, false);
        case Shape::Kind::Tensor: {
            int ia = id / bt.child_b->dim, ib = id % bt.child_b->dim;
            SparseVec out;
            if (derivation) {
                for (const auto& [cid, cv] : apply_elem(*bt.child_a, m, ia, true))
                    accumulate(out, cid * bt.child_b->dim + ib, cv);
                for (const auto& [cid, cv] : apply_elem(*bt.child_b, m, ib, true))
                    accumulate(out, ia * bt.child_b->dim + cid, cv);
            } else {
                SparseVec va = apply_elem(*bt.child_a, m, ia, false);
                SparseVec vb = apply_elem(*bt.child_b, m, ib, false);
                for (const auto& [na, ca] : va)
                    for (const auto& [nb, cb] : vb)
                        accumulate(out, na * bt.child_b->dim + nb, ca * cb);
            }
            return out;
        }
        case Shape::Kind::Quot:
            return apply_elem(*bt.child_a, m, id, derivation);
    }
    return {};
}

}  // namespace detail

// Per-weight reduced echelon data for a distinguished subspace of a shape
// (the kernels of the named quotients, and the kernel of the projection
// wedge^2 wedge^3 H -> wedge^2 ((wedge^3 H)/H)).
struct WeightGradedSubspace {
    const BasisTable* bt = nullptr;
    std::map<int32_t, RrefMatrix> by_block;

    explicit WeightGradedSubspace(const BasisTable& table) : bt(&table) {}

    long long rank() const {
        long long s = 0;
        for (const auto& [b, r] : by_block) s += r.rank();
        return s;
    }
    int block_rank(int32_t block) const {
        auto it = by_block.find(block);
        return it == by_block.end() ? 0 : it->second.rank();
    }
    bool insert_dense(int32_t block, std::vector<Rat> v) {
        auto it = by_block.find(block);
        if (it == by_block.end())
            it = by_block.emplace(block, RrefMatrix(static_cast<int>(bt->blocks[block].ids.size())))
                     .first;
        return it->second.insert(std::move(v));
    }
    bool insert(const MultiVector& mv) {
        bool grew = false;
        std::map<int32_t, std::vector<Rat>> dense;
        for (const auto& [id, v] : mv.c) {
            int32_t b = bt->id2block[id];
            auto& vec = dense[b];
            if (vec.empty()) vec.assign(bt->blocks[b].ids.size(), Rat(0));
            vec[bt->id2pos[id]] = v;
        }
        for (auto& [b, vec] : dense) grew |= insert_dense(b, std::move(vec));
        return grew;
    }
    // Reduce a multivector to its canonical representative modulo this
    // subspace.
    MultiVector reduce(const MultiVector& mv) const {
        std::map<int32_t, std::vector<Rat>> dense;
        for (const auto& [id, v] : mv.c) {
            int32_t b = bt->id2block[id];
            auto& vec = dense[b];
            if (vec.empty()) vec.assign(bt->blocks[b].ids.size(), Rat(0));
            vec[bt->id2pos[id]] = v;
        }
        MultiVector out(mv.shape, mv.g);
        for (auto& [b, vec] : dense) {
            auto it = by_block.find(b);
            if (it != by_block.end()) it->second.reduce(vec);
            const auto& ids = bt->blocks[b].ids;
            for (size_t p = 0; p < vec.size(); ++p)
                if (!vec[p].is_zero()) out.c.emplace(ids[p], vec[p]);
        }
        return out;
    }
    bool contains(const MultiVector& mv) const { return reduce(mv).is_zero(); }
};

// ---------------------------------------------------------------------------
// Quotient kernels
// ---------------------------------------------------------------------------

inline MultiVector embed_h_in_wedge3(const MultiVector& h);  // h ^ omega

// x^y^z -> x(x)(y^z) - y(x)(x^z) + z(x)(x^y) in H (x) wedge^2 H
inline MultiVector embed_wedge3_in_h_wedge2(int g, const MultiVector& w3);

namespace detail {

inline std::vector<MultiVector> kernel_generators(const std::string& name, int g) {
    std::vector<MultiVector> out;
    if (name == "H-in-wedge3") {
        for (int p = 0; p < 2 * g; ++p) out.push_back(embed_h_in_wedge3(h_basis(g, p)));
        return out;
    }
    if (name == "wedge4-in-sym2wedge2") {
        const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
        const BasisTable& s2 = basis_table(shape_sym2_wedge2(), g);
        auto pair_rank = [&](int32_t x, int32_t y) {
            int32_t t[2] = {std::min(x, y), std::max(x, y)};
            return s2.rank_of(t);
        };
        auto w2_rank = [&](int p, int q) {
            int32_t t[2] = {static_cast<int32_t>(std::min(p, q)),
                            static_cast<int32_t>(std::max(p, q))};
            return w2.rank_of(t);
        };
        for (int p = 0; p < 2 * g; ++p)
            for (int q = p + 1; q < 2 * g; ++q)
                for (int r = q + 1; r < 2 * g; ++r)
                    for (int s = r + 1; s < 2 * g; ++s) {
                        MultiVector v(shape_sym2_wedge2(), g);
                        v.add(pair_rank(w2_rank(p, q), w2_rank(r, s)), Rat(1));
                        v.add(pair_rank(w2_rank(p, r), w2_rank(q, s)), Rat(-1));
                        v.add(pair_rank(w2_rank(p, s), w2_rank(q, r)), Rat(1));
                        out.push_back(std::move(v));
                    }
        return out;
    }
    if (name == "HxWedge3-in-HHxWedge2") {
        const BasisTable& w3 = basis_table(shape_wedge_h(3), g);
        const BasisTable& hw2 = basis_table(shape_h_wedge2(), g);
        for (int p = 0; p < 2 * g; ++p)
            for (int32_t t = 0; t < w3.dim; ++t) {
                MultiVector w3v(shape_wedge_h(3), g);
                w3v.add(t, Rat(1));
                MultiVector inner = embed_wedge3_in_h_wedge2(g, w3v);
                MultiVector v(shape_hh_wedge2(), g);
                for (const auto& [id, cv] : inner.c)
                    v.add(p * hw2.dim + id, cv);
                out.push_back(std::move(v));
            }
        return out;
    }
    if (name == "H-wedge-wedge3") {
        // subspace H ^ (wedge^3 H) inside wedge^2 wedge^3 H
        const BasisTable& w3 = basis_table(shape_wedge_h(3), g);
        const BasisTable& ww = basis_table(shape_wedge2_wedge3(), g);
        for (int p = 0; p < 2 * g; ++p) {
            MultiVector hw = embed_h_in_wedge3(h_basis(g, p));
            for (int32_t t = 0; t < w3.dim; ++t) {
                MultiVector v(shape_wedge2_wedge3(), g);
                for (const auto& [id, cv] : hw.c) {
                    if (id == t) continue;
                    int32_t tup[2] = {std::min(id, t), std::max(id, t)};
                    v.add(ww.rank_of(tup), id < t ? cv : Rat(-1) * cv);
                }
                if (!v.is_zero()) out.push_back(std::move(v));
            }
        }
        return out;
    }
    throw ShapeMismatch("unknown quotient kernel: " + name);
}

}  // namespace detail

inline const WeightGradedSubspace& quot_kernel(const ShapePtr& ambient, const std::string& name,
                                               int g) {
    static std::map<std::pair<std::string, int>, std::unique_ptr<WeightGradedSubspace>> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto key = std::make_pair(ambient->str() + "|" + name, g);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    const BasisTable& bt = basis_table(ambient, g);
    auto ker = std::make_unique<WeightGradedSubspace>(bt);
    for (const MultiVector& v : detail::kernel_generators(name, g)) ker->insert(v);
    return *cache.emplace(key, std::move(ker)).first->second;
}

// Canonical representative of a multivector in a quotient shape.
inline MultiVector reduce_quot(const MultiVector& mv) {
    if (mv.shape->kind != Shape::Kind::Quot) return mv;
    const WeightGradedSubspace& ker = quot_kernel(mv.shape->a, mv.shape->quot_name, mv.g);
    MultiVector red = ker.reduce(mv);
    red.shape = mv.shape;
    return red;
}

// Group or derivation action on a multivector; quotient shapes act on the
// representative and reduce afterwards.
inline MultiVector apply_matrix(const SpMatrix& m, const MultiVector& v, bool derivation) {
    const BasisTable& bt = basis_table(v.shape, v.g);
    MultiVector out(v.shape, v.g);
    for (const auto& [id, cv] : v.c)
        for (const auto& [nid, nv] : detail::apply_elem(bt, m, id, derivation))
            out.add(nid, cv * nv);
    if (v.shape->kind == Shape::Kind::Quot) out = reduce_quot(out);
    return out;
}

inline MultiVector apply_generator(const GroupGenerator& gen, const MultiVector& v) {
    return apply_matrix(gen.mat, v, false);
}

// ---------------------------------------------------------------------------
// The named contractions and embeddings
// ---------------------------------------------------------------------------

inline MultiVector embed_h_in_wedge3(const MultiVector& h) {
    int g = h.g;
    MultiVector out(shape_wedge_h(3), g);
    const BasisTable& bt = basis_table(shape_wedge_h(3), g);
    for (const auto& [p, cv] : h.c) {
        for (int i = 1; i <= g; ++i) {
            int ai = SymplecticSpace::a(i), bi = SymplecticSpace::b(i);
            if (p == ai || p == bi) continue;  // e_p ^ a_i ^ b_i with p among them vanishes
            int32_t tup[3];
            int sign;
            if (p < ai) {
                tup[0] = p;
                tup[1] = ai;
                tup[2] = bi;
                sign = 1;
            } else {
                tup[0] = ai;
                tup[1] = bi;
                tup[2] = p;
                sign = 1;  // moving e_p across a 2-vector keeps the sign
            }
            out.add(bt.rank_of(tup), Rat(sign) * cv);
        }
    }
    return out;
}

// q_k: signed double contraction wedge^{k+2} H -> wedge^k H.
inline MultiVector q_contraction(const MultiVector& v) {
    if (v.shape->kind != Shape::Kind::Wedge || v.shape->a->kind != Shape::Kind::H ||
        v.shape->power < 2)
        throw ShapeMismatch("q_k expects wedge^{k+2} H");
    int g = v.g;
    int k = v.shape->power - 2;
    if (k == 0) throw ShapeMismatch("q_0 output is a scalar; not needed");
    const BasisTable& src = basis_table(v.shape, g);
    ShapePtr out_shape = k == 1 ? Shape::h() : shape_wedge_h(k);
    const BasisTable& dst = basis_table(out_shape, g);
    MultiVector out(out_shape, g);
    std::vector<int32_t> rest(k);
    for (const auto& [id, cv] : v.c) {
        const int32_t* t = src.tuple(id);
        for (int i = 0; i < k + 2; ++i)
            for (int j = i + 1; j < k + 2; ++j) {
                int f = SymplecticSpace::form(t[i], t[j]);
                if (!f) continue;
                int sign = ((i + j + 1) % 2 == 0) ? 1 : -1;
                int at = 0;
                for (int s = 0; s < k + 2; ++s)
                    if (s != i && s != j) rest[at++] = t[s];
                int32_t target = k == 1 ? rest[0] : dst.rank_of(rest.data());
                out.add(target, Rat(sign * f) * cv);
            }
    }
    return out;
}

// q: wedge^3 H -> H,  q(h1^h2^h3) = w(h1,h2)h3 - w(h1,h3)h2 + w(h2,h3)h1.
inline MultiVector q3_to_h(const MultiVector& v) {
    if (v.shape->str() != shape_wedge_h(3)->str()) throw ShapeMismatch("q expects wedge^3 H");
    const BasisTable& src = basis_table(v.shape, v.g);
    MultiVector out(Shape::h(), v.g);
    for (const auto& [id, cv] : v.c) {
        const int32_t* t = src.tuple(id);
        int f01 = SymplecticSpace::form(t[0], t[1]);
        int f02 = SymplecticSpace::form(t[0], t[2]);
        int f12 = SymplecticSpace::form(t[1], t[2]);
        if (f01) out.add(t[2], Rat(f01) * cv);
        if (f02) out.add(t[1], Rat(-f02) * cv);
        if (f12) out.add(t[0], Rat(f12) * cv);
    }
    return out;
}

// iota: H -> wedge^3 H, h -> h ^ omega (alias with the embedding above).
inline MultiVector iota(const MultiVector& h) { return embed_h_in_wedge3(h); }

// p: wedge^3 H -> (wedge^3 H)/H (canonical representative).
inline MultiVector proj_p(const MultiVector& w3) {
    MultiVector v = w3;
    v.shape = shape_quot_wedge3_h();
    return reduce_quot(v);
}

// sigma: (wedge^3 H)/H -> wedge^3 H; works on any lift of the class.
inline MultiVector section_sigma(const MultiVector& cls) {
    MultiVector lift = cls;
    lift.shape = shape_wedge_h(3);
    if (cls.g < 2) throw GenusTooSmall("section needs g >= 2");
    MultiVector corr = embed_h_in_wedge3(q3_to_h(lift));
    return lift - Rat(1, cls.g - 1) * corr;
}

// wedge of two elements of wedge^3 H inside wedge^2 wedge^3 H.
inline MultiVector wedge_pair(const MultiVector& x, const MultiVector& y) {
    if (x.shape->str() != shape_wedge_h(3)->str() || y.shape->str() != x.shape->str() ||
        x.g != y.g)
        throw ShapeMismatch("wedge_pair expects two wedge^3 H vectors");
    const BasisTable& ww = basis_table(shape_wedge2_wedge3(), x.g);
    MultiVector out(shape_wedge2_wedge3(), x.g);
    for (const auto& [p, cp] : x.c)
        for (const auto& [q, cq] : y.c) {
            if (p == q) continue;
            int32_t tup[2] = {std::min(p, q), std::max(p, q)};
            out.add(ww.rank_of(tup), p < q ? cp * cq : Rat(-1) * cp * cq);
        }
    return out;
}

// phi: wedge^2 wedge^3 H -> wedge^6 H by concatenating the two 3-vectors.
inline MultiVector phi_to_wedge6(const MultiVector& v) {
    if (v.shape->str() != shape_wedge2_wedge3()->str()) throw ShapeMismatch("phi expects wedge^2 wedge^3 H");
    int g = v.g;
    const BasisTable& ww = basis_table(shape_wedge2_wedge3(), g);
    const BasisTable& w3 = basis_table(shape_wedge_h(3), g);
    const BasisTable& w6 = basis_table(shape_wedge_h(6), g);
    MultiVector out(shape_wedge_h(6), g);
    for (const auto& [id, cv] : v.c) {
        const int32_t* pq = ww.tuple(id);
        const int32_t* t1 = w3.tuple(pq[0]);
        const int32_t* t2 = w3.tuple(pq[1]);
        int32_t tup[6] = {t1[0], t1[1], t1[2], t2[0], t2[1], t2[2]};
        int sign = 1;
        bool zero = false;
        for (int x = 1; x < 6 && !zero; ++x)
            for (int y = x; y > 0; --y) {
                if (tup[y] == tup[y - 1]) {
                    zero = true;
                    break;
                }
                if (tup[y] < tup[y - 1]) {
                    std::swap(tup[y], tup[y - 1]);
                    sign = -sign;
                } else {
                    break;
                }
            }
        if (zero) continue;
        out.add(w6.rank_of(tup), Rat(sign) * cv);
    }
    return out;
}

// psi = wedge^2 q: wedge^2 wedge^3 H -> wedge^2 H.
inline MultiVector psi_to_wedge2(const MultiVector& v) {
    if (v.shape->str() != shape_wedge2_wedge3()->str()) throw ShapeMismatch("psi expects wedge^2 wedge^3 H");
    int g = v.g;
    const BasisTable& ww = basis_table(shape_wedge2_wedge3(), g);
    const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
    MultiVector out(shape_wedge_h(2), g);
    for (const auto& [id, cv] : v.c) {
        const int32_t* pq = ww.tuple(id);
        MultiVector x(shape_wedge_h(3), g), y(shape_wedge_h(3), g);
        x.add(pq[0], Rat(1));
        y.add(pq[1], Rat(1));
        MultiVector qx = q3_to_h(x), qy = q3_to_h(y);
        for (const auto& [p, cp] : qx.c)
            for (const auto& [q, cq] : qy.c) {
                if (p == q) continue;
                int32_t tup[2] = {std::min(p, q), std::max(p, q)};
                out.add(w2.rank_of(tup), (p < q ? cp * cq : Rat(-1) * cp * cq) * cv);
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certifying vectors (used to pin down irreducible factors of the quotient)
// ---------------------------------------------------------------------------

// q_4 . phi . wedge^2 sigma applied to (1-g) (class(a1^a2^a3) ^ class(a4^a5^b5)).
inline MultiVector certify1(int g) {
    if (g < 6) throw GenusTooSmall("certify1 needs g >= 6");
    SymplecticSpace sp(g);
    MultiVector x = wedge_vectors({h_basis(g, sp.a(1)), h_basis(g, sp.a(2)), h_basis(g, sp.a(3))});
    MultiVector y = wedge_vectors({h_basis(g, sp.a(4)), h_basis(g, sp.a(5)), h_basis(g, sp.b(5))});
    MultiVector scaled = Rat(1 - g) * wedge_pair(section_sigma(x), section_sigma(y));
    return q_contraction(phi_to_wedge6(scaled));
}

// q_2 . q_4 . phi . wedge^2 sigma applied to (1-g)^2 (class(a1^a4^b4) ^ class(a2^a3^b3)).
inline MultiVector certify2(int g) {
    if (g < 6) throw GenusTooSmall("certify2 needs g >= 6");
    SymplecticSpace sp(g);
    MultiVector x = wedge_vectors({h_basis(g, sp.a(1)), h_basis(g, sp.a(4)), h_basis(g, sp.b(4))});
    MultiVector y = wedge_vectors({h_basis(g, sp.a(2)), h_basis(g, sp.a(3)), h_basis(g, sp.b(3))});
    MultiVector scaled =
        Rat(1 - g) * Rat(1 - g) * wedge_pair(section_sigma(x), section_sigma(y));
    return q_contraction(q_contraction(phi_to_wedge6(scaled)));
}

// ---------------------------------------------------------------------------
// Highest weight vectors
// ---------------------------------------------------------------------------

inline std::optional<Weight> is_highest_weight_vector(const MultiVector& v) {
    if (v.is_zero()) throw ZeroVector("the zero vector is not a weight vector");
    const BasisTable& bt = basis_table(v.shape, v.g);
    const Weight& w = bt.weights[v.c.begin()->first];
    for (const auto& [id, cv] : v.c)
        if (bt.weights[id] != w) return std::nullopt;
    for (const GroupGenerator& gen : upper_generators(v.g))
        if (!(apply_generator(gen, v) == v)) return std::nullopt;
    return w;
}

// ---------------------------------------------------------------------------
// Span closure under the symplectic group
// ---------------------------------------------------------------------------

// The smallest subspace containing the seeds that is stable under all upper
// and lower elementary generators.  Stability under those unipotent
// generators is equivalent to stability under their nilpotent logarithms,
// which are weight-homogeneous, so the echelon basis lives in per-weight
// blocks and the reduced form is canonical.
class SpSubspace {
  public:
    SpSubspace(ShapePtr shape, int g)
        : shape_(std::move(shape)),
          g_(g),
          bt_(&basis_table(shape_, g)),
          rows_(*bt_),
          kernel_(shape_->kind == Shape::Kind::Quot
                      ? &quot_kernel(shape_->a, shape_->quot_name, g)
                      : nullptr) {}

    // A subspace of `shape` viewed modulo an explicit weight-graded kernel
    // (used for projecting the boundary image to the closed-surface case).
    SpSubspace(ShapePtr shape, int g, const WeightGradedSubspace* kernel)
        : shape_(std::move(shape)), g_(g), bt_(&basis_table(shape_, g)), rows_(*bt_), kernel_(kernel) {}

    const BasisTable& table() const { return *bt_; }
    int genus() const { return g_; }

    bool insert(const MultiVector& mv) {
        MultiVector use = kernel_ ? kernel_->reduce(mv) : mv;
        bool grew = false;
        std::map<int32_t, std::vector<Rat>> dense;
        for (const auto& [id, v] : use.c) {
            int32_t b = bt_->id2block[id];
            auto& vec = dense[b];
            if (vec.empty()) vec.assign(bt_->blocks[b].ids.size(), Rat(0));
            vec[bt_->id2pos[id]] = v;
        }
        for (auto& [b, vec] : dense) grew |= insert_block(b, std::move(vec));
        return grew;
    }

    long long dim() const { return rows_.rank(); }

    FormalCharacter character() const {
        FormalCharacter ch(GroupFamily::sp(g_));
        for (const auto& [b, r] : rows_.by_block)
            ch.add(bt_->blocks[b].weight, BigInt(r.rank()));
        return ch;
    }

    bool contains(const MultiVector& mv) const {
        MultiVector use = kernel_ ? kernel_->reduce(mv) : mv;
        std::map<int32_t, std::vector<Rat>> dense;
        for (const auto& [id, v] : use.c) {
            int32_t b = bt_->id2block[id];
            auto& vec = dense[b];
            if (vec.empty()) vec.assign(bt_->blocks[b].ids.size(), Rat(0));
            vec[bt_->id2pos[id]] = v;
        }
        for (auto& [b, vec] : dense) {
            auto it = rows_.by_block.find(b);
            if (it == rows_.by_block.end()) return false;
            if (!it->second.contains(std::move(vec))) return false;
        }
        return true;
    }

    // Close under the symplectic group.
    void close() {
        std::vector<SpMatrix> ops = simple_root_operators(g_);
        // root of each operator, to locate target blocks cheaply
        std::vector<Weight> roots;
        for (const auto& op : ops) {
            Weight r(g_, 0);
            bool found = false;
            for (int col = 0; col < 2 * g_ && !found; ++col)
                for (const auto& [row, v] : op.cols[col]) {
                    SymplecticSpace sp(g_);
                    Weight wr = sp.basis_weight(row), wc = sp.basis_weight(col);
                    for (int i = 0; i < g_; ++i) r[i] = wr[i] - wc[i];
                    found = true;
                    break;
                }
            roots.push_back(r);
        }
        while (!queue_.empty()) {
            auto [block, vec] = std::move(queue_.front());
            queue_.pop_front();
            const auto& ids = bt_->blocks[block].ids;
            for (size_t oi = 0; oi < ops.size(); ++oi) {
                Weight target = bt_->blocks[block].weight;
                for (int i = 0; i < g_; ++i) target[i] += roots[oi][i];
                auto bit = bt_->block_of_weight.find(target);
                if (bit == bt_->block_of_weight.end()) continue;
                int32_t tb = bit->second;
                if (block_full(tb)) continue;
                std::vector<Rat> img(bt_->blocks[tb].ids.size(), Rat(0));
                bool nonzero = false;
                for (size_t pos = 0; pos < vec.size(); ++pos) {
                    if (vec[pos].is_zero()) continue;
                    for (const auto& [nid, nv] :
                         detail::apply_elem(*bt_, ops[oi], ids[pos], true)) {
                        img[bt_->id2pos[nid]] += vec[pos] * nv;
                        nonzero = true;
                    }
                }
                if (nonzero) insert_block(tb, std::move(img));
            }
        }
    }

    // For the projection to a quotient: per-block ranks of the image.
    FormalCharacter character_mod(const WeightGradedSubspace& ker) const {
        FormalCharacter ch(GroupFamily::sp(g_));
        for (const auto& [b, r] : rows_.by_block) {
            auto kit = ker.by_block.find(b);
            if (kit == ker.by_block.end()) {
                if (r.rank()) ch.add(bt_->blocks[b].weight, BigInt(r.rank()));
                continue;
            }
            RrefMatrix work = kit->second;
            int grown = 0;
            for (const auto& row : r.rows)
                if (work.insert(row)) ++grown;
            if (grown) ch.add(bt_->blocks[b].weight, BigInt(grown));
        }
        return ch;
    }

    bool stable_under(const SpMatrix& m) const {
        for (const auto& [b, r] : rows_.by_block) {
            const auto& ids = bt_->blocks[b].ids;
            for (const auto& row : r.rows) {
                MultiVector mv(shape_, g_);
                for (size_t p = 0; p < row.size(); ++p)
                    if (!row[p].is_zero()) mv.c.emplace(ids[p], row[p]);
                if (!contains(apply_matrix(m, mv, false))) return false;
            }
        }
        return true;
    }

  private:
    ShapePtr shape_;
    int g_;
    const BasisTable* bt_;
    WeightGradedSubspace rows_;
    const WeightGradedSubspace* kernel_;
    std::deque<std::pair<int32_t, std::vector<Rat>>> queue_;

    bool block_full(int32_t b) const {
        int cap = static_cast<int>(bt_->blocks[b].ids.size());
        if (kernel_) cap -= kernel_->block_rank(b);
        return rows_.block_rank(b) >= cap;
    }

    bool insert_block(int32_t b, std::vector<Rat> vec) {
        if (kernel_) {
            auto kit = kernel_->by_block.find(b);
            if (kit != kernel_->by_block.end()) kit->second.reduce(vec);
        }
        if (block_full(b)) return false;
        auto it = rows_.by_block.find(b);
        if (it == rows_.by_block.end())
            it = rows_.by_block
                     .emplace(b, RrefMatrix(static_cast<int>(bt_->blocks[b].ids.size())))
                     .first;
        int at = it->second.insert_where(std::move(vec));
        if (at < 0) return false;
        // Queue a snapshot of the freshly inserted row; later back-eliminations
        // may rewrite it in place, but any spanning representative works.
        queue_.push_back({b, it->second.rows[at]});
        return true;
    }
};

inline SpSubspace sp_span_closure(const std::vector<MultiVector>& seeds) {
    if (seeds.empty()) throw Error("sp_span_closure needs at least one seed");
    SpSubspace span(seeds[0].shape, seeds[0].g);
    for (const auto& s : seeds) {
        if (s.shape->str() != seeds[0].shape->str() || s.g != seeds[0].g)
            throw ShapeMismatch("span seeds must share one shape");
        span.insert(s);
    }
    span.close();
    return span;
}

// ---------------------------------------------------------------------------
// Embeddings into H (x) wedge^2 H and friends (used by the Johnson module)
// ---------------------------------------------------------------------------

inline MultiVector embed_wedge3_in_h_wedge2(int g, const MultiVector& w3) {
    const BasisTable& src = basis_table(shape_wedge_h(3), g);
    const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
    MultiVector out(shape_h_wedge2(), g);
    for (const auto& [id, cv] : w3.c) {
        const int32_t* t = src.tuple(id);
        // h1^h2^h3 -> h1(x)(h2^h3) - h2(x)(h1^h3) + h3(x)(h1^h2)
        struct Term {
            int h;
            int x, y;
            int sign;
        } terms[3] = {{t[0], t[1], t[2], 1}, {t[1], t[0], t[2], -1}, {t[2], t[0], t[1], 1}};
        for (const auto& tm : terms) {
            int32_t tup[2] = {static_cast<int32_t>(tm.x), static_cast<int32_t>(tm.y)};
            out.add(tm.h * w2.dim + w2.rank_of(tup), Rat(tm.sign) * cv);
        }
    }
    return out;
}

inline std::string MultiVector::str() const {
    if (is_zero()) return "0";
    const BasisTable& bt = basis_table(shape, g);
    std::string s;
    auto name_of = [&](const BasisTable& t, int32_t id, auto&& self) -> std::string {
        switch (t.shape->kind) {
            case Shape::Kind::H:
                return SymplecticSpace::basis_name(id);
            case Shape::Kind::Wedge:
            case Shape::Kind::Sym: {
                std::string sep = t.shape->kind == Shape::Kind::Wedge ? "^" : ".";
                std::string r;
                const int32_t* tup = t.tuple(id);
                for (int j = 0; j < t.k; ++j) {
                    if (j) r += sep;
                    std::string part = self(*t.child_a, tup[j], self);
                    if (t.child_a->shape->kind != Shape::Kind::H) part = "(" + part + ")";
                    r += part;
                }
                return r;
            }
            case Shape::Kind::Tensor: {
                int ia = id / t.child_b->dim, ib = id % t.child_b->dim;
                std::string left = self(*t.child_a, ia, self);
                std::string right = self(*t.child_b, ib, self);
                if (t.child_a->shape->kind != Shape::Kind::H) left = "(" + left + ")";
                if (t.child_b->shape->kind != Shape::Kind::H) right = "(" + right + ")";
                return left + "(x)" + right;
            }
            case Shape::Kind::Quot:
                return self(*t.child_a, id, self);
        }
        return "?";
    };
    bool first = true;
    for (const auto& [id, v] : c) {
        std::string coeff = v.to_string();
        if (first) {
            s += coeff == "1" ? "" : (coeff == "-1" ? "-" : coeff + "*");
            first = false;
        } else if (v.num() > 0) {
            s += " + " + (coeff == "1" ? "" : coeff + "*");
        } else {
            std::string pos = (Rat(-1) * v).to_string();
            s += " - " + (pos == "1" ? "" : pos + "*");
        }
        s += name_of(bt, id, name_of);
    }
    return s;
}

}  // namespace replab
