#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "replab/free_lie.hpp"
#include "replab/symp_linalg.hpp"

namespace replab {

// Closed-form first and second Johnson homomorphism values, the bracket
// vanishing check, image spans, and the cup-product image computation.

// ---------------------------------------------------------------------------
// Generator specifications
// ---------------------------------------------------------------------------

struct GeneratorSpec {
    enum class Kind { BoundingPair, SIP, SepTwist, SepTwistGenus };
    Kind kind;
    int g = 0;
    MultiVector x;                                            // bounding pair class [x]
    std::vector<std::pair<MultiVector, MultiVector>> pairs;   // symplectic list
    std::vector<MultiVector> boundaries;                      // SIP boundary classes
    int genus_h = 0;

    static GeneratorSpec bounding_pair(int g, MultiVector xcls,
                                       std::vector<std::pair<MultiVector, MultiVector>> v) {
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) {
                Rat expect = i == j ? Rat(1) : Rat(0);
                if (omega_form(v[i].first, v[j].second) != expect ||
                    omega_form(v[i].first, v[j].first) != Rat(0) ||
                    omega_form(v[i].second, v[j].second) != Rat(0))
                    throw InvalidSpec("bounding pair: {u_i, v_i} is not a symplectic set");
            }
        for (const auto& [u, w] : v)
            if (omega_form(xcls, u) != Rat(0) || omega_form(xcls, w) != Rat(0))
                throw InvalidSpec("bounding pair: [x] must be orthogonal to the u_i, v_i");
        GeneratorSpec s{Kind::BoundingPair, g, std::move(xcls), std::move(v), {}, 0};
        return s;
    }
    static GeneratorSpec sip(int g, MultiVector d1, MultiVector d2, MultiVector d3) {
        GeneratorSpec s{Kind::SIP, g, MultiVector(Shape::h(), g), {}, {}, 0};
        s.boundaries = {std::move(d1), std::move(d2), std::move(d3)};
        return s;
    }
    static GeneratorSpec sep_twist(int g, std::vector<std::pair<MultiVector, MultiVector>> v) {
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) {
                Rat expect = i == j ? Rat(1) : Rat(0);
                if (omega_form(v[i].first, v[j].second) != expect ||
                    omega_form(v[i].first, v[j].first) != Rat(0) ||
                    omega_form(v[i].second, v[j].second) != Rat(0))
                    throw NotSymplecticSet("separating twist support is not a symplectic set");
            }
        GeneratorSpec s{Kind::SepTwist, g, MultiVector(Shape::h(), g), std::move(v), {}, 0};
        return s;
    }
    static GeneratorSpec sep_twist_genus(int g, int h) {
        if (h < 0 || h > g) throw InvalidSpec("separating twist genus out of range");
        std::vector<std::pair<MultiVector, MultiVector>> v;
        for (int i = 1; i <= h; ++i)
            v.push_back({h_basis(g, SymplecticSpace::a(i)), h_basis(g, SymplecticSpace::b(i))});
        GeneratorSpec s{Kind::SepTwistGenus, g, MultiVector(Shape::h(), g), std::move(v), {}, h};
        return s;
    }

    // Transport the defining homology data by a symplectic matrix.
    GeneratorSpec transformed(const SpMatrix& m) const {
        GeneratorSpec out = *this;
        auto mv = [&](const MultiVector& v) { return apply_matrix(m, v, false); };
        out.x = kind == Kind::BoundingPair ? mv(x) : out.x;
        for (auto& [u, v] : out.pairs) {
            u = mv(u);
            v = mv(v);
        }
        for (auto& b : out.boundaries) b = mv(b);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Johnson values
// ---------------------------------------------------------------------------

struct JohnsonValue {
    int level = 1;       // 1 or 2
    MultiVector value;   // level 1: wedge^3 H; level 2: the tau_2 quotient
};

// tau_1: bounding pair -> [x] ^ omega_V; simply intersecting pair ->
// d1 ^ d2 ^ d3; separating twist -> 0.
inline JohnsonValue tau1(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::BoundingPair: {
            MultiVector acc(shape_wedge_h(3), spec.g);
            for (const auto& [u, v] : spec.pairs)
                acc = acc + wedge_vectors({spec.x, u, v});
            return {1, acc};
        }
        case GeneratorSpec::Kind::SIP:
            return {1, wedge_vectors({spec.boundaries[0], spec.boundaries[1], spec.boundaries[2]})};
        case GeneratorSpec::Kind::SepTwist:
        case GeneratorSpec::Kind::SepTwistGenus:
            return {1, MultiVector(shape_wedge_h(3), spec.g)};
    }
    throw InvalidSpec("unknown generator kind");
}

// ---------------------------------------------------------------------------
// tau_1 as a map H -> wedge^2 H
// ---------------------------------------------------------------------------

struct Tau1Map {
    int g = 0;
    std::vector<MultiVector> columns;  // image of each standard basis vector

    MultiVector apply(const MultiVector& u) const {
        MultiVector out(shape_wedge_h(2), g);
        for (const auto& [p, cv] : u.c) out = out + cv * columns[p];
        return out;
    }
};

// The omega-contraction of the embedded H (x) wedge^2 H form of tau_1,
// consistency-checked against the closed bounding-pair formulas: u in U goes
// to -[x]^u, the primed subspace dies, and the integral dual h goes to
// -omega_V.
inline Tau1Map tau1_as_map(const GeneratorSpec& spec, const MultiVector& h_dual) {
    if (spec.kind != GeneratorSpec::Kind::BoundingPair)
        throw InvalidSpec("tau1_as_map expects a bounding pair");
    if (omega_form(h_dual, spec.x) != Rat(1))
        throw InvalidSpec("h is not dual to [x]: omega(h, [x]) != 1");
    for (const auto& [u, v] : spec.pairs)
        if (omega_form(h_dual, u) != Rat(0) || omega_form(h_dual, v) != Rat(0))
            throw InvalidSpec("h must be orthogonal to the symplectic list");
    int g = spec.g;
    MultiVector val = tau1(spec).value;
    MultiVector emb = embed_wedge3_in_h_wedge2(g, val);
    const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
    Tau1Map out;
    out.g = g;
    out.columns.assign(2 * g, MultiVector(shape_wedge_h(2), g));
    for (const auto& [id, cv] : emb.c) {
        int p = id / w2.dim;       // the H tensor factor
        int kappa = id % w2.dim;   // the wedge^2 factor
        // x (x) kappa acts on u by omega(x, u) kappa
        for (int u = 0; u < 2 * g; ++u) {
            int f = SymplecticSpace::form(p, u);
            if (f) out.columns[u].add(kappa, Rat(f) * cv);
        }
    }
    // consistency: the closed formulas of the bounding-pair lemma
    for (const auto& [u, v] : spec.pairs) {
        MultiVector mu = out.apply(u);
        if (!(mu == Rat(-1) * wedge_vectors({spec.x, u})))
            throw Error("tau1_as_map: image of u disagrees with -[x]^u");
        MultiVector mv2 = out.apply(v);
        if (!(mv2 == Rat(-1) * wedge_vectors({spec.x, v})))
            throw Error("tau1_as_map: image of v disagrees with -[x]^v");
    }
    MultiVector omega_v(shape_wedge_h(2), g);
    for (const auto& [u, v] : spec.pairs) omega_v = omega_v + wedge_vectors({u, v});
    if (!(out.apply(h_dual) == Rat(-1) * omega_v))
        throw Error("tau1_as_map: image of the dual disagrees with -omega_V");
    // the omega-complement of span(V, x, h) maps to zero
    std::vector<std::vector<Rat>> pairing;
    auto add_row = [&](const MultiVector& s) {
        std::vector<Rat> row(2 * g, Rat(0));
        for (int p = 0; p < 2 * g; ++p)
            for (const auto& [q, cv] : s.c) {
                int f = SymplecticSpace::form(q, p);
                if (f) row[p] += Rat(f) * cv;
            }
        pairing.push_back(std::move(row));
    };
    for (const auto& [u, v] : spec.pairs) {
        add_row(u);
        add_row(v);
    }
    add_row(spec.x);
    add_row(h_dual);
    for (const auto& w : nullspace(pairing, 2 * g)) {
        MultiVector cvec(Shape::h(), g);
        for (int p = 0; p < 2 * g; ++p) cvec.add(p, w[p]);
        if (!out.apply(cvec).is_zero())
            throw Error("tau1_as_map: the primed subspace does not map to zero");
    }
    return out;
}

// ---------------------------------------------------------------------------
// tau_2 of separating twists
// ---------------------------------------------------------------------------

// The class of -omega_V (x) omega_V in (H^{x2} (x) wedge^2 H)/(H (x) wedge^3 H),
// with the first wedge^2 H factor expanded as u (x) v - v (x) u.
inline JohnsonValue tau2_septwist(const GeneratorSpec& spec) {
    if (spec.kind != GeneratorSpec::Kind::SepTwist &&
        spec.kind != GeneratorSpec::Kind::SepTwistGenus)
        throw InvalidSpec("tau2_septwist expects a separating twist spec");
    int g = spec.g;
    const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
    MultiVector omega_v(shape_wedge_h(2), g);
    for (const auto& [u, v] : spec.pairs) omega_v = omega_v + wedge_vectors({u, v});
    MultiVector out(shape_quot_tau2(), g);
    for (const auto& [u, v] : spec.pairs) {
        for (const auto& [p, cu] : u.c)
            for (const auto& [q, cv] : v.c)
                for (const auto& [w, cw] : omega_v.c) {
                    // -(u (x) v - v (x) u) (x) omega_V
                    out.add((p * 2 * g + q) * w2.dim + w, Rat(-1) * cu * cv * cw);
                    out.add((q * 2 * g + p) * w2.dim + w, cu * cv * cw);
                }
    }
    return {2, reduce_quot(out)};
}

// ---------------------------------------------------------------------------
// Bracket vanishing
// ---------------------------------------------------------------------------

namespace detail {

// Letters are 1-based basis indices of H.
inline TreePtr leaf_of(int p) { return BracketTree::leaf(p + 1); }

}  // namespace detail

// True iff the image under the Lie bracket map H (x) FLie_{d+1} -> FLie_{d+2}
// vanishes.  Level-1 values in wedge^3 H are first embedded into
// H (x) wedge^2 H; level-2 classes may be handed over by any representative
// since the quotient kernel maps into the Jacobi relations.
inline bool check_bracket(const JohnsonValue& jv) {
    int g = jv.value.g;
    TensorVector image;
    image.degree = jv.level + 2;
    if (jv.level == 1) {
        MultiVector emb = jv.value.shape->str() == shape_h_wedge2()->str()
                              ? jv.value
                              : embed_wedge3_in_h_wedge2(g, jv.value);
        const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
        for (const auto& [id, cv] : emb.c) {
            int p = id / w2.dim;
            const int32_t* t = w2.tuple(id % w2.dim);
            TensorVector term = expand_bracket(*BracketTree::node(
                detail::leaf_of(p),
                BracketTree::node(detail::leaf_of(t[0]), detail::leaf_of(t[1]))));
            image = image + (cv * term);
        }
        return image.is_zero();
    }
    const BasisTable& w2 = basis_table(shape_wedge_h(2), g);
    for (const auto& [id, cv] : jv.value.c) {
        int w = id % w2.dim;
        int pq = id / w2.dim;
        int p = pq / (2 * g), q = pq % (2 * g);
        const int32_t* t = w2.tuple(w);
        TensorVector term = expand_bracket(*BracketTree::node(
            detail::leaf_of(p),
            BracketTree::node(detail::leaf_of(q),
                              BracketTree::node(detail::leaf_of(t[0]), detail::leaf_of(t[1])))));
        image = image + (cv * term);
    }
    return image.is_zero();
}

inline bool check_bracket_h_wedge2(const MultiVector& v) {
    JohnsonValue jv{1, v};
    return check_bracket(jv);
}

// ---------------------------------------------------------------------------
// Image spans
// ---------------------------------------------------------------------------

inline long long tau1_image_span(int g) {
    if (g < 3) throw GenusTooSmall("tau1_image_span needs g >= 3");
    std::vector<std::pair<MultiVector, MultiVector>> allbut1;
    for (int i = 2; i <= g; ++i)
        allbut1.push_back({h_basis(g, SymplecticSpace::a(i)), h_basis(g, SymplecticSpace::b(i))});
    MultiVector s1 = tau1(GeneratorSpec::bounding_pair(g, h_basis(g, SymplecticSpace::a(1)),
                                                       allbut1))
                         .value;  // a1 ^ omega
    MultiVector s2 = tau1(GeneratorSpec::sip(g, h_basis(g, SymplecticSpace::a(1)),
                                             h_basis(g, SymplecticSpace::a(2)),
                                             h_basis(g, SymplecticSpace::a(3))))
                         .value;  // a1 ^ a2 ^ a3
    return sp_span_closure({s1, s2}).dim();
}

inline long long tau2_image_span(int g) {
    if (g < 4) throw GenusTooSmall("tau2_image_span needs g >= 4");
    std::vector<MultiVector> seeds;
    for (int h = 1; h <= g; ++h)
        seeds.push_back(tau2_septwist(GeneratorSpec::sep_twist_genus(g, h)).value);
    return sp_span_closure(seeds).dim();
}

// ---------------------------------------------------------------------------
// Abelian cycles and the cup-product image
// ---------------------------------------------------------------------------

inline MultiVector abelian_cycle(const GeneratorSpec& f, const GeneratorSpec& h) {
    return wedge_pair(tau1(f).value, tau1(h).value);
}

struct CupImage {
    Decomposition boundary_dec;
    Decomposition closed_dec;
    long long boundary_dim = 0;
    long long closed_dim = 0;
    bool boundary_has_trivial = false;

    explicit CupImage(int g)
        : boundary_dec(GroupFamily::sp(g)), closed_dec(GroupFamily::sp(g)) {}
};

namespace detail {

inline GeneratorSpec bp_omega(int g, int skip) {
    // bounding pair with tau1 value a_skip ^ omega
    std::vector<std::pair<MultiVector, MultiVector>> v;
    for (int i = 1; i <= g; ++i) {
        if (i == skip) continue;
        v.push_back({h_basis(g, SymplecticSpace::a(i)), h_basis(g, SymplecticSpace::b(i))});
    }
    return GeneratorSpec::bounding_pair(g, h_basis(g, SymplecticSpace::a(skip)), v);
}

inline GeneratorSpec bp_single(int g, int xi, int pi) {
    // bounding pair with tau1 value a_xi ^ a_pi ^ b_pi
    std::vector<std::pair<MultiVector, MultiVector>> v = {
        {h_basis(g, SymplecticSpace::a(pi)), h_basis(g, SymplecticSpace::b(pi))}};
    return GeneratorSpec::bounding_pair(g, h_basis(g, SymplecticSpace::a(xi)), v);
}

inline GeneratorSpec sip_a(int g, int i, int j, int k) {
    return GeneratorSpec::sip(g, h_basis(g, SymplecticSpace::a(i)),
                              h_basis(g, SymplecticSpace::a(j)),
                              h_basis(g, SymplecticSpace::a(k)));
}

}  // namespace detail

// The abelian-cycle classes realizing every irreducible factor of the image.
inline std::vector<MultiVector> cup_image_seeds(int g) {
    std::vector<MultiVector> seeds;
    seeds.push_back(abelian_cycle(detail::sip_a(g, 1, 2, 3), detail::sip_a(g, 1, 2, 4)));
    seeds.push_back(abelian_cycle(detail::sip_a(g, 1, 2, 3), detail::bp_omega(g, 1)));
    seeds.push_back(abelian_cycle(detail::sip_a(g, 1, 2, 3), detail::sip_a(g, 4, 5, 6)));
    seeds.push_back(abelian_cycle(detail::sip_a(g, 1, 2, 3), detail::bp_omega(g, 4)));
    seeds.push_back(abelian_cycle(detail::sip_a(g, 1, 2, 3), detail::bp_single(g, 4, 5)));
    seeds.push_back(abelian_cycle(detail::bp_omega(g, 1), detail::bp_single(g, 2, 3)));
    seeds.push_back(abelian_cycle(detail::bp_single(g, 1, 4), detail::bp_single(g, 2, 3)));
    return seeds;
}

namespace detail {

struct CupCacheEntry {
    std::unique_ptr<SpSubspace> span;
    CupImage result;

    explicit CupCacheEntry(int g) : result(g) {}
};

inline const CupCacheEntry& cup_image_cached(int g) {
    if (g < 6) throw GenusTooSmall("cup image computations need g >= 6");
    static std::map<int, CupCacheEntry> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;

    CupCacheEntry entry(g);
    entry.span = std::make_unique<SpSubspace>(shape_wedge2_wedge3(), g);
    for (const MultiVector& s : cup_image_seeds(g)) entry.span->insert(s);
    entry.span->close();
    FormalCharacter ch = entry.span->character();
    entry.result.boundary_dec = decompose(ch);
    entry.result.boundary_dim = entry.span->dim();
    entry.result.boundary_has_trivial = entry.result.boundary_dec.mult({}) != 0;

    const WeightGradedSubspace& K =
        quot_kernel(shape_wedge2_wedge3(), "H-wedge-wedge3", g);
    FormalCharacter closed_ch = entry.span->character_mod(K);
    entry.result.closed_dec = decompose(closed_ch);
    entry.result.closed_dim = closed_ch.dimension().to_int64();
    return cache.emplace(g, std::move(entry)).first->second;
}

}  // namespace detail

inline Decomposition cup_image_boundary(int g) {
    return detail::cup_image_cached(g).result.boundary_dec;
}
inline Decomposition cup_image_closed(int g) {
    return detail::cup_image_cached(g).result.closed_dec;
}
inline const CupImage& cup_image_full(int g) { return detail::cup_image_cached(g).result; }
inline const SpSubspace& cup_image_span(int g) { return *detail::cup_image_cached(g).span; }

// Multiset difference of decompositions (for the complement bookkeeping).
inline Decomposition decomposition_difference(const Decomposition& whole,
                                              const Decomposition& part) {
    Decomposition out(whole.group);
    for (const auto& [p, m] : whole.terms) {
        long long rest = m - part.mult(p);
        if (rest < 0) throw Error("decomposition difference went negative");
        if (rest > 0) out.terms.push_back({p, rest});
    }
    for (const auto& [p, m] : part.terms)
        if (whole.mult(p) < m) throw Error("part is not contained in whole");
    out.sort_terms();
    return out;
}

// Morita's core-of-Casson value on a genus-h separating twist.
inline long long morita_core(long long h) {
    if (h < 0) throw Error("morita_core: genus must be nonnegative");
    return 4 * h * (h - 1);
}

}  // namespace replab
