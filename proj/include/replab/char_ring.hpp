#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "replab/rep_core.hpp"

namespace replab {

// ---------------------------------------------------------------------------
// Decompositions into irreducibles
// ---------------------------------------------------------------------------

struct Decomposition {
    GroupFamily group;
    // (partition, multiplicity), sorted by lex order of the partition.
    std::vector<std::pair<Partition, long long>> terms;

    explicit Decomposition(GroupFamily g) : group(g) {}

    BigInt total_dim() const {
        BigInt s;
        for (const auto& [p, m] : terms) s += weyl_dim(group, p) * BigInt(m);
        return s;
    }
    long long mult(const Partition& p) const {
        for (const auto& [q, m] : terms)
            if (q == p) return m;
        return 0;
    }
    std::vector<Partition> factor_set() const {
        std::vector<Partition> out;
        for (const auto& [p, m] : terms) out.push_back(p);
        return out;
    }
    bool same_terms(const Decomposition& o) const { return terms == o.terms; }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) s += " + ";
            s += (group.family == Family::SL ? "W" : "V") + partition_str(terms[i].first);
            if (terms[i].second != 1) s += "^" + std::to_string(terms[i].second);
        }
        return s;
    }
    void sort_terms() {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
};

// Builds a decomposition from an explicit term list (used in tests to state
// expected results).
inline Decomposition make_decomposition(GroupFamily g,
                                        std::vector<std::pair<Partition, long long>> terms) {
    Decomposition d(g);
    d.terms = std::move(terms);
    d.sort_terms();
    return d;
}

// ---------------------------------------------------------------------------
// Basic characters and ring operations
// ---------------------------------------------------------------------------

inline FormalCharacter std_char(const GroupFamily& group) {
    FormalCharacter ch(group);
    int r = group.rank;
    if (group.family == Family::SL) {
        for (int i = 0; i < r; ++i) {
            Weight w(r, 0);
            w[i] = 1;
            ch.add(normalize_sl(w), BigInt(1));
        }
    } else {
        for (int i = 0; i < r; ++i) {
            Weight w(r, 0);
            w[i] = 1;
            ch.add(w, BigInt(1));
            w[i] = -1;
            ch.add(w, BigInt(1));
        }
    }
    return ch;
}

inline FormalCharacter trivial_char(const GroupFamily& group) {
    FormalCharacter ch(group);
    ch.add(Weight(group.rank, 0), BigInt(1));
    return ch;
}

inline FormalCharacter tensor(const FormalCharacter& a, const FormalCharacter& b) {
    if (a.group != b.group)
        throw GroupMismatch("tensor of characters over " + a.group.str() + " and " + b.group.str());
    FormalCharacter out(a.group);
    int r = a.group.rank;
    Weight w(r);
    for (const auto& [wa, ma] : a.table)
        for (const auto& [wb, mb] : b.table) {
            for (int i = 0; i < r; ++i) w[i] = wa[i] + wb[i];
            out.add(w, ma * mb);
        }
    return out;
}

// Adams operation: scale every weight by k.
inline FormalCharacter adams(const FormalCharacter& a, int k) {
    FormalCharacter out(a.group);
    Weight w(a.group.rank);
    for (const auto& [wa, ma] : a.table) {
        for (size_t i = 0; i < wa.size(); ++i) w[i] = k * wa[i];
        out.add(w, ma);
    }
    return out;
}

namespace detail {

inline FormalCharacter scaled(const FormalCharacter& a, const BigInt& c) {
    FormalCharacter out(a.group);
    for (const auto& [w, m] : a.table) out.add(w, m * c);
    return out;
}

inline FormalCharacter sum(const FormalCharacter& a, const FormalCharacter& b) {
    FormalCharacter out = a;
    for (const auto& [w, m] : b.table) out.add(w, m);
    return out;
}

inline FormalCharacter div_exact(const FormalCharacter& a, long long k) {
    FormalCharacter out(a.group);
    for (const auto& [w, m] : a.table) out.add(w, m.div_exact(k));
    return out;
}

enum class Plethysm { Wedge, Sym };

// Newton's identities over Adams operations:
//   k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} psi^i      (exterior powers)
//   k h_k = sum_{i=1..k} h_{k-i} psi^i                 (symmetric powers)
inline FormalCharacter newton_power(const FormalCharacter& a, int k, Plethysm kind) {
    if (k < 0) throw Error("negative plethysm power");
    if (!a.genuine())
        throw NonGenuineCharacter("exterior/symmetric power of a character with negative entries");
    std::vector<FormalCharacter> pw;  // psi^1 .. psi^k
    pw.reserve(k);
    for (int i = 1; i <= k; ++i) pw.push_back(adams(a, i));
    std::vector<FormalCharacter> e;
    e.push_back(trivial_char(a.group));
    for (int m = 1; m <= k; ++m) {
        FormalCharacter acc(a.group);
        for (int i = 1; i <= m; ++i) {
            BigInt c(kind == Plethysm::Wedge ? (i % 2 ? 1 : -1) : 1);
            acc = sum(acc, scaled(tensor(e[m - i], pw[i - 1]), c));
        }
        e.push_back(div_exact(acc, m));
    }
    return e[k];
}

}  // namespace detail

inline FormalCharacter wedge_power(const FormalCharacter& a, int k) {
    return detail::newton_power(a, k, detail::Plethysm::Wedge);
}

inline FormalCharacter sym_power(const FormalCharacter& a, int k) {
    return detail::newton_power(a, k, detail::Plethysm::Sym);
}

inline FormalCharacter dual(const FormalCharacter& a) {
    FormalCharacter out(a.group);
    Weight w(a.group.rank);
    for (const auto& [wa, ma] : a.table) {
        for (size_t i = 0; i < wa.size(); ++i) w[i] = -wa[i];
        out.add(a.group.family == Family::SL ? normalize_sl(w) : w, ma);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition by highest-weight peeling
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_dominant_key(const Weight& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] > w[i - 1]) return false;
    return w.back() >= 0;  // SL keys are normalized, so last coordinate is 0
}

}  // namespace detail

inline Decomposition decompose(const FormalCharacter& a) {
    Decomposition out(a.group);
    BigInt input_dim = a.dimension();
    FormalCharacter work = a;
    while (!work.table.empty()) {
        auto top = work.table.begin();  // lex-maximal weight
        const Weight w = top->first;    // copies: the loop below mutates the table
        const BigInt m = top->second;
        if (m.sign() < 0 || !detail::is_dominant_key(w))
            throw NotARepresentation("peeling found weight " + partition_str(Partition(w.begin(), w.end())) +
                                     " with multiplicity " + m.to_string() +
                                     "; the input is not the character of a representation");
        Partition lambda = partition_from_weight(w);
        long long mm = m.to_int64();
        const FormalCharacter& irr = freudenthal_char(a.group, lambda);
        for (const auto& [wi, mi] : irr.table) work.add(wi, BigInt(-1) * mi * m);
        out.terms.emplace_back(std::move(lambda), mm);
    }
    out.sort_terms();
    if (out.total_dim() != input_dim)
        throw Error("decompose: dimension bookkeeping failed");  // unreachable
    return out;
}

inline BigInt hom_dim(const FormalCharacter& a, const FormalCharacter& b) {
    if (a.group != b.group)
        throw GroupMismatch("hom_dim across " + a.group.str() + " and " + b.group.str());
    if (!a.genuine() || !b.genuine())
        throw NonGenuineCharacter("hom_dim requires genuine characters");
    Decomposition da = decompose(a);
    Decomposition db = decompose(b);
    // dim Hom_G = multiplicity inner product; for Sp every irreducible is
    // self-dual so this agrees with pairing against the dual decomposition.
    BigInt s;
    for (const auto& [p, m] : da.terms) s += BigInt(m) * BigInt(db.mult(p));
    return s;
}

inline BigInt hom_dim(const FormalCharacter& a, const Decomposition& da, const FormalCharacter& b) {
    if (a.group != b.group) throw GroupMismatch("hom_dim group mismatch");
    Decomposition db = decompose(b);
    BigInt s;
    for (const auto& [p, m] : da.terms) s += BigInt(m) * BigInt(db.mult(p));
    return s;
}

struct TrivialMultResult {
    BigInt value;
    bool stable;  // g >= d
};

inline TrivialMultResult trivial_multiplicity(int d, int g) {
    if (d < 1) throw Error("trivial_multiplicity: d must be positive");
    GroupFamily sp = GroupFamily::sp(g);
    FormalCharacter h = std_char(sp);
    FormalCharacter pow = trivial_char(sp);
    for (int i = 0; i < d; ++i) pow = tensor(pow, h);
    Decomposition dec = decompose(pow);
    return TrivialMultResult{BigInt(dec.mult({})), g >= d};
}

// ---------------------------------------------------------------------------
// Branching Sp_2g -> Sp_2(g-1)
// ---------------------------------------------------------------------------

// The interval rule: sigma' appears iff k_{i+2} <= k'_i <= k_i for all i.
inline std::vector<Partition> branch_interval_rule(const Partition& lambda, int g) {
    check_partition(GroupFamily::sp(g), lambda);
    auto part = [&](size_t i) { return i < lambda.size() ? lambda[i] : 0; };
    std::vector<Partition> out;
    Partition cur;
    size_t maxlen = std::min<size_t>(lambda.size(), static_cast<size_t>(g - 1));
    auto rec = [&](auto&& self, size_t i, int prev) -> void {
        if (i == maxlen || part(i) == 0) {
            Partition p = cur;
            while (!p.empty() && p.back() == 0) p.pop_back();
            out.push_back(p);
            return;
        }
        int hi = std::min(prev, part(i));
        int lo = part(i + 2);
        for (int v = hi; v >= lo; --v) {
            cur.push_back(v);
            self(self, i + 1, v);
            cur.pop_back();
        }
    };
    rec(rec, 0, lambda.empty() ? 0 : lambda[0]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Restrict the character by deleting the g-th coordinate of every weight,
// then decompose over Sp_2(g-1).
inline Decomposition branch_sp(const Partition& lambda, int g) {
    if (g < 2) throw Error("branch_sp needs g >= 2");
    GroupFamily big = GroupFamily::sp(g);
    check_partition(big, lambda);
    const FormalCharacter& ch = freudenthal_char(big, lambda);
    GroupFamily small = GroupFamily::sp(g - 1);
    FormalCharacter res(small);
    for (const auto& [w, m] : ch.table) {
        Weight v(w.begin(), w.end() - 1);
        res.add(v, m);
    }
    return decompose(res);
}

}  // namespace replab
