#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "replab/bigint.hpp"
#include "replab/errors.hpp"

namespace replab {

// ---------------------------------------------------------------------------
// Group families, weights, partitions
// ---------------------------------------------------------------------------

enum class Family { SL, Sp };

struct GroupFamily {
    Family family;
    int rank;  // n for SL_n, g for Sp_2g

    GroupFamily(Family f, int r) : family(f), rank(r) {
        if (r < 1 || (f == Family::SL && r < 2))
            throw Error("invalid group rank " + std::to_string(r));
    }
    static GroupFamily sl(int n) { return GroupFamily(Family::SL, n); }
    static GroupFamily sp(int g) { return GroupFamily(Family::Sp, g); }

    bool operator==(const GroupFamily& o) const {
        return family == o.family && rank == o.rank;
    }
    bool operator!=(const GroupFamily& o) const { return !(*this == o); }

    std::string str() const {
        return (family == Family::SL ? "SL_" + std::to_string(rank)
                                     : "Sp_" + std::to_string(2 * rank));
    }
    // Maximum number of parts a dominant-weight partition may have.
    int max_parts() const { return family == Family::SL ? rank - 1 : rank; }
};

// Torus character in e-coordinates.  For SL the canonical stored form has
// last coordinate zero (the relation E_1 + ... + E_n = 0 is resolved by
// subtracting the last coordinate from all of them).
using Weight = std::vector<int>;

// Weakly decreasing positive integers.
using Partition = std::vector<int>;

inline bool is_valid_partition(const Partition& p) {
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) return false;
        if (i > 0 && p[i] > p[i - 1]) return false;
    }
    return true;
}

inline int degree(const Partition& p) {
    int d = 0;
    for (int k : p) d += k;
    return d;
}

inline void check_partition(const GroupFamily& group, const Partition& p) {
    if (!is_valid_partition(p)) throw Error("not a partition");
    if (static_cast<int>(p.size()) > group.max_parts())
        throw PartitionTooLong("partition has " + std::to_string(p.size()) +
                               " parts, limit for " + group.str() + " is " +
                               std::to_string(group.max_parts()));
}

inline Weight weight_from_partition(const GroupFamily& group, const Partition& p) {
    check_partition(group, p);
    Weight w(p.begin(), p.end());
    w.resize(group.rank, 0);
    return w;
}

// Strip trailing zeros of a dominant weight; weight must be weakly
// decreasing and nonnegative with last coordinate 0 for SL.
inline Partition partition_from_weight(const Weight& w) {
    Partition p(w.begin(), w.end());
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline std::string partition_str(const Partition& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

inline long long dot(const Weight& a, const Weight& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * b[i];
    return s;
}

inline Weight normalize_sl(Weight w) {
    int last = w.back();
    if (last != 0)
        for (int& c : w) c -= last;
    return w;
}

// ---------------------------------------------------------------------------
// Root data
// ---------------------------------------------------------------------------

struct RootDatum {
    GroupFamily group;
    std::vector<Weight> positive_roots;  // lexicographically sorted
    Weight rho;                          // half-sum (normalized form for SL)
};

inline RootDatum root_datum(const GroupFamily& group) {
    int r = group.rank;
    std::vector<Weight> roots;
    if (group.family == Family::SL) {
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                Weight w(r, 0);
                w[i] = 1;
                w[j] = -1;
                roots.push_back(w);
            }
    } else {
        for (int i = 0; i < r; ++i) {
            Weight w(r, 0);
            w[i] = 2;
            roots.push_back(w);
            for (int j = i + 1; j < r; ++j) {
                Weight u(r, 0);
                u[i] = 1;
                u[j] = -1;
                roots.push_back(u);
                Weight v(r, 0);
                v[i] = 1;
                v[j] = 1;
                roots.push_back(v);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    Weight sum(r, 0);
    for (const auto& a : roots)
        for (int i = 0; i < r; ++i) sum[i] += a[i];
    Weight rho;
    if (group.family == Family::SL) {
        sum = normalize_sl(sum);  // uniform shifts do not change root pairings
        rho.resize(r);
        for (int i = 0; i < r; ++i) rho[i] = sum[i] / 2;
    } else {
        rho.resize(r);
        for (int i = 0; i < r; ++i) rho[i] = sum[i] / 2;
    }
    return RootDatum{group, std::move(roots), std::move(rho)};
}

// ---------------------------------------------------------------------------
// Weyl dimension formula
// ---------------------------------------------------------------------------

inline BigInt weyl_dim(const GroupFamily& group, const Partition& lambda) {
    const RootDatum rd = root_datum(group);
    Weight lw = weight_from_partition(group, lambda);
    Weight lr(lw.size());
    for (size_t i = 0; i < lw.size(); ++i) lr[i] = lw[i] + rd.rho[i];

    std::vector<long long> nums, dens;
    for (const auto& a : rd.positive_roots) {
        nums.push_back(dot(lr, a));
        dens.push_back(dot(rd.rho, a));
    }
    for (long long& d : dens) {
        for (long long& n : nums) {
            if (d == 1) break;
            long long g = std::gcd(n, d);
            n /= g;
            d /= g;
        }
        if (d != 1) throw Error("weyl_dim: non-integral quotient");
    }
    BigInt out(1);
    for (long long n : nums) out *= BigInt(n);
    return out;
}

// ---------------------------------------------------------------------------
// Formal characters
// ---------------------------------------------------------------------------

// Finite map weight -> multiplicity with zero entries absent.  Keys are kept
// in descending lexicographic order so that begin() is the lex-maximal
// weight, which is what highest-weight peeling consumes.
struct FormalCharacter {
    GroupFamily group;
    std::map<Weight, BigInt, std::greater<Weight>> table;

    explicit FormalCharacter(GroupFamily g) : group(g) {}

    BigInt dimension() const {
        BigInt s;
        for (const auto& [w, m] : table) s += m;
        return s;
    }
    bool genuine() const {
        for (const auto& [w, m] : table)
            if (m.sign() < 0) return false;
        return true;
    }
    void add(const Weight& w, const BigInt& m) {
        if (m.is_zero()) return;
        auto it = table.find(w);
        if (it == table.end()) {
            table.emplace(w, m);
        } else {
            it->second += m;
            if (it->second.is_zero()) table.erase(it);
        }
    }
    BigInt mult(const Weight& w) const {
        auto it = table.find(w);
        return it == table.end() ? BigInt() : it->second;
    }
    bool operator==(const FormalCharacter& o) const {
        return group == o.group && table == o.table;
    }
};

// ---------------------------------------------------------------------------
// Freudenthal multiplicities
// ---------------------------------------------------------------------------

namespace detail {

inline Weight dominantize(const GroupFamily& group, Weight w) {
    if (group.family == Family::Sp)
        for (int& c : w) c = c < 0 ? -c : c;
    std::sort(w.begin(), w.end(), std::greater<int>());
    return w;
}

// Height of lambda - mu in simple-root coordinates; negative means
// lambda - mu is not a nonnegative root combination.
inline long long root_height(const GroupFamily& group, const Weight& lambda, const Weight& mu) {
    long long ht = 0, partial = 0;
    int r = group.rank;
    for (int i = 0; i < r - 1; ++i) {
        partial += lambda[i] - mu[i];
        if (partial < 0) return -1;
        ht += partial;
    }
    partial += lambda[r - 1] - mu[r - 1];
    if (group.family == Family::SL) {
        if (partial != 0) return -1;
        return ht;
    }
    if (partial < 0 || partial % 2 != 0) return -1;
    return ht + partial / 2;
}

// All dominant weights mu (raw coordinates) with lambda - mu a nonnegative
// combination of positive roots.
inline std::vector<Weight> dominant_weights_below(const GroupFamily& group, const Weight& lambda) {
    int r = group.rank;
    long long total = 0;
    std::vector<long long> lpartial(r);
    for (int i = 0; i < r; ++i) {
        total += lambda[i];
        lpartial[i] = total;
    }
    std::vector<Weight> out;
    Weight cur(r);
    // Depth-first over weakly decreasing vectors obeying the partial-sum
    // majorization bound; the root-lattice condition is checked at the leaf.
    auto rec = [&](auto&& self, int i, long long partial, int prev) -> void {
        if (i == r) {
            if (root_height(group, lambda, cur) >= 0) out.push_back(cur);
            return;
        }
        long long hi = std::min<long long>(prev, lpartial[i] - partial);
        long long rem = r - i;
        long long lo;
        if (group.family == Family::Sp) {
            lo = 0;
        } else {
            // remaining entries are <= cur[i] each and must reach the total
            long long need = total - partial;
            lo = need >= 0 ? (need + rem - 1) / rem : -((-need) / rem);
            while (lo * rem < need) ++lo;
        }
        for (long long v = hi; v >= lo; --v) {
            cur[i] = static_cast<int>(v);
            self(self, i + 1, partial + v, static_cast<int>(v));
        }
    };
    rec(rec, 0, 0, lambda.empty() ? 0 : lambda[0] + 1);
    return out;
}

}  // namespace detail

// Multiplicities of the dominant weights of the irreducible with highest
// weight lambda, computed with Freudenthal's recursion.  Keys are raw
// (unnormalized) dominant weight vectors.
inline std::map<Weight, BigInt> freudenthal_dominant_multiplicities(const GroupFamily& group,
                                                                    const Partition& lambda) {
    const RootDatum rd = root_datum(group);
    Weight lw = weight_from_partition(group, lambda);
    std::vector<Weight> doms = detail::dominant_weights_below(group, lw);
    std::sort(doms.begin(), doms.end(), [&](const Weight& a, const Weight& b) {
        return detail::root_height(group, lw, a) < detail::root_height(group, lw, b);
    });

    int r = group.rank;
    Weight lrho(r);
    for (int i = 0; i < r; ++i) lrho[i] = lw[i] + rd.rho[i];
    long long lnorm = dot(lrho, lrho);

    std::map<Weight, BigInt> mult;
    for (const auto& mu : doms) {
        if (mu == lw) {
            mult[mu] = BigInt(1);
            continue;
        }
        Weight mrho(r);
        for (int i = 0; i < r; ++i) mrho[i] = mu[i] + rd.rho[i];
        long long denom = lnorm - dot(mrho, mrho);
        if (denom <= 0) throw Error("freudenthal: nonpositive denominator");
        BigInt num;
        Weight probe(r);
        for (const auto& a : rd.positive_roots) {
            long long aht = detail::root_height(group, a, Weight(r, 0));
            long long maxk = detail::root_height(group, lw, mu) / aht;
            for (long long k = 1; k <= maxk; ++k) {
                for (int i = 0; i < r; ++i) probe[i] = mu[i] + static_cast<int>(k) * a[i];
                auto it = mult.find(detail::dominantize(group, probe));
                if (it == mult.end()) continue;
                num += it->second * BigInt(dot(probe, a));
            }
        }
        num += num;  // the factor of 2 in Freudenthal's formula
        mult[mu] = num.div_exact(denom);
    }
    return mult;
}

namespace detail {

// Expand a Weyl orbit: all distinct coordinate permutations, and for Sp all
// sign patterns on the nonzero entries.
template <typename F>
inline void for_each_orbit_element(const GroupFamily& group, const Weight& dom, F&& f) {
    Weight w = dom;
    std::sort(w.begin(), w.end());
    do {
        if (group.family == Family::SL) {
            f(w);
            continue;
        }
        std::vector<int> nz;
        for (int i = 0; i < static_cast<int>(w.size()); ++i)
            if (w[i] != 0) nz.push_back(i);
        Weight s = w;
        for (unsigned mask = 0; mask < (1u << nz.size()); ++mask) {
            for (size_t b = 0; b < nz.size(); ++b)
                s[nz[b]] = (mask >> b) & 1u ? -w[nz[b]] : w[nz[b]];
            f(s);
        }
    } while (std::next_permutation(w.begin(), w.end()));
}

}  // namespace detail

// Full formal character of the irreducible with highest weight lambda.
// Results are cached; the cache is guarded for concurrent use.
inline const FormalCharacter& freudenthal_char(const GroupFamily& group, const Partition& lambda) {
    using Key = std::tuple<int, int, Partition>;
    static std::map<Key, FormalCharacter> cache;
    static std::mutex mtx;
    Key key{static_cast<int>(group.family), group.rank, lambda};
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    FormalCharacter ch(group);
    auto mults = freudenthal_dominant_multiplicities(group, lambda);
    for (const auto& [mu, m] : mults) {
        detail::for_each_orbit_element(group, mu, [&](const Weight& w) {
            Weight key_w = group.family == Family::SL ? normalize_sl(w) : w;
            ch.add(key_w, m);
        });
    }
    return cache.emplace(std::move(key), std::move(ch)).first->second;
}

}  // namespace replab
