#pragma once

#include <string>

#include "json.hpp"
#include "replab/char_ring.hpp"
#include "replab/mmclasses.hpp"
#include "replab/symp_linalg.hpp"

namespace replab {

inline nlohmann::json decomposition_to_json(const Decomposition& dec, bool stable) {
    nlohmann::json j;
    j["schema"] = "replab/1";
    j["group"] = dec.group.family == Family::Sp ? "Sp" : "SL";
    j["rank"] = dec.group.rank;
    j["terms"] = nlohmann::json::array();
    for (const auto& [p, m] : dec.terms) {
        nlohmann::json term;
        term["partition"] = p;
        term["mult"] = m;
        term["dim"] = weyl_dim(dec.group, p).to_string();
        j["terms"].push_back(term);
    }
    j["total_dim"] = dec.total_dim().to_string();
    j["stable"] = stable;
    return j;
}

// Index tuples are reported as the flat list of H basis indices obtained by
// expanding the shape recursively (a_1, b_1, a_2, ... are 0, 1, 2, ...).
inline void flatten_index(const BasisTable& bt, int32_t id, std::vector<int>& out) {
    switch (bt.shape->kind) {
        case Shape::Kind::H:
            out.push_back(id);
            return;
        case Shape::Kind::Wedge:
        case Shape::Kind::Sym: {
            const int32_t* t = bt.tuple(id);
            for (int j = 0; j < bt.k; ++j) flatten_index(*bt.child_a, t[j], out);
            return;
        }
        case Shape::Kind::Tensor:
            flatten_index(*bt.child_a, id / bt.child_b->dim, out);
            flatten_index(*bt.child_b, id % bt.child_b->dim, out);
            return;
        case Shape::Kind::Quot:
            flatten_index(*bt.child_a, id, out);
            return;
    }
}

inline nlohmann::json multivector_to_json(const MultiVector& v) {
    nlohmann::json j;
    j["schema"] = "replab/1";
    j["shape"] = v.shape->str();
    j["g"] = v.g;
    j["entries"] = nlohmann::json::array();
    const BasisTable& bt = basis_table(v.shape, v.g);
    for (const auto& [id, c] : v.c) {
        std::vector<int> idx;
        flatten_index(bt, id, idx);
        nlohmann::json entry;
        entry["index"] = idx;
        entry["coeff"] = c.to_string();
        j["entries"].push_back(entry);
    }
    return j;
}

inline nlohmann::json table_to_json(const std::vector<TableRow>& rows) {
    nlohmann::json j;
    j["schema"] = "replab/1";
    j["rows"] = nlohmann::json::array();
    bool ok = true;
    for (const auto& r : rows) {
        nlohmann::json row;
        row["d"] = r.d;
        row["t_d"] = r.t_d;
        row["hom"] = r.hom;
        row["sum"] = r.sum;
        row["kawazumi"] = r.kawazumi;
        row["match"] = r.match();
        ok &= r.match();
        j["rows"].push_back(row);
    }
    j["all_match"] = ok;
    return j;
}

}  // namespace replab
