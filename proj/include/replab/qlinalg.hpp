#pragma once

#include <vector>

#include "replab/rational.hpp"

namespace replab {

// Dense reduced row echelon form over Q, kept deliberately small: the heavy
// linear algebra in this project runs per weight block and stays in the low
// hundreds of rows.
struct RrefMatrix {
    int cols = 0;
    std::vector<std::vector<Rat>> rows;  // each with leading 1, sorted by pivot
    std::vector<int> pivots;             // pivot column of each row

    explicit RrefMatrix(int c) : cols(c) {}

    int rank() const { return static_cast<int>(rows.size()); }

    // Reduce v against the current rows in place.
    void reduce(std::vector<Rat>& v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            const Rat& c = v[pivots[r]];
            if (c.is_zero()) continue;
            Rat f = c;
            const auto& row = rows[r];
            for (int j = pivots[r]; j < cols; ++j)
                if (!row[j].is_zero()) v[j] -= f * row[j];
        }
    }

    // Insert v if independent; returns true when the rank grew.
    bool insert(std::vector<Rat> v) { return insert_where(std::move(v)) >= 0; }

    // Same, returning the index of the inserted row (-1 if dependent).
    int insert_where(std::vector<Rat> v) {
        reduce(v);
        int p = -1;
        for (int j = 0; j < cols; ++j)
            if (!v[j].is_zero()) {
                p = j;
                break;
            }
        if (p < 0) return -1;
        Rat inv = Rat(1) / v[p];
        for (int j = p; j < cols; ++j)
            if (!v[j].is_zero()) v[j] *= inv;
        // back-eliminate into existing rows
        for (size_t r = 0; r < rows.size(); ++r) {
            Rat f = rows[r][p];
            if (f.is_zero()) continue;
            for (int j = p; j < cols; ++j)
                if (!v[j].is_zero()) rows[r][j] -= f * v[j];
        }
        size_t at = 0;
        while (at < rows.size() && pivots[at] < p) ++at;
        rows.insert(rows.begin() + at, std::move(v));
        pivots.insert(pivots.begin() + at, p);
        return static_cast<int>(at);
    }

    bool contains(std::vector<Rat> v) const {
        reduce(v);
        for (const Rat& c : v)
            if (!c.is_zero()) return false;
        return true;
    }
};

// Nullspace of a dense matrix (rows x cols) in reduced echelon form with
// respect to the column order: one vector per free column, with a 1 in the
// free column and the bound entries filled in from the RREF.
inline std::vector<std::vector<Rat>> nullspace(const std::vector<std::vector<Rat>>& mat, int cols) {
    RrefMatrix rref(cols);
    for (const auto& row : mat) rref.insert(row);
    std::vector<bool> is_pivot(cols, false);
    for (int p : rref.pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = Rat(1);
        for (int r = 0; r < rref.rank(); ++r) v[rref.pivots[r]] = -rref.rows[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace replab
