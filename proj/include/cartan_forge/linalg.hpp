#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cartan_forge/field.hpp"

namespace cartan_forge {

using Vec = std::vector<Residue>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

struct Echelon {
    Matrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
    std::size_t rank() const noexcept { return pivots.size(); }
};

// Gauss-Jordan elimination over the field.
inline Echelon row_reduce(const Field& f, Matrix m) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        if (piv != r)
            for (std::size_t k = 0; k < m.cols(); ++k)
                std::swap(m(r, k), m(piv, k));
        const Residue scale = f.inv(m(r, c));
        for (std::size_t k = c; k < m.cols(); ++k)
            m(r, k) = f.mul(m(r, k), scale);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            const Residue factor = m(i, c);
            for (std::size_t k = c; k < m.cols(); ++k)
                m(i, k) = f.sub(m(i, k), f.mul(factor, m(r, k)));
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

inline std::size_t rank(const Field& f, const Matrix& m) { return row_reduce(f, m).rank(); }

// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<Vec> kernel(const Field& f, const Matrix& m) {
    const Echelon e = row_reduce(f, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = f.neg(e.reduced(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Greedy incremental basis: vectors are offered in order; independent ones
// are accepted, dependent ones are expressed in the accepted ones.
class IncrementalBasis {
public:
    explicit IncrementalBasis(Field f, std::size_t dim) : f_(std::move(f)), dim_(dim) {}

    std::size_t size() const noexcept { return accepted_; }

    // Returns true when v was accepted. In both cases `coords` receives the
    // coordinates of v over the accepted vectors (a unit vector if accepted);
    // the caller pads to the final size.
    bool offer(Vec v, Vec& coords) {
        Vec combo(accepted_, 0);
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Residue c = v[pivots_[k]];
            if (c == 0)
                continue;
            for (std::size_t i = 0; i < dim_; ++i)
                if (rows_[k][i] != 0)
                    v[i] = f_.sub(v[i], f_.mul(c, rows_[k][i]));
            for (std::size_t m = 0; m < transforms_[k].size(); ++m)
                if (transforms_[k][m] != 0)
                    combo[m] = f_.add(combo[m], f_.mul(c, transforms_[k][m]));
        }
        std::size_t piv = 0;
        while (piv < dim_ && v[piv] == 0)
            ++piv;
        if (piv == dim_) {
            coords = std::move(combo);
            return false;
        }
        // New row R = v_orig - sum combo_m orig_m, normalized at its pivot.
        const Residue s = f_.inv(v[piv]);
        for (auto& x : v)
            x = f_.mul(x, s);
        Vec t(accepted_ + 1, 0);
        for (std::size_t m = 0; m < accepted_; ++m)
            t[m] = f_.mul(f_.neg(combo[m]), s);
        t[accepted_] = s;
        rows_.push_back(std::move(v));
        transforms_.push_back(std::move(t));
        pivots_.push_back(piv);
        coords.assign(accepted_ + 1, 0);
        coords[accepted_] = 1;
        ++accepted_;
        return true;
    }

private:
    Field f_;
    std::size_t dim_;
    std::size_t accepted_ = 0;
    std::vector<Vec> rows_;
    std::vector<Vec> transforms_; // rows_[k] = sum_m transforms_[k][m] * accepted_m
    std::vector<std::size_t> pivots_;
};

} // namespace cartan_forge
