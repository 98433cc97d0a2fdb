#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "delpezzo/errors.hpp"
#include "delpezzo/rational.hpp"

namespace delpezzo {

using QVector = std::vector<Rat>;

/// Dense row-major matrix over the rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<Rat>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionError("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    // Builds a matrix whose rows are the given vectors; all must share one length.
    static QMatrix from_rows(std::span<const QVector> rows, std::size_t cols) {
        QMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw DimensionError("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static QMatrix from_columns(std::span<const QVector> cols, std::size_t rows) {
        QMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw DimensionError("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVector row(std::size_t i) const {
        return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    QMatrix transposed() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    QVector operator*(const QVector& v) const {
        if (v.size() != cols_) throw DimensionError("matrix-vector length mismatch");
        QVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Rat acc = 0;
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) acc += (*this)(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    QMatrix rref;  // only the nonzero rows are kept
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

namespace detail {

// Fraction-free (Bareiss) forward elimination on an integer matrix.
// Every row is first cleared of denominators, which does not change the row space.
// On return, `a` is in row echelon form and `pivots` lists the pivot columns.
inline void bareiss_forward(std::vector<std::vector<Int>>& a, std::size_t cols,
                            std::vector<std::size_t>& pivots, int* swap_parity = nullptr) {
    const std::size_t rows = a.size();
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            if (swap_parity) *swap_parity ^= 1;
        }
        const Int& piv = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            Int& lead = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                Int& x = a[i][j];
                x = piv * x - lead * a[r][j];
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            lead = 0;
        }
        // Rows above r that were skipped at earlier columns are untouched; below r
        // every entry left of c+1 is now zero.
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    a.resize(r);
}

inline std::vector<std::vector<Int>> integer_rows(const QMatrix& m) {
    std::vector<std::vector<Int>> a(m.rows(), std::vector<Int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int den = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) den = lcm(den, m(i, j).get_den());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (sgn(m(i, j)) == 0) continue;
            a[i][j] = m(i, j).get_num() * (den / m(i, j).get_den());
        }
    }
    return a;
}

}  // namespace detail

/// Exact reduced row echelon form. Bareiss elimination runs on integer rows;
/// back-substitution and pivot normalization happen over the rationals.
inline Echelon row_reduce(const QMatrix& m) {
    auto a = detail::integer_rows(m);
    Echelon out;
    detail::bareiss_forward(a, m.cols(), out.pivots);
    const std::size_t rank = out.pivots.size();
    QMatrix red(rank, m.cols());
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) red(i, j) = Rat(a[i][j]);
    for (std::size_t k = rank; k-- > 0;) {
        const std::size_t pc = out.pivots[k];
        const Rat inv = 1 / red(k, pc);
        for (std::size_t j = pc; j < m.cols(); ++j)
            if (sgn(red(k, j)) != 0) red(k, j) *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            if (sgn(red(i, pc)) == 0) continue;
            const Rat f = red(i, pc);
            for (std::size_t j = pc; j < m.cols(); ++j)
                if (sgn(red(k, j)) != 0) red(i, j) -= f * red(k, j);
        }
    }
    out.rref = std::move(red);
    return out;
}

inline std::size_t rank(const QMatrix& m) {
    auto a = detail::integer_rows(m);
    std::vector<std::size_t> pivots;
    detail::bareiss_forward(a, m.cols(), pivots);
    return pivots.size();
}

/// Basis of the right kernel {v : M v = 0}. One vector per free column, with a 1
/// in that column and zeros in the other free columns, so the output is
/// determined by M alone.
inline std::vector<QVector> nullspace(const QMatrix& m) {
    const Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVector v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.rref(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Exact determinant of a square matrix (Bareiss: the last pivot is the determinant).
inline Rat determinant(const QMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Int scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int den = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (m(i, j).get_den() != 1) den = lcm(den, m(i, j).get_den());
        scale *= den;
    }
    auto a = detail::integer_rows(m);
    std::vector<std::size_t> pivots;
    int parity = 0;
    detail::bareiss_forward(a, n, pivots, &parity);
    if (pivots.size() < n) return 0;
    Rat det(a[n - 1][n - 1], scale);
    det.canonicalize();
    return parity ? Rat(-det) : det;
}

/// Row-reduces a list of vectors (as rows) and returns the nonzero RREF rows.
inline std::vector<QVector> echelon_basis(std::span<const QVector> vectors, std::size_t len) {
    const Echelon e = row_reduce(QMatrix::from_rows(vectors, len));
    std::vector<QVector> out;
    out.reserve(e.rank());
    for (std::size_t i = 0; i < e.rank(); ++i) out.push_back(e.rref.row(i));
    return out;
}

}  // namespace delpezzo
