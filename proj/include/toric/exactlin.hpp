#pragma once

#include <toric/errors.hpp>
#include <toric/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace toric {

using QVector = std::vector<Rat>;

inline bool is_zero(const QVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline Rat dot(const QVector& a, const QVector& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVector operator+(QVector a, const QVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline QVector operator-(QVector a, const QVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline QVector operator*(const Rat& c, QVector a) {
    for (auto& x : a) x *= c;
    return a;
}

inline void axpy(QVector& y, const Rat& a, const QVector& x) {
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline QVector unit_vector(std::size_t n, std::size_t i) {
    QVector v(n, Rat(0));
    v[i] = 1;
    return v;
}

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols) {
        QMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw PreconditionError("DimensionMismatch", "ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static QMatrix from_rows(const std::vector<QVector>& rows) {
        return from_rows(rows, rows.empty() ? 0 : rows.front().size());
    }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVector row(std::size_t i) const {
        return QVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    QVector col(std::size_t j) const {
        QVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    QVector operator*(const QVector& v) const {
        if (v.size() != cols_) throw PreconditionError("DimensionMismatch", "matrix-vector product");
        QVector out(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    QMatrix operator*(const QMatrix& o) const {
        if (cols_ != o.rows_) throw PreconditionError("DimensionMismatch", "matrix product");
        QMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
            }
        return out;
    }

    bool operator==(const QMatrix& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

struct RrefResult {
    QMatrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

// Reduced row echelon form. Pivot rows are scaled to 1 and cleared above and below.
inline RrefResult rref(QMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

// Basis of {x : m x = 0}, one vector per free column (free entry 1).
inline std::vector<QVector> kernel_basis(const QMatrix& m) {
    auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVector v(m.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// A particular solution of m x = b (free variables zero), or nullopt if inconsistent.
inline std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
    if (b.size() != m.rows()) throw PreconditionError("DimensionMismatch", "solve: rhs length");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto [r, pivots] = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    QVector x(m.cols(), Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
    return x;
}

inline Rat determinant(QMatrix m) {
    if (m.rows() != m.cols()) throw PreconditionError("DimensionMismatch", "determinant of non-square matrix");
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

inline std::optional<QMatrix> inverse(const QMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw PreconditionError("DimensionMismatch", "inverse of non-square matrix");
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto [r, pivots] = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

// A subspace of Q^N in reduced form. Pivots are chosen following `priority`
// (earlier entries become pivots first), so the complementary coordinates
// give a deterministic quotient basis.
class SubspaceReducer {
public:
    SubspaceReducer() = default;

    SubspaceReducer(std::size_t ambient, const std::vector<QVector>& spanning, std::vector<std::size_t> priority = {})
        : ambient_(ambient) {
        if (priority.empty()) {
            priority.resize(ambient);
            std::iota(priority.begin(), priority.end(), std::size_t{0});
        }
        if (priority.size() != ambient) throw PreconditionError("DimensionMismatch", "reducer priority");
        QMatrix m(spanning.size(), ambient);
        for (std::size_t i = 0; i < spanning.size(); ++i) {
            if (spanning[i].size() != ambient) throw PreconditionError("DimensionMismatch", "reducer vector");
            for (std::size_t j = 0; j < ambient; ++j) m(i, j) = spanning[i][priority[j]];
        }
        auto [r, piv] = rref(m);
        std::vector<bool> is_pivot(ambient, false);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            QVector row(ambient, Rat(0));
            for (std::size_t j = 0; j < ambient; ++j) row[priority[j]] = r(i, j);
            rows_.push_back(std::move(row));
            pivots_.push_back(priority[piv[i]]);
            is_pivot[priority[piv[i]]] = true;
        }
        for (std::size_t j = 0; j < ambient; ++j)
            if (!is_pivot[j]) free_.push_back(j);
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return pivots_.size(); }
    std::size_t codim() const { return free_.size(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    // Ambient indices spanning a complement, increasing.
    const std::vector<std::size_t>& free_indices() const { return free_; }
    const std::vector<QVector>& basis() const { return rows_; }

    QVector reduce(QVector v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rat c = v[pivots_[i]];
            if (c != 0) axpy(v, -c, rows_[i]);
        }
        return v;
    }

    bool contains(const QVector& v) const { return is_zero(reduce(v)); }

    // Coordinates of v modulo the subspace, in the complement basis free_indices().
    QVector quotient_coordinates(const QVector& v) const {
        QVector r = reduce(v);
        QVector out(free_.size());
        for (std::size_t i = 0; i < free_.size(); ++i) out[i] = r[free_[i]];
        return out;
    }

private:
    std::size_t ambient_ = 0;
    std::vector<QVector> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> free_;
};

}  // namespace toric
