#pragma once

#include <toric/exactlin.hpp>

namespace toric {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    QVector x;
    Rat value = 0;
};

namespace detail {

// Dense tableau simplex with Bland's rule. Rows of t are constraints with the
// right-hand side in the last column; basis[i] is the basic column of row i.
// Maximizes obj over columns j with allowed[j]. Returns false if unbounded.
inline bool run_simplex(std::vector<QVector>& t, std::vector<std::size_t>& basis, const QVector& obj,
                        const std::vector<bool>& allowed) {
    const std::size_t ncols = obj.size();
    for (;;) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols && enter == ncols; ++j) {
            if (!allowed[j]) continue;
            Rat reduced = obj[j];
            for (std::size_t i = 0; i < t.size(); ++i) reduced -= obj[basis[i]] * t[i][j];
            if (reduced > 0) enter = j;
        }
        if (enter == ncols) return true;
        std::size_t leave = t.size();
        Rat best;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][ncols] / t[i][enter];
            if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == t.size()) return false;
        Rat inv = 1 / t[leave][enter];
        for (auto& x : t[leave]) x *= inv;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            axpy(t[i], -t[i][enter], t[leave]);
        }
        basis[leave] = enter;
    }
}

}  // namespace detail

// maximize c.x subject to a x = b, x >= 0.
inline LpResult lp_maximize(const QMatrix& a, const QVector& b, const QVector& c) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m || c.size() != n) throw PreconditionError("DimensionMismatch", "lp_maximize");
    const std::size_t ncols = n + m;
    std::vector<QVector> t(m, QVector(ncols + 1, Rat(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rat sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a(i, j);
        t[i][n + i] = 1;
        t[i][ncols] = sign * b[i];
        basis[i] = n + i;
    }
    QVector phase1(ncols, Rat(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
    std::vector<bool> allowed(ncols, true);
    detail::run_simplex(t, basis, phase1, allowed);
    Rat infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) infeas += t[i][ncols];
    if (infeas != 0) return {LpStatus::Infeasible, {}, 0};

    // drive artificial variables out of the basis; drop redundant rows
    for (std::size_t i = 0; i < t.size();) {
        if (basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t j = 0;
        while (j < n && t[i][j] == 0) ++j;
        if (j == n) {
            t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
            basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        Rat inv = 1 / t[i][j];
        for (auto& x : t[i]) x *= inv;
        for (std::size_t k = 0; k < t.size(); ++k)
            if (k != i && t[k][j] != 0) axpy(t[k], -t[k][j], t[i]);
        basis[i] = j;
        ++i;
    }
    for (std::size_t j = n; j < ncols; ++j) allowed[j] = false;
    QVector obj(ncols, Rat(0));
    for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
    if (!detail::run_simplex(t, basis, obj, allowed)) return {LpStatus::Unbounded, {}, 0};
    LpResult res{LpStatus::Optimal, QVector(n, Rat(0)), 0};
    for (std::size_t i = 0; i < t.size(); ++i) res.x[basis[i]] = t[i][ncols];
    res.value = dot(c, res.x);
    return res;
}

inline bool lp_feasible(const QMatrix& a, const QVector& b) {
    return lp_maximize(a, b, QVector(a.cols(), Rat(0))).status != LpStatus::Infeasible;
}

}  // namespace toric
