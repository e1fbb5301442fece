#pragma once

#include <toric/polyhedral.hpp>
#include <toric/polynomial.hpp>

#include <map>
#include <random>
#include <utility>

namespace toric {

using Simplex = std::vector<QVector>;  // n + 1 vertices in Q^n

// Exact integral of f over a simplex w.r.t. Lebesgue measure on Q^n.
// Uses int_{standard simplex} t^a = a! / (|a| + n)!.
inline Rat integrate_over_simplex(const Polynomial& f, const Simplex& s) {
    const std::size_t n = f.nvars();
    if (s.size() != n + 1) throw PreconditionError("DimensionMismatch", "simplex needs n + 1 vertices");
    QMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) a(i, j) = s[j + 1][i] - s[0][i];
    Rat det = determinant(a);
    if (det == 0 || f.is_zero()) return 0;
    if (det < 0) det = -det;
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::linear(a.row(i), s[0][i]));
    Polynomial g = f.compose(images);
    Rat sum = 0;
    for (const auto& [e, c] : g.terms()) {
        Rat num = 1;
        for (int k : e) num *= factorial(static_cast<unsigned>(k));
        sum += c * num / factorial(static_cast<unsigned>(total_degree(e)) + static_cast<unsigned>(n));
    }
    return det * sum;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> triangulate_face(const Polytope& p, const std::vector<std::size_t>& face,
                                                              std::size_t d, bool whole) {
    if (d == 0) return {{face.front()}};
    const std::size_t v0 = face.front();  // vertices are lex sorted, so this is the lex smallest
    std::vector<std::vector<std::size_t>> subfaces;
    if (whole) {
        subfaces = p.facets();
    } else {
        std::set<std::vector<std::size_t>> cands;
        for (const auto& fc : p.facets()) {
            std::vector<std::size_t> meet;
            std::set_intersection(face.begin(), face.end(), fc.begin(), fc.end(), std::back_inserter(meet));
            if (meet.empty() || meet.size() == face.size()) continue;
            std::vector<QVector> pts;
            for (auto i : meet) pts.push_back(p.vertices()[i]);
            if (affine_dimension(pts) + 1 == d) cands.insert(meet);
        }
        subfaces.assign(cands.begin(), cands.end());
    }
    std::vector<std::vector<std::size_t>> out;
    for (const auto& sf : subfaces) {
        if (std::binary_search(sf.begin(), sf.end(), v0)) continue;
        for (auto& simplex : triangulate_face(p, sf, d - 1, false)) {
            simplex.insert(simplex.begin(), v0);
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

}  // namespace detail

// Pulling triangulation from the lexicographically smallest vertex of each face.
inline std::vector<Simplex> triangulate(const Polytope& p) {
    if (p.empty()) return {};
    if (p.affine_dim() != p.ambient_dim())
        throw PreconditionError("LowerDimensional", "triangulate needs a full-dimensional polytope");
    std::vector<std::size_t> all(p.vertices().size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<Simplex> out;
    for (const auto& idx : detail::triangulate_face(p, all, p.ambient_dim(), true)) {
        Simplex s;
        for (auto i : idx) s.push_back(p.vertices()[i]);
        out.push_back(std::move(s));
    }
    return out;
}

inline Rat integrate_over_polytope(const Polynomial& f, const Polytope& p) {
    if (f.nvars() != p.ambient_dim()) throw PreconditionError("DimensionMismatch", "integrand and polytope dimensions");
    if (p.empty() || p.affine_dim() < p.ambient_dim()) return 0;
    Rat sum = 0;
    for (const auto& s : triangulate(p)) sum += integrate_over_simplex(f, s);
    return sum;
}

inline Rat volume(const Polytope& p) {
    return integrate_over_polytope(Polynomial::constant(p.ambient_dim(), 1), p);
}

// Integrals of a polynomial over Delta_h on a fixed complete smooth projective
// fan, with multilinear (mixed) extension to virtual polytopes.
class MixedIntegrator {
public:
    explicit MixedIntegrator(Fan fan) : fan_(std::move(fan)) {
        auto pr = is_projective(fan_);
        if (!pr.projective) throw PreconditionError("NotProjective", "fan admits no strictly convex support function");
        witness_ = pr.witness;
        walls_ = wall_functionals(fan_);
    }

    const Fan& fan() const { return fan_; }
    const QVector& witness() const { return witness_; }

    // I_f(h) for convex h.
    Rat integral(const Polynomial& f, const QVector& h) {
        if (f.is_zero()) return 0;
        auto key = std::make_pair(f.to_string(), h);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Rat v = integrate_over_polytope(f, polytope_from_support(fan_, h));
        cache_.emplace(std::move(key), v);
        return v;
    }

    // (1/m!) sum_S (-1)^{m-|S|} I_f(P0 + sum_{j in S} args_j), m = n + deg f.
    Rat mixed(const Polynomial& f, const std::vector<QVector>& args) {
        if (f.nvars() != fan_.dim) throw PreconditionError("DimensionMismatch", "integrand variable count");
        if (f.is_zero()) return 0;
        if (!f.is_homogeneous()) throw PreconditionError("NotHomogeneous", "mixed integral needs homogeneous f");
        const std::size_t m = args.size();
        if (m != fan_.dim + static_cast<std::size_t>(f.degree()))
            throw PreconditionError("DegreeMismatch", "mixed integral takes n + deg f arguments");
        for (const auto& a : args) check_support_length(fan_, a);
        const std::size_t nsub = std::size_t{1} << m;
        std::vector<QVector> partial(nsub, QVector(fan_.num_rays(), Rat(0)));
        for (std::size_t mask = 1; mask < nsub; ++mask) {
            std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
            partial[mask] = partial[mask & (mask - 1)] + args[low];
        }
        QVector anchor = witness_;
        for (int guard = 0;; ++guard) {
            bool ok = true;
            for (std::size_t mask = 0; mask < nsub && ok; ++mask) ok = convex(anchor + partial[mask]);
            if (ok) break;
            if (guard > 200) throw PreconditionError("AnchorSearch", "no convex anchor found");
            anchor = Rat(2) * anchor;
        }
        Rat sum = 0;
        for (std::size_t mask = 0; mask < nsub; ++mask) {
            std::size_t bits = static_cast<std::size_t>(__builtin_popcountll(mask));
            Rat v = integral(f, anchor + partial[mask]);
            sum += ((m - bits) % 2 == 0) ? v : -v;
        }
        return sum / factorial(static_cast<unsigned>(m));
    }

    // Polynomial extension of I_f evaluated at a possibly virtual h (f homogeneous).
    Rat diagonal(const Polynomial& f, const QVector& h) {
        if (f.is_zero()) return 0;
        if (convex(h)) return integral(f, h);
        std::size_t m = fan_.dim + static_cast<std::size_t>(f.degree());
        return mixed(f, std::vector<QVector>(m, h));
    }

    // As diagonal, for f not necessarily homogeneous.
    Rat extended(const Polynomial& g, const QVector& h) {
        Rat sum = 0;
        for (int d = 0; d <= g.degree(); ++d) sum += diagonal(g.homogeneous_part(d), h);
        return sum;
    }

    bool convex(const QVector& h) const {
        check_support_length(fan_, h);
        for (const auto& w : walls_)
            if (dot(w.margin, h) < 0) return false;
        return true;
    }

    // A convex support vector c * witness + delta for |delta_i| <= r.
    QVector perturbed_point(std::mt19937_64& rng, int r) const {
        Rat spread = 0;
        for (const auto& w : walls_) {
            Rat t = 0;
            for (const auto& x : w.margin) t += abs(x);
            spread = std::max(spread, t);
        }
        Rat c = spread * r + 1;
        QVector h = c * witness_;
        for (auto& x : h) x += static_cast<long long>(rng() % static_cast<std::uint64_t>(2 * r + 1)) - r;
        return h;
    }

private:
    Fan fan_;
    QVector witness_;
    std::vector<WallFunctional> walls_;
    std::map<std::pair<std::string, QVector>, Rat> cache_;
};

inline Rat mixed_integral(const Fan& fan, const Polynomial& f, const std::vector<QVector>& args) {
    MixedIntegrator mi(fan);
    return mi.mixed(f, args);
}

// The homogeneous polynomial P(h) of degree n + deg f with P(h) = I_f(Delta_h)
// for convex h, by exact interpolation on convex sample points, re-verified on
// fresh points.
inline Polynomial i_f_polynomial(MixedIntegrator& mi, const Polynomial& f) {
    const Fan& fan = mi.fan();
    const std::size_t s = fan.num_rays();
    if (f.nvars() != fan.dim) throw PreconditionError("DimensionMismatch", "integrand variable count");
    if (f.is_zero()) return Polynomial(s);
    if (!f.is_homogeneous()) throw PreconditionError("NotHomogeneous", "i_f_polynomial needs homogeneous f");
    const int deg = static_cast<int>(fan.dim) + f.degree();
    const auto monos = monomials_of_degree(s, deg);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::vector<QVector> rows;
    QVector values;
    int r = std::max(deg, 1);
    std::size_t want = monos.size() + 4;
    for (int round = 0; round < 8; ++round) {
        while (rows.size() < want) {
            QVector h = mi.perturbed_point(rng, r);
            QVector row(monos.size() + 1);
            for (std::size_t k = 0; k < monos.size(); ++k) row[k] = Polynomial::monomial(monos[k]).evaluate(h);
            row[monos.size()] = mi.integral(f, h);
            rows.push_back(std::move(row));
        }
        auto [red, piv] = rref(QMatrix::from_rows(rows, monos.size() + 1));
        if (!piv.empty() && piv.back() == monos.size())
            throw IdentityFailure("Interpolation", "integral values are not polynomial in h");
        if (piv.size() == monos.size()) {
            Polynomial p(s);
            for (std::size_t k = 0; k < monos.size(); ++k) p.add_term(monos[k], red(k, monos.size()));
            for (int check = 0; check < 3; ++check) {
                QVector h = mi.perturbed_point(rng, r + 1);
                if (p.evaluate(h) != mi.integral(f, h))
                    throw IdentityFailure("Interpolation", "interpolated polynomial fails at a fresh point");
            }
            return p;
        }
        ++r;
        want += monos.size();
    }
    throw IdentityFailure("Interpolation", "sample points never became unisolvent");
}

inline Polynomial i_f_polynomial(const Fan& fan, const Polynomial& f) {
    MixedIntegrator mi(fan);
    return i_f_polynomial(mi, f);
}

struct IdentityCheck {
    Rat lhs;
    Rat rhs;
    bool holds() const { return lhs == rhs; }
};

// d_I P_f at h versus f(A_sigma) |det sigma| when I spans sigma, else 0.
inline IdentityCheck square_free_derivative_check(MixedIntegrator& mi, const Polynomial& f, const QVector& h,
                                                  Cone idx) {
    const Fan& fan = mi.fan();
    if (idx.size() != fan.dim) throw PreconditionError("DimensionMismatch", "need n ray indices");
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw PreconditionError("NotSquareFree", "ray indices must be distinct");
    if (!is_strictly_convex_on(fan, h)) throw PreconditionError("NotStrictlyConvex", "h must be strictly convex");
    Polynomial p = i_f_polynomial(mi, f);
    for (auto i : idx) p = p.derivative(i);
    IdentityCheck out{p.evaluate(h), 0};
    if (fan.is_cone(idx)) {
        Rat det = determinant(fan.cone_matrix(idx));
        out.rhs = f.evaluate(dual_vertex(fan, idx, h)) * (det < 0 ? -det : det);
    }
    return out;
}

// int_{[0,1]^n} f(origin + M t) dt * |det M|, M with columns `edges`.
inline Rat integrate_over_parallelepiped(const Polynomial& f, const QVector& origin, const std::vector<QVector>& edges) {
    const std::size_t n = f.nvars();
    QMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = edges[j][i];
    Rat det = determinant(m);
    if (det == 0) return 0;
    if (det < 0) det = -det;
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::linear(m.row(i), origin[i]));
    Polynomial g = f.compose(images);
    Rat sum = 0;
    for (const auto& [e, c] : g.terms()) {
        Rat t = c;
        for (int k : e) t /= (k + 1);
        sum += t;
    }
    return det * sum;
}

// Signed chain sum_J (-1)^{n+|I_-|+|J|} int_{Delta(J)} f versus the integral over the
// parallelepiped at the vertex dual to I (zero when I is not a cone).
inline IdentityCheck convex_chain_identity_check(MixedIntegrator& mi, const Polynomial& f, const QVector& h,
                                                 const Cone& idx, const QVector& lambda) {
    const Fan& fan = mi.fan();
    const std::size_t n = fan.dim;
    if (idx.size() != n || lambda.size() != n) throw PreconditionError("DimensionMismatch", "need n rays and n shifts");
    std::size_t negatives = 0;
    for (const auto& l : lambda) {
        if (l == 0) throw PreconditionError("ZeroShift", "shifts must be nonzero");
        if (l < 0) ++negatives;
    }
    IdentityCheck out{0, 0};
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        QVector hj = h;
        std::size_t bits = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1) {
                hj[idx[k]] += lambda[k];
                ++bits;
            }
        if (!mi.convex(hj)) throw PreconditionError("NotConvex", "a shifted polytope is not convex");
        Rat v = mi.integral(f, hj);
        out.lhs += ((n + negatives + bits) % 2 == 0) ? v : -v;
    }
    Cone sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && fan.is_cone(sorted)) {
        QVector a = dual_vertex(fan, sorted, h);
        auto inv = inverse(fan.cone_matrix(sorted));
        std::vector<QVector> edges;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t pos = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), idx[k]) - sorted.begin());
            edges.push_back(lambda[k] * inv->col(pos));
        }
        out.rhs = integrate_over_parallelepiped(f, a, edges);
    }
    return out;
}

}  // namespace toric
