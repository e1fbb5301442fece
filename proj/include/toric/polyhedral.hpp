#pragma once

#include <toric/exactlin.hpp>
#include <toric/lp.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace toric {

using IVector = std::vector<long long>;
using Cone = std::vector<std::size_t>;  // sorted ray indices

inline QVector to_q(const IVector& v) {
    QVector q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = v[i];
    return q;
}

inline Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// A simplicial fan given by primitive rays and its maximal cones.
struct Fan {
    std::size_t dim = 0;
    std::vector<IVector> rays;
    std::vector<Cone> max_cones;

    std::size_t num_rays() const { return rays.size(); }
    QVector ray(std::size_t i) const { return to_q(rays.at(i)); }

    // n x n matrix whose rows are the rays of a full-dimensional cone.
    QMatrix cone_matrix(const Cone& c) const {
        QMatrix m(c.size(), dim);
        for (std::size_t r = 0; r < c.size(); ++r)
            for (std::size_t j = 0; j < dim; ++j) m(r, j) = rays[c[r]][j];
        return m;
    }

    // Is `s` (sorted) a face of some maximal cone?
    bool is_cone(const Cone& s) const {
        for (const auto& c : max_cones)
            if (std::includes(c.begin(), c.end(), s.begin(), s.end())) return true;
        return false;
    }
};

namespace detail {

inline std::vector<Cone> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<Cone> out;
    Cone cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// gcd of the maximal minors of the rows of `rows` (k x n, k <= n).
inline Int gcd_of_maximal_minors(const std::vector<IVector>& rows, std::size_t n) {
    const std::size_t k = rows.size();
    Int g = 0;
    for (const auto& cols : subsets_of_size(n, k)) {
        QMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = rows[i][cols[j]];
        Rat d = determinant(m);
        g = gcd_int(g, numerator_of(d));
        if (g == 1) break;
    }
    return g;
}

// Do cones a and b meet exactly in the cone spanned by their common rays?
inline bool proper_intersection(const Fan& f, const Cone& a, const Cone& b) {
    Cone only_a, only_b;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    if (only_a.empty() || only_b.empty()) return true;
    // sum lam_i a_i - sum mu_j b_j = 0, lam, mu >= 0, weight on the private rays = 1
    const std::size_t nv = a.size() + b.size();
    QMatrix m(f.dim + 1, nv);
    QVector rhs(f.dim + 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t r = 0; r < f.dim; ++r) m(r, i) = f.rays[a[i]][r];
        if (std::find(only_a.begin(), only_a.end(), a[i]) != only_a.end()) m(f.dim, i) = 1;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        for (std::size_t r = 0; r < f.dim; ++r) m(r, a.size() + j) = -f.rays[b[j]][r];
        if (std::find(only_b.begin(), only_b.end(), b[j]) != only_b.end()) m(f.dim, a.size() + j) = 1;
    }
    rhs[f.dim] = 1;
    return !lp_feasible(m, rhs);
}

}  // namespace detail

// Throws GeometryError on non-primitive rays, degenerate cones, or cones
// meeting outside a common face.
inline void validate_fan(const Fan& f) {
    if (f.dim == 0) throw GeometryError("InvalidFan", "lattice rank must be positive");
    std::set<IVector> seen;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        const auto& r = f.rays[i];
        if (r.size() != f.dim) throw GeometryError("InvalidFan", "ray " + std::to_string(i) + " has wrong length");
        Int g = 0;
        for (auto x : r) g = gcd_int(g, Int(x));
        if (g != 1) throw GeometryError("NonPrimitiveRay", "ray " + std::to_string(i) + " is zero or not primitive");
        if (!seen.insert(r).second) throw GeometryError("InvalidFan", "ray " + std::to_string(i) + " repeated");
    }
    if (f.max_cones.empty()) throw GeometryError("InvalidFan", "no maximal cones");
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        const auto& cone = f.max_cones[c];
        for (std::size_t k = 0; k < cone.size(); ++k) {
            if (cone[k] >= f.rays.size())
                throw GeometryError("InvalidFan", "cone " + std::to_string(c) + " refers to a missing ray");
            if (k > 0 && cone[k] <= cone[k - 1])
                throw GeometryError("InvalidFan", "cone " + std::to_string(c) + " indices not sorted and distinct");
        }
        if (cone.empty() || cone.size() > f.dim || rank(f.cone_matrix(cone)) != cone.size())
            throw GeometryError("DegenerateCone", "cone " + std::to_string(c) + " is not simplicial of full rank");
    }
    for (std::size_t a = 0; a < f.max_cones.size(); ++a)
        for (std::size_t b = a + 1; b < f.max_cones.size(); ++b)
            if (!detail::proper_intersection(f, f.max_cones[a], f.max_cones[b]))
                throw GeometryError("BadFaceIntersection",
                                    "cones " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
}

// Build and validate. Cone index lists are sorted first.
inline Fan make_fan(std::vector<IVector> rays, std::vector<Cone> cones) {
    Fan f;
    f.dim = rays.empty() ? 0 : rays.front().size();
    f.rays = std::move(rays);
    for (auto& c : cones) std::sort(c.begin(), c.end());
    std::sort(cones.begin(), cones.end());
    f.max_cones = std::move(cones);
    validate_fan(f);
    return f;
}

inline bool is_smooth(const Fan& f) {
    for (const auto& c : f.max_cones) {
        std::vector<IVector> rows;
        for (auto i : c) rows.push_back(f.rays[i]);
        if (detail::gcd_of_maximal_minors(rows, f.dim) != 1) return false;
    }
    return true;
}

inline bool is_pure_full_dimensional(const Fan& f) {
    for (const auto& c : f.max_cones)
        if (c.size() != f.dim) return false;
    return true;
}

inline bool is_complete(const Fan& f) {
    std::size_t k = f.max_cones.front().size();
    for (const auto& c : f.max_cones)
        if (c.size() != k) throw GeometryError("NotPure", "maximal cones of different dimensions");
    if (k != f.dim) return false;
    std::map<Cone, int> ridges;
    for (const auto& c : f.max_cones)
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            Cone r;
            for (std::size_t t = 0; t < c.size(); ++t)
                if (t != drop) r.push_back(c[t]);
            ++ridges[r];
        }
    for (const auto& [r, n] : ridges)
        if (n != 2) return false;
    return true;
}

inline void require_complete_smooth(const Fan& f) {
    if (!is_complete(f)) throw PreconditionError("NotComplete", "fan is not complete");
    if (!is_smooth(f)) throw PreconditionError("NotSmooth", "fan is not smooth");
}

// A wall between adjacent maximal cones: ray `j` of the neighbour expressed in
// the rays of `cone`. margin(h) = h_j - sum coeffs_k h_k must be >= 0 for convexity.
struct WallFunctional {
    std::size_t cone;
    std::size_t ray;
    QVector margin;  // linear functional on support vectors h in Q^{#rays}
};

inline std::vector<WallFunctional> wall_functionals(const Fan& f) {
    std::vector<WallFunctional> out;
    for (std::size_t a = 0; a < f.max_cones.size(); ++a) {
        const auto& ca = f.max_cones[a];
        QMatrix mt = f.cone_matrix(ca).transpose();
        for (std::size_t b = 0; b < f.max_cones.size(); ++b) {
            if (a == b) continue;
            const auto& cb = f.max_cones[b];
            Cone common;
            std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(common));
            if (common.size() + 1 != f.dim) continue;
            std::size_t j = 0;
            for (auto r : cb)
                if (!std::binary_search(common.begin(), common.end(), r)) j = r;
            auto mu = solve(mt, f.ray(j));
            QVector m(f.num_rays(), Rat(0));
            m[j] = 1;
            for (std::size_t k = 0; k < ca.size(); ++k) m[ca[k]] -= (*mu)[k];
            out.push_back({a, j, std::move(m)});
        }
    }
    return out;
}

inline void check_support_length(const Fan& f, const QVector& h) {
    if (h.size() != f.num_rays())
        throw PreconditionError("DimensionMismatch", "support vector length " + std::to_string(h.size()) +
                                                         " != number of rays " + std::to_string(f.num_rays()));
}

inline bool is_convex_on(const Fan& f, const QVector& h) {
    check_support_length(f, h);
    for (const auto& w : wall_functionals(f))
        if (dot(w.margin, h) < 0) return false;
    return true;
}

inline bool is_strictly_convex_on(const Fan& f, const QVector& h) {
    check_support_length(f, h);
    for (const auto& w : wall_functionals(f))
        if (dot(w.margin, h) <= 0) return false;
    return true;
}

struct Projectivity {
    bool projective = false;
    QVector witness;  // strictly convex integral support vector when projective
};

inline QVector primitive_integral(const QVector& v) {
    Int l = 1, g = 0;
    for (const auto& x : v) {
        Int d = denominator_of(x);
        l = l / gcd_int(l, d) * d;
    }
    QVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i] * Rat(l);
        g = gcd_int(g, numerator_of(out[i]));
    }
    if (g > 1)
        for (auto& x : out) x /= Rat(g);
    return out;
}

// Exact LP: maximize t subject to every wall margin >= t, t <= 1.
inline Projectivity is_projective(const Fan& f) {
    require_complete_smooth(f);
    const auto walls = wall_functionals(f);
    const std::size_t s = f.num_rays(), nw = walls.size();
    // columns: p (s), q (s), t, slack per wall, slack for t <= 1
    const std::size_t nv = 2 * s + 1 + nw + 1;
    QMatrix a(nw + 1, nv);
    QVector b(nw + 1, Rat(0)), c(nv, Rat(0));
    for (std::size_t w = 0; w < nw; ++w) {
        for (std::size_t i = 0; i < s; ++i) {
            a(w, i) = walls[w].margin[i];
            a(w, s + i) = -walls[w].margin[i];
        }
        a(w, 2 * s) = -1;
        a(w, 2 * s + 1 + w) = -1;
    }
    a(nw, 2 * s) = 1;
    a(nw, nv - 1) = 1;
    b[nw] = 1;
    c[2 * s] = 1;
    auto res = lp_maximize(a, b, c);
    Projectivity out;
    if (res.status != LpStatus::Optimal || res.value <= 0) return out;
    QVector h(s);
    for (std::size_t i = 0; i < s; ++i) h[i] = res.x[i] - res.x[s + i];
    out.projective = true;
    out.witness = primitive_integral(h);
    return out;
}

// Vertex A of Delta_h dual to a maximal cone: <A, e_i> = h_i for i in the cone.
inline QVector dual_vertex(const Fan& f, const Cone& cone, const QVector& h) {
    check_support_length(f, h);
    if (cone.size() != f.dim) throw PreconditionError("DimensionMismatch", "dual_vertex needs a maximal cone");
    QVector rhs(cone.size());
    for (std::size_t k = 0; k < cone.size(); ++k) rhs[k] = h[cone[k]];
    auto a = solve(f.cone_matrix(cone), rhs);
    if (!a) throw GeometryError("DegenerateCone", "cone rays are dependent");
    return *a;
}

struct Halfspace {
    QVector normal;  // normal . x <= bound
    Rat bound;
};

// Affine hull of a point set: origin plus reduced direction rows.
struct AffineFrame {
    QVector origin;
    std::vector<QVector> directions;  // rref rows
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return directions.size(); }

    QVector coordinates(const QVector& p) const {
        QVector d = p - origin, c(directions.size());
        for (std::size_t k = 0; k < directions.size(); ++k) c[k] = d[pivots[k]];
        return c;
    }

    QVector point(const QVector& c) const {
        QVector p = origin;
        for (std::size_t k = 0; k < directions.size(); ++k) axpy(p, c[k], directions[k]);
        return p;
    }
};

inline AffineFrame affine_frame(const std::vector<QVector>& pts) {
    AffineFrame fr;
    if (pts.empty()) return fr;
    fr.origin = pts.front();
    std::vector<QVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - fr.origin);
    if (diffs.empty()) return fr;
    auto [r, piv] = rref(QMatrix::from_rows(diffs, fr.origin.size()));
    for (std::size_t k = 0; k < piv.size(); ++k) fr.directions.push_back(r.row(k));
    fr.pivots = piv;
    return fr;
}

inline std::size_t affine_dimension(const std::vector<QVector>& pts) { return affine_frame(pts).dim(); }

class Polytope {
public:
    Polytope() = default;

    // Convex hull of a finite point set; redundant points are dropped.
    static Polytope from_points(std::size_t dim, std::vector<QVector> pts) {
        Polytope p;
        p.dim_ = dim;
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (const auto& q : pts)
            if (q.size() != dim) throw PreconditionError("DimensionMismatch", "point of wrong dimension");
        p.vertices_ = pts;
        if (pts.size() <= 2) return p;
        auto fr = affine_frame(pts);
        std::vector<QVector> coords;
        for (const auto& q : pts) coords.push_back(fr.coordinates(q));
        auto facets = facets_by_enumeration(coords, fr.dim());
        std::vector<QVector> keep;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::vector<QVector> normals;
            for (const auto& [normal, bound, members] : facets)
                if (std::binary_search(members.begin(), members.end(), i)) normals.push_back(normal);
            if (normals.size() >= fr.dim() && rank(QMatrix::from_rows(normals, fr.dim())) == fr.dim())
                keep.push_back(pts[i]);
        }
        p.vertices_ = keep;
        return p;
    }

    // {x : normal . x <= bound}, assumed bounded.
    static Polytope from_halfspaces(std::size_t dim, std::vector<Halfspace> hs) {
        std::vector<QVector> verts;
        for (const auto& sub : detail::subsets_of_size(hs.size(), dim)) {
            QMatrix m(dim, dim);
            QVector rhs(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                for (std::size_t j = 0; j < dim; ++j) m(k, j) = hs[sub[k]].normal[j];
                rhs[k] = hs[sub[k]].bound;
            }
            if (determinant(m) == 0) continue;
            auto x = solve(m, rhs);
            bool feasible = true;
            for (const auto& h : hs)
                if (dot(h.normal, *x) > h.bound) {
                    feasible = false;
                    break;
                }
            if (feasible) verts.push_back(*x);
        }
        return from_parts(dim, std::move(verts), std::move(hs));
    }

    // Trusted vertex list (duplicates allowed) and defining halfspaces.
    static Polytope from_parts(std::size_t dim, std::vector<QVector> verts, std::vector<Halfspace> hs) {
        Polytope p;
        p.dim_ = dim;
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        p.vertices_ = std::move(verts);
        p.halfspaces_ = std::move(hs);
        return p;
    }

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<QVector>& vertices() const { return vertices_; }
    const std::optional<std::vector<Halfspace>>& halfspaces() const { return halfspaces_; }
    bool empty() const { return vertices_.empty(); }
    std::size_t affine_dim() const { return affine_dimension(vertices_); }

    // Facets as sorted vertex index sets, relative to the affine hull.
    const std::vector<std::vector<std::size_t>>& facets() const {
        if (facets_) return *facets_;
        std::vector<std::vector<std::size_t>> out;
        const std::size_t d = affine_dim();
        if (halfspaces_ && d == dim_ && d > 0) {
            std::set<std::vector<std::size_t>> seen;
            for (const auto& h : *halfspaces_) {
                std::vector<std::size_t> tight;
                std::vector<QVector> pts;
                for (std::size_t i = 0; i < vertices_.size(); ++i)
                    if (dot(h.normal, vertices_[i]) == h.bound) {
                        tight.push_back(i);
                        pts.push_back(vertices_[i]);
                    }
                if (!tight.empty() && affine_dimension(pts) + 1 == d && seen.insert(tight).second)
                    out.push_back(tight);
            }
        } else if (d > 0) {
            auto fr = affine_frame(vertices_);
            std::vector<QVector> coords;
            for (const auto& q : vertices_) coords.push_back(fr.coordinates(q));
            for (auto& fc : facets_by_enumeration(coords, d)) out.push_back(std::move(fc.members));
        }
        std::sort(out.begin(), out.end());
        facets_ = std::move(out);
        return *facets_;
    }

    // Halfspace description of a full-dimensional polytope.
    std::vector<Halfspace> facet_halfspaces() const {
        if (affine_dim() != dim_) throw PreconditionError("LowerDimensional", "facet_halfspaces needs full dimension");
        if (halfspaces_) return *halfspaces_;
        std::vector<Halfspace> out;
        for (auto& fc : facets_by_enumeration(vertices_, dim_)) out.push_back({fc.normal, fc.bound});
        return out;
    }

    bool contains(const QVector& x) const {
        if (halfspaces_) {
            for (const auto& h : *halfspaces_)
                if (dot(h.normal, x) > h.bound) return false;
            return true;
        }
        auto pts = vertices_;
        pts.push_back(x);
        return Polytope::from_points(dim_, pts).vertices() == vertices_;
    }

private:
    struct FacetData {
        QVector normal;
        Rat bound;
        std::vector<std::size_t> members;
    };

    // Brute force over d-subsets; points are coordinates in a d-dimensional affine frame.
    static std::vector<FacetData> facets_by_enumeration(const std::vector<QVector>& pts, std::size_t d) {
        std::vector<FacetData> out;
        std::set<std::vector<std::size_t>> seen;
        for (const auto& sub : detail::subsets_of_size(pts.size(), d)) {
            std::vector<QVector> diffs;
            for (std::size_t k = 1; k < sub.size(); ++k) diffs.push_back(pts[sub[k]] - pts[sub[0]]);
            QVector normal;
            if (diffs.empty()) {
                normal = QVector(d, Rat(1));
            } else {
                auto ker = kernel_basis(QMatrix::from_rows(diffs, d));
                if (ker.size() != 1) continue;
                normal = ker.front();
            }
            Rat b = dot(normal, pts[sub[0]]);
            bool le = true, ge = true;
            std::vector<std::size_t> tight;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                Rat v = dot(normal, pts[i]);
                if (v > b) le = false;
                if (v < b) ge = false;
                if (v == b) tight.push_back(i);
            }
            if (!le && !ge) continue;
            if (!le) {
                normal = Rat(-1) * normal;
                b = -b;
            }
            if (!seen.insert(tight).second) continue;
            out.push_back({normal, b, tight});
        }
        return out;
    }

    std::size_t dim_ = 0;
    std::vector<QVector> vertices_;
    std::optional<std::vector<Halfspace>> halfspaces_;
    mutable std::optional<std::vector<std::vector<std::size_t>>> facets_;
};

// Delta_h = {x : <x, e_i> <= h_i}; h must be convex on the (complete) fan.
inline Polytope polytope_from_support(const Fan& f, const QVector& h) {
    if (!is_convex_on(f, h)) throw GeometryError("NotConvex", "support vector is not convex on the fan");
    std::vector<QVector> verts;
    for (const auto& c : f.max_cones) verts.push_back(dual_vertex(f, c, h));
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < f.num_rays(); ++i) hs.push_back({f.ray(i), h[i]});
    return Polytope::from_parts(f.dim, std::move(verts), std::move(hs));
}

// h_i = max over vertices of <v, e_i>; throws FanTooCoarse if the normal fan
// of p does not coarsen f.
inline QVector support_function(const Polytope& p, const Fan& f) {
    if (p.empty()) throw PreconditionError("EmptyPolytope", "support function of empty polytope");
    if (p.ambient_dim() != f.dim) throw PreconditionError("DimensionMismatch", "polytope and fan dimensions differ");
    QVector h(f.num_rays());
    for (std::size_t i = 0; i < f.num_rays(); ++i) {
        QVector e = f.ray(i);
        Rat best = dot(p.vertices().front(), e);
        for (const auto& v : p.vertices()) best = std::max(best, dot(v, e));
        h[i] = best;
    }
    if (!is_convex_on(f, h) || polytope_from_support(f, h).vertices() != p.vertices())
        throw GeometryError("FanTooCoarse", "normal fan of the polytope does not coarsen the fan");
    return h;
}

inline Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw PreconditionError("DimensionMismatch", "minkowski_sum");
    std::vector<QVector> pts;
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) pts.push_back(u + v);
    return Polytope::from_points(a.ambient_dim(), std::move(pts));
}

}  // namespace toric
