#pragma once

#include <toric/bundle.hpp>
#include <toric/standard_fans.hpp>

#include <optional>

namespace toric {

inline BaseData base_point() { return {"point", GradedAlgebra::point(), {0, {Rat(1)}}}; }

// Q[H]/(H^{m+1}), ell(H^m) = 1.
inline BaseData base_projective(int m) {
    if (m < 0) throw PreconditionError("DimensionMismatch", "negative projective dimension");
    static const GradedAlgebra q = GradedAlgebra::point();
    RPoly h = RPoly::variable(&q, 1, 0);
    PresentedQuotient pq(q, 1, {h.pow(static_cast<unsigned>(m + 1))}, 2 * m, {"H"});
    TopFunctional o{2 * m, {Rat(1) / pq.normal_form(h.pow(static_cast<unsigned>(m)), 2 * m).coeffs.at(0)}};
    return {"p" + std::to_string(m), pq.algebra(), o};
}

namespace detail {

// epsilon_i in fundamental-weight coordinates w_1..w_{n-1}.
inline std::vector<RPoly> epsilons(const GradedAlgebra* q, int n) {
    const std::size_t v = static_cast<std::size_t>(n - 1);
    std::vector<RPoly> eps;
    for (int i = 0; i < n; ++i) {
        RPoly e(q, v);
        if (i < n - 1) e += RPoly::variable(q, v, static_cast<std::size_t>(i));
        if (i > 0) e = e - RPoly::variable(q, v, static_cast<std::size_t>(i - 1));
        eps.push_back(e);
    }
    return eps;
}

inline std::vector<RPoly> elementary_symmetric(const GradedAlgebra* q, const std::vector<RPoly>& xs, std::size_t nv) {
    std::vector<RPoly> e(xs.size() + 1, RPoly(q, nv));
    e[0] = RPoly::constant(q, nv, 1);
    for (const auto& x : xs)
        for (std::size_t k = xs.size(); k >= 1; --k) e[k] = e[k] + e[k - 1] * x;
    return e;
}

}  // namespace detail

// Coinvariant algebra of S_n on the weight lattice of SL_n, generators w_i
// (fundamental weights). Orientation: the product of positive roots has
// ell = |W| = n!, i.e. the point class is that product divided by |W|.
inline BaseData base_flag_sl(int n) {
    if (n < 2 || n > 4) throw PreconditionError("UnsupportedRank", "flag bases are provided for SL_2..SL_4");
    static const GradedAlgebra q = GradedAlgebra::point();
    const std::size_t v = static_cast<std::size_t>(n - 1);
    auto eps = detail::epsilons(&q, n);
    auto e = detail::elementary_symmetric(&q, eps, v);
    std::vector<RPoly> rels(e.begin() + 2, e.end());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < v; ++i) names.push_back("w" + std::to_string(i + 1));
    const int top = n * (n - 1);
    PresentedQuotient pq(q, v, rels, top, names);
    RPoly roots = RPoly::constant(&q, v, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) roots = roots * (eps[static_cast<std::size_t>(i)] - eps[static_cast<std::size_t>(j)]);
    Element cls = pq.normal_form(roots, top);
    TopFunctional o{top, {factorial(static_cast<unsigned>(n)) / cls.coeffs.at(0)}};
    return {"flag_sl" + std::to_string(n), pq.algebra(), o};
}

// Class of the weight sum a_i w_i in the flag base.
inline Element flag_weight_class(const BaseData& flag, const QVector& a) {
    auto g = flag.algebra;
    Element out = g.zero(2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto loc = g.find_label("w" + std::to_string(i + 1));
        if (!loc || loc->first != 2) throw PreconditionError("NotFlagBase", "missing fundamental weight class");
        out = out + a[i] * g.basis_element(2, loc->second);
    }
    return out;
}

// f_W(a) = prod_{i<j} (a_i + ... + a_{j-1}) / (j - i) in fundamental-weight coordinates.
inline Polynomial weyl_top_polynomial_sl(int n) {
    const std::size_t v = static_cast<std::size_t>(n - 1);
    Polynomial f = Polynomial::constant(v, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Polynomial s(v);
            for (int k = i; k < j; ++k) s += Polynomial::variable(v, static_cast<std::size_t>(k));
            f = f * (Rat(1, j - i) * s);
        }
    return f;
}

// prod_{i<j} (a_i + ... + a_{j-1} + j - i) / (j - i): dimension of V_lambda.
inline Rat weyl_dimension_sl(int n, const QVector& a) {
    Rat d = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat s = j - i;
            for (int k = i; k < j; ++k) s += a[static_cast<std::size_t>(k)];
            d *= s / (j - i);
        }
    return d;
}

inline int gz_pattern_dim(int n) { return n * (n - 1) / 2; }

namespace detail {

// Interlacing inequalities on (a_1..a_{n-1}, pattern) where the top row is
// lambda_i = a_i + ... + a_{n-1}. Pattern rows of length n-1, ..., 1.
inline std::vector<Halfspace> gz_lifted_halfspaces(int n) {
    const std::size_t na = static_cast<std::size_t>(n - 1);
    const std::size_t dim = na + static_cast<std::size_t>(gz_pattern_dim(n));
    // coordinate vectors of each entry of each row, row n is the top row
    std::vector<std::vector<QVector>> rows(static_cast<std::size_t>(n + 1));
    for (int i = 0; i < n; ++i) {
        QVector v(dim, Rat(0));
        for (int k = i; k < n - 1; ++k) v[static_cast<std::size_t>(k)] = 1;
        rows[static_cast<std::size_t>(n)].push_back(v);
    }
    std::size_t next = na;
    for (int r = n - 1; r >= 1; --r)
        for (int j = 0; j < r; ++j) rows[static_cast<std::size_t>(r)].push_back(unit_vector(dim, next++));
    std::vector<Halfspace> hs;
    for (int r = n - 1; r >= 1; --r)
        for (int j = 0; j < r; ++j) {
            const QVector& x = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            const QVector& up = rows[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(j)];
            const QVector& low = rows[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(j + 1)];
            hs.push_back({x - up, Rat(0)});
            hs.push_back({low - x, Rat(0)});
        }
    return hs;
}

}  // namespace detail

// Gelfand-Zetlin polytope of the dominant weight a (fundamental coordinates).
inline Polytope gz_polytope(int n, const QVector& a) {
    if (a.size() != static_cast<std::size_t>(n - 1)) throw PreconditionError("DimensionMismatch", "weight length");
    for (const auto& x : a)
        if (x < 0) throw PreconditionError("NotDominant", "weight must be dominant");
    const std::size_t na = a.size();
    const std::size_t dim = static_cast<std::size_t>(gz_pattern_dim(n));
    std::vector<Halfspace> hs;
    for (const auto& h : detail::gz_lifted_halfspaces(n)) {
        QVector normal(h.normal.begin() + static_cast<std::ptrdiff_t>(na), h.normal.end());
        Rat bound = h.bound;
        for (std::size_t k = 0; k < na; ++k) bound -= h.normal[k] * a[k];
        hs.push_back({normal, bound});
    }
    return Polytope::from_halfspaces(dim, hs);
}

// Lattice points by enumeration over the bounding box.
inline std::size_t count_lattice_points(const Polytope& p) {
    if (p.empty()) return 0;
    const std::size_t d = p.ambient_dim();
    std::vector<long long> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        Rat mn = p.vertices().front()[i], mx = mn;
        for (const auto& v : p.vertices()) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
        }
        Int c = numerator_of(mn) / denominator_of(mn);
        if (Rat(c) > mn) c -= 1;
        lo[i] = c.convert_to<long long>();
        hi[i] = (numerator_of(mx) / denominator_of(mx)).convert_to<long long>();
        if (Rat(hi[i] + 1) <= mx) hi[i] += 1;
    }
    std::size_t count = 0;
    QVector x(d);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == d) {
            if (p.contains(x)) ++count;
            return;
        }
        for (long long t = lo[i]; t <= hi[i]; ++t) {
            x[i] = t;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return count;
}

inline IdentityCheck gz_volume_check(int n, const QVector& a) {
    return {volume(gz_polytope(n, a)), weyl_top_polynomial_sl(n).evaluate(a)};
}

// Bundle over G/B for SL_n with characters from the sublattice spanned by the
// columns of `lattice` ((n-1) x r, fundamental coordinates) and fan of rank r.
inline BundleSpec flag_bundle_spec(int n, const std::vector<IVector>& lattice, Fan fan) {
    BaseData flag = base_flag_sl(n);
    BundleSpec spec{"flag_sl" + std::to_string(n) + "_bundle", flag, {}, std::move(fan)};
    if (lattice.size() != static_cast<std::size_t>(n - 1)) throw PreconditionError("DimensionMismatch", "lattice rows");
    const std::size_t r = spec.fan.dim;
    for (std::size_t m = 0; m < r; ++m) {
        QVector col(lattice.size());
        for (std::size_t i = 0; i < lattice.size(); ++i) col[i] = lattice[i].at(m);
        spec.chern.push_back(flag_weight_class(flag, col));
    }
    return spec;
}

// rho(Delta0 + gamma)^{r+N} versus (r+N)! int_{Delta0} f_W(L x + gamma) dx.
inline IdentityCheck brion_kazarnovskii_check(int n, const std::vector<IVector>& lattice, const Fan& fan,
                                              const QVector& h0, const QVector& gamma) {
    ToricBundle b(flag_bundle_spec(n, lattice, fan));
    const std::size_t r = fan.dim;
    const int big_n = gz_pattern_dim(n);
    IdentityCheck out;
    const auto& sr = b.sr();
    Element cls = sr.rho(h0) + sr.pullback(flag_weight_class(b.spec().base, gamma));
    out.lhs = sr.top(sr.algebra.power(cls, static_cast<unsigned>(static_cast<int>(r) + big_n)));
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n - 1); ++i) {
        QVector row(r);
        for (std::size_t m = 0; m < r; ++m) row[m] = lattice[i][m];
        images.push_back(Polynomial::linear(row, gamma.at(i)));
    }
    Polynomial g = weyl_top_polynomial_sl(n).compose(images);
    out.rhs = factorial(static_cast<unsigned>(static_cast<int>(r) + big_n)) * b.integrator().extended(g, h0);
    return out;
}

// In P(V + O) over `base` with V = sum O(d_i), t = class of the last ray satisfies
// t^{n+1} + c_1 t^n + ... + c_n t = 0.
struct ProjectiveBundleResult {
    bool relation_holds = false;
    bool leray_hirsch = false;  // total dimension (n+1) dim H^*(B)
    std::string relation;
    bool ok() const { return relation_holds && leray_hirsch; }
};

inline ProjectiveBundleResult projective_bundle_check(const BaseData& base, const std::vector<long long>& degrees) {
    const std::size_t n = degrees.size();
    if (n == 0) throw PreconditionError("DimensionMismatch", "need at least one line bundle");
    Element hcls = base.algebra.zero(2);
    if (base.algebra.dim(2) > 0) hcls = base.algebra.basis_element(2, 0);
    BundleSpec spec{"projective_bundle", base, {}, fan_projective(n)};
    for (auto d : degrees) spec.chern.push_back(Rat(d) * hcls);
    ToricBundle b(spec);
    const auto& sr = b.sr();
    const auto& a = sr.algebra;
    Element t = sr.variable(n);
    // elementary symmetric functions of the c_i in the base
    std::vector<Element> e{base.algebra.unit()};
    for (std::size_t k = 1; k <= n; ++k) e.push_back(base.algebra.zero(static_cast<int>(2 * k)));
    for (const auto& c : spec.chern)
        for (std::size_t k = n; k >= 1; --k) e[k] = e[k] + base.algebra.multiply(e[k - 1], c);
    const int deg = 2 * static_cast<int>(n + 1);
    Element rel = a.zero(deg);
    std::string text = "t^" + std::to_string(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        rel = rel + a.multiply(sr.pullback(e[i]), a.power(t, static_cast<unsigned>(n + 1 - i)));
        if (i > 0) text += " + (" + base.algebra.format(e[i]) + ")*t^" + std::to_string(n + 1 - i);
    }
    ProjectiveBundleResult out;
    out.relation = text + " = 0";
    out.relation_holds = rel.is_zero();
    out.leray_hirsch = a.total_dim() == (n + 1) * base.algebra.total_dim();
    return out;
}

// int_Delta f_W versus the volume of the lifted polytope {(a, y) : a in Delta, y in GZ(a)}.
inline IdentityCheck string_lift_volume(int n, const Polytope& delta) {
    const std::size_t na = static_cast<std::size_t>(n - 1);
    if (delta.ambient_dim() != na) throw PreconditionError("DimensionMismatch", "polytope must live in M_R(T)");
    for (const auto& v : delta.vertices())
        for (const auto& x : v)
            if (x <= 0) throw PreconditionError("ChamberViolation", "polytope must lie in the open positive chamber");
    IdentityCheck out{0, 0};
    out.lhs = integrate_over_polytope(weyl_top_polynomial_sl(n), delta);
    if (delta.affine_dim() < na) return out;
    const std::size_t dim = na + static_cast<std::size_t>(gz_pattern_dim(n));
    std::vector<Halfspace> hs = detail::gz_lifted_halfspaces(n);
    for (const auto& h : delta.facet_halfspaces()) {
        QVector normal(dim, Rat(0));
        std::copy(h.normal.begin(), h.normal.end(), normal.begin());
        hs.push_back({normal, h.bound});
    }
    out.rhs = volume(Polytope::from_halfspaces(dim, hs));
    return out;
}

// ---------------------------------------------------------------------------
// Named entries

inline std::optional<Fan> catalog_fan(const std::string& name) {
    if (name == "p1") return fan_p1();
    if (name == "p2") return fan_p2();
    if (name == "p3") return fan_projective(3);
    if (name == "p1xp1") return fan_p1xp1();
    if (name == "f1") return fan_f1();
    if (name == "quadrant") return fan_quadrant();
    return std::nullopt;
}

inline std::optional<BaseData> catalog_base(const std::string& name) {
    if (name == "point") return base_point();
    if (name == "p1") return base_projective(1);
    if (name == "p2") return base_projective(2);
    if (name == "p3") return base_projective(3);
    if (name == "flag_sl2") return base_flag_sl(2);
    if (name == "flag_sl3") return base_flag_sl(3);
    if (name == "flag_sl4") return base_flag_sl(4);
    return std::nullopt;
}

namespace detail {

inline BundleSpec line_sum_spec(const std::string& name, const BaseData& base, Fan fan, const std::vector<long long>& d) {
    BundleSpec s{name, base, {}, std::move(fan)};
    Element h = base.algebra.dim(2) > 0 ? base.algebra.basis_element(2, 0) : base.algebra.zero(2);
    for (auto k : d) s.chern.push_back(Rat(k) * h);
    return s;
}

}  // namespace detail

// Named specs, plus "BASE+FAN" for the trivial bundle.
inline std::optional<BundleSpec> catalog_spec(const std::string& name) {
    if (name == "hirzebruch_1") return detail::line_sum_spec(name, base_projective(1), fan_p1(), {1});
    if (name == "p1xp1_over_p1") return detail::line_sum_spec(name, base_projective(1), fan_p1xp1(), {1, 2});
    if (name == "p1_over_p2") return detail::line_sum_spec(name, base_projective(2), fan_p1(), {1});
    if (name == "rank2_over_p2") return detail::line_sum_spec(name, base_projective(2), fan_p2(), {1, 2});
    if (name == "flag_sl2_p1") {
        auto s = flag_bundle_spec(2, {{1}}, fan_p1());
        s.name = name;
        return s;
    }
    if (name == "flag_sl3_p1xp1") {
        auto s = flag_bundle_spec(3, {{1, 0}, {0, 1}}, fan_p1xp1());
        s.name = name;
        return s;
    }
    if (name == "flag_sl3_p2") {
        auto s = flag_bundle_spec(3, {{1, 0}, {0, 1}}, fan_p2());
        s.name = name;
        return s;
    }
    auto plus = name.find('+');
    if (plus != std::string::npos) {
        auto base = catalog_base(name.substr(0, plus));
        auto fan = catalog_fan(name.substr(plus + 1));
        if (base && fan) return detail::line_sum_spec(name, *base, *fan, std::vector<long long>(fan->dim, 0));
    }
    return std::nullopt;
}

inline std::vector<std::string> catalog_spec_names() {
    return {"point+p1",      "point+p2",      "point+p1xp1", "point+f1",     "p1+p1",         "hirzebruch_1",
            "p1xp1_over_p1", "p1_over_p2",    "rank2_over_p2", "flag_sl2_p1", "flag_sl3_p1xp1", "flag_sl3_p2"};
}

}  // namespace toric
