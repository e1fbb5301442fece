#pragma once

#include <toric/galg.hpp>
#include <toric/integrate.hpp>

#include <memory>
#include <sstream>

namespace toric {

struct BaseData {
    std::string name;
    GradedAlgebra algebra;
    TopFunctional orientation;  // on the top degree k
};

struct BundleSpec {
    std::string name;
    BaseData base;
    std::vector<Element> chern;  // c(epsilon_m) for the lattice basis, each of degree 2
    Fan fan;
};

enum class EllNormalization {
    MixedIntegral,  // ell(gamma x^beta) = I_gamma(h_beta) as a mixed integral
    Intersection,   // scaled by (n+i)!/i!, the intersection pairing on E
};

// Expansion of (sum_j x_j C_j)^i * gamma as a polynomial with coefficients in R.
inline std::map<Exponent, Element> r_valued_power(const GradedAlgebra& r, const std::vector<Element>& linear,
                                                  const Element& gamma, int i) {
    const std::size_t nv = linear.size();
    std::map<Exponent, Element> cur{{Exponent(nv, 0), gamma}};
    for (int step = 0; step < i; ++step) {
        std::map<Exponent, Element> next;
        for (const auto& [e, el] : cur)
            for (std::size_t j = 0; j < nv; ++j) {
                Element prod = r.multiply(el, linear[j]);
                if (prod.is_zero()) continue;
                Exponent f = e;
                f[j] += 1;
                auto it = next.find(f);
                if (it == next.end())
                    next.emplace(f, prod);
                else
                    it->second = it->second + prod;
            }
        cur = std::move(next);
    }
    return cur;
}

struct SrRing {
    std::unique_ptr<PresentedQuotient> pq;  // truncated one degree above the top
    GradedAlgebra algebra;                  // restricted to degrees <= top
    TopFunctional top;
    std::vector<Cone> minimal_nonfaces;

    Element variable(std::size_t i) const { return pq->variable_class(i); }
    Element pullback(const Element& r) const { return pq->coefficient_class(r); }
    Element rho(const QVector& h) const {
        Element out = algebra.zero(2);
        for (std::size_t i = 0; i < h.size(); ++i) out = out + h[i] * variable(i);
        return out;
    }
};

struct SdRing {
    std::unique_ptr<PresentedQuotient> free;  // R[x] truncated at the top degree
    TopFunctional ell;                        // on the free algebra
    SdQuotient sd;
};

struct DiffRing {
    AnnQuotient ann;
    std::vector<Element> complement;  // degree-2 base classes for the t variables
    std::size_t num_rays = 0;
};

struct CrossValidation {
    std::vector<std::size_t> dims_sd, dims_sr;
    IsoResult iso;
    bool top_equal = false;
    bool sd_poincare = false, sr_poincare = false;
    bool ok() const { return iso.isomorphic && top_equal && sd_poincare && sr_poincare && dims_sd == dims_sr; }
};

class ToricBundle {
public:
    explicit ToricBundle(BundleSpec spec) : spec_(std::move(spec)) {
        validate();
        integrator_ = std::make_unique<MixedIntegrator>(spec_.fan);
    }

    const BundleSpec& spec() const { return spec_; }
    const GradedAlgebra& base() const { return spec_.base.algebra; }
    std::size_t rank() const { return spec_.fan.dim; }
    std::size_t num_rays() const { return spec_.fan.num_rays(); }
    int base_degree() const { return spec_.base.orientation.degree; }
    int top_degree() const { return base_degree() + 2 * static_cast<int>(rank()); }
    MixedIntegrator& integrator() { return *integrator_; }

    // f_gamma(x) = ell_B(c(x)^i gamma) as a polynomial on M_R.
    Polynomial f_gamma(const Element& gamma, int i) const {
        if (i < 0 || gamma.degree + 2 * i != base_degree())
            throw PreconditionError("DegreeMismatch", "deg gamma + 2i must equal the base degree");
        Polynomial f(rank());
        for (const auto& [e, el] : r_valued_power(base(), spec_.chern, gamma, i)) f.add_term(e, spec_.base.orientation(el));
        return f;
    }

    // ell on the free algebra R[x] truncated at the top degree.
    TopFunctional ell_functional(const PresentedQuotient& free, EllNormalization norm) {
        TopFunctional ell{top_degree(), {}};
        const int n = static_cast<int>(rank());
        for (std::size_t b = 0; b < free.algebra().dim(top_degree()); ++b) {
            const RMonomial& m = free.rep(top_degree(), b);
            const int i = total_degree(m.x) - n;
            if (i < 0) {
                ell.values.push_back(0);
                continue;
            }
            std::vector<QVector> args;
            for (std::size_t v = 0; v < m.x.size(); ++v)
                for (int k = 0; k < m.x[v]; ++k) args.push_back(unit_vector(num_rays(), v));
            Rat val = integrator_->mixed(f_gamma(base().basis_element(m.rdeg, m.ridx), i), args);
            if (norm == EllNormalization::Intersection)
                val *= factorial(static_cast<unsigned>(n + i)) / factorial(static_cast<unsigned>(i));
            ell.values.push_back(val);
        }
        return ell;
    }

    const SrRing& sr() {
        if (!sr_) sr_ = std::make_unique<SrRing>(build_sr());
        return *sr_;
    }

    // Element of H^*(E) from a homogeneous element of R[x].
    Element class_of(const RPoly& p, int degree) { return sr().pq->normal_form(p, degree); }

    RPoly rho_poly(const QVector& h) const {
        check_support_length(spec_.fan, h);
        RPoly out(&base(), num_rays());
        for (std::size_t i = 0; i < h.size(); ++i) out += h[i] * RPoly::variable(&base(), num_rays(), i);
        return out;
    }

private:
    void validate() const {
        spec_.base.algebra.validate();
        const auto& o = spec_.base.orientation;
        if (o.degree != base().top_degree())
            throw PreconditionError("DegreeMismatch", "orientation must live in the top degree of the base");
        if (!check_poincare(base(), o))
            throw PreconditionError("NotPoincare", "base algebra with its orientation is not a Poincare duality algebra");
        if (spec_.chern.size() != spec_.fan.dim)
            throw PreconditionError("DimensionMismatch", "need one Chern class per lattice basis vector");
        for (const auto& c : spec_.chern)
            if (c.degree != 2 || c.coeffs.size() != base().dim(2))
                throw PreconditionError("DegreeMismatch", "Chern classes must be degree-2 base elements");
        require_complete_smooth(spec_.fan);
    }

    SrRing build_sr() {
        const std::size_t s = num_rays(), n = rank();
        SrRing out;
        std::vector<RPoly> rels;
        for (std::size_t size = 2; size <= n + 1; ++size)
            for (const auto& sub : detail::subsets_of_size(s, size)) {
                if (spec_.fan.is_cone(sub)) continue;
                bool minimal = true;
                for (const auto& m : out.minimal_nonfaces)
                    if (std::includes(sub.begin(), sub.end(), m.begin(), m.end())) minimal = false;
                if (!minimal) continue;
                out.minimal_nonfaces.push_back(sub);
                RPoly mono = RPoly::constant(&base(), s, 1);
                for (auto i : sub) mono = mono * RPoly::variable(&base(), s, i);
                rels.push_back(mono);
            }
        for (std::size_t m = 0; m < n; ++m) {
            RPoly lin = RPoly::from_element(&base(), s, spec_.chern[m]);
            for (std::size_t i = 0; i < s; ++i)
                if (spec_.fan.rays[i][m] != 0)
                    lin = lin - Rat(spec_.fan.rays[i][m]) * RPoly::variable(&base(), s, i);
            rels.push_back(lin);
        }
        const int top = top_degree();
        out.pq = std::make_unique<PresentedQuotient>(base(), s, rels, top + 2);
        if (out.pq->algebra().dim(top + 2) != 0)
            throw IdentityFailure("SrNotTruncated", "Stanley-Reisner ring is nonzero above the top degree");
        out.algebra = out.pq->algebra().truncated(top);
        if (out.algebra.dim(top) != 1) throw IdentityFailure("SrTopDegree", "top degree is not one-dimensional");
        // point class: x_sigma times the base class with ell_B = 1
        const auto& o = spec_.base.orientation;
        std::size_t w = 0;
        while (o.values[w] == 0) ++w;
        Element omega = (Rat(1) / o.values[w]) * base().basis_element(base_degree(), w);
        QVector ref;
        for (const auto& cone : spec_.fan.max_cones) {
            RPoly p = out.pq->lift(omega);
            for (auto i : cone) p = p * out.pq->var(i);
            QVector v = out.pq->normal_form(p, top).coeffs;
            if (ref.empty()) ref = v;
            if (v != ref || v[0] == 0)
                throw IdentityFailure("SrPointClass", "x_sigma * [pt_B] differs between maximal cones");
        }
        out.top = {top, {Rat(1) / ref[0]}};
        return out;
    }

    BundleSpec spec_;
    std::unique_ptr<MixedIntegrator> integrator_;
    std::unique_ptr<SrRing> sr_;
};

inline const SrRing& ring_via_sr(ToricBundle& b) { return b.sr(); }

inline SdRing ring_via_sd(ToricBundle& b, EllNormalization norm = EllNormalization::Intersection) {
    SdRing out;
    out.free = std::make_unique<PresentedQuotient>(b.base(), b.num_rays(), std::vector<RPoly>{}, b.top_degree());
    out.ell = b.ell_functional(*out.free, norm);
    out.sd = sd_quotient(out.free->algebra(), out.ell);
    return out;
}

// Images in the SR ring of the sd quotient's basis, via free representatives.
inline std::map<std::pair<int, std::size_t>, Element> sd_to_sr_map(ToricBundle& b, const SdRing& sd) {
    std::map<std::pair<int, std::size_t>, Element> m;
    const auto& a = sd.sd.algebra;
    for (int d = 2; d <= a.top_degree(); d += 2)
        for (std::size_t i = 0; i < a.dim(d); ++i) {
            const RMonomial& rep = sd.free->rep(d, sd.sd.source[static_cast<std::size_t>(d / 2)][i]);
            m[{d, i}] = b.class_of(RPoly::monomial(&b.base(), rep), d);
        }
    return m;
}

inline CrossValidation cross_validate(ToricBundle& b) {
    const SrRing& sr = b.sr();
    SdRing sd = ring_via_sd(b);
    CrossValidation out;
    out.dims_sd = sd.sd.algebra.dims();
    out.dims_sr = sr.algebra.dims();
    out.sd_poincare = check_poincare(sd.sd.algebra, sd.sd.ell);
    out.sr_poincare = check_poincare(sr.algebra, sr.top);
    if (out.dims_sd != out.dims_sr) {
        out.iso = {false, "graded dimensions differ"};
        return out;
    }
    auto m = sd_to_sr_map(b, sd);
    out.iso = graded_isomorphic(sd.sd.algebra, sr.algebra, m);
    const int top = b.top_degree();
    out.top_equal = true;
    for (std::size_t i = 0; i < sd.sd.algebra.dim(top); ++i)
        out.top_equal = out.top_equal && sd.sd.ell(sd.sd.algebra.basis_element(top, i)) == sr.top(m.at({top, i}));
    return out;
}

// (n+i)! I_gamma(h) versus i! ell_top(rho(h)^{n+i} p^* gamma); h may be virtual.
inline IdentityCheck verify_bkk(ToricBundle& b, const Element& gamma, int i, const QVector& h) {
    const unsigned m = static_cast<unsigned>(static_cast<int>(b.rank()) + i);
    Polynomial f = b.f_gamma(gamma, i);
    IdentityCheck out;
    out.lhs = factorial(m) * b.integrator().diagonal(f, h);
    const auto& sr = b.sr();
    Element rho = sr.rho(h);
    Element prod = sr.algebra.multiply(sr.algebra.power(rho, m), sr.pullback(gamma));
    out.rhs = factorial(static_cast<unsigned>(i)) * sr.top(prod);
    return out;
}

// b_{2i} = (n+i)!/i! int_Delta c(x)^i, an element of R in degree 2i, checked
// against rho(Delta)^{n+i} paired with every pullback of complementary degree.
inline Element horizontal_part(ToricBundle& b, const QVector& h, int i) {
    const auto& r = b.base();
    const int n = static_cast<int>(b.rank());
    if (i < 0 || 2 * i > b.base_degree()) throw PreconditionError("DegreeMismatch", "i out of range");
    Element out = r.zero(2 * i);
    Rat scale = factorial(static_cast<unsigned>(n + i)) / factorial(static_cast<unsigned>(i));
    for (std::size_t c = 0; c < r.dim(2 * i); ++c) {
        Polynomial pc(b.rank());
        for (const auto& [e, el] : r_valued_power(r, b.spec().chern, r.unit(), i)) pc.add_term(e, el.coeffs[c]);
        out.coeffs[c] = scale * b.integrator().diagonal(pc, h);
    }
    const auto& sr = b.sr();
    Element rho_pow = sr.algebra.power(sr.rho(h), static_cast<unsigned>(n + i));
    const int cd = b.base_degree() - 2 * i;
    for (std::size_t e = 0; e < r.dim(cd); ++e) {
        Element eta = r.basis_element(cd, e);
        Rat lhs = sr.top(sr.algebra.multiply(rho_pow, sr.pullback(eta)));
        Rat rhs = b.spec().base.orientation(r.multiply(out, eta));
        if (lhs != rhs) throw IdentityFailure("HorizontalPart", "pairing with a pullback disagrees");
    }
    return out;
}

// rho(Delta0 + gamma)^{n+s} computed in the ring and as (n+s)!/s! sum_i C(s,i) I_{gamma^i}(Delta0).
inline IdentityCheck self_intersection(ToricBundle& b, const QVector& h0, const Element& gamma) {
    if (gamma.degree != 2) throw PreconditionError("DegreeMismatch", "shift must be a degree-2 base class");
    if (b.base_degree() % 2 != 0) throw PreconditionError("OddBase", "base dimension must be even");
    const int s = b.base_degree() / 2;
    const int n = static_cast<int>(b.rank());
    const auto& sr = b.sr();
    Element cls = sr.rho(h0) + sr.pullback(gamma);
    IdentityCheck out;
    out.lhs = sr.top(sr.algebra.power(cls, static_cast<unsigned>(n + s)));
    Rat sum = 0;
    for (int i = 0; i <= s; ++i) {
        Element gi = b.base().power(gamma, static_cast<unsigned>(i));
        sum += binomial(static_cast<unsigned>(s), static_cast<unsigned>(i)) * b.integrator().diagonal(b.f_gamma(gi, s - i), h0);
    }
    out.rhs = factorial(static_cast<unsigned>(n + s)) / factorial(static_cast<unsigned>(s)) * sum;
    return out;
}

// F_gamma(h) = ell_top(rho(h)^{n+i} p^* gamma) as a polynomial in h, computed in the ring.
inline Polynomial fgamma_polynomial(ToricBundle& b, const Element& gamma, int i) {
    const std::size_t s = b.num_rays();
    const int m = static_cast<int>(b.rank()) + i;
    if (i < 0 || gamma.degree + 2 * i != b.base_degree())
        throw PreconditionError("DegreeMismatch", "deg gamma + 2i must equal the base degree");
    const auto& sr = b.sr();
    Polynomial out(s);
    for (const auto& e : monomials_of_degree(s, m)) {
        Rat multinomial = factorial(static_cast<unsigned>(m));
        Element prod = sr.pullback(gamma);
        for (std::size_t v = 0; v < s; ++v) {
            multinomial /= factorial(static_cast<unsigned>(e[v]));
            prod = sr.algebra.multiply(prod, sr.algebra.power(sr.variable(v), static_cast<unsigned>(e[v])));
        }
        out.add_term(e, multinomial * sr.top(prod));
    }
    return out;
}

// d_I F_gamma at h versus (n+i)!/i! f_gamma(A_sigma) when I spans sigma, else 0.
inline IdentityCheck fgamma_derivative_check(ToricBundle& b, const Element& gamma, int i, const QVector& h,
                                             const Cone& idx) {
    const Fan& fan = b.spec().fan;
    if (idx.size() != b.rank()) throw PreconditionError("DimensionMismatch", "need n ray indices");
    Polynomial d = fgamma_polynomial(b, gamma, i);
    for (auto v : idx) d = d.derivative(v);
    IdentityCheck out{d.evaluate(h), 0};
    Cone sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (fan.is_cone(sorted)) {
        const unsigned n = static_cast<unsigned>(b.rank());
        out.rhs = factorial(n + static_cast<unsigned>(i)) / factorial(static_cast<unsigned>(i)) *
                  b.f_gamma(gamma, i).evaluate(dual_vertex(fan, sorted, h));
    }
    return out;
}

inline bool generated_in_degree_two(const GradedAlgebra& r) {
    std::vector<QVector> span{QVector{Rat(1)}};
    for (int d = 2; d <= r.top_degree(); d += 2) {
        std::vector<QVector> next;
        for (std::size_t g = 0; g < r.dim(2); ++g)
            for (const auto& v : span) next.push_back(r.multiply(r.basis_element(2, g), {d - 2, v}).coeffs);
        if (next.empty() || rank(QMatrix::from_rows(next, r.dim(d))) != r.dim(d)) {
            if (r.dim(d) != 0) return false;
        }
        span = next;
    }
    return true;
}

// Diff(P_Sigma + complement) / Ann(I), I(h, t) = int_{Delta_h} ell_B((c(x) + sum t_j g_j)^s) dx.
inline DiffRing ring_via_diff(ToricBundle& b) {
    const auto& r = b.base();
    if (!generated_in_degree_two(r))
        throw PreconditionError("NotDegree2Generated", "base algebra is not generated in degree 2");
    const std::size_t n = b.rank(), s = b.num_rays();
    const int sb = b.base_degree() / 2;
    std::vector<QVector> image;
    for (const auto& c : b.spec().chern) image.push_back(c.coeffs);
    SubspaceReducer red(r.dim(2), image);
    DiffRing out;
    out.num_rays = s;
    for (auto j : red.free_indices()) out.complement.push_back(r.basis_element(2, j));
    const std::size_t nt = out.complement.size();
    std::vector<Element> linear = b.spec().chern;
    linear.insert(linear.end(), out.complement.begin(), out.complement.end());
    // group ell_B((c(x) + t.g)^s) by the t-exponent
    std::map<Exponent, Polynomial> by_t;
    for (const auto& [e, el] : r_valued_power(r, linear, r.unit(), sb)) {
        Exponent ex(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
        Exponent et(e.begin() + static_cast<std::ptrdiff_t>(n), e.end());
        auto it = by_t.try_emplace(et, Polynomial(n)).first;
        it->second.add_term(ex, b.spec().base.orientation(el));
    }
    Polynomial total(s + nt);
    for (const auto& [et, fx] : by_t) {
        if (fx.is_zero()) continue;
        Polynomial ph = i_f_polynomial(b.integrator(), fx);
        for (const auto& [eh, c] : ph.terms()) {
            Exponent e = eh;
            e.insert(e.end(), et.begin(), et.end());
            total.add_term(e, c);
        }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < s; ++i) names.push_back("h" + std::to_string(i + 1));
    for (std::size_t j = 0; j < nt; ++j) names.push_back("t" + std::to_string(j + 1));
    out.ann = ann_quotient(total, names);
    return out;
}

// d/dh_i -> x_i, d/dt_j -> p^* g_j.
inline IsoResult diff_matches_sr(ToricBundle& b, const DiffRing& d) {
    const auto& sr = b.sr();
    std::map<std::pair<int, std::size_t>, Element> m;
    const auto& ops = d.ann.basis_ops.at(1);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        std::size_t v = static_cast<std::size_t>(std::find(ops[i].begin(), ops[i].end(), 1) - ops[i].begin());
        m[{2, i}] = v < d.num_rays ? sr.variable(v) : sr.pullback(d.complement[v - d.num_rays]);
    }
    return graded_isomorphic(d.ann.algebra, sr.algebra, m);
}

// Independent evaluation of ell_top on gamma * x^beta by repeatedly rewriting a
// repeated x_v with the linear relation for a character dual to e_v.
struct ReductionResult {
    Rat value;
    std::vector<std::string> trace;
};

inline ReductionResult reduce_square_free(ToricBundle& b, const Element& gamma, const Exponent& beta) {
    const Fan& fan = b.spec().fan;
    const auto& r = b.base();
    const std::size_t n = b.rank();
    auto label = [&](const Element& g, const Exponent& e) {
        std::string s = "(" + r.format(g) + ")";
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) s += "*x" + std::to_string(i + 1) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
        return s;
    };
    ReductionResult out{0, {}};
    std::vector<std::pair<Exponent, Element>> work{{beta, gamma}};
    for (std::size_t guard = 0; !work.empty(); ++guard) {
        if (guard > 100000) throw IdentityFailure("ReductionDiverged", "square-free reduction did not terminate");
        auto [e, g] = work.back();
        work.pop_back();
        if (g.is_zero()) continue;
        Cone support;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) support.push_back(i);
        if (!fan.is_cone(support)) {
            out.trace.push_back(label(g, e) + " = 0  (rays span no cone)");
            continue;
        }
        std::size_t v = e.size();
        for (std::size_t i = 0; i < e.size() && v == e.size(); ++i)
            if (e[i] >= 2) v = i;
        if (v == e.size()) {
            if (support.size() == n && g.degree == b.base_degree()) {
                Rat val = b.spec().base.orientation(g);
                out.trace.push_back(label(g, e) + " -> " + val.str());
                out.value += val;
            } else {
                out.trace.push_back(label(g, e) + " = 0  (degree)");
            }
            continue;
        }
        const Cone* sigma = nullptr;
        for (const auto& c : fan.max_cones)
            if (std::includes(c.begin(), c.end(), support.begin(), support.end())) {
                sigma = &c;
                break;
            }
        // chi with <chi, e_v> = 1 and <chi, e_k> = 0 for the other rays of sigma
        QVector rhs(n, Rat(0));
        rhs[static_cast<std::size_t>(std::find(sigma->begin(), sigma->end(), v) - sigma->begin())] = 1;
        QVector chi = *solve(fan.cone_matrix(*sigma), rhs);
        Element cchi = r.zero(2);
        for (std::size_t m = 0; m < n; ++m) cchi = cchi + chi[m] * b.spec().chern[m];
        Exponent base_e = e;
        base_e[v] -= 1;
        std::vector<std::string> terms;
        Element g1 = r.multiply(g, cchi);
        if (!g1.is_zero()) {
            work.emplace_back(base_e, g1);
            terms.push_back(label(g1, base_e));
        }
        for (std::size_t i = 0; i < fan.num_rays(); ++i) {
            if (std::binary_search(sigma->begin(), sigma->end(), i)) continue;
            Rat a = dot(chi, fan.ray(i));
            if (a == 0) continue;
            Exponent e2 = base_e;
            e2[i] += 1;
            work.emplace_back(e2, Rat(-a) * g);
            terms.push_back(label(Rat(-a) * g, e2));
        }
        std::string step = label(g, e) + " -> ";
        for (std::size_t t = 0; t < terms.size(); ++t) step += (t ? " + " : "") + terms[t];
        if (terms.empty()) step += "0";
        out.trace.push_back(step);
    }
    return out;
}

}  // namespace toric
