#pragma once

#include <toric/exactlin.hpp>
#include <toric/polynomial.hpp>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace toric {

// Homogeneous element; degree is the (even) cohomological degree.
struct Element {
    int degree = 0;
    QVector coeffs;

    bool operator==(const Element&) const = default;
    bool is_zero() const { return toric::is_zero(coeffs); }
};

inline Element operator+(Element a, const Element& b) {
    if (a.degree != b.degree) throw PreconditionError("DegreeMismatch", "adding elements of different degrees");
    a.coeffs = a.coeffs + b.coeffs;
    return a;
}

inline Element operator*(const Rat& c, Element a) {
    a.coeffs = c * a.coeffs;
    return a;
}

// Commutative algebra concentrated in even degrees 0..top_degree, given by
// basis labels per degree and structure constants.
class GradedAlgebra {
public:
    GradedAlgebra() = default;

    explicit GradedAlgebra(std::vector<std::vector<std::string>> labels) : labels_(std::move(labels)) {
        if (labels_.empty()) labels_.push_back({"1"});
        const std::size_t h = labels_.size();
        table_.resize(h);
        for (std::size_t p = 0; p < h; ++p) {
            table_[p].resize(h);
            for (std::size_t q = 0; p + q < h; ++q)
                table_[p][q].assign(labels_[p].size() * labels_[q].size(), QVector(labels_[p + q].size(), Rat(0)));
        }
    }

    // The one-dimensional algebra Q in degree 0.
    static GradedAlgebra point() {
        GradedAlgebra a({{"1"}});
        a.set_unit_products();
        return a;
    }

    // Make basis element 0 of degree 0 act as the identity.
    void set_unit_products() {
        if (dim(0) != 1) throw PreconditionError("NotUnital", "degree-0 part must be one-dimensional");
        for (int p = 0; p <= top_degree(); p += 2)
            for (std::size_t a = 0; a < dim(p); ++a) set_product(0, 0, p, a, unit_vector(dim(p), a));
    }

    int top_degree() const { return 2 * static_cast<int>(labels_.size() - 1); }
    std::size_t num_halves() const { return labels_.size(); }

    std::size_t dim(int degree) const {
        if (degree < 0 || degree % 2 != 0 || degree > top_degree()) return 0;
        return labels_[static_cast<std::size_t>(degree / 2)].size();
    }

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (const auto& l : labels_) d.push_back(l.size());
        return d;
    }

    std::size_t total_dim() const {
        std::size_t t = 0;
        for (const auto& l : labels_) t += l.size();
        return t;
    }

    const std::vector<std::string>& labels(int degree) const { return labels_.at(static_cast<std::size_t>(degree / 2)); }

    std::optional<std::pair<int, std::size_t>> find_label(const std::string& name) const {
        for (std::size_t h = 0; h < labels_.size(); ++h)
            for (std::size_t i = 0; i < labels_[h].size(); ++i)
                if (labels_[h][i] == name) return std::make_pair(2 * static_cast<int>(h), i);
        return std::nullopt;
    }

    void set_product(int p, std::size_t a, int q, std::size_t b, const QVector& result) {
        if (p + q > top_degree()) {
            if (!toric::is_zero(result)) throw PreconditionError("DegreeMismatch", "product beyond top degree");
            return;
        }
        auto& slot = table_[static_cast<std::size_t>(p / 2)][static_cast<std::size_t>(q / 2)];
        slot.at(a * dim(q) + b) = result;
        auto& mirror = table_[static_cast<std::size_t>(q / 2)][static_cast<std::size_t>(p / 2)];
        mirror.at(b * dim(p) + a) = result;
    }

    // Product of basis elements a in degree p and b in degree q, in degree p + q.
    QVector product(int p, std::size_t a, int q, std::size_t b) const {
        if (p + q > top_degree()) return {};
        return table_[static_cast<std::size_t>(p / 2)][static_cast<std::size_t>(q / 2)].at(a * dim(q) + b);
    }

    Element basis_element(int degree, std::size_t i) const { return {degree, unit_vector(dim(degree), i)}; }
    Element zero(int degree) const { return {degree, QVector(dim(degree), Rat(0))}; }
    Element unit() const { return basis_element(0, 0); }

    Element multiply(const Element& x, const Element& y) const {
        const int d = x.degree + y.degree;
        Element out = zero(d);
        if (d > top_degree()) return out;
        for (std::size_t a = 0; a < x.coeffs.size(); ++a) {
            if (x.coeffs[a] == 0) continue;
            for (std::size_t b = 0; b < y.coeffs.size(); ++b) {
                if (y.coeffs[b] == 0) continue;
                axpy(out.coeffs, x.coeffs[a] * y.coeffs[b], product(x.degree, a, y.degree, b));
            }
        }
        return out;
    }

    Element power(const Element& x, unsigned k) const {
        Element r = unit();
        for (unsigned i = 0; i < k; ++i) r = multiply(r, x);
        return r;
    }

    // Unit, commutativity and associativity; throws PreconditionError.
    void validate() const {
        if (dim(0) != 1) throw PreconditionError("NotUnital", "degree-0 part must be one-dimensional");
        for (int p = 0; p <= top_degree(); p += 2)
            for (std::size_t a = 0; a < dim(p); ++a) {
                if (product(0, 0, p, a) != unit_vector(dim(p), a))
                    throw PreconditionError("NotUnital", "basis element 1 is not a unit");
                for (int q = 0; p + q <= top_degree(); q += 2)
                    for (std::size_t b = 0; b < dim(q); ++b) {
                        if (product(p, a, q, b) != product(q, b, p, a))
                            throw PreconditionError("NotCommutative", labels(p)[a] + "*" + labels(q)[b]);
                        for (int r = 0; p + q + r <= top_degree(); r += 2)
                            for (std::size_t c = 0; c < dim(r); ++c) {
                                auto ab = multiply({p + q, product(p, a, q, b)}, basis_element(r, c));
                                auto bc = multiply(basis_element(p, a), {q + r, product(q, b, r, c)});
                                if (ab != bc)
                                    throw PreconditionError("NotAssociative", labels(p)[a] + "," + labels(q)[b] + "," +
                                                                                 labels(r)[c]);
                            }
                    }
            }
    }

    // Same algebra restricted to degrees <= top.
    GradedAlgebra truncated(int top) const {
        std::vector<std::vector<std::string>> l(labels_.begin(), labels_.begin() + top / 2 + 1);
        GradedAlgebra out(l);
        for (int p = 0; p <= top; p += 2)
            for (int q = p; p + q <= top; q += 2)
                for (std::size_t a = 0; a < dim(p); ++a)
                    for (std::size_t b = 0; b < dim(q); ++b) out.set_product(p, a, q, b, product(p, a, q, b));
        return out;
    }

    bool operator==(const GradedAlgebra& o) const { return labels_ == o.labels_ && table_ == o.table_; }

    std::string format(const Element& e) const {
        std::string s;
        for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
            if (e.coeffs[i] == 0) continue;
            const Rat& c = e.coeffs[i];
            const std::string& name = labels(e.degree)[i];
            if (!s.empty()) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            const Rat a = abs(c);
            if (name == "1") s += a.str();
            else if (a == 1) s += name;
            else s += a.str() + "*" + name;
        }
        return s.empty() ? "0" : s;
    }

private:
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<std::vector<QVector>>> table_;
};

// Linear functional on the degree-`degree` part.
struct TopFunctional {
    int degree = 0;
    QVector values;

    Rat operator()(const Element& e) const {
        if (e.degree != degree) return 0;
        return dot(values, e.coeffs);
    }
};

// ---------------------------------------------------------------------------
// Polynomials over a coefficient algebra and their quotients

struct RMonomial {
    Exponent x;
    int rdeg = 0;  // degree of the coefficient basis element
    std::size_t ridx = 0;

    auto operator<=>(const RMonomial&) const = default;
    int degree() const { return rdeg + 2 * total_degree(x); }
};

// Pivot-preference order: true if a should be eliminated before b.
inline bool rmonomial_greater(const RMonomial& a, const RMonomial& b) {
    if (a.x != b.x) return degrevlex_greater(a.x, b.x);
    if (a.rdeg != b.rdeg) return a.rdeg < b.rdeg;
    return a.ridx > b.ridx;
}

// Element of R[x_1..x_s].
class RPoly {
public:
    RPoly() = default;
    RPoly(const GradedAlgebra* r, std::size_t nvars) : r_(r), nvars_(nvars) {}

    static RPoly from_element(const GradedAlgebra* r, std::size_t nvars, const Element& e) {
        RPoly p(r, nvars);
        for (std::size_t i = 0; i < e.coeffs.size(); ++i) p.add({Exponent(nvars, 0), e.degree, i}, e.coeffs[i]);
        return p;
    }

    static RPoly constant(const GradedAlgebra* r, std::size_t nvars, const Rat& c) {
        RPoly p(r, nvars);
        p.add({Exponent(nvars, 0), 0, 0}, c);
        return p;
    }

    static RPoly variable(const GradedAlgebra* r, std::size_t nvars, std::size_t i) {
        RPoly p(r, nvars);
        Exponent e(nvars, 0);
        e.at(i) = 1;
        p.add({e, 0, 0}, 1);
        return p;
    }

    static RPoly monomial(const GradedAlgebra* r, const RMonomial& m, const Rat& c = 1) {
        RPoly p(r, m.x.size());
        p.add(m, c);
        return p;
    }

    const std::map<RMonomial, Rat>& terms() const { return terms_; }
    std::size_t nvars() const { return nvars_; }
    const GradedAlgebra* coefficients() const { return r_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const RMonomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Degree if homogeneous, nullopt otherwise (zero counts as homogeneous of any degree: returns -1).
    std::optional<int> homogeneous_degree() const {
        if (terms_.empty()) return -1;
        int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return std::nullopt;
        return d;
    }

    RPoly& operator+=(const RPoly& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    friend RPoly operator+(RPoly a, const RPoly& b) { return a += b; }
    friend RPoly operator-(RPoly a, const RPoly& b) {
        for (const auto& [m, c] : b.terms_) a.add(m, -c);
        return a;
    }
    friend RPoly operator*(const Rat& s, RPoly a) {
        RPoly out(a.r_, a.nvars_);
        for (const auto& [m, c] : a.terms_) out.add(m, s * c);
        return out;
    }

    friend RPoly operator*(const RPoly& a, const RPoly& b) {
        const GradedAlgebra* r = a.r_ ? a.r_ : b.r_;
        RPoly out(r, std::max(a.nvars_, b.nvars_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                int d = ma.rdeg + mb.rdeg;
                if (d > r->top_degree()) continue;
                Exponent e = ma.x;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += mb.x[i];
                QVector prod = r->product(ma.rdeg, ma.ridx, mb.rdeg, mb.ridx);
                for (std::size_t k = 0; k < prod.size(); ++k)
                    if (prod[k] != 0) out.add({e, d, k}, ca * cb * prod[k]);
            }
        return out;
    }

    RPoly pow(unsigned k) const {
        RPoly out = constant(r_, nvars_, 1);
        for (unsigned i = 0; i < k; ++i) out = out * *this;
        return out;
    }

private:
    const GradedAlgebra* r_ = nullptr;
    std::size_t nvars_ = 0;
    std::map<RMonomial, Rat> terms_;
};

// All R[x] monomials of the given degree, in pivot-preference order.
inline std::vector<RMonomial> rmonomials_of_degree(const GradedAlgebra& r, std::size_t nvars, int degree) {
    std::vector<RMonomial> out;
    for (int rd = 0; rd <= std::min(degree, r.top_degree()); rd += 2) {
        if ((degree - rd) % 2 != 0) continue;
        for (const auto& x : monomials_of_degree(nvars, (degree - rd) / 2))
            for (std::size_t i = 0; i < r.dim(rd); ++i) out.push_back({x, rd, i});
    }
    std::sort(out.begin(), out.end(), rmonomial_greater);
    return out;
}

inline std::string rmonomial_label(const GradedAlgebra& r, const RMonomial& m, const std::vector<std::string>& names) {
    std::string s;
    const std::string& rl = r.labels(m.rdeg)[m.ridx];
    if (!(m.rdeg == 0 && rl == "1")) s = rl;
    for (std::size_t i = 0; i < m.x.size(); ++i) {
        if (m.x[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += names.at(i);
        if (m.x[i] > 1) s += "^" + std::to_string(m.x[i]);
    }
    return s.empty() ? "1" : s;
}

// R[x_1..x_s] / (relations), truncated above degree D, built degree by degree.
class PresentedQuotient {
public:
    PresentedQuotient(GradedAlgebra r, std::size_t nvars, const std::vector<RPoly>& relations, int truncation,
                      std::vector<std::string> names = {})
        : r_(std::move(r)), nvars_(nvars), names_(std::move(names)) {
        if (truncation < 0 || truncation % 2 != 0) throw PreconditionError("DegreeMismatch", "truncation degree must be even");
        if (names_.empty())
            for (std::size_t i = 0; i < nvars_; ++i) names_.push_back("x" + std::to_string(i + 1));
        std::vector<std::pair<int, const RPoly*>> rels;
        for (const auto& g : relations) {
            auto d = g.homogeneous_degree();
            if (!d) throw PreconditionError("NotHomogeneous", "relation is not homogeneous");
            if (*d >= 0) rels.emplace_back(*d, &g);
        }
        std::vector<std::vector<std::string>> labels;
        for (int d = 0; d <= truncation; d += 2) {
            auto monos = rmonomials_of_degree(r_, nvars_, d);
            std::map<RMonomial, std::size_t> index;
            for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
            std::vector<QVector> span;
            for (const auto& [e, g] : rels) {
                if (e > d) continue;
                for (const auto& mult : rmonomials_of_degree(r_, nvars_, d - e)) {
                    RPoly prod = RPoly::monomial(&r_, mult) * *g;
                    if (prod.is_zero()) continue;
                    QVector v(monos.size(), Rat(0));
                    for (const auto& [m, c] : prod.terms()) v[index.at(m)] += c;
                    span.push_back(std::move(v));
                }
            }
            SubspaceReducer red(monos.size(), span);
            std::vector<std::string> lab;
            std::vector<RMonomial> reps;
            for (auto i : red.free_indices()) {
                lab.push_back(rmonomial_label(r_, monos[i], names_));
                reps.push_back(monos[i]);
            }
            monomials_.push_back(std::move(monos));
            index_.push_back(std::move(index));
            ideal_.push_back(std::move(red));
            reps_.push_back(std::move(reps));
            labels.push_back(std::move(lab));
        }
        alg_ = GradedAlgebra(labels);
        for (int p = 0; p <= truncation; p += 2)
            for (int q = p; p + q <= truncation; q += 2)
                for (std::size_t a = 0; a < alg_.dim(p); ++a)
                    for (std::size_t b = 0; b < alg_.dim(q); ++b) {
                        RPoly prod = RPoly::monomial(&r_, rep(p, a)) * RPoly::monomial(&r_, rep(q, b));
                        alg_.set_product(p, a, q, b, normal_form(prod, p + q).coeffs);
                    }
    }

    PresentedQuotient(const PresentedQuotient&) = delete;
    PresentedQuotient& operator=(const PresentedQuotient&) = delete;

    const GradedAlgebra& algebra() const { return alg_; }
    const GradedAlgebra& coefficients() const { return r_; }
    const GradedAlgebra* coefficients_ptr() const { return &r_; }
    std::size_t nvars() const { return nvars_; }
    const std::vector<std::string>& variable_names() const { return names_; }
    const RMonomial& rep(int degree, std::size_t i) const { return reps_.at(static_cast<std::size_t>(degree / 2)).at(i); }
    const SubspaceReducer& ideal(int degree) const { return ideal_.at(static_cast<std::size_t>(degree / 2)); }

    // Class of a homogeneous element of R[x] of the given degree.
    Element normal_form(const RPoly& p, int degree) const {
        if (degree > alg_.top_degree()) return {degree, {}};
        const auto h = static_cast<std::size_t>(degree / 2);
        QVector v(monomials_[h].size(), Rat(0));
        for (const auto& [m, c] : p.terms()) {
            if (m.degree() != degree) throw PreconditionError("DegreeMismatch", "normal_form: term of wrong degree");
            v[index_[h].at(m)] += c;
        }
        return {degree, ideal_[h].quotient_coordinates(v)};
    }

    Element variable_class(std::size_t i) const { return normal_form(RPoly::variable(&r_, nvars_, i), 2); }
    Element coefficient_class(const Element& e) const {
        return normal_form(RPoly::from_element(&r_, nvars_, e), e.degree);
    }

    RPoly var(std::size_t i) const { return RPoly::variable(&r_, nvars_, i); }
    RPoly lift(const Element& e) const { return RPoly::from_element(&r_, nvars_, e); }

private:
    GradedAlgebra r_;
    std::size_t nvars_;
    std::vector<std::string> names_;
    std::vector<std::vector<RMonomial>> monomials_;
    std::vector<std::map<RMonomial, std::size_t>> index_;
    std::vector<SubspaceReducer> ideal_;
    std::vector<std::vector<RMonomial>> reps_;
    GradedAlgebra alg_;
};

// ---------------------------------------------------------------------------
// Poincare duality algebras

// Matrix of (a, b) -> ell(a b) on A^k x A^{n-k}.
inline QMatrix frobenius_matrix(const GradedAlgebra& a, const TopFunctional& ell, int k) {
    const int n = ell.degree;
    QMatrix m(a.dim(k), a.dim(n - k));
    for (std::size_t i = 0; i < a.dim(k); ++i)
        for (std::size_t j = 0; j < a.dim(n - k); ++j)
            m(i, j) = ell({n, a.product(k, i, n - k, j)});
    return m;
}

inline bool check_poincare(const GradedAlgebra& a, const TopFunctional& ell) {
    const int n = ell.degree;
    if (n < 0 || n % 2 != 0 || a.dim(n) != 1 || is_zero(ell.values)) return false;
    for (int k = n + 2; k <= a.top_degree(); k += 2)
        if (a.dim(k) != 0) return false;
    for (int k = 0; k <= n; k += 2) {
        if (a.dim(k) != a.dim(n - k)) return false;
        if (rank(frobenius_matrix(a, ell, k)) != a.dim(k)) return false;
    }
    return true;
}

// A / Ann_ell: the Poincare duality quotient defined by an n-homogeneous functional.
struct SdQuotient {
    GradedAlgebra algebra;
    TopFunctional ell;
    std::vector<SubspaceReducer> radical;           // per half-degree, in the source basis
    std::vector<std::vector<std::size_t>> source;  // quotient basis -> source basis index

    Element project(const Element& e) const {
        if (e.degree > algebra.top_degree()) return {e.degree, {}};
        return {e.degree, radical.at(static_cast<std::size_t>(e.degree / 2)).quotient_coordinates(e.coeffs)};
    }
};

inline SdQuotient sd_quotient(const GradedAlgebra& b, const TopFunctional& ell) {
    const int n = ell.degree;
    if (n < 0 || n % 2 != 0 || n > b.top_degree()) throw PreconditionError("DegreeMismatch", "functional degree out of range");
    if (ell.values.size() != b.dim(n)) throw PreconditionError("DimensionMismatch", "functional length");
    if (is_zero(ell.values)) throw PreconditionError("ZeroFunctional", "functional vanishes identically");
    SdQuotient out;
    std::vector<std::vector<std::string>> labels;
    for (int k = 0; k <= n; k += 2) {
        const std::size_t dk = b.dim(k);
        std::vector<std::size_t> priority(dk);
        for (std::size_t i = 0; i < dk; ++i) priority[i] = dk - 1 - i;
        auto rad = kernel_basis(frobenius_matrix(b, ell, k).transpose());
        SubspaceReducer red(dk, rad, priority);
        std::vector<std::string> lab;
        for (auto i : red.free_indices()) lab.push_back(b.labels(k)[i]);
        out.source.push_back(red.free_indices());
        out.radical.push_back(std::move(red));
        labels.push_back(std::move(lab));
    }
    // the radical is an ideal
    for (int p = 0; p <= n; p += 2)
        for (const auto& r : out.radical[static_cast<std::size_t>(p / 2)].basis())
            for (int q = 0; p + q <= n; q += 2)
                for (std::size_t j = 0; j < b.dim(q); ++j) {
                    auto prod = b.multiply({p, r}, b.basis_element(q, j));
                    if (!out.radical[static_cast<std::size_t>((p + q) / 2)].contains(prod.coeffs))
                        throw IdentityFailure("RadicalNotIdeal", "multiplication does not descend");
                }
    out.algebra = GradedAlgebra(labels);
    for (int p = 0; p <= n; p += 2)
        for (int q = p; p + q <= n; q += 2)
            for (std::size_t a = 0; a < out.algebra.dim(p); ++a)
                for (std::size_t c = 0; c < out.algebra.dim(q); ++c) {
                    auto prod = b.multiply(b.basis_element(p, out.source[p / 2][a]), b.basis_element(q, out.source[q / 2][c]));
                    out.algebra.set_product(p, a, q, c, out.project(prod).coeffs);
                }
    out.ell.degree = n;
    for (auto i : out.source[static_cast<std::size_t>(n / 2)]) out.ell.values.push_back(ell.values[i]);
    return out;
}

// Diff(V) / Ann(f) for a homogeneous polynomial f of degree N.
struct AnnQuotient {
    GradedAlgebra algebra;
    TopFunctional ell;
    Polynomial f;
    std::vector<std::vector<Exponent>> basis_ops;  // per half-degree
    std::vector<std::string> names;

    // Class of a homogeneous constant-coefficient operator of order j.
    Element class_of(const Polynomial& op) const {
        if (!op.is_homogeneous()) throw PreconditionError("NotHomogeneous", "operator is not homogeneous");
        const int j = op.is_zero() ? 0 : op.degree();
        const int n = f.degree();
        if (j > n) return {2 * j, {}};
        auto target = op.apply_as_operator(f);
        const auto monos = monomials_of_degree(f.nvars(), n - j);
        const auto& ops = basis_ops[static_cast<std::size_t>(j)];
        QMatrix m(monos.size(), ops.size());
        for (std::size_t c = 0; c < ops.size(); ++c) {
            auto img = Polynomial::monomial(ops[c]).apply_as_operator(f);
            for (std::size_t r = 0; r < monos.size(); ++r) m(r, c) = img.coefficient(monos[r]);
        }
        QVector rhs(monos.size());
        for (std::size_t r = 0; r < monos.size(); ++r) rhs[r] = target.coefficient(monos[r]);
        auto x = solve(m, rhs);
        if (!x) throw IdentityFailure("AnnQuotient", "operator image outside the chosen span");
        return {2 * j, *x};
    }
};

inline std::string operator_label(const Exponent& e, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "d_" + names.at(i);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

inline AnnQuotient ann_quotient(const Polynomial& f, std::vector<std::string> names = {}) {
    if (f.is_zero()) throw PreconditionError("ZeroPolynomial", "ann_quotient of zero");
    if (!f.is_homogeneous()) throw PreconditionError("NotHomogeneous", "ann_quotient needs homogeneous f");
    const std::size_t v = f.nvars();
    const int n = f.degree();
    if (names.empty())
        for (std::size_t i = 0; i < v; ++i) names.push_back("h" + std::to_string(i + 1));
    AnnQuotient out;
    out.f = f;
    out.names = names;
    std::vector<std::vector<std::string>> labels;
    for (int j = 0; j <= n; ++j) {
        auto ops = monomials_of_degree(v, j);
        auto monos = monomials_of_degree(v, n - j);
        QMatrix m(monos.size(), ops.size());
        for (std::size_t c = 0; c < ops.size(); ++c) {
            auto img = Polynomial::monomial(ops[c]).apply_as_operator(f);
            for (std::size_t r = 0; r < monos.size(); ++r) m(r, c) = img.coefficient(monos[r]);
        }
        std::vector<Exponent> chosen;
        std::vector<std::string> lab;
        for (auto p : rref(m).pivots) {
            chosen.push_back(ops[p]);
            lab.push_back(operator_label(ops[p], names));
        }
        out.basis_ops.push_back(std::move(chosen));
        labels.push_back(std::move(lab));
    }
    out.algebra = GradedAlgebra(labels);
    for (int p = 0; p <= n; ++p)
        for (int q = p; p + q <= n; ++q)
            for (std::size_t a = 0; a < out.basis_ops[p].size(); ++a)
                for (std::size_t b = 0; b < out.basis_ops[q].size(); ++b) {
                    Exponent e = out.basis_ops[p][a];
                    for (std::size_t i = 0; i < v; ++i) e[i] += out.basis_ops[q][b][i];
                    out.algebra.set_product(2 * p, a, 2 * q, b, out.class_of(Polynomial::monomial(e)).coeffs);
                }
    out.ell.degree = 2 * n;
    const auto& top = out.basis_ops[static_cast<std::size_t>(n)];
    for (const auto& e : top)
        out.ell.values.push_back(Polynomial::monomial(e).apply_as_operator(f).coefficient(Exponent(v, 0)) /
                                 factorial(static_cast<unsigned>(n)));
    return out;
}

struct IsoResult {
    bool isomorphic = false;
    std::string reason;
};

// Is the map given on degree-2 basis elements (plus optional higher-degree
// assignments) a graded algebra isomorphism A -> B? Unassigned higher degrees
// are determined from products with degree 2.
inline IsoResult graded_isomorphic(const GradedAlgebra& a, const GradedAlgebra& b,
                                   const std::map<std::pair<int, std::size_t>, Element>& assigned) {
    if (a.dims() != b.dims()) return {false, "graded dimensions differ"};
    if (a.dim(0) != 1) return {false, "degree 0 is not one-dimensional"};
    std::vector<QMatrix> phi(a.num_halves());
    phi[0] = QMatrix::identity(1);
    for (int d = 2; d <= a.top_degree(); d += 2) {
        const std::size_t da = a.dim(d), db = b.dim(d);
        bool all = true;
        for (std::size_t i = 0; i < da; ++i) all = all && assigned.count({d, i});
        QMatrix m(db, da);
        if (all) {
            for (std::size_t i = 0; i < da; ++i) {
                const Element& img = assigned.at({d, i});
                if (img.degree != d || img.coeffs.size() != db) return {false, "assignment has wrong degree"};
                for (std::size_t r = 0; r < db; ++r) m(r, i) = img.coeffs[r];
            }
        } else if (d == 2) {
            return {false, "every degree-2 basis element needs an image"};
        } else {
            std::vector<QVector> rows;
            for (std::size_t g = 0; g < a.dim(2); ++g)
                for (std::size_t c = 0; c < a.dim(d - 2); ++c) {
                    QVector src = a.product(2, g, d - 2, c);
                    QVector img = b.multiply({2, phi[1].col(g)}, {d - 2, phi[d / 2 - 1].col(c)}).coeffs;
                    QVector row = src;
                    row.insert(row.end(), img.begin(), img.end());
                    rows.push_back(std::move(row));
                }
            auto [r, piv] = rref(QMatrix::from_rows(rows, da + db));
            std::size_t in_a = 0;
            for (auto p : piv)
                if (p < da) ++in_a;
            if (in_a < da) return {false, "degree " + std::to_string(d) + " is not generated by degree 2"};
            if (piv.size() > da) return {false, "map is not well defined in degree " + std::to_string(d)};
            for (std::size_t i = 0; i < da; ++i)
                for (std::size_t k = 0; k < db; ++k) m(k, i) = r(i, da + k);
        }
        if (rank(m) != da) return {false, "map is not bijective in degree " + std::to_string(d)};
        phi[static_cast<std::size_t>(d / 2)] = m;
    }
    for (int p = 0; p <= a.top_degree(); p += 2)
        for (int q = p; p + q <= a.top_degree(); q += 2)
            for (std::size_t i = 0; i < a.dim(p); ++i)
                for (std::size_t j = 0; j < a.dim(q); ++j) {
                    QVector lhs = phi[(p + q) / 2] * a.product(p, i, q, j);
                    QVector rhs = b.multiply({p, phi[p / 2].col(i)}, {q, phi[q / 2].col(j)}).coeffs;
                    if (lhs != rhs)
                        return {false, "product " + a.labels(p)[i] + "*" + a.labels(q)[j] + " not preserved"};
                }
    return {true, ""};
}

}  // namespace toric
