#pragma once

#include <toric/exactlin.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace toric {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

// True if a > b in degree-reverse-lexicographic order.
inline bool degrevlex_greater(const Exponent& a, const Exponent& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// All exponents of total degree d in n variables, decreasing in degrevlex.
inline std::vector<Exponent> monomials_of_degree(std::size_t n, int d) {
    std::vector<Exponent> out;
    if (n == 0) {
        if (d == 0) out.emplace_back();
        return out;
    }
    Exponent e(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == n) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), degrevlex_greater);
    return out;
}

class Polynomial {
public:
    using Terms = std::map<Exponent, Rat>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rat& c) {
        Polynomial p(nvars);
        if (c != 0) p.terms_[Exponent(nvars, 0)] = c;
        return p;
    }

    static Polynomial variable(std::size_t nvars, std::size_t i) {
        Polynomial p(nvars);
        Exponent e(nvars, 0);
        e.at(i) = 1;
        p.terms_[e] = 1;
        return p;
    }

    static Polynomial monomial(const Exponent& e, const Rat& c = 1) {
        Polynomial p(e.size());
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    static Polynomial linear(const QVector& coeffs, const Rat& c0 = 0) {
        Polynomial p = constant(coeffs.size(), c0);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) p += variable(coeffs.size(), i) * Polynomial::constant(coeffs.size(), coeffs[i]);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Exponent& e, const Rat& c) {
        if (c == 0) return;
        if (e.size() != nvars_) throw PreconditionError("DimensionMismatch", "polynomial exponent length");
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != d) return false;
        return true;
    }

    Polynomial homogeneous_part(int d) const {
        Polynomial p(nvars_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == d) p.terms_.emplace(e, c);
        return p;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        Polynomial p(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                p.add_term(e, ca * cb);
            }
        return p;
    }

    friend Polynomial operator*(const Rat& s, Polynomial a) {
        if (s == 0) return Polynomial(a.nvars_);
        for (auto& [e, c] : a.terms_) c *= s;
        return a;
    }

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    Polynomial pow(unsigned k) const {
        Polynomial r = constant(nvars_, 1);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    Polynomial derivative(std::size_t i) const {
        Polynomial p(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponent f = e;
            f[i] -= 1;
            p.add_term(f, c * e[i]);
        }
        return p;
    }

    Rat evaluate(const QVector& x) const {
        if (x.size() != nvars_) throw PreconditionError("DimensionMismatch", "polynomial evaluation point");
        Rat s = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            s += t;
        }
        return s;
    }

    // Substitute images[i] for variable i.
    Polynomial compose(const std::vector<Polynomial>& images) const {
        if (images.size() != nvars_) throw PreconditionError("DimensionMismatch", "compose: image count");
        std::size_t m = images.empty() ? 0 : images.front().nvars();
        Polynomial out(m);
        std::vector<std::vector<Polynomial>> powers(nvars_);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(m, c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(constant(m, 1));
                while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
                if (e[i] > 0) t = t * pw[e[i]];
            }
            out += t;
        }
        return out;
    }

    // Treat *this as the constant-coefficient operator sum c_a d^a and apply it to g.
    Polynomial apply_as_operator(const Polynomial& g) const {
        check_compatible(g);
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            Polynomial t = g;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t = t.derivative(i);
            out += c * t;
        }
        return out;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            const Rat a = abs(c);
            bool unit = a == 1 && total_degree(e) > 0;
            if (!unit) os << a.str();
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!unit) os << "*";
                unit = false;
                os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    void check_compatible(const Polynomial& o) const {
        if (o.nvars_ != nvars_) throw PreconditionError("DimensionMismatch", "polynomials over different variable counts");
    }

    std::size_t nvars_ = 0;
    Terms terms_;
};

}  // namespace toric
