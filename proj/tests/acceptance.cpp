// One PASS/FAIL line per acceptance criterion. All comparisons are exact.

#include <toric/catalog.hpp>

#include "generators.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace toric;

namespace {

struct Tally {
    std::size_t total = 0, passed = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++total;
        if (ok) ++passed;
        else if (first_failure.empty()) first_failure = what;
    }
    void expect(const IdentityCheck& c, const std::string& what) {
        expect(c.holds(), what + ": " + c.lhs.str() + " vs " + c.rhs.str());
    }
};

QVector strictly_convex(MixedIntegrator& mi, std::mt19937_64& rng) {
    for (;;) {
        QVector h = mi.perturbed_point(rng, 2);
        if (is_strictly_convex_on(mi.fan(), h)) return h;
    }
}

// n! Vol(Delta) by an independent formula: length in rank 1, shoelace in rank 2.
Rat oracle_normalized_volume(const Fan& f, const QVector& h) {
    if (f.dim == 1) {
        Rat hi = 0, lo = 0;
        for (std::size_t i = 0; i < f.num_rays(); ++i) {
            if (f.rays[i][0] == 1) hi = h[i];
            else lo = -h[i];
        }
        return hi - lo;
    }
    std::vector<QVector> verts;
    for (const auto& c : f.max_cones) verts.push_back(dual_vertex(f, c, h));
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts.size() < 3 ? Rat(0) : 2 * oracle::shoelace(verts);
}

Tally classical_bkk() {
    Tally t;
    std::mt19937_64 rng(101);
    for (const char* name : {"point+p1", "point+p2", "point+p1xp1", "point+f1"}) {
        ToricBundle b(*catalog_spec(name));
        const auto& sr = b.sr();
        for (int k = 0; k < 20; ++k) {
            QVector h = gen::random_convex(b.integrator(), rng);
            Rat ring = sr.top(sr.algebra.power(sr.rho(h), static_cast<unsigned>(b.rank())));
            t.expect(IdentityCheck{oracle_normalized_volume(b.spec().fan, h), ring}, name);
        }
    }
    return t;
}

Tally bundle_bkk() {
    Tally t;
    std::mt19937_64 rng(102);
    for (const char* name : {"hirzebruch_1", "p1xp1_over_p1", "rank2_over_p2"}) {
        ToricBundle b(*catalog_spec(name));
        const int k = b.base_degree();
        for (int i = 0; 2 * i <= k; ++i)
            for (std::size_t g = 0; g < b.base().dim(k - 2 * i); ++g)
                for (int s = 0; s < 10; ++s) {
                    QVector h = s % 2 == 0 ? gen::random_convex(b.integrator(), rng) : gen::random_virtual(b.num_rays(), rng);
                    t.expect(verify_bkk(b, b.base().basis_element(k - 2 * i, g), i, h), name);
                }
    }
    return t;
}

Tally cross_validation() {
    Tally t;
    for (const auto& name : catalog_spec_names()) {
        ToricBundle b(*catalog_spec(name));
        CrossValidation cv = cross_validate(b);
        t.expect(cv.ok(), name + ": " + cv.iso.reason);
        t.expect(b.sr().algebra.total_dim() == b.base().total_dim() * b.spec().fan.max_cones.size(), name + " rank");
    }
    return t;
}

Tally sd_properties() {
    Tally t;
    std::mt19937_64 rng(104);
    for (int k = 0; k < 5; ++k) {
        auto ra = gen::random_algebra(rng);
        const GradedAlgebra& b = ra.presentation->algebra();
        SdQuotient sd = sd_quotient(b, ra.ell);
        t.expect(check_poincare(sd.algebra, sd.ell), "poincare");
        SdQuotient again = sd_quotient(sd.algebra, sd.ell);
        t.expect(again.algebra == sd.algebra && again.ell.values == sd.ell.values, "idempotent");
        const Rat c(-7, 3);
        SdQuotient scaled = sd_quotient(b, {ra.ell.degree, c * ra.ell.values});
        t.expect(scaled.algebra == sd.algebra && scaled.ell.values == c * sd.ell.values, "scaling");
    }
    return t;
}

Tally diff_vs_sr() {
    Tally t;
    for (const char* name : {"point+p2", "hirzebruch_1", "p1+p1"}) {
        ToricBundle b(*catalog_spec(name));
        DiffRing d = ring_via_diff(b);
        t.expect(d.ann.algebra.dims() == b.sr().algebra.dims(), std::string(name) + " dims");
        IsoResult iso = diff_matches_sr(b, d);
        t.expect(iso.isomorphic, std::string(name) + ": " + iso.reason);
    }
    return t;
}

Tally derivative_oracles() {
    Tally t;
    std::mt19937_64 rng(106);
    for (const Fan& fan : {fan_p2(), fan_f1()}) {
        MixedIntegrator mi(fan);
        const auto subsets = detail::subsets_of_size(fan.num_rays(), fan.dim);
        Polynomial x1 = Polynomial::variable(2, 0), x2 = Polynomial::variable(2, 1);
        for (const Polynomial& f : {Polynomial::constant(2, 1), x1, x1 * x2}) {
            QVector h = strictly_convex(mi, rng);
            for (const auto& idx : subsets) t.expect(square_free_derivative_check(mi, f, h, idx), "ider");
            for (int s = 0; s < 5; ++s) {
                QVector lambda(2);
                for (auto& x : lambda) {
                    long long v = gen::small_int(rng, -3, 2);
                    x = v >= 0 ? v + 1 : v;
                }
                QVector hs = h;
                for (int attempt = 0;; ++attempt) {
                    try {
                        std::vector<IdentityCheck> res;
                        for (const auto& idx : subsets) res.push_back(convex_chain_identity_check(mi, f, hs, idx, lambda));
                        for (const auto& r : res) t.expect(r, "convex chain");
                        break;
                    } catch (const PreconditionError& e) {
                        if (e.kind() != "NotConvex" || attempt == 16) throw;
                        hs = Rat(2) * hs;
                    }
                }
            }
        }
    }
    return t;
}

Tally weyl_and_gz() {
    Tally t;
    std::mt19937_64 rng(107);
    for (int n = 2; n <= 3; ++n) {
        const BaseData flag = base_flag_sl(n);
        const int big_n = gz_pattern_dim(n);
        const Polynomial fw = weyl_top_polynomial_sl(n);
        for (int k = 0; k < 10; ++k) {
            QVector a;
            for (int i = 0; i < n - 1; ++i) a.emplace_back(gen::small_int(rng, -2, 4));
            Element c = flag.algebra.power(flag_weight_class(flag, a), static_cast<unsigned>(big_n));
            t.expect(IdentityCheck{flag.orientation(c), factorial(static_cast<unsigned>(big_n)) * fw.evaluate(a)}, "degree");
        }
        for (int k = 0; k < 10; ++k) {
            std::vector<long long> a;
            for (int i = 0; i < n - 1; ++i) a.push_back(gen::small_int(rng, 0, 3));
            QVector aq = to_q(a);
            t.expect(gz_volume_check(n, aq), "gz volume");
            const Rat patterns(static_cast<long long>(oracle::gz_patterns(oracle::partition_of(a))));
            t.expect(IdentityCheck{Rat(static_cast<long long>(count_lattice_points(gz_polytope(n, aq)))), patterns},
                     "gz lattice points");
            t.expect(IdentityCheck{weyl_dimension_sl(n, aq), patterns}, "weyl dimension");
        }
    }
    struct Case {
        int n;
        std::vector<IVector> lattice;
        Fan fan;
    };
    const std::vector<Case> cases{{2, {{1}}, fan_p1()},
                                  {3, {{1, 0}, {0, 1}}, fan_p1xp1()},
                                  {3, {{1, 0}, {0, 1}}, fan_p2()},
                                  {3, {{2, 0}, {0, 1}}, fan_f1()},
                                  {3, {{1, 1}, {0, 1}}, fan_p2()}};
    for (const auto& c : cases) {
        MixedIntegrator mi(c.fan);
        QVector h0 = gen::random_convex(mi, rng);
        QVector gamma;
        for (int i = 0; i < c.n - 1; ++i) gamma.emplace_back(gen::small_int(rng, -1, 2));
        t.expect(brion_kazarnovskii_check(c.n, c.lattice, c.fan, h0, gamma), "brion-kazarnovskii");
    }
    return t;
}

Tally projective_bundles() {
    Tally t;
    for (int m : {1, 2})
        for (const auto& d : std::vector<std::vector<long long>>{{0}, {1}, {1, 2}}) {
            ProjectiveBundleResult r = projective_bundle_check(base_projective(m), d);
            t.expect(r.ok(), "P^" + std::to_string(m) + ": " + r.relation);
        }
    return t;
}

Tally degree_two_self_intersection() {
    Tally t;
    std::mt19937_64 rng(109);
    for (const char* name : {"hirzebruch_1", "rank2_over_p2"}) {
        ToricBundle b(*catalog_spec(name));
        for (int k = 0; k < 10; ++k) {
            QVector h0 = gen::random_convex(b.integrator(), rng);
            Element gamma{2, {Rat(gen::small_int(rng, -3, 3))}};
            t.expect(self_intersection(b, h0, gamma), name);
        }
    }
    return t;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Tally()>>> criteria{
        {"1 classical BKK: n! Vol = rho^n on P1, P2, P1xP1, F1", classical_bkk},
        {"2 BKK for bundles: (n+i)! I_gamma = i! F_gamma", bundle_bkk},
        {"3 functional quotient matches Stanley-Reisner ring on all catalog specs", cross_validation},
        {"4 Poincare quotient: duality, idempotence, scaling", sd_properties},
        {"5 differential-operator ring matches Stanley-Reisner ring", diff_vs_sr},
        {"6 square-free derivative and convex chain identities", derivative_oracles},
        {"7 Weyl degree formula, GZ volumes and lattice points, Brion-Kazarnovskii", weyl_and_gz},
        {"8 projective bundle relation", projective_bundles},
        {"9 degree-two self-intersection", degree_two_self_intersection},
    };
    int failures = 0;
    for (const auto& [title, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Tally t;
        std::string error;
        try {
            t = run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = error.empty() && t.total > 0 && t.passed == t.total;
        if (!ok) ++failures;
        std::printf("[%s] %s: %zu/%zu exact (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", title.c_str(), t.passed, t.total, secs,
                    error.empty() ? "" : " error: ", error.c_str());
        if (!t.first_failure.empty()) std::printf("       first failure: %s\n", t.first_failure.c_str());
    }
    return failures == 0 ? 0 : 1;
}
