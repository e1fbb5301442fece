#pragma once
// Seeded random inputs shared by unit and acceptance tests.

#include <toric/galg.hpp>
#include <toric/integrate.hpp>

#include <memory>
#include <random>

namespace gen {

using namespace toric;

inline long long small_int(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct RandomAlgebra {
    std::unique_ptr<PresentedQuotient> presentation;
    TopFunctional ell;
};

// Q[x_1..x_g] modulo a few random quadrics, truncated at degree 2d, with a
// random nonzero functional on the top degree.
inline RandomAlgebra random_algebra(std::mt19937_64& rng) {
    for (;;) {
        const std::size_t g = 2 + rng() % 2;
        const int d = 2 + static_cast<int>(rng() % 2);
        static const GradedAlgebra q = GradedAlgebra::point();
        std::vector<RPoly> rels;
        const std::size_t nrel = rng() % 3;
        for (std::size_t k = 0; k < nrel; ++k) {
            RPoly r(&q, g);
            for (const auto& e : monomials_of_degree(g, 2)) r.add({e, 0, 0}, Rat(small_int(rng, -2, 2)));
            rels.push_back(r);
        }
        RandomAlgebra out;
        out.presentation = std::make_unique<PresentedQuotient>(q, g, rels, 2 * d);
        const auto& b = out.presentation->algebra();
        if (b.dim(2 * d) == 0) continue;
        out.ell.degree = 2 * d;
        for (std::size_t i = 0; i < b.dim(2 * d); ++i) out.ell.values.push_back(Rat(small_int(rng, -3, 3)));
        if (is_zero(out.ell.values)) continue;
        return out;
    }
}

// c * witness + bounded perturbation, re-checked for convexity.
inline QVector random_convex(MixedIntegrator& mi, std::mt19937_64& rng, int spread = 2) {
    for (;;) {
        QVector h = mi.perturbed_point(rng, spread);
        if (mi.convex(h)) return h;
    }
}

inline QVector random_virtual(std::size_t s, std::mt19937_64& rng, long long bound = 3) {
    QVector h(s);
    for (auto& x : h) x = small_int(rng, -bound, bound);
    return h;
}

}  // namespace gen
