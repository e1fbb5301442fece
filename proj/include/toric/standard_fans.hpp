#pragma once

#include <toric/polyhedral.hpp>

namespace toric {

inline Fan fan_p1() { return make_fan({{1}, {-1}}, {{0}, {1}}); }

inline Fan fan_p2() { return make_fan({{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {0, 2}, {1, 2}}); }

// rays (1,0),(0,1),(-1,0),(0,-1)
inline Fan fan_p1xp1() { return make_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

// Hirzebruch F_1: rays (1,0),(0,1),(-1,1),(0,-1)
inline Fan fan_f1() { return make_fan({{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

// Fan of P^n: e_1..e_n and -(e_1+...+e_n).
inline Fan fan_projective(std::size_t n) {
    std::vector<IVector> rays;
    for (std::size_t i = 0; i < n; ++i) {
        IVector r(n, 0);
        r[i] = 1;
        rays.push_back(r);
    }
    rays.push_back(IVector(n, -1));
    std::vector<Cone> cones;
    for (std::size_t skip = 0; skip <= n; ++skip) {
        Cone c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != skip) c.push_back(i);
        cones.push_back(c);
    }
    return make_fan(std::move(rays), std::move(cones));
}

inline Fan fan_quadrant() { return make_fan({{1, 0}, {0, 1}}, {{0, 1}}); }

}  // namespace toric
