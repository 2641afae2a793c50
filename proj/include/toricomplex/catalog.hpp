#pragma once

// Standard fans used by the CLI suite and the tests.

#include "fan.hpp"

namespace toricomplex::catalog {

inline Fan projective_space(std::size_t n) {
    Fan f;
    f.rank = n;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        f.rays.push_back(e);
    }
    f.rays.push_back(IntVec(n, Int(-1)));
    for (std::size_t skip = 0; skip <= n; ++skip) {
        Cone c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != skip) c.push_back(i);
        f.max_cones.push_back(c);
    }
    return f;
}

// Hirzebruch surface F_a: rays (1,0), (0,1), (-1,a), (0,-1).
inline Fan hirzebruch(long a) {
    return Fan{2, {ints({1, 0}), ints({0, 1}), ints({-1, a}), ints({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
}

inline Fan p1xp1() { return hirzebruch(0); }

// Blow-up of P^2 at a torus-fixed point: rays (1,0), (0,1), (-1,-1), (1,1).
inline Fan blowup_p2() { return Fan{2, {ints({1, 0}), ints({0, 1}), ints({-1, -1}), ints({1, 1})}, {{0, 3}, {1, 3}, {1, 2}, {0, 2}}}; }

inline Fan affine_plane() { return Fan{2, {ints({1, 0}), ints({0, 1})}, {{0, 1}}}; }

// Blow-up of A^2 at the origin.
inline Fan blowup_affine_plane() { return Fan{2, {ints({1, 0}), ints({0, 1}), ints({1, 1})}, {{0, 2}, {1, 2}}}; }

// The A_1 surface singularity cone((0,1),(2,1)).
inline Fan a1_cone() { return Fan{2, {ints({0, 1}), ints({2, 1})}, {{0, 1}}}; }

// Cone over the unit square: the conifold.
inline Fan conifold() {
    return Fan{3, {ints({0, 0, 1}), ints({1, 0, 1}), ints({0, 1, 1}), ints({1, 1, 1})}, {{0, 1, 2, 3}}};
}

// The two small resolutions of the conifold (Atiyah flop).
inline Fan conifold_resolution_a() {
    Fan f = conifold();
    f.max_cones = {{0, 1, 3}, {0, 2, 3}};
    return f;
}

inline Fan conifold_resolution_b() {
    Fan f = conifold();
    f.max_cones = {{0, 1, 2}, {1, 2, 3}};
    return f;
}

struct Named {
    std::string name;
    Fan fan;
};

// Complete suite: P^1, P^2, P^3, P^1xP^1, Bl_pt P^2, F_1, F_2.
inline std::vector<Named> complete_suite() {
    return {{"P1", projective_space(1)},      {"P2", projective_space(2)}, {"P3", projective_space(3)},
            {"P1xP1", p1xp1()},               {"Bl_pt P2", blowup_p2()},   {"F1", hirzebruch(1)},
            {"F2", hirzebruch(2)}};
}

}  // namespace toricomplex::catalog
