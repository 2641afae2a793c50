#pragma once

// Torus-invariant Q-divisors: class groups, Q-Cartier data, support functions,
// nefness and the toric log canonical test.

#include "fan.hpp"

namespace toricomplex {

// Rational coefficient per ray, indexed by ray order.
using InvariantDivisor = RatVec;

inline InvariantDivisor zero_divisor(const Fan& f) { return InvariantDivisor(f.num_rays(), Rat(0)); }

inline InvariantDivisor prime_divisor(const Fan& f, std::size_t rho) {
    auto d = zero_divisor(f);
    d.at(rho) = 1;
    return d;
}

inline InvariantDivisor canonical_divisor(const Fan& f) { return InvariantDivisor(f.num_rays(), Rat(-1)); }

inline InvariantDivisor add(const InvariantDivisor& a, const InvariantDivisor& b) {
    InvariantDivisor r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline InvariantDivisor scale(const InvariantDivisor& a, const Rat& k) {
    InvariantDivisor r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
    return r;
}

inline IntMatrix ray_matrix(const std::vector<IntVec>& rays, std::size_t rank) { return IntMatrix::from_rows(rays, rank); }

// Cl(X) = coker(M -> Z^{rays}, m -> (<m, u_rho>)).
inline AbelianGroupPresentation class_group(const Fan& f) { return cokernel(ray_matrix(f.rays, f.rank)); }

// Class group of the affine chart of a maximal cone, generated by the cone's rays.
struct LocalClassGroup {
    std::size_t cone = 0;
    Cone rays;
    AbelianGroupPresentation group;

    RatVec restrict(const InvariantDivisor& d) const {
        RatVec r;
        for (auto i : rays) r.push_back(d[i]);
        return r;
    }
};

inline LocalClassGroup local_class_group(const Fan& f, std::size_t cone_idx) {
    if (cone_idx >= f.max_cones.size()) fail(ErrorKind::InvalidArgument, "cone index " + std::to_string(cone_idx) + " out of range");
    const Cone& c = f.max_cones[cone_idx];
    if (!is_full_dimensional(f, c))
        fail(ErrorKind::NotFullDimensional, "cone " + std::to_string(cone_idx) + " " + index_list(c) + " has no torus-fixed point");
    return LocalClassGroup{cone_idx, c, cokernel(ray_matrix(f.cone_rays(c), f.rank))};
}

// dim_Q of the span of the divisors' classes in g ⊗ Q.
inline std::size_t q_span_dim(const std::vector<RatVec>& divs, const AbelianGroupPresentation& g) {
    if (divs.empty() || g.free_rank == 0) return 0;
    RatMatrix m(divs.size(), g.free_rank);
    for (std::size_t i = 0; i < divs.size(); ++i) {
        RatVec c = g.rational_class(divs[i]);
        for (std::size_t k = 0; k < g.free_rank; ++k) m(i, k) = c[k];
    }
    return rank(m);
}

// m with <m, u_rho> = -d_rho on the rays of the cone, if any exists.
inline std::optional<RatVec> local_support_function(const InvariantDivisor& d, const Fan& f, const Cone& c) {
    if (c.empty()) return RatVec(f.rank, Rat(0));
    RatMatrix a(c.size(), f.rank);
    RatVec rhs(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        for (std::size_t j = 0; j < f.rank; ++j) a(k, j) = f.rays[c[k]][j];
        rhs[k] = -d[c[k]];
    }
    return solve(a, rhs);
}

// Least k >= 1 with k*d Cartier on the cone; nullopt if d is not Q-Cartier there.
inline std::optional<Int> cartier_index(const InvariantDivisor& d, const Fan& f, const Cone& c) {
    if (c.empty()) return Int(1);
    auto s = snf(ray_matrix(f.cone_rays(c), f.rank));
    std::size_t r = s.rank();
    RatVec ld(c.size(), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t k = 0; k < c.size(); ++k) ld[i] += s.left(i, k) * d[c[k]];
    Int idx = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i >= r) {
            if (ld[i] != 0) return std::nullopt;
            continue;
        }
        Rat y = ld[i] / Rat(s.diag(i, i));
        idx = lcm(idx, y.get_den());
    }
    return idx;
}

struct CartierData {
    std::vector<std::optional<Int>> index;  // per maximal cone
    bool q_cartier() const {
        return std::all_of(index.begin(), index.end(), [](const auto& i) { return i.has_value(); });
    }
    std::optional<std::size_t> first_failure() const {
        for (std::size_t i = 0; i < index.size(); ++i)
            if (!index[i]) return i;
        return std::nullopt;
    }
    // lcm over cones
    Int global_index() const {
        Int l = 1;
        for (const auto& i : index)
            if (i) l = lcm(l, *i);
        return l;
    }
};

inline CartierData cartier_data(const InvariantDivisor& d, const Fan& f) {
    CartierData cd;
    for (const auto& c : f.max_cones) cd.index.push_back(cartier_index(d, f, c));
    return cd;
}

inline void require_q_cartier(const InvariantDivisor& d, const Fan& f, const std::string& what) {
    auto cd = cartier_data(d, f);
    if (auto bad = cd.first_failure())
        fail(ErrorKind::NotQCartier, what + " is not Q-Cartier on cone " + std::to_string(*bad) + " " + index_list(f.max_cones[*bad]));
}

// Support-function data per maximal cone (requires Q-Cartier).
inline std::vector<RatVec> support_function(const InvariantDivisor& d, const Fan& f) {
    std::vector<RatVec> ms;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        auto m = local_support_function(d, f, f.max_cones[c]);
        if (!m) fail(ErrorKind::NotQCartier, "divisor is not Q-Cartier on cone " + std::to_string(c) + " " + index_list(f.max_cones[c]));
        ms.push_back(*m);
    }
    return ms;
}

// Value of the piecewise linear function with phi(u_rho) = -d_rho at v (v in the support).
inline Rat evaluate_support_function(const InvariantDivisor& d, const Fan& f, const IntVec& v) {
    auto hit = cones_containing(f, v);
    if (hit.empty()) fail(ErrorKind::RayOutsideSupport, to_string(v) + " lies outside the support of the fan");
    auto m = local_support_function(d, f, f.max_cones[hit.front()]);
    if (!m) fail(ErrorKind::NotQCartier, "divisor is not Q-Cartier on cone " + std::to_string(hit.front()));
    return dot(*m, v);
}

// Walls: facets shared by two full-dimensional maximal cones.
struct Wall {
    Cone face;
    std::size_t left, right;
};

inline std::vector<Wall> interior_walls(const Fan& f) {
    std::vector<Wall> walls;
    for (const auto& [face, cones] : facet_incidence(f))
        if (cones.size() == 2 && is_full_dimensional(f, f.max_cones[cones[0]]) && is_full_dimensional(f, f.max_cones[cones[1]]))
            walls.push_back(Wall{face, cones[0], cones[1]});
    return walls;
}

namespace detail {

// min over walls of (<m_left, u> + d_u) for rays u of the right cone off the wall (and symmetric).
inline bool wall_convex(const InvariantDivisor& d, const Fan& f, bool strict, std::string* where = nullptr) {
    auto ms = support_function(d, f);
    for (const auto& w : interior_walls(f)) {
        for (int side = 0; side < 2; ++side) {
            std::size_t a = side ? w.right : w.left, b = side ? w.left : w.right;
            for (auto u : f.max_cones[b]) {
                if (contains_index(w.face, u)) continue;
                Rat gap = dot(ms[a], f.rays[u]) + d[u];
                if (gap < 0 || (strict && gap == 0)) {
                    if (where) *where = "wall " + index_list(w.face) + " between cones " + std::to_string(w.left) + " and " + std::to_string(w.right);
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace detail

// Convexity of the support function across every wall.
inline bool is_nef(const InvariantDivisor& d, const Fan& f) { return detail::wall_convex(d, f, false); }

// Strict convexity across every wall of a complete fan.
inline bool is_ample(const InvariantDivisor& d, const Fan& f) {
    if (!is_complete(f)) return false;
    if (!cartier_data(d, f).q_cartier()) return false;
    return detail::wall_convex(d, f, true);
}

// Toric criterion: coefficients <= 1 and K + B Q-Cartier.
inline bool check_log_canonical(const Fan& f, const InvariantDivisor& b) {
    for (const auto& x : b)
        if (x > 1) return false;
    return cartier_data(add(canonical_divisor(f), b), f).q_cartier();
}

// Log discrepancy of the toric valuation v over (X, B): the linear function on
// the cone containing v taking value 1 - b_rho at u_rho.
inline Rat log_discrepancy(const Fan& f, const InvariantDivisor& b, const IntVec& v) {
    return evaluate_support_function(add(canonical_divisor(f), b), f, v);
}

}  // namespace toricomplex
