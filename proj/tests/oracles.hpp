#pragma once

// Independent, deliberately naive reference computations used by the tests.

#include "toricomplex/lattice.hpp"

#include <functional>
#include <map>

namespace oracle {

using namespace toricomplex;

// gcd of all k x k minors, k = 1..rank.
inline IntVec invariant_factors(const IntMatrix& m) {
    std::size_t n = std::min(m.rows(), m.cols());
    IntVec dk{Int(1)};
    for (std::size_t k = 1; k <= n; ++k) {
        Int g = 0;
        detail::for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& ri) {
            detail::for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& ci) {
                IntMatrix sub(k, k);
                for (std::size_t a = 0; a < k; ++a)
                    for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(ri[a], ci[b]);
                g = gcd(g, det(sub));
            });
        });
        if (g == 0) break;
        dk.push_back(g);
    }
    IntVec out;
    for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
    return out;
}

// Membership by LP feasibility: x = sum λ_i g_i with λ >= 0.
inline bool in_cone(const RationalCone& c, const IntVec& x) {
    if (c.generators.empty()) return is_zero(x);
    LinearProgram lp(c.generators.size(), true);
    for (std::size_t i = 0; i < c.dim; ++i) {
        RatVec row;
        for (const auto& g : c.generators) row.push_back(Rat(g[i]));
        lp.add(row, Relation::Equal, Rat(x[i]));
    }
    return lp.solve().status != LpStatus::Infeasible;
}

inline std::vector<IntVec> box_points(const RationalCone& c, long bound) {
    std::vector<IntVec> pts;
    IntVec x(c.dim, Int(-bound));
    for (;;) {
        if (!is_zero(x) && in_cone(c, x)) pts.push_back(x);
        std::size_t i = 0;
        while (i < c.dim) {
            if (x[i] < bound) {
                ++x[i];
                break;
            }
            x[i] = -bound;
            ++i;
        }
        if (i == c.dim) break;
    }
    return pts;
}

// Irreducible lattice points within the box: the Hilbert basis when the box is large enough.
inline std::vector<IntVec> hilbert_basis_by_enumeration(const RationalCone& c, long bound) {
    auto pts = box_points(c, bound);
    std::vector<IntVec> out;
    for (const auto& x : pts) {
        bool red = false;
        for (const auto& y : pts)
            if (y != x && in_cone(c, sub(x, y))) {
                red = true;
                break;
            }
        if (!red) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool representable(const RationalCone& c, const std::vector<IntVec>& gens, const IntVec& x,
                          std::map<IntVec, bool>& memo) {
    if (is_zero(x)) return true;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (const auto& h : gens) {
        IntVec r = sub(x, h);
        if (in_cone(c, r) && representable(c, gens, r, memo)) {
            ok = true;
            break;
        }
    }
    memo[x] = ok;
    return ok;
}

inline bool generates_up_to(const RationalCone& c, const std::vector<IntVec>& h, long bound) {
    std::map<IntVec, bool> memo;
    for (const auto& x : box_points(c, bound))
        if (!representable(c, h, x, memo)) return false;
    return true;
}

inline bool is_minimal(const std::vector<IntVec>& h) {
    for (std::size_t i = 0; i < h.size(); ++i) {
        std::vector<IntVec> others;
        for (std::size_t j = 0; j < h.size(); ++j)
            if (j != i) others.push_back(h[j]);
        // h_i is an N-combination of the others iff representable inside cone(h)
        RationalCone c{h[i].size(), h};
        std::map<IntVec, bool> memo;
        if (representable(c, others, h[i], memo)) return false;
    }
    return true;
}

}  // namespace oracle
