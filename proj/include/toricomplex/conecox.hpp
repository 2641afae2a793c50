#pragma once

// Orbifold cones over polarized toric varieties and the Cox-degree monoids of
// star subdivisions of a single pointed cone.
//
// For x = cone(u_1..u_r) and an interior primitive v, Y is the star subdivision
// at v with exceptional divisor E.  Cl(Y_x) = Z^{r+1} / M, so a monomial in the
// Cox variables has degree 0 iff its exponent vector is (<m,u_i>, <m,v>) for
// some m in M; V' is the projection of that monoid to the first r coordinates
// and the last coordinate is its grading.

#include "divisor.hpp"

namespace toricomplex {

struct PolarizedToric {
    Fan fan;              // complete
    InvariantDivisor d;   // ample
};

// Cone over the polytope of d placed at height 1, in N_E x Z: generated by
// (u_Q, d_Q) scaled to be primitive.  Ray q of the result corresponds to ray q of E.
inline Fan cone_over(const PolarizedToric& p) {
    require_valid(p.fan);
    if (!is_complete(p.fan)) fail(ErrorKind::InvalidFan, "cone_over needs a complete fan");
    if (p.d.size() != p.fan.num_rays()) fail(ErrorKind::InvalidArgument, "polarization has wrong length");
    if (!is_ample(p.d, p.fan)) fail(ErrorKind::NotAmple, "polarization " + to_string(p.d) + " is not ample");
    Fan out;
    out.rank = p.fan.rank + 1;
    for (std::size_t q = 0; q < p.fan.num_rays(); ++q) {
        RatVec w = to_rat(p.fan.rays[q]);
        w.push_back(p.d[q]);
        out.rays.push_back(clear_denominators(w));
    }
    Cone all(out.rays.size());
    std::iota(all.begin(), all.end(), 0);
    out.max_cones.push_back(all);
    return out;
}

enum class TorsionPolicy { Reject, Cover };

struct CoxDegrees {
    Fan x;                          // the cone, in the working lattice
    Fan y;                          // star subdivision; E is the last ray
    std::size_t e = 0;
    AbelianGroupPresentation group;  // Cl(Y_x) in the working lattice
    std::vector<IntVec> degrees;     // [E_1], ..., [E_r], [E]
    // Torsion of Cl(Y_x) in the input lattice.  Under TorsionPolicy::Cover the
    // working lattice is the one spanned by the rays of Y, of index cover_index.
    IntVec input_torsion;
    Int cover_index = 1;
    std::vector<IntVec> cover_basis;  // basis of the working lattice in input coordinates
};

namespace detail {

inline void require_single_cone(const Fan& x) {
    require_valid(x);
    if (x.max_cones.size() != 1) fail(ErrorKind::InvalidArgument, "expected a single cone");
    if (x.cone_dim(x.max_cones[0]) != x.rank) fail(ErrorKind::NotFullDimensional, "the cone is not full-dimensional");
}

inline CoxDegrees degrees_in_lattice(const Fan& x, const IntVec& v) {
    CoxDegrees g;
    g.x = x;
    g.y = star_subdivision(x, v);
    g.e = g.y.num_rays() - 1;
    g.group = class_group(g.y);
    for (std::size_t j = 0; j < g.y.num_rays(); ++j) {
        IntVec unit(g.y.num_rays(), Int(0));
        unit[j] = 1;
        g.degrees.push_back(g.group.class_of(unit));
    }
    return g;
}

}  // namespace detail

inline CoxDegrees cox_degrees(const Fan& x, const IntVec& v_e, TorsionPolicy policy = TorsionPolicy::Reject) {
    detail::require_single_cone(x);
    if (v_e.size() != x.rank) fail(ErrorKind::InvalidArgument, "vector has wrong length");
    if (is_zero(v_e) || !x.describe_cone(x.max_cones[0]).interior(v_e))
        fail(ErrorKind::NotInterior, to_string(v_e) + " is not in the interior of the cone");
    IntVec v = primitive(v_e);
    CoxDegrees g = detail::degrees_in_lattice(x, v);
    g.input_torsion = g.group.torsion;
    for (std::size_t i = 0; i < x.rank; ++i) {
        IntVec e(x.rank, Int(0));
        e[i] = 1;
        g.cover_basis.push_back(e);
    }
    if (policy == TorsionPolicy::Reject || g.group.torsion.empty()) return g;

    // Torsion of Cl(Y_x) is N / (lattice spanned by the rays of Y); rewrite in that lattice.
    auto span = lattice_span(g.y.rays, x.rank);
    Fan xc;
    xc.rank = x.rank;
    for (const auto& u : x.rays) xc.rays.push_back(*span.coords(u));
    xc.max_cones = x.max_cones;
    IntVec vc = *span.coords(v);
    CoxDegrees c = detail::degrees_in_lattice(xc, vc);
    c.input_torsion = g.input_torsion;
    c.cover_index = abs_int(det(IntMatrix::from_cols(span.basis, x.rank)));
    c.cover_basis = span.basis;
    return c;
}

struct GradedMonoid {
    std::vector<IntVec> generators;  // exponents (a_1, ..., a_r, b), sorted
    AbelianGroupPresentation group;
    std::vector<IntVec> degrees;     // class of each Cox variable
    std::vector<Int> grading;        // tau~ of each generator (= b)

    IntVec degree_of(const IntVec& exponents) const {
        IntVec c(group.coords(), Int(0));
        for (std::size_t j = 0; j < exponents.size(); ++j)
            for (std::size_t k = 0; k < c.size(); ++k) c[k] += exponents[j] * degrees[j][k];
        for (std::size_t k = 0; k < group.torsion.size(); ++k) c[k] = mod_floor(c[k], group.torsion[k]);
        return c;
    }

    std::vector<IntVec> projected() const {
        std::vector<IntVec> out;
        for (const auto& g : generators) out.emplace_back(g.begin(), g.end() - 1);
        return out;
    }
};

// Hilbert basis of V' with its grading.
inline GradedMonoid degree_zero_monoid(const CoxDegrees& g) {
    if (!g.group.torsion.empty())
        fail(ErrorKind::TorsionObstruction, "Cl(Y_x) = " + g.group.describe() + " has torsion; pass to the cover lattice");
    const std::size_t r = g.x.num_rays();
    const IntVec& v = g.y.rays[g.e];
    {
        // [E] must have infinite order for the grading to be well defined.
        RatVec unit(r + 1, Rat(0));
        unit[g.e] = 1;
        if (is_zero(g.group.rational_class(unit)))
            fail(ErrorKind::TorsionObstruction, "[E] is torsion, so the grading is not unique");
    }
    GradedMonoid out;
    out.group = g.group;
    out.degrees = g.degrees;
    auto dual = dual_cone(g.x.rational_cone(g.x.max_cones[0]));
    for (const auto& m : hilbert_basis(dual)) {
        IntVec ex;
        for (std::size_t i = 0; i < r; ++i) ex.push_back(dot(m, g.x.rays[i]));
        ex.push_back(dot(m, v));
        out.generators.push_back(ex);
    }
    std::sort(out.generators.begin(), out.generators.end());
    for (const auto& ex : out.generators) {
        if (!is_zero(out.degree_of(ex)))
            fail(ErrorKind::TheoremCheckFailed, "generator " + to_string(ex) + " has nonzero degree");
        out.grading.push_back(ex.back());
    }
    return out;
}

struct ConeIsoReport {
    bool isomorphic = false;
    CoxDegrees data;
    GradedMonoid monoid;
    StarFan star;                    // E inside Y
    InvariantDivisor polarization;   // -E|_E on E
    Fan cone;                        // cone_over(E, polarization)
    IntVec m0;                       // <m0, v> = 1
    IntMatrix map;                   // x -> (pi(x), <m0, x>), unimodular
    std::vector<std::size_t> divisor_match;  // ray i of x -> ray of cone
    bool rays_match = false;
    bool vertex_match = false;       // v -> (0, ..., 0, 1)
    bool monoid_match = false;       // dual Hilbert bases agree under the map
    bool grading_match = false;      // height on the cone side equals tau~
};

inline ConeIsoReport verify_cone_iso(const Fan& x, const IntVec& v_e, TorsionPolicy policy = TorsionPolicy::Reject) {
    ConeIsoReport rep;
    rep.data = cox_degrees(x, v_e, policy);
    rep.monoid = degree_zero_monoid(rep.data);
    const Fan& xs = rep.data.x;
    const Fan& y = rep.data.y;
    const std::size_t n = xs.rank, e = rep.data.e;
    rep.star = star_fan(y, e);
    IntMatrix l = completion_for(y.rays[e]);
    rep.m0 = l.row(0);

    rep.polarization.assign(rep.star.fan.num_rays(), Rat(0));
    for (std::size_t q = 0; q < rep.star.partner.size(); ++q)
        rep.polarization[q] = rat(dot(rep.m0, y.rays[rep.star.partner[q]]), rep.star.length[q]);
    if (rep.star.partner.size() != xs.num_rays())
        fail(ErrorKind::TheoremCheckFailed, "some ray of the cone does not meet E");
    rep.cone = cone_over({rep.star.fan, rep.polarization});

    rep.map = IntMatrix(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rep.map(i, j) = rep.star.quotient(i, j);
    for (std::size_t j = 0; j < n; ++j) rep.map(n - 1, j) = rep.m0[j];
    if (abs_int(det(rep.map)) != 1) fail(ErrorKind::TheoremCheckFailed, "lattice map is not unimodular");

    rep.rays_match = true;
    for (std::size_t i = 0; i < xs.num_rays(); ++i) {
        std::size_t q = *rep.star.star_index_of(i);
        rep.divisor_match.push_back(q);
        if (primitive(rep.map * xs.rays[i]) != rep.cone.rays[q]) rep.rays_match = false;
    }
    IntVec top(n, Int(0));
    top[n - 1] = 1;
    rep.vertex_match = rep.map * y.rays[e] == top;

    // Dual side: m on x corresponds to m * map^{-1} on the cone.
    RatMatrix inv = *inverse(to_rat(rep.map));
    std::vector<IntVec> pulled;
    std::multiset<Int> heights;
    for (const auto& m : hilbert_basis(dual_cone(xs.rational_cone(xs.max_cones[0])))) {
        IntVec w(n, Int(0));
        for (std::size_t j = 0; j < n; ++j) {
            Rat s = 0;
            for (std::size_t k = 0; k < n; ++k) s += Rat(m[k]) * inv(k, j);
            w[j] = s.get_num();
        }
        heights.insert(w[n - 1]);
        pulled.push_back(w);
    }
    std::sort(pulled.begin(), pulled.end());
    rep.monoid_match = pulled == hilbert_basis(dual_cone(rep.cone.rational_cone(rep.cone.max_cones[0])));
    rep.grading_match = heights == std::multiset<Int>(rep.monoid.grading.begin(), rep.monoid.grading.end());
    rep.isomorphic = rep.rays_match && rep.vertex_match && rep.monoid_match && rep.grading_match;
    return rep;
}

}  // namespace toricomplex
