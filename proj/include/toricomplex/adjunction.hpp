#pragma once

// Adjunction of an invariant (generalized) pair to an invariant prime divisor E
// with coefficient one: the different on E, the induced orbifold structure and
// the induced decomposition, with the monotonicity check of orbifold
// complexity under adjunction.
//
// Every codimension-one point Q of E is the orbit of a 2-cone tau = cone(u_E, u_P)
// and lies on exactly one other invariant prime P.  i_Q is the Cartier index of E
// on tau and the restriction P|_E has coefficient gamma / i_Q at Q.

#include <algorithm>

#include "complexity.hpp"

namespace toricomplex {

enum class WallCase { Untouched, Transversal, Paired };

inline const char* wall_case_name(WallCase c) {
    switch (c) {
    case WallCase::Untouched: return "untouched";
    case WallCase::Transversal: return "a";
    case WallCase::Paired: return "b";
    }
    return "?";
}

struct WallClass {
    WallCase kind;
    Int index;  // induced orbifold index m(Q)
};

// Induced index at Q from the orbifold indices (> 1) of the boundary primes through Q.
inline WallClass classify_wall(const Int& i_q, const std::vector<Int>& meeting) {
    if (meeting.empty()) return {WallCase::Untouched, i_q};
    if (meeting.size() == 1) return {WallCase::Transversal, meeting[0] * i_q};
    if (meeting.size() == 2 && meeting[0] == 2 && meeting[1] == 2) return {WallCase::Paired, Int(1)};
    std::string idx;
    for (const auto& n : meeting) idx += (idx.empty() ? "" : ",") + n.get_str();
    fail(ErrorKind::LcViolation, std::to_string(meeting.size()) + " orbifold primes with indices (" + idx + ") meet at one point of E");
}

struct WallRecord {
    std::size_t star_ray = 0;  // Q as a ray of the star fan
    std::size_t partner = 0;   // P, the other ray of the 2-cone
    Int cartier_index;         // i_Q
    Int gamma;                 // gamma_{P,Q}
    Int length;                // lattice length of the image of u_P
};

namespace detail {

inline void require_ray(const Fan& f, std::size_t rho) {
    if (rho >= f.num_rays()) fail(ErrorKind::InvalidArgument, "ray index " + std::to_string(rho) + " out of range");
}

}  // namespace detail

// Lattice data of every wall through E, in star-fan ray order.
inline std::vector<WallRecord> wall_data(const Fan& f, const StarFan& s) {
    std::vector<WallRecord> out;
    InvariantDivisor e = prime_divisor(f, s.ray);
    for (std::size_t q = 0; q < s.partner.size(); ++q) {
        std::size_t p = s.partner[q];
        Cone tau = sorted_cone({s.ray, p});
        auto i = cartier_index(e, f, tau);
        if (!i) fail(ErrorKind::NotQCartier, "E is not Q-Cartier on the 2-cone " + index_list(tau));
        Rat gamma = Rat(*i) / Rat(s.length[q]);
        if (!is_integer(gamma) || gamma < 1)
            fail(ErrorKind::TheoremCheckFailed, "non-integral restriction multiplicity on the 2-cone " + index_list(tau));
        out.push_back(WallRecord{q, p, *i, gamma.get_num(), s.length[q]});
    }
    return out;
}

// Restriction of a Weil divisor with no E-component: coeff_Q = coeff_P * gamma / i_Q.
inline InvariantDivisor restrict_weil(const InvariantDivisor& d, const std::vector<WallRecord>& walls) {
    InvariantDivisor out(walls.size());
    for (const auto& w : walls) out[w.star_ray] = d[w.partner] * Rat(w.gamma) / Rat(w.cartier_index);
    return out;
}

// Restriction of a Q-Cartier divisor: subtract a linear function matching it at
// u_E; what remains has no E-component and restricts wall by wall.
inline InvariantDivisor restrict_q_cartier(const InvariantDivisor& d, const Fan& f, const StarFan& s, const std::vector<WallRecord>& walls) {
    const IntVec& u = f.rays[s.ray];
    RatVec m0(f.rank, Rat(0));
    for (std::size_t j = 0; j < f.rank; ++j)
        if (u[j] != 0) {
            m0[j] = -d[s.ray] / Rat(u[j]);
            break;
        }
    for (std::size_t c = 0; c < f.max_cones.size(); ++c)
        if (contains_index(f.max_cones[c], s.ray) && !cartier_index(d, f, f.max_cones[c]))
            fail(ErrorKind::NotQCartier, "divisor is not Q-Cartier on cone " + std::to_string(c) + " " + index_list(f.max_cones[c]));
    InvariantDivisor shifted(f.num_rays());
    for (std::size_t i = 0; i < f.num_rays(); ++i) shifted[i] = d[i] + dot(m0, f.rays[i]);
    return restrict_weil(shifted, walls);
}

// coeff_Q = 1 - 1/i_Q + coeff_P(B) gamma / i_Q
inline InvariantDivisor different(const Fan& f, const InvariantDivisor& b, std::size_t rho, const StarFan& s, const std::vector<WallRecord>& walls) {
    if (b[rho] != 1) fail(ErrorKind::NotDivisorialCenter, "coefficient of ray " + std::to_string(rho) + " in B is " + to_string(b[rho]) + ", not 1");
    InvariantDivisor kb = add(canonical_divisor(f), b);
    for (std::size_t c = 0; c < f.max_cones.size(); ++c)
        if (contains_index(f.max_cones[c], rho) && !cartier_index(kb, f, f.max_cones[c]))
            fail(ErrorKind::NotQCartier, "K+B is not Q-Cartier on cone " + std::to_string(c) + " " + index_list(f.max_cones[c]) + " through E");
    InvariantDivisor out(s.partner.size());
    for (const auto& w : walls) {
        Rat i(w.cartier_index);
        out[w.star_ray] = 1 - 1 / i + b[w.partner] * Rat(w.gamma) / i;
    }
    return out;
}

inline InvariantDivisor different(const Fan& f, const InvariantDivisor& b, std::size_t rho) {
    detail::require_ray(f, rho);
    auto s = star_fan(f, rho);
    return different(f, b, rho, s, wall_data(f, s));
}

struct InducedOrbifold {
    std::vector<Int> index;                   // m(Q) per star ray
    std::vector<WallCase> kinds;              // per star ray
    std::vector<std::size_t> special;         // case-(b) points
};

// m(Q) from the orbifold indices of the primes through Q other than E.
inline InducedOrbifold induced_orbifold(const OrbifoldDecomposition& sigma, const std::vector<WallRecord>& walls) {
    InducedOrbifold out;
    for (const auto& w : walls) {
        std::vector<Int> meeting;
        if (sigma.index(w.partner) > 1) meeting.push_back(sigma.index(w.partner));
        auto cls = classify_wall(w.cartier_index, meeting);
        out.index.push_back(cls.index);
        out.kinds.push_back(cls.kind);
        if (cls.kind == WallCase::Paired) out.special.push_back(w.star_ray);
    }
    return out;
}

inline InducedOrbifold induced_orbifold(const Fan& f, const OrbifoldDecomposition& sigma, std::size_t rho) {
    detail::require_ray(f, rho);
    auto s = star_fan(f, rho);
    return induced_orbifold(sigma, wall_data(f, s));
}

// The working mode of E induced from the mode of X.
inline Mode induced_mode(const Fan& f, const Mode& mode, const StarFan& s) {
    const IntVec& u = f.rays[s.ray];
    switch (mode.kind) {
    case ModeKind::Local: {
        if (!contains_index(f.max_cones[mode.cone], s.ray))
            fail(ErrorKind::HypothesisViolation, "E (ray " + std::to_string(s.ray) + ") does not pass through the fixed point of cone " + std::to_string(mode.cone));
        for (std::size_t c = 0; c < s.source_cone.size(); ++c)
            if (s.source_cone[c] == mode.cone) return Mode::local(c);
        break;
    }
    case ModeKind::Projective: return Mode::projective();
    case ModeKind::Birational: {
        auto d = describe(RationalCone{f.rank, mode.base});
        if (!d.interior(u))
            fail(ErrorKind::HypothesisViolation, "E (ray " + std::to_string(s.ray) + ") is not contained in the fiber over the fixed point of the base");
        return Mode::projective();
    }
    }
    fail(ErrorKind::TheoremCheckFailed, "no image cone of the fixed point on E");
}

// Rewrites Σ so that n_E = 1, E is a part with weight 1 and no other part meets E;
// parts supported only on E are dropped.
inline OrbifoldDecomposition normalize_at_center(const OrbifoldDecomposition& sigma, std::size_t num_rays, std::size_t rho) {
    OrbifoldDecomposition out;
    out.orbifold = sigma.orbifold;
    if (!out.orbifold.empty()) out.orbifold[rho] = 1;
    InvariantDivisor e(num_rays, Rat(0));
    e[rho] = 1;
    out.parts.push_back(Part{1, e});
    for (const auto& p : sigma.parts) {
        InvariantDivisor d = p.divisor;
        d[rho] = 0;
        if (!is_zero(d)) out.parts.push_back(Part{p.b, d});
    }
    if (out.trivial_orbifold()) out.orbifold.clear();
    return out;
}

// Which hypothesis of the adjunction step fails for Σ (empty when none).
inline std::string center_hypothesis_failure(const OrbifoldDecomposition& sigma, std::size_t rho) {
    if (sigma.index(rho) != 1) return "E carries orbifold index " + sigma.index(rho).get_str();
    std::size_t hits = 0;
    bool e_part = false;
    for (const auto& p : sigma.parts) {
        if (p.divisor[rho] == 0) continue;
        ++hits;
        bool only_e = true;
        for (std::size_t i = 0; i < p.divisor.size(); ++i)
            if (i != rho && p.divisor[i] != 0) only_e = false;
        if (only_e && p.divisor[rho] == 1 && p.b == 1) e_part = true;
    }
    if (!e_part) return "E is not a part with weight 1";
    if (hits > 1) return "another part is supported on E";
    return {};
}

struct AdjunctionResult {
    StarFan star;
    Mode mode;                        // working mode on E
    std::vector<WallRecord> walls;
    InvariantDivisor different;       // B_E
    InvariantDivisor nef_trace;       // M|_E (zero without a trace)
    InducedOrbifold orbifold;
    OrbifoldDecomposition sigma;      // Σ_E
    OrbifoldDecomposition source;     // Σ after normalization
    bool normalized = false;
    Rat c_orb_source_input;           // ĉ of the Σ given (before normalization)
    Rat c_orb_source;                 // ĉ(X; Σ)
    Rat c_orb_center;                 // ĉ(E; Σ_E)
    std::size_t span_source = 0, span_center = 0, class_rank_center = 0;
    bool nef_trace_restricts_nontrivially = false;
};

// Σ_E = Σ_Q (1 - 1/m_Q) Q + Σ_{j >= 2} b_j B_j|_E for Σ satisfying the hypotheses.
inline AdjunctionResult induced_decomposition(const ToricPair& pair, const OrbifoldDecomposition& sigma, std::size_t rho) {
    const Fan& f = pair.fan;
    detail::require_ray(f, rho);
    if (f.rank < 2) fail(ErrorKind::InvalidArgument, "adjunction needs rank at least 2");
    auto ctx = make_context(pair);
    AdjunctionResult r;
    r.source = sigma;
    r.c_orb_source = r.c_orb_source_input = orbifold_complexity(ctx, pair.boundary, sigma);
    if (auto why = center_hypothesis_failure(sigma, rho); !why.empty()) fail(ErrorKind::HypothesisViolation, why);
    r.star = star_fan(f, rho);
    r.mode = induced_mode(f, pair.mode, r.star);
    r.walls = wall_data(f, r.star);
    r.different = different(f, pair.boundary, rho, r.star, r.walls);
    r.nef_trace = is_zero(pair.nef_trace) ? InvariantDivisor(r.star.partner.size(), Rat(0)) : restrict_q_cartier(pair.nef_trace, f, r.star, r.walls);
    r.orbifold = induced_orbifold(sigma, r.walls);

    r.sigma.orbifold = r.orbifold.index;
    auto ectx = make_context(r.star.fan, r.mode);
    for (std::size_t j = 0; j < sigma.parts.size(); ++j) {
        const auto& p = sigma.parts[j];
        if (p.divisor[rho] != 0) continue;  // the part E itself
        InvariantDivisor rj = restrict_weil(p.divisor, r.walls);
        if (!ectx.supported(rj))
            fail(ErrorKind::HypothesisViolation, "part " + std::to_string(j) + " does not meet E" +
                                                     (pair.mode.kind == ModeKind::Local ? " at the fixed point" : ""));
        for (std::size_t q = 0; q < rj.size(); ++q)
            if (!is_integer(rj[q] * Rat(r.orbifold.index[q])))
                fail(ErrorKind::TheoremCheckFailed, "restriction of part " + std::to_string(j) + " is not an orbifold Weil divisor at point " + std::to_string(q) + " of E");
        r.sigma.parts.push_back(Part{p.b, rj});
    }
    if (r.sigma.trivial_orbifold()) r.sigma.orbifold.clear();
    auto total = r.sigma.total(r.star.partner.size());
    for (std::size_t q = 0; q < total.size(); ++q)
        if (total[q] > r.different[q])
            fail(ErrorKind::TheoremCheckFailed, "induced decomposition exceeds the different at point " + std::to_string(q) + " of E");
    r.c_orb_center = orbifold_complexity(ectx, r.different, r.sigma);
    r.span_source = span_dim(ctx, sigma);
    r.span_center = span_dim(ectx, r.sigma);
    r.class_rank_center = ectx.class_rank();
    if (!is_zero(r.nef_trace)) {
        // M|_E is numerically nontrivial iff it is not linear on the star fan
        Cone all(r.star.fan.num_rays());
        std::iota(all.begin(), all.end(), 0);
        r.nef_trace_restricts_nontrivially = !local_support_function(r.nef_trace, r.star.fan, all).has_value();
    }
    return r;
}

// Adjunction with normalization at E first (when Σ does not already have E as a
// weight-one part), asserting that normalization and adjunction never increase ĉ.
inline AdjunctionResult adjoin(const ToricPair& pair, const OrbifoldDecomposition& sigma, std::size_t rho) {
    detail::require_ray(pair.fan, rho);
    if (pair.boundary[rho] != 1)
        fail(ErrorKind::NotDivisorialCenter, "coefficient of ray " + std::to_string(rho) + " in B is " + to_string(pair.boundary[rho]) + ", not 1");
    auto ctx = make_context(pair);
    Rat before = orbifold_complexity(ctx, pair.boundary, sigma);
    bool norm = !center_hypothesis_failure(sigma, rho).empty();
    OrbifoldDecomposition s = norm ? normalize_at_center(sigma, pair.fan.num_rays(), rho) : sigma;
    AdjunctionResult r = induced_decomposition(pair, s, rho);
    r.normalized = norm;
    r.c_orb_source_input = before;
    if (r.c_orb_source > before) fail(ErrorKind::TheoremCheckFailed, "normalization at E increased orbifold complexity");
    if (r.c_orb_center > r.c_orb_source)
        fail(ErrorKind::TheoremCheckFailed, "orbifold complexity increased under adjunction: " + to_string(r.c_orb_center) + " > " + to_string(r.c_orb_source));
    return r;
}

struct EqualityDiagnostics {
    bool equality = false;       // ĉ(E; Σ_E) = ĉ(X; Σ)
    bool minimal = false;        // ĉ(E; Σ_E) is the minimum on E
    bool full_span = false;      // span of Σ_E is all of Cl_Q(E)
    bool applies() const { return equality && minimal && full_span; }
    bool sigma_equals_different = false;
    bool special_empty = false;
    bool holds() const { return !applies() || (sigma_equals_different && special_empty); }
};

inline EqualityDiagnostics equality_diagnostics(const AdjunctionResult& r, const MinimizeOptions& opt = {}) {
    EqualityDiagnostics d;
    d.equality = r.c_orb_center == r.c_orb_source;
    d.full_span = r.span_center == r.class_rank_center;
    // Only the points through the germ of E count in local mode.
    auto ectx = make_context(r.star.fan, r.mode);
    d.sigma_equals_different = ectx.restrict(r.sigma.total(r.star.partner.size())) == ectx.restrict(r.different);
    d.special_empty = std::none_of(r.orbifold.special.begin(), r.orbifold.special.end(), [&](std::size_t q) {
        return ectx.kind != ModeKind::Local || std::find(ectx.central.begin(), ectx.central.end(), q) != ectx.central.end();
    });
    if (d.equality && d.full_span) {
        auto e = build_pair(PairData{r.star.fan, r.different, std::nullopt, r.mode});
        d.minimal = minimize(e, opt).c_orb == r.c_orb_center;
    }
    return d;
}

}  // namespace toricomplex
