#pragma once

// Rational polyhedral fans: validation, completeness, star subdivisions and
// star fans of rays.

#include "lattice.hpp"

#include <numeric>

namespace toricomplex {

using Cone = std::vector<std::size_t>;  // sorted ray indices

struct Fan {
    std::size_t rank = 0;
    std::vector<IntVec> rays;
    std::vector<Cone> max_cones;

    std::size_t num_rays() const { return rays.size(); }

    std::vector<IntVec> cone_rays(const Cone& c) const {
        std::vector<IntVec> out;
        for (auto i : c) out.push_back(rays[i]);
        return out;
    }

    RationalCone rational_cone(const Cone& c) const { return RationalCone{rank, cone_rays(c)}; }

    ConeDescription describe_cone(const Cone& c) const { return describe(rational_cone(c)); }

    std::size_t cone_dim(const Cone& c) const { return rank_of_vectors(cone_rays(c), rank); }

    bool operator==(const Fan& o) const { return rank == o.rank && rays == o.rays && max_cones == o.max_cones; }
};

struct FanDiagnostics {
    bool valid = true;
    ErrorKind kind = ErrorKind::InvalidFan;
    std::string invariant;  // short name of the first violated invariant
    std::string message;
};

inline Cone sorted_cone(Cone c) {
    std::sort(c.begin(), c.end());
    return c;
}

inline bool contains_index(const Cone& c, std::size_t i) { return std::binary_search(c.begin(), c.end(), i); }

inline Cone intersect(const Cone& a, const Cone& b) {
    Cone out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const Cone& a, const Cone& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Is there m with <m,u> = 0 on shared rays, > 0 on a-only rays, < 0 on b-only rays?
inline bool properly_intersect(const Fan& f, const Cone& a, const Cone& b) {
    Cone shared = intersect(a, b);
    LinearProgram lp(f.rank);
    for (auto i : a) {
        RatVec row = to_rat(f.rays[i]);
        if (contains_index(shared, i)) lp.add(row, Relation::Equal, 0);
        else lp.add(row, Relation::GreaterEq, 1);
    }
    for (auto i : b) {
        if (contains_index(shared, i)) continue;
        lp.add(to_rat(f.rays[i]), Relation::LessEq, -1);
    }
    return feasible(lp);
}

inline FanDiagnostics validate(const Fan& f) {
    FanDiagnostics d;
    auto bad = [&](ErrorKind k, const std::string& inv, const std::string& msg) {
        d.valid = false;
        d.kind = k;
        d.invariant = inv;
        d.message = msg;
        return d;
    };
    if (f.rank == 0 && !f.rays.empty()) return bad(ErrorKind::InvalidFan, "positive-rank", "a rank-0 lattice carries no rays");
    std::set<IntVec> seen;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        const auto& r = f.rays[i];
        std::string id = "ray " + std::to_string(i) + " " + to_string(r);
        if (r.size() != f.rank) return bad(ErrorKind::InvalidFan, "ray-length", id + " does not have length " + std::to_string(f.rank));
        if (is_zero(r)) return bad(ErrorKind::InvalidFan, "ray-nonzero", id + " is zero");
        if (!is_primitive(r)) return bad(ErrorKind::InvalidFan, "ray-primitive", id + " is not primitive");
        if (!seen.insert(r).second) return bad(ErrorKind::InvalidFan, "ray-distinct", id + " repeats an earlier ray");
    }
    if (f.max_cones.empty()) return bad(ErrorKind::InvalidFan, "nonempty", "fan has no maximal cones");
    std::vector<bool> used(f.rays.size(), false);
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        const auto& cone = f.max_cones[c];
        std::string id = "cone " + std::to_string(c) + " " + index_list(cone);
        if (cone.empty() && f.max_cones.size() > 1) return bad(ErrorKind::InvalidFan, "cone-nonempty", id + " is empty");
        for (std::size_t k = 0; k < cone.size(); ++k) {
            if (cone[k] >= f.rays.size()) return bad(ErrorKind::InvalidFan, "cone-index", id + " refers to a missing ray");
            if (k && cone[k] <= cone[k - 1]) return bad(ErrorKind::InvalidFan, "cone-sorted", id + " must list distinct ray indices in increasing order");
            used[cone[k]] = true;
        }
    }
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i]) return bad(ErrorKind::InvalidFan, "ray-used", "ray " + std::to_string(i) + " lies in no maximal cone");
    std::vector<ConeDescription> desc;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        const auto& cone = f.max_cones[c];
        std::string id = "cone " + std::to_string(c) + " " + index_list(cone);
        desc.push_back(f.describe_cone(cone));
        if (!desc.back().pointed) return bad(ErrorKind::NotPointed, "cone-pointed", id + " contains a line");
        auto ext = extreme_rays(f.rational_cone(cone));
        if (ext.size() != cone.size()) return bad(ErrorKind::InvalidFan, "cone-rays-extreme", id + " lists a ray that is not extreme");
    }
    for (std::size_t a = 0; a < f.max_cones.size(); ++a)
        for (std::size_t b = 0; b < f.max_cones.size(); ++b) {
            if (a == b) continue;
            bool inside = true;
            for (auto i : f.max_cones[a])
                if (!desc[b].contains(f.rays[i])) {
                    inside = false;
                    break;
                }
            if (inside)
                return bad(ErrorKind::InvalidFan, "max-cones-incomparable",
                           "cone " + std::to_string(a) + " is contained in cone " + std::to_string(b));
        }
    for (std::size_t a = 0; a < f.max_cones.size(); ++a)
        for (std::size_t b = a + 1; b < f.max_cones.size(); ++b)
            if (!properly_intersect(f, f.max_cones[a], f.max_cones[b]))
                return bad(ErrorKind::OverlappingCones, "face-intersection",
                           "cones " + std::to_string(a) + " " + index_list(f.max_cones[a]) + " and " + std::to_string(b) + " " +
                               index_list(f.max_cones[b]) + " do not meet in a common face");
    return d;
}

inline void require_valid(const Fan& f) {
    auto d = validate(f);
    if (!d.valid) fail(d.kind, d.invariant + ": " + d.message);
}

// Ray sets of the facets of a cone of the fan (relative to its span).
inline std::vector<Cone> facets_of(const Fan& f, const Cone& c) {
    auto desc = f.describe_cone(c);
    std::vector<Cone> out;
    for (const auto& n : desc.facets) {
        Cone face;
        for (auto i : c)
            if (dot(n, f.rays[i]) == 0) face.push_back(i);
        out.push_back(face);
    }
    return out;
}

// All faces of a cone (including the cone itself and the origin), sorted.
inline std::vector<Cone> faces_of(const Fan& f, const Cone& c) {
    std::set<Cone> all{c};
    std::vector<Cone> stack{c};
    while (!stack.empty()) {
        Cone cur = stack.back();
        stack.pop_back();
        if (cur.empty()) continue;
        for (auto& face : facets_of(f, cur))
            if (all.insert(face).second) stack.push_back(face);
    }
    return std::vector<Cone>(all.begin(), all.end());
}

// Every cone of the fan.
inline std::vector<Cone> all_cones(const Fan& f) {
    std::set<Cone> all;
    for (const auto& c : f.max_cones)
        for (auto& face : faces_of(f, c)) all.insert(face);
    return std::vector<Cone>(all.begin(), all.end());
}

inline bool is_simplicial(const Fan& f, const Cone& c) { return f.cone_dim(c) == c.size(); }

inline bool is_simplicial(const Fan& f) {
    return std::all_of(f.max_cones.begin(), f.max_cones.end(), [&](const Cone& c) { return is_simplicial(f, c); });
}

// Index of the sublattice generated by the rays in its saturation (simplicial cones).
inline Int multiplicity(const Fan& f, const Cone& c) {
    if (c.empty()) return 1;
    if (!is_simplicial(f, c)) fail(ErrorKind::InvalidArgument, "multiplicity of a non-simplicial cone " + index_list(c));
    IntMatrix m = IntMatrix::from_rows(f.cone_rays(c), f.rank);
    Int prod = 1;
    auto s = snf(m);
    for (std::size_t i = 0; i < s.rank(); ++i) prod *= s.diag(i, i);
    return prod;
}

inline bool is_smooth(const Fan& f, const Cone& c) { return is_simplicial(f, c) && multiplicity(f, c) == 1; }

inline bool is_smooth(const Fan& f) {
    return std::all_of(f.max_cones.begin(), f.max_cones.end(), [&](const Cone& c) { return is_smooth(f, c); });
}

inline bool is_full_dimensional(const Fan& f, const Cone& c) { return f.cone_dim(c) == f.rank; }

// Facets of maximal cones, each with the list of maximal cones containing it.
inline std::map<Cone, std::vector<std::size_t>> facet_incidence(const Fan& f) {
    std::map<Cone, std::vector<std::size_t>> inc;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c)
        for (auto& face : facets_of(f, f.max_cones[c])) inc[face].push_back(c);
    return inc;
}

// Complete iff all maximal cones are full-dimensional and every facet is shared by exactly two.
inline bool is_complete(const Fan& f) {
    for (const auto& c : f.max_cones)
        if (!is_full_dimensional(f, c)) return false;
    for (const auto& [face, cones] : facet_incidence(f))
        if (cones.size() != 2) return false;
    return true;
}

// Support equals the full-dimensional base cone.
inline bool is_refinement_of(const Fan& f, const RationalCone& base) {
    ConeDescription bd = describe(base);
    if (bd.span_dim != f.rank) return false;
    for (const auto& c : f.max_cones) {
        if (!is_full_dimensional(f, c)) return false;
        for (auto i : c)
            if (!bd.contains(f.rays[i])) return false;
    }
    for (const auto& [face, cones] : facet_incidence(f)) {
        if (cones.size() == 2) continue;
        if (cones.size() > 2) return false;
        bool on_boundary = std::any_of(bd.facets.begin(), bd.facets.end(), [&](const IntVec& n) {
            return std::all_of(face.begin(), face.end(), [&](std::size_t i) { return dot(n, f.rays[i]) == 0; });
        });
        if (!on_boundary) return false;
    }
    return true;
}

// Maximal cones containing the vector.
inline std::vector<std::size_t> cones_containing(const Fan& f, const IntVec& v) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c)
        if (f.describe_cone(f.max_cones[c]).contains(v)) out.push_back(c);
    return out;
}

inline std::optional<std::size_t> find_ray(const Fan& f, const IntVec& v) {
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        if (f.rays[i] == v) return i;
    return std::nullopt;
}

// Star subdivision at a vector in the support; the new ray is appended last and
// each maximal cone containing v is replaced in place by the cones over its
// facets not containing v.
inline Fan star_subdivision(const Fan& f, const IntVec& vec) {
    if (vec.size() != f.rank) fail(ErrorKind::InvalidArgument, "subdivision vector has wrong length");
    if (is_zero(vec)) fail(ErrorKind::InvalidArgument, "subdivision vector is zero");
    IntVec v = primitive(vec);
    if (find_ray(f, v)) return f;
    auto hit = cones_containing(f, v);
    if (hit.empty()) fail(ErrorKind::RayOutsideSupport, to_string(v) + " lies outside the support of the fan");
    Fan out;
    out.rank = f.rank;
    out.rays = f.rays;
    out.rays.push_back(v);
    std::size_t vi = f.rays.size();
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        const Cone& cone = f.max_cones[c];
        if (!std::binary_search(hit.begin(), hit.end(), c)) {
            out.max_cones.push_back(cone);
            continue;
        }
        auto desc = f.describe_cone(cone);
        for (const auto& n : desc.facets) {
            if (dot(n, v) == 0) continue;
            Cone face;
            for (auto i : cone)
                if (dot(n, f.rays[i]) == 0) face.push_back(i);
            face.push_back(vi);
            out.max_cones.push_back(face);
        }
    }
    return out;
}

// The affine fan of one maximal cone, with rays renumbered in cone order.
inline Fan affine_fan(const Fan& f, std::size_t cone_idx) {
    const Cone& c = f.max_cones.at(cone_idx);
    Fan out;
    out.rank = f.rank;
    out.rays = f.cone_rays(c);
    Cone all(c.size());
    std::iota(all.begin(), all.end(), 0);
    out.max_cones.push_back(all);
    return out;
}

inline Fan single_cone_fan(std::size_t rank, const std::vector<IntVec>& gens) {
    Fan f;
    f.rank = rank;
    f.rays = extreme_rays(RationalCone{rank, gens});
    Cone all(f.rays.size());
    std::iota(all.begin(), all.end(), 0);
    f.max_cones.push_back(all);
    return f;
}

// Fan of the invariant divisor of a ray, in the quotient lattice N / Z u.
struct StarFan {
    Fan fan;
    std::size_t ray = 0;
    IntMatrix quotient;               // (rank-1) x rank, projection N -> N/Zu
    std::vector<std::size_t> partner;  // star ray -> ray of the original fan spanning the wall with u
    std::vector<Int> length;          // lattice length of the image of the partner ray
    std::vector<std::size_t> source_cone;  // star max cone -> original max cone

    std::optional<std::size_t> star_index_of(std::size_t original_ray) const {
        for (std::size_t q = 0; q < partner.size(); ++q)
            if (partner[q] == original_ray) return q;
        return std::nullopt;
    }
};

// Unimodular L with L u = e_1 (u primitive).
inline IntMatrix completion_for(const IntVec& u) {
    IntMatrix col = IntMatrix::from_cols({u}, u.size());
    auto s = snf(col);
    IntMatrix l = s.left;
    if (s.right(0, 0) < 0)
        for (std::size_t j = 0; j < l.cols(); ++j) l(0, j) = -l(0, j);
    return l;
}

// Partners of ray rho inside a cone: rays spanning a 2-dimensional face with rho.
inline std::vector<std::size_t> wall_partners(const Fan& f, const Cone& c, std::size_t rho) {
    std::vector<std::size_t> out;
    for (const auto& face : faces_of(f, c))
        if (face.size() == 2 && contains_index(face, rho) && f.cone_dim(face) == 2)
            out.push_back(face[0] == rho ? face[1] : face[0]);
    std::sort(out.begin(), out.end());
    return out;
}

inline StarFan star_fan(const Fan& f, std::size_t rho) {
    if (rho >= f.rays.size()) fail(ErrorKind::InvalidArgument, "ray index " + std::to_string(rho) + " out of range");
    StarFan s;
    s.ray = rho;
    IntMatrix l = completion_for(f.rays[rho]);
    s.quotient = IntMatrix(f.rank - 1, f.rank);
    for (std::size_t i = 1; i < f.rank; ++i)
        for (std::size_t j = 0; j < f.rank; ++j) s.quotient(i - 1, j) = l(i, j);
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> cones;
    std::set<std::size_t> partners;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        if (!contains_index(f.max_cones[c], rho)) continue;
        auto p = wall_partners(f, f.max_cones[c], rho);
        partners.insert(p.begin(), p.end());
        cones.emplace_back(c, p);
    }
    s.partner.assign(partners.begin(), partners.end());
    s.fan.rank = f.rank - 1;
    for (auto p : s.partner) {
        IntVec img = s.quotient * f.rays[p];
        s.length.push_back(content(img));
        s.fan.rays.push_back(primitive(img));
    }
    for (auto& [c, ps] : cones) {
        Cone sc;
        for (auto p : ps) sc.push_back(*s.star_index_of(p));
        std::sort(sc.begin(), sc.end());
        s.fan.max_cones.push_back(sc);
        s.source_cone.push_back(c);
    }
    return s;
}

}  // namespace toricomplex
