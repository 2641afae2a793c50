#pragma once

// Smith normal form, cokernel presentations, integer kernels, rational cones
// and their Hilbert bases.

#include "matrix.hpp"
#include "simplex.hpp"

#include <map>
#include <set>

namespace toricomplex {

struct SmithForm {
    IntMatrix diag, left, right;  // left * m * right == diag

    std::size_t rank() const {
        std::size_t r = 0;
        while (r < diag.rows() && r < diag.cols() && diag(r, r) != 0) ++r;
        return r;
    }
};

namespace detail {

// Smallest nonzero |entry| in the lower-right block starting at t; ties by (row, col).
inline bool smallest_entry(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Int a = abs_int(d(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

inline Int trunc_div(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace detail

inline SmithForm snf(const IntMatrix& m) {
    SmithForm s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    IntMatrix& d = s.diag;
    IntMatrix& l = s.left;
    IntMatrix& r = s.right;
    std::size_t t = 0;
    const std::size_t lim = std::min(m.rows(), m.cols());
    while (t < lim) {
        std::size_t pi, pj;
        if (!detail::smallest_entry(d, t, pi, pj)) break;
        d.swap_rows(t, pi);
        l.swap_rows(t, pi);
        d.swap_cols(t, pj);
        r.swap_cols(t, pj);
        const Int p = d(t, t);
        bool clean = true;
        for (std::size_t i = t + 1; i < d.rows(); ++i) {
            if (d(i, t) == 0) continue;
            Int q = detail::trunc_div(d(i, t), p);
            if (q != 0) {
                d.add_row(i, t, -q);
                l.add_row(i, t, -q);
            }
            if (d(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
            if (d(t, j) == 0) continue;
            Int q = detail::trunc_div(d(t, j), p);
            if (q != 0) {
                d.add_col(j, t, -q);
                r.add_col(j, t, -q);
            }
            if (d(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // a smaller remainder now exists; repivot
        // divisibility: fold an offending row into the pivot row
        bool divides = true;
        for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
            for (std::size_t j = t + 1; j < d.cols(); ++j)
                if (mod_floor(d(i, j), p) != 0) {
                    d.add_row(t, i, Int(1));
                    l.add_row(t, i, Int(1));
                    divides = false;
                    break;
                }
        if (!divides) continue;
        if (d(t, t) < 0) {
            d.negate_row(t);
            l.negate_row(t);
        }
        ++t;
    }
    return s;
}

// Presentation of Z^g / image(m) for an integer matrix m with g rows.
struct AbelianGroupPresentation {
    std::size_t num_generators = 0;
    std::size_t free_rank = 0;
    IntVec torsion;        // d_1 | d_2 | ..., all >= 2
    IntMatrix basis_map;   // (|torsion| + free_rank) x num_generators

    std::size_t coords() const { return torsion.size() + free_rank; }

    // Class of an integer vector, torsion coordinates reduced into [0, d_i).
    IntVec class_of(const IntVec& x) const {
        IntVec c = basis_map * x;
        for (std::size_t i = 0; i < torsion.size(); ++i) c[i] = mod_floor(c[i], torsion[i]);
        return c;
    }

    // Image in the free part tensored with Q (torsion discarded).
    RatVec rational_class(const RatVec& x) const {
        RatVec c(free_rank, Rat(0));
        for (std::size_t k = 0; k < free_rank; ++k)
            for (std::size_t j = 0; j < num_generators; ++j)
                if (x[j] != 0) c[k] += basis_map(torsion.size() + k, j) * x[j];
        return c;
    }

    bool is_zero_class(const IntVec& x) const { return is_zero(class_of(x)); }

    // Order of the class of x; 0 means infinite.
    Int order_of(const IntVec& x) const {
        IntVec c = class_of(x);
        for (std::size_t k = 0; k < free_rank; ++k)
            if (c[torsion.size() + k] != 0) return 0;
        Int o = 1;
        for (std::size_t i = 0; i < torsion.size(); ++i)
            if (c[i] != 0) o = lcm(o, torsion[i] / gcd(torsion[i], c[i]));
        return o;
    }

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    std::string describe() const {
        std::string s;
        auto add = [&](const std::string& t) { s += s.empty() ? t : " + " + t; };
        if (free_rank == 1) add("Z");
        if (free_rank > 1) add("Z^" + std::to_string(free_rank));
        for (const auto& d : torsion) add("Z/" + d.get_str());
        return s.empty() ? "0" : s;
    }
};

inline AbelianGroupPresentation cokernel(const IntMatrix& m) {
    SmithForm s = snf(m);
    std::size_t r = s.rank();
    AbelianGroupPresentation g;
    g.num_generators = m.rows();
    g.free_rank = m.rows() - r;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < r; ++i)
        if (s.diag(i, i) != 1) {
            keep.push_back(i);
            g.torsion.push_back(s.diag(i, i));
        }
    for (std::size_t i = r; i < m.rows(); ++i) keep.push_back(i);
    g.basis_map = IntMatrix(keep.size(), m.rows());
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (std::size_t j = 0; j < m.rows(); ++j) g.basis_map(k, j) = s.left(keep[k], j);
    return g;
}

// Z-basis of {x in Z^n : a x = 0}.
inline std::vector<IntVec> integer_kernel(const IntMatrix& a) {
    SmithForm s = snf(a);
    std::size_t r = s.rank();
    std::vector<IntVec> basis;
    for (std::size_t j = r; j < a.cols(); ++j) basis.push_back(s.right.col(j));
    return basis;
}

// Saturated sublattice (span_Q(vs) ∩ Z^n) with a Z-basis and coordinate map.
struct Sublattice {
    std::size_t ambient = 0;
    std::vector<IntVec> basis;  // Z-basis vectors in Z^ambient
    IntMatrix to_coords;        // rows: coordinate functionals (valid on the sublattice)

    std::size_t rank() const { return basis.size(); }

    IntVec coords(const IntVec& x) const { return to_coords * x; }

    IntVec embed(const IntVec& y) const {
        IntVec x(ambient, Int(0));
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (std::size_t i = 0; i < ambient; ++i) x[i] += y[k] * basis[k][i];
        return x;
    }
};

inline Sublattice saturated_span(const std::vector<IntVec>& vs, std::size_t n) {
    Sublattice L;
    L.ambient = n;
    // equations: integer kernel of the generator matrix transposed
    std::vector<IntVec> eqs = vs.empty() ? std::vector<IntVec>{} : kernel(IntMatrix::from_rows(vs, n));
    if (vs.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, Int(0));
            e[i] = 1;
            eqs.push_back(e);
        }
    }
    if (eqs.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, Int(0));
            e[i] = 1;
            L.basis.push_back(e);
        }
        L.to_coords = IntMatrix::identity(n);
        return L;
    }
    IntMatrix a = IntMatrix::from_rows(eqs, n);
    SmithForm s = snf(a);
    std::size_t r = s.rank();
    IntMatrix vinv = unimodular_inverse(s.right);
    L.to_coords = IntMatrix(n - r, n);
    for (std::size_t j = r; j < n; ++j) {
        L.basis.push_back(s.right.col(j));
        for (std::size_t i = 0; i < n; ++i) L.to_coords(j - r, i) = vinv(j, i);
    }
    return L;
}

// Lattice generated (over Z) by vs: a Z-basis and coordinates of members.
// With U*G*W = D (G has the vectors as columns), the first r columns of U^-1
// scaled by the invariant factors form a basis.
struct SpanLattice {
    std::size_t ambient = 0;
    std::vector<IntVec> basis;

    // Coordinates of x in the basis; nullopt if x is not in the lattice.
    std::optional<IntVec> coords(const IntVec& x) const {
        if (basis.empty()) return is_zero(x) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
        auto sol = solve(to_rat(IntMatrix::from_cols(basis, ambient)), to_rat(x));
        if (!sol) return std::nullopt;
        IntVec c;
        for (const auto& q : *sol) {
            if (!is_integer(q)) return std::nullopt;
            c.push_back(q.get_num());
        }
        return c;
    }
};

inline SpanLattice lattice_span(const std::vector<IntVec>& vs, std::size_t n) {
    SpanLattice L;
    L.ambient = n;
    if (vs.empty()) return L;
    IntMatrix g = IntMatrix::from_cols(vs, n);
    SmithForm s = snf(g);
    IntMatrix uinv = unimodular_inverse(s.left);
    for (std::size_t k = 0; k < s.rank(); ++k) L.basis.push_back(scale(uinv.col(k), s.diag(k, k)));
    return L;
}

// ---- rational polyhedral cones ---------------------------------------------

struct RationalCone {
    std::size_t dim = 0;  // ambient lattice rank
    std::vector<IntVec> generators;
};

// H-description: x in cone iff equations·x = 0 and facets·x >= 0.
struct ConeDescription {
    std::size_t ambient = 0;
    std::size_t span_dim = 0;
    std::vector<IntVec> equations;  // basis of the orthogonal complement of the span
    std::vector<IntVec> facets;     // primitive inward normals lying in the span
    bool pointed = true;

    bool contains(const IntVec& x) const {
        for (const auto& e : equations)
            if (dot(e, x) != 0) return false;
        for (const auto& f : facets)
            if (dot(f, x) < 0) return false;
        return true;
    }
    bool contains(const RatVec& x) const {
        for (const auto& e : equations)
            if (dot(to_rat(e), x) != 0) return false;
        for (const auto& f : facets)
            if (dot(to_rat(f), x) < 0) return false;
        return true;
    }
    // Relative interior.
    bool interior(const IntVec& x) const {
        for (const auto& e : equations)
            if (dot(e, x) != 0) return false;
        for (const auto& f : facets)
            if (dot(f, x) <= 0) return false;
        return true;
    }
};

namespace detail {

inline void next_subset(std::vector<std::size_t>& idx, std::size_t n, bool& done) {
    std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return;
        }
    }
    done = true;
}

// Calls f on each k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    bool done = false;
    while (!done) {
        f(idx);
        if (k == 0) return;
        next_subset(idx, n, done);
    }
}

}  // namespace detail

// Pointed iff sum λ_i g_i = 0 with λ >= 0 forces λ = 0 on nonzero generators.
inline bool is_pointed(const RationalCone& c) {
    std::vector<IntVec> gens;
    for (const auto& g : c.generators)
        if (!is_zero(g)) gens.push_back(g);
    if (gens.empty()) return true;
    LinearProgram lp(gens.size(), true);
    for (std::size_t i = 0; i < c.dim; ++i) {
        RatVec row(gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j) row[j] = gens[j][i];
        lp.add(row, Relation::Equal, 0);
    }
    for (std::size_t j = 0; j < gens.size(); ++j) {
        RatVec row(gens.size(), Rat(0));
        row[j] = 1;
        lp.add(row, Relation::LessEq, 1);
    }
    lp.set_objective(RatVec(gens.size(), Rat(1)));
    return lp.solve().value == 0;
}

inline ConeDescription describe(const RationalCone& c) {
    ConeDescription d;
    d.ambient = c.dim;
    std::vector<IntVec> gens;
    for (const auto& g : c.generators) {
        if (g.size() != c.dim) fail(ErrorKind::InvalidArgument, "cone generator has wrong length");
        if (!is_zero(g)) gens.push_back(g);
    }
    d.pointed = is_pointed(c);
    if (gens.empty()) {
        for (std::size_t i = 0; i < c.dim; ++i) {
            IntVec e(c.dim, Int(0));
            e[i] = 1;
            d.equations.push_back(e);
        }
        return d;
    }
    IntMatrix gm = IntMatrix::from_rows(gens, c.dim);
    d.equations = kernel(gm);
    d.span_dim = c.dim - d.equations.size();
    std::set<IntVec> seen;
    std::size_t k = d.span_dim - 1;
    detail::for_each_subset(gens.size(), k, [&](const std::vector<std::size_t>& idx) {
        std::vector<IntVec> rows = d.equations;
        for (auto i : idx) rows.push_back(gens[i]);
        std::vector<IntVec> ker;
        if (rows.empty()) {
            for (std::size_t i = 0; i < c.dim; ++i) {
                IntVec e(c.dim, Int(0));
                e[i] = 1;
                ker.push_back(e);
            }
        } else {
            ker = kernel(IntMatrix::from_rows(rows, c.dim));
        }
        if (ker.size() != 1) return;
        IntVec nrm = ker[0];
        bool pos = false, neg = false;
        for (const auto& g : gens) {
            Int v = dot(nrm, g);
            if (v > 0) pos = true;
            if (v < 0) neg = true;
        }
        if (pos && neg) return;
        if (!pos && !neg) return;
        if (neg) nrm = scale(nrm, Int(-1));
        nrm = primitive(nrm);
        if (seen.insert(nrm).second) d.facets.push_back(nrm);
    });
    std::sort(d.facets.begin(), d.facets.end());
    return d;
}

// Primitive generators of the extreme rays of a pointed cone, sorted.
inline std::vector<IntVec> extreme_rays(const RationalCone& c) {
    ConeDescription d = describe(c);
    if (!d.pointed) fail(ErrorKind::NotPointed, "cone has a lineality space");
    std::set<IntVec> out;
    for (const auto& g : c.generators) {
        if (is_zero(g)) continue;
        std::vector<IntVec> tight = d.equations;
        for (const auto& f : d.facets)
            if (dot(f, g) == 0) tight.push_back(f);
        if (rank_of_vectors(tight, c.dim) == c.dim - 1) out.insert(primitive(g));
    }
    return std::vector<IntVec>(out.begin(), out.end());
}

// Dual cone {m : <m, g> >= 0 for all g} of a full-dimensional pointed cone.
inline RationalCone dual_cone(const RationalCone& c) {
    ConeDescription d = describe(c);
    if (d.span_dim != c.dim) fail(ErrorKind::NotFullDimensional, "dual cone requested for a cone that is not full-dimensional");
    if (!d.pointed) fail(ErrorKind::NotPointed, "dual cone requested for a cone with lineality");
    return RationalCone{c.dim, d.facets};
}

namespace detail {

// Pulling triangulation of a pointed cone generated by the given extreme rays.
inline void triangulate_into(const std::vector<IntVec>& rays, std::size_t n, std::vector<std::vector<IntVec>>& out) {
    std::size_t d = rank_of_vectors(rays, n);
    if (rays.size() == d) {
        out.push_back(rays);
        return;
    }
    ConeDescription desc = describe(RationalCone{n, rays});
    const IntVec& apex = rays.front();
    for (const auto& f : desc.facets) {
        if (dot(f, apex) == 0) continue;
        std::vector<IntVec> face;
        for (const auto& r : rays)
            if (dot(f, r) == 0) face.push_back(r);
        std::vector<std::vector<IntVec>> sub;
        triangulate_into(face, n, sub);
        for (auto& s : sub) {
            s.insert(s.begin(), apex);
            out.push_back(std::move(s));
        }
    }
}

}  // namespace detail

inline std::vector<std::vector<IntVec>> triangulate(const RationalCone& c) {
    std::vector<IntVec> rays = extreme_rays(c);
    std::vector<std::vector<IntVec>> out;
    if (rays.empty()) return out;
    detail::triangulate_into(rays, c.dim, out);
    return out;
}

// Lattice points of the half-open parallelepiped spanned by linearly independent
// columns, in the lattice they span over Q (given as coordinates in Z^d, d = #gens).
inline std::vector<IntVec> parallelepiped_points(const std::vector<IntVec>& gens) {
    std::size_t d = gens.size();
    IntMatrix g = IntMatrix::from_cols(gens, d);
    SmithForm s = snf(g);
    IntMatrix uinv = unimodular_inverse(s.left);
    RatMatrix ginv = *inverse(to_rat(g));
    std::vector<IntVec> pts;
    IntVec k(d, Int(0));
    for (;;) {
        IntVec x = uinv * k;
        RatVec lam = ginv * to_rat(x);
        RatVec p(d, Rat(0));
        for (std::size_t i = 0; i < d; ++i) {
            Rat f = frac(lam[i]);
            for (std::size_t r = 0; r < d; ++r) p[r] += f * gens[i][r];
        }
        IntVec pi(d);
        for (std::size_t r = 0; r < d; ++r) pi[r] = p[r].get_num();
        pts.push_back(pi);
        std::size_t i = 0;
        while (i < d) {
            ++k[i];
            if (k[i] < s.diag(i, i)) break;
            k[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
    return pts;
}

// Minimal generating set of the monoid c ∩ Z^n, sorted lexicographically.
inline std::vector<IntVec> hilbert_basis(const RationalCone& c) {
    if (!is_pointed(c)) fail(ErrorKind::NotPointed, "Hilbert basis requested for a cone with lineality");
    std::vector<IntVec> rays;
    for (const auto& g : c.generators)
        if (!is_zero(g)) rays.push_back(g);
    if (rays.empty()) return {};
    Sublattice L = saturated_span(rays, c.dim);
    std::size_t d = L.rank();
    std::vector<IntVec> local;
    for (const auto& r : rays) local.push_back(L.coords(r));
    RationalCone lc{d, local};
    ConeDescription desc = describe(lc);
    std::set<IntVec> cand;
    for (const auto& simplex : triangulate(lc)) {
        for (const auto& g : simplex) cand.insert(g);
        for (const auto& p : parallelepiped_points(simplex))
            if (!is_zero(p)) cand.insert(p);
    }
    std::vector<IntVec> cs(cand.begin(), cand.end());
    std::vector<IntVec> basis;
    for (const auto& x : cs) {
        bool irreducible = true;
        for (const auto& g : cs) {
            if (g == x) continue;
            if (desc.contains(sub(x, g))) {
                irreducible = false;
                break;
            }
        }
        if (irreducible) basis.push_back(L.embed(x));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

}  // namespace toricomplex
