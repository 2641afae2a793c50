#include <gtest/gtest.h>

#include "toricomplex/adjunction.hpp"
#include "toricomplex/catalog.hpp"
#include "toricomplex/conecox.hpp"
#include "random_fans.hpp"

using namespace toricomplex;
namespace cat = toricomplex::catalog;

namespace {

RatVec rats(std::initializer_list<Rat> xs) { return RatVec(xs); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

// Is there g in GL_n(Z) and a bijection of rays with g a_i = b_pi(i)?  Brute force over bijections.
bool unimodularly_equivalent(const std::vector<IntVec>& a, const std::vector<IntVec>& b, std::size_t n) {
    if (a.size() != b.size()) return false;
    std::vector<std::size_t> basis;  // n independent rays of a
    for (std::size_t i = 0; i < a.size() && basis.size() < n; ++i) {
        auto trial = basis;
        trial.push_back(i);
        std::vector<IntVec> vs;
        for (auto j : trial) vs.push_back(a[j]);
        if (rank_of_vectors(vs, n) == trial.size()) basis = trial;
    }
    if (basis.size() != n) return false;
    std::vector<IntVec> ua;
    for (auto j : basis) ua.push_back(a[j]);
    RatMatrix uinv = *inverse(to_rat(IntMatrix::from_cols(ua, n)));
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<IntVec> wb;
        for (auto j : basis) wb.push_back(b[perm[j]]);
        RatMatrix g = to_rat(IntMatrix::from_cols(wb, n)) * uinv;
        bool ok = true;
        IntMatrix gi(n, n);
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (!is_integer(g(i, j))) ok = false;
                else gi(i, j) = g(i, j).get_num();
            }
        if (!ok || abs_int(det(gi)) != 1) continue;
        for (std::size_t i = 0; i < a.size() && ok; ++i) ok = gi * a[i] == b[perm[i]];
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// (a, b) has degree 0 iff it is (<m, u_i>, <m, v>) for an integral m.
bool is_principal_exponent(const Fan& y, const IntVec& ex) {
    std::size_t n = y.rank;
    RatMatrix aug(y.num_rays(), n + 1);
    for (std::size_t i = 0; i < y.num_rays(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = y.rays[i][j];
        aug(i, n) = ex[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == n) return false;
    RatVec m(n, Rat(0));
    for (std::size_t k = 0; k < piv.size(); ++k) m[piv[k]] = aug(k, n);
    for (const auto& x : m)
        if (!is_integer(x)) return false;
    return true;
}

// Irreducible degree-0 exponent vectors inside the box [0, bound]^{r+1}.
std::vector<IntVec> irreducibles_in_box(const Fan& y, long bound) {
    std::size_t k = y.num_rays();
    std::vector<IntVec> zero;
    IntVec x(k, Int(0));
    for (;;) {
        std::size_t i = 0;
        while (i < k) {
            if (x[i] < bound) {
                ++x[i];
                break;
            }
            x[i] = 0;
            ++i;
        }
        if (i == k) break;
        if (is_principal_exponent(y, x)) zero.push_back(x);
    }
    std::set<IntVec> zs(zero.begin(), zero.end());
    std::vector<IntVec> out;
    for (const auto& z : zero) {
        bool reducible = false;
        for (const auto& w : zero) {
            if (w == z) continue;
            IntVec d = sub(z, w);
            if (std::all_of(d.begin(), d.end(), [](const Int& c) { return c >= 0; }) && zs.count(d)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) out.push_back(z);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Fan p1() { return cat::projective_space(1); }

}  // namespace

TEST(ConeOver, LineWithDegreeOneIsThePlane) {
    Fan c = cone_over({p1(), rats({1, 0})});
    EXPECT_EQ(c.rank, 2u);
    EXPECT_TRUE(is_smooth(c));
    EXPECT_TRUE(unimodularly_equivalent(c.rays, cat::affine_plane().rays, 2));
    EXPECT_EQ(hilbert_basis(dual_cone(c.rational_cone(c.max_cones[0]))).size(), 2u);
}

TEST(ConeOver, LineWithDegreeTwoIsA1) {
    Fan c = cone_over({p1(), rats({1, 1})});
    EXPECT_TRUE(unimodularly_equivalent(c.rays, cat::a1_cone().rays, 2));
    EXPECT_EQ(hilbert_basis(dual_cone(c.rational_cone(c.max_cones[0]))).size(), 3u);
}

TEST(ConeOver, QuadricIsTheConifold) {
    Fan c = cone_over({cat::p1xp1(), rats({1, 1, 0, 0})});
    EXPECT_EQ(c.rank, 3u);
    EXPECT_TRUE(unimodularly_equivalent(c.rays, cat::conifold().rays, 3));
    EXPECT_EQ(hilbert_basis(dual_cone(c.rational_cone(c.max_cones[0]))).size(), 4u);
}

TEST(ConeOver, Rejections) {
    EXPECT_EQ(kind_of([] { cone_over({p1(), rats({0, 0})}); }), ErrorKind::NotAmple);
    EXPECT_EQ(kind_of([] { cone_over({cat::p1xp1(), rats({1, 0, 0, 0})}); }), ErrorKind::NotAmple);
    EXPECT_EQ(kind_of([] { cone_over({cat::affine_plane(), rats({1, 1})}); }), ErrorKind::InvalidFan);
}

TEST(CoxDegrees, PlaneBlownUpAtTheOrigin) {
    auto g = cox_degrees(cat::affine_plane(), ints({1, 1}));
    EXPECT_EQ(g.group.free_rank, 1u);
    EXPECT_TRUE(g.group.torsion.empty());
    EXPECT_EQ(g.degrees[0], g.degrees[1]);
    EXPECT_EQ(g.degrees[2], scale(g.degrees[0], Int(-1)));
    // cokernel oracle: Z^3 / <(1,0,1), (0,1,1)> is generated by any coordinate
    EXPECT_EQ(abs_int(g.degrees[0][0]), 1);
}

TEST(CoxDegrees, A1) {
    auto g = cox_degrees(cat::a1_cone(), ints({1, 1}));
    EXPECT_EQ(g.group.free_rank, 1u);
    EXPECT_TRUE(g.group.torsion.empty());
    // relations (0,2,1) and (1,1,1): [E_1] = [E_2], [E] = -2[E_2]
    EXPECT_EQ(g.degrees[0], g.degrees[1]);
    EXPECT_EQ(g.degrees[2], scale(g.degrees[1], Int(-2)));
}

TEST(CoxDegrees, Conifold) {
    Fan x = cat::conifold();
    auto g = cox_degrees(x, ints({1, 1, 2}));
    EXPECT_EQ(g.group.free_rank, 2u);
    EXPECT_TRUE(g.group.torsion.empty());
    for (std::size_t j = 0; j < 3; ++j) {
        IntVec ex;
        IntVec m(3, Int(0));
        m[j] = 1;
        for (const auto& u : g.y.rays) ex.push_back(dot(m, u));
        EXPECT_TRUE(g.group.is_zero_class(ex));
    }
}

TEST(CoxDegrees, Rejections) {
    EXPECT_EQ(kind_of([] { cox_degrees(cat::affine_plane(), ints({1, 0})); }), ErrorKind::NotInterior);
    EXPECT_EQ(kind_of([] { cox_degrees(cat::affine_plane(), ints({0, 0})); }), ErrorKind::NotInterior);
    EXPECT_EQ(kind_of([] { cox_degrees(cat::a1_cone(), ints({2, 1})); }), ErrorKind::NotInterior);
    EXPECT_EQ(kind_of([] { cox_degrees(cat::projective_space(2), ints({1, 1})); }), ErrorKind::InvalidArgument);
}

TEST(DegreeZeroMonoid, PlaneBlownUpAtTheOrigin) {
    auto g = cox_degrees(cat::affine_plane(), ints({1, 1}));
    auto v = degree_zero_monoid(g);
    EXPECT_EQ(v.generators, std::vector<IntVec>({ints({0, 1, 1}), ints({1, 0, 1})}));
    EXPECT_EQ(v.grading, std::vector<Int>({Int(1), Int(1)}));
    EXPECT_EQ(v.generators, irreducibles_in_box(g.y, 3));
}

TEST(DegreeZeroMonoid, A1) {
    auto g = cox_degrees(cat::a1_cone(), ints({1, 1}));
    auto v = degree_zero_monoid(g);
    EXPECT_EQ(v.generators, std::vector<IntVec>({ints({0, 2, 1}), ints({1, 1, 1}), ints({2, 0, 1})}));
    EXPECT_EQ(v.grading, std::vector<Int>({Int(1), Int(1), Int(1)}));
    EXPECT_EQ(v.generators, irreducibles_in_box(g.y, 4));
}

TEST(DegreeZeroMonoid, ConifoldMatchesBoxOracle) {
    auto g = cox_degrees(cat::conifold(), ints({1, 1, 2}));
    auto v = degree_zero_monoid(g);
    EXPECT_EQ(v.generators, irreducibles_in_box(g.y, 2));
}

TEST(DegreeZeroMonoid, TorsionIsRejectedOrCovered) {
    Fan x = single_cone_fan(2, {ints({1, 0}), ints({-1, 2})});
    IntVec v = ints({1, 2});
    auto g = cox_degrees(x, v);
    EXPECT_EQ(g.group.torsion, ints({2}));
    EXPECT_EQ(kind_of([&] { degree_zero_monoid(g); }), ErrorKind::TorsionObstruction);
    auto c = cox_degrees(x, v, TorsionPolicy::Cover);
    EXPECT_EQ(c.input_torsion, ints({2}));
    EXPECT_EQ(c.cover_index, 2);
    EXPECT_TRUE(c.group.torsion.empty());
    EXPECT_TRUE(is_smooth(c.x));
    EXPECT_NO_THROW(degree_zero_monoid(c));
}

TEST(ConeIso, NamedCones) {
    auto a2 = verify_cone_iso(cat::affine_plane(), ints({1, 1}));
    EXPECT_TRUE(a2.isomorphic);
    EXPECT_TRUE(unimodularly_equivalent(a2.cone.rays, cone_over({p1(), rats({1, 0})}).rays, 2));

    auto a1 = verify_cone_iso(cat::a1_cone(), ints({1, 1}));
    EXPECT_TRUE(a1.isomorphic);
    EXPECT_TRUE(unimodularly_equivalent(a1.cone.rays, cone_over({p1(), rats({1, 1})}).rays, 2));

    auto con = verify_cone_iso(cat::conifold(), ints({1, 1, 2}));
    EXPECT_TRUE(con.isomorphic);
    EXPECT_EQ(con.star.fan.num_rays(), 4u);
    EXPECT_TRUE(unimodularly_equivalent(con.cone.rays, cat::conifold().rays, 3));
}

TEST(ConeIso, PolarizationIsMinusERestricted) {
    // agrees with the adjunction restriction of -E up to a principal divisor on E
    for (const auto& [x, v] : std::vector<std::pair<Fan, IntVec>>{
             {cat::affine_plane(), ints({1, 1})}, {cat::a1_cone(), ints({1, 1})}, {cat::conifold(), ints({1, 1, 2})}}) {
        auto r = verify_cone_iso(x, v);
        auto walls = wall_data(r.data.y, r.star);
        auto ref = restrict_q_cartier(scale(prime_divisor(r.data.y, r.data.e), -1), r.data.y, r.star, walls);
        auto diff = add(r.polarization, scale(ref, -1));
        auto g = class_group(r.star.fan);
        EXPECT_TRUE(is_zero(g.rational_class(diff)));
        // and is integral-principal when cleared: it is the divisor of a character
        RatMatrix a(r.star.fan.num_rays(), r.star.fan.rank);
        for (std::size_t i = 0; i < r.star.fan.num_rays(); ++i)
            for (std::size_t j = 0; j < r.star.fan.rank; ++j) a(i, j) = r.star.fan.rays[i][j];
        EXPECT_TRUE(solve(a, diff).has_value());
    }
    auto a1 = verify_cone_iso(cat::a1_cone(), ints({1, 1}));
    Rat degree = 0;
    for (const auto& x : a1.polarization) degree += x;
    EXPECT_EQ(degree, 2);
}

TEST(ConeIso, RandomConesWithCover) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 30; ++t) {
        std::size_t rank = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
        Fan x = single_cone_fan(rank, gen::random_pointed_cone(rng, rank));
        IntVec v = gen::random_interior_vector(rng, x.rays);
        auto g = cox_degrees(x, v, TorsionPolicy::Cover);
        EXPECT_EQ(g.group.free_rank, local_class_group(g.x, 0).group.free_rank + 1);
        auto m = degree_zero_monoid(g);
        for (const auto& ex : m.generators) EXPECT_TRUE(is_zero(m.degree_of(ex)));
        // the grading is additive: tau~ of a sum is recovered from an integral m
        for (std::size_t i = 0; i < m.generators.size(); ++i)
            for (std::size_t j = i; j < m.generators.size(); ++j) {
                IntVec s = add(m.generators[i], m.generators[j]);
                EXPECT_TRUE(is_principal_exponent(g.y, s));
                EXPECT_EQ(s.back(), m.grading[i] + m.grading[j]);
            }
        auto rep = verify_cone_iso(x, v, TorsionPolicy::Cover);
        EXPECT_TRUE(rep.isomorphic);
        // relabeling the rays of the cone
        Fan xr = x;
        std::reverse(xr.rays.begin(), xr.rays.end());
        EXPECT_TRUE(verify_cone_iso(xr, v, TorsionPolicy::Cover).isomorphic);
    }
}
