#include <gtest/gtest.h>

#include "toricomplex/catalog.hpp"
#include "toricomplex/complexity.hpp"
#include "brute_force.hpp"
#include "random_fans.hpp"

using namespace toricomplex;
namespace cat = toricomplex::catalog;

namespace {

RatVec rats(std::initializer_list<Rat> xs) { return RatVec(xs); }

Decomposition primes(const Fan& f, std::initializer_list<std::pair<std::size_t, Rat>> ps) {
    Decomposition s;
    for (auto [i, b] : ps) s.parts.push_back(Part{b, prime_divisor(f, i)});
    return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Complexity, ToricBoundaryOfP2IsZero) {
    Fan p2 = cat::projective_space(2);
    auto b = rats({1, 1, 1});
    EXPECT_EQ(complexity(p2, b, Mode::projective(), primes(p2, {{0, 1}, {1, 1}, {2, 1}})), 0);
    EXPECT_EQ(complexity(p2, b, Mode::projective(), Decomposition{}), 3);
}

TEST(Complexity, P1xP1PrimeDecomposition) {
    Fan q = cat::p1xp1();
    auto b = rats({1, 1, 1, 1});
    auto s = primes(q, {{0, 1}, {1, 1}, {2, 1}, {3, 1}});
    EXPECT_EQ(complexity(q, b, Mode::projective(), s), 0);
    EXPECT_EQ(fine_complexity(q, b, Mode::projective(), s), 0);
    Decomposition one{{}, {Part{1, rats({1, 1, 1, 1})}}};
    EXPECT_EQ(fine_complexity(q, b, Mode::projective(), one), 2);
    EXPECT_EQ(fine_complexity(q, b, Mode::projective(), Decomposition{}), 2);
}

TEST(Complexity, RejectsInvalidDecompositions) {
    Fan p2 = cat::projective_space(2);
    auto b = rats({1, Rat(1, 2), 0});
    auto ctx = make_context(p2, Mode::projective());
    EXPECT_EQ(kind_of([&] { complexity(ctx, b, primes(p2, {{1, 1}})); }), ErrorKind::InvalidDecomposition);
    EXPECT_EQ(kind_of([&] { complexity(ctx, b, primes(p2, {{0, -1}})); }), ErrorKind::InvalidDecomposition);
    EXPECT_EQ(kind_of([&] { complexity(ctx, b, primes(p2, {{2, Rat(1, 3)}})); }), ErrorKind::InvalidDecomposition);
    // local mode: a part must meet the fixed point
    Fan bl = cat::blowup_affine_plane();
    auto lctx = make_context(bl, Mode::local(0));  // cone {0, 2}
    EXPECT_EQ(kind_of([&] { complexity(lctx, rats({1, 1, 1}), primes(bl, {{1, 1}})); }), ErrorKind::InvalidDecomposition);
    EXPECT_EQ(complexity(lctx, rats({1, 1, 1}), primes(bl, {{0, 1}, {2, 1}})), 0);
}

TEST(OrbifoldComplexity, TrivialOrbifoldEqualsFine) {
    Fan q = cat::p1xp1();
    auto b = rats({1, Rat(1, 2), 1, Rat(2, 3)});
    Decomposition s{{}, {Part{Rat(1, 2), rats({1, 1, 0, 0})}, Part{Rat(1, 2), rats({0, 0, 1, 0})}}};
    EXPECT_EQ(orbifold_complexity(q, b, Mode::projective(), s), fine_complexity(q, b, Mode::projective(), s));
}

TEST(OrbifoldComplexity, A1GermWithHalfOrbifoldLine) {
    // B = D_1 + (1/2) D_2, n(D_2) = 2: Σ = (1/2) D_2 + 1 * D_1; local class group Z/2 has no span
    Fan a1 = cat::a1_cone();
    OrbifoldDecomposition s{{Int(1), Int(2)}, {Part{1, rats({1, 0})}}};
    EXPECT_EQ(orbifold_complexity(a1, rats({1, Rat(1, 2)}), Mode::local(0), s), 1);
}

TEST(OrbifoldComplexity, P1WithOrbifoldPoint) {
    // B = p + q, n_p = 2, Σ = (1/2) p + 1 * q + 1 * (p / 2)
    Fan p1 = cat::projective_space(1);
    auto b = rats({1, 1});
    OrbifoldDecomposition s{{Int(2), Int(1)}, {Part{1, rats({0, 1})}, Part{1, rats({Rat(1, 2), 0})}}};
    EXPECT_EQ(orbifold_complexity(p1, b, Mode::projective(), s), 0);
    auto ctx = make_context(p1, Mode::projective());
    EXPECT_EQ(oracle::brute_force_minimum(ctx, b, 12).value, 0);
}

TEST(OrbifoldComplexity, IncompatibleOrbifoldRejected) {
    Fan p1 = cat::projective_space(1);
    auto ctx = make_context(p1, Mode::projective());
    OrbifoldDecomposition outside{{Int(1), Int(2)}, {}};
    EXPECT_EQ(kind_of([&] { orbifold_complexity(ctx, rats({1, 0}), outside); }), ErrorKind::IncompatibleOrbifold);
    OrbifoldDecomposition low{{Int(3), Int(1)}, {}};
    EXPECT_EQ(kind_of([&] { orbifold_complexity(ctx, rats({Rat(1, 2), 0}), low); }), ErrorKind::IncompatibleOrbifold);
    OrbifoldDecomposition not_weil{{Int(2), Int(1)}, {Part{Rat(1, 4), rats({Rat(1, 3), 0})}}};
    EXPECT_EQ(kind_of([&] { orbifold_complexity(ctx, rats({1, 0}), not_weil); }), ErrorKind::InvalidDecomposition);
}

TEST(LocalComplexity, ZeroAtFixedPoints) {
    auto smooth = local_complexity_cloc(cat::affine_plane(), 0);
    EXPECT_EQ(smooth.value, 0);
    EXPECT_EQ(smooth.components, 2u);
    auto a1 = local_complexity_cloc(cat::a1_cone(), 0);
    EXPECT_EQ(a1.value, 0);
    EXPECT_EQ(a1.boundary, rats({1, 1}));
    auto con = local_complexity_cloc(cat::conifold(), 0);
    EXPECT_EQ(con.value, 0);
    EXPECT_EQ(con.components, 4u);
    EXPECT_EQ(kind_of([] { local_complexity_cloc(Fan{2, {ints({1, 0})}, {{0}}}, 0); }), ErrorKind::NotFullDimensional);
}

TEST(Minimize, Examples) {
    auto full = minimize(cat::projective_space(2), rats({1, 1, 1}), Mode::projective());
    EXPECT_EQ(full.c, 0);
    EXPECT_EQ(full.c_fine, 0);
    EXPECT_EQ(full.c_orb, 0);
    auto two = minimize(cat::projective_space(2), rats({1, 1, 0}), Mode::projective());
    EXPECT_EQ(two.c, 1);
    EXPECT_EQ(two.c_fine, 1);
    EXPECT_EQ(two.c_orb, 1);
    auto empty = minimize(cat::projective_space(1), rats({0, 0}), Mode::projective());
    EXPECT_EQ(empty.c, 2);
    EXPECT_EQ(empty.c_fine, 1);
    EXPECT_EQ(empty.c_orb, 1);
    EXPECT_TRUE(empty.sigma_orb.parts.empty());
}

TEST(Minimize, RejectsNonLogCanonical) {
    EXPECT_EQ(kind_of([] { minimize(cat::projective_space(2), rats({Rat(3, 2), 0, 0}), Mode::projective()); }), ErrorKind::NotLogCanonical);
}

TEST(Minimize, MatchesBruteForceAndChain) {
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 80; ++t) {
        auto raw = t % 2 ? gen::random_projective_cy(rng, 3, 7) : gen::random_local_cy(rng, 3, 7);
        if (!raw) continue;
        auto p = build_pair(*raw);
        auto ctx = make_context(p);
        std::size_t active = 0;
        for (auto i : ctx.central) active += p.boundary[i] > 0;
        if (active > 6) continue;
        ++checked;
        auto rep = minimize(p);
        EXPECT_GE(rep.c, rep.c_fine);
        EXPECT_GE(rep.c_fine, rep.c_orb);
        EXPECT_GE(rep.c_orb, 0);
        EXPECT_EQ(rep.c_fine, oracle::brute_force_minimum(ctx, p.boundary, 1).value) << to_string(p.boundary);
        EXPECT_EQ(rep.c_orb, oracle::brute_force_minimum(ctx, p.boundary, 12).value) << to_string(p.boundary);
    }
    EXPECT_GE(checked, 40);
}

TEST(Minimize, IndependentOfThreadCount) {
    std::mt19937_64 rng(23);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 20; ++t) {
        auto raw = gen::random_projective_cy(rng, 3, 9);
        if (!raw) continue;
        ++checked;
        auto p = build_pair(*raw);
        MinimizeOptions one, many;
        one.threads = 1;
        many.threads = 4;
        auto a = minimize(p, one), b = minimize(p, many);
        EXPECT_EQ(a.c_orb, b.c_orb);
        EXPECT_EQ(a.sigma_orb.orbifold, b.sigma_orb.orbifold);
        ASSERT_EQ(a.sigma_orb.parts.size(), b.sigma_orb.parts.size());
        for (std::size_t j = 0; j < a.sigma_orb.parts.size(); ++j) {
            EXPECT_EQ(a.sigma_orb.parts[j].b, b.sigma_orb.parts[j].b);
            EXPECT_EQ(a.sigma_orb.parts[j].divisor, b.sigma_orb.parts[j].divisor);
        }
    }
}

TEST(Minimize, ZeroInProjectiveModeForcesPrimeOrbifoldParts) {
    std::mt19937_64 rng(29);
    int zeros = 0;
    for (int t = 0; t < 300; ++t) {
        auto raw = gen::random_projective_cy(rng, 3, 9);
        if (!raw) continue;
        auto p = build_pair(*raw);
        auto rep = minimize(p);
        if (rep.c_orb != 0) continue;
        ++zeros;
        EXPECT_EQ(rep.sigma_orb.total(p.fan.num_rays()), p.boundary);
        for (const auto& part : rep.sigma_orb.parts) {
            std::size_t support = 0;
            for (std::size_t i = 0; i < part.divisor.size(); ++i)
                if (part.divisor[i] != 0) {
                    ++support;
                    EXPECT_EQ(part.divisor[i], Rat(1) / Rat(rep.sigma_orb.index(i)));
                }
            EXPECT_EQ(support, 1u);
        }
    }
    EXPECT_GT(zeros, 0);
}

TEST(Minimize, InvariantUnderRayRelabeling) {
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 25; ++t) {
        auto raw = gen::random_projective_cy(rng, 3, 8);
        if (!raw) continue;
        ++checked;
        auto rep = minimize(build_pair(*raw));
        // reverse the ray order
        PairData r = *raw;
        std::size_t n = r.fan.num_rays();
        std::reverse(r.fan.rays.begin(), r.fan.rays.end());
        for (auto& c : r.fan.max_cones) {
            for (auto& i : c) i = n - 1 - i;
            std::sort(c.begin(), c.end());
        }
        std::reverse(r.boundary.begin(), r.boundary.end());
        if (r.nef_trace) std::reverse(r.nef_trace->begin(), r.nef_trace->end());
        auto rev = minimize(build_pair(r));
        EXPECT_EQ(rep.c, rev.c);
        EXPECT_EQ(rep.c_fine, rev.c_fine);
        EXPECT_EQ(rep.c_orb, rev.c_orb);
    }
}

TEST(Minimize, OptimumIsNotBeatenBySplittingOrMergingParts) {
    Fan q = cat::p1xp1();
    auto b = rats({Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    auto ctx = make_context(q, Mode::projective());
    auto rep = minimize(q, b, Mode::projective());
    // merged and split variants of the same support
    Decomposition merged{{}, {Part{Rat(1, 2), rats({1, 1, 1, 1})}}};
    Decomposition pairs{{}, {Part{Rat(1, 2), rats({1, 1, 0, 0})}, Part{Rat(1, 2), rats({0, 0, 1, 1})}}};
    Decomposition split = prime_decomposition(ctx, b);
    for (const auto* s : {&merged, &pairs, &split}) EXPECT_LE(rep.c_fine, fine_complexity(ctx, b, *s));
    // splitting a part with weight below one can raise fine complexity
    auto two = rats({Rat(1, 2), Rat(1, 2), 0, 0});
    Decomposition joined{{}, {Part{Rat(1, 2), rats({1, 1, 0, 0})}}};
    EXPECT_EQ(fine_complexity(ctx, two, joined), Rat(5, 2));
    EXPECT_EQ(fine_complexity(ctx, two, prime_decomposition(ctx, two)), 3);
}
