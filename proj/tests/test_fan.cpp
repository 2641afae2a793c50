#include <gtest/gtest.h>

#include "toricomplex/catalog.hpp"
#include "toricomplex/divisor.hpp"

#include <random>

using namespace toricomplex;
namespace cat = toricomplex::catalog;

namespace {

// Large random primitive vectors: generic with respect to the small walls below.
std::vector<IntVec> test_set(std::size_t n) {
    std::vector<IntVec> out;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> u(-1000000, 1000000);
    for (int k = 0; k < 60; ++k) {
        IntVec v(n);
        for (auto& x : v) x = u(rng);
        out.push_back(primitive(v));
    }
    return out;
}

// Count of maximal cones containing v in their interior, and in any way.
std::pair<int, int> location(const Fan& f, const IntVec& v) {
    int interior = 0, any = 0;
    for (const auto& c : f.max_cones) {
        auto d = f.describe_cone(c);
        if (d.interior(v)) ++interior;
        if (d.contains(v)) ++any;
    }
    return {interior, any};
}

}  // namespace

TEST(Fan, SuiteFansValidCompleteSmooth) {
    for (const auto& [name, f] : cat::complete_suite()) {
        auto d = validate(f);
        EXPECT_TRUE(d.valid) << name << ": " << d.message;
        EXPECT_TRUE(is_complete(f)) << name;
        EXPECT_TRUE(is_smooth(f)) << name;
    }
}

TEST(Fan, OverlappingConesRejected) {
    Fan f{2, {ints({1, 0}), ints({1, 1}), ints({0, 1})}, {{0, 1}, {0, 2}}};
    // cone(e1, e1+e2) sits inside cone(e1, e2): containment is reported first
    auto d = validate(f);
    EXPECT_FALSE(d.valid);
    EXPECT_EQ(d.invariant, "max-cones-incomparable");
    Fan g{2, {ints({1, 0}), ints({1, 1}), ints({0, 1}), ints({1, 2})}, {{0, 3}, {1, 2}}};
    auto e = validate(g);
    EXPECT_FALSE(e.valid);
    EXPECT_EQ(e.kind, ErrorKind::OverlappingCones);
}

TEST(Fan, A1SingletonNotSmooth) {
    Fan f = cat::a1_cone();
    EXPECT_TRUE(validate(f).valid);
    EXPECT_FALSE(is_smooth(f));
    EXPECT_EQ(multiplicity(f, f.max_cones[0]), 2);
}

TEST(Fan, OtherInvariantsNamed) {
    EXPECT_EQ(validate(Fan{2, {ints({2, 0}), ints({0, 1})}, {{0, 1}}}).invariant, "ray-primitive");
    EXPECT_EQ(validate(Fan{2, {ints({1, 0}), ints({1, 0})}, {{0, 1}}}).invariant, "ray-distinct");
    EXPECT_EQ(validate(Fan{2, {ints({1, 0}), ints({-1, 0})}, {{0, 1}}}).kind, ErrorKind::NotPointed);
    EXPECT_EQ(validate(Fan{2, {ints({1, 0}), ints({0, 1}), ints({1, 1})}, {{0, 1, 2}}}).invariant, "cone-rays-extreme");
    EXPECT_EQ(validate(Fan{2, {ints({1, 0}), ints({0, 1})}, {{0}}}).invariant, "ray-used");
}

TEST(StarSubdivision, P2AtOneOne) {
    Fan f = star_subdivision(cat::projective_space(2), ints({1, 1}));
    EXPECT_TRUE(validate(f).valid);
    EXPECT_EQ(f.num_rays(), 4u);
    EXPECT_EQ(f.max_cones.size(), 4u);
    EXPECT_TRUE(is_complete(f));
    EXPECT_TRUE(is_smooth(f));
}

TEST(StarSubdivision, ExistingRayUnchanged) {
    Fan p2 = cat::projective_space(2);
    EXPECT_EQ(star_subdivision(p2, ints({1, 0})), p2);
}

TEST(StarSubdivision, BlowUpAffinePlane) {
    Fan f = star_subdivision(cat::affine_plane(), ints({1, 1}));
    ASSERT_EQ(f.max_cones.size(), 2u);
    for (const auto& c : f.max_cones) EXPECT_TRUE(is_smooth(f, c));
}

TEST(StarSubdivision, OutsideSupportThrows) {
    try {
        star_subdivision(cat::affine_plane(), ints({-1, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::RayOutsideSupport);
    }
}

TEST(StarSubdivision, IdempotentAndPreservesCompleteness) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> u(-3, 3);
    for (const auto& [name, base] : cat::complete_suite()) {
        Fan f = base;
        for (int step = 0; step < 3; ++step) {
            IntVec v(f.rank);
            for (auto& x : v) x = u(rng);
            if (is_zero(v)) continue;
            Fan g = star_subdivision(f, v);
            ASSERT_EQ(star_subdivision(g, v), g) << name;
            ASSERT_TRUE(validate(g).valid) << name;
            ASSERT_TRUE(is_complete(g)) << name;
            for (const auto& t : test_set(f.rank)) {
                auto [interior, any] = location(g, t);
                ASSERT_EQ(interior, 1) << name << " " << to_string(t);
                ASSERT_GE(any, 1);
            }
            f = g;
        }
    }
}

TEST(StarFan, P2LineIsP1) {
    auto s = star_fan(cat::projective_space(2), 0);
    EXPECT_EQ(s.fan.rank, 1u);
    EXPECT_EQ(s.fan.num_rays(), 2u);
    EXPECT_TRUE(validate(s.fan).valid);
    EXPECT_TRUE(is_complete(s.fan));
}

TEST(StarFan, ExceptionalCurveIsP1) {
    auto s = star_fan(cat::blowup_affine_plane(), 2);
    EXPECT_EQ(s.fan.num_rays(), 2u);
    EXPECT_TRUE(is_complete(s.fan));
}

TEST(StarFan, ConifoldBlowUpExceptionalIsP1xP1) {
    Fan y = star_subdivision(cat::conifold(), ints({1, 1, 2}));
    auto s = star_fan(y, y.num_rays() - 1);
    EXPECT_TRUE(validate(s.fan).valid);
    EXPECT_TRUE(is_complete(s.fan));
    EXPECT_TRUE(is_smooth(s.fan));
    // adjacency graph: 4 rays, 4 cones, each ray in exactly two cones, opposite rays never together
    ASSERT_EQ(s.fan.num_rays(), 4u);
    ASSERT_EQ(s.fan.max_cones.size(), 4u);
    std::vector<int> deg(4, 0);
    for (const auto& c : s.fan.max_cones)
        for (auto i : c) ++deg[i];
    for (int d : deg) EXPECT_EQ(d, 2);
    int opposite_pairs = 0;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
            if (add(s.fan.rays[a], s.fan.rays[b]) == IntVec(2, Int(0))) ++opposite_pairs;
    EXPECT_EQ(opposite_pairs, 2);
}

TEST(StarFan, SmoothRayInSmoothFanGivesSmoothStar) {
    for (const auto& [name, f] : cat::complete_suite()) {
        if (f.rank < 2) continue;
        for (std::size_t r = 0; r < f.num_rays(); ++r) {
            auto s = star_fan(f, r);
            EXPECT_TRUE(validate(s.fan).valid) << name;
            EXPECT_TRUE(is_smooth(s.fan)) << name << " ray " << r;
            EXPECT_TRUE(is_complete(s.fan)) << name;
        }
    }
}
