#include <gtest/gtest.h>

#include "support.hpp"
#include "topaction/error.hpp"
#include "topaction/site.hpp"

using namespace topaction;
using namespace testing_support;

namespace {

constexpr Element kStar = 0, kK = 1, kA = 2, kX = 1;

PresheafPtr constant_point(const GridSite& site) {
    return zero_object(site.category());
}

}  // namespace

TEST(Site, CoveringsLieInsideTheGrid) {
    GridSite site(3);
    const PosetCategory& p = site.grid().poset();
    for (ObjectId c = 0; c < p.size(); ++c) {
        auto [i, j] = site.grid().coords(c);
        EXPECT_EQ(site.interior(c), i < 3 && j < 3);
        EXPECT_EQ(site.coverings(c).size(), (3 - i) * (3 - j));
        for (const auto& cov : site.coverings(c)) {
            EXPECT_TRUE(p.leq(cov.west, c));
            EXPECT_TRUE(p.leq(cov.east, c));
            EXPECT_EQ(p.join(cov.west, cov.east), c);
            EXPECT_EQ(p.meet(cov.west, cov.east), cov.meet);
        }
    }
}

TEST(Site, ConstantPointIsASheaf) {
    GridSite site(2);
    EXPECT_TRUE(is_sheaf(site, *constant_point(site)));
}

TEST(Site, TShape) {
    GridSite site(3);
    PresheafPtr t = build_T(site);
    for (ObjectId c = 0; c < t->shape().num_objects(); ++c) EXPECT_EQ(t->size(c), 2u);
    // South-West (i,j) → (i,j+1) kills x, South-East (i,j) → (i+1,j) keeps it
    EXPECT_EQ(t->restrict(site.restriction(site.at(0, 1), site.at(0, 0)), kX), kStar);
    EXPECT_EQ(t->restrict(site.restriction(site.at(1, 0), site.at(0, 0)), kX), kX);
}

TEST(Site, AShape) {
    GridSite site(3);
    PresheafPtr a = build_A(site, 2);
    EXPECT_EQ(a->size(site.at(1, 0)), 1u);
    EXPECT_EQ(a->size(site.at(2, 0)), 3u);
    const ObjectId top = site.at(2, 0);
    EXPECT_EQ(a->restrict(site.restriction(site.at(2, 1), top), kA), kK);
    EXPECT_EQ(a->restrict(site.restriction(site.at(3, 0), top), kA), kA);
    // the composite of a South-West and a South-East step sends a ↦ k
    EXPECT_EQ(a->restrict(site.restriction(site.at(3, 1), top), kA), kK);
    EXPECT_EQ(a->restrict(site.restriction(site.at(3, 1), top), kK), kK);
    EXPECT_THROW(build_A(site, 4), ValidationError);
}

TEST(Site, FTable) {
    GridSite site(3);
    PresheafMorphism f = build_f(site, 1);
    EXPECT_EQ(f.component(site.at(1, 0)), (Table{kStar, kStar, kX}));
    EXPECT_EQ(f.component(site.at(0, 0)), (Table{kStar}));
}

TEST(Site, SheavesAndNormalEpisUpToFive) {
    for (std::size_t n = 1; n <= 5; ++n) {
        GridSite site(n);
        EXPECT_TRUE(is_sheaf(site, *build_T(site))) << n;
        for (std::size_t m = 0; m <= n; ++m) {
            PresheafMorphism f = build_f(site, m);
            EXPECT_TRUE(is_sheaf(site, f.source())) << n << " " << m;
            if (m < n) {
                EXPECT_TRUE(sheaf_epi(site, f)) << n << " " << m;
                EXPECT_TRUE(sheaf_normal_epi(site, f)) << n << " " << m;
            }
            // K_m is a retract through a ↦ k
            EXPECT_TRUE(find_retraction(kernel(f).inclusion()).has_value());
        }
    }
}

TEST(Site, FmIsNotAPresheafEpiForPositiveM) {
    GridSite site(3);
    EXPECT_TRUE(is_surjective(build_f(site, 0)));
    EXPECT_FALSE(is_surjective(build_f(site, 1)));
    EXPECT_TRUE(sheaf_epi(site, build_f(site, 1)));
}

TEST(Site, TrivialEpiExamples) {
    GridSite site(2);
    PresheafPtr t = build_T(site);
    EXPECT_TRUE(sheaf_epi(site, identity_morphism(t)));
    EXPECT_TRUE(sheaf_normal_epi(site, identity_morphism(t)));
    EXPECT_FALSE(sheaf_epi(site, zero_morphism(constant_point(site), t)));
}

TEST(Site, CollidingSectionsAreNotNormal) {
    // A constant {⋆,a,b} with both a and b sent to x in T: no covering separates them.
    GridSite site(2);
    PresheafPtr t = build_T(site);
    const FiniteCategory& cat = *site.category();
    std::vector<Table> tables(cat.num_morphisms());
    std::vector<Table> comps(cat.num_objects());
    for (MorphismId f = 0; f < cat.num_morphisms(); ++f) {
        auto [i, j] = site.grid().coords(cat.dom(f));
        auto [i2, j2] = site.grid().coords(cat.cod(f));
        (void)i, (void)i2;
        tables[f] = j > j2 ? Table{0, 0, 0} : Table{0, 1, 2};
    }
    for (auto& c : comps) c = {0, 1, 1};
    PresheafPtr ab = presheaf(site.category(), std::vector<std::size_t>(cat.num_objects(), 3), tables);
    PresheafMorphism f(ab, t, comps);
    EXPECT_TRUE(sheaf_epi(site, f));
    EXPECT_FALSE(sheaf_normal_epi(site, f));
}

TEST(Site, EscapeIndexEqualsFamilySize) {
    for (std::size_t n = 1; n <= 5; ++n) {
        GridSite site(n);
        for (std::size_t m = 0; m <= n; ++m) EXPECT_EQ(escape_index(site, m), m) << "n=" << n;
    }
    EXPECT_THROW(escape_index(GridSite(2), 3), ValidationError);
}

TEST(Site, WidePullbackOfSheavesIsASheaf) {
    GridSite site(3);
    std::vector<PresheafMorphism> family;
    for (std::size_t m = 0; m <= 3; ++m) family.push_back(build_f(site, m));
    WidePullback p = wide_pullback(family);
    EXPECT_TRUE(is_sheaf(site, *p.apex));
    EXPECT_EQ(oracle::wide_pullback_sizes(family), p.apex->sizes());
}

// Inside a finite truncation the east piece (n,0) of a covering of (0,0) is
// always available, so each truncated family passes; only the lift level grows.
TEST(Site, NecessaryConditionHoldsInsideEachTruncation) {
    for (std::size_t n = 1; n <= 4; ++n) {
        GridSite site(n);
        std::vector<PresheafMorphism> family;
        for (std::size_t m = 0; m <= n; ++m) {
            family.push_back(build_f(site, m));
            EXPECT_TRUE(necessary_condition_sheaf(site, family)) << n << " " << m;
        }
        EXPECT_FALSE(is_surjective(wide_pullback(family).to_base));
    }
}
