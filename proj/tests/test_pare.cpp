#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "topaction/error.hpp"
#include "topaction/pare.hpp"

using namespace topaction;
using namespace testing_support;

namespace {

std::size_t bell(std::size_t n) {
    // Bell triangle
    std::vector<std::size_t> row{1};
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<std::size_t> next{row.back()};
        for (std::size_t x : row) next.push_back(next.back() + x);
        row = next;
    }
    return row.back();
}

}  // namespace

TEST(Pare, SmallestInstance) {
    SeparationInstance s = build_separation(2);
    ASSERT_EQ(s.witnesses.size(), 1u);
    EXPECT_EQ(s.witnesses[0].n, 1u);
    EXPECT_EQ(s.witnesses[0].m, 2u);
    EXPECT_EQ(s.witnesses[0].map.target().size(0), 3u);
    // [X_2] is the identity arrow on {⋆,1,2}
    const PointedPresheaf& cover = *s.cover.domain_ptr();
    EXPECT_EQ(cover.sizes(), (std::vector<std::size_t>{3, 3}));
    EXPECT_EQ(cover.restriction(2), (Table{0, 1, 2}));
    EXPECT_THROW(build_separation(1), ValidationError);
}

TEST(Pare, WitnessTables) {
    SeparationInstance s = build_separation(4);
    EXPECT_EQ(s.witnesses.size(), 6u);
    for (const auto& w : s.witnesses) {
        EXPECT_NO_THROW(w.map.validate());
        EXPECT_EQ(w.map.component(1), iota_table(5));
        for (Element e = 0; e < 5; ++e)
            EXPECT_EQ(w.map(0, e), e == w.n ? 1u : e == w.m ? 2u : 0u);
    }
}

TEST(Pare, MinimalSeparatorIsKPlusOne) {
    for (std::size_t k = 2; k <= 6; ++k) EXPECT_EQ(min_separator_size(k), k + 1);
}

TEST(Pare, EverySeparatingQuotientIsInjectiveBelow) {
    for (std::size_t k = 2; k <= 5; ++k) {
        SeparationInstance s = build_separation(k);
        auto found = separating_quotients(s);
        ASSERT_FALSE(found.empty());
        for (const auto& c : found) {
            std::vector<Element> sorted = c.blocks;
            std::sort(sorted.begin(), sorted.end());
            EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
        }
    }
}

// Count partitions by brute force over all block assignments and compare with
// the quotient search: a merged partition never separates, the discrete one does.
TEST(Pare, SearchVisitsEveryPartitionOnce) {
    for (std::size_t k = 2; k <= 4; ++k) {
        SeparationInstance s = build_separation(k);
        std::size_t visited = 0;
        std::vector<Element> blocks(k + 1, 0);
        // restricted growth strings, enumerated independently of the library
        std::function<void(std::size_t, Element)> rec = [&](std::size_t i, Element top) {
            if (i == blocks.size()) {
                ++visited;
                SeparatorCandidate c = separator_candidate(s, blocks);
                EXPECT_EQ(separates(s, c.gamma), c.lower_size == k + 1);
                return;
            }
            for (Element b = 0; b <= top + 1; ++b) {
                blocks[i] = b;
                rec(i + 1, std::max(top, b));
            }
        };
        rec(1, 0);
        EXPECT_EQ(visited, bell(k + 1));
    }
}
