#pragma once

// Builders and brute-force oracles shared by the test suites. The oracles
// deliberately avoid the library's search code: they enumerate full products
// of functions and filter.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "topaction/fincat.hpp"
#include "topaction/presheaf.hpp"

namespace testing_support {

using namespace topaction;

inline Table iota_table(std::size_t n) {
    Table t(n);
    std::iota(t.begin(), t.end(), Element{0});
    return t;
}

inline PresheafPtr pointed_set(std::size_t size) {
    return std::make_shared<const PointedPresheaf>(build_terminal(), std::vector<std::size_t>{size},
                                                   std::vector<Table>{iota_table(size)});
}

/// The arrow presheaf X_1 → X_0 with X_0 of size `lower` and restriction `f` on X_1.
inline PresheafPtr arrow_presheaf(std::size_t lower, const Table& f) {
    return std::make_shared<const PointedPresheaf>(build_arrow(), std::vector<std::size_t>{lower, f.size()},
                                                   std::vector<Table>{iota_table(lower), iota_table(f.size()), f});
}

inline PresheafPtr presheaf(const CategoryPtr& shape, std::vector<std::size_t> sizes, std::vector<Table> tables) {
    return std::make_shared<const PointedPresheaf>(shape, std::move(sizes), std::move(tables));
}

namespace oracle {

/// Every pointed function {0..from-1} → {0..to-1}, in lexicographic order.
inline std::vector<Table> pointed_maps(std::size_t from, std::size_t to) {
    std::vector<Table> out;
    Table t(from, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = from;
        while (i > 1 && t[i - 1] == to - 1) t[--i] = 0;
        if (i <= 1) break;
        ++t[i - 1];
    }
    return out;
}

/// Every pointed bijection of {0..n-1}.
inline std::vector<Table> pointed_permutations(std::size_t n) {
    std::vector<Table> out;
    Table t = iota_table(n);
    do out.push_back(t);
    while (std::next_permutation(t.begin() + 1, t.end()));
    return out;
}

inline bool natural(const PointedPresheaf& a, const PointedPresheaf& b, const std::vector<Table>& comps) {
    const FiniteCategory& shape = a.shape();
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        const ObjectId lo = shape.dom(f), hi = shape.cod(f);
        for (Element e = 0; e < a.size(hi); ++e)
            if (comps[lo][a.restrict(f, e)] != b.restrict(f, comps[hi][e])) return false;
    }
    return true;
}

template <typename Visit>
void product(const std::vector<std::vector<Table>>& choices, Visit visit) {
    std::vector<std::size_t> idx(choices.size(), 0);
    std::vector<Table> current(choices.size());
    for (const auto& c : choices)
        if (c.empty()) return;
    while (true) {
        for (std::size_t i = 0; i < choices.size(); ++i) current[i] = choices[i][idx[i]];
        visit(current);
        std::size_t i = choices.size();
        while (i > 0 && idx[i - 1] + 1 == choices[i - 1].size()) idx[--i] = 0;
        if (i == 0) return;
        ++idx[i - 1];
    }
}

/// All natural pointed families A → B, sorted.
inline std::vector<std::vector<Table>> homs(const PointedPresheaf& a, const PointedPresheaf& b) {
    std::vector<std::vector<Table>> choices;
    for (ObjectId c = 0; c < a.shape().num_objects(); ++c) choices.push_back(pointed_maps(a.size(c), b.size(c)));
    std::vector<std::vector<Table>> out;
    product(choices, [&](const std::vector<Table>& comps) {
        if (natural(a, b, comps)) out.push_back(comps);
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline bool isomorphic(const PointedPresheaf& a, const PointedPresheaf& b) {
    if (a.sizes() != b.sizes()) return false;
    std::vector<std::vector<Table>> choices;
    for (ObjectId c = 0; c < a.shape().num_objects(); ++c) choices.push_back(pointed_permutations(a.size(c)));
    bool found = false;
    product(choices, [&](const std::vector<Table>& comps) { found = found || natural(a, b, comps); });
    return found;
}

/// Surjective, and two distinct elements never share a non-basepoint image.
inline bool normal_epi(const PresheafMorphism& f) {
    for (ObjectId c = 0; c < f.components().size(); ++c) {
        std::vector<int> hits(f.target().size(c), 0);
        for (Element e : f.component(c)) ++hits[e];
        for (Element y = 0; y < hits.size(); ++y) {
            if (hits[y] == 0) return false;
            if (y != kBase && hits[y] > 1) return false;
        }
    }
    return true;
}

/// Number of m: A → B with to ∘ m == from.
inline std::size_t slice_count(const PresheafMorphism& from, const PresheafMorphism& to) {
    std::size_t count = 0;
    for (const auto& comps : homs(from.source(), to.source())) {
        bool ok = true;
        for (ObjectId c = 0; c < comps.size() && ok; ++c)
            for (Element e = 0; e < comps[c].size() && ok; ++e) ok = to(c, comps[c][e]) == from(c, e);
        count += ok;
    }
    return count;
}

/// Level sizes of the wide pullback, by counting agreeing tuples.
inline std::vector<std::size_t> wide_pullback_sizes(const std::vector<PresheafMorphism>& family) {
    const std::size_t n = family.front().components().size();
    std::vector<std::size_t> sizes(n, 0);
    for (ObjectId c = 0; c < n; ++c) {
        std::vector<Table> choices;
        for (const auto& f : family) choices.push_back(iota_table(f.source().size(c)));
        std::vector<std::size_t> idx(family.size(), 0);
        while (true) {
            Element base = family[0](c, idx[0]);
            bool agree = true;
            for (std::size_t i = 1; i < family.size(); ++i) agree = agree && family[i](c, idx[i]) == base;
            sizes[c] += agree;
            std::size_t i = family.size();
            while (i > 0 && idx[i - 1] + 1 == family[i - 1].source().size(c)) idx[--i] = 0;
            if (i == 0) break;
            ++idx[i - 1];
        }
    }
    return sizes;
}

}  // namespace oracle

namespace gen {

/// A random functorial presheaf over the terminal, arrow or 2×2 grid shape,
/// built by drawing irreducible restrictions and rejecting non-commuting squares.
inline PresheafPtr random_presheaf(const CategoryPtr& shape, std::size_t max_level, std::mt19937_64& rng) {
    const FiniteCategory& cat = *shape;
    std::uniform_int_distribution<std::size_t> size_dist(1, max_level);
    std::vector<std::size_t> sizes(cat.num_objects());
    for (auto& s : sizes) s = size_dist(rng);
    const auto irreducible = cat.irreducible_morphisms();
    const auto composites = cat.nontrivial_composites();
    while (true) {
        std::vector<Table> tables(cat.num_morphisms());
        std::vector<bool> known(cat.num_morphisms(), false);
        for (MorphismId f = 0; f < cat.num_morphisms(); ++f)
            if (cat.is_identity(f)) tables[f] = iota_table(sizes[cat.dom(f)]), known[f] = true;
        for (MorphismId f : irreducible) {
            tables[f].assign(sizes[cat.cod(f)], 0);
            std::uniform_int_distribution<Element> pick(0, static_cast<Element>(sizes[cat.dom(f)] - 1));
            for (Element e = 1; e < tables[f].size(); ++e) tables[f][e] = pick(rng);
            known[f] = true;
        }
        bool ok = true;
        for (bool changed = true; changed && ok;) {
            changed = false;
            for (const auto& [g, f, h] : composites) {
                if (!known[g] || !known[f]) continue;
                Table via(tables[g].size());
                for (Element e = 0; e < via.size(); ++e) via[e] = tables[f][tables[g][e]];
                if (!known[h]) {
                    tables[h] = via, known[h] = true, changed = true;
                } else if (tables[h] != via) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return std::make_shared<const PointedPresheaf>(shape, sizes, tables);
    }
}

inline CategoryPtr random_shape(std::mt19937_64& rng) {
    static const CategoryPtr shapes[] = {build_terminal(), build_arrow(), build_grid_poset(1).category()};
    return shapes[std::uniform_int_distribution<int>(0, 2)(rng)];
}

}  // namespace gen

}  // namespace testing_support
