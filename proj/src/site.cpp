#include "topaction/site.hpp"

#include <map>
#include <string>

#include "topaction/error.hpp"

namespace topaction {

GridSite::GridSite(std::size_t n) : grid_(build_grid_poset(n)), coverings_(grid_.side() * grid_.side()) {
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i2 = i + 1; i2 <= n; ++i2)
                for (std::size_t j2 = j + 1; j2 <= n; ++j2)
                    coverings_[at(i, j)].push_back({at(i, j), at(i, j2), at(i2, j), at(i2, j2)});
}

MorphismId GridSite::restriction(ObjectId lower, ObjectId upper) const {
    auto m = grid_.poset().morphism(lower, upper);
    if (!m) throw ValidationError("no restriction between incomparable grid levels");
    return *m;
}

bool is_sheaf(const GridSite& site, const PointedPresheaf& f) {
    if (!(f.shape() == *site.category())) throw ValidationError("presheaf is not over this grid");
    for (ObjectId c = 0; c < f.shape().num_objects(); ++c) {
        for (const ElementaryCovering& cov : site.coverings(c)) {
            const MorphismId to_west = site.restriction(cov.west, c);
            const MorphismId to_east = site.restriction(cov.east, c);
            const MorphismId west_to_meet = site.restriction(cov.meet, cov.west);
            const MorphismId east_to_meet = site.restriction(cov.meet, cov.east);

            // Compatible pairs, counted through their common restriction to the meet.
            std::vector<std::size_t> west_over(f.size(cov.meet), 0), east_over(f.size(cov.meet), 0);
            for (Element a = 0; a < f.size(cov.west); ++a) ++west_over[f.restrict(west_to_meet, a)];
            for (Element b = 0; b < f.size(cov.east); ++b) ++east_over[f.restrict(east_to_meet, b)];
            std::size_t compatible = 0;
            for (Element m = 0; m < f.size(cov.meet); ++m) compatible += west_over[m] * east_over[m];

            // Gluing exists and is unique iff s ↦ (s|west, s|east) hits each compatible pair once.
            if (f.size(c) != compatible) return false;
            std::map<std::pair<Element, Element>, int> seen;
            for (Element s = 0; s < f.size(c); ++s)
                if (++seen[{f.restrict(to_west, s), f.restrict(to_east, s)}] > 1) return false;
        }
    }
    return true;
}

PresheafPtr build_T(const GridSite& site) {
    const FiniteCategory& shape = *site.category();
    std::vector<std::size_t> sizes(shape.num_objects(), 2);
    std::vector<Table> tables(shape.num_morphisms());
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        auto [i_lo, j_lo] = site.grid().coords(shape.dom(f));
        auto [i_hi, j_hi] = site.grid().coords(shape.cod(f));
        (void)i_lo;
        (void)i_hi;
        tables[f] = j_lo > j_hi ? Table{0, 0} : Table{0, 1};
    }
    return std::make_shared<const PointedPresheaf>(site.category(), std::move(sizes), std::move(tables));
}

PresheafPtr build_A(const GridSite& site, std::size_t m) {
    if (m > site.n()) throw ValidationError("A_m needs m ≤ n");
    const FiniteCategory& shape = *site.category();
    std::vector<std::size_t> sizes(shape.num_objects());
    for (ObjectId c = 0; c < sizes.size(); ++c) sizes[c] = site.grid().coords(c).first < m ? 1 : 3;
    std::vector<Table> tables(shape.num_morphisms());
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        auto [i_lo, j_lo] = site.grid().coords(shape.dom(f));
        auto [i_hi, j_hi] = site.grid().coords(shape.cod(f));
        (void)i_lo;
        if (i_hi < m)
            tables[f] = {0};
        else if (j_lo > j_hi)
            tables[f] = {0, 1, 1};  // a South-West step is involved: a ↦ k
        else
            tables[f] = {0, 1, 2};
    }
    return std::make_shared<const PointedPresheaf>(site.category(), std::move(sizes), std::move(tables));
}

PresheafMorphism build_f(const GridSite& site, std::size_t m) {
    PresheafPtr a = build_A(site, m);
    std::vector<Table> comps(a->shape().num_objects());
    for (ObjectId c = 0; c < comps.size(); ++c) comps[c] = a->size(c) == 1 ? Table{0} : Table{0, 0, 1};
    return PresheafMorphism(a, build_T(site), std::move(comps));
}

namespace {

std::vector<std::vector<bool>> image_flags(const PresheafMorphism& f) {
    std::vector<std::vector<bool>> hit(f.components().size());
    for (ObjectId c = 0; c < hit.size(); ++c) {
        hit[c].assign(f.target().size(c), false);
        for (Element e : f.component(c)) hit[c][e] = true;
    }
    return hit;
}

}  // namespace

bool sheaf_epi(const GridSite& site, const PresheafMorphism& f) {
    const PointedPresheaf& target = f.target();
    if (!(target.shape() == *site.category())) throw ValidationError("morphism is not over this grid");
    const auto hit = image_flags(f);
    for (ObjectId c = 0; c < target.shape().num_objects(); ++c) {
        if (!site.interior(c)) continue;
        for (Element y = 0; y < target.size(c); ++y) {
            if (hit[c][y]) continue;
            bool lifted = false;
            for (const ElementaryCovering& cov : site.coverings(c)) {
                Element west = target.restrict(site.restriction(cov.west, c), y);
                Element east = target.restrict(site.restriction(cov.east, c), y);
                if (hit[cov.west][west] && hit[cov.east][east]) {
                    lifted = true;
                    break;
                }
            }
            if (!lifted) return false;
        }
    }
    return true;
}

bool sheaf_normal_epi(const GridSite& site, const PresheafMorphism& f) {
    if (!sheaf_epi(site, f)) return false;
    const PointedPresheaf& source = f.source();
    for (ObjectId c = 0; c < source.shape().num_objects(); ++c) {
        if (!site.interior(c)) continue;
        for (Element u = 0; u < source.size(c); ++u) {
            for (Element v = u + 1; v < source.size(c); ++v) {
                if (f(c, u) != f(c, v) || f(c, u) == kBase) continue;
                auto in_kernel = [&](ObjectId level, Element a, Element b) {
                    return f(level, a) == kBase && f(level, b) == kBase;
                };
                bool separated = false;
                for (const ElementaryCovering& cov : site.coverings(c)) {
                    const MorphismId to_west = site.restriction(cov.west, c);
                    const MorphismId to_east = site.restriction(cov.east, c);
                    Element uw = source.restrict(to_west, u), vw = source.restrict(to_west, v);
                    Element ue = source.restrict(to_east, u), ve = source.restrict(to_east, v);
                    if ((in_kernel(cov.west, uw, vw) && ue == ve) || (in_kernel(cov.east, ue, ve) && uw == vw)) {
                        separated = true;
                        break;
                    }
                }
                if (!separated) return false;
            }
        }
    }
    return true;
}

std::optional<std::size_t> escape_index(const GridSite& site, std::size_t max_index) {
    if (max_index > site.n()) throw ValidationError("escape_index needs M ≤ n");
    std::vector<PresheafMorphism> family;
    for (std::size_t m = 0; m <= max_index; ++m) family.push_back(build_f(site, m));
    WidePullback pullback = wide_pullback(family);
    const PointedPresheaf& t = family.front().target();
    const ObjectId top = site.at(0, 0);
    constexpr Element x = 1;
    for (std::size_t i = 0; i <= site.n(); ++i) {
        const ObjectId level = site.at(i, 0);
        const Element want = t.restrict(site.restriction(level, top), x);
        for (Element tuple = 0; tuple < pullback.apex->size(level); ++tuple)
            if (pullback.to_base(level, tuple) == want) return i;
    }
    return std::nullopt;
}

bool necessary_condition_sheaf(const GridSite& site, const std::vector<PresheafMorphism>& family) {
    if (family.empty()) throw ValidationError("necessary_condition_sheaf needs a non-empty family");
    for (const PresheafMorphism& member : family) {
        if (!sheaf_normal_epi(site, member)) throw ValidationError("family member is not a normal sheaf epimorphism");
        if (!find_retraction(kernel(member).inclusion()))
            throw ValidationError("family member's kernel is not a retract");
    }
    return sheaf_epi(site, wide_pullback(family).to_base);
}

}  // namespace topaction
