#include "topaction/presheaf.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "topaction/error.hpp"
#include "topaction/search.hpp"

namespace topaction {

PointedPresheaf::PointedPresheaf(CategoryPtr shape, std::vector<std::size_t> sizes, std::vector<Table> restrictions)
    : shape_(std::move(shape)), sizes_(std::move(sizes)), restrictions_(std::move(restrictions)) {
    validate();
}

std::size_t PointedPresheaf::total_size() const {
    return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0});
}

void PointedPresheaf::validate() const {
    const FiniteCategory& c = *shape_;
    if (sizes_.size() != c.num_objects()) throw ValidationError("level count does not match the shape");
    if (restrictions_.size() != c.num_morphisms()) throw ValidationError("restriction count does not match the shape");
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        if (sizes_[x] == 0) throw ValidationError("level " + std::to_string(x) + " is empty");
    for (MorphismId f = 0; f < c.num_morphisms(); ++f) {
        const Table& t = restrictions_[f];
        const std::size_t from = sizes_[c.cod(f)];
        const std::size_t to = sizes_[c.dom(f)];
        if (t.size() != from)
            throw ValidationError("restriction " + std::to_string(f) + " has the wrong domain size");
        if (t[0] != kBase) throw ValidationError("restriction " + std::to_string(f) + " does not preserve the basepoint");
        for (Element e = 0; e < from; ++e)
            if (t[e] >= to) throw ValidationError("restriction " + std::to_string(f) + " leaves its codomain");
        if (c.is_identity(f))
            for (Element e = 0; e < from; ++e)
                if (t[e] != e)
                    throw ValidationError("restriction along identity " + std::to_string(f) + " is not the identity");
    }
    for (auto [g, f, h] : c.nontrivial_composites()) {
        const Table& rg = restrictions_[g];
        const Table& rf = restrictions_[f];
        const Table& rh = restrictions_[h];
        for (Element e = 0; e < rg.size(); ++e)
            if (rh[e] != rf[rg[e]])
                throw ValidationError("functoriality fails for composite (" + std::to_string(g) + ", " +
                                      std::to_string(f) + ") at element " + std::to_string(e));
    }
}

bool operator==(const PointedPresheaf& a, const PointedPresheaf& b) {
    if (&a == &b) return true;
    return a.sizes_ == b.sizes_ && a.restrictions_ == b.restrictions_ && same_shape(a, b);
}

bool same_shape(const PointedPresheaf& a, const PointedPresheaf& b) {
    return a.shape_ptr() == b.shape_ptr() || a.shape() == b.shape();
}

std::vector<Table> constant_restrictions(const FiniteCategory& shape, const std::vector<std::size_t>& sizes) {
    std::vector<Table> out(shape.num_morphisms());
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        out[f].assign(sizes.at(shape.cod(f)), kBase);
        if (shape.is_identity(f)) std::iota(out[f].begin(), out[f].end(), Element{0});
    }
    return out;
}

PresheafMorphism::PresheafMorphism(PresheafPtr source, PresheafPtr target, std::vector<Table> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    validate();
}

void PresheafMorphism::validate() const {
    if (!same_shape(*source_, *target_)) throw ValidationError("morphism endpoints have different shapes");
    const FiniteCategory& c = source_->shape();
    if (components_.size() != c.num_objects()) throw ValidationError("component count does not match the shape");
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        const Table& t = components_[x];
        if (t.size() != source_->size(x))
            throw ValidationError("component " + std::to_string(x) + " has the wrong domain size");
        if (t[0] != kBase) throw ValidationError("component " + std::to_string(x) + " does not preserve the basepoint");
        for (Element e : t)
            if (e >= target_->size(x)) throw ValidationError("component " + std::to_string(x) + " leaves its codomain");
    }
    for (MorphismId f = 0; f < c.num_morphisms(); ++f) {
        if (c.is_identity(f)) continue;
        const ObjectId lo = c.dom(f);
        const ObjectId hi = c.cod(f);
        for (Element e = 0; e < source_->size(hi); ++e)
            if (components_[lo][source_->restrict(f, e)] != target_->restrict(f, components_[hi][e]))
                throw ValidationError("naturality fails along morphism " + std::to_string(f) + " at element " +
                                      std::to_string(e));
    }
}

bool operator==(const PresheafMorphism& a, const PresheafMorphism& b) {
    return a.components_ == b.components_ && *a.source_ == *b.source_ && *a.target_ == *b.target_;
}

PresheafPtr zero_object(CategoryPtr shape) {
    std::vector<std::size_t> sizes(shape->num_objects(), 1);
    auto tables = constant_restrictions(*shape, sizes);
    return std::make_shared<const PointedPresheaf>(std::move(shape), std::move(sizes), std::move(tables));
}

PresheafMorphism zero_morphism(PresheafPtr a, PresheafPtr b) {
    std::vector<Table> comps(a->shape().num_objects());
    for (ObjectId c = 0; c < comps.size(); ++c) comps[c].assign(a->size(c), kBase);
    return PresheafMorphism(std::move(a), std::move(b), std::move(comps));
}

PresheafMorphism identity_morphism(PresheafPtr a) {
    std::vector<Table> comps(a->shape().num_objects());
    for (ObjectId c = 0; c < comps.size(); ++c) {
        comps[c].resize(a->size(c));
        std::iota(comps[c].begin(), comps[c].end(), Element{0});
    }
    return PresheafMorphism(a, a, std::move(comps));
}

PresheafMorphism compose(const PresheafMorphism& g, const PresheafMorphism& f) {
    if (!(f.target() == g.source())) throw ValidationError("composing morphisms with mismatched endpoints");
    std::vector<Table> comps(f.components().size());
    for (ObjectId c = 0; c < comps.size(); ++c) {
        comps[c].resize(f.source().size(c));
        for (Element e = 0; e < comps[c].size(); ++e) comps[c][e] = g(c, f(c, e));
    }
    return PresheafMorphism(f.source_ptr(), g.target_ptr(), std::move(comps));
}

bool is_zero(const PresheafMorphism& m) {
    for (const Table& t : m.components())
        if (std::any_of(t.begin(), t.end(), [](Element e) { return e != kBase; })) return false;
    return true;
}

bool is_surjective(const PresheafMorphism& m) {
    for (ObjectId c = 0; c < m.components().size(); ++c) {
        std::vector<char> hit(m.target().size(c), 0);
        for (Element e : m.component(c)) hit[e] = 1;
        if (std::count(hit.begin(), hit.end(), 0) != 0) return false;
    }
    return true;
}

bool is_injective(const PresheafMorphism& m) {
    for (ObjectId c = 0; c < m.components().size(); ++c) {
        std::vector<char> hit(m.target().size(c), 0);
        for (Element e : m.component(c)) {
            if (hit[e]) return false;
            hit[e] = 1;
        }
    }
    return true;
}

bool is_isomorphism(const PresheafMorphism& m) {
    return m.source().sizes() == m.target().sizes() && is_injective(m);
}

PresheafMorphism inverse(const PresheafMorphism& m) {
    if (!is_isomorphism(m)) throw ValidationError("inverse of a non-isomorphism");
    std::vector<Table> comps(m.components().size());
    for (ObjectId c = 0; c < comps.size(); ++c) {
        comps[c].resize(m.target().size(c));
        for (Element e = 0; e < m.source().size(c); ++e) comps[c][m(c, e)] = e;
    }
    return PresheafMorphism(m.target_ptr(), m.source_ptr(), std::move(comps));
}

std::vector<PresheafMorphism> hom_enumerate(const PresheafPtr& a, const PresheafPtr& b) {
    return MorphismSearch(a, b).all();
}

std::size_t hom_count(const PresheafPtr& a, const PresheafPtr& b) {
    return MorphismSearch(a, b).count();
}

std::optional<PresheafMorphism> isomorphic(const PresheafPtr& a, const PresheafPtr& b) {
    if (!same_shape(*a, *b) || a->sizes() != b->sizes()) return std::nullopt;
    return MorphismSearch(a, b).bijective().first();
}

std::optional<PresheafMorphism> factor_through_epi(const PresheafMorphism& f, const PresheafMorphism& through) {
    if (!(f.source() == through.source())) throw ValidationError("factoring morphisms with different sources");
    if (!is_surjective(through)) throw ValidationError("factor_through_epi needs a levelwise surjection");
    const PointedPresheaf& mid = through.target();
    std::vector<Table> comps(mid.shape().num_objects());
    for (ObjectId c = 0; c < comps.size(); ++c) {
        constexpr Element unset = std::numeric_limits<Element>::max();
        comps[c].assign(mid.size(c), unset);
        for (Element e = 0; e < f.source().size(c); ++e) {
            Element& slot = comps[c][through(c, e)];
            if (slot == unset)
                slot = f(c, e);
            else if (slot != f(c, e))
                return std::nullopt;
        }
    }
    try {
        return PresheafMorphism(through.target_ptr(), f.target_ptr(), std::move(comps));
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

PresheafMorphism relabel(const PresheafPtr& a, const std::vector<Table>& perm) {
    const FiniteCategory& shape = a->shape();
    for (ObjectId c = 0; c < shape.num_objects(); ++c) {
        const Table& p = perm.at(c);
        Table sorted = p;
        std::sort(sorted.begin(), sorted.end());
        Table expect(a->size(c));
        std::iota(expect.begin(), expect.end(), Element{0});
        if (sorted != expect || p[0] != kBase) throw ValidationError("relabelling is not a pointed bijection");
    }
    std::vector<Table> tables(shape.num_morphisms());
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        const ObjectId lo = shape.dom(f);
        const ObjectId hi = shape.cod(f);
        tables[f].resize(a->size(hi));
        for (Element e = 0; e < a->size(hi); ++e) tables[f][perm[hi][e]] = perm[lo][a->restrict(f, e)];
    }
    auto b = std::make_shared<const PointedPresheaf>(a->shape_ptr(), a->sizes(), std::move(tables));
    return PresheafMorphism(a, b, perm);
}

std::vector<PresheafPtr> enumerate_presheaves(const CategoryPtr& shape, std::size_t max_level_size) {
    const std::size_t n = shape->num_objects();
    std::vector<PresheafPtr> out;
    std::vector<std::size_t> sizes(n, 1);
    while (true) {
        std::vector<PresheafPtr> classes;
        StructureSearch(shape, sizes).run([&](const std::vector<Table>& tables) {
            auto p = std::make_shared<const PointedPresheaf>(shape, sizes, tables);
            for (const auto& q : classes)
                if (isomorphic(q, p)) return true;
            classes.push_back(std::move(p));
            return true;
        });
        out.insert(out.end(), classes.begin(), classes.end());
        std::size_t i = 0;
        while (i < n && sizes[i] == max_level_size) sizes[i++] = 1;
        if (i == n) break;
        ++sizes[i];
    }
    return out;
}

PresheafPtr random_presheaf(const CategoryPtr& shape, const std::vector<std::size_t>& sizes, std::mt19937_64& rng) {
    auto found = StructureSearch(shape, sizes).shuffle(rng).first();
    // The all-⋆ restrictions are always a solution, so the search cannot come back empty.
    return *found;
}

PresheafMorphism random_morphism(const PresheafPtr& a, const PresheafPtr& b, std::mt19937_64& rng) {
    return *MorphismSearch(a, b).shuffle(rng).first();
}

}  // namespace topaction
