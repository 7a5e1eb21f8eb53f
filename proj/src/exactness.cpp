#include "topaction/exactness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "topaction/error.hpp"
#include "topaction/search.hpp"

namespace topaction {

SubPresheaf::SubPresheaf(PresheafPtr ambient, std::vector<std::vector<bool>> member)
    : ambient_(std::move(ambient)), member_(std::move(member)) {
    const FiniteCategory& shape = ambient_->shape();
    if (member_.size() != shape.num_objects()) throw ValidationError("membership has wrong level count");
    for (ObjectId c = 0; c < shape.num_objects(); ++c) {
        if (member_[c].size() != ambient_->size(c)) throw ValidationError("membership has wrong level size");
        if (!member_[c][kBase]) throw ValidationError("sub-presheaf misses the basepoint at level " + std::to_string(c));
    }
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        const ObjectId hi = shape.cod(f);
        for (Element e = 0; e < ambient_->size(hi); ++e)
            if (member_[hi][e] && !member_[shape.dom(f)][ambient_->restrict(f, e)])
                throw ValidationError("sub-presheaf is not closed under restriction " + std::to_string(f));
    }
}

std::size_t SubPresheaf::size(ObjectId c) const {
    return static_cast<std::size_t>(std::count(member_.at(c).begin(), member_.at(c).end(), true));
}

bool SubPresheaf::is_everything() const {
    return std::all_of(member_.begin(), member_.end(),
                       [](const auto& level) { return std::all_of(level.begin(), level.end(), [](bool b) { return b; }); });
}

PresheafMorphism SubPresheaf::inclusion() const {
    const FiniteCategory& shape = ambient_->shape();
    const std::size_t n = shape.num_objects();
    std::vector<Table> members(n);
    std::vector<Table> position(n);
    std::vector<std::size_t> sizes(n);
    for (ObjectId c = 0; c < n; ++c) {
        position[c].assign(ambient_->size(c), 0);
        for (Element e = 0; e < ambient_->size(c); ++e)
            if (member_[c][e]) {
                position[c][e] = static_cast<Element>(members[c].size());
                members[c].push_back(e);
            }
        sizes[c] = members[c].size();
    }
    std::vector<Table> tables(shape.num_morphisms());
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        const ObjectId hi = shape.cod(f);
        tables[f].resize(sizes[hi]);
        for (Element i = 0; i < sizes[hi]; ++i)
            tables[f][i] = position[shape.dom(f)][ambient_->restrict(f, members[hi][i])];
    }
    auto sub = std::make_shared<const PointedPresheaf>(ambient_->shape_ptr(), std::move(sizes), std::move(tables));
    return PresheafMorphism(sub, ambient_, std::move(members));
}

SubPresheaf generated_subpresheaf(const PresheafPtr& ambient, std::vector<std::vector<bool>> generators) {
    const FiniteCategory& shape = ambient->shape();
    std::vector<std::pair<ObjectId, Element>> work;
    for (ObjectId c = 0; c < shape.num_objects(); ++c) {
        generators.at(c).at(kBase) = true;
        for (Element e = 0; e < ambient->size(c); ++e)
            if (generators[c][e]) work.emplace_back(c, e);
    }
    while (!work.empty()) {
        auto [c, e] = work.back();
        work.pop_back();
        for (MorphismId f : shape.into(c)) {
            ObjectId d = shape.dom(f);
            Element r = ambient->restrict(f, e);
            if (!generators[d][r]) {
                generators[d][r] = true;
                work.emplace_back(d, r);
            }
        }
    }
    return SubPresheaf(ambient, std::move(generators));
}

SubPresheaf image(const PresheafMorphism& f) {
    const std::size_t n = f.components().size();
    std::vector<std::vector<bool>> member(n);
    for (ObjectId c = 0; c < n; ++c) {
        member[c].assign(f.target().size(c), false);
        for (Element e : f.component(c)) member[c][e] = true;
    }
    return SubPresheaf(f.target_ptr(), std::move(member));
}

SubPresheaf kernel(const PresheafMorphism& f) {
    const std::size_t n = f.components().size();
    std::vector<std::vector<bool>> member(n);
    for (ObjectId c = 0; c < n; ++c) {
        member[c].resize(f.source().size(c));
        for (Element e = 0; e < member[c].size(); ++e) member[c][e] = f(c, e) == kBase;
    }
    return SubPresheaf(f.source_ptr(), std::move(member));
}

PresheafMorphism quotient(const SubPresheaf& sub) {
    const PointedPresheaf& a = sub.ambient();
    const FiniteCategory& shape = a.shape();
    const std::size_t n = shape.num_objects();
    std::vector<Table> comps(n);
    std::vector<std::size_t> sizes(n);
    for (ObjectId c = 0; c < n; ++c) {
        comps[c].resize(a.size(c));
        Element next = 1;
        for (Element e = 0; e < a.size(c); ++e) comps[c][e] = sub.contains(c, e) ? kBase : next++;
        sizes[c] = next;
    }
    std::vector<Table> tables(shape.num_morphisms());
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        const ObjectId hi = shape.cod(f);
        const ObjectId lo = shape.dom(f);
        tables[f].assign(sizes[hi], kBase);
        for (Element e = 0; e < a.size(hi); ++e) tables[f][comps[hi][e]] = comps[lo][a.restrict(f, e)];
    }
    auto q = std::make_shared<const PointedPresheaf>(a.shape_ptr(), std::move(sizes), std::move(tables));
    return PresheafMorphism(sub.ambient_ptr(), q, std::move(comps));
}

PresheafMorphism cokernel(const PresheafMorphism& f) {
    return quotient(image(f));
}

std::optional<NormalEpiWitness> is_normal_epi(const PresheafMorphism& f) {
    if (!is_surjective(f)) return std::nullopt;
    for (ObjectId c = 0; c < f.components().size(); ++c) {
        std::vector<char> hit(f.target().size(c), 0);
        for (Element e : f.component(c)) {
            if (e == kBase) continue;
            if (hit[e]) return std::nullopt;
            hit[e] = 1;
        }
    }
    return NormalEpiWitness{f, kernel(f)};
}

bool is_normal_epi_by_cokernel(const PresheafMorphism& f) {
    const PresheafMorphism q = cokernel(kernel(f).inclusion());
    return MorphismSearch(q.target_ptr(), f.target_ptr()).under(q, f).bijective().first().has_value();
}

PresheafMorphism equalizer(const PresheafMorphism& u, const PresheafMorphism& v) {
    if (!(u.source() == v.source()) || !(u.target() == v.target()))
        throw ValidationError("equalizer of non-parallel morphisms");
    const std::size_t n = u.components().size();
    std::vector<std::vector<bool>> member(n);
    for (ObjectId c = 0; c < n; ++c) {
        member[c].resize(u.source().size(c));
        for (Element e = 0; e < member[c].size(); ++e) member[c][e] = u(c, e) == v(c, e);
    }
    return SubPresheaf(u.source_ptr(), std::move(member)).inclusion();
}

WidePullback wide_pullback(std::span<const PresheafMorphism> family) {
    if (family.empty()) throw ValidationError("wide pullback of an empty family");
    const PresheafPtr& base = family.front().target_ptr();
    for (const auto& f : family)
        if (!(f.target() == *base)) throw ValidationError("wide pullback family has different targets");
    const FiniteCategory& shape = base->shape();
    const std::size_t n = shape.num_objects();
    const std::size_t width = family.size();

    std::vector<std::vector<std::vector<Element>>> tuples(n);
    std::vector<std::map<std::vector<Element>, Element>> index(n);
    std::vector<std::size_t> sizes(n);
    for (ObjectId c = 0; c < n; ++c) {
        // fibers[i][x]: elements of the i-th source over x, ascending.
        std::vector<std::vector<Table>> fibers(width, std::vector<Table>(base->size(c)));
        for (std::size_t i = 0; i < width; ++i)
            for (Element e = 0; e < family[i].source().size(c); ++e) fibers[i][family[i](c, e)].push_back(e);
        std::vector<Element> current(width);
        auto extend = [&](auto&& self, std::size_t i, Element x) -> void {
            if (i == width) {
                index[c].emplace(current, static_cast<Element>(tuples[c].size()));
                tuples[c].push_back(current);
                return;
            }
            for (Element e : fibers[i][x]) {
                current[i] = e;
                self(self, i + 1, x);
            }
        };
        for (Element e = 0; e < family[0].source().size(c); ++e) {
            current[0] = e;
            extend(extend, 1, family[0](c, e));
        }
        sizes[c] = tuples[c].size();
    }

    std::vector<Table> tables(shape.num_morphisms());
    std::vector<Element> scratch(width);
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        const ObjectId hi = shape.cod(f);
        const ObjectId lo = shape.dom(f);
        tables[f].resize(sizes[hi]);
        for (Element t = 0; t < sizes[hi]; ++t) {
            for (std::size_t i = 0; i < width; ++i) scratch[i] = family[i].source().restrict(f, tuples[hi][t][i]);
            tables[f][t] = index[lo].at(scratch);
        }
    }
    auto apex = std::make_shared<const PointedPresheaf>(base->shape_ptr(), sizes, std::move(tables));

    std::vector<PresheafMorphism> projections;
    for (std::size_t i = 0; i < width; ++i) {
        std::vector<Table> comps(n);
        for (ObjectId c = 0; c < n; ++c)
            for (const auto& t : tuples[c]) comps[c].push_back(t[i]);
        projections.emplace_back(apex, family[i].source_ptr(), std::move(comps));
    }
    PresheafMorphism to_base = compose(family[0], projections[0]);
    return WidePullback{apex, std::move(projections), std::move(to_base), std::move(tuples)};
}

namespace {

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a < b) std::swap(a, b);
        parent[a] = b;  // the smaller index stays the root
    }
    std::vector<std::size_t> parent;
};

}  // namespace

Cocone pushout(const PresheafMorphism& k, const PresheafMorphism& s) {
    if (!(k.source() == s.source())) throw ValidationError("pushout legs have different sources");
    const PointedPresheaf& a = k.target();
    const PointedPresheaf& b = s.target();
    const FiniteCategory& shape = a.shape();
    const std::size_t n = shape.num_objects();

    std::vector<Table> class_of(n);  // combined index -> class
    std::vector<std::vector<std::pair<int, Element>>> reps(n);
    std::vector<std::size_t> sizes(n);
    for (ObjectId c = 0; c < n; ++c) {
        const std::size_t na = a.size(c);
        UnionFind uf(na + b.size(c));
        uf.unite(0, na);
        for (Element z = 0; z < k.source().size(c); ++z) uf.unite(k(c, z), na + s(c, z));
        class_of[c].assign(na + b.size(c), 0);
        std::vector<Element> class_of_root(na + b.size(c), std::numeric_limits<Element>::max());
        for (std::size_t x = 0; x < na + b.size(c); ++x) {
            std::size_t root = uf.find(x);
            if (class_of_root[root] == std::numeric_limits<Element>::max()) {
                class_of_root[root] = static_cast<Element>(reps[c].size());
                reps[c].emplace_back(x < na ? 0 : 1, static_cast<Element>(x < na ? x : x - na));
            }
            class_of[c][x] = class_of_root[root];
        }
        sizes[c] = reps[c].size();
    }

    std::vector<Table> tables(shape.num_morphisms());
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        const ObjectId hi = shape.cod(f);
        const ObjectId lo = shape.dom(f);
        tables[f].resize(sizes[hi]);
        for (Element q = 0; q < sizes[hi]; ++q) {
            auto [side, e] = reps[hi][q];
            tables[f][q] = side == 0 ? class_of[lo][a.restrict(f, e)] : class_of[lo][a.size(lo) + b.restrict(f, e)];
        }
    }
    auto apex = std::make_shared<const PointedPresheaf>(a.shape_ptr(), sizes, std::move(tables));

    std::vector<Table> left(n), right(n);
    for (ObjectId c = 0; c < n; ++c) {
        left[c].assign(class_of[c].begin(), class_of[c].begin() + static_cast<std::ptrdiff_t>(a.size(c)));
        right[c].assign(class_of[c].begin() + static_cast<std::ptrdiff_t>(a.size(c)), class_of[c].end());
    }
    return Cocone{apex, PresheafMorphism(k.target_ptr(), apex, std::move(left)),
                  PresheafMorphism(s.target_ptr(), apex, std::move(right)), std::move(reps)};
}

PresheafMorphism Cocone::induced(const PresheafMorphism& left, const PresheafMorphism& right) const {
    if (!(left.source() == in_left.source()) || !(right.source() == in_right.source()) ||
        !(left.target() == right.target()))
        throw ValidationError("induced map: cocone legs do not match");
    const std::size_t n = representative.size();
    std::vector<Table> comps(n);
    for (ObjectId c = 0; c < n; ++c) {
        comps[c].resize(representative[c].size());
        for (Element q = 0; q < comps[c].size(); ++q) {
            auto [side, e] = representative[c][q];
            comps[c][q] = side == 0 ? left(c, e) : right(c, e);
        }
        for (Element e = 0; e < left.source().size(c); ++e)
            if (comps[c][in_left(c, e)] != left(c, e))
                throw ValidationError("induced map: legs disagree on the glued part");
        for (Element e = 0; e < right.source().size(c); ++e)
            if (comps[c][in_right(c, e)] != right(c, e))
                throw ValidationError("induced map: legs disagree on the glued part");
    }
    return PresheafMorphism(apex, left.target_ptr(), std::move(comps));
}

Cocone coproduct(const PresheafPtr& a, const PresheafPtr& b) {
    PresheafPtr zero = zero_object(a->shape_ptr());
    return pushout(zero_morphism(zero, a), zero_morphism(zero, b));
}

std::optional<PresheafMorphism> find_retraction(const PresheafMorphism& mono) {
    if (!is_injective(mono)) throw ValidationError("find_retraction needs a monomorphism");
    return MorphismSearch(mono.target_ptr(), mono.source_ptr()).under(mono, identity_morphism(mono.source_ptr())).first();
}

}  // namespace topaction
