#include "topaction/fincat.hpp"

#include <string>

#include "topaction/error.hpp"

namespace topaction {

FiniteCategory::FiniteCategory(std::size_t num_objects, std::vector<Arrow> arrows,
                               std::vector<MorphismId> identities,
                               std::vector<MorphismId> composition)
    : num_objects_(num_objects),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      composition_(std::move(composition)),
      into_(num_objects),
      out_of_(num_objects) {
    const std::size_t m = arrows_.size();
    if (identities_.size() != num_objects_)
        throw ValidationError("identity table has wrong size");
    if (composition_.size() != m * m)
        throw ValidationError("composition table has wrong size");
    for (MorphismId f = 0; f < m; ++f) {
        if (arrows_[f].dom >= num_objects_ || arrows_[f].cod >= num_objects_)
            throw ValidationError("morphism " + std::to_string(f) + " has an endpoint out of range");
        into_[arrows_[f].cod].push_back(f);
        out_of_[arrows_[f].dom].push_back(f);
    }
    validate();
}

std::optional<MorphismId> FiniteCategory::compose(MorphismId g, MorphismId f) const {
    MorphismId h = composition_.at(g * arrows_.size() + f);
    if (h == kNoMorphism) return std::nullopt;
    return h;
}

void FiniteCategory::validate() const {
    const std::size_t m = arrows_.size();
    for (ObjectId c = 0; c < num_objects_; ++c) {
        MorphismId id = identities_[c];
        if (id >= m || arrows_[id].dom != c || arrows_[id].cod != c)
            throw ValidationError("identity of object " + std::to_string(c) + " is not an endomorphism of it");
    }
    for (MorphismId g = 0; g < m; ++g) {
        for (MorphismId f = 0; f < m; ++f) {
            MorphismId h = composition_[g * m + f];
            bool composable = arrows_[f].cod == arrows_[g].dom;
            if (!composable) {
                if (h != kNoMorphism)
                    throw ValidationError("composition defined for non-composable pair (" +
                                          std::to_string(g) + ", " + std::to_string(f) + ")");
                continue;
            }
            if (h == kNoMorphism)
                throw ValidationError("composition not total: missing " + std::to_string(g) + "∘" +
                                      std::to_string(f));
            if (h >= m || arrows_[h].dom != arrows_[f].dom || arrows_[h].cod != arrows_[g].cod)
                throw ValidationError("composite " + std::to_string(g) + "∘" + std::to_string(f) +
                                      " has wrong endpoints");
        }
    }
    for (MorphismId f = 0; f < m; ++f) {
        if (composition_[identities_[arrows_[f].cod] * m + f] != f ||
            composition_[f * m + identities_[arrows_[f].dom]] != f)
            throw ValidationError("identity law fails for morphism " + std::to_string(f));
    }
    for (MorphismId h = 0; h < m; ++h) {
        for (MorphismId g = 0; g < m; ++g) {
            if (arrows_[g].cod != arrows_[h].dom) continue;
            MorphismId hg = composition_[h * m + g];
            for (MorphismId f = 0; f < m; ++f) {
                if (arrows_[f].cod != arrows_[g].dom) continue;
                if (composition_[h * m + composition_[g * m + f]] != composition_[hg * m + f])
                    throw ValidationError("associativity fails for (" + std::to_string(h) + ", " +
                                          std::to_string(g) + ", " + std::to_string(f) + ")");
            }
        }
    }
}

std::vector<MorphismId> FiniteCategory::irreducible_morphisms() const {
    const std::size_t m = arrows_.size();
    std::vector<bool> reducible(m, false);
    for (auto [g, f, h] : nontrivial_composites()) {
        (void)g;
        (void)f;
        reducible[h] = true;
    }
    std::vector<MorphismId> out;
    for (MorphismId f = 0; f < m; ++f)
        if (!is_identity(f) && !reducible[f]) out.push_back(f);
    return out;
}

std::vector<std::tuple<MorphismId, MorphismId, MorphismId>> FiniteCategory::nontrivial_composites() const {
    const std::size_t m = arrows_.size();
    std::vector<std::tuple<MorphismId, MorphismId, MorphismId>> out;
    for (MorphismId g = 0; g < m; ++g) {
        if (is_identity(g)) continue;
        for (MorphismId f : into_[arrows_[g].dom]) {
            if (is_identity(f)) continue;
            out.emplace_back(g, f, composition_[g * m + f]);
        }
    }
    return out;
}

PosetCategory::PosetCategory(std::size_t size, std::vector<bool> relation)
    : size_(size), leq_(std::move(relation)), morphism_of_pair_(size * size, kNoMorphism) {
    if (leq_.size() != size_ * size_) throw ValidationError("order table has wrong size");
    for (ObjectId x = 0; x < size_; ++x) {
        if (!leq(x, x)) throw ValidationError("order is not reflexive");
        for (ObjectId y = 0; y < size_; ++y) {
            if (x != y && leq(x, y) && leq(y, x)) throw ValidationError("order is not antisymmetric");
            for (ObjectId z = 0; z < size_; ++z)
                if (leq(x, y) && leq(y, z) && !leq(x, z)) throw ValidationError("order is not transitive");
        }
    }

    // Identities first so that morphism c is id_c.
    std::vector<Arrow> arrows;
    std::vector<MorphismId> identities(size_);
    for (ObjectId x = 0; x < size_; ++x) {
        identities[x] = arrows.size();
        morphism_of_pair_[x * size_ + x] = arrows.size();
        arrows.push_back({x, x});
    }
    for (ObjectId x = 0; x < size_; ++x)
        for (ObjectId y = 0; y < size_; ++y)
            if (x != y && leq(x, y)) {
                morphism_of_pair_[x * size_ + y] = arrows.size();
                arrows.push_back({x, y});
            }
    const std::size_t m = arrows.size();
    std::vector<MorphismId> composition(m * m, kNoMorphism);
    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f)
            if (arrows[f].cod == arrows[g].dom)
                composition[g * m + f] = morphism_of_pair_[arrows[f].dom * size_ + arrows[g].cod];
    category_ = std::make_shared<const FiniteCategory>(size_, std::move(arrows), std::move(identities),
                                                       std::move(composition));
}

std::optional<MorphismId> PosetCategory::morphism(ObjectId x, ObjectId y) const {
    MorphismId m = morphism_of_pair_.at(x * size_ + y);
    if (m == kNoMorphism) return std::nullopt;
    return m;
}

std::optional<ObjectId> PosetCategory::meet(ObjectId x, ObjectId y) const {
    std::optional<ObjectId> best;
    for (ObjectId z = 0; z < size_; ++z) {
        if (!leq(z, x) || !leq(z, y)) continue;
        if (!best || leq(*best, z)) best = z;
    }
    if (!best) return std::nullopt;
    for (ObjectId z = 0; z < size_; ++z)
        if (leq(z, x) && leq(z, y) && !leq(z, *best)) return std::nullopt;
    return best;
}

std::optional<ObjectId> PosetCategory::join(ObjectId x, ObjectId y) const {
    std::optional<ObjectId> best;
    for (ObjectId z = 0; z < size_; ++z) {
        if (!leq(x, z) || !leq(y, z)) continue;
        if (!best || leq(z, *best)) best = z;
    }
    if (!best) return std::nullopt;
    for (ObjectId z = 0; z < size_; ++z)
        if (leq(x, z) && leq(y, z) && !leq(*best, z)) return std::nullopt;
    return best;
}

bool PosetCategory::is_lattice() const {
    for (ObjectId x = 0; x < size_; ++x)
        for (ObjectId y = 0; y < size_; ++y)
            if (!meet(x, y) || !join(x, y)) return false;
    return true;
}

namespace {

PosetCategory grid_order(std::size_t n) {
    const std::size_t side = n + 1;
    const std::size_t size = side * side;
    std::vector<bool> leq(size * size, false);
    for (ObjectId x = 0; x < size; ++x)
        for (ObjectId y = 0; y < size; ++y)
            leq[x * size + y] = x / side >= y / side && x % side >= y % side;
    return PosetCategory(size, std::move(leq));
}

}  // namespace

GridPoset::GridPoset(std::size_t n) : n_(n), poset_(grid_order(n)) {}

CategoryPtr build_terminal() {
    return std::make_shared<const FiniteCategory>(1, std::vector<Arrow>{{0, 0}}, std::vector<MorphismId>{0},
                                                  std::vector<MorphismId>{0});
}

CategoryPtr build_arrow() {
    constexpr MorphismId X = kNoMorphism;
    // Morphisms: 0 = id_0, 1 = id_1, 2 = f: 0 → 1.
    std::vector<MorphismId> composition = {
        // f = 0: id_0   id_1  f
        0, X, X,  // g = id_0
        X, 1, 2,  // g = id_1
        2, X, X,  // g = f
    };
    return std::make_shared<const FiniteCategory>(2, std::vector<Arrow>{{0, 0}, {1, 1}, {0, 1}},
                                                  std::vector<MorphismId>{0, 1}, std::move(composition));
}

GridPoset build_grid_poset(std::size_t n) {
    if (n == 0) throw ValidationError("grid size must be at least 1");
    return GridPoset(n);
}

}  // namespace topaction
