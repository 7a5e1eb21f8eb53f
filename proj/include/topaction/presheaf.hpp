#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "topaction/fincat.hpp"

namespace topaction {

/// Index of an element inside one level of a pointed presheaf. 0 is always ⋆.
using Element = std::uint32_t;
inline constexpr Element kBase = 0;

/// A function between two finite pointed sets, as a lookup table.
using Table = std::vector<Element>;

/**
 * A presheaf of finite pointed sets over a FiniteCategory.
 *
 * For a morphism f: C → D of the shape, restriction(f) is a table
 * X(D) → X(C). Element 0 of every level is the basepoint.
 */
class PointedPresheaf {
public:
    /// Validates pointedness and functoriality. Throws ValidationError.
    PointedPresheaf(CategoryPtr shape, std::vector<std::size_t> sizes, std::vector<Table> restrictions);

    const FiniteCategory& shape() const noexcept { return *shape_; }
    const CategoryPtr& shape_ptr() const noexcept { return shape_; }

    std::size_t size(ObjectId c) const { return sizes_.at(c); }
    const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
    std::size_t total_size() const;

    const Table& restriction(MorphismId f) const { return restrictions_.at(f); }
    Element restrict(MorphismId f, Element e) const { return restrictions_[f][e]; }
    const std::vector<Table>& restrictions() const noexcept { return restrictions_; }

    void validate() const;

    friend bool operator==(const PointedPresheaf& a, const PointedPresheaf& b);

private:
    CategoryPtr shape_;
    std::vector<std::size_t> sizes_;
    std::vector<Table> restrictions_;
};

using PresheafPtr = std::shared_ptr<const PointedPresheaf>;

bool same_shape(const PointedPresheaf& a, const PointedPresheaf& b);

/// Restriction tables filled with identities on identity morphisms and the
/// constant-⋆ map elsewhere; a convenient starting point for builders.
std::vector<Table> constant_restrictions(const FiniteCategory& shape, const std::vector<std::size_t>& sizes);

/// A basepoint-preserving natural transformation between two pointed presheaves.
class PresheafMorphism {
public:
    /// Validates pointedness and naturality. Throws ValidationError.
    PresheafMorphism(PresheafPtr source, PresheafPtr target, std::vector<Table> components);

    const PointedPresheaf& source() const noexcept { return *source_; }
    const PointedPresheaf& target() const noexcept { return *target_; }
    const PresheafPtr& source_ptr() const noexcept { return source_; }
    const PresheafPtr& target_ptr() const noexcept { return target_; }

    const Table& component(ObjectId c) const { return components_.at(c); }
    Element operator()(ObjectId c, Element e) const { return components_[c][e]; }
    const std::vector<Table>& components() const noexcept { return components_; }

    void validate() const;

    /// Equal endpoints and equal component tables.
    friend bool operator==(const PresheafMorphism& a, const PresheafMorphism& b);
    /// Lexicographic in the component tables; endpoints are not compared.
    friend bool operator<(const PresheafMorphism& a, const PresheafMorphism& b) {
        return a.components_ < b.components_;
    }

private:
    PresheafPtr source_;
    PresheafPtr target_;
    std::vector<Table> components_;
};

PresheafPtr zero_object(CategoryPtr shape);
PresheafMorphism zero_morphism(PresheafPtr a, PresheafPtr b);
PresheafMorphism identity_morphism(PresheafPtr a);
/// g∘f. Throws ValidationError unless f.target == g.source.
PresheafMorphism compose(const PresheafMorphism& g, const PresheafMorphism& f);

bool is_zero(const PresheafMorphism& m);
bool is_isomorphism(const PresheafMorphism& m);
bool is_surjective(const PresheafMorphism& m);
bool is_injective(const PresheafMorphism& m);

/// Inverse of an isomorphism. Throws ValidationError otherwise.
PresheafMorphism inverse(const PresheafMorphism& m);

/// Every morphism A → B, each once, sorted lexicographically by component tables.
std::vector<PresheafMorphism> hom_enumerate(const PresheafPtr& a, const PresheafPtr& b);
std::size_t hom_count(const PresheafPtr& a, const PresheafPtr& b);

/// Some isomorphism A → B, or nullopt.
std::optional<PresheafMorphism> isomorphic(const PresheafPtr& a, const PresheafPtr& b);

/// For an epimorphic `through` (surjective at every level), the unique g with
/// g∘through == f, if one exists.
std::optional<PresheafMorphism> factor_through_epi(const PresheafMorphism& f, const PresheafMorphism& through);

/// The presheaf obtained by renaming elements: level c element e becomes perm[c][e].
/// Each perm[c] must be a bijection fixing 0. Returns the relabelled presheaf and the
/// isomorphism from the original.
PresheafMorphism relabel(const PresheafPtr& a, const std::vector<Table>& perm);

/// All pointed presheaves with every level size in [1, max_level_size], one per
/// isomorphism class, in a deterministic order.
std::vector<PresheafPtr> enumerate_presheaves(const CategoryPtr& shape, std::size_t max_level_size);

/// A random presheaf with the given level sizes.
PresheafPtr random_presheaf(const CategoryPtr& shape, const std::vector<std::size_t>& sizes, std::mt19937_64& rng);

/// A random morphism A → B (uniform over nothing in particular; the first one a
/// randomized search finds). Always exists: the zero morphism is a candidate.
PresheafMorphism random_morphism(const PresheafPtr& a, const PresheafPtr& b, std::mt19937_64& rng);

}  // namespace topaction
