#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace topaction {

using ObjectId = std::size_t;
using MorphismId = std::size_t;

inline constexpr MorphismId kNoMorphism = std::numeric_limits<MorphismId>::max();

struct Arrow {
    ObjectId dom;
    ObjectId cod;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/**
 * A finite category stored as explicit tables: every morphism with its
 * endpoints, the identity of every object, and the full composition table.
 *
 * compose(g, f) is g∘f and is defined exactly when cod(f) == dom(g).
 * Values are immutable after construction.
 */
class FiniteCategory {
public:
    /// Builds and validates. `composition` is row-major [g * M + f] with
    /// kNoMorphism for non-composable pairs. Throws ValidationError.
    FiniteCategory(std::size_t num_objects, std::vector<Arrow> arrows,
                   std::vector<MorphismId> identities, std::vector<MorphismId> composition);

    std::size_t num_objects() const noexcept { return num_objects_; }
    std::size_t num_morphisms() const noexcept { return arrows_.size(); }

    const Arrow& arrow(MorphismId m) const { return arrows_.at(m); }
    ObjectId dom(MorphismId m) const { return arrows_.at(m).dom; }
    ObjectId cod(MorphismId m) const { return arrows_.at(m).cod; }
    MorphismId identity(ObjectId c) const { return identities_.at(c); }
    bool is_identity(MorphismId m) const { return identities_.at(dom(m)) == m; }

    /// g∘f, or nullopt when cod(f) != dom(g).
    std::optional<MorphismId> compose(MorphismId g, MorphismId f) const;

    /// Morphisms with the given codomain / domain, in index order.
    const std::vector<MorphismId>& into(ObjectId c) const { return into_.at(c); }
    const std::vector<MorphismId>& out_of(ObjectId c) const { return out_of_.at(c); }

    /// Non-identity morphisms m that are not a composite of two non-identity morphisms.
    std::vector<MorphismId> irreducible_morphisms() const;

    /// All (g, f, g∘f) with g, f non-identity and composable.
    std::vector<std::tuple<MorphismId, MorphismId, MorphismId>> nontrivial_composites() const;

    /// Re-runs the identity and associativity checks. Throws ValidationError.
    void validate() const;

    friend bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
        return a.num_objects_ == b.num_objects_ && a.arrows_ == b.arrows_ &&
               a.identities_ == b.identities_ && a.composition_ == b.composition_;
    }

private:
    std::size_t num_objects_;
    std::vector<Arrow> arrows_;
    std::vector<MorphismId> identities_;
    std::vector<MorphismId> composition_;
    std::vector<std::vector<MorphismId>> into_;
    std::vector<std::vector<MorphismId>> out_of_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

/// A finite partial order together with its induced thin category.
/// Element x ≤ y corresponds to the unique morphism x → y.
class PosetCategory {
public:
    /// `leq` is a row-major n×n relation table. Throws ValidationError unless
    /// it is reflexive, antisymmetric and transitive.
    PosetCategory(std::size_t size, std::vector<bool> leq);

    std::size_t size() const noexcept { return size_; }
    bool leq(ObjectId x, ObjectId y) const { return leq_[x * size_ + y]; }
    /// The morphism x → y, or nullopt when x ≰ y.
    std::optional<MorphismId> morphism(ObjectId x, ObjectId y) const;

    std::optional<ObjectId> meet(ObjectId x, ObjectId y) const;
    std::optional<ObjectId> join(ObjectId x, ObjectId y) const;
    bool is_lattice() const;

    const CategoryPtr& category() const noexcept { return category_; }

private:
    std::size_t size_;
    std::vector<bool> leq_;
    std::vector<MorphismId> morphism_of_pair_;
    CategoryPtr category_;
};

/// The truncated grid {0..n}×{0..n} with the reversed product order:
/// (i,j) ≤ (i',j') iff i ≥ i' and j ≥ j', so (0,0) is the top.
class GridPoset {
public:
    explicit GridPoset(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t side() const noexcept { return n_ + 1; }
    ObjectId at(std::size_t i, std::size_t j) const { return i * side() + j; }
    std::pair<std::size_t, std::size_t> coords(ObjectId x) const { return {x / side(), x % side()}; }

    const PosetCategory& poset() const noexcept { return poset_; }
    const CategoryPtr& category() const noexcept { return poset_.category(); }

private:
    std::size_t n_;
    PosetCategory poset_;
};

CategoryPtr build_terminal();
/// Objects 0 and 1 with a single non-identity morphism 0 → 1 (morphism index 2),
/// so a presheaf is a pointed map X(1) → X(0).
CategoryPtr build_arrow();
/// Throws ValidationError when n == 0.
GridPoset build_grid_poset(std::size_t n);

}  // namespace topaction
