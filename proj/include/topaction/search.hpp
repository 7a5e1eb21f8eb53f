#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "topaction/presheaf.hpp"

namespace topaction {

/**
 * Backtracking search over the morphisms A → B of pointed presheaves.
 *
 * Variables are the images of non-basepoint elements, level by level.
 * Assigning m_D(a) = b forces m_C(A.restrict(f, a)) = B.restrict(f, b) for
 * every f: C → D, so naturality is propagated rather than filtered.
 * Extra per-element constraints (pins, allowed sets, slice conditions,
 * injectivity) narrow the candidate lists before the search starts.
 */
class MorphismSearch {
public:
    using Visitor = std::function<bool(const std::vector<Table>&)>;

    MorphismSearch(PresheafPtr source, PresheafPtr target);

    /// Require m_c(from) == to.
    MorphismSearch& pin(ObjectId c, Element from, Element to);
    /// Require m_c(from) ∈ values.
    MorphismSearch& allow(ObjectId c, Element from, const std::vector<Element>& values);
    /// Slice condition: target_map ∘ m == source_map.
    MorphismSearch& over(const PresheafMorphism& source_map, const PresheafMorphism& target_map);
    /// Slice condition under: m ∘ source_map == target_map (source_map: Z → A, target_map: Z → B).
    MorphismSearch& under(const PresheafMorphism& source_map, const PresheafMorphism& target_map);
    MorphismSearch& injective();
    /// Injective with equal level sizes, hence bijective.
    MorphismSearch& bijective();
    /// Randomize candidate order; the first solution found becomes a random one.
    MorphismSearch& shuffle(std::mt19937_64& rng);

    /// Calls `visit` with the component tables of each solution until it returns false.
    void run(const Visitor& visit) const;

    std::vector<PresheafMorphism> all() const;
    std::optional<PresheafMorphism> first() const;
    std::size_t count(std::size_t limit = std::numeric_limits<std::size_t>::max()) const;

private:
    PresheafPtr source_;
    PresheafPtr target_;
    // candidates_[c][a]: admissible images of element a at level c, in trial order.
    std::vector<std::vector<std::vector<Element>>> candidates_;
    bool injective_ = false;
    bool infeasible_ = false;
};

/**
 * Backtracking search over the restriction tables of a pointed presheaf with
 * fixed level sizes. Each unknown is the image of one non-basepoint element
 * under one non-identity restriction; functoriality is checked on every
 * assignment against the composition table of the shape.
 */
class StructureSearch {
public:
    using Visitor = std::function<bool(const std::vector<Table>&)>;

    StructureSearch(CategoryPtr shape, std::vector<std::size_t> sizes);

    /// Require restriction(f)(e) ∈ values. f must not be an identity.
    StructureSearch& allow(MorphismId f, Element e, const std::vector<Element>& values);
    StructureSearch& shuffle(std::mt19937_64& rng);

    void run(const Visitor& visit) const;

    std::vector<PresheafPtr> all() const;
    std::optional<PresheafPtr> first() const;

private:
    CategoryPtr shape_;
    std::vector<std::size_t> sizes_;
    std::vector<std::vector<std::vector<Element>>> candidates_;
    bool infeasible_ = false;
};

}  // namespace topaction
