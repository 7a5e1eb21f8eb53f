#pragma once

#include <optional>
#include <span>
#include <vector>

#include "topaction/presheaf.hpp"

namespace topaction {

/// A sub-presheaf given by per-level membership flags; closed under
/// restriction and containing every basepoint.
class SubPresheaf {
public:
    /// Throws ValidationError if the membership is not a pointed sub-presheaf.
    SubPresheaf(PresheafPtr ambient, std::vector<std::vector<bool>> member);

    const PointedPresheaf& ambient() const noexcept { return *ambient_; }
    const PresheafPtr& ambient_ptr() const noexcept { return ambient_; }
    bool contains(ObjectId c, Element e) const { return member_.at(c).at(e); }
    const std::vector<std::vector<bool>>& membership() const noexcept { return member_; }
    std::size_t size(ObjectId c) const;
    bool is_everything() const;

    /// The sub-presheaf as an object of its own (elements renumbered in
    /// increasing ambient order) with its inclusion into the ambient presheaf.
    PresheafMorphism inclusion() const;

    friend bool operator==(const SubPresheaf& a, const SubPresheaf& b) {
        return a.member_ == b.member_ && *a.ambient_ == *b.ambient_;
    }

private:
    PresheafPtr ambient_;
    std::vector<std::vector<bool>> member_;
};

/// The smallest sub-presheaf containing the flagged elements.
SubPresheaf generated_subpresheaf(const PresheafPtr& ambient, std::vector<std::vector<bool>> generators);

/// The image of a morphism as a sub-presheaf of its target.
SubPresheaf image(const PresheafMorphism& f);

struct NormalEpiWitness {
    PresheafMorphism morphism;
    SubPresheaf kernel;
};

/// Levelwise preimage of the basepoint.
SubPresheaf kernel(const PresheafMorphism& f);

/// The quotient of `sub.ambient()` collapsing `sub` to the basepoint.
/// Surviving elements keep their relative order.
PresheafMorphism quotient(const SubPresheaf& sub);

/// target(f) → target(f)/image(f).
PresheafMorphism cokernel(const PresheafMorphism& f);

/// Surjective at every level, and injective outside the kernel.
std::optional<NormalEpiWitness> is_normal_epi(const PresheafMorphism& f);

/// Normality tested by definition: f factors through the cokernel of its
/// kernel inclusion by an isomorphism.
bool is_normal_epi_by_cokernel(const PresheafMorphism& f);

/// Inclusion of the levelwise agreement set of two parallel morphisms.
PresheafMorphism equalizer(const PresheafMorphism& u, const PresheafMorphism& v);

struct WidePullback {
    PresheafPtr apex;
    std::vector<PresheafMorphism> projections;
    /// The common composite apex → base.
    PresheafMorphism to_base;
    /// tuples[c][e][i] is the i-th coordinate of element e at level c.
    std::vector<std::vector<std::vector<Element>>> tuples;
};

/// Pullback of a non-empty family of morphisms with common target, computed
/// levelwise. Element 0 is the all-⋆ tuple; the rest follow in lexicographic order.
WidePullback wide_pullback(std::span<const PresheafMorphism> family);

/// A pushout or coproduct cocone with its couniversal factorization.
struct Cocone {
    PresheafPtr apex;
    PresheafMorphism in_left;
    PresheafMorphism in_right;
    /// representative[c][q] = (side, element) with side 0 = left, 1 = right.
    std::vector<std::vector<std::pair<int, Element>>> representative;

    /// The unique morphism apex → Z restricting to `left` and `right`.
    /// Throws ValidationError when they do not agree on the glued part.
    PresheafMorphism induced(const PresheafMorphism& left, const PresheafMorphism& right) const;
};

/// Levelwise pushout of k: K → A and s: K → B, i.e. (A ∨ B)/(k(κ) ∼ s(κ)).
Cocone pushout(const PresheafMorphism& k, const PresheafMorphism& s);

/// Levelwise wedge A ∨ B.
Cocone coproduct(const PresheafPtr& a, const PresheafPtr& b);

/// Some r with r∘mono == id, or nullopt. `mono` must be injective.
std::optional<PresheafMorphism> find_retraction(const PresheafMorphism& mono);

}  // namespace topaction
