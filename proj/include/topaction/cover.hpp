#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "topaction/exactness.hpp"

namespace topaction {

/// A normal epimorphism onto a fixed base X: an object of the slice N/X.
struct NormalCover {
    NormalEpiWitness witness;

    const PresheafMorphism& map() const noexcept { return witness.morphism; }
    const PointedPresheaf& domain() const noexcept { return map().source(); }
    const PresheafPtr& domain_ptr() const noexcept { return map().source_ptr(); }
    const PresheafPtr& base_ptr() const noexcept { return map().target_ptr(); }

    /// Throws ValidationError unless `map` is a normal epimorphism.
    static NormalCover from(PresheafMorphism map);
};

/// ([X], χ) together with the kernel k: K ↪ [X].
struct InitialNormalCover {
    NormalCover cover;
    SubPresheaf kernel;
    PresheafMorphism kernel_inclusion;

    const PresheafMorphism& chi() const noexcept { return cover.map(); }
    const PresheafPtr& domain_ptr() const noexcept { return cover.domain_ptr(); }

    static InitialNormalCover from(NormalCover cover);
};

/// Per-object upper limit on the level sizes of a cover's domain.
using SizeBound = std::vector<std::size_t>;

/// |X(C)| + Σ_{f: C → D, f ≠ id} (|X(D)| − 1): the largest level size of a cover
/// generated by its basepoints and the elements outside its kernel.
SizeBound generation_bound(const PointedPresheaf& x);
SizeBound uniform_bound(const PointedPresheaf& x, std::size_t limit);
/// 2·|X(C)| at every object: the default for the generic construction.
SizeBound default_bound(const PointedPresheaf& x);

/// Slice morphisms from → to (to.map ∘ m == from.map), sorted.
std::vector<PresheafMorphism> slice_morphisms(const NormalCover& from, const NormalCover& to);
std::size_t count_slice_morphisms(const NormalCover& from, const NormalCover& to, std::size_t limit = 2);
std::optional<PresheafMorphism> slice_isomorphism(const NormalCover& a, const NormalCover& b);

/// Every normal cover of X with the given kernel sizes (basepoint included), in
/// the canonical layout: level C holds the kernel 0..k_C−1 followed by one
/// element over each x ∈ X(C)∖{⋆}. Not deduplicated.
std::vector<NormalCover> covers_with_kernel_sizes(const PresheafPtr& x, const std::vector<std::size_t>& kernel_sizes);

/// All normal covers of X with |A(C)| ≤ bound(C), one per slice isomorphism
/// class. Throws ValidationError when bound(C) < |X(C)| for some C.
std::vector<NormalCover> solution_set(const PresheafPtr& x, const SizeBound& bound);

/// A random normal cover with random kernel sizes in [1, max_kernel(C)].
NormalCover random_normal_cover(const PresheafPtr& x, const std::vector<std::size_t>& max_kernel, std::mt19937_64& rng);

/// Joint equalizer of every slice endomorphism of `cover`, taken by iterated
/// pairwise equalizers in the given endomorphism order (all of them, in
/// enumeration order, when `order` is empty). Feasible only for small domains.
NormalCover joint_endomorphism_equalizer(const NormalCover& cover, const std::vector<std::size_t>& order = {});

struct GenericCoverOptions {
    /// Extra random covers against which initiality is re-checked.
    std::size_t extra_checks = 50;
    std::uint64_t seed = 0x5eed;
};

/**
 * Initial normal cover of X from the limit of the solution set.
 *
 * The solution set is pulled back one member at a time; after each binary
 * pullback only the sub-presheaf generated by the elements outside the
 * kernel is kept, which is exactly what the joint equalizer of all slice
 * endomorphisms of the full wide pullback retains. The result is then
 * equalized against its own slice endomorphisms until only the identity is
 * left, and initiality is verified against every member of the solution set
 * and against `extra_checks` random covers. Throws VerificationError if a
 * check fails, which means the bound was too small for X.
 */
InitialNormalCover initial_cover_generic(const PresheafPtr& x, const SizeBound& bound,
                                         const GenericCoverOptions& options = {});

/// The closed form over the arrow category: [X] = (X_1 → X_0 + f⁻¹(⋆)).
/// Throws ValidationError on any other shape.
InitialNormalCover closed_form_arrow(const PresheafPtr& x);

/// Over the terminal category the identity on X is the initial cover.
InitialNormalCover closed_form_boolean(const PresheafPtr& x);

/// Whether some morphism [X] → K restricts to the identity on K.
bool kernel_is_retract(const InitialNormalCover& c);

}  // namespace topaction
