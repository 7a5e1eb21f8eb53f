#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topaction/cover.hpp"

namespace topaction {

/// 1 → G ⇄ A → X → 1 with v∘u = id_G and u the kernel of the normal epi w.
struct LeftSplitSequence {
    PresheafMorphism u;  // G → A
    PresheafMorphism v;  // A → G
    PresheafMorphism w;  // A → X

    const PresheafPtr& g_ptr() const noexcept { return u.source_ptr(); }
    const PresheafPtr& a_ptr() const noexcept { return u.target_ptr(); }
    const PresheafPtr& x_ptr() const noexcept { return w.target_ptr(); }
    const PointedPresheaf& middle() const noexcept { return u.target(); }
};

/// Which maps a sequence isomorphism must commute with. Both modes fix G and X.
enum class IsoMode {
    kUVW,  // u, v and w
    kUW,   // u and w only
};

/// Human-readable reason the triple is not a left-split exact sequence, or nullopt.
std::optional<std::string> sequence_defect(const LeftSplitSequence& s);
bool validate_sequence(const LeftSplitSequence& s);

/// An isomorphism φ: A1 → A2 with φu1 = u2, w2φ = w1 and, in kUVW mode, v2φ = v1.
std::optional<PresheafMorphism> sequence_iso(const LeftSplitSequence& s1, const LeftSplitSequence& s2,
                                             IsoMode mode = IsoMode::kUVW);

/// G ⇄ X+G → X with u = i_G, v = (0, id), w = (id, 0).
LeftSplitSequence trivial_sequence(const PresheafPtr& x, const PresheafPtr& g);

struct ActionSet {
    PresheafPtr x;
    PresheafPtr g;
    IsoMode mode;
    /// One representative per isomorphism class, in canonical layout.
    std::vector<LeftSplitSequence> classes;
};

/// All left-split exact sequences over (X, G) up to isomorphism. Middle objects
/// are laid out as G(C) followed by one element over each x ∈ X(C)∖{⋆}.
ActionSet enumerate_actions(const PresheafPtr& x, const PresheafPtr& g, IsoMode mode = IsoMode::kUVW);

/// v∘t for the unique t: [X] → A with w∘t = χ. Throws VerificationError if t
/// is not unique, which means `cover` is not initial.
PresheafMorphism alpha(const LeftSplitSequence& s, const InitialNormalCover& cover);

/// The bottom-right pushout row: 1 → G ⇄ [X] +_K G → X → 1 built from s: [X] → G.
LeftSplitSequence beta(const PresheafMorphism& s, const InitialNormalCover& cover);

/// Pushout of the sequence along h: G → G'.
LeftSplitSequence push_forward(const LeftSplitSequence& s, const PresheafMorphism& h);

struct RepresentabilityEntry {
    std::size_t pool_index = 0;
    std::size_t act_count = 0;
    std::size_t hom_count = 0;
    bool counts_match = false;
    bool alpha_beta_identity = false;  // αβ(s) == s for every s
    bool beta_alpha_iso = false;       // βα(σ) ≅ σ for every sequence σ
    bool naturality = false;           // α(h_*σ) == h∘α(σ) for pool morphisms out of this G
    std::vector<std::string> failures;

    bool ok() const { return counts_match && alpha_beta_identity && beta_alpha_iso && naturality; }
};

struct RepresentabilityReport {
    std::vector<RepresentabilityEntry> entries;
    bool ok() const;
};

struct RepresentabilityOptions {
    IsoMode mode = IsoMode::kUVW;
    bool check_naturality = true;
    /// Worker threads; 0 uses the TOPACTION_THREADS default.
    std::size_t threads = 0;
};

/// Checks |Act(X,G)| = |hom([X],G)|, both round trips and naturality in G for
/// every G in the pool and every pool morphism h: G → G'.
RepresentabilityReport verify_representability(const InitialNormalCover& cover, const std::vector<PresheafPtr>& pool,
                                               const RepresentabilityOptions& options = {});

/// Whether the wide pullback of the family is levelwise surjective onto X.
/// Throws ValidationError if a member's kernel is not a retract.
bool necessary_condition(const PresheafPtr& x, const std::vector<NormalCover>& family);

}  // namespace topaction
