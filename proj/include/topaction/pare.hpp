#pragma once

#include <cstddef>
#include <vector>

#include "topaction/cover.hpp"

namespace topaction {

/// f: [X_k] → Y with Y_0 = {⋆,n,m}; n and m land on elements 1 and 2 of Y_0.
struct SeparationWitness {
    Element n;
    Element m;
    PresheafMorphism map;
};

/// X_k = ({⋆,1..k} → {⋆}) in the arrow category, its initial cover and one
/// witness for every pair n < m in {1..k}.
struct SeparationInstance {
    std::size_t k;
    PresheafPtr x;
    InitialNormalCover cover;
    std::vector<SeparationWitness> witnesses;
};

/// Throws ValidationError unless k ≥ 2.
SeparationInstance build_separation(std::size_t k);

/// A quotient γ: [X_k] → Z that is the identity on the upper level and the
/// quotient by `blocks` on the lower level.
struct SeparatorCandidate {
    /// blocks[e] is the block of lower element e; block 0 holds ⋆.
    std::vector<Element> blocks;
    std::size_t lower_size;
    PresheafMorphism gamma;
};

/// The candidate for a partition of the lower level of [X_k], given as a
/// restricted growth string (blocks[0] == 0, each new block one past the largest so far).
SeparatorCandidate separator_candidate(const SeparationInstance& instance, const std::vector<Element>& blocks);

/// Whether every witness factors as g∘γ.
bool separates(const SeparationInstance& instance, const PresheafMorphism& gamma);

/// All candidates through which every witness factors, in restricted-growth order.
std::vector<SeparatorCandidate> separating_quotients(const SeparationInstance& instance);

/// The smallest lower-level size of a Z through which all witnesses factor.
std::size_t min_separator_size(std::size_t k);

}  // namespace topaction
