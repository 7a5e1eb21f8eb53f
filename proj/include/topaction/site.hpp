#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "topaction/exactness.hpp"

namespace topaction {

/// (i,j) = (i,j′) ∨ (i′,j) with i′ > i and j′ > j; `meet` is (i′,j′).
struct ElementaryCovering {
    ObjectId covered;
    ObjectId west;  // (i, j′)
    ObjectId east;  // (i′, j)
    ObjectId meet;
};

/**
 * The truncated grid locale {0..n}² with its elementary coverings.
 *
 * Only coverings that lie inside the truncation exist. Levels with no
 * covering at all (i = n or j = n) form the horizon of the truncation; the
 * sheaf-semantics predicates evaluate local surjectivity and local
 * normality at interior levels only, because every covering that the
 * untruncated locale offers at a horizon level has been cut away.
 */
class GridSite {
public:
    explicit GridSite(std::size_t n);

    std::size_t n() const noexcept { return grid_.n(); }
    const GridPoset& grid() const noexcept { return grid_; }
    const CategoryPtr& category() const noexcept { return grid_.category(); }
    ObjectId at(std::size_t i, std::size_t j) const { return grid_.at(i, j); }

    const std::vector<ElementaryCovering>& coverings(ObjectId level) const { return coverings_.at(level); }
    bool interior(ObjectId level) const { return !coverings_.at(level).empty(); }

    /// The restriction morphism for lower ≤ upper.
    MorphismId restriction(ObjectId lower, ObjectId upper) const;

private:
    GridPoset grid_;
    std::vector<std::vector<ElementaryCovering>> coverings_;
};

/// Every compatible pair along every elementary covering glues uniquely.
bool is_sheaf(const GridSite& site, const PointedPresheaf& f);

/// T(i,j) = {⋆,x}; South-West restrictions are constant ⋆, South-East ones the identity.
PresheafPtr build_T(const GridSite& site);
/// A_m(i,j) = {⋆} for i < m, {⋆,k,a} for i ≥ m; South-West sends a ↦ k, South-East fixes a.
/// Throws ValidationError unless m ≤ n.
PresheafPtr build_A(const GridSite& site, std::size_t m);
/// f_m: A_m → T with ⋆ ↦ ⋆, k ↦ ⋆, a ↦ x.
PresheafMorphism build_f(const GridSite& site, std::size_t m);

/// Local surjectivity at every interior level: each section of the target is
/// an image directly or along some elementary covering.
bool sheaf_epi(const GridSite& site, const PresheafMorphism& f);

/// sheaf_epi, and at every interior level two sections with the same image are
/// both in the kernel or equal directly, or along some elementary covering are
/// both in the kernel on one piece and equal on the other.
bool sheaf_normal_epi(const GridSite& site, const PresheafMorphism& f);

/// The minimal i such that x ∈ T(0,0) restricted to (i,0) lifts to the wide
/// pullback of f_0..f_M at (i,0); nullopt when no i ≤ n works. Requires M ≤ n.
std::optional<std::size_t> escape_index(const GridSite& site, std::size_t max_index);

/// The Proposition's condition read in sheaf semantics: the wide pullback of
/// the family is a sheaf epimorphism onto its base.
bool necessary_condition_sheaf(const GridSite& site, const std::vector<PresheafMorphism>& family);

}  // namespace topaction
