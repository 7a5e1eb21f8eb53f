#include "topaction/pare.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "topaction/error.hpp"

namespace topaction {

SeparationInstance build_separation(std::size_t k) {
    if (k < 2) throw ValidationError("build_separation needs k ≥ 2");
    CategoryPtr arrow = build_arrow();
    const std::size_t upper = k + 1;
    Table id_upper(upper);
    std::iota(id_upper.begin(), id_upper.end(), Element{0});

    auto x = std::make_shared<const PointedPresheaf>(arrow, std::vector<std::size_t>{1, upper},
                                                     std::vector<Table>{{0}, id_upper, Table(upper, kBase)});
    InitialNormalCover cover = closed_form_arrow(x);
    const PresheafPtr& domain = cover.domain_ptr();

    std::vector<SeparationWitness> witnesses;
    for (Element n = 1; n <= k; ++n) {
        for (Element m = n + 1; m <= k; ++m) {
            Table lower(upper, kBase);
            lower[n] = 1;
            lower[m] = 2;
            auto y = std::make_shared<const PointedPresheaf>(arrow, std::vector<std::size_t>{3, upper},
                                                             std::vector<Table>{{0, 1, 2}, id_upper, lower});
            witnesses.push_back({n, m, PresheafMorphism(domain, y, {lower, id_upper})});
        }
    }
    return SeparationInstance{k, std::move(x), std::move(cover), std::move(witnesses)};
}

SeparatorCandidate separator_candidate(const SeparationInstance& instance, const std::vector<Element>& blocks) {
    const PresheafPtr& domain = instance.cover.domain_ptr();
    const std::size_t upper = domain->size(1);
    if (blocks.size() != domain->size(0) || blocks.empty() || blocks[0] != 0)
        throw ValidationError("partition does not cover the lower level of the cover");
    const std::size_t lower = *std::max_element(blocks.begin(), blocks.end()) + 1;

    Table id_upper(upper), restriction(upper);
    std::iota(id_upper.begin(), id_upper.end(), Element{0});
    for (Element e = 0; e < upper; ++e) restriction[e] = blocks[domain->restrict(2, e)];
    Table id_lower(lower);
    std::iota(id_lower.begin(), id_lower.end(), Element{0});
    auto z = std::make_shared<const PointedPresheaf>(domain->shape_ptr(), std::vector<std::size_t>{lower, upper},
                                                     std::vector<Table>{id_lower, id_upper, restriction});
    return SeparatorCandidate{blocks, lower, PresheafMorphism(domain, z, {Table(blocks.begin(), blocks.end()), id_upper})};
}

bool separates(const SeparationInstance& instance, const PresheafMorphism& gamma) {
    for (const SeparationWitness& w : instance.witnesses)
        if (!factor_through_epi(w.map, gamma)) return false;
    return true;
}

std::vector<SeparatorCandidate> separating_quotients(const SeparationInstance& instance) {
    // If every witness factors through some γ: [X_k] → Z, it factors through the
    // image of γ. The upper witness components are identities, so γ is injective
    // upstairs and the image is a quotient of [X_k] fixed by the partition that γ
    // induces downstairs. Searching partitions therefore covers every Z.
    const std::size_t size = instance.cover.domain_ptr()->size(0);
    std::vector<SeparatorCandidate> out;
    std::vector<Element> blocks(size, 0);
    std::vector<Element> largest(size, 0);  // largest[i] = max(blocks[0..i])
    while (true) {
        SeparatorCandidate candidate = separator_candidate(instance, blocks);
        if (separates(instance, candidate.gamma)) out.push_back(std::move(candidate));

        std::size_t i = size - 1;
        while (i > 0 && blocks[i] == largest[i - 1] + 1) --i;
        if (i == 0) break;
        ++blocks[i];
        largest[i] = std::max(largest[i - 1], blocks[i]);
        for (std::size_t j = i + 1; j < size; ++j) {
            blocks[j] = 0;
            largest[j] = largest[i];
        }
    }
    return out;
}

std::size_t min_separator_size(std::size_t k) {
    const SeparationInstance instance = build_separation(k);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const SeparatorCandidate& c : separating_quotients(instance)) best = std::min(best, c.lower_size);
    if (best == std::numeric_limits<std::size_t>::max())
        throw VerificationError("no quotient separates the witnesses");
    return best;
}

}  // namespace topaction
