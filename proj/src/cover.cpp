#include "topaction/cover.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include "topaction/error.hpp"
#include "topaction/search.hpp"

namespace topaction {

NormalCover NormalCover::from(PresheafMorphism map) {
    auto witness = is_normal_epi(map);
    if (!witness) throw ValidationError("cover map is not a normal epimorphism");
    return NormalCover{std::move(*witness)};
}

InitialNormalCover InitialNormalCover::from(NormalCover cover) {
    SubPresheaf k = cover.witness.kernel;
    PresheafMorphism inclusion = k.inclusion();
    return InitialNormalCover{std::move(cover), std::move(k), std::move(inclusion)};
}

SizeBound generation_bound(const PointedPresheaf& x) {
    const FiniteCategory& shape = x.shape();
    SizeBound bound(shape.num_objects());
    for (ObjectId c = 0; c < shape.num_objects(); ++c) {
        bound[c] = x.size(c);
        for (MorphismId f : shape.out_of(c))
            if (!shape.is_identity(f)) bound[c] += x.size(shape.cod(f)) - 1;
    }
    return bound;
}

SizeBound uniform_bound(const PointedPresheaf& x, std::size_t limit) {
    return SizeBound(x.shape().num_objects(), limit);
}

SizeBound default_bound(const PointedPresheaf& x) {
    SizeBound bound = x.sizes();
    for (std::size_t& b : bound) b *= 2;
    return bound;
}

std::vector<PresheafMorphism> slice_morphisms(const NormalCover& from, const NormalCover& to) {
    return MorphismSearch(from.domain_ptr(), to.domain_ptr()).over(from.map(), to.map()).all();
}

std::size_t count_slice_morphisms(const NormalCover& from, const NormalCover& to, std::size_t limit) {
    return MorphismSearch(from.domain_ptr(), to.domain_ptr()).over(from.map(), to.map()).count(limit);
}

std::optional<PresheafMorphism> slice_isomorphism(const NormalCover& a, const NormalCover& b) {
    if (a.domain().sizes() != b.domain().sizes()) return std::nullopt;
    return MorphismSearch(a.domain_ptr(), b.domain_ptr()).over(a.map(), b.map()).bijective().first();
}

namespace {

// Canonical layout: kernel 0..k-1, then the element over x sits at k + x - 1.
StructureSearch cover_structure_search(const PointedPresheaf& x, const std::vector<std::size_t>& k) {
    const FiniteCategory& shape = x.shape();
    std::vector<std::size_t> sizes(shape.num_objects());
    for (ObjectId c = 0; c < sizes.size(); ++c) sizes[c] = k.at(c) + x.size(c) - 1;
    StructureSearch search(x.shape_ptr(), sizes);
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        if (shape.is_identity(f)) continue;
        const ObjectId lo = shape.dom(f);
        const ObjectId hi = shape.cod(f);
        std::vector<Element> kernel_lo(k[lo]);
        std::iota(kernel_lo.begin(), kernel_lo.end(), Element{0});
        for (Element e = 1; e < sizes[hi]; ++e) {
            if (e < k[hi]) {
                search.allow(f, e, kernel_lo);
                continue;
            }
            Element over = x.restrict(f, static_cast<Element>(e - k[hi] + 1));
            if (over == kBase)
                search.allow(f, e, kernel_lo);
            else
                search.allow(f, e, {static_cast<Element>(over + k[lo] - 1)});
        }
    }
    return search;
}

NormalCover canonical_cover(const PresheafPtr& x, const std::vector<std::size_t>& k, const std::vector<Table>& tables) {
    const FiniteCategory& shape = x->shape();
    const std::size_t n = shape.num_objects();
    std::vector<std::size_t> sizes(n);
    std::vector<Table> comps(n);
    for (ObjectId c = 0; c < n; ++c) {
        sizes[c] = k[c] + x->size(c) - 1;
        comps[c].resize(sizes[c]);
        for (Element e = 0; e < sizes[c]; ++e) comps[c][e] = e < k[c] ? kBase : static_cast<Element>(e - k[c] + 1);
    }
    auto a = std::make_shared<const PointedPresheaf>(x->shape_ptr(), std::move(sizes), tables);
    return NormalCover::from(PresheafMorphism(a, x, std::move(comps)));
}

std::string describe_sizes(const std::vector<std::size_t>& sizes) {
    std::ostringstream out;
    for (std::size_t i = 0; i < sizes.size(); ++i) out << (i ? " " : "") << sizes[i];
    return out.str();
}

// The cover restricted to the sub-presheaf generated by the elements outside its kernel.
NormalCover generated_part(const PresheafMorphism& map) {
    const std::size_t n = map.components().size();
    std::vector<std::vector<bool>> gens(n);
    for (ObjectId c = 0; c < n; ++c) {
        gens[c].resize(map.source().size(c));
        for (Element e = 0; e < gens[c].size(); ++e) gens[c][e] = map(c, e) != kBase;
    }
    PresheafMorphism inclusion = generated_subpresheaf(map.source_ptr(), std::move(gens)).inclusion();
    return NormalCover::from(compose(map, inclusion));
}

}  // namespace

std::vector<NormalCover> covers_with_kernel_sizes(const PresheafPtr& x, const std::vector<std::size_t>& kernel_sizes) {
    std::vector<NormalCover> out;
    cover_structure_search(*x, kernel_sizes).run([&](const std::vector<Table>& tables) {
        out.push_back(canonical_cover(x, kernel_sizes, tables));
        return true;
    });
    return out;
}

std::vector<NormalCover> solution_set(const PresheafPtr& x, const SizeBound& bound) {
    const std::size_t n = x->shape().num_objects();
    if (bound.size() != n) throw ValidationError("bound has wrong length");
    for (ObjectId c = 0; c < n; ++c)
        if (bound[c] < x->size(c))
            throw ValidationError("bound " + std::to_string(bound[c]) + " at object " + std::to_string(c) +
                                  " is below |X| = " + std::to_string(x->size(c)));

    std::vector<NormalCover> pool;
    std::vector<std::size_t> k(n, 1);
    while (true) {
        const std::size_t first_of_batch = pool.size();
        for (NormalCover& candidate : covers_with_kernel_sizes(x, k)) {
            bool seen = false;
            for (std::size_t i = first_of_batch; i < pool.size() && !seen; ++i)
                seen = slice_isomorphism(pool[i], candidate).has_value();
            if (!seen) pool.push_back(std::move(candidate));
        }
        std::size_t i = 0;
        while (i < n && k[i] == bound[i] - x->size(i) + 1) k[i++] = 1;
        if (i == n) break;
        ++k[i];
    }
    return pool;
}

NormalCover random_normal_cover(const PresheafPtr& x, const std::vector<std::size_t>& max_kernel, std::mt19937_64& rng) {
    const std::size_t n = x->shape().num_objects();
    std::vector<std::size_t> k(n);
    for (ObjectId c = 0; c < n; ++c)
        k[c] = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_kernel.at(c)))(rng);
    std::optional<NormalCover> found;
    cover_structure_search(*x, k).shuffle(rng).run([&](const std::vector<Table>& tables) {
        found = canonical_cover(x, k, tables);
        return false;
    });
    // Kernel elements restricting to ⋆ always give a solution.
    return std::move(*found);
}

NormalCover joint_endomorphism_equalizer(const NormalCover& cover, const std::vector<std::size_t>& order) {
    NormalCover current = cover;
    bool first_round = true;
    while (true) {
        std::vector<PresheafMorphism> endos = slice_morphisms(current, current);
        if (endos.size() == 1) return current;  // only the identity is left
        std::vector<std::size_t> sequence = order;
        if (!first_round || sequence.empty()) {
            sequence.resize(endos.size());
            std::iota(sequence.begin(), sequence.end(), std::size_t{0});
        }
        first_round = false;
        // ι: E ↪ domain, narrowed by one pairwise equalizer per endomorphism.
        PresheafMorphism iota = identity_morphism(current.domain_ptr());
        for (std::size_t idx : sequence) {
            const PresheafMorphism& e = endos.at(idx);
            PresheafMorphism narrowed = equalizer(compose(e, iota), iota);
            iota = compose(iota, narrowed);
        }
        // Renumber through the image so the result does not depend on the order used.
        PresheafMorphism inclusion = image(iota).inclusion();
        current = NormalCover::from(compose(current.map(), inclusion));
    }
}

InitialNormalCover initial_cover_generic(const PresheafPtr& x, const SizeBound& bound, const GenericCoverOptions& options) {
    std::vector<NormalCover> pool = solution_set(x, bound);

    NormalCover limit = generated_part(pool.front().map());
    for (std::size_t i = 1; i < pool.size(); ++i) {
        const PresheafMorphism pair[] = {limit.map(), pool[i].map()};
        WidePullback w = wide_pullback(pair);
        limit = generated_part(w.to_base);
    }
    limit = joint_endomorphism_equalizer(limit);

    for (std::size_t i = 0; i < pool.size(); ++i) {
        std::size_t found = count_slice_morphisms(limit, pool[i], 2);
        if (found != 1)
            throw VerificationError("initial cover check failed: " + std::to_string(found) +
                                    " slice morphisms to solution-set member " + std::to_string(i) +
                                    " (bound " + describe_sizes(bound) + ")");
    }
    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> max_kernel(bound.size());
    for (ObjectId c = 0; c < bound.size(); ++c) max_kernel[c] = bound[c] - x->size(c) + 3;
    for (std::size_t i = 0; i < options.extra_checks; ++i) {
        NormalCover extra = random_normal_cover(x, max_kernel, rng);
        std::size_t found = count_slice_morphisms(limit, extra, 2);
        if (found != 1)
            throw VerificationError("initial cover check failed: " + std::to_string(found) +
                                    " slice morphisms to a random cover with level sizes " +
                                    describe_sizes(extra.domain().sizes()) + " (bound " + describe_sizes(bound) + ")");
    }
    return InitialNormalCover::from(std::move(limit));
}

InitialNormalCover closed_form_arrow(const PresheafPtr& x) {
    if (!(x->shape() == *build_arrow())) throw ValidationError("closed_form_arrow needs the arrow category");
    constexpr MorphismId kArrow = 2;
    const Table& f = x->restriction(kArrow);
    const std::size_t lower = x->size(0);
    const std::size_t upper = x->size(1);

    // h: X_1 → X_0 + f⁻¹(⋆); the fiber summand is appended after X_0.
    Table h(upper, kBase);
    Element next = static_cast<Element>(lower);
    for (Element e = 1; e < upper; ++e) h[e] = f[e] != kBase ? f[e] : next++;
    const std::size_t cover_lower = next;

    Table id_lower(cover_lower), id_upper(upper);
    std::iota(id_lower.begin(), id_lower.end(), Element{0});
    std::iota(id_upper.begin(), id_upper.end(), Element{0});
    auto domain = std::make_shared<const PointedPresheaf>(x->shape_ptr(), std::vector<std::size_t>{cover_lower, upper},
                                                          std::vector<Table>{id_lower, id_upper, h});

    Table chi_lower(cover_lower);
    for (Element e = 0; e < cover_lower; ++e) chi_lower[e] = e < lower ? e : kBase;
    return InitialNormalCover::from(NormalCover::from(PresheafMorphism(domain, x, {chi_lower, id_upper})));
}

InitialNormalCover closed_form_boolean(const PresheafPtr& x) {
    const FiniteCategory& shape = x->shape();
    if (shape.num_objects() != 1 || shape.num_morphisms() != 1)
        throw ValidationError("closed_form_boolean needs the terminal category");
    return InitialNormalCover::from(NormalCover::from(identity_morphism(x)));
}

bool kernel_is_retract(const InitialNormalCover& c) {
    return find_retraction(c.kernel_inclusion).has_value();
}

}  // namespace topaction
