#include "topaction/actions.hpp"

#include <numeric>
#include <string>

#include "topaction/error.hpp"
#include "topaction/parallel.hpp"
#include "topaction/search.hpp"

namespace topaction {

std::optional<std::string> sequence_defect(const LeftSplitSequence& s) {
    if (!(s.u.target() == s.v.source()) || !(s.u.target() == s.w.source()) || !(s.v.target() == s.u.source()))
        return "maps do not form a sequence G ⇄ A → X";
    if (!(compose(s.v, s.u) == identity_morphism(s.g_ptr()))) return "v∘u is not the identity on G";
    auto witness = is_normal_epi(s.w);
    if (!witness) return "w is not a normal epimorphism";
    if (!is_injective(s.u)) return "u is not injective";
    if (image(s.u).membership() != witness->kernel.membership()) return "image of u is not the kernel of w";
    return std::nullopt;
}

bool validate_sequence(const LeftSplitSequence& s) {
    return !sequence_defect(s).has_value();
}

std::optional<PresheafMorphism> sequence_iso(const LeftSplitSequence& s1, const LeftSplitSequence& s2, IsoMode mode) {
    if (!(*s1.g_ptr() == *s2.g_ptr()) || !(*s1.x_ptr() == *s2.x_ptr())) return std::nullopt;
    if (s1.middle().sizes() != s2.middle().sizes()) return std::nullopt;
    MorphismSearch search(s1.a_ptr(), s2.a_ptr());
    search.bijective().under(s1.u, s2.u).over(s1.w, s2.w);
    if (mode == IsoMode::kUVW) search.over(s1.v, s2.v);
    return search.first();
}

LeftSplitSequence trivial_sequence(const PresheafPtr& x, const PresheafPtr& g) {
    Cocone sum = coproduct(x, g);
    return LeftSplitSequence{sum.in_right, sum.induced(zero_morphism(x, g), identity_morphism(g)),
                             sum.induced(identity_morphism(x), zero_morphism(g, x))};
}

ActionSet enumerate_actions(const PresheafPtr& x, const PresheafPtr& g, IsoMode mode) {
    if (!same_shape(*x, *g)) throw ValidationError("actions between presheaves of different shapes");
    const FiniteCategory& shape = x->shape();
    const std::size_t n = shape.num_objects();

    std::vector<std::size_t> sizes(n);
    for (ObjectId c = 0; c < n; ++c) sizes[c] = g->size(c) + x->size(c) - 1;

    // Middle object layout: G(C) first, then the element over x at |G(C)| + x − 1.
    StructureSearch structures(x->shape_ptr(), sizes);
    for (MorphismId f = 0; f < shape.num_morphisms(); ++f) {
        if (shape.is_identity(f)) continue;
        const ObjectId lo = shape.dom(f);
        const ObjectId hi = shape.cod(f);
        std::vector<Element> g_lo(g->size(lo));
        std::iota(g_lo.begin(), g_lo.end(), Element{0});
        for (Element e = 1; e < sizes[hi]; ++e) {
            if (e < g->size(hi)) {
                structures.allow(f, e, {g->restrict(f, e)});
                continue;
            }
            Element over = x->restrict(f, static_cast<Element>(e - g->size(hi) + 1));
            if (over == kBase)
                structures.allow(f, e, g_lo);
            else
                structures.allow(f, e, {static_cast<Element>(over + g->size(lo) - 1)});
        }
    }

    std::vector<Table> u_tables(n), w_tables(n);
    for (ObjectId c = 0; c < n; ++c) {
        u_tables[c].resize(g->size(c));
        std::iota(u_tables[c].begin(), u_tables[c].end(), Element{0});
        w_tables[c].resize(sizes[c]);
        for (Element e = 0; e < sizes[c]; ++e)
            w_tables[c][e] = e < g->size(c) ? kBase : static_cast<Element>(e - g->size(c) + 1);
    }

    ActionSet result{x, g, mode, {}};
    structures.run([&](const std::vector<Table>& tables) {
        auto a = std::make_shared<const PointedPresheaf>(x->shape_ptr(), sizes, tables);
        PresheafMorphism u(g, a, u_tables);
        PresheafMorphism w(a, x, w_tables);
        MorphismSearch splittings(a, g);
        for (ObjectId c = 0; c < n; ++c)
            for (Element e = 1; e < g->size(c); ++e) splittings.pin(c, e, e);
        for (PresheafMorphism& v : splittings.all()) {
            LeftSplitSequence candidate{u, std::move(v), w};
            if (auto defect = sequence_defect(candidate))
                throw VerificationError("enumerated an invalid sequence: " + *defect);
            bool duplicate = false;
            for (const auto& kept : result.classes)
                if (sequence_iso(kept, candidate, mode)) {
                    duplicate = true;
                    break;
                }
            if (!duplicate) result.classes.push_back(std::move(candidate));
        }
        return true;
    });
    return result;
}

PresheafMorphism alpha(const LeftSplitSequence& s, const InitialNormalCover& cover) {
    if (!(*s.x_ptr() == *cover.chi().target_ptr())) throw ValidationError("alpha: cover is over a different object");
    std::optional<PresheafMorphism> t;
    std::size_t found = 0;
    MorphismSearch(cover.domain_ptr(), s.a_ptr()).over(cover.chi(), s.w).run([&](const std::vector<Table>& tables) {
        if (++found == 1) t.emplace(cover.domain_ptr(), s.a_ptr(), tables);
        return found < 2;
    });
    if (found != 1)
        throw VerificationError("alpha: found " + std::to_string(found) + " morphisms t with w∘t = χ; cover is not initial");
    return compose(s.v, *t);
}

LeftSplitSequence beta(const PresheafMorphism& s, const InitialNormalCover& cover) {
    if (!(s.source() == *cover.domain_ptr())) throw ValidationError("beta: morphism does not start at the cover");
    const PresheafMorphism& k = cover.kernel_inclusion;
    Cocone glued = pushout(k, compose(s, k));
    const PresheafPtr& g = s.target_ptr();
    const PresheafPtr& x = cover.chi().target_ptr();
    return LeftSplitSequence{glued.in_right, glued.induced(s, identity_morphism(g)),
                             glued.induced(cover.chi(), zero_morphism(g, x))};
}

LeftSplitSequence push_forward(const LeftSplitSequence& s, const PresheafMorphism& h) {
    if (!(h.source() == *s.g_ptr())) throw ValidationError("push_forward: h does not start at G");
    Cocone glued = pushout(s.u, h);
    const PresheafPtr& g2 = h.target_ptr();
    return LeftSplitSequence{glued.in_right, glued.induced(compose(h, s.v), identity_morphism(g2)),
                             glued.induced(s.w, zero_morphism(g2, s.x_ptr()))};
}

bool RepresentabilityReport::ok() const {
    for (const auto& e : entries)
        if (!e.ok()) return false;
    return true;
}

RepresentabilityReport verify_representability(const InitialNormalCover& cover, const std::vector<PresheafPtr>& pool,
                                               const RepresentabilityOptions& options) {
    const PresheafPtr& x = cover.chi().target_ptr();
    RepresentabilityReport report;
    report.entries.resize(pool.size());

    parallel_for(pool.size(), options.threads, [&](std::size_t i) {
        RepresentabilityEntry& entry = report.entries[i];
        entry.pool_index = i;
        const PresheafPtr& g = pool[i];
        ActionSet acts = enumerate_actions(x, g, options.mode);
        std::vector<PresheafMorphism> homs = hom_enumerate(cover.domain_ptr(), g);
        entry.act_count = acts.classes.size();
        entry.hom_count = homs.size();
        entry.counts_match = entry.act_count == entry.hom_count;
        if (!entry.counts_match)
            entry.failures.push_back("act_count " + std::to_string(entry.act_count) + " != hom_count " +
                                     std::to_string(entry.hom_count));

        entry.alpha_beta_identity = true;
        for (std::size_t j = 0; j < homs.size(); ++j) {
            LeftSplitSequence b = beta(homs[j], cover);
            if (auto defect = sequence_defect(b)) {
                entry.alpha_beta_identity = false;
                entry.failures.push_back("beta of hom " + std::to_string(j) + " is not a sequence: " + *defect);
                continue;
            }
            if (!(alpha(b, cover) == homs[j])) {
                entry.alpha_beta_identity = false;
                entry.failures.push_back("alpha(beta(hom " + std::to_string(j) + ")) differs");
            }
        }

        std::vector<PresheafMorphism> alphas;
        entry.beta_alpha_iso = true;
        for (std::size_t j = 0; j < acts.classes.size(); ++j) {
            alphas.push_back(alpha(acts.classes[j], cover));
            if (!sequence_iso(beta(alphas.back(), cover), acts.classes[j], options.mode)) {
                entry.beta_alpha_iso = false;
                entry.failures.push_back("beta(alpha(class " + std::to_string(j) + ")) is not isomorphic to it");
            }
        }

        entry.naturality = true;
        if (!options.check_naturality) return;
        for (std::size_t target = 0; target < pool.size(); ++target) {
            for (const PresheafMorphism& h : hom_enumerate(g, pool[target])) {
                for (std::size_t j = 0; j < acts.classes.size(); ++j) {
                    if (!(alpha(push_forward(acts.classes[j], h), cover) == compose(h, alphas[j]))) {
                        entry.naturality = false;
                        entry.failures.push_back("naturality fails for class " + std::to_string(j) +
                                                 " pushed to pool entry " + std::to_string(target));
                    }
                }
            }
        }
    });
    return report;
}

bool necessary_condition(const PresheafPtr& x, const std::vector<NormalCover>& family) {
    if (family.empty()) throw ValidationError("necessary_condition needs a non-empty family");
    std::vector<PresheafMorphism> maps;
    for (const NormalCover& member : family) {
        if (!(*member.base_ptr() == *x)) throw ValidationError("family member is not a cover of X");
        if (!find_retraction(member.witness.kernel.inclusion()))
            throw ValidationError("family member's kernel is not a retract");
        maps.push_back(member.map());
    }
    return is_surjective(wide_pullback(maps).to_base);
}

}  // namespace topaction
