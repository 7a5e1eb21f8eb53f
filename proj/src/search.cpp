#include "topaction/search.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "topaction/error.hpp"

namespace topaction {

namespace {

constexpr Element kUnset = std::numeric_limits<Element>::max();

void intersect(std::vector<Element>& current, const std::vector<Element>& values) {
    std::erase_if(current, [&](Element b) { return std::find(values.begin(), values.end(), b) == values.end(); });
}

class MorphismSolver {
public:
    MorphismSolver(const PointedPresheaf& a, const PointedPresheaf& b,
                   const std::vector<std::vector<std::vector<Element>>>& candidates, bool injective,
                   const MorphismSearch::Visitor& visit)
        : a_(a), b_(b), candidates_(candidates), injective_(injective), visit_(visit) {
        const FiniteCategory& shape = a.shape();
        const std::size_t n = shape.num_objects();
        value_.resize(n);
        used_.resize(n);
        allowed_.resize(n);
        for (ObjectId c = 0; c < n; ++c) {
            value_[c].assign(a.size(c), kUnset);
            value_[c][0] = kBase;
            used_[c].assign(b.size(c), 0);
            allowed_[c].resize(a.size(c));
            for (Element e = 0; e < a.size(c); ++e) {
                allowed_[c][e].assign(b.size(c), 0);
                for (Element v : candidates_[c][e]) allowed_[c][e][v] = 1;
            }
        }
        // Levels with many restrictions out of them first: their assignments force the most.
        std::vector<ObjectId> objects(n);
        std::iota(objects.begin(), objects.end(), 0);
        std::stable_sort(objects.begin(), objects.end(), [&](ObjectId x, ObjectId y) {
            return shape.into(x).size() > shape.into(y).size();
        });
        for (ObjectId c : objects)
            for (Element e = 1; e < a.size(c); ++e) order_.emplace_back(c, e);
    }

    void solve() { descend(0); }

private:
    bool assign(ObjectId c, Element e, Element v) {
        if (value_[c][e] != kUnset) return value_[c][e] == v;
        if (!allowed_[c][e][v]) return false;
        if (injective_ && (v == kBase || used_[c][v])) return false;
        value_[c][e] = v;
        if (injective_) used_[c][v] = 1;
        trail_.emplace_back(c, e);
        const FiniteCategory& shape = a_.shape();
        for (MorphismId f : shape.into(c)) {
            if (shape.is_identity(f)) continue;
            ObjectId d = shape.dom(f);
            Element e2 = a_.restrict(f, e);
            Element v2 = b_.restrict(f, v);
            if (e2 == kBase) {
                if (v2 != kBase) return false;
                continue;
            }
            if (!assign(d, e2, v2)) return false;
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [c, e] = trail_.back();
            trail_.pop_back();
            if (injective_) used_[c][value_[c][e]] = 0;
            value_[c][e] = kUnset;
        }
    }

    void descend(std::size_t idx) {
        while (idx < order_.size() && value_[order_[idx].first][order_[idx].second] != kUnset) ++idx;
        if (idx == order_.size()) {
            if (!visit_(value_)) stopped_ = true;
            return;
        }
        auto [c, e] = order_[idx];
        for (Element v : candidates_[c][e]) {
            std::size_t mark = trail_.size();
            if (assign(c, e, v)) descend(idx + 1);
            undo(mark);
            if (stopped_) return;
        }
    }

    const PointedPresheaf& a_;
    const PointedPresheaf& b_;
    const std::vector<std::vector<std::vector<Element>>>& candidates_;
    bool injective_;
    const MorphismSearch::Visitor& visit_;
    std::vector<Table> value_;
    std::vector<std::vector<char>> used_;
    std::vector<std::vector<std::vector<char>>> allowed_;
    std::vector<std::pair<ObjectId, Element>> order_;
    std::vector<std::pair<ObjectId, Element>> trail_;
    bool stopped_ = false;
};

}  // namespace

MorphismSearch::MorphismSearch(PresheafPtr source, PresheafPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (!same_shape(*source_, *target_)) throw ValidationError("morphism search between different shapes");
    const std::size_t n = source_->shape().num_objects();
    candidates_.resize(n);
    for (ObjectId c = 0; c < n; ++c) {
        candidates_[c].resize(source_->size(c));
        for (Element e = 0; e < source_->size(c); ++e) {
            if (e == kBase) {
                candidates_[c][e] = {kBase};
                continue;
            }
            candidates_[c][e].resize(target_->size(c));
            std::iota(candidates_[c][e].begin(), candidates_[c][e].end(), Element{0});
        }
    }
}

MorphismSearch& MorphismSearch::pin(ObjectId c, Element from, Element to) {
    return allow(c, from, {to});
}

MorphismSearch& MorphismSearch::allow(ObjectId c, Element from, const std::vector<Element>& values) {
    auto& current = candidates_.at(c).at(from);
    intersect(current, values);
    if (current.empty()) infeasible_ = true;
    return *this;
}

MorphismSearch& MorphismSearch::over(const PresheafMorphism& source_map, const PresheafMorphism& target_map) {
    if (!(source_map.source() == *source_) || !(target_map.source() == *target_) ||
        !(source_map.target() == target_map.target()))
        throw ValidationError("slice constraint endpoints do not match the search");
    for (ObjectId c = 0; c < candidates_.size(); ++c)
        for (Element e = 0; e < source_->size(c); ++e) {
            Element want = source_map(c, e);
            std::erase_if(candidates_[c][e], [&](Element v) { return target_map(c, v) != want; });
            if (candidates_[c][e].empty()) infeasible_ = true;
        }
    return *this;
}

MorphismSearch& MorphismSearch::under(const PresheafMorphism& source_map, const PresheafMorphism& target_map) {
    if (!(source_map.target() == *source_) || !(target_map.target() == *target_) ||
        !(source_map.source() == target_map.source()))
        throw ValidationError("coslice constraint endpoints do not match the search");
    for (ObjectId c = 0; c < candidates_.size(); ++c)
        for (Element z = 0; z < source_map.source().size(c); ++z) pin(c, source_map(c, z), target_map(c, z));
    return *this;
}

MorphismSearch& MorphismSearch::injective() {
    injective_ = true;
    return *this;
}

MorphismSearch& MorphismSearch::bijective() {
    if (source_->sizes() != target_->sizes()) infeasible_ = true;
    return injective();
}

MorphismSearch& MorphismSearch::shuffle(std::mt19937_64& rng) {
    for (auto& level : candidates_)
        for (auto& list : level) std::shuffle(list.begin(), list.end(), rng);
    return *this;
}

void MorphismSearch::run(const Visitor& visit) const {
    if (infeasible_) return;
    MorphismSolver solver(*source_, *target_, candidates_, injective_, visit);
    solver.solve();
}

std::vector<PresheafMorphism> MorphismSearch::all() const {
    std::vector<PresheafMorphism> out;
    run([&](const std::vector<Table>& tables) {
        out.emplace_back(source_, target_, tables);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<PresheafMorphism> MorphismSearch::first() const {
    std::optional<PresheafMorphism> out;
    run([&](const std::vector<Table>& tables) {
        out.emplace(source_, target_, tables);
        return false;
    });
    return out;
}

std::size_t MorphismSearch::count(std::size_t limit) const {
    std::size_t n = 0;
    run([&](const std::vector<Table>&) { return ++n < limit; });
    return n;
}

// ---------------------------------------------------------------------------

namespace {

class StructureSolver {
public:
    StructureSolver(const FiniteCategory& shape, const std::vector<std::size_t>& sizes,
                    const std::vector<std::vector<std::vector<Element>>>& candidates,
                    const StructureSearch::Visitor& visit)
        : shape_(shape), sizes_(sizes), candidates_(candidates), visit_(visit) {
        const std::size_t m = shape.num_morphisms();
        value_.resize(m);
        as_composite_.resize(m);
        as_outer_.resize(m);
        as_inner_.resize(m);
        for (MorphismId f = 0; f < m; ++f) {
            std::size_t n = sizes[shape.cod(f)];
            if (shape.is_identity(f)) {
                value_[f].resize(n);
                std::iota(value_[f].begin(), value_[f].end(), Element{0});
            } else {
                value_[f].assign(n, kUnset);
                value_[f][0] = kBase;
                for (Element e = 1; e < n; ++e) order_.emplace_back(f, e);
            }
        }
        for (auto [g, f, h] : shape.nontrivial_composites()) {
            as_composite_[h].emplace_back(g, f);
            as_outer_[g].emplace_back(f, h);
            as_inner_[f].emplace_back(g, h);
        }
    }

    void solve() { descend(0); }

private:
    // restriction(g∘f) == restriction(f) ∘ restriction(g), evaluated where known.
    bool consistent(MorphismId m, Element e) const {
        const Element v = value_[m][e];
        for (auto [g, f] : as_composite_[m]) {
            Element mid = value_[g][e];
            if (mid == kUnset) continue;
            Element via = value_[f][mid];
            if (via != kUnset && via != v) return false;
        }
        for (auto [f, h] : as_outer_[m]) {
            Element direct = value_[h][e];
            Element via = value_[f][v];
            if (direct != kUnset && via != kUnset && direct != via) return false;
        }
        for (auto [g, h] : as_inner_[m]) {
            const Table& outer = value_[g];
            for (Element e2 = 1; e2 < outer.size(); ++e2) {
                if (outer[e2] != e) continue;
                Element direct = value_[h][e2];
                if (direct != kUnset && direct != v) return false;
            }
        }
        return true;
    }

    void descend(std::size_t idx) {
        if (idx == order_.size()) {
            if (!visit_(value_)) stopped_ = true;
            return;
        }
        auto [f, e] = order_[idx];
        for (Element v : candidates_[f][e]) {
            value_[f][e] = v;
            if (consistent(f, e)) descend(idx + 1);
            value_[f][e] = kUnset;
            if (stopped_) return;
        }
    }

    const FiniteCategory& shape_;
    const std::vector<std::size_t>& sizes_;
    const std::vector<std::vector<std::vector<Element>>>& candidates_;
    const StructureSearch::Visitor& visit_;
    std::vector<Table> value_;
    std::vector<std::vector<std::pair<MorphismId, MorphismId>>> as_composite_;
    std::vector<std::vector<std::pair<MorphismId, MorphismId>>> as_outer_;
    std::vector<std::vector<std::pair<MorphismId, MorphismId>>> as_inner_;
    std::vector<std::pair<MorphismId, Element>> order_;
    bool stopped_ = false;
};

}  // namespace

StructureSearch::StructureSearch(CategoryPtr shape, std::vector<std::size_t> sizes)
    : shape_(std::move(shape)), sizes_(std::move(sizes)) {
    if (sizes_.size() != shape_->num_objects()) throw ValidationError("level size list has wrong length");
    for (std::size_t s : sizes_)
        if (s == 0) throw ValidationError("pointed sets must be non-empty");
    const std::size_t m = shape_->num_morphisms();
    candidates_.resize(m);
    for (MorphismId f = 0; f < m; ++f) {
        if (shape_->is_identity(f)) continue;
        std::size_t n = sizes_[shape_->cod(f)];
        candidates_[f].resize(n);
        candidates_[f][0] = {kBase};
        for (Element e = 1; e < n; ++e) {
            candidates_[f][e].resize(sizes_[shape_->dom(f)]);
            std::iota(candidates_[f][e].begin(), candidates_[f][e].end(), Element{0});
        }
    }
}

StructureSearch& StructureSearch::allow(MorphismId f, Element e, const std::vector<Element>& values) {
    if (shape_->is_identity(f)) throw ValidationError("identity restrictions are fixed");
    auto& current = candidates_.at(f).at(e);
    intersect(current, values);
    if (current.empty()) infeasible_ = true;
    return *this;
}

StructureSearch& StructureSearch::shuffle(std::mt19937_64& rng) {
    for (auto& per_morphism : candidates_)
        for (auto& list : per_morphism) std::shuffle(list.begin(), list.end(), rng);
    return *this;
}

void StructureSearch::run(const Visitor& visit) const {
    if (infeasible_) return;
    StructureSolver solver(*shape_, sizes_, candidates_, visit);
    solver.solve();
}

std::vector<PresheafPtr> StructureSearch::all() const {
    std::vector<PresheafPtr> out;
    run([&](const std::vector<Table>& tables) {
        out.push_back(std::make_shared<const PointedPresheaf>(shape_, sizes_, tables));
        return true;
    });
    return out;
}

std::optional<PresheafPtr> StructureSearch::first() const {
    std::optional<PresheafPtr> out;
    run([&](const std::vector<Table>& tables) {
        out = std::make_shared<const PointedPresheaf>(shape_, sizes_, tables);
        return false;
    });
    return out;
}

}  // namespace topaction
