// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "topaction/actions.hpp"
#include "topaction/cli.hpp"
#include "topaction/cover.hpp"
#include "topaction/exactness.hpp"
#include "topaction/io.hpp"
#include "topaction/pare.hpp"
#include "topaction/site.hpp"

using namespace topaction;
using namespace testing_support;

namespace {

const std::string kData = TOPACTION_TEST_DATA;

/// Outcome of one criterion: pass flag, a short detail string and the slowest
/// single instance, checked against the per-criterion time limit.
struct Result {
    bool pass = true;
    std::string detail;
    double slowest_instance = 0.0;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = "first failure: " + what;
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<CategoryPtr> criterion_shapes() {
    return {build_terminal(), build_arrow(), build_grid_poset(1).category()};
}

Result normality_characterization() {
    Result r;
    std::mt19937_64 rng(1001);
    std::size_t cases = 0, normal = 0;
    for (const CategoryPtr& shape : criterion_shapes())
        for (int round = 0; round < 200; ++round) {
            PresheafPtr b = gen::random_presheaf(shape, 5, rng);
            PresheafMorphism f = [&] {
                // half the cases are normal covers with a random kernel, the rest arbitrary maps
                if (round % 2 == 0) {
                    std::vector<std::size_t> max_kernel(shape->num_objects(), 2);
                    NormalCover c = random_normal_cover(b, max_kernel, rng);
                    if (c.domain().total_size() <= 5 * shape->num_objects()) return c.map();
                }
                return random_morphism(gen::random_presheaf(shape, 5, rng), b, rng);
            }();
            const bool fast = is_normal_epi(f).has_value();
            normal += fast;
            ++cases;
            r.require(fast == is_normal_epi_by_cokernel(f), "characterizations disagree");
            r.require(fast == oracle::normal_epi(f), "oracle disagrees");
        }
    r.detail = r.pass ? std::to_string(cases) + " morphisms, " + std::to_string(normal) + " normal" : r.detail;
    return r;
}

Result slice_completeness() {
    Result r;
    std::mt19937_64 rng(1002);
    std::size_t equalizers = 0, pullbacks = 0;
    for (const CategoryPtr& shape : criterion_shapes())
        for (int round = 0; round < 60; ++round) {
            PresheafPtr x = gen::random_presheaf(shape, 3, rng);
            std::vector<std::size_t> max_kernel(shape->num_objects(), 2);
            NormalCover from = random_normal_cover(x, max_kernel, rng);
            NormalCover to = random_normal_cover(x, max_kernel, rng);
            auto maps = slice_morphisms(from, to);
            if (maps.size() >= 2) {
                const std::size_t i = rng() % maps.size(), j = rng() % maps.size();
                r.require(is_normal_epi(compose(from.map(), equalizer(maps[i], maps[j]))).has_value(),
                          "equalizer composite not normal");
                ++equalizers;
            }
            std::vector<PresheafMorphism> family{from.map(), to.map()};
            const int extra = std::uniform_int_distribution<int>(0, 2)(rng);
            for (int k = 0; k < extra; ++k) family.push_back(random_normal_cover(x, max_kernel, rng).map());
            WidePullback p = wide_pullback(family);
            r.require(is_normal_epi(p.to_base).has_value(), "wide pullback not normal");
            r.require(oracle::wide_pullback_sizes(family) == p.apex->sizes(), "wide pullback sizes");
            ++pullbacks;
        }
    r.require(equalizers + pullbacks >= 100, "fewer than 100 instances");
    if (r.pass) r.detail = std::to_string(equalizers) + " equalizer composites, " + std::to_string(pullbacks) + " wide pullbacks";
    return r;
}

Result initial_cover_correctness() {
    Result r;
    std::mt19937_64 rng(1003);
    std::size_t instances = 0;
    for (const CategoryPtr& shape : {build_terminal(), build_arrow()})
        for (const PresheafPtr& x : enumerate_presheaves(shape, 3)) {
            const auto start = std::chrono::steady_clock::now();
            const SizeBound bound = default_bound(*x);
            InitialNormalCover c = initial_cover_generic(x, bound);
            for (const NormalCover& member : solution_set(x, bound))
                r.require(count_slice_morphisms(c.cover, member) == 1, "not unique into a solution-set member");
            std::vector<std::size_t> max_kernel(shape->num_objects(), 3);
            for (int i = 0; i < 50; ++i)
                r.require(oracle::slice_count(c.chi(), random_normal_cover(x, max_kernel, rng).map()) == 1,
                          "not unique into a random cover");
            if (shape->num_objects() == 1)
                r.require(is_isomorphism(c.chi()), "terminal cover is not the identity");
            else
                r.require(slice_isomorphism(c.cover, closed_form_arrow(x).cover).has_value(),
                          "differs from the closed form");
            r.slowest_instance = std::max(r.slowest_instance, seconds_since(start));
            ++instances;
        }
    r.require(r.slowest_instance <= 60.0, "instance over 60 s");
    if (r.pass) r.detail = std::to_string(instances) + " presheaves";
    return r;
}

Result representability() {
    Result r;
    std::size_t pairs = 0;
    for (const CategoryPtr& shape : {build_terminal(), build_arrow()}) {
        auto pool = enumerate_presheaves(shape, 3);
        for (const PresheafPtr& x : pool) {
            InitialNormalCover c = initial_cover_generic(x, default_bound(*x));
            RepresentabilityReport report = verify_representability(c, pool);
            for (const auto& e : report.entries) {
                r.require(e.ok(), e.failures.empty() ? "entry failed" : e.failures.front());
                r.require(e.act_count == hom_count(c.domain_ptr(), pool[e.pool_index]), "count differs from the oracle");
                ++pairs;
            }
        }
    }
    if (r.pass) r.detail = std::to_string(pairs) + " (X,G) pairs";
    return r;
}

Result terminal_specialization() {
    Result r;
    for (std::size_t x = 1; x <= 3; ++x)
        for (std::size_t g = 1; g <= 4; ++g) {
            std::size_t expect = 1;
            for (std::size_t i = 1; i < x; ++i) expect *= g;
            r.require(enumerate_actions(pointed_set(x), pointed_set(g)).classes.size() == expect,
                      "|X|=" + std::to_string(x) + " |G|=" + std::to_string(g));
        }
    if (r.pass) r.detail = "12 pairs";
    return r;
}

Result kernel_retract_remark() {
    Result r;
    for (std::size_t fibre = 2; fibre <= 4; ++fibre) {
        Table f(fibre + 1, 0);
        r.require(!kernel_is_retract(closed_form_arrow(arrow_presheaf(1, f))), "retract found");
        r.require(!kernel_is_retract(initial_cover_generic(arrow_presheaf(1, f), default_bound(*arrow_presheaf(1, f)))),
                  "retract found for the generic cover");
    }
    if (r.pass) r.detail = "fibres of size 2..4";
    return r;
}

Result sheaf_counterexample() {
    Result r;
    for (std::size_t n = 1; n <= 5; ++n) {
        GridSite site(n);
        r.require(is_sheaf(site, *build_T(site)), "T is not a sheaf");
        for (std::size_t m = 0; m <= n; ++m) {
            PresheafMorphism f = build_f(site, m);
            r.require(is_sheaf(site, f.source()), "A_m is not a sheaf");
            r.require(sheaf_normal_epi(site, f), "f_m is not a sheaf normal epi");
            r.require(find_retraction(kernel(f).inclusion()).has_value(), "kernel is not a retract");
            auto index = escape_index(site, m);
            r.require(index && *index == m, "escape index for n=" + std::to_string(n) + " M=" + std::to_string(m));
        }
    }
    if (r.pass) r.detail = "n <= 5, escape_index(M) = M";
    return r;
}

Result separator_counterexample() {
    Result r;
    for (std::size_t k = 2; k <= 6; ++k)
        r.require(min_separator_size(k) == k + 1, "k=" + std::to_string(k));
    if (r.pass) r.detail = "k = 2..6";
    return r;
}

Result cli_round_trip() {
    Result r;
    std::mt19937_64 rng(1009);
    std::size_t checked = 0;
    const std::vector<NamedCategory> shapes{named_terminal(), named_arrow(), named_grid(1), named_grid(2)};
    for (const NamedCategory& shape : shapes) {
        const std::string cat_text = serialize_category(shape);
        r.require(serialize_category(parse_category(cat_text)) == cat_text, "category round trip");
        for (int round = 0; round < 25; ++round) {
            NamedPresheaf x = named_presheaf(shape, gen::random_presheaf(shape.category, 4, rng));
            const std::string text = serialize_presheaf(x);
            NamedPresheaf back = parse_presheaf(text);
            r.require(*back.presheaf == *x.presheaf && serialize_presheaf(back) == text, "presheaf round trip");
            NamedPresheaf y = named_presheaf(shape, gen::random_presheaf(shape.category, 3, rng));
            PresheafMorphism h = random_morphism(x.presheaf, y.presheaf, rng);
            const std::string mtext = serialize_morphism(h, x, y);
            r.require(parse_morphism(mtext, x, y) == h, "morphism round trip");
            ++checked;
        }
    }
    const std::vector<std::vector<std::string>> commands{
        {"cover", kData + "/x_arrow.psh"},
        {"actions", kData + "/x_arrow.psh", kData + "/pool_arrow/g4.psh"},
        {"verify", kData + "/x_arrow.psh", "--pool", kData + "/pool_arrow"},
        {"sheaf-demo", "--max-index", "3", "--grid", "3"},
        {"pare-demo", "--k", "4"},
        {"emit-grid", "3"},
    };
    for (const auto& args : commands) {
        std::ostringstream first, second, err;
        const int s1 = run(args, first, err);
        const int s2 = run(args, second, err);
        r.require(s1 == kExitOk && s2 == kExitOk, args.front() + " failed: " + err.str());
        r.require(first.str() == second.str(), args.front() + " is not deterministic");
    }
    if (r.pass) r.detail = std::to_string(checked) + " round trips, " + std::to_string(commands.size()) + " commands";
    return r;
}

struct Criterion {
    int number;
    const char* name;
    double limit_seconds;  // 0: no limit
    std::function<Result()> check;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "normality characterization", 10.0, normality_characterization},
        {2, "slice completeness", 0.0, slice_completeness},
        {3, "initial cover correctness", 0.0, initial_cover_correctness},
        {4, "representability bijection", 0.0, representability},
        {5, "terminal specialization", 0.0, terminal_specialization},
        {6, "kernel retract remark", 0.0, kernel_retract_remark},
        {7, "sheaf counterexample", 30.0, sheaf_counterexample},
        {8, "separator counterexample", 60.0, separator_counterexample},
        {9, "cli round trip and determinism", 0.0, cli_round_trip},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c.check();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const double elapsed = seconds_since(start);
        if (c.limit_seconds > 0 && elapsed > c.limit_seconds) {
            r.pass = false;
            r.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
        }
        std::printf("criterion %d %-32s %s  %.2fs  %s\n", c.number, c.name, r.pass ? "PASS" : "FAIL", elapsed,
                    r.detail.c_str());
        std::fflush(stdout);
        failures += !r.pass;
    }
    return failures == 0 ? 0 : 1;
}
