#include "topaction/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "topaction/actions.hpp"
#include "topaction/error.hpp"
#include "topaction/io.hpp"
#include "topaction/pare.hpp"
#include "topaction/site.hpp"

namespace topaction {

namespace {

class InputError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

NamedPresheaf load_presheaf(const std::string& path) {
    try {
        return parse_presheaf(read_file(path));
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    } catch (const ValidationError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string join_sizes(const std::vector<std::size_t>& sizes) {
    std::ostringstream out;
    for (std::size_t i = 0; i < sizes.size(); ++i) out << (i ? " " : "") << sizes[i];
    return out.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Elements outside the kernel take the name of their image; kernel elements are k1, k2, ...
NamedPresheaf name_cover(const NamedPresheaf& x, const PresheafMorphism& chi) {
    const PointedPresheaf& a = chi.source();
    std::vector<std::vector<std::string>> names(a.shape().num_objects());
    for (ObjectId c = 0; c < names.size(); ++c) {
        const auto& base = x.element_names[c];
        std::size_t next = 1;
        names[c].push_back("*");
        for (Element e = 1; e < a.size(c); ++e) {
            if (chi(c, e) != kBase) {
                names[c].push_back(base[chi(c, e)]);
                continue;
            }
            std::string name;
            do name = "k" + std::to_string(next++);
            while (std::find(base.begin(), base.end(), name) != base.end());
            names[c].push_back(name);
        }
    }
    return NamedPresheaf{x.shape, chi.source_ptr(), std::move(names)};
}

struct CoverChoice {
    std::string method = "generic";
    std::optional<std::size_t> bound;
};

void add_cover_options(CLI::App* cmd, CoverChoice& choice) {
    cmd->add_option("--method", choice.method, "generic, arrow or boolean")
        ->check(CLI::IsMember({"generic", "arrow", "boolean"}));
    cmd->add_option("--bound", choice.bound, "uniform level-size bound for the generic construction");
}

SizeBound bound_for(const PointedPresheaf& x, const CoverChoice& choice) {
    return choice.bound ? uniform_bound(x, *choice.bound) : default_bound(x);
}

InitialNormalCover build_cover(const PresheafPtr& x, const CoverChoice& choice) {
    if (choice.method == "arrow") return closed_form_arrow(x);
    if (choice.method == "boolean") return closed_form_boolean(x);
    return initial_cover_generic(x, bound_for(*x, choice));
}

void print_cover_header(std::ostream& out, const NamedPresheaf& x, const CoverChoice& choice) {
    out << "method=" << choice.method << '\n';
    out << "shape=" << (x.shape.builtin.empty() ? "custom" : x.shape.builtin) << '\n';
    out << "x_sizes=" << join_sizes(x.presheaf->sizes()) << '\n';
    if (choice.method == "generic")
        out << "bound=" << join_sizes(bound_for(*x.presheaf, choice)) << '\n';
}

std::optional<IsoMode> parse_iso_mode(const std::string& s) {
    if (s == "uvw") return IsoMode::kUVW;
    if (s == "uw") return IsoMode::kUW;
    return std::nullopt;
}

std::string describe_morphism(const PresheafMorphism& m, const NamedPresheaf& target) {
    std::ostringstream out;
    for (ObjectId c = 0; c < m.components().size(); ++c) {
        out << (c ? " | " : "") << target.shape.object_names[c] << ":";
        for (Element e : m.component(c)) out << ' ' << target.element_names[c][e];
    }
    return out.str();
}

int cmd_cover(const std::string& path, const CoverChoice& choice, std::ostream& out) {
    NamedPresheaf x = load_presheaf(path);
    InitialNormalCover cover = build_cover(x.presheaf, choice);
    NamedPresheaf named = name_cover(x, cover.chi());

    out << "command=cover\n";
    print_cover_header(out, x, choice);
    out << "cover_sizes=" << join_sizes(cover.domain_ptr()->sizes()) << '\n';
    std::vector<std::size_t> kernel_sizes;
    for (ObjectId c = 0; c < x.presheaf->shape().num_objects(); ++c) kernel_sizes.push_back(cover.kernel.size(c));
    out << "kernel_sizes=" << join_sizes(kernel_sizes) << '\n';
    out << "kernel_retract=" << yes_no(kernel_is_retract(cover)) << '\n';
    if (choice.method == "generic") {
        std::optional<InitialNormalCover> closed;
        if (x.shape.builtin == "arrow") closed = closed_form_arrow(x.presheaf);
        if (x.shape.builtin == "terminal") closed = closed_form_boolean(x.presheaf);
        if (closed) out << "closed_form_match=" << yes_no(slice_isomorphism(cover.cover, closed->cover).has_value()) << '\n';
    }
    out << "\n# cover domain\n" << serialize_presheaf(named);
    out << "\n# chi\n" << serialize_morphism(cover.chi(), named, x);
    return kExitOk;
}

int cmd_actions(const std::string& x_path, const std::string& g_path, const std::string& mode_name,
                const CoverChoice& choice, std::ostream& out, std::ostream& err) {
    NamedPresheaf x = load_presheaf(x_path);
    NamedPresheaf g = load_presheaf(g_path);
    if (!(x.presheaf->shape() == g.presheaf->shape())) throw InputError("X and G have different shapes");
    const IsoMode mode = *parse_iso_mode(mode_name);

    InitialNormalCover cover = build_cover(x.presheaf, choice);
    ActionSet acts = enumerate_actions(x.presheaf, g.presheaf, mode);
    const std::size_t homs = hom_count(cover.domain_ptr(), g.presheaf);

    out << "command=actions\n";
    print_cover_header(out, x, choice);
    out << "g_sizes=" << join_sizes(g.presheaf->sizes()) << '\n';
    out << "iso_mode=" << mode_name << '\n';
    out << "act_count=" << acts.classes.size() << '\n';
    out << "hom_count=" << homs << '\n';
    out << "counts_match=" << yes_no(acts.classes.size() == homs) << '\n';
    out << "\n" << std::left << std::setw(7) << "class" << std::setw(14) << "middle_sizes" << "alpha\n";
    for (std::size_t i = 0; i < acts.classes.size(); ++i) {
        const LeftSplitSequence& s = acts.classes[i];
        out << std::setw(7) << i << std::setw(14) << join_sizes(s.middle().sizes())
            << describe_morphism(alpha(s, cover), g) << '\n';
    }
    if (acts.classes.size() != homs) {
        err << "verification failed: act_count " << acts.classes.size() << " != hom_count " << homs << '\n';
        return kExitVerificationFailure;
    }
    return kExitOk;
}

int cmd_verify(const std::string& x_path, const std::string& pool_dir, const std::string& mode_name,
               const CoverChoice& choice, bool naturality, std::ostream& out, std::ostream& err) {
    NamedPresheaf x = load_presheaf(x_path);
    namespace fs = std::filesystem;
    if (!fs::is_directory(pool_dir)) throw InputError("pool '" + pool_dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(pool_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".psh") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InputError("pool '" + pool_dir + "' has no .psh files");

    std::vector<PresheafPtr> pool;
    for (const auto& file : files) {
        NamedPresheaf g = load_presheaf(file.string());
        if (!(g.presheaf->shape() == x.presheaf->shape()))
            throw InputError(file.filename().string() + ": shape differs from X");
        pool.push_back(g.presheaf);
    }

    RepresentabilityOptions options;
    options.mode = *parse_iso_mode(mode_name);
    options.check_naturality = naturality;
    InitialNormalCover cover = build_cover(x.presheaf, choice);
    RepresentabilityReport report = verify_representability(cover, pool, options);

    out << "command=verify\n";
    print_cover_header(out, x, choice);
    out << "iso_mode=" << mode_name << '\n';
    out << "pool_size=" << pool.size() << '\n';
    out << "naturality_checked=" << yes_no(naturality) << '\n';
    out << "result=" << (report.ok() ? "ok" : "fail") << "\n\n";
    for (const auto& e : report.entries) {
        const bool roundtrip = e.alpha_beta_identity && e.beta_alpha_iso;
        out << "G=" << files[e.pool_index].filename().string() << " act_count=" << e.act_count
            << ", hom_count=" << e.hom_count << ", roundtrip=" << (roundtrip ? "ok" : "fail")
            << ", naturality=" << (!naturality ? "skipped" : e.naturality ? "ok" : "fail") << '\n';
    }
    if (report.ok()) return kExitOk;
    for (const auto& e : report.entries)
        for (const auto& failure : e.failures)
            err << "counterexample: " << files[e.pool_index].filename().string() << ": " << failure << '\n';
    return kExitVerificationFailure;
}

int cmd_sheaf_demo(std::size_t max_index, std::size_t n, std::ostream& out, std::ostream& err) {
    if (n == 0) throw InputError("--grid must be at least 1");
    if (max_index > n) throw InputError("--max-index must not exceed --grid");
    GridSite site(n);
    bool t_sheaf = is_sheaf(site, *build_T(site));
    bool a_sheaf = true, epi = true, normal = true, retract = true;
    std::vector<std::string> failures;
    for (std::size_t m = 0; m <= max_index; ++m) {
        PresheafMorphism f = build_f(site, m);
        const std::string tag = "m=" + std::to_string(m);
        if (!is_sheaf(site, f.source())) a_sheaf = false, failures.push_back(tag + ": A_m is not a sheaf");
        if (!sheaf_epi(site, f)) epi = false, failures.push_back(tag + ": f_m is not a sheaf epimorphism");
        if (!sheaf_normal_epi(site, f)) normal = false, failures.push_back(tag + ": f_m is not normal");
        if (!find_retraction(kernel(f).inclusion()))
            retract = false, failures.push_back(tag + ": kernel of f_m is not a retract");
    }
    if (!t_sheaf) failures.push_back("T is not a sheaf");

    std::vector<std::optional<std::size_t>> escapes;
    for (std::size_t m = 0; m <= max_index; ++m) escapes.push_back(escape_index(site, m));
    auto show = [](const std::optional<std::size_t>& e) { return e ? std::to_string(*e) : std::string("escapes"); };

    out << "command=sheaf-demo\n";
    out << "grid=" << n << '\n';
    out << "max_index=" << max_index << '\n';
    out << "is_sheaf_T=" << yes_no(t_sheaf) << '\n';
    out << "is_sheaf_A=" << yes_no(a_sheaf) << '\n';
    out << "sheaf_epi_f=" << yes_no(epi) << '\n';
    out << "sheaf_normal_epi_f=" << yes_no(normal) << '\n';
    out << "kernel_retract=" << yes_no(retract) << '\n';
    out << "escape_index=" << show(escapes.back()) << '\n';
    out << "\n" << std::left << std::setw(4) << "M" << "escape_index\n";
    for (std::size_t m = 0; m <= max_index; ++m) out << std::setw(4) << m << show(escapes[m]) << '\n';

    if (failures.empty()) return kExitOk;
    for (const auto& f : failures) err << "counterexample: " << f << '\n';
    return kExitVerificationFailure;
}

int cmd_pare_demo(std::size_t k, std::ostream& out, std::ostream& err) {
    if (k < 2) throw InputError("--k must be at least 2");
    std::vector<std::size_t> sizes;
    std::vector<std::string> failures;
    std::size_t witnesses = 0, separating = 0;
    for (std::size_t j = 2; j <= k; ++j) {
        SeparationInstance instance = build_separation(j);
        std::vector<SeparatorCandidate> found = separating_quotients(instance);
        if (found.empty()) throw VerificationError("no quotient separates the witnesses for k=" + std::to_string(j));
        std::size_t best = found.front().lower_size;
        for (const auto& c : found) {
            best = std::min(best, c.lower_size);
            std::vector<Element> seen(c.blocks);
            std::sort(seen.begin(), seen.end());
            if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
                failures.push_back("k=" + std::to_string(j) + ": a separating quotient merges lower elements");
        }
        sizes.push_back(best);
        witnesses = instance.witnesses.size();
        separating = found.size();
    }

    out << "command=pare-demo\n";
    out << "k=" << k << '\n';
    out << "witnesses=" << witnesses << '\n';
    out << "separating_quotients=" << separating << '\n';
    out << "min_separator_size=" << sizes.back() << '\n';
    out << "lower_injective=" << yes_no(failures.empty()) << '\n';
    out << "\n" << std::left << std::setw(4) << "k" << "min_separator_size\n";
    for (std::size_t j = 2; j <= k; ++j) out << std::setw(4) << j << sizes[j - 2] << '\n';

    if (failures.empty()) return kExitOk;
    for (const auto& f : failures) err << "counterexample: " << f << '\n';
    return kExitVerificationFailure;
}

int cmd_emit_grid(std::size_t n, std::ostream& out) {
    if (n == 0) throw InputError("grid size must be at least 1");
    out << "# grid " << n << ": (i,j) <= (i',j') iff i >= i' and j >= j'\n";
    out << serialize_category(named_grid(n));
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Initial normal covers, representability of actions and pointed presheaves", "topaction"};
    app.require_subcommand(1, 1);

    CoverChoice cover_choice;
    std::string x_path, g_path, pool_dir, iso_mode = "uvw";
    std::size_t max_index = 0, grid = 0, k = 0, emit_n = 0;
    bool skip_naturality = false;

    CLI::App* cover = app.add_subcommand("cover", "compute the initial normal cover of X");
    cover->add_option("x", x_path, "presheaf file")->required();
    add_cover_options(cover, cover_choice);

    CLI::App* actions = app.add_subcommand("actions", "enumerate actions of X on G");
    actions->add_option("x", x_path, "presheaf file for X")->required();
    actions->add_option("g", g_path, "presheaf file for G")->required();
    actions->add_option("--iso-mode", iso_mode, "uvw or uw")->check(CLI::IsMember({"uvw", "uw"}));
    add_cover_options(actions, cover_choice);

    CLI::App* verify = app.add_subcommand("verify", "check representability against a pool of objects");
    verify->add_option("x", x_path, "presheaf file for X")->required();
    verify->add_option("--pool", pool_dir, "directory of .psh files")->required();
    verify->add_option("--iso-mode", iso_mode, "uvw or uw")->check(CLI::IsMember({"uvw", "uw"}));
    verify->add_flag("--skip-naturality", skip_naturality, "skip the naturality check");
    add_cover_options(verify, cover_choice);

    CLI::App* sheaf = app.add_subcommand("sheaf-demo", "the grid-locale sheaves and their escape index");
    sheaf->add_option("--max-index", max_index, "largest family index M")->required();
    sheaf->add_option("--grid", grid, "grid size N")->required();

    CLI::App* pare = app.add_subcommand("pare-demo", "minimal separating quotient sizes");
    pare->add_option("--k", k, "truncation size")->required();

    CLI::App* emit = app.add_subcommand("emit-grid", "print the grid poset as a category file");
    emit->add_option("n", emit_n, "grid size")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        if (cover->parsed()) return cmd_cover(x_path, cover_choice, out);
        if (actions->parsed()) return cmd_actions(x_path, g_path, iso_mode, cover_choice, out, err);
        if (verify->parsed()) return cmd_verify(x_path, pool_dir, iso_mode, cover_choice, !skip_naturality, out, err);
        if (sheaf->parsed()) return cmd_sheaf_demo(max_index, grid, out, err);
        if (pare->parsed()) return cmd_pare_demo(k, out, err);
        if (emit->parsed()) return cmd_emit_grid(emit_n, out);
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << '\n';
        return kExitVerificationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace topaction
