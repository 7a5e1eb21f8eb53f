#include "topaction/io.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "topaction/error.hpp"

namespace topaction {

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

struct Line {
    std::vector<Token> tokens;
    std::size_t number;
    std::size_t end_column;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t stop = text.find('\n', start);
        if (stop == std::string_view::npos) stop = text.size();
        std::string_view raw = text.substr(start, stop - start);
        ++number;
        Line line{{}, number, raw.size() + 1};
        std::size_t i = 0;
        while (i < raw.size()) {
            char c = raw[i];
            if (is_space(c)) {
                ++i;
                continue;
            }
            if (c == '#') break;
            if (c == ':' || c == '=') {
                line.tokens.push_back({std::string(1, c), number, i + 1});
                ++i;
                continue;
            }
            if (raw.substr(i, 2) == "->") {
                line.tokens.push_back({"->", number, i + 1});
                i += 2;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !is_space(raw[j]) && raw[j] != ':' && raw[j] != '=' && raw[j] != '#' &&
                   raw.substr(j, 2) != "->")
                ++j;
            line.tokens.push_back({std::string(raw.substr(i, j - i)), number, i + 1});
            i = j;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (stop == text.size()) break;
        start = stop + 1;
    }
    return lines;
}

bool is_punctuation(const std::string& s) { return s == ":" || s == "=" || s == "->"; }

class Cursor {
public:
    explicit Cursor(const Line& line) : line_(line) {}

    const Token& next_token(const char* what) {
        if (pos_ >= line_.tokens.size()) fail_at_end(std::string("expected ") + what);
        return line_.tokens[pos_++];
    }
    const Token& name(const char* what) {
        const Token& t = next_token(what);
        if (is_punctuation(t.text)) fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
        return t;
    }
    void expect(const char* punct) {
        const Token& t = next_token((std::string("'") + punct + "'").c_str());
        if (t.text != punct) fail(t, std::string("expected '") + punct + "', found '" + t.text + "'");
    }
    bool done() const { return pos_ >= line_.tokens.size(); }
    void finish() {
        if (!done()) fail(line_.tokens[pos_], "unexpected '" + line_.tokens[pos_].text + "'");
    }

    [[noreturn]] static void fail(const Token& t, const std::string& message) {
        throw ParseError(t.line, t.column, message);
    }
    [[noreturn]] void fail_at_end(const std::string& message) const {
        throw ParseError(line_.number, line_.end_column, message);
    }

private:
    const Line& line_;
    std::size_t pos_ = 0;
};

template <typename Names>
std::optional<std::size_t> find_name(const Names& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

// Accumulates category declarations, possibly interleaved with other lines.
class CategoryBuilder {
public:
    bool started() const { return objects_declared_; }

    bool accept(const Line& line) {
        const std::string& head = line.tokens.front().text;
        if (head == "objects")
            objects(line);
        else if (head == "mor")
            morphism(line);
        else if (head == "compose")
            composite(line);
        else
            return false;
        return true;
    }

    NamedCategory finish(const Token* anchor) {
        if (!objects_declared_) {
            if (anchor) Cursor::fail(*anchor, "no objects declared");
            throw ParseError(1, 1, "no objects declared");
        }
        const std::size_t n = objects_.size();
        NamedCategory out;
        out.object_names = objects_;
        std::vector<Arrow> arrows;
        std::vector<MorphismId> identities;
        for (ObjectId c = 0; c < n; ++c) {
            arrows.push_back({c, c});
            identities.push_back(c);
            out.morphism_names.push_back("id_" + objects_[c]);
        }
        for (const auto& m : mors_) {
            arrows.push_back({m.dom, m.cod});
            out.morphism_names.push_back(m.name);
        }
        const std::size_t total = arrows.size();
        std::vector<MorphismId> table(total * total, kNoMorphism);
        for (MorphismId f = 0; f < total; ++f) {
            table[identities[arrows[f].cod] * total + f] = f;
            table[f * total + identities[arrows[f].dom]] = f;
        }
        for (const auto& c : composites_) table[c.g * total + c.f] = c.h;
        for (MorphismId g = n; g < total; ++g)
            for (MorphismId f = n; f < total; ++f)
                if (arrows[f].cod == arrows[g].dom && table[g * total + f] == kNoMorphism)
                    throw ValidationError("composition not total: missing " + out.morphism_names[g] + "∘" +
                                          out.morphism_names[f]);
        out.category = std::make_shared<const FiniteCategory>(n, std::move(arrows), std::move(identities), std::move(table));
        return out;
    }

private:
    struct Mor {
        std::string name;
        ObjectId dom;
        ObjectId cod;
    };
    struct Composite {
        MorphismId g, f, h;
    };

    void objects(const Line& line) {
        Cursor cur(line);
        const Token& head = cur.name("objects");
        if (objects_declared_) Cursor::fail(head, "objects declared twice");
        cur.expect(":");
        while (!cur.done()) {
            const Token& t = cur.name("object name");
            if (find_name(objects_, t.text)) Cursor::fail(t, "duplicate object '" + t.text + "'");
            objects_.push_back(t.text);
        }
        if (objects_.empty()) cur.fail_at_end("expected at least one object");
        objects_declared_ = true;
    }

    ObjectId object(const Token& t) const {
        auto c = find_name(objects_, t.text);
        if (!c) Cursor::fail(t, "unknown object '" + t.text + "'");
        return static_cast<ObjectId>(*c);
    }

    MorphismId mor(const Token& t) const {
        for (std::size_t i = 0; i < mors_.size(); ++i)
            if (mors_[i].name == t.text) return static_cast<MorphismId>(objects_.size() + i);
        if (t.text.rfind("id_", 0) == 0 && find_name(objects_, t.text.substr(3)))
            Cursor::fail(t, "identity '" + t.text + "' cannot appear in a compose line");
        Cursor::fail(t, "unknown morphism '" + t.text + "'");
    }

    const Mor& info(MorphismId m) const { return mors_[m - objects_.size()]; }

    void morphism(const Line& line) {
        Cursor cur(line);
        const Token& head = cur.name("mor");
        if (!objects_declared_) Cursor::fail(head, "morphism declared before objects");
        if (!composites_.empty()) Cursor::fail(head, "morphism declared after compose lines");
        const Token& name = cur.name("morphism name");
        if (name.text.rfind("id_", 0) == 0) Cursor::fail(name, "names starting with id_ are reserved for identities");
        for (const auto& m : mors_)
            if (m.name == name.text) Cursor::fail(name, "duplicate morphism '" + name.text + "'");
        cur.expect(":");
        ObjectId dom = object(cur.name("domain object"));
        cur.expect("->");
        ObjectId cod = object(cur.name("codomain object"));
        cur.finish();
        mors_.push_back({name.text, dom, cod});
    }

    void composite(const Line& line) {
        Cursor cur(line);
        cur.name("compose");
        const Token& gt = cur.name("morphism name");
        const Token& ft = cur.name("morphism name");
        cur.expect("=");
        const Token& ht = cur.name("morphism name");
        cur.finish();
        MorphismId g = mor(gt), f = mor(ft), h = mor(ht);
        if (info(f).cod != info(g).dom)
            Cursor::fail(ft, "'" + gt.text + "' and '" + ft.text + "' are not composable");
        if (info(h).dom != info(f).dom || info(h).cod != info(g).cod)
            Cursor::fail(ht, "'" + ht.text + "' does not have the endpoints of " + gt.text + "∘" + ft.text);
        for (const auto& c : composites_)
            if (c.g == g && c.f == f) Cursor::fail(gt, "composite " + gt.text + "∘" + ft.text + " given twice");
        composites_.push_back({g, f, h});
    }

    bool objects_declared_ = false;
    std::vector<std::string> objects_;
    std::vector<Mor> mors_;
    std::vector<Composite> composites_;
};

NamedCategory builtin_shape(const Line& line) {
    Cursor cur(line);
    cur.name("shape");
    cur.expect(":");
    const Token& kind = cur.name("shape name");
    NamedCategory out;
    if (kind.text == "terminal") {
        out = named_terminal();
    } else if (kind.text == "arrow") {
        out = named_arrow();
    } else if (kind.text == "grid") {
        const Token& size = cur.name("grid size");
        std::size_t n = 0;
        if (size.text.empty() || size.text.size() > 3 ||
            !std::all_of(size.text.begin(), size.text.end(), [](char c) { return c >= '0' && c <= '9'; }))
            Cursor::fail(size, "grid size must be a small positive integer");
        n = std::stoul(size.text);
        if (n == 0) Cursor::fail(size, "grid size must be at least 1");
        out = named_grid(n);
    } else {
        Cursor::fail(kind, "unknown shape '" + kind.text + "' (expected terminal, arrow or grid N)");
    }
    cur.finish();
    return out;
}

NamedPresheaf build_presheaf(const NamedCategory& shape, const std::vector<const Line*>& body, std::size_t last_line) {
    const FiniteCategory& cat = *shape.category;
    const std::size_t n = cat.num_objects();
    const std::size_t m_count = cat.num_morphisms();

    std::vector<std::vector<std::string>> names(n);
    std::vector<std::vector<Token>> name_tokens(n);
    std::vector<bool> declared(n, false);

    auto object = [&](const Token& t) {
        auto c = find_name(shape.object_names, t.text);
        if (!c) Cursor::fail(t, "unknown object '" + t.text + "'");
        return static_cast<ObjectId>(*c);
    };

    for (const Line* line : body) {
        if (line->tokens.front().text != "at") continue;
        Cursor cur(*line);
        cur.name("at");
        const Token& obj = cur.name("object name");
        ObjectId c = object(obj);
        if (declared[c]) Cursor::fail(obj, "level '" + obj.text + "' declared twice");
        declared[c] = true;
        cur.expect(":");
        const Token& base = cur.name("'*'");
        if (base.text != "*") Cursor::fail(base, "a level must start with the basepoint '*'");
        names[c].push_back("*");
        name_tokens[c].push_back(base);
        while (!cur.done()) {
            const Token& t = cur.name("element name");
            if (find_name(names[c], t.text)) Cursor::fail(t, "duplicate element '" + t.text + "'");
            names[c].push_back(t.text);
            name_tokens[c].push_back(t);
        }
    }
    for (ObjectId c = 0; c < n; ++c)
        if (!declared[c]) throw ParseError(last_line, 1, "no level declared for object '" + shape.object_names[c] + "'");

    constexpr Element kUnset = std::numeric_limits<Element>::max();
    std::vector<Table> tables(m_count);
    // Where each explicit entry came from, for error positions.
    std::vector<std::vector<std::optional<Token>>> origin(m_count);
    for (MorphismId f = 0; f < m_count; ++f) {
        const std::size_t from = names[cat.cod(f)].size();
        tables[f].assign(from, kUnset);
        origin[f].assign(from, std::nullopt);
        tables[f][0] = kBase;
        if (cat.is_identity(f))
            for (Element e = 0; e < from; ++e) tables[f][e] = e;
    }

    for (const Line* line : body) {
        if (line->tokens.front().text != "map") continue;
        Cursor cur(*line);
        cur.name("map");
        const Token& mt = cur.name("morphism name");
        auto f = find_name(shape.morphism_names, mt.text);
        if (!f) Cursor::fail(mt, "unknown morphism '" + mt.text + "'");
        if (cat.is_identity(static_cast<MorphismId>(*f))) Cursor::fail(mt, "identity restrictions are implicit");
        cur.expect(":");
        const Token& at = cur.name("element name");
        cur.expect("->");
        const Token& bt = cur.name("element name");
        cur.finish();
        const ObjectId from = cat.cod(static_cast<MorphismId>(*f));
        const ObjectId to = cat.dom(static_cast<MorphismId>(*f));
        auto a = find_name(names[from], at.text);
        if (!a) Cursor::fail(at, "'" + at.text + "' is not an element of level '" + shape.object_names[from] + "'");
        auto b = find_name(names[to], bt.text);
        if (!b) Cursor::fail(bt, "'" + bt.text + "' is not an element of level '" + shape.object_names[to] + "'");
        if (*a == kBase && *b != kBase) Cursor::fail(bt, "restriction must send * to *");
        Element& slot = tables[*f][*a];
        if (slot != kUnset && slot != *b)
            Cursor::fail(at, "conflicting images for '" + at.text + "' along '" + mt.text + "'");
        slot = static_cast<Element>(*b);
        origin[*f][*a] = at;
    }

    const auto composites = cat.nontrivial_composites();
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [g, f, h] : composites) {
            for (Element e = 0; e < tables[h].size(); ++e) {
                if (tables[h][e] != kUnset || tables[g][e] == kUnset) continue;
                Element mid = tables[g][e];
                if (tables[f][mid] == kUnset) continue;
                tables[h][e] = tables[f][mid];
                changed = true;
            }
        }
    }
    for (MorphismId f = 0; f < m_count; ++f)
        for (Element e = 0; e < tables[f].size(); ++e)
            if (tables[f][e] == kUnset)
                Cursor::fail(name_tokens[cat.cod(f)][e],
                             "no image for '" + names[cat.cod(f)][e] + "' along '" + shape.morphism_names[f] + "'");

    for (const auto& [g, f, h] : composites) {
        for (Element e = 0; e < tables[h].size(); ++e) {
            Element via = tables[f][tables[g][e]];
            if (via == tables[h][e]) continue;
            const ObjectId top = cat.cod(h);
            const Token& where = origin[h][e]   ? *origin[h][e]
                                 : origin[g][e] ? *origin[g][e]
                                                : name_tokens[top][e];
            Cursor::fail(where, "functoriality fails for the pair (" + shape.morphism_names[g] + ", " +
                                    shape.morphism_names[f] + "): '" + names[top][e] + "' goes to '" +
                                    names[cat.dom(h)][via] + "' through them but to '" +
                                    names[cat.dom(h)][tables[h][e]] + "' along '" + shape.morphism_names[h] + "'");
        }
    }

    std::vector<std::size_t> sizes(n);
    for (ObjectId c = 0; c < n; ++c) sizes[c] = names[c].size();
    auto presheaf = std::make_shared<const PointedPresheaf>(shape.category, std::move(sizes), std::move(tables));
    return NamedPresheaf{shape, std::move(presheaf), std::move(names)};
}

std::string grid_object_name(std::size_t i, std::size_t j) { return std::to_string(i) + "," + std::to_string(j); }

}  // namespace

ObjectId NamedCategory::object(std::string_view name) const {
    auto c = find_name(object_names, name);
    if (!c) throw ValidationError("unknown object '" + std::string(name) + "'");
    return static_cast<ObjectId>(*c);
}

MorphismId NamedCategory::morphism(std::string_view name) const {
    auto m = find_name(morphism_names, name);
    if (!m) throw ValidationError("unknown morphism '" + std::string(name) + "'");
    return static_cast<MorphismId>(*m);
}

Element NamedPresheaf::element(ObjectId c, std::string_view name) const {
    auto e = find_name(element_names.at(c), name);
    if (!e) throw ValidationError("unknown element '" + std::string(name) + "'");
    return static_cast<Element>(*e);
}

NamedCategory named_terminal() {
    return NamedCategory{build_terminal(), {"0"}, {"id_0"}, "terminal"};
}

NamedCategory named_arrow() {
    return NamedCategory{build_arrow(), {"0", "1"}, {"id_0", "id_1", "f"}, "arrow"};
}

NamedCategory named_grid(std::size_t n) {
    GridPoset grid = build_grid_poset(n);
    const FiniteCategory& cat = *grid.category();
    NamedCategory out{grid.category(), {}, {}, "grid " + std::to_string(n)};
    for (ObjectId c = 0; c < cat.num_objects(); ++c) {
        auto [i, j] = grid.coords(c);
        out.object_names.push_back(grid_object_name(i, j));
    }
    for (MorphismId f = 0; f < cat.num_morphisms(); ++f) {
        if (cat.is_identity(f))
            out.morphism_names.push_back("id_" + out.object_names[cat.dom(f)]);
        else
            out.morphism_names.push_back("r_" + out.object_names[cat.dom(f)] + "_" + out.object_names[cat.cod(f)]);
    }
    return out;
}

NamedCategory named_category(CategoryPtr category) {
    NamedCategory out{std::move(category), {}, {}, ""};
    const FiniteCategory& cat = *out.category;
    for (ObjectId c = 0; c < cat.num_objects(); ++c) out.object_names.push_back(std::to_string(c));
    for (MorphismId f = 0; f < cat.num_morphisms(); ++f)
        out.morphism_names.push_back(cat.is_identity(f) ? "id_" + out.object_names[cat.dom(f)] : "m" + std::to_string(f));
    return out;
}

NamedPresheaf named_presheaf(const NamedCategory& shape, PresheafPtr presheaf) {
    std::vector<std::vector<std::string>> names(presheaf->shape().num_objects());
    for (ObjectId c = 0; c < names.size(); ++c) {
        names[c].push_back("*");
        for (Element e = 1; e < presheaf->size(c); ++e) names[c].push_back("e" + std::to_string(e));
    }
    return NamedPresheaf{shape, std::move(presheaf), std::move(names)};
}

NamedCategory parse_category(std::string_view text) {
    CategoryBuilder builder;
    for (const Line& line : tokenize(text))
        if (!builder.accept(line)) Cursor::fail(line.tokens.front(), "unexpected '" + line.tokens.front().text + "'");
    return builder.finish(nullptr);
}

std::string serialize_category(const NamedCategory& named) {
    const FiniteCategory& cat = *named.category;
    std::ostringstream out;
    out << "objects:";
    for (const auto& name : named.object_names) out << ' ' << name;
    out << '\n';
    for (MorphismId f = 0; f < cat.num_morphisms(); ++f)
        if (!cat.is_identity(f))
            out << "mor " << named.morphism_names[f] << ": " << named.object_names[cat.dom(f)] << " -> "
                << named.object_names[cat.cod(f)] << '\n';
    for (const auto& [g, f, h] : cat.nontrivial_composites())
        out << "compose " << named.morphism_names[g] << ' ' << named.morphism_names[f] << " = "
            << named.morphism_names[h] << '\n';
    return out.str();
}

NamedPresheaf parse_presheaf(std::string_view text) {
    std::vector<Line> lines = tokenize(text);
    std::optional<NamedCategory> shape;
    const Token* shape_token = nullptr;
    CategoryBuilder builder;
    std::vector<const Line*> body;
    for (const Line& line : lines) {
        const Token& head = line.tokens.front();
        if (head.text == "shape") {
            if (shape || builder.started()) Cursor::fail(head, "shape declared twice");
            shape = builtin_shape(line);
            shape_token = &head;
        } else if (head.text == "objects" || head.text == "mor" || head.text == "compose") {
            if (shape) Cursor::fail(head, "category lines after a shape declaration");
            builder.accept(line);
        } else if (head.text == "at" || head.text == "map") {
            body.push_back(&line);
        } else {
            Cursor::fail(head, "unexpected '" + head.text + "'");
        }
    }
    (void)shape_token;
    if (!shape) {
        if (!builder.started()) throw ParseError(1, 1, "missing shape declaration");
        shape = builder.finish(nullptr);
    }
    const std::size_t last = lines.empty() ? 1 : lines.back().number;
    return build_presheaf(*shape, body, last);
}

NamedPresheaf parse_presheaf(std::string_view text, const NamedCategory& shape) {
    std::vector<Line> lines = tokenize(text);
    std::vector<const Line*> body;
    for (const Line& line : lines) {
        const Token& head = line.tokens.front();
        if (head.text == "at" || head.text == "map")
            body.push_back(&line);
        else if (head.text == "shape" || head.text == "objects" || head.text == "mor" || head.text == "compose")
            Cursor::fail(head, "the shape is fixed by the caller");
        else
            Cursor::fail(head, "unexpected '" + head.text + "'");
    }
    const std::size_t last = lines.empty() ? 1 : lines.back().number;
    return build_presheaf(shape, body, last);
}

std::string serialize_presheaf(const NamedPresheaf& named) {
    const PointedPresheaf& x = *named.presheaf;
    const FiniteCategory& cat = x.shape();
    std::ostringstream out;
    if (named.shape.builtin.empty())
        out << serialize_category(named.shape);
    else
        out << "shape: " << named.shape.builtin << '\n';
    for (ObjectId c = 0; c < cat.num_objects(); ++c) {
        out << "at " << named.shape.object_names[c] << ":";
        for (const auto& name : named.element_names[c]) out << ' ' << name;
        out << '\n';
    }
    for (MorphismId f : cat.irreducible_morphisms()) {
        const ObjectId from = cat.cod(f);
        const ObjectId to = cat.dom(f);
        for (Element e = 1; e < x.size(from); ++e)
            out << "map " << named.shape.morphism_names[f] << ": " << named.element_names[from][e] << " -> "
                << named.element_names[to][x.restrict(f, e)] << '\n';
    }
    return out.str();
}

PresheafMorphism parse_morphism(std::string_view text, const NamedPresheaf& source, const NamedPresheaf& target) {
    const NamedCategory& shape = source.shape;
    const FiniteCategory& cat = *shape.category;
    if (!(cat == *target.shape.category)) throw ValidationError("morphism endpoints have different shapes");
    const std::size_t n = cat.num_objects();
    constexpr Element kUnset = std::numeric_limits<Element>::max();

    std::vector<Table> comps(n);
    std::vector<std::vector<std::optional<Token>>> origin(n);
    for (ObjectId c = 0; c < n; ++c) {
        comps[c].assign(source.presheaf->size(c), kUnset);
        comps[c][0] = kBase;
        origin[c].assign(source.presheaf->size(c), std::nullopt);
    }
    std::vector<Line> lines = tokenize(text);
    for (const Line& line : lines) {
        Cursor cur(line);
        const Token& head = cur.name("send");
        if (head.text != "send") Cursor::fail(head, "unexpected '" + head.text + "'");
        const Token& obj = cur.name("object name");
        auto c = find_name(shape.object_names, obj.text);
        if (!c) Cursor::fail(obj, "unknown object '" + obj.text + "'");
        cur.expect(":");
        const Token& at = cur.name("element name");
        cur.expect("->");
        const Token& bt = cur.name("element name");
        cur.finish();
        auto a = find_name(source.element_names[*c], at.text);
        if (!a) Cursor::fail(at, "'" + at.text + "' is not a source element at '" + obj.text + "'");
        auto b = find_name(target.element_names[*c], bt.text);
        if (!b) Cursor::fail(bt, "'" + bt.text + "' is not a target element at '" + obj.text + "'");
        if (*a == kBase && *b != kBase) Cursor::fail(bt, "a morphism must send * to *");
        Element& slot = comps[*c][*a];
        if (slot != kUnset && slot != *b) Cursor::fail(at, "conflicting images for '" + at.text + "'");
        slot = static_cast<Element>(*b);
        origin[*c][*a] = at;
    }
    const std::size_t last = lines.empty() ? 1 : lines.back().number;
    for (ObjectId c = 0; c < n; ++c)
        for (Element e = 0; e < comps[c].size(); ++e)
            if (comps[c][e] == kUnset)
                throw ParseError(last, 1, "no image for '" + source.element_names[c][e] + "' at '" +
                                              shape.object_names[c] + "'");

    const PointedPresheaf& x = *source.presheaf;
    const PointedPresheaf& y = *target.presheaf;
    for (MorphismId f = 0; f < cat.num_morphisms(); ++f) {
        if (cat.is_identity(f)) continue;
        const ObjectId from = cat.cod(f), to = cat.dom(f);
        for (Element e = 0; e < x.size(from); ++e) {
            if (y.restrict(f, comps[from][e]) == comps[to][x.restrict(f, e)]) continue;
            const Token& where = origin[from][e] ? *origin[from][e] : *origin[to][x.restrict(f, e)];
            Cursor::fail(where, "naturality fails along '" + shape.morphism_names[f] + "' at '" +
                                    source.element_names[from][e] + "'");
        }
    }
    return PresheafMorphism(source.presheaf, target.presheaf, std::move(comps));
}

std::string serialize_morphism(const PresheafMorphism& morphism, const NamedPresheaf& source,
                               const NamedPresheaf& target) {
    std::ostringstream out;
    for (ObjectId c = 0; c < morphism.components().size(); ++c)
        for (Element e = 1; e < morphism.source().size(c); ++e)
            out << "send " << source.shape.object_names[c] << ": " << source.element_names[c][e] << " -> "
                << target.element_names[c][morphism(c, e)] << '\n';
    return out.str();
}

}  // namespace topaction
