#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "topaction/error.hpp"
#include "topaction/io.hpp"

using namespace topaction;
using namespace testing_support;

namespace {

void expect_parse_error(std::string_view text, std::size_t line, std::size_t column, std::string_view fragment) {
    try {
        parse_presheaf(text);
        ADD_FAILURE() << "no error for:\n" << text;
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_EQ(e.column(), column) << e.what();
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

}  // namespace

TEST(Io, ArrowCategoryText) {
    NamedCategory c = parse_category("objects: 0 1\nmor f: 0 -> 1\n");
    EXPECT_EQ(*c.category, *build_arrow());
    EXPECT_EQ(c.morphism_names, (std::vector<std::string>{"id_0", "id_1", "f"}));
}

TEST(Io, MissingCompositeIsNamed) {
    const char* text = "objects: a b c\nmor f: a -> b\nmor g: b -> c\n";
    try {
        parse_category(text);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("composition not total: missing g∘f"), std::string::npos) << e.what();
    }
}

TEST(Io, CommutativeSquareFromFile) {
    NamedCategory c = parse_category(
        "objects: b l r t\nmor x: b -> l\nmor y: b -> r\nmor u: l -> t\nmor v: r -> t\nmor d: b -> t\n"
        "compose u x = d\ncompose v y = d\n");
    const FiniteCategory& cat = *c.category;
    EXPECT_EQ(cat.num_morphisms(), 9u);
    EXPECT_EQ(cat.compose(c.morphism("u"), c.morphism("x")), c.morphism("d"));
    EXPECT_EQ(cat.compose(c.morphism("v"), c.morphism("y")), c.morphism("d"));
    EXPECT_EQ(parse_category(serialize_category(c)).category->num_morphisms(), 9u);
}

TEST(Io, EmittedGridReparses) {
    for (std::size_t n = 1; n <= 3; ++n) {
        NamedCategory grid = named_grid(n);
        NamedCategory back = parse_category(serialize_category(grid));
        EXPECT_EQ(*back.category, *build_grid_poset(n).category());
        EXPECT_EQ(back.object_names, grid.object_names);
        EXPECT_EQ(back.morphism_names, grid.morphism_names);
    }
}

TEST(Io, ExampleFourPresheaf) {
    NamedPresheaf x = parse_presheaf(
        "# lower {*,a}, upper {*,p,q,r}\n"
        "shape: arrow\nat 0: * a\nat 1: * p q r\nmap f: p -> a\nmap f: q -> *\nmap f: r -> *\n");
    EXPECT_EQ(*x.presheaf, *arrow_presheaf(2, {0, 1, 0, 0}));
    EXPECT_EQ(x.element(1, "q"), 2u);
    EXPECT_EQ(x.shape.builtin, "arrow");
}

TEST(Io, CompositeMapsAreDerived) {
    // grid 1: (1,1) ≤ (0,1), (1,0) ≤ (0,0); give only the irreducible steps
    NamedCategory grid = named_grid(1);
    std::string text = "shape: grid 1\nat 0,0: * a\nat 0,1: * a\nat 1,0: * a\nat 1,1: * a\n";
    for (MorphismId f : grid.category->irreducible_morphisms())
        text += "map " + grid.morphism_names[f] + ": a -> a\n";
    NamedPresheaf x = parse_presheaf(text);
    for (MorphismId f = 0; f < grid.category->num_morphisms(); ++f)
        EXPECT_EQ(x.presheaf->restriction(f), (Table{0, 1}));
}

TEST(Io, RoundTripOnRandomPresheaves) {
    std::mt19937_64 rng(83);
    for (int round = 0; round < 60; ++round) {
        CategoryPtr shape = gen::random_shape(rng);
        NamedCategory named = shape->num_objects() == 1   ? named_terminal()
                              : shape->num_objects() == 2 ? named_arrow()
                                                          : named_grid(1);
        NamedPresheaf x = named_presheaf(named, gen::random_presheaf(named.category, 4, rng));
        const std::string text = serialize_presheaf(x);
        NamedPresheaf back = parse_presheaf(text);
        EXPECT_EQ(*back.presheaf, *x.presheaf);
        EXPECT_EQ(back.element_names, x.element_names);
        EXPECT_EQ(serialize_presheaf(back), text);
    }
}

TEST(Io, InlineCategoryRoundTrip) {
    NamedPresheaf x = parse_presheaf("objects: a b\nmor s: a -> b\nmor t: a -> b\nat a: * u\nat b: * v w\n"
                                     "map s: v -> u\nmap s: w -> *\nmap t: v -> *\nmap t: w -> u\n");
    EXPECT_TRUE(x.shape.builtin.empty());
    NamedPresheaf back = parse_presheaf(serialize_presheaf(x));
    EXPECT_EQ(*back.presheaf, *x.presheaf);
}

TEST(Io, MorphismRoundTrip) {
    NamedPresheaf x = named_presheaf(named_arrow(), arrow_presheaf(2, {0, 1, 0}));
    NamedPresheaf g = named_presheaf(named_arrow(), arrow_presheaf(3, {0, 1, 2}));
    for (const auto& h : hom_enumerate(x.presheaf, g.presheaf)) {
        const std::string text = serialize_morphism(h, x, g);
        EXPECT_EQ(parse_morphism(text, x, g), h);
    }
    EXPECT_THROW(parse_morphism("send 1: e1 -> e1\n", x, g), ParseError);
}

TEST(Io, PositionedErrors) {
    expect_parse_error("shape: arrow\nat 0: *\nat 1: * p\nmap f: * -> p\n", 4, 13, "is not an element");
    expect_parse_error("shape: arrow\nat 0: * a\nat 1: * p\nmap f: * -> a\n", 4, 13, "restriction must send * to *");
    expect_parse_error("shape: circle\n", 1, 8, "unknown shape");
    expect_parse_error("shape: arrow\nat 0: a\n", 2, 7, "basepoint");
    expect_parse_error("shape: arrow\nat 0: *\n", 2, 1, "no level declared");
    expect_parse_error("at 0: *\n", 1, 1, "missing shape");
}

TEST(Io, FunctorialityViolationNamesThePair) {
    // grid 1 with a composite map contradicting its factors
    NamedCategory grid = named_grid(1);
    std::string text = "shape: grid 1\nat 0,0: * a\nat 0,1: * a\nat 1,0: * a\nat 1,1: * a\n";
    for (MorphismId f : grid.category->irreducible_morphisms())
        text += "map " + grid.morphism_names[f] + ": a -> a\n";
    text += "map r_1,1_0,0: a -> *\n";
    try {
        parse_presheaf(text);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("functoriality"), std::string::npos) << e.what();
    }
}
