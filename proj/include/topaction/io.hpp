#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "topaction/presheaf.hpp"

namespace topaction {

/// A category together with the names used for it in workspace files.
struct NamedCategory {
    CategoryPtr category;
    std::vector<std::string> object_names;
    /// Identities are named id_<object>.
    std::vector<std::string> morphism_names;
    /// "terminal", "arrow" or "grid N" for built-in shapes, empty otherwise.
    std::string builtin;

    ObjectId object(std::string_view name) const;
    MorphismId morphism(std::string_view name) const;
};

NamedCategory named_terminal();
NamedCategory named_arrow();
/// Objects are named i,j; the morphism lower → upper is named r_<lower>_<upper>.
NamedCategory named_grid(std::size_t n);
/// Object names 0..n-1, morphism names m<index>.
NamedCategory named_category(CategoryPtr category);

struct NamedPresheaf {
    NamedCategory shape;
    PresheafPtr presheaf;
    /// element_names[c][e]; element 0 is always "*".
    std::vector<std::vector<std::string>> element_names;

    Element element(ObjectId c, std::string_view name) const;
};

/// Names "*", "e1", "e2", ... at every level.
NamedPresheaf named_presheaf(const NamedCategory& shape, PresheafPtr presheaf);

/**
 * Category grammar, one declaration per line, `#` starts a comment:
 *
 *   objects: <name>+
 *   mor <name>: <obj> -> <obj>
 *   compose <g> <f> = <h>
 *
 * Identities are implicit; every composite of two composable non-identity
 * morphisms needs a compose line. Throws ParseError for syntax problems and
 * ValidationError naming the violated law otherwise.
 */
NamedCategory parse_category(std::string_view text);
/// Canonical text: objects, then morphisms, then composites, all in index order.
std::string serialize_category(const NamedCategory& category);

/**
 * Presheaf grammar:
 *
 *   shape: terminal | arrow | grid <N>     (or the category grammar inline)
 *   at <obj>: * <elem>*
 *   map <mor>: <elem> -> <elem>
 *
 * `map f: a -> b` means the restriction along f: C → D sends a ∈ X(D) to
 * b ∈ X(C). The basepoint and identity restrictions are implicit. Maps along
 * composite morphisms may be omitted and are derived; when given they must
 * agree. Throws ParseError, including for functoriality violations.
 */
NamedPresheaf parse_presheaf(std::string_view text);
/// Parses against a known shape; the text must not declare its own.
NamedPresheaf parse_presheaf(std::string_view text, const NamedCategory& shape);
/// Canonical text: shape, levels in object order, maps along irreducible
/// morphisms only, non-basepoint elements in index order.
std::string serialize_presheaf(const NamedPresheaf& presheaf);

/**
 * Morphism grammar, relative to named source and target presheaves:
 *
 *   send <obj>: <elem> -> <elem>
 *
 * Every non-basepoint source element needs a line. Throws ParseError.
 */
PresheafMorphism parse_morphism(std::string_view text, const NamedPresheaf& source, const NamedPresheaf& target);
std::string serialize_morphism(const PresheafMorphism& morphism, const NamedPresheaf& source,
                               const NamedPresheaf& target);

}  // namespace topaction
