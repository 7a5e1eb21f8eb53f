#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "topaction/actions.hpp"
#include "topaction/cli.hpp"
#include "topaction/cover.hpp"
#include "topaction/error.hpp"
#include "topaction/exactness.hpp"
#include "topaction/io.hpp"
#include "topaction/pare.hpp"
#include "topaction/site.hpp"

namespace py = pybind11;
using namespace topaction;

namespace {

IsoMode iso_mode(const std::string& name) {
    if (name == "uvw") return IsoMode::kUVW;
    if (name == "uw") return IsoMode::kUW;
    throw py::value_error("iso_mode must be 'uvw' or 'uw'");
}

InitialNormalCover cover_for(const NamedPresheaf& x, const std::string& method, std::optional<std::size_t> bound) {
    if (method == "arrow") return closed_form_arrow(x.presheaf);
    if (method == "boolean") return closed_form_boolean(x.presheaf);
    if (method != "generic") throw py::value_error("method must be 'generic', 'arrow' or 'boolean'");
    return initial_cover_generic(x.presheaf, bound ? uniform_bound(*x.presheaf, *bound) : default_bound(*x.presheaf));
}

py::dict cover_summary(const NamedPresheaf& x, const InitialNormalCover& c) {
    NamedPresheaf domain = named_presheaf(x.shape, c.domain_ptr());
    std::vector<std::size_t> kernel_sizes;
    for (ObjectId o = 0; o < x.shape.category->num_objects(); ++o) kernel_sizes.push_back(c.kernel.size(o));
    py::dict out;
    out["sizes"] = c.domain_ptr()->sizes();
    out["kernel_sizes"] = kernel_sizes;
    out["kernel_retract"] = kernel_is_retract(c);
    out["domain"] = serialize_presheaf(domain);
    out["chi"] = serialize_morphism(c.chi(), domain, x);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Initial normal covers, representability of actions and pointed presheaves";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

    py::class_<NamedPresheaf>(m, "Presheaf")
        .def_static("parse", [](const std::string& text) { return parse_presheaf(text); }, py::arg("text"))
        .def("serialize", &serialize_presheaf)
        .def_property_readonly("sizes", [](const NamedPresheaf& x) { return x.presheaf->sizes(); })
        .def_property_readonly("objects", [](const NamedPresheaf& x) { return x.shape.object_names; })
        .def_property_readonly("morphisms", [](const NamedPresheaf& x) { return x.shape.morphism_names; })
        .def_property_readonly("elements", [](const NamedPresheaf& x) { return x.element_names; })
        .def("restriction",
             [](const NamedPresheaf& x, const std::string& morphism) {
                 return x.presheaf->restriction(x.shape.morphism(morphism));
             },
             py::arg("morphism"), "Restriction table along the named morphism, as element indices.")
        .def("__eq__", [](const NamedPresheaf& a, const NamedPresheaf& b) { return *a.presheaf == *b.presheaf; })
        .def("__repr__", [](const NamedPresheaf& x) {
            std::ostringstream out;
            out << "Presheaf(sizes=[";
            for (std::size_t i = 0; i < x.presheaf->sizes().size(); ++i) out << (i ? ", " : "") << x.presheaf->size(i);
            out << "])";
            return out.str();
        });

    m.def("hom_count", [](const NamedPresheaf& a, const NamedPresheaf& b) { return hom_count(a.presheaf, b.presheaf); },
          py::arg("source"), py::arg("target"), "Number of natural pointed transformations source → target.");

    m.def("is_normal_epi",
          [](const NamedPresheaf& a, const NamedPresheaf& b, const std::string& morphism) {
              return is_normal_epi(parse_morphism(morphism, a, b)).has_value();
          },
          py::arg("source"), py::arg("target"), py::arg("morphism"),
          "Whether the morphism, given in `send` lines, is a normal epimorphism.");

    m.def("initial_cover",
          [](const NamedPresheaf& x, const std::string& method, std::optional<std::size_t> bound) {
              return cover_summary(x, cover_for(x, method, bound));
          },
          py::arg("x"), py::arg("method") = "generic", py::arg("bound") = py::none(),
          "The initial normal cover of x: level sizes, kernel sizes, retract flag and serialized domain and χ.");

    m.def("count_actions",
          [](const NamedPresheaf& x, const NamedPresheaf& g, const std::string& mode) {
              return enumerate_actions(x.presheaf, g.presheaf, iso_mode(mode)).classes.size();
          },
          py::arg("x"), py::arg("g"), py::arg("iso_mode") = "uvw",
          "Number of isomorphism classes of left-split exact sequences G ⇄ A → X.");

    m.def("verify",
          [](const NamedPresheaf& x, const std::vector<NamedPresheaf>& pool, const std::string& mode) {
              std::vector<PresheafPtr> members;
              for (const auto& g : pool) members.push_back(g.presheaf);
              RepresentabilityOptions options;
              options.mode = iso_mode(mode);
              RepresentabilityReport report =
                  verify_representability(initial_cover_generic(x.presheaf, default_bound(*x.presheaf)), members, options);
              py::list out;
              for (const auto& e : report.entries) {
                  py::dict d;
                  d["act_count"] = e.act_count;
                  d["hom_count"] = e.hom_count;
                  d["ok"] = e.ok();
                  d["failures"] = e.failures;
                  out.append(d);
              }
              return out;
          },
          py::arg("x"), py::arg("pool"), py::arg("iso_mode") = "uvw",
          "Checks the bijection Act(X, G) ≅ Hom([X], G) for every G in the pool.");

    m.def("escape_index",
          [](std::size_t grid, std::size_t max_index) { return escape_index(GridSite(grid), max_index); },
          py::arg("grid"), py::arg("max_index"),
          "Smallest i with the section x at (i, 0) lifting through the pullback of f_0..f_M, or None.");

    m.def("min_separator_size", &min_separator_size, py::arg("k"),
          "Smallest lower level of an object through which every separation witness factors.");

    m.def("emit_grid", [](std::size_t n) { return serialize_category(named_grid(n)); }, py::arg("n"));

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              const int status = run(args, out, err);
              return py::make_tuple(status, out.str(), err.str());
          },
          py::arg("args"), "Runs the command-line tool in-process and returns (status, stdout, stderr).");
}
