#include "finorder/heyting.hpp"
#include "finorder/hierarchy.hpp"
#include "finorder/kripke.hpp"
#include "finorder/maps.hpp"
#include "finorder/order.hpp"
#include "finorder/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace finorder;

namespace {

suites::RunConfig make_config(std::size_t depth, std::size_t budget, std::uint64_t seed, const std::string& base,
                              int max_size, int states, std::uint64_t samples)
{
    suites::RunConfig c;
    c.depth = depth;
    c.budget = budget;
    c.seed = seed;
    c.base = base;
    c.max_size = max_size;
    c.states = states;
    c.samples = samples;
    return c;
}

// Reports cross the boundary as JSON text; the package decodes them.
py::tuple report(const suites::Report& r)
{
    return py::make_tuple(r.json.dump(), r.exit_code);
}

} // namespace

PYBIND11_MODULE(_finorder, m)
{
    m.doc() = "Finite order theory core";

    py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<FinitePreorder>(m, "Preorder")
        .def_static("from_relation_bits", &FinitePreorder::from_relation_bits, py::arg("n"), py::arg("bits"))
        .def_static("generated",
                    [](int n, const std::vector<std::pair<int, int>>& pairs) { return FinitePreorder::generated(n, pairs); },
                    py::arg("n"), py::arg("leq_pairs"))
        .def_static("chain", &FinitePreorder::chain)
        .def_static("discrete", &FinitePreorder::discrete)
        .def_property_readonly("size", &FinitePreorder::size)
        .def("leq", &FinitePreorder::leq)
        .def("down", &FinitePreorder::down)
        .def("up", &FinitePreorder::up)
        .def("is_poset", &FinitePreorder::is_poset)
        .def("opposite", &FinitePreorder::opposite)
        .def("relation_bits", &FinitePreorder::relation_bits)
        .def("downsets", [](const FinitePreorder& p) { return all_downsets(p); })
        .def("to_dot", [](const FinitePreorder& p) { return to_dot(p); })
        .def("__eq__", [](const FinitePreorder& a, const FinitePreorder& b) { return a == b; })
        .def("__repr__", [](const FinitePreorder& p) {
            return "Preorder(" + std::to_string(p.size()) + ", '" + p.relation_bits() + "')";
        });

    m.def("sierpinski", &sierpinski);
    m.def("singleton", &singleton);
    m.def("product", &product);
    m.def("enumerate_posets", &enumerate_posets, py::arg("n"));
    m.def("enumerate_preorders", &enumerate_preorders, py::arg("n"), py::arg("up_to_iso") = false);
    m.def("poset_iso", &poset_iso);

    m.def("is_monotone", [](const FinitePreorder& p, const FinitePreorder& q, const MapTable& f) { return is_monotone(p, q, f); });
    m.def("is_open_by_images", [](const FinitePreorder& p, const FinitePreorder& q, const MapTable& f) { return is_open_by_images(p, q, f); });
    m.def("is_open_by_down_sets", [](const FinitePreorder& p, const FinitePreorder& q, const MapTable& f) { return is_open_by_down_sets(p, q, f); });
    m.def("is_open_by_up_sets", [](const FinitePreorder& p, const FinitePreorder& q, const MapTable& f) { return is_open_by_up_sets(p, q, f); });
    m.def("open_maps", [](const FinitePreorder& p, const FinitePreorder& q) { return enumerate_open_maps(p, q).maps; });

    py::class_<DownsetAlgebra>(m, "DownsetAlgebra")
        .def(py::init<FinitePreorder>())
        .def_property_readonly("elements", [](const DownsetAlgebra& a) {
            return std::vector<Mask>(a.elements().begin(), a.elements().end());
        })
        .def_property_readonly("top", &DownsetAlgebra::top)
        .def("implies", &DownsetAlgebra::implies)
        .def("neg", &DownsetAlgebra::neg)
        .def("__len__", &DownsetAlgebra::size);
    m.def("implies_by_search", &implies_by_search);
    m.def("verify_adjunction_unit", &verify_adjunction_unit);
    m.def("fullness_check", [](const FinitePreorder& p, const FinitePreorder& q) {
        const auto r = fullness_check(p, q);
        return py::dict(py::arg("open_maps") = r.open_maps, py::arg("morphisms") = r.morphisms,
                        py::arg("ok") = r.ok());
    });

    py::class_<KripkeFrame>(m, "Frame")
        .def_static("from_relation_bits", &KripkeFrame::from_relation_bits, py::arg("n"), py::arg("bits"))
        .def_static("from_code", &KripkeFrame::from_code, py::arg("n"), py::arg("code"))
        .def_property_readonly("size", &KripkeFrame::size)
        .def("related", &KripkeFrame::related)
        .def("successors", &KripkeFrame::successors)
        .def("is_preorder", &KripkeFrame::is_preorder)
        .def("relation_bits", &KripkeFrame::relation_bits)
        .def("__eq__", [](const KripkeFrame& a, const KripkeFrame& b) { return a == b; });
    m.def("frame_of_opposite", &frame_of_opposite);
    m.def("is_pmorphism", [](const KripkeFrame& f, const KripkeFrame& g, const MapTable& t) { return is_pmorphism(f, g, t); });
    m.def("pmorphisms", [](const KripkeFrame& f, const KripkeFrame& g) { return enumerate_pmorphisms(f, g); });
    m.def("coreflect", [](const KripkeFrame& f) {
        const auto c = coreflect(f);
        return py::make_tuple(c.states, c.order);
    });
    m.def("closure_iff_preorder", &closure_iff_preorder);
    m.def("is_closure_algebra", [](const KripkeFrame& f) { return is_closure_algebra(complex_algebra(f)); });
    m.def("verify_bao_adjunction", &verify_bao_adjunction);

    m.def("_hierarchy_stats",
          [](const std::string& base, std::size_t depth, std::size_t budget) {
              return report(suites::hierarchy_stats(make_config(depth, budget, suites::kDefaultSeed, base, 3, 3, 0)));
          });
    m.def("_verify",
          [](const std::string& suite, std::size_t depth, std::uint64_t seed, int max_size, int states,
             std::uint64_t samples) {
              return report(suites::verify(
                  suite, make_config(depth, hierarchy::kDefaultBudget, seed, "thm33", max_size, states, samples)));
          });
    m.def("_obstruct", [](const std::vector<FinitePreorder>& posets, std::size_t depth) {
        auto c = suites::RunConfig{};
        c.depth = depth;
        return report(suites::obstruct(posets, c));
    });
    m.def("named_poset", &suites::named_poset);
    m.def("posets_up_to", &suites::posets_up_to);
    m.attr("suite_names") = suites::suite_names();
    m.attr("__version__") = suites::kToolVersion;
}
