#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "espgroups/brick.hpp"
#include "espgroups/group.hpp"
#include "espgroups/jacobi.hpp"
#include "espgroups/qtable.hpp"
#include "espgroups/spgraph.hpp"

namespace py = pybind11;
using namespace esp;

PYBIND11_MODULE(_core, m) {
    m.doc() = "quasifields, extra special groups, bricks, sum-product graphs";

    auto err = py::register_exception<Error>(m, "Error");
    py::register_exception<NotPrime>(m, "NotPrime", err);
    py::register_exception<ParseError>(m, "ParseError", err);
    py::register_exception<TooLarge>(m, "TooLarge", err);
    py::register_exception<NotMFamily>(m, "NotMFamily", err);
    py::register_exception<NotAField>(m, "NotAField", err);
    py::register_exception<NoConvergence>(m, "NoConvergence", err);
    py::register_exception<NoWitness>(m, "NoWitness", err);
    py::register_exception<PreconditionFailed>(m, "PreconditionFailed", err);

    py::class_<QTable, std::shared_ptr<QTable>>(m, "QTable")
        .def(py::init<int, std::vector<Elem>, std::vector<Elem>, Elem,
                      std::string>(),
             py::arg("q"), py::arg("add"), py::arg("mul"), py::arg("one"),
             py::arg("name"))
        .def_static("prime", &QTable::prime, py::arg("p"))
        .def_static("load", &QTable::load, py::arg("path"))
        .def("save_text",
             [](const QTable& t) {
                 std::ostringstream out;
                 t.save(out);
                 return out.str();
             })
        .def_property_readonly("order", &QTable::order)
        .def_property_readonly("one", &QTable::one)
        .def_property_readonly("name", &QTable::name)
        .def("add", &QTable::add)
        .def("mul", &QTable::mul)
        .def("neg", &QTable::neg)
        .def("sub", &QTable::sub)
        .def("is_prime_field", &QTable::is_prime_field);

    py::class_<AxiomCheck>(m, "AxiomCheck")
        .def_readonly("axiom", &AxiomCheck::axiom)
        .def_readonly("pass_", &AxiomCheck::pass)
        .def_readonly("informational", &AxiomCheck::informational)
        .def_readonly("witness", &AxiomCheck::witness);
    py::class_<AxiomReport>(m, "AxiomReport")
        .def_readonly("checks", &AxiomReport::checks)
        .def("all_pass", &AxiomReport::all_pass);
    m.def("qf_verify", &qf_verify, py::arg("table"));
    m.def("qf_prime", &QTable::prime, py::arg("p"));
    m.def("qf_load", &QTable::load, py::arg("path"));
    m.def("dot", &dot, py::arg("table"), py::arg("x"), py::arg("y"));
    m.def("is_prime", &is_prime, py::arg("p"));

    py::class_<GElem>(m, "GElem")
        .def(py::init([](QVec x, QVec y, Elem z) {
                 return GElem{std::move(x), std::move(y), z};
             }),
             py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &GElem::x)
        .def_readwrite("y", &GElem::y)
        .def_readwrite("z", &GElem::z)
        .def("__eq__", [](const GElem& a, const GElem& b) { return a == b; })
        .def("__repr__", [](const GElem& g) { return to_string(g); });

    py::enum_<Family>(m, "Family")
        .value("Heisenberg", Family::Heisenberg)
        .value("M", Family::M);

    py::class_<GroupParams>(m, "GroupParams")
        .def(py::init<Family, QTablePtr, int>(), py::arg("family"),
             py::arg("table"), py::arg("n"))
        .def_property_readonly("family", &GroupParams::family)
        .def_property_readonly("n", &GroupParams::n)
        .def_property_readonly("q", &GroupParams::q)
        .def_property_readonly("order", &GroupParams::order)
        .def_property_readonly("table", &GroupParams::table_ptr);

    m.def("carry_f", &carry_f, py::arg("p"), py::arg("y"), py::arg("yprime"));
    m.def("h_mul", &h_mul, py::arg("table"), py::arg("g"), py::arg("h"));
    m.def("m_mul", &m_mul, py::arg("table"), py::arg("g"), py::arg("h"));
    m.def("mul", &mul, py::arg("params"), py::arg("g"), py::arg("h"));
    m.def("identity", &identity, py::arg("params"));
    m.def("gpow", &gpow, py::arg("params"), py::arg("g"), py::arg("k"));
    m.def("inverse", &inverse, py::arg("params"), py::arg("g"));
    m.def("g_encode", &g_encode, py::arg("params"), py::arg("g"));
    m.def("g_decode", &g_decode, py::arg("params"), py::arg("rank"));
    m.def("matrix_check", &matrix_check, py::arg("table"), py::arg("n"),
          py::arg("g"), py::arg("h"));

    py::class_<RelationCheck>(m, "RelationCheck")
        .def_readonly("relation", &RelationCheck::relation)
        .def_readonly("pass_", &RelationCheck::pass);
    py::class_<RelationReport>(m, "RelationReport")
        .def_readonly("checks", &RelationReport::checks)
        .def("all_pass", &RelationReport::all_pass);
    m.def("check_relations", &check_relations, py::arg("params"));

    py::class_<AssocReport>(m, "AssocReport")
        .def_readonly("ok", &AssocReport::ok)
        .def_readonly("checked", &AssocReport::checked)
        .def_readonly("witness", &AssocReport::witness)
        .def_readonly("f_identity_ok", &AssocReport::f_identity_ok)
        .def_readonly("f_identity_checked", &AssocReport::f_identity_checked)
        .def("all_ok", &AssocReport::all_ok);
    m.def("check_associativity_exhaustive", &check_associativity_exhaustive,
          py::arg("params"));
    m.def("check_associativity_sampled", &check_associativity_sampled,
          py::arg("params"), py::arg("k"), py::arg("seed"));

    py::class_<Brick>(m, "Brick")
        .def(py::init<GroupParams, std::vector<ElemSet>, std::vector<ElemSet>,
                      ElemSet>(),
             py::arg("params"), py::arg("X"), py::arg("Y"), py::arg("Z"))
        .def_property_readonly("params", &Brick::params)
        .def_property_readonly("X", &Brick::X)
        .def_property_readonly("Y", &Brick::Y)
        .def_property_readonly("Z", &Brick::Z)
        .def("size", &Brick::size);
    m.def("brick_elements", &brick_elements, py::arg("brick"));
    m.def("load_brick", &load_brick, py::arg("path"), py::arg("family"));

    py::class_<GroupSubset>(m, "GroupSubset")
        .def_readonly("count", &GroupSubset::count)
        .def("contains", &GroupSubset::contains, py::arg("g"));
    m.def("product_set", &product_set, py::arg("a"), py::arg("b"));
    m.def("coset_contained", &coset_contained, py::arg("subset"), py::arg("a"),
          py::arg("b"));
    m.def("shifted_intersection", &shifted_intersection, py::arg("table"),
          py::arg("X"), py::arg("a"));
    m.def("certificate", &certificate, py::arg("brick"), py::arg("a"),
          py::arg("b"));

    py::class_<PairResult>(m, "PairResult")
        .def_readonly("a", &PairResult::a)
        .def_readonly("b", &PairResult::b)
        .def_readonly("contained", &PairResult::contained)
        .def_readonly("certified", &PairResult::certified);
    py::class_<CoverageReport>(m, "CoverageReport")
        .def_readonly("N", &CoverageReport::N)
        .def_readonly("certified", &CoverageReport::certified)
        .def_readonly("pairs", &CoverageReport::pairs)
        .def_readonly("has_lower_bound", &CoverageReport::has_lower_bound)
        .def_readonly("lb_num", &CoverageReport::lb_num)
        .def_readonly("lb_den", &CoverageReport::lb_den)
        .def("lower_bound", &CoverageReport::lower_bound)
        .def("sound", &CoverageReport::sound);
    m.def("coverage", &coverage, py::arg("brick"));
    m.def("sumset", &sumset, py::arg("table"), py::arg("S"), py::arg("T"));
    m.def("eq1_check", &eq1_check, py::arg("table"), py::arg("X"));
    m.def("large_z_branch", &large_z_branch, py::arg("brick"));

    py::class_<SPGraph>(m, "SPGraph")
        .def(py::init<QTablePtr, int>(), py::arg("table"), py::arg("n"))
        .def_property_readonly("dimension", &SPGraph::dimension)
        .def_property_readonly("side_size", &SPGraph::side_size)
        .def_property_readonly("vertex_count", &SPGraph::vertex_count)
        .def("is_x_side", &SPGraph::is_x_side)
        .def("vertex_label", &SPGraph::vertex_label)
        .def("vertex_index", &SPGraph::vertex_index, py::arg("y_side"),
             py::arg("vec"), py::arg("z"))
        .def("adjacent", &SPGraph::adjacent)
        .def("degree", &SPGraph::degree)
        .def("common_neighbors", &SPGraph::common_neighbors)
        .def("count_edges", &SPGraph::count_edges, py::arg("B"), py::arg("C"))
        .def("dump_edges", [](const SPGraph& g) {
            std::ostringstream out;
            g.dump_edges(out);
            return out.str();
        });

    py::class_<HGraph>(m, "HGraph")
        .def_readonly("vertices", &HGraph::vertices)
        .def_readonly("regular", &HGraph::regular)
        .def_readonly("expected_degree", &HGraph::expected_degree)
        .def("edge", &HGraph::edge);
    m.def("h_graph", &h_graph, py::arg("graph"));
    m.def("m_squared_check", &m_squared_check, py::arg("graph"));

    py::class_<SpectralReport>(m, "SpectralReport")
        .def_readonly("lambda1", &SpectralReport::lambda1)
        .def_readonly("lambda2", &SpectralReport::lambda2)
        .def_readonly("lambda_min", &SpectralReport::lambda_min)
        .def_readonly("bound", &SpectralReport::bound)
        .def_readonly("pass_", &SpectralReport::pass)
        .def_readonly("solver_iterations", &SpectralReport::solver_iterations)
        .def_readonly("residual", &SpectralReport::residual)
        .def_readonly("eigenvalues", &SpectralReport::eigenvalues);
    m.def("spectrum", &spectrum, py::arg("graph"), py::arg("tol") = 1e-6);

    py::class_<MixingResult>(m, "MixingResult")
        .def_readonly("edges", &MixingResult::edges)
        .def_readonly("expected", &MixingResult::expected)
        .def_readonly("deviation", &MixingResult::deviation)
        .def_readonly("bound", &MixingResult::bound)
        .def_readonly("pass_", &MixingResult::pass);
    m.def("mixing_check", &mixing_check, py::arg("graph"), py::arg("B"),
          py::arg("C"), py::arg("lambda2"), py::arg("tol") = 1e-6);

    py::class_<EdgeWitness>(m, "EdgeWitness")
        .def_readonly("x", &EdgeWitness::x)
        .def_readonly("y", &EdgeWitness::y)
        .def_readonly("z", &EdgeWitness::z)
        .def_readonly("zprime", &EdgeWitness::zprime);
    m.def("lemma4_set_check", &lemma4_set_check, py::arg("brick"), py::arg("a"),
          py::arg("b"), py::arg("lam"));

    py::class_<JacobiResult>(m, "JacobiResult")
        .def_readonly("eigenvalues", &JacobiResult::eigenvalues)
        .def_readonly("sweeps", &JacobiResult::sweeps)
        .def_readonly("residual", &JacobiResult::residual);
    m.def("jacobi_eigenvalues", &jacobi_eigenvalues, py::arg("a"),
          py::arg("dim"), py::arg("tol") = 1e-9, py::arg("max_sweeps") = 100);
}
