#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "triplex/ingest.hpp"
#include "triplex/rca.hpp"
#include "triplex/reflections.hpp"
#include "triplex/reproduce.hpp"
#include "triplex/stats.hpp"
#include "triplex/triple_helix.hpp"
#include "triplex/version.hpp"

namespace py = pybind11;
using namespace triplex;

PYBIND11_MODULE(_triplex, m) {
  m.doc() = "Economic, patent, and triple-helix complexity indices";
  m.attr("__version__") = TRIPLEX_VERSION;

  py::register_exception<Error>(m, "TriplexError", PyExc_RuntimeError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<DegeneracyError>(m, "DegeneracyError", PyExc_ArithmeticError);

  py::enum_<AxisKind>(m, "AxisKind")
      .value("country", AxisKind::Country)
      .value("product", AxisKind::Product)
      .value("technology", AxisKind::Technology);

  py::enum_<Axis>(m, "Axis").value("rows", Axis::Rows).value("cols", Axis::Cols);

  py::enum_<MarginKind>(m, "MarginKind")
      .value("country_diversity", MarginKind::CountryDiversity)
      .value("product_ubiquity", MarginKind::ProductUbiquity)
      .value("country_tech_diversity", MarginKind::CountryTechDiversity)
      .value("tech_ubiquity", MarginKind::TechUbiquity)
      .value("product_sophistication", MarginKind::ProductSophistication)
      .value("tech_product_ubiquity", MarginKind::TechProductUbiquity);

  py::enum_<IndexKind>(m, "IndexKind")
      .value("eci", IndexKind::ECI)
      .value("pci", IndexKind::PCI)
      .value("patci", IndexKind::PatCI)
      .value("tci", IndexKind::TCI)
      .value("ptci", IndexKind::PTCI)
      .value("tpci", IndexKind::TPCI)
      .value("thci", IndexKind::THCI);

  py::enum_<EigenRule>(m, "EigenRule")
      .value("second_largest", EigenRule::SecondLargest)
      .value("largest_below_one", EigenRule::LargestBelowOne);

  py::enum_<CorrMethod>(m, "CorrMethod")
      .value("pearson", CorrMethod::Pearson)
      .value("spearman", CorrMethod::Spearman);

  py::enum_<Counting>(m, "Counting")
      .value("fractional", Counting::Fractional)
      .value("integer", Counting::Integer);

  py::enum_<PairOrientation>(m, "PairOrientation")
      .value("source_is_row", PairOrientation::SourceIsRow)
      .value("source_is_col", PairOrientation::SourceIsCol);

  py::class_<ValuedMatrix>(m, "ValuedMatrix")
      .def(py::init<std::vector<std::string>, std::vector<std::string>, Eigen::MatrixXd, AxisKind,
                    AxisKind>(),
           py::arg("row_labels"), py::arg("col_labels"), py::arg("values"), py::arg("row_kind"),
           py::arg("col_kind"))
      .def_property_readonly("row_labels", &ValuedMatrix::row_labels)
      .def_property_readonly("col_labels", &ValuedMatrix::col_labels)
      .def_property_readonly("values", &ValuedMatrix::values)
      .def_property_readonly("row_kind", &ValuedMatrix::row_kind)
      .def_property_readonly("col_kind", &ValuedMatrix::col_kind);

  py::class_<BinaryIncidence>(m, "BinaryIncidence")
      .def(py::init<std::vector<std::string>, std::vector<std::string>, Eigen::MatrixXd, AxisKind,
                    AxisKind>(),
           py::arg("row_labels"), py::arg("col_labels"), py::arg("values"), py::arg("row_kind"),
           py::arg("col_kind"))
      .def_property_readonly("row_labels", &BinaryIncidence::row_labels)
      .def_property_readonly("col_labels", &BinaryIncidence::col_labels)
      .def_property_readonly("values", &BinaryIncidence::values)
      .def_property_readonly("row_kind", &BinaryIncidence::row_kind)
      .def_property_readonly("col_kind", &BinaryIncidence::col_kind)
      .def("is_pruned", &BinaryIncidence::is_pruned)
      .def("transposed", &BinaryIncidence::transposed);

  py::class_<MarginVector>(m, "MarginVector")
      .def_readonly("labels", &MarginVector::labels)
      .def_readonly("values", &MarginVector::values)
      .def_readonly("kind", &MarginVector::kind);

  py::class_<ComplexityIndex>(m, "ComplexityIndex")
      .def_property_readonly("labels", &ComplexityIndex::labels)
      .def_property_readonly("values", &ComplexityIndex::values)
      .def_property_readonly("kind", &ComplexityIndex::kind)
      .def_property_readonly("year", &ComplexityIndex::year)
      .def("as_dict", [](const ComplexityIndex& self) {
        py::dict d;
        for (size_t i = 0; i < self.labels().size(); ++i) {
          d[py::str(self.labels()[i])] = self.values()(static_cast<Eigen::Index>(i));
        }
        return d;
      });

  py::class_<YearSeries>(m, "YearSeries")
      .def(py::init([](std::string entity, std::string kind, std::vector<int> years,
                       std::vector<double> values) {
             return YearSeries{std::move(entity), std::move(kind), std::move(years),
                               std::move(values)};
           }),
           py::arg("entity"), py::arg("kind"), py::arg("years"), py::arg("values"))
      .def_readonly("entity", &YearSeries::entity)
      .def_readonly("kind", &YearSeries::kind)
      .def_readonly("years", &YearSeries::years)
      .def_readonly("values", &YearSeries::values);

  py::class_<IndexPanel>(m, "IndexPanel")
      .def_property_readonly("entities", &IndexPanel::entities)
      .def_property_readonly("years", &IndexPanel::years)
      .def_property_readonly("kind", &IndexPanel::kind)
      .def("has", &IndexPanel::has)
      .def("at", &IndexPanel::at)
      .def("series", &IndexPanel::series)
      .def("cross_section", &IndexPanel::cross_section);

  py::class_<LabeledSquare>(m, "LabeledSquare")
      .def_readonly("labels", &LabeledSquare::labels)
      .def_readonly("values", &LabeledSquare::values);

  py::class_<SpectralResult>(m, "SpectralResult")
      .def_readonly("eigenvalues", &SpectralResult::eigenvalues)
      .def_readonly("selected_eigenvalue", &SpectralResult::selected_eigenvalue)
      .def_readonly("eigenvector", &SpectralResult::eigenvector)
      .def_readonly("warnings", &SpectralResult::warnings);

  py::class_<ReflectionState>(m, "ReflectionState")
      .def_readonly("iteration", &ReflectionState::iteration)
      .def_readonly("row_side", &ReflectionState::row_side)
      .def_readonly("col_side", &ReflectionState::col_side);

  py::class_<LabeledVector>(m, "LabeledVector")
      .def_readonly("labels", &LabeledVector::labels)
      .def_readonly("values", &LabeledVector::values);

  py::class_<PruneResult>(m, "PruneResult")
      .def_readonly("matrix", &PruneResult::matrix)
      .def_readonly("removed_rows", &PruneResult::removed_rows)
      .def_readonly("removed_cols", &PruneResult::removed_cols);

  py::class_<BinarizeResult>(m, "BinarizeResult")
      .def_readonly("matrix", &BinarizeResult::matrix)
      .def_readonly("removed_rows", &BinarizeResult::removed_rows)
      .def_readonly("removed_cols", &BinarizeResult::removed_cols);

  py::class_<IndexComputation>(m, "IndexComputation")
      .def_readonly("spectral", &IndexComputation::spectral)
      .def_readonly("eigenvector", &IndexComputation::eigenvector)
      .def_readonly("index", &IndexComputation::index);

  py::class_<TripartiteSystem>(m, "TripartiteSystem")
      .def_readonly("cp", &TripartiteSystem::cp)
      .def_readonly("ct", &TripartiteSystem::ct)
      .def_readonly("pt", &TripartiteSystem::pt)
      .def_property_readonly("countries", &TripartiteSystem::countries)
      .def_property_readonly("products", &TripartiteSystem::products)
      .def_property_readonly("technologies", &TripartiteSystem::technologies);

  py::class_<BuildResult>(m, "BuildResult")
      .def_readonly("system", &BuildResult::system)
      .def_readonly("removed_countries", &BuildResult::removed_countries)
      .def_readonly("removed_products", &BuildResult::removed_products)
      .def_readonly("removed_technologies", &BuildResult::removed_technologies);

  py::class_<ThciComputation>(m, "ThciComputation")
      .def_readonly("clockwise", &ThciComputation::clockwise)
      .def_readonly("counterclockwise", &ThciComputation::counterclockwise)
      .def_readonly("combined", &ThciComputation::combined)
      .def_readonly("index", &ThciComputation::index);

  py::class_<ConcordanceTable>(m, "ConcordanceTable")
      .def(py::init([](std::string source_scheme, std::string target_scheme,
                       std::vector<std::pair<std::string, std::string>> pairs) {
             return ConcordanceTable{std::move(source_scheme), std::move(target_scheme),
                                     std::move(pairs)};
           }),
           py::arg("source_scheme"), py::arg("target_scheme"), py::arg("pairs"))
      .def_readonly("source_scheme", &ConcordanceTable::source_scheme)
      .def_readonly("target_scheme", &ConcordanceTable::target_scheme)
      .def_readonly("pairs", &ConcordanceTable::pairs);

  py::class_<IncidenceResult>(m, "IncidenceResult")
      .def_readonly("matrix", &IncidenceResult::matrix)
      .def_readonly("removed_rows", &IncidenceResult::removed_rows)
      .def_readonly("removed_cols", &IncidenceResult::removed_cols);

  py::class_<CorrelationReport>(m, "CorrelationReport")
      .def_readonly("method", &CorrelationReport::method)
      .def_readonly("lag", &CorrelationReport::lag)
      .def_readonly("n_pairs", &CorrelationReport::n_pairs)
      .def_readonly("coefficient", &CorrelationReport::coefficient)
      .def_readonly("scope", &CorrelationReport::scope)
      .def_readonly("p_value", &CorrelationReport::p_value)
      .def_readonly("year", &CorrelationReport::year);

  py::class_<SeriesResult>(m, "SeriesResult")
      .def_readonly("reports", &SeriesResult::reports)
      .def_readonly("skipped", &SeriesResult::skipped);

  py::class_<ReproCheck>(m, "ReproCheck")
      .def_readonly("name", &ReproCheck::name)
      .def_readonly("computed", &ReproCheck::computed)
      .def_readonly("target", &ReproCheck::target)
      .def_readonly("tolerance", &ReproCheck::tolerance)
      .def_readonly("pass_", &ReproCheck::pass);

  m.def("prune", &prune, py::arg("m"));
  m.def(
      "align",
      [](const BinaryIncidence& a, Axis axis_a, const BinaryIncidence& b, Axis axis_b) {
        return align(a, axis_a, b, axis_b);
      },
      py::arg("a"), py::arg("axis_a"), py::arg("b"), py::arg("axis_b"));
  m.def(
      "align",
      [](const ValuedMatrix& a, Axis axis_a, const ValuedMatrix& b, Axis axis_b) {
        return align(a, axis_a, b, axis_b);
      },
      py::arg("a"), py::arg("axis_a"), py::arg("b"), py::arg("axis_b"));

  m.def("rca", &rca, py::arg("x"));
  m.def("binarize", &binarize, py::arg("r"), py::arg("threshold") = 1.0);

  m.def("margins", &margins, py::arg("m"));
  m.def("reflect", &reflect, py::arg("m"), py::arg("n_steps"));
  m.def("w_bipartite", &w_bipartite, py::arg("m"));
  m.def("spectral_select", &spectral_select, py::arg("w"), py::arg("rule"));
  m.def("standardize", [](const Eigen::VectorXd& v) { return standardize(v); }, py::arg("v"));
  m.def("sign_fix", &sign_fix, py::arg("v"), py::arg("anchor"));
  m.def("complexity_index", &complexity_index, py::arg("m"), py::arg("side"),
        py::arg("rule") = EigenRule::SecondLargest, py::arg("year") = 0);
  m.def("complexity_index_detail", &complexity_index_detail, py::arg("m"), py::arg("side"),
        py::arg("rule") = EigenRule::SecondLargest, py::arg("year") = 0);
  m.def("reflect_limit", &reflect_limit, py::arg("m"), py::arg("tol") = 1e-10,
        py::arg("max_iter") = 100000);

  m.def("build_system", &build_system, py::arg("m_cp"), py::arg("m_ct"), py::arg("m_pt"));
  m.def("w_clockwise", &w_clockwise, py::arg("s"));
  m.def("w_counterclockwise", &w_counterclockwise, py::arg("s"));
  m.def("mirror", &mirror, py::arg("s"));
  m.def("thci", &thci, py::arg("s"), py::arg("rule") = EigenRule::LargestBelowOne,
        py::arg("year") = 0);
  m.def("thci_detail", &thci_detail, py::arg("s"), py::arg("rule") = EigenRule::LargestBelowOne,
        py::arg("year") = 0);

  m.def(
      "pearson",
      [](const std::vector<double>& x, const std::vector<double>& y) { return pearson(x, y); },
      py::arg("x"), py::arg("y"));
  m.def(
      "spearman",
      [](const std::vector<double>& x, const std::vector<double>& y) { return spearman(x, y); },
      py::arg("x"), py::arg("y"));
  m.def("lagged_correlate", &lagged_correlate, py::arg("a"), py::arg("b"), py::arg("method"),
        py::arg("lag"));
  m.def("cross_section_correlate", &cross_section_correlate, py::arg("panels"), py::arg("year"),
        py::arg("method"));
  m.def("correlation_series", &correlation_series, py::arg("a"), py::arg("b"), py::arg("method"));
  m.def(
      "trend_test", [](const std::vector<double>& series) { return trend_test(series); },
      py::arg("series"));

  m.def("load_trade", &load_trade, py::arg("path"), py::arg("year"), py::arg("digit_level") = 3);
  m.def("load_patents", &load_patents, py::arg("path"), py::arg("year"),
        py::arg("counting") = Counting::Fractional);
  m.def("load_concordance", &load_concordance, py::arg("path"), py::arg("source_scheme"),
        py::arg("target_scheme"));
  m.def("chain_concordances", &chain_concordances, py::arg("tables"));
  m.def("concordance_to_incidence", &concordance_to_incidence, py::arg("table"),
        py::arg("row_labels"), py::arg("col_labels"), py::arg("orientation"),
        py::arg("row_kind") = AxisKind::Product, py::arg("col_kind") = AxisKind::Technology);
  m.def("load_panel", &load_panel, py::arg("path"), py::arg("kind") = "");

  m.def("run_reproduction", &run_reproduction, py::arg("fixtures_dir"));
}
