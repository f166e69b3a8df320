#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gbvlab/classes.hpp"
#include "gbvlab/experiment.hpp"
#include "gbvlab/families.hpp"
#include "gbvlab/rate.hpp"
#include "gbvlab/series.hpp"

namespace py = pybind11;
using namespace gbvlab;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Trigonometric-series approximation toolkit: coefficient sequence "
      "classes, certified series evaluation, and best-approximation rates.";

  py::register_exception<CertificateError>(m, "CertificateError",
                                           PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::enum_<Support>(m, "Support")
      .value("two_sided", Support::two_sided)
      .value("nonnegative_only", Support::nonnegative_only)
      .value("cosine_symmetric", Support::cosine_symmetric)
      .value("sine_antisymmetric", Support::sine_antisymmetric)
      .value("finite", Support::finite);

  py::enum_<Verdict>(m, "Verdict")
      .value("holds", Verdict::holds)
      .value("fails", Verdict::fails)
      .value("inconclusive", Verdict::inconclusive);

  py::class_<TailDecay, std::shared_ptr<TailDecay>>(m, "TailDecay")
      .def_static("power", &TailDecay::power, py::arg("p"), py::arg("c"),
                  py::arg("valid_from") = 1)
      .def_static("geometric", &TailDecay::geometric, py::arg("r"),
                  py::arg("c"), py::arg("valid_from") = 1)
      .def_static("lacunary", &TailDecay::lacunary, py::arg("base"),
                  py::arg("p"), py::arg("c"), py::arg("valid_from") = 1)
      .def_static("finite", &TailDecay::finite, py::arg("max_degree"))
      .def_static("none", &TailDecay::none)
      .def_static("combine", &TailDecay::combine)
      .def_readwrite("diff", &TailDecay::diff)
      .def_readonly("constant", &TailDecay::constant)
      .def_readonly("valid_from", &TailDecay::valid_from)
      .def("has_envelope", &TailDecay::has_envelope)
      .def("envelope", &TailDecay::envelope)
      .def("tail_sum_bound", &TailDecay::tail_sum_bound)
      .def("tail_kmax_bound", &TailDecay::tail_kmax_bound);

  py::class_<SectorAngle>(m, "SectorAngle")
      .def(py::init<double>(), py::arg("theta"))
      .def_readonly("theta", &SectorAngle::theta);

  m.def("in_sector", &in_sector, py::arg("z"), py::arg("theta"));

  py::class_<IndexRange>(m, "IndexRange")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("lo"),
           py::arg("hi"))
      .def_readonly("lo", &IndexRange::lo)
      .def_readonly("hi", &IndexRange::hi);

  py::class_<CoeffSeq>(m, "CoeffSeq")
      .def(py::init<CoeffSeq::Generator, Support, TailDecay, std::string,
                    std::int64_t>(),
           py::arg("generator"), py::arg("support"), py::arg("decay"),
           py::arg("label"), py::arg("max_degree") = 0)
      .def("coeff", &CoeffSeq::coeff)
      .def("__call__", &CoeffSeq::coeff)
      .def("delta", &CoeffSeq::delta)
      .def("combined", &CoeffSeq::combined)
      .def("support", &CoeffSeq::support)
      .def("decay", &CoeffSeq::decay)
      .def("label", &CoeffSeq::label)
      .def("max_degree", &CoeffSeq::max_degree)
      .def("is_real_series", &CoeffSeq::is_real_series);

  m.def("make_real_seq", &make_real_seq, py::arg("f"), py::arg("label"),
        py::arg("decay") = TailDecay::none());

  py::class_<ClassReport>(m, "ClassReport")
      .def_readonly("verdict", &ClassReport::verdict)
      .def_readonly("constant", &ClassReport::constant)
      .def_readonly("witness", &ClassReport::witness)
      .def_readonly("range_lo", &ClassReport::range_lo)
      .def_readonly("range_hi", &ClassReport::range_hi)
      .def_readonly("note", &ClassReport::note)
      .def("holds", &ClassReport::holds)
      .def("__repr__", [](const ClassReport& r) {
        return std::string("<ClassReport ") + to_string(r.verdict) + ">";
      });

  m.def("is_quasimonotone", &is_quasimonotone, py::arg("b"), py::arg("alpha"),
        py::arg("horizon"));
  m.def("is_o_regularly_varying", &is_o_regularly_varying, py::arg("R"),
        py::arg("horizon"));
  m.def("is_orv_quasimonotone", &is_orv_quasimonotone, py::arg("c"),
        py::arg("R"), py::arg("theta0"), py::arg("horizon"));
  m.def("gbv_check", &gbv_check, py::arg("c"), py::arg("N0"),
        py::arg("m_range"));
  m.def("find_min_N0", &find_min_N0, py::arg("c"), py::arg("N0_cap"),
        py::arg("m_range"));
  m.def("lemma1_sector_bound", &lemma1_sector_bound, py::arg("c"),
        py::arg("R"), py::arg("theta0"), py::arg("horizon"));
  m.def("sector_spread", &sector_spread, py::arg("c"), py::arg("range"));

  py::class_<SeriesHandle>(m, "SeriesHandle")
      .def(py::init<CoeffSeq, double, int>(), py::arg("seq"),
           py::arg("tail_tolerance") = 1e-10, py::arg("grid_oversample") = 4)
      .def_readonly("seq", &SeriesHandle::seq)
      .def_readonly("tail_tolerance", &SeriesHandle::tail_tolerance)
      .def_readonly("grid_oversample", &SeriesHandle::grid_oversample);

  m.def("conj_dirichlet", &conj_dirichlet, py::arg("k"), py::arg("x"));
  m.def("partial_sum", &partial_sum, py::arg("h"), py::arg("n"), py::arg("x"));
  m.def("tail_sum", &tail_sum, py::arg("h"), py::arg("m"), py::arg("x"));
  m.def("eval", &eval, py::arg("h"), py::arg("x"));
  m.def("sup_norm", &sup_norm, py::arg("h"), py::arg("resolve_degree"));

  py::class_<QParts>(m, "QParts")
      .def_readonly("head_max", &QParts::head_max)
      .def_readonly("odd_tail_max", &QParts::odd_tail_max)
      .def_readonly("even_tail_sum", &QParts::even_tail_sum);

  py::class_<QProxy>(m, "QProxy")
      .def_readonly("q", &QProxy::q)
      .def_readonly("parts", &QProxy::parts);

  m.def("q_proxy", &q_proxy, py::arg("seq"), py::arg("n"));
  m.def("dual_lower_bound", &dual_lower_bound, py::arg("seq"), py::arg("n"),
        py::arg("N"), py::arg("sign"));
  m.def("best_lower_bound", &best_lower_bound, py::arg("seq"), py::arg("n"),
        py::arg("N_max"));

  py::class_<MinimaxCert>(m, "MinimaxCert")
      .def_readonly("real_path", &MinimaxCert::real_path)
      .def_readonly("alternations", &MinimaxCert::alternations)
      .def_readonly("levelled_error", &MinimaxCert::levelled_error)
      .def_readonly("max_residual", &MinimaxCert::max_residual)
      .def_readonly("dual_gap", &MinimaxCert::dual_gap)
      .def_readonly("iterations", &MinimaxCert::iterations)
      .def_readonly("converged", &MinimaxCert::converged)
      .def_readonly("degenerate", &MinimaxCert::degenerate);

  py::class_<MinimaxResult>(m, "MinimaxResult")
      .def_readonly("value", &MinimaxResult::value)
      .def_readonly("cert", &MinimaxResult::cert);

  m.def("minimax_en", &minimax_en, py::arg("h"), py::arg("n"));
  m.def("partial_sum_error", &partial_sum_error, py::arg("h"), py::arg("n"));
  m.def("belov_cosine_proxy", &belov_cosine_proxy, py::arg("a"), py::arg("n"));
  m.def("belov_sine_proxy", &belov_sine_proxy, py::arg("b"), py::arg("n"));

  py::class_<Theorem3Result>(m, "Theorem3Result")
      .def_readonly("s_n_error", &Theorem3Result::s_n_error)
      .def_readonly("e_n", &Theorem3Result::e_n)
      .def_readonly("ratio", &Theorem3Result::ratio);

  m.def("theorem3_ratio", &theorem3_ratio, py::arg("h"), py::arg("n"));
  m.def("theorem3_condition", &theorem3_condition, py::arg("seq"),
        py::arg("n_range"));

  py::class_<Family>(m, "Family")
      .def_readonly("name", &Family::name)
      .def_readonly("params", &Family::params)
      .def_readonly("label", &Family::label)
      .def_readonly("series", &Family::series)
      .def_readonly("classify", &Family::classify)
      .def_readonly("theta_hint", &Family::theta_hint)
      .def("__repr__",
           [](const Family& f) { return "<Family " + f.label + ">"; });

  m.def("family_names", &family_names);
  m.def("make_family", &make_family, py::arg("name"), py::arg("params"));
  m.def("parse_family", &parse_family, py::arg("spec"));

  // Experiment layer: JSON strings in, JSON/CSV strings out, so reports can
  // be consumed as plain dicts without binding the JSON library.
  m.def(
      "run_experiment_json",
      [](const std::string& config) {
        ExperimentConfig cfg =
            parse_experiment_config(json::parse(config));
        cfg.validate();
        return to_json(run_experiment(cfg)).dump();
      },
      py::arg("config"),
      "Run one family sweep from a JSON config string; returns the report "
      "as a JSON string.");
  m.def(
      "run_experiment_csv",
      [](const std::string& config) {
        ExperimentConfig cfg =
            parse_experiment_config(json::parse(config));
        cfg.validate();
        return to_csv(run_experiment(cfg));
      },
      py::arg("config"),
      "Run one family sweep from a JSON config string; returns the "
      "fixed-schema CSV table.");
  m.def(
      "run_suite_json",
      [](const std::vector<std::string>& family_specs,
         const std::vector<std::int64_t>& degrees) {
        std::vector<Family> fams;
        for (const std::string& s : family_specs)
          fams.push_back(parse_family(s));
        return to_json(run_equivalence_suite(fams, degrees, Tolerances{}))
            .dump();
      },
      py::arg("families"), py::arg("degrees"),
      "Run the cross-family equivalence suite; returns the report as a JSON "
      "string.");
}
