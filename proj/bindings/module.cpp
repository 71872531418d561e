#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chernoff/bounds.hpp"
#include "chernoff/random_ops.hpp"
#include "chernoff/scenario.hpp"

namespace py = pybind11;
using namespace chernoff;

namespace {

Regularity regularity_from_string(const std::string& kind, double alpha) {
  if (kind == "self-adjoint") return Regularity::self_adjoint();
  if (kind == "quasi-sectorial") return Regularity::quasi_sectorial(alpha);
  if (kind == "general") return Regularity::general();
  throw Error("unknown regularity: " + kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chernoff approximation families, numerical ranges and the "
            "convergence-bound checkers";

  py::register_exception<Error>(m, "ChernoffError", PyExc_RuntimeError);

  py::class_<Operator>(m, "Operator")
      .def(py::init<Matrix>(), py::arg("matrix"))
      .def_static("identity", &Operator::identity)
      .def_static("zero", &Operator::zero)
      .def_property_readonly("dim", &Operator::dim)
      .def_property_readonly("matrix",
                             [](const Operator& o) { return o.mat(); })
      .def("adjoint", &Operator::adjoint)
      .def("approx_equal", &Operator::approx_equal, py::arg("other"),
           py::arg("tol"))
      .def("to_json", &Operator::to_json_string)
      .def_static("from_json", &Operator::from_json_string);

  py::class_<HermitianSpectrum>(m, "HermitianSpectrum")
      .def_readonly("eigenvalues", &HermitianSpectrum::eigenvalues)
      .def_readonly("eigenvectors", &HermitianSpectrum::eigenvectors)
      .def("reconstruct", &HermitianSpectrum::reconstruct);

  m.def("operator_norm", &operator_norm);
  m.def("hermitian_eig", &hermitian_eig, py::arg("h"),
        py::arg("tol") = tol::kHermitian);
  m.def("matrix_function", &matrix_function, py::arg("spectrum"),
        py::arg("phi"));
  m.def("matrix_exp", &matrix_exp, py::arg("a"), py::arg("t"),
        "e^{-tA} by scaling-and-squaring");
  m.def("matrix_power", &matrix_power, py::arg("a"), py::arg("n"));
  m.def("resolvent_shift", &resolvent_shift, py::arg("a"), py::arg("zeta"),
        py::arg("singularity_tol") = tol::kSingularity);

  py::class_<SectorSpec>(m, "SectorSpec")
      .def(py::init<double>(), py::arg("alpha"))
      .def_readonly("alpha", &SectorSpec::alpha);

  py::class_<RangeBoundary>(m, "RangeBoundary")
      .def_readonly("points", &RangeBoundary::points)
      .def_readonly("angles", &RangeBoundary::angles)
      .def_readonly("dim", &RangeBoundary::dim);

  m.def("range_boundary", &range_boundary, py::arg("a"), py::arg("m") = 360);
  m.def("contained_in_sector", [](const RangeBoundary& b, double alpha) {
    const Containment c = contained_in_sector(b, SectorSpec(alpha));
    return py::make_tuple(c.contained, c.margin);
  });
  m.def("contained_in_qs_domain", [](const RangeBoundary& b, double alpha) {
    const Containment c = contained_in_qs_domain(b, SectorSpec(alpha));
    return py::make_tuple(c.contained, c.margin);
  });
  m.def("qs_domain_margin", [](Complex z, double alpha) {
    return qs_domain_margin(z, SectorSpec(alpha));
  });
  m.def("dist_to_neg_sector", [](Complex zeta, double alpha) {
    return dist_to_neg_sector(zeta, SectorSpec(alpha));
  });
  m.def("min_semi_angle", &min_semi_angle);

  py::class_<KatoFunction>(m, "KatoFunction")
      .def_readonly("id", &KatoFunction::id)
      .def_readonly("gamma", &KatoFunction::gamma)
      .def_readonly("derivative_at_zero", &KatoFunction::derivative_at_zero)
      .def("__call__",
           [](const KatoFunction& f, double s) { return f.eval(s); });

  m.def("default_kato_grid", &default_kato_grid);
  m.def("validate_kato", &validate_kato, py::arg("id"), py::arg("f"),
        py::arg("grid") = default_kato_grid());
  m.def("kato_registry_ids", [] { return kato_registry_ids(); });
  m.def("kato_from_registry", &kato_from_registry);

  py::class_<ChernoffFamily>(m, "ChernoffFamily")
      .def_property_readonly("kind",
                             [](const ChernoffFamily& f) {
                               return to_string(f.kind());
                             })
      .def_property_readonly("label", &ChernoffFamily::label)
      .def_property_readonly("dim", &ChernoffFamily::dim)
      .def_property_readonly("generator", &ChernoffFamily::generator)
      .def("eval_F", &ChernoffFamily::eval_F, py::arg("tau"))
      .def("eval_S", &ChernoffFamily::eval_S, py::arg("tau"))
      .def("semigroup", &ChernoffFamily::semigroup, py::arg("t"));

  m.def(
      "make_resolvent_family",
      [](const Operator& h, const std::string& regularity, double alpha) {
        return make_resolvent_family(h, regularity_from_string(regularity, alpha));
      },
      py::arg("h"), py::arg("regularity") = "self-adjoint",
      py::arg("alpha") = 0.0);
  m.def(
      "make_exp_family",
      [](const Operator& h, const std::string& regularity, double alpha) {
        return make_exp_family(h, regularity_from_string(regularity, alpha));
      },
      py::arg("h"), py::arg("regularity") = "self-adjoint",
      py::arg("alpha") = 0.0);
  m.def("make_kato_family", &make_kato_family, py::arg("f"), py::arg("a"));
  m.def("make_trotter_family", &make_trotter_family, py::arg("a"),
        py::arg("b"));
  m.def("make_symmetrized_family", &make_symmetrized_family, py::arg("f"),
        py::arg("g"), py::arg("a"), py::arg("b"));

  py::class_<ErrorSample>(m, "ErrorSample")
      .def_readonly("n", &ErrorSample::n)
      .def_readonly("error", &ErrorSample::error)
      .def_readonly("t", &ErrorSample::t);

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("c", &RateFit::c)
      .def_readonly("rho", &RateFit::rho)
      .def_readonly("residual", &RateFit::residual);

  py::class_<TInterval>(m, "TInterval")
      .def(py::init([](double lo, double hi, int grid) {
             return TInterval{lo, hi, grid};
           }),
           py::arg("lo"), py::arg("hi"), py::arg("grid") = 101)
      .def_readonly("lo", &TInterval::lo)
      .def_readonly("hi", &TInterval::hi)
      .def_readonly("grid", &TInterval::grid);

  py::class_<ErrorCurve>(m, "ErrorCurve")
      .def_readonly("family_id", &ErrorCurve::family_id)
      .def_readonly("samples", &ErrorCurve::samples)
      .def_readonly("fitted", &ErrorCurve::fitted);

  m.def("chernoff_power", &chernoff_power, py::arg("family"), py::arg("t"),
        py::arg("n"));
  m.def("approximation_error", &approximation_error, py::arg("family"),
        py::arg("t"), py::arg("n"));
  m.def("sup_error",
        [](const ChernoffFamily& fam, double lo, double hi, int grid, long n) {
          const SupResult r = sup_error(fam, lo, hi, grid, n);
          return py::make_tuple(r.sup, r.argmax_t);
        },
        py::arg("family"), py::arg("t_lo"), py::arg("t_hi"),
        py::arg("t_grid_size"), py::arg("n"));
  m.def("error_curve",
        [](const ChernoffFamily& fam, double t, const std::vector<long>& ns,
           const std::string& id) { return error_curve(fam, t, ns, id); },
        py::arg("family"), py::arg("t"), py::arg("n_list"),
        py::arg("family_id") = "");
  m.def("error_curve_sup",
        [](const ChernoffFamily& fam, const TInterval& iv,
           const std::vector<long>& ns, const std::string& id) {
          return error_curve(fam, iv, ns, id);
        },
        py::arg("family"), py::arg("interval"), py::arg("n_list"),
        py::arg("family_id") = "");
  m.def("default_n_list", &default_n_list);
  m.def("fit_rate", &fit_rate);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("bound_id", &BoundReport::bound_id)
      .def_readonly("params", &BoundReport::params)
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("margin", &BoundReport::margin)
      .def_readonly("pass_", &BoundReport::pass)
      .def_readonly("constants", &BoundReport::constants)
      .def("to_json", [](const BoundReport& r) { return r.to_json().dump(); });

  m.def("bound_registry", [] { return bound_registry(); });
  m.def("check_spectral_bound", &check_spectral_bound, py::arg("f"),
        py::arg("n"));
  m.def("check_sqrt_n_lemma", &check_sqrt_n_lemma, py::arg("f"), py::arg("n"),
        py::arg("w"));
  m.def("estimate_K",
        [](const Operator& f, long n_max, double alpha) {
          const KEstimate est = estimate_K(f, n_max, SectorSpec(alpha));
          return py::make_tuple(est.k_hat, est.argmax_n, est.reports);
        },
        py::arg("f"), py::arg("n_max"), py::arg("alpha") = 0.0);
  m.def("check_cube_root_bound",
        [](const Operator& f, long n, double k_hat, double alpha) {
          return check_cube_root_bound(f, n, k_hat, SectorSpec(alpha));
        },
        py::arg("f"), py::arg("n"), py::arg("k_hat"), py::arg("alpha") = 0.0);
  m.def("check_strict_contraction",
        [](const ChernoffFamily& fam, double eps,
           const std::vector<double>& grid) {
          const StrictContractionResult r =
              check_strict_contraction(fam, eps, grid);
          return py::make_tuple(r.delta_hat, r.pass, r.reports);
        },
        py::arg("family"), py::arg("epsilon"), py::arg("tau_grid"));
  m.def("check_nonsym_trotter_kato",
        [](const KatoFunction& f, const KatoFunction& g, const Operator& a,
           const Operator& b, const std::vector<long>& ns, double t) {
          const NonsymTrotterKatoResult r =
              check_nonsym_trotter_kato(f, g, a, b, ns, t);
          return py::make_tuple(r.reports, r.fitted);
        },
        py::arg("f"), py::arg("g"), py::arg("a"), py::arg("b"),
        py::arg("n_list"), py::arg("t"));

  py::class_<MatrixRng>(m, "MatrixRng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("ginibre", &MatrixRng::ginibre)
      .def("hermitian", &MatrixRng::hermitian)
      .def("psd", &MatrixRng::psd, py::arg("d"), py::arg("spectral_radius"),
           py::arg("min_eig") = 0.0)
      .def("hermitian_contraction", &MatrixRng::hermitian_contraction)
      .def("equispaced_contraction", &MatrixRng::equispaced_contraction)
      .def("contraction", &MatrixRng::contraction)
      .def("sectorial", &MatrixRng::sectorial, py::arg("d"), py::arg("alpha"),
           py::arg("spectral_radius"), py::arg("angle_margin") = 0.9)
      .def("unitary", &MatrixRng::unitary)
      .def("unit_vector", &MatrixRng::unit_vector);

  m.def("run_scenario_file",
        [](const std::string& path, const std::string& out_dir) {
          const Scenario s = load_scenario(path);
          const ScenarioResult r = run_scenario(
              s, out_dir.empty() ? std::nullopt
                                 : std::optional<std::string>(out_dir));
          return py::make_tuple(r.exit_code, r.bounds_passed, r.bounds_total,
                                r.summary);
        },
        py::arg("path"), py::arg("out_dir") = "");
}
