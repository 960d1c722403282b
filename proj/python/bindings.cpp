// Python bindings: each operation is exposed per field as <name>_real and
// <name>_complex; the canon package dispatches on the array dtype.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "canon/bases.hpp"
#include "canon/congruence.hpp"
#include "canon/forms.hpp"
#include "canon/linalg_core.hpp"

namespace py = pybind11;
using namespace canon;

namespace {

QuadraticForm make_form(const std::string& kind, Eigen::Index m, Eigen::Index n) {
  if (kind == "metric") return MetricG(m, n);
  if (kind == "symplectic") return SymplecticBeta(m);
  throw Error(ErrorCode::InvalidArgument, "form kind must be \"metric\" or \"symplectic\"");
}

SampleKind make_sample_kind(const std::string& kind) {
  if (kind == "compact") return SampleKind::Compact;
  if (kind == "noncompact") return SampleKind::Noncompact;
  if (kind == "general") return SampleKind::General;
  throw Error(ErrorCode::InvalidArgument, "sample kind must be compact, noncompact or general");
}

template <Field F>
py::dict congruence_dict(const CongruenceResult<F>& r) {
  py::dict d;
  d["S"] = r.transform;
  d["d_squared"] = r.d_squared;
  d["group"] = r.group.name();
  d["form_residual"] = r.form_residual;
  d["diag_residual"] = r.diag_residual;
  d["warnings"] = r.warnings;
  return d;
}

template <Field F>
py::dict basis_dict(const BasisResult<F>& b) {
  py::dict d;
  d["Z"] = b.basis;
  d["S"] = b.transform;
  d["M_of_z"] = b.m_of_z;
  d["kind"] = to_string(b.kind);
  d["quartic_value"] = b.diagnostics.quartic_value;
  d["odd_norm"] = b.diagnostics.odd_norm;
  d["m_diagonal"] = b.diagnostics.m_diagonal;
  d["residual"] = b.diagnostics.residual;
  d["degenerate"] = b.diagnostics.degenerate;
  return d;
}

BasisKind parse_basis_kind(const std::string& s) {
  if (s == "gs") return BasisKind::GramSchmidt;
  if (s == "sw") return BasisKind::SchweinlerWigner;
  if (s == "lorentz") return BasisKind::Lorentz;
  if (s == "symplectic") return BasisKind::Symplectic;
  throw Error(ErrorCode::InvalidArgument, "basis method must be gs, sw, lorentz or symplectic");
}

template <Field F>
BasisResult<F> build_basis(const Matrix<F>& v, const std::string& method, Eigen::Index m, Eigen::Index n) {
  const auto vs = VectorSet<F>::make(v);
  switch (parse_basis_kind(method)) {
    case BasisKind::GramSchmidt: return gram_schmidt(vs);
    case BasisKind::SchweinlerWigner: return schweinler_wigner(vs);
    case BasisKind::Lorentz: return lorentz_basis(vs, m, n);
    case BasisKind::Symplectic: return symplectic_basis(vs);
  }
  throw Error(ErrorCode::InvalidArgument, "unreachable basis kind");
}

template <Field F>
void bind_field(py::module_& m, const std::string& suffix) {
  m.def(("eig_hermitian" + suffix).c_str(), [](const Matrix<F>& a) {
    const auto e = eig_hermitian<F>(a);
    return py::make_tuple(e.values, e.vectors);
  });
  m.def(("check_spd" + suffix).c_str(), [](const Matrix<F>& a) {
    const auto r = check_spd<F>(a);
    py::dict d;
    d["ok"] = r.ok;
    d["reason"] = std::string(to_string(r.reason));
    d["min_eigenvalue"] = r.min_eigenvalue;
    d["max_eigenvalue"] = r.max_eigenvalue;
    return d;
  });
  m.def(("orthogonal_congruence" + suffix).c_str(),
        [](const Matrix<F>& v) { return congruence_dict(orthogonal_congruence(SpdMatrix<F>::make(v))); });
  m.def(("pseudo_congruence" + suffix).c_str(), [](const Matrix<F>& v, Eigen::Index p, Eigen::Index q) {
    return congruence_dict(pseudo_congruence(SpdMatrix<F>::make(v), p, q));
  });
  m.def(("williamson" + suffix).c_str(), [](const Matrix<F>& v) {
    const auto w = williamson(SpdMatrix<F>::make(v));
    py::dict d = congruence_dict(w.congruence);
    d["kappa"] = w.kappa;
    return d;
  });
  m.def(("group_check" + suffix).c_str(),
        [](const Matrix<F>& s, const std::string& kind, Eigen::Index p, Eigen::Index q, double tol) {
          const auto r = group_check<F>(s, make_form(kind, p, q), tol);
          return py::make_tuple(r.pass, r.form_residual, r.det);
        });
  m.def(("sample_group_element" + suffix).c_str(),
        [](const std::string& kind, Eigen::Index p, Eigen::Index q, const std::string& sample, std::uint64_t seed,
           double mu_max) { return sample_group_element<F>(make_form(kind, p, q), make_sample_kind(sample), seed, mu_max); });
  m.def(("invariant_trace" + suffix).c_str(),
        [](const Matrix<F>& a, const std::string& kind, Eigen::Index p, Eigen::Index q, int l) {
          return invariant_trace<F>(a, make_form(kind, p, q), l);
        });
  m.def(("odd_norm" + suffix).c_str(), [](const Matrix<F>& a, const std::string& kind, Eigen::Index p,
                                           Eigen::Index q) { return odd_norm<F>(a, make_form(kind, p, q)); });
  m.def(("quartic_form" + suffix).c_str(), [](const Matrix<F>& a) { return quartic_form<F>(a); });
  m.def(("basis" + suffix).c_str(), [](const Matrix<F>& v, const std::string& method, Eigen::Index p,
                                       Eigen::Index q) { return basis_dict(build_basis<F>(v, method, p, q)); });
  m.def(("extremum_audit" + suffix).c_str(), [](const Matrix<F>& v, const std::string& method, Eigen::Index p,
                                                Eigen::Index q, int trials, std::uint64_t seed) {
    const auto vs = VectorSet<F>::make(v);
    const AuditReport a = extremum_audit(vs, build_basis<F>(v, method, p, q), trials, seed);
    py::dict d;
    d["pass"] = a.pass();
    d["quartic_maximal"] = a.quartic_maximal;
    d["odd_minimal"] = a.odd_minimal;
    d["invariant_stable"] = a.invariant_stable;
    d["growth_monotone"] = a.growth_monotone;
    d["baseline_quartic"] = a.baseline_quartic;
    d["perturbed_quartics"] = a.perturbed_quartics;
    d["invariant_drift"] = a.invariant_drift;
    d["growth_curve"] = a.growth_curve;
    return d;
  });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Canonical forms of positive definite matrices under congruence";

  py::exception<Error> error_type(m, "CanonError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::module_::import("canon._core").attr("CanonError");
      py::object inst = cls(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(cls.ptr(), inst.ptr());
    }
  });

  bind_field<double>(m, "_real");
  bind_field<Complex>(m, "_complex");

  m.def("antisym_canonical", [](const RealMatrix& a) {
    const auto c = antisym_canonical(a);
    return py::make_tuple(c.rotation, c.omega, c.signs);
  });
  m.def(
      "unboundedness_demo",
      [](double a, double b, double mu, const std::string& family) {
        if (family != "so11" && family != "sp2") {
          throw Error(ErrorCode::InvalidArgument, "family must be so11 or sp2");
        }
        return unboundedness_demo(a, b, mu, family == "so11" ? Family::SO11 : Family::SP2);
      },
      py::arg("a"), py::arg("b"), py::arg("mu"), py::arg("family"));
}
