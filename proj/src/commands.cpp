#include "canon/commands.hpp"

#include <cstdlib>
#include <sstream>

#include "canon/bases.hpp"
#include "canon/congruence.hpp"
#include "canon/matrix_file.hpp"
#include "canon/random.hpp"

namespace canon::cli {

using nlohmann::json;

double default_tolerance() {
  if (const char* env = std::getenv("CANON_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(v) && v > 0.0) return v;
  }
  return kDefaultTol;
}

namespace {

json vector_json(const RealVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

struct Residuals {
  double form = 0.0;
  double diag = 0.0;
  double det_deviation = 0.0;
  bool check_diag = true;
  bool check_det = true;

  bool pass(double tol) const {
    return form <= tol && (!check_diag || diag <= tol) && (!check_det || det_deviation <= tol);
  }

  json to_json() const {
    json j{{"form_residual", form}};
    j["diag_residual"] = check_diag ? json(diag) : json(nullptr);
    j["det_deviation"] = check_det ? json(det_deviation) : json(nullptr);
    return j;
  }
};

enum class Shape { Orthonormal, Diagonal, Paired };

// Everything here is plain products on the stored matrices: no eigensolver,
// no code shared with the decomposition routines.
template <Field F>
Residuals measure(const Matrix<F>& s, const Matrix<F>& v, const RealMatrix& j, Shape shape,
                  const RealVector* d_squared, bool check_diag, bool check_det) {
  Residuals r;
  r.check_diag = check_diag;
  r.check_det = check_det;
  const Matrix<F> jf = j.cast<F>();
  r.form = max_abs((s.adjoint() * jf * s - jf).eval());
  const double scale = max_abs(v);
  const Matrix<F> t = s.adjoint() * (v / scale) * s;
  if (d_squared != nullptr) {
    Matrix<F> expected = (*d_squared / scale).template cast<F>().asDiagonal();
    r.diag = max_abs((t - expected).eval());
  } else {
    r.diag = max_off_diagonal(t);
  }
  if (shape == Shape::Paired) {
    const Eigen::Index n = t.rows() / 2;
    for (Eigen::Index k = 0; k < n; ++k) r.diag = std::max(r.diag, std::abs(t(k, k) - t(n + k, n + k)));
  }
  r.det_deviation = std::abs(s.determinant() - F(1.0));
  return r;
}

json group_json(const std::string& kind, long long m, long long n) { return json{{"kind", kind}, {"m", m}, {"n", n}}; }

RealMatrix group_matrix(const std::string& kind, long long m, long long n, Eigen::Index dim) {
  if (kind == "pseudo" || kind == "lorentz") return MetricG(m, n).matrix();
  if (kind == "williamson" || kind == "symplectic") return SymplecticBeta(dim / 2).matrix();
  return RealMatrix::Identity(dim, dim);
}

json tolerance_json(double tol) {
  const Tolerances t;
  return json{{"tol", tol}, {"symmetry", t.symmetry}, {"eig_per_dim", t.eig_per_dim}, {"pd", t.pd}};
}

Outcome input_error(const std::string& command, const std::string& code, const std::string& message) {
  Outcome out;
  out.exit_code = kInputError;
  out.report = json{{"command", command}, {"pass", false}, {"error", {{"code", code}, {"message", message}}}};
  out.summary = command + ": error " + message;
  return out;
}

template <typename Body>
Outcome guarded(const std::string& command, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return input_error(command, std::string(to_string(e.code())), e.what());  // what() carries the code
  } catch (const json::exception& e) {
    return input_error(command, "ParseError", std::string("ParseError: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return input_error(command, "InvalidArgument", std::string("InvalidArgument: ") + e.what());
  }
}

template <Field F>
Outcome decompose_as(const DecomposeRequest& req, const Matrix<F>& raw) {
  const auto v = SpdMatrix<F>::make(raw);
  CongruenceResult<F> c;
  json outputs;
  std::string kind = req.kind;
  long long m = req.m;
  long long n = req.n;
  if (req.kind == "orthogonal") {
    c = orthogonal_congruence(v);
    m = v.dim();
    n = 0;
  } else if (req.kind == "pseudo") {
    c = pseudo_congruence(v, m, n);
  } else if (req.kind == "williamson") {
    auto w = williamson(v);
    outputs["kappa"] = vector_json(w.kappa);
    c = std::move(w.congruence);
    m = v.dim() / 2;
    n = 0;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown decomposition kind \"" + req.kind + "\"");
  }
  outputs["S"] = matrix_to_json(c.transform);
  outputs["d_squared"] = vector_json(c.d_squared);
  outputs["D"] = vector_json(c.d());

  const Shape shape = req.kind == "williamson" ? Shape::Paired : Shape::Diagonal;
  const Residuals r = measure<F>(c.transform, v.matrix(), group_matrix(kind, m, n, v.dim()), shape, &c.d_squared,
                                 true, true);
  Outcome out;
  out.exit_code = r.pass(req.tol) ? kPass : kResidualFailure;
  out.report = json{{"command", "decompose"},
                    {"kind", kind},
                    {"group", group_json(kind, m, n)},
                    {"field", std::string(field_name<F>())},
                    {"input", {{"path", req.input.string()}, {"digest", file_digest(req.input)}}},
                    {"outputs", outputs},
                    {"residuals", r.to_json()},
                    {"tolerances", tolerance_json(req.tol)},
                    {"seed", nullptr},
                    {"warnings", c.warnings},
                    {"pass", out.exit_code == kPass}};
  out.summary = "decompose " + c.group.name() + " N=" + std::to_string(v.dim()) + ": " +
                (out.exit_code == kPass ? "PASS" : "FAIL") + " (form " + format_double(r.form) + ", diag " +
                format_double(r.diag) + ", det " + format_double(r.det_deviation) + ")";
  return out;
}

template <Field F>
json audit_json(const AuditReport& a) {
  return json{{"seed", a.seed},
              {"tolerance", a.tolerance},
              {"trials", a.perturbed_quartics.size()},
              {"baseline_quartic", a.baseline_quartic},
              {"perturbed_quartics", a.perturbed_quartics},
              {"odd_norm_baseline", a.odd_norm_baseline},
              {"odd_norms_perturbed", a.odd_norms_perturbed},
              {"invariant_baseline", a.invariant_baseline},
              {"invariant_drift", a.invariant_drift},
              {"growth_parameters", a.growth_parameters},
              {"growth_curve", a.growth_curve},
              {"quartic_maximal", a.quartic_maximal},
              {"odd_minimal", a.odd_minimal},
              {"invariant_stable", a.invariant_stable},
              {"growth_monotone", a.growth_monotone},
              {"pass", a.pass()}};
}

template <Field F>
Outcome basis_as(const BasisRequest& req, const Matrix<F>& raw) {
  const auto vs = VectorSet<F>::make(raw);
  BasisResult<F> b;
  if (req.method == "gs") {
    b = gram_schmidt(vs);
  } else if (req.method == "sw") {
    b = schweinler_wigner(vs);
  } else if (req.method == "lorentz") {
    b = lorentz_basis(vs, req.m, req.n);
  } else if (req.method == "symplectic") {
    b = symplectic_basis(vs);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown basis method \"" + req.method + "\"");
  }
  const long long m = req.method == "symplectic" ? vs.dim() / 2 : req.m;
  const Matrix<F> mhat = vs.vectors() * vs.vectors().adjoint();
  const bool noncompact = req.method == "lorentz" || req.method == "symplectic";
  const Shape shape = req.method == "symplectic" ? Shape::Paired : Shape::Diagonal;
  const Residuals r = measure<F>(b.basis, mhat, group_matrix(req.method, m, req.n, vs.dim()), shape, nullptr,
                                 req.method != "gs", noncompact);

  json diagnostics{{"quartic_value", b.diagnostics.quartic_value},
                   {"odd_norm", b.diagnostics.odd_norm},
                   {"M_diagonal", vector_json(b.diagnostics.m_diagonal)},
                   {"residual", b.diagnostics.residual},
                   {"diag_residual", b.diagnostics.diag_residual},
                   {"degenerate", b.diagnostics.degenerate}};
  Outcome out;
  out.exit_code = r.pass(req.tol) ? kPass : kResidualFailure;
  out.report = json{{"command", "basis"},
                    {"method", req.method},
                    {"kind", to_string(b.kind)},
                    {"group", group_json(req.method, m, req.method == "lorentz" ? req.n : 0)},
                    {"field", std::string(field_name<F>())},
                    {"input", {{"path", req.input.string()}, {"digest", file_digest(req.input)}}},
                    {"outputs", {{"Z", matrix_to_json(b.basis)}, {"S", matrix_to_json(b.transform)},
                                 {"M_of_z", matrix_to_json(b.m_of_z)}}},
                    {"diagnostics", diagnostics},
                    {"residuals", r.to_json()},
                    {"tolerances", tolerance_json(req.tol)},
                    {"seed", req.audit_trials ? json(req.seed) : json(nullptr)},
                    {"audit", nullptr},
                    {"pass", out.exit_code == kPass}};
  std::string audit_note;
  if (req.audit_trials) {
    const AuditReport a = extremum_audit(vs, b, *req.audit_trials, req.seed);
    out.report["audit"] = audit_json<F>(a);
    audit_note = std::string(", audit ") + (a.pass() ? "PASS" : "FAIL");
  }
  out.summary = "basis " + req.method + " N=" + std::to_string(vs.dim()) + ": " +
                (out.exit_code == kPass ? "PASS" : "FAIL") + " (form " + format_double(r.form) +
                ", m(z) = " + std::to_string(b.diagnostics.quartic_value) + audit_note + ")";
  return out;
}

template <Field F>
Outcome verify_as(const VerifyRequest& req, const json& result, const Matrix<F>& original) {
  const std::string command = result.at("command").get<std::string>();
  const auto& group = result.at("group");
  const std::string kind = group.at("kind").get<std::string>();
  const long long m = group.at("m").get<long long>();
  const long long n = group.at("n").get<long long>();
  const auto& outputs = result.at("outputs");

  Residuals r;
  Matrix<F> s;
  if (command == "decompose") {
    const AnyMatrix any_s = matrix_from_json(outputs.at("S"));
    const auto* sp = get_if_field<F>(any_s);
    if (sp == nullptr) throw Error(ErrorCode::FieldMismatch, "transform field differs from original");
    s = *sp;
    if (s.rows() != original.rows() || s.cols() != original.cols()) {
      throw Error(ErrorCode::ShapeError, "transform and original have different shapes");
    }
    const auto d2 = outputs.at("d_squared").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(d2.size()) != s.rows()) throw Error(ErrorCode::ShapeError, "d_squared length");
    const RealVector d_squared = Eigen::Map<const RealVector>(d2.data(), static_cast<Eigen::Index>(d2.size()));
    if ((d_squared.array() <= 0.0).any()) throw Error(ErrorCode::ParseError, "d_squared must be positive");
    const Shape shape = kind == "williamson" ? Shape::Paired : Shape::Diagonal;
    r = measure<F>(s, original, group_matrix(kind, m, n, s.rows()), shape, &d_squared, true, true);
  } else if (command == "basis") {
    const AnyMatrix any_z = matrix_from_json(outputs.at("Z"));
    const auto* zp = get_if_field<F>(any_z);
    if (zp == nullptr) throw Error(ErrorCode::FieldMismatch, "basis field differs from original");
    s = *zp;
    if (s.rows() != original.rows() || s.cols() != original.cols()) {
      throw Error(ErrorCode::ShapeError, "basis and original have different shapes");
    }
    const Matrix<F> mhat = original * original.adjoint();
    const bool noncompact = kind == "lorentz" || kind == "symplectic";
    const Shape shape = kind == "symplectic" ? Shape::Paired : Shape::Diagonal;
    r = measure<F>(s, mhat, group_matrix(kind, m, n, s.rows()), shape, nullptr, kind != "gs", noncompact);
  } else {
    throw Error(ErrorCode::ParseError, "unknown result command \"" + command + "\"");
  }

  Outcome out;
  out.exit_code = r.pass(req.tol) ? kPass : kResidualFailure;
  std::string recorded_digest = result.value("/input/digest"_json_pointer, std::string());
  out.report = json{{"command", "verify"},
                    {"verified_command", command},
                    {"kind", kind},
                    {"field", std::string(field_name<F>())},
                    {"result", {{"path", req.result.string()}, {"digest", file_digest(req.result)}}},
                    {"input", {{"path", req.original.string()}, {"digest", file_digest(req.original)}}},
                    {"input_digest_matches", recorded_digest == file_digest(req.original)},
                    {"residuals", r.to_json()},
                    {"tolerances", tolerance_json(req.tol)},
                    {"pass", out.exit_code == kPass}};
  out.summary = "verify " + command + " " + kind + ": " + (out.exit_code == kPass ? "PASS" : "FAIL") + " (form " +
                format_double(r.form) + (r.check_diag ? ", diag " + format_double(r.diag) : std::string()) +
                (r.check_det ? ", det " + format_double(r.det_deviation) : std::string()) + ", tol " +
                format_double(req.tol) + ")";
  return out;
}

template <Field F>
json generate(const GenRequest& req) {
  Rng rng(req.seed);
  const auto n = static_cast<Eigen::Index>(req.n);
  if (req.kind == "spd") return matrix_to_json(random_spd<F>(n, req.cond, rng));
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix<F> v = rng.gaussian_matrix<F>(n, n);
    const Matrix<F> g = v.adjoint() * v;
    if (check_spd<F>(g).ok) return matrix_to_json(v);
  }
  throw Error(ErrorCode::NumericalBreakdown, "could not draw independent vectors");
}

}  // namespace

Outcome cmd_gen(const GenRequest& req) {
  return guarded("gen", [&] {
    if (req.kind != "spd" && req.kind != "vectors") {
      throw Error(ErrorCode::InvalidArgument, "gen kind must be spd or vectors");
    }
    if (req.n < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    if (!(req.cond >= 1.0) || !std::isfinite(req.cond)) throw Error(ErrorCode::InvalidArgument, "cond must be >= 1");
    if (req.field != "real" && req.field != "complex") throw Error(ErrorCode::InvalidArgument, "field must be real or complex");
    Outcome out;
    out.exit_code = kPass;
    out.report = req.field == "real" ? generate<double>(req) : generate<Complex>(req);
    out.summary = "gen " + req.kind + " N=" + std::to_string(req.n) + " seed=" + std::to_string(req.seed) +
                  (req.kind == "spd" ? " cond=" + format_double(req.cond) : std::string());
    return out;
  });
}

Outcome cmd_decompose(const DecomposeRequest& req) {
  return guarded("decompose", [&] {
    const AnyMatrix a = parse_matrix_file(req.input);
    return std::visit([&](const auto& mat) { return decompose_as(req, mat); }, a);
  });
}

Outcome cmd_basis(const BasisRequest& req) {
  return guarded("basis", [&] {
    if (req.audit_trials && *req.audit_trials < 0) throw Error(ErrorCode::InvalidArgument, "audit trials must be >= 0");
    const AnyMatrix a = parse_matrix_file(req.input);
    return std::visit([&](const auto& mat) { return basis_as(req, mat); }, a);
  });
}

Outcome cmd_verify(const VerifyRequest& req) {
  return guarded("verify", [&] {
    const json result = read_json_file(req.result);
    if (!result.is_object() || !result.contains("outputs")) {
      throw Error(ErrorCode::ParseError, "result file is not a decompose/basis report");
    }
    const AnyMatrix a = parse_matrix_file(req.original);
    const std::string field = result.value("field", std::string("real"));
    return std::visit(
        [&](const auto& mat) {
          using M = std::decay_t<decltype(mat)>;
          using F = typename M::Scalar;
          if (field != field_name<F>()) throw Error(ErrorCode::FieldMismatch, "result and original fields differ");
          return verify_as<F>(req, result, mat);
        },
        a);
  });
}

}  // namespace canon::cli
