#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

namespace canon::cli {

/// Stable exit codes.
enum ExitCode : int { kPass = 0, kResidualFailure = 1, kInputError = 2 };

inline constexpr double kDefaultTol = 1e-8;

/// Default tolerance: CANON_TOL if set and parseable, otherwise 1e-8.
double default_tolerance();

struct Outcome {
  int exit_code = kInputError;
  nlohmann::json report;  // written to the -o path when present
  std::string summary;    // one line for stdout
};

struct GenRequest {
  std::string kind;  // "spd" | "vectors"
  long long n = 0;
  double cond = 100.0;
  std::uint64_t seed = 0;
  std::string field = "real";
};

/// Deterministic random instance; the report is the MatrixFile itself.
Outcome cmd_gen(const GenRequest& req);

struct DecomposeRequest {
  std::string kind;  // "orthogonal" | "pseudo" | "williamson"
  long long m = 0;
  long long n = 0;
  std::filesystem::path input;
  double tol = kDefaultTol;
};

Outcome cmd_decompose(const DecomposeRequest& req);

struct BasisRequest {
  std::string method;  // "gs" | "sw" | "lorentz" | "symplectic"
  long long m = 0;
  long long n = 0;
  std::filesystem::path input;
  double tol = kDefaultTol;
  std::optional<int> audit_trials;
  std::uint64_t seed = 0;
};

Outcome cmd_basis(const BasisRequest& req);

struct VerifyRequest {
  std::filesystem::path result;
  std::filesystem::path original;
  double tol = kDefaultTol;
};

/// Recomputes every residual from the stored transform and the original
/// input using plain matrix products only.
Outcome cmd_verify(const VerifyRequest& req);

}  // namespace canon::cli
