// canon: command-line front end for congruence canonical forms and bases.
//
//   canon gen (spd|vectors) --n N [--cond C] --seed S -o FILE
//   canon decompose (orthogonal|pseudo M N|williamson) -i FILE [--tol T] -o FILE
//   canon basis (gs|sw|lorentz M N|symplectic) -i FILE [--audit TRIALS --seed S] [--tol T] -o FILE
//   canon verify -r RESULT -i ORIGINAL [--tol T]

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "canon/commands.hpp"
#include "canon/matrix_file.hpp"

namespace {

using canon::cli::Outcome;

// Splits "pseudo 2 1" style positionals into a name and its two counts.
bool split_signature(const std::vector<std::string>& words, const std::string& needs_counts, std::string& name,
                     long long& m, long long& n, std::string& error) {
  name = words.front();
  if (name == needs_counts) {
    if (words.size() != 3) {
      error = name + " takes two counts: " + name + " M N";
      return false;
    }
    try {
      m = std::stoll(words[1]);
      n = std::stoll(words[2]);
    } catch (const std::exception&) {
      error = "M and N must be integers";
      return false;
    }
    return true;
  }
  if (words.size() != 1) {
    error = name + " takes no extra arguments";
    return false;
  }
  return true;
}

int finish(const Outcome& out, const std::string& output_path) {
  if (!output_path.empty() && !out.report.is_null()) {
    try {
      canon::write_json_file(output_path, out.report);
    } catch (const canon::Error& e) {
      std::cerr << e.what() << '\n';
      return canon::cli::kInputError;
    }
  }
  (out.exit_code == canon::cli::kPass ? std::cout : std::cerr) << out.summary << '\n';
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical forms of positive definite matrices under congruence"};
  app.require_subcommand(1);
  const double env_tol = canon::cli::default_tolerance();

  canon::cli::GenRequest gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random SPD matrix or vector set");
  gen_cmd->add_option("kind", gen.kind, "spd | vectors")->required()->check(CLI::IsMember({"spd", "vectors"}));
  gen_cmd->add_option("--n", gen.n, "Dimension N")->required();
  gen_cmd->add_option("--cond", gen.cond, "Condition number of the SPD spectrum")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->required();
  gen_cmd->add_option("--field", gen.field, "real | complex")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen_out, "Output matrix file")->required();

  std::vector<std::string> dec_words;
  canon::cli::DecomposeRequest dec;
  std::string dec_in;
  std::string dec_out;
  dec.tol = env_tol;
  auto* dec_cmd = app.add_subcommand("decompose", "Diagonalize an SPD matrix by congruence");
  dec_cmd->add_option("group", dec_words, "orthogonal | pseudo M N | williamson")->required()->expected(1, 3);
  dec_cmd->add_option("-i,--input", dec_in, "Input matrix file")->required();
  dec_cmd->add_option("--tol", dec.tol, "Residual tolerance (default: $CANON_TOL or 1e-8)");
  dec_cmd->add_option("-o,--output", dec_out, "Output report")->required();

  std::vector<std::string> basis_words;
  canon::cli::BasisRequest bas;
  std::string bas_in;
  std::string bas_out;
  int audit_trials = -1;
  bas.tol = env_tol;
  auto* bas_cmd = app.add_subcommand("basis", "Construct a basis from linearly independent vectors");
  bas_cmd->add_option("method", basis_words, "gs | sw | lorentz M N | symplectic")->required()->expected(1, 3);
  bas_cmd->add_option("-i,--input", bas_in, "Vector set (columns)")->required();
  auto* audit_opt = bas_cmd->add_option("--audit", audit_trials, "Run the extremum audit with this many trials");
  bas_cmd->add_option("--seed", bas.seed, "Audit seed")->needs(audit_opt);
  bas_cmd->add_option("--tol", bas.tol, "Residual tolerance (default: $CANON_TOL or 1e-8)");
  bas_cmd->add_option("-o,--output", bas_out, "Output report")->required();

  canon::cli::VerifyRequest ver;
  std::string ver_result;
  std::string ver_in;
  ver.tol = env_tol;
  auto* ver_cmd = app.add_subcommand("verify", "Recompute residuals of a decompose/basis report");
  ver_cmd->add_option("-r,--result", ver_result, "Report to check")->required();
  ver_cmd->add_option("-i,--input", ver_in, "Original matrix or vector file")->required();
  ver_cmd->add_option("--tol", ver.tol, "Residual tolerance (default: $CANON_TOL or 1e-8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : canon::cli::kInputError;
  }

  std::string error;
  if (*gen_cmd) return finish(canon::cli::cmd_gen(gen), gen_out);
  if (*dec_cmd) {
    if (!split_signature(dec_words, "pseudo", dec.kind, dec.m, dec.n, error)) {
      std::cerr << "decompose: " << error << '\n';
      return canon::cli::kInputError;
    }
    dec.input = dec_in;
    return finish(canon::cli::cmd_decompose(dec), dec_out);
  }
  if (*bas_cmd) {
    if (!split_signature(basis_words, "lorentz", bas.method, bas.m, bas.n, error)) {
      std::cerr << "basis: " << error << '\n';
      return canon::cli::kInputError;
    }
    bas.input = bas_in;
    if (audit_opt->count() > 0) bas.audit_trials = audit_trials;
    return finish(canon::cli::cmd_basis(bas), bas_out);
  }
  ver.result = ver_result;
  ver.original = ver_in;
  return finish(canon::cli::cmd_verify(ver), "");
}
