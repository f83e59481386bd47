#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "pcortho/error.hpp"
#include "pcortho/io.hpp"

namespace pcortho::cli {

enum class Command { Check, Project, Factor, Rank, Basis, Graph };
enum class OutputMode { Json, Text };
enum class BasisKind { Ln, Hn, LnW };

struct CliConfig {
  Command command = Command::Check;
  std::string input_path;                   // all commands except basis / graph
  std::optional<std::string> weights_path;  // identity when absent
  io::Format format = io::Format::Auto;
  OutputMode output = OutputMode::Json;
  double reciprocity_tol = tol::kReciprocity;
  double consistency_tol = tol::kVerdict;
  bool symmetrize = false;
  bool orthogonalize_hn = false;
  bool normalize_basis = false;
  bool verify = false;   // cross-check projections against the Gram-system oracle
  bool reduced = false;  // graph: drop vertex 1
  int order = 0;         // basis / graph
  BasisKind basis = BasisKind::Ln;
  std::optional<std::string> consistent_out;  // project / factor: write phi(B_l) as matrix JSON
};

enum ExitStatus : int { kOk = 0, kInputError = 1, kValidationError = 2, kNumericFailure = 3 };

ExitStatus exit_status(ErrorKind kind);

/// Parses argv into `config`. Returns an exit status when the process should
/// stop right away (help, usage errors), std::nullopt otherwise.
std::optional<int> parse_args(int argc, const char* const* argv, CliConfig& config, std::ostream& out,
                              std::ostream& err);

/// Runs one command and writes its report to `out`; diagnostics go to `err`.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Text rendering of a JSON report; carries the same information.
std::string render_text(Command command, const nlohmann::json& report);

}  // namespace pcortho::cli
