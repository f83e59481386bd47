#include "pcortho/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcortho/bases.hpp"
#include "pcortho/projection.hpp"

namespace pcortho::cli {

namespace {

using nlohmann::json;

json pair_json(int i, int j) { return json::array({i + 1, j + 1}); }

json matrix_file_json(const Eigen::MatrixXd& m) { return json{{"n", m.rows()}, {"rows", io::matrix_to_json(m)}}; }

PCMatrix load_pc(const CliConfig& config) {
  PCMatrix a(io::read_matrix(config.input_path, config.format));
  return config.symmetrize ? symmetrize(a) : a;
}

WeightMatrix load_weights(const CliConfig& config, int n) {
  if (!config.weights_path) return WeightMatrix::identity(n);
  WeightMatrix w(io::read_matrix(*config.weights_path, config.format));
  if (w.order() != n) {
    throw Error(ErrorKind::ShapeMismatch,
                "weights have order " + std::to_string(w.order()) + " but the input has order " + std::to_string(n));
  }
  return w;
}

void write_consistent_factor(const CliConfig& config, const PCMatrix& consistent) {
  if (!config.consistent_out) return;
  std::ofstream file(*config.consistent_out);
  if (!file) throw Error(ErrorKind::Parse, "cannot write '" + *config.consistent_out + "'");
  file << matrix_file_json(consistent.entries()).dump(2) << '\n';
}

// Cross-checks B_l against the Gram-system oracle over the raw complement basis.
void verify_projection(const Decomposition& d) {
  const auto raw = ln_basis(d.input.order());
  const auto oracle = oracle_project(d.input, raw, InnerProduct::weighted(d.weight));
  const double gap = (oracle - d.consistent).max_abs();
  const double scale = 1.0 + d.input.max_abs();
  if (gap > tol::kVerdict * scale) {
    throw Error(ErrorKind::OracleMismatch, "projection differs from the oracle by " + std::to_string(gap));
  }
}

json check_report(const CliConfig& config) {
  const PCMatrix a = load_pc(config);
  const auto rec = a.worst_reciprocity();
  const auto con = worst_consistency(a);
  const bool reciprocal = rec.deviation <= config.reciprocity_tol;
  const bool consistent = con.deviation <= config.consistency_tol;
  const auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  return json{
      {"command", "check"},
      {"verdict", std::string("reciprocal: ") + yes_no(reciprocal) + "; consistent: " + yes_no(consistent)},
      {"n", a.order()},
      {"reciprocal", reciprocal},
      {"reciprocity", {{"worst_pair", pair_json(rec.i, rec.j)},
                       {"deviation", rec.deviation},
                       {"tolerance", config.reciprocity_tol}}},
      {"consistent", consistent},
      {"consistency", {{"worst_triple", json::array({con.i + 1, con.j + 1, con.k + 1})},
                       {"deviation", con.deviation},
                       {"tolerance", config.consistency_tol}}},
  };
}

json project_report(const CliConfig& config) {
  const PCMatrix a = load_pc(config);
  const WeightMatrix w = load_weights(config, a.order());
  const auto d = decompose(log_map(a, config.reciprocity_tol), w);
  if (config.verify) verify_projection(d);
  const auto rank = ranking(d.consistent, 1e-8);
  const auto cor = corollary_checks(d);
  const PCMatrix consistent = exp_map(d.consistent);
  write_consistent_factor(config, consistent);

  json corollary{
      {"h_row_sums", cor.h_row_sums},
      {"h_column_sums", cor.h_column_sums},
      {"l_row_sums", cor.l_row_sums},
      {"l_column_sums", cor.l_column_sums},
      {"w_complement", cor.w_complement},
      {"h_row_products", cor.h_row_products ? json(*cor.h_row_products) : json(nullptr)},
      {"l_row_products", cor.l_row_products ? json(*cor.l_row_products) : json(nullptr)},
  };
  return json{
      {"command", "project"},
      {"n", a.order()},
      {"weights", config.weights_path ? "file" : "identity"},
      {"input", io::matrix_to_json(a.entries())},
      {"B", io::vector_to_json(d.input.upper())},
      {"B_l", io::vector_to_json(d.consistent.upper())},
      {"B_h", io::vector_to_json(d.inconsistent.upper())},
      {"residual", d.residual_check},
      {"inconsistency_ratio", d.input.is_zero() ? json(nullptr) : json(inconsistency_ratio(d))},
      {"ranking", {{"log_values", io::vector_to_json(rank.log_values)}, {"weights", io::vector_to_json(rank.weights)}}},
      {"corollary", std::move(corollary)},
      {"consistent_factor", matrix_file_json(consistent.entries())},
  };
}

json factor_report(const CliConfig& config) {
  const PCMatrix a = load_pc(config);
  const WeightMatrix w = load_weights(config, a.order());
  const auto f = factor_pc(a, w, config.reciprocity_tol);
  if (config.verify) verify_projection(f.decomposition);
  write_consistent_factor(config, f.consistent);
  return json{
      {"command", "factor"},
      {"n", a.order()},
      {"inconsistent_factor", matrix_file_json(f.inconsistent.entries())},
      {"consistent_factor", matrix_file_json(f.consistent.entries())},
  };
}

json rank_report(const CliConfig& config) {
  const PCMatrix a = load_pc(config);
  const WeightMatrix w = load_weights(config, a.order());
  const auto d = decompose(log_map(a, config.reciprocity_tol), w);
  if (config.verify) verify_projection(d);
  const auto r = ranking(d.consistent, 1e-8);
  return json{
      {"command", "rank"},
      {"n", a.order()},
      {"log_values", io::vector_to_json(r.log_values)},
      {"weights", io::vector_to_json(r.weights)},
  };
}

json basis_report(const CliConfig& config) {
  const int n = config.order;
  require_order(n);
  BasisSet basis;
  switch (config.basis) {
    case BasisKind::Ln: basis = ln_basis(n); break;
    case BasisKind::LnW: basis = ln_w_basis(n, load_weights(config, n)); break;
    case BasisKind::Hn:
      basis = hn_cycle_basis(n);
      if (config.orthogonalize_hn) basis = orthogonalize(basis);
      break;
  }
  if (config.normalize_basis) basis = normalize(basis);
  return io::basis_to_json(basis);
}

std::string scalar_text(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_value(std::ostringstream& out, const std::string& key, const json& v) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) render_value(out, key + "." + k, child);
  } else if (v.is_array() && !v.empty() && v.front().is_array()) {
    out << key << ":\n";
    for (const auto& row : v) {
      out << " ";
      for (const auto& x : row) out << ' ' << scalar_text(x);
      out << '\n';
    }
  } else if (v.is_array()) {
    out << key << ":";
    for (const auto& x : v) out << ' ' << scalar_text(x);
    out << '\n';
  } else {
    out << key << ": " << scalar_text(v) << '\n';
  }
}

}  // namespace

ExitStatus exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::LengthMismatch:
    case ErrorKind::ShapeMismatch: return kInputError;
    case ErrorKind::OrderTooSmall:
    case ErrorKind::NotPositive:
    case ErrorKind::NotReciprocal:
    case ErrorKind::NotSkew:
    case ErrorKind::NotSymmetric:
    case ErrorKind::NotPositiveDefinite:
    case ErrorKind::NonPositiveWeight:
    case ErrorKind::NotConsistent:
    case ErrorKind::ZeroMatrix: return kValidationError;
    case ErrorKind::DegenerateElement:
    case ErrorKind::SingularGram:
    case ErrorKind::OracleMismatch: return kNumericFailure;
  }
  return kNumericFailure;
}

std::string render_text(Command command, const json& report) {
  std::ostringstream out;
  if (command == Command::Check) {
    out << report.at("verdict").get<std::string>() << '\n';
    json rest = report;
    rest.erase("verdict");
    rest.erase("reciprocal");
    rest.erase("consistent");
    for (const auto& [k, v] : rest.items()) render_value(out, k, v);
    return out.str();
  }
  if (command == Command::Basis) {
    for (const auto& [k, v] : report.items()) {
      if (k != "elements") render_value(out, k, v);
    }
    int idx = 1;
    for (const auto& e : report.at("elements")) render_value(out, "element " + std::to_string(idx++), e);
    return out.str();
  }
  for (const auto& [k, v] : report.items()) render_value(out, k, v);
  return out.str();
}

std::optional<int> parse_args(int argc, const char* const* argv, CliConfig& config, std::ostream& out,
                              std::ostream& err) {
  CLI::App app{"Orthogonal decomposition of pairwise-comparison matrices", "pcortho"};
  app.require_subcommand(1);

  std::string format = "auto";
  std::string output = "json";
  std::string subspace = "ln";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Input format")->check(CLI::IsMember({"csv", "json", "auto"}));
    sub->add_option("--output", output, "Report format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_matrix_input = [&](CLI::App* sub) {
    sub->add_option("input", config.input_path, "PC matrix file (CSV or JSON)")->required();
    sub->add_option("--reciprocity-tol", config.reciprocity_tol, "Tolerance on |m_ij m_ji - 1|");
    sub->add_flag("--symmetrize", config.symmetrize, "Replace m_ij by sqrt(m_ij / m_ji) before use");
  };
  auto add_weights = [&](CLI::App* sub) {
    sub->add_option("--weights", config.weights_path, "Symmetric positive-definite W (default identity)");
  };

  auto* check = app.add_subcommand("check", "Reciprocity and consistency verdicts");
  add_common(check);
  add_matrix_input(check);
  check->add_option("--consistency-tol", config.consistency_tol, "Tolerance on |m_ij m_jk / m_ik - 1|");

  auto* project = app.add_subcommand("project", "Decompose log(A) into consistent and inconsistent parts");
  auto* factor = app.add_subcommand("factor", "Factor A into inconsistent and consistent PC matrices");
  auto* rank = app.add_subcommand("rank", "Priority vector of the consistent part");
  for (auto* sub : {project, factor, rank}) {
    add_common(sub);
    add_matrix_input(sub);
    add_weights(sub);
    sub->add_flag("--verify", config.verify, "Cross-check the projection against the Gram-system oracle");
  }
  for (auto* sub : {project, factor}) {
    sub->add_option("--consistent-out", config.consistent_out, "Write the consistent factor as matrix JSON");
  }

  auto* basis = app.add_subcommand("basis", "Emit a basis of l_n or h_n as JSON");
  add_common(basis);
  add_weights(basis);
  basis->add_option("--order", config.order, "Matrix order n")->required();
  basis->add_option("--subspace", subspace, "ln, hn or ln-w")->check(CLI::IsMember({"ln", "hn", "ln-w"}));
  basis->add_flag("--orthogonalize-hn", config.orthogonalize_hn, "Gram-Schmidt the cycle basis");
  basis->add_flag("--normalize-basis", config.normalize_basis, "Scale elements to unit norm");

  auto* graph = app.add_subcommand("graph", "Emit the oriented comparison graph in DOT");
  graph->add_option("--order", config.order, "Number of alternatives")->required();
  graph->add_flag("--reduced", config.reduced, "Drop vertex 1 and its edges");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  if (*check) config.command = Command::Check;
  if (*project) config.command = Command::Project;
  if (*factor) config.command = Command::Factor;
  if (*rank) config.command = Command::Rank;
  if (*basis) config.command = Command::Basis;
  if (*graph) config.command = Command::Graph;
  config.format = io::parse_format(format);
  config.output = output == "text" ? OutputMode::Text : OutputMode::Json;
  config.basis = subspace == "hn" ? BasisKind::Hn : subspace == "ln-w" ? BasisKind::LnW : BasisKind::Ln;
  return std::nullopt;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == Command::Graph) {
      out << io::comparison_graph_dot(config.order, config.reduced);
      return kOk;
    }
    json report;
    switch (config.command) {
      case Command::Check: report = check_report(config); break;
      case Command::Project: report = project_report(config); break;
      case Command::Factor: report = factor_report(config); break;
      case Command::Rank: report = rank_report(config); break;
      case Command::Basis: report = basis_report(config); break;
      case Command::Graph: break;
    }
    if (config.output == OutputMode::Text) {
      out << render_text(config.command, report);
    } else {
      out << report.dump(2) << '\n';
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
}

}  // namespace pcortho::cli
