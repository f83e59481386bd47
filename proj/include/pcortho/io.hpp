#pragma once

// Matrix and basis file formats shared by the CLI.
//
//   CSV   one row per line, comma-separated decimal literals (dot separator,
//         scientific notation allowed, locale independent).
//   JSON  {"n": <int>, "rows": [[...], ...]}
//
// Both parsers reject ragged or non-square data.

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "pcortho/bases.hpp"

namespace pcortho::io {

enum class Format { Csv, Json, Auto };

/// "csv" | "json" | "auto"; throws Parse otherwise.
Format parse_format(std::string_view name);

Eigen::MatrixXd parse_csv(std::string_view text);
Eigen::MatrixXd parse_json_matrix(std::string_view text);

/// Auto picks JSON when the first non-blank character is '{'.
Eigen::MatrixXd parse_matrix(std::string_view text, Format format = Format::Auto);

/// Reads a file and parses it; Auto also honours a .json / .csv extension.
Eigen::MatrixXd read_matrix(const std::filesystem::path& path, Format format = Format::Auto);

std::string to_csv(const Eigen::MatrixXd& m);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);

/// {"subspace": "l_n"|"h_n", "n": int, "inner_product": ..., "orthogonal": bool,
///  "elements": [[upper triangle, lexicographic], ...]}
nlohmann::json basis_to_json(const BasisSet& basis);

/// Restores subspace, n, orthogonal flag and elements. The inner product is
/// restored only for the Frobenius kind (a weight matrix is not serialized).
BasisSet basis_from_json(const nlohmann::json& j);

/// digraph pc { i -> j; ... } with 1-based labels, one edge per line in
/// lexicographic order. `reduced` drops vertex 1 and its edges.
std::string comparison_graph_dot(int n, bool reduced = false);

}  // namespace pcortho::io
