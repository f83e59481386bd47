#include "pcortho/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace pcortho::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": '" + std::string(token) + "' is not a number");
  }
  return value;
}

Eigen::MatrixXd square_from_rows(const std::vector<std::vector<double>>& rows) {
  const auto n = rows.size();
  if (n == 0) throw Error(ErrorKind::Parse, "no matrix rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorKind::Parse, "matrix is not square: row " + std::to_string(i + 1) + " has " +
                                        std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "auto") return Format::Auto;
  throw Error(ErrorKind::Parse, "unknown format '" + std::string(name) + "'");
}

Eigen::MatrixXd parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_number(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  return square_from_rows(rows);
}

Eigen::MatrixXd parse_json_matrix(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows")) {
    throw Error(ErrorKind::Parse, "expected an object with keys \"n\" and \"rows\"");
  }
  if (!doc["n"].is_number_integer()) throw Error(ErrorKind::Parse, "\"n\" must be an integer");
  const auto n = doc["n"].get<long long>();
  const auto& rows_json = doc["rows"];
  if (!rows_json.is_array()) throw Error(ErrorKind::Parse, "\"rows\" must be an array");
  if (static_cast<long long>(rows_json.size()) != n) {
    throw Error(ErrorKind::Parse, "\"n\" is " + std::to_string(n) + " but there are " +
                                      std::to_string(rows_json.size()) + " rows");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : rows_json) {
    if (!r.is_array()) throw Error(ErrorKind::Parse, "each row must be an array");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw Error(ErrorKind::Parse, "matrix entries must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return square_from_rows(rows);
}

Eigen::MatrixXd parse_matrix(std::string_view text, Format format) {
  if (format == Format::Auto) {
    const auto t = trim(text);
    format = !t.empty() && t.front() == '{' ? Format::Json : Format::Csv;
  }
  return format == Format::Json ? parse_json_matrix(text) : parse_csv(text);
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path, Format format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (format == Format::Auto) {
    const auto ext = path.extension().string();
    if (ext == ".json") format = Format::Json;
    if (ext == ".csv") format = Format::Csv;
  }
  return parse_matrix(buf.str(), format);
}

std::string to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      // Shortest round-trip representation, independent of locale.
      out += json(m(i, j)).dump();
    }
    out += '\n';
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json basis_to_json(const BasisSet& basis) {
  json elements = json::array();
  for (const auto& e : basis.elements) elements.push_back(vector_to_json(e.upper()));
  return json{
      {"subspace", std::string(to_string(basis.subspace))},
      {"n", basis.n},
      {"inner_product", basis.inner_product ? json(basis.inner_product->name()) : json("none")},
      {"orthogonal", basis.orthogonal},
      {"elements", std::move(elements)},
  };
}

BasisSet basis_from_json(const json& j) {
  try {
    BasisSet basis;
    const auto subspace = j.at("subspace").get<std::string>();
    if (subspace == "l_n") {
      basis.subspace = Subspace::Consistent;
    } else if (subspace == "h_n") {
      basis.subspace = Subspace::Inconsistent;
    } else {
      throw Error(ErrorKind::Parse, "unknown subspace '" + subspace + "'");
    }
    basis.n = j.at("n").get<int>();
    require_order(basis.n);
    basis.orthogonal = j.value("orthogonal", false);
    if (j.value("inner_product", std::string("none")) == "frobenius") basis.inner_product = InnerProduct::frobenius();
    for (const auto& e : j.at("elements")) {
      const auto coords = e.get<std::vector<double>>();
      basis.elements.push_back(SkewMatrix::from_upper(
          basis.n, Eigen::Map<const Eigen::VectorXd>(coords.data(), static_cast<Eigen::Index>(coords.size()))));
    }
    return basis;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

std::string comparison_graph_dot(int n, bool reduced) {
  require_order(n);
  std::string out = "digraph pc {\n";
  for (int i = reduced ? 2 : 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) out += "  " + std::to_string(i) + " -> " + std::to_string(j) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace pcortho::io
