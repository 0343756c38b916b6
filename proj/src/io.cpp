#include "blb/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace blb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ParseError(origin + ": " + what);
}

double number_at(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_number()) fail(origin, field + " must be a number");
  return j.get<double>();
}

Eigen::MatrixXd matrix_from(const json& j, const std::string& origin,
                            const std::string& field) {
  if (!j.is_object()) fail(origin, field + " must be an object");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
    fail(origin, field + " needs rows, cols and entries");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    fail(origin, field + ".rows/cols must be integers");
  }
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  if (rows < 1 || cols < 1) fail(origin, field + " dimensions must be positive");
  const json& entries = j["entries"];
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows * cols) {
    fail(origin, field + ".entries must hold rows*cols numbers (row-major)");
  }
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = number_at(entries[r * cols + c], origin,
                          field + ".entries[" + std::to_string(r * cols + c) + "]");
    }
  }
  return m;
}

}  // namespace

DatumDocument parse_datum_json(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");
  if (!doc.contains("ambient_dim") || !doc["ambient_dim"].is_number_integer()) {
    fail(origin, "ambient_dim must be an integer");
  }
  const int d = doc["ambient_dim"].get<int>();
  if (!doc.contains("maps") || !doc["maps"].is_array() || doc["maps"].empty()) {
    fail(origin, "maps must be a nonempty array");
  }
  if (!doc.contains("weights") || !doc["weights"].is_array()) {
    fail(origin, "weights must be an array");
  }
  std::vector<LinearMap> maps;
  for (size_t j = 0; j < doc["maps"].size(); ++j) {
    maps.emplace_back(
        matrix_from(doc["maps"][j], origin, "maps[" + std::to_string(j) + "]"));
  }
  std::vector<double> weights;
  for (size_t j = 0; j < doc["weights"].size(); ++j) {
    weights.push_back(number_at(doc["weights"][j], origin,
                                "weights[" + std::to_string(j) + "]"));
  }

  DatumDocument out{Datum(d, std::move(maps), std::move(weights)), {}, {}, {}, {}};

  try {
    if (doc.contains("regs")) {
      if (!doc["regs"].is_array()) fail(origin, "regs must be an array");
      std::vector<SpdMatrix> regs;
      for (size_t j = 0; j < doc["regs"].size(); ++j) {
        regs.emplace_back(
            matrix_from(doc["regs"][j], origin, "regs[" + std::to_string(j) + "]"));
      }
      out.regs = std::move(regs);
    }
    if (doc.contains("loc")) {
      out.loc = SpdMatrix(matrix_from(doc["loc"], origin, "loc"));
    }
  } catch (const InvalidInput& e) {
    fail(origin, e.what());
  }
  if (doc.contains("alphas")) {
    if (!doc["alphas"].is_array()) fail(origin, "alphas must be an array");
    std::vector<double> alphas;
    for (size_t j = 0; j < doc["alphas"].size(); ++j) {
      alphas.push_back(number_at(doc["alphas"][j], origin,
                                 "alphas[" + std::to_string(j) + "]"));
    }
    out.alphas = std::move(alphas);
  }
  if (doc.contains("beta")) {
    out.beta = number_at(doc["beta"], origin, "beta");
  }
  return out;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Eigen::MatrixXd read_text_rows(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  int d = 0, n = 0;
  if (!(in >> d >> n) || d < 1 || n < 0) {
    throw ParseError(path + ": header must be two positive integers \"d n\"");
  }
  Eigen::MatrixXd rows(n, d);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) {
      if (!(in >> rows(i, c))) {
        throw ParseError(path + ": " + what + " row " + std::to_string(i + 1) +
                         " is short or non-numeric");
      }
    }
  }
  return rows;
}

}  // namespace

DatumDocument read_datum_file(const std::string& path) {
  return parse_datum_json(slurp(path), path);
}

PointCloud read_cloud_file(const std::string& path) {
  const Eigen::MatrixXd rows = read_text_rows(path, "point");
  std::vector<Eigen::VectorXd> points;
  points.reserve(rows.rows());
  for (int i = 0; i < rows.rows(); ++i) points.emplace_back(rows.row(i).transpose());
  try {
    return PointCloud::make(static_cast<int>(rows.cols()), std::move(points));
  } catch (const InvalidInput& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Subspace read_frame_file(const std::string& path) {
  const Eigen::MatrixXd rows = read_text_rows(path, "frame");
  if (rows.rows() == 0) return Subspace::zero(static_cast<int>(rows.cols()));
  return Subspace::span(Eigen::MatrixXd(rows.transpose()));
}

}  // namespace blb
