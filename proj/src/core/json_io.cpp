#include "core/json_io.hpp"

namespace og {

namespace {

using nlohmann::json;

complexd pair_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorCode::Parse, "expected a [re, im] pair at " + path);
  }
  return complexd(j[0].get<double>(), j[1].get<double>());
}

json pair_to_json(complexd z) { return json::array({z.real(), z.imag()}); }

CMat diagonal_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::Parse, "expected a diagonal entry list at " + path);
  const int d = static_cast<int>(j.size());
  CMat m = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = pair_from_json(j[i], path + "/" + std::to_string(i));
  return m;
}

CVec coeffs_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(ErrorCode::Parse, "expected a coefficient list at " + path);
  CVec c(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    c(static_cast<Eigen::Index>(i)) = pair_from_json(j[i], path + "/" + std::to_string(i));
  }
  return c;
}

json coeffs_to_json(const CVec& c) {
  json out = json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) out.push_back(pair_to_json(c(i)));
  return out;
}

}  // namespace

nlohmann::json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(pair_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    fail(ErrorCode::Parse, "expected a nested row-major matrix at " + path);
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  CMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_path = path + "/" + std::to_string(r);
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
      fail(ErrorCode::Parse, "ragged matrix row at " + row_path);
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = pair_from_json(j[r][c], row_path + "/" + std::to_string(c));
    }
  }
  return m;
}

nlohmann::json space_to_json(const OperatorSpace& space) {
  json basis = json::array();
  for (const CMat& b : space.basis) {
    if (space.diagonal) {
      json diag = json::array();
      for (int i = 0; i < space.ambient_dim; ++i) diag.push_back(pair_to_json(b(i, i)));
      basis.push_back(std::move(diag));
    } else {
      basis.push_back(matrix_to_json(b));
    }
  }
  return json{
      {"ambient_dim", space.ambient_dim},
      {"representation", space.diagonal ? "diagonal" : "full"},
      {"basis", basis},
      {"unit", space.has_unit() ? coeffs_to_json(*space.unit_coeffs) : json(nullptr)},
  };
}

OperatorSpace space_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::Parse, "space: expected a JSON object at /");
  if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer()) {
    fail(ErrorCode::Parse, "space: missing integer at /ambient_dim");
  }
  const int d = j["ambient_dim"].get<int>();
  if (d < 1) fail(ErrorCode::Parse, "space: /ambient_dim must be >= 1");
  if (!j.contains("representation") || !j["representation"].is_string()) {
    fail(ErrorCode::Parse, "space: missing string at /representation");
  }
  const std::string repr = j["representation"].get<std::string>();
  if (repr != "diagonal" && repr != "full") {
    fail(ErrorCode::Parse, "space: /representation must be \"diagonal\" or \"full\"");
  }
  if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].empty()) {
    fail(ErrorCode::Parse, "space: missing nonempty array at /basis");
  }
  std::vector<CMat> basis;
  for (size_t i = 0; i < j["basis"].size(); ++i) {
    const std::string path = "/basis/" + std::to_string(i);
    CMat b = repr == "diagonal" ? diagonal_from_json(j["basis"][i], path)
                                : matrix_from_json(j["basis"][i], path);
    if (b.rows() != d || b.cols() != d) {
      fail(ErrorCode::Parse, "space: element at " + path + " does not match /ambient_dim");
    }
    basis.push_back(std::move(b));
  }
  std::optional<CVec> unit;
  if (j.contains("unit") && !j["unit"].is_null()) {
    unit = coeffs_from_json(j["unit"], "/unit");
  }
  OperatorSpace space = build_space(std::move(basis), std::move(unit));
  if (repr == "diagonal" && !space.diagonal) {
    fail(ErrorCode::Parse, "space: /representation says diagonal but a basis element is not");
  }
  return space;
}

ParsedElement element_from_json(const OperatorSpace& space, const nlohmann::json& j,
                                double membership_tol) {
  if (!j.is_object()) fail(ErrorCode::Parse, "element: expected a JSON object at /");
  ParsedElement out;
  if (j.contains("coeffs")) {
    if (!j.contains("level") || !j["level"].is_number_integer()) {
      fail(ErrorCode::Parse, "element: missing integer at /level");
    }
    const int level = j["level"].get<int>();
    out.element = make_element(space, level, coeffs_from_json(j["coeffs"], "/coeffs"));
  } else if (j.contains("matrix")) {
    const CMat m = matrix_from_json(j["matrix"], "/matrix");
    if (m.rows() != m.cols() || m.rows() % space.ambient_dim != 0) {
      fail(ErrorCode::Parse, "element: /matrix shape is not a multiple of the ambient dimension");
    }
    const int level = static_cast<int>(m.rows()) / space.ambient_dim;
    if (j.contains("level") && j["level"].get<int>() != level) {
      fail(ErrorCode::Parse, "element: /level contradicts the size of /matrix");
    }
    out.element = element_from_matrix(space, m, membership_tol);
  } else {
    fail(ErrorCode::Parse, "element: need /coeffs or /matrix");
  }
  if (j.contains("X") && !j["X"].is_null()) {
    const CMat x = matrix_from_json(j["X"], "/X");
    if (x.rows() != out.element.level || x.cols() != out.element.level) {
      fail(ErrorCode::Parse, "element: /X must be level-by-level");
    }
    out.scalar = x;
  }
  return out;
}

nlohmann::json element_to_json(const LevelElement& element) {
  return nlohmann::json{{"level", element.level}, {"coeffs", coeffs_to_json(element.coeffs)}};
}

ParsedFunctional functional_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::Parse, "functional: expected a JSON object at /");
  if (!j.contains("values")) fail(ErrorCode::Parse, "functional: missing /values");
  ParsedFunctional out;
  out.functional.values = coeffs_from_json(j["values"], "/values");
  if (j.contains("space") && j["space"].is_string()) {
    out.space_path = j["space"].get<std::string>();
  }
  return out;
}

nlohmann::json functional_to_json(const Functional& f, const std::string& space_path) {
  return nlohmann::json{{"space", space_path}, {"values", coeffs_to_json(f.values)}};
}

}  // namespace og
