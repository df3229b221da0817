#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "core/extension.hpp"
#include "core/space.hpp"

namespace og {

// Matrices serialize as nested arrays of [re, im] pairs, row-major. Diagonal
// space bases use the short form: one length-d list of pairs per element.

nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json space_to_json(const OperatorSpace& space);
OperatorSpace space_from_json(const nlohmann::json& j);

struct ParsedElement {
  LevelElement element;
  std::optional<CMat> scalar;  // the unitization's scalar part, when present
};

/// Accepts {"level": n, "coeffs": [...]} with coefficients in the amplified
/// basis order, or {"matrix": ...} resolved through membership at the given
/// tolerance. An optional "X" field carries the scalar part.
ParsedElement element_from_json(const OperatorSpace& space, const nlohmann::json& j,
                                double membership_tol);
nlohmann::json element_to_json(const LevelElement& element);

struct ParsedFunctional {
  Functional functional;
  std::string space_path;  // as written in the file; may be empty
};

ParsedFunctional functional_from_json(const nlohmann::json& j);
nlohmann::json functional_to_json(const Functional& f, const std::string& space_path);

}  // namespace og
