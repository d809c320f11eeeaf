#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "specamb/distribution.hpp"
#include "specamb/error.hpp"
#include "specamb/measures.hpp"
#include "specamb/rational.hpp"

namespace specamb {

using Json = nlohmann::ordered_json;

enum class FileArity { Two, Three };

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

/// Serialises with a trailing newline; the single formatting used for every
/// file the tool writes, so round-trips are byte-stable.
inline std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

/// Distribution files carry either `masses` (two variables) or `masses3`
/// (three variables), never both.
FileArity distribution_arity(const Json& doc);

/// Extended reals in JSON: finite values as numbers, infinities as strings.
inline Json ext_real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? Json("Infinity") : Json("-Infinity");
  return Json(v);
}

template <class T>
T mass_from_json(const Json& value) {
  if constexpr (is_exact_backend<T>) {
    if (value.is_string()) return rational_from_string(value.get<std::string>());
    if (value.is_number()) return rational_from_double(value.get<double>());
  } else {
    if (value.is_string()) return to_double(rational_from_string(value.get<std::string>()));
    if (value.is_number()) return value.get<double>();
  }
  fail(Errc::ParseError, "mass entries must be numbers or fraction strings");
}

template <class T>
Json mass_to_json(const T& mass) {
  if constexpr (is_exact_backend<T>) {
    return Json(rational_to_string(mass));
  } else {
    return Json(mass);
  }
}

namespace detail {

inline std::vector<std::string> labels_from_json(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    fail(Errc::ParseError, std::string("missing label array '") + key + "'");
  }
  std::vector<std::string> labels;
  labels.reserve(doc[key].size());
  for (const auto& v : doc[key]) {
    if (!v.is_string()) fail(Errc::ParseError, std::string(key) + " entries must be strings");
    labels.push_back(v.get<std::string>());
  }
  return labels;
}

}  // namespace detail

template <class T>
Joint2<T> parse_joint2(const Json& doc) {
  auto x_labels = detail::labels_from_json(doc, "x_labels");
  auto y_labels = detail::labels_from_json(doc, "y_labels");
  if (!doc.contains("masses") || !doc["masses"].is_array()) {
    fail(Errc::ParseError, "missing 'masses' grid");
  }
  std::vector<std::vector<T>> grid;
  grid.reserve(doc["masses"].size());
  for (const auto& row : doc["masses"]) {
    if (!row.is_array()) fail(Errc::ParseError, "'masses' rows must be arrays");
    std::vector<T> out;
    out.reserve(row.size());
    for (const auto& v : row) out.push_back(mass_from_json<T>(v));
    grid.push_back(std::move(out));
  }
  return Joint2<T>(std::move(x_labels), std::move(y_labels), std::move(grid));
}

template <class T>
Joint3<T> parse_joint3(const Json& doc) {
  auto x_labels = detail::labels_from_json(doc, "x_labels");
  auto y_labels = detail::labels_from_json(doc, "y_labels");
  auto z_labels = detail::labels_from_json(doc, "z_labels");
  if (!doc.contains("masses3") || !doc["masses3"].is_array()) {
    fail(Errc::ParseError, "missing 'masses3' grid");
  }
  const auto& cube = doc["masses3"];
  if (cube.size() != x_labels.size()) {
    fail(Errc::DimensionMismatch, "masses3 has " + std::to_string(cube.size()) +
                                      " planes for " + std::to_string(x_labels.size()) +
                                      " X labels");
  }
  std::vector<T> flat;
  flat.reserve(x_labels.size() * y_labels.size() * z_labels.size());
  for (const auto& plane : cube) {
    if (!plane.is_array() || plane.size() != y_labels.size()) {
      fail(Errc::DimensionMismatch, "masses3 plane does not match Y alphabet");
    }
    for (const auto& row : plane) {
      if (!row.is_array() || row.size() != z_labels.size()) {
        fail(Errc::DimensionMismatch, "masses3 row does not match Z alphabet");
      }
      for (const auto& v : row) flat.push_back(mass_from_json<T>(v));
    }
  }
  return Joint3<T>(std::move(x_labels), std::move(y_labels), std::move(z_labels),
                   std::move(flat));
}

template <class T>
Json joint2_to_json(const Joint2<T>& j) {
  Json doc;
  doc["x_labels"] = j.x_labels();
  doc["y_labels"] = j.y_labels();
  Json rows = Json::array();
  for (std::size_t i = 0; i < j.x_size(); ++i) {
    Json row = Json::array();
    for (std::size_t jj = 0; jj < j.y_size(); ++jj) row.push_back(mass_to_json(j.mass(i, jj)));
    rows.push_back(std::move(row));
  }
  doc["masses"] = std::move(rows);
  return doc;
}

template <class T>
Json joint3_to_json(const Joint3<T>& j) {
  Json doc;
  doc["x_labels"] = j.x_labels();
  doc["y_labels"] = j.y_labels();
  doc["z_labels"] = j.z_labels();
  Json cube = Json::array();
  for (std::size_t i = 0; i < j.x_size(); ++i) {
    Json plane = Json::array();
    for (std::size_t jj = 0; jj < j.y_size(); ++jj) {
      Json row = Json::array();
      for (std::size_t k = 0; k < j.z_size(); ++k) row.push_back(mass_to_json(j.mass(i, jj, k)));
      plane.push_back(std::move(row));
    }
    cube.push_back(std::move(plane));
  }
  doc["masses3"] = std::move(cube);
  return doc;
}

template <class T>
Json split_to_json(const ExclusionSplit<T>& split) {
  Json doc;
  doc["informative"] = mass_to_json(split.informative);
  doc["misinformative"] = mass_to_json(split.misinformative);
  doc["kind"] = std::string(to_string(split.kind));
  return doc;
}

template <class T>
Json decomposition_to_json(const Decomposition<T>& d) {
  Json doc;
  doc["target"] = d.target_event;
  doc["source"] = d.source_event;
  if (!d.given_event.empty()) doc["given"] = d.given_event;
  doc["base"] = d.base.base();
  doc["pmi"] = ext_real_to_json(d.pmi);
  doc["i_plus"] = ext_real_to_json(d.i_plus);
  doc["i_minus"] = ext_real_to_json(d.i_minus);
  doc["split"] = split_to_json(d.split);
  if constexpr (is_exact_backend<T>) {
    Json exact;
    exact["specificity_arg"] = rational_to_string(d.specificity_arg);
    exact["ambiguity_arg"] = rational_to_string(d.ambiguity_arg);
    exact["pmi_ratio"] = rational_to_string(d.pmi_ratio);
    doc["exact"] = std::move(exact);
  }
  return doc;
}

}  // namespace specamb
