#pragma once

// JSON document model ("tropibary/1"): one ground space plus named measures
// and named level-2 measures.
//
//   { "version": "tropibary/1",
//     "space": { "points": [[...]], "metric": "sup" | [[row]...] },
//     "measures": { "<name>": { "weights": [...] } },
//     "meta_measures": { "<name>": { "atoms": ["<name>"...], "weights": [...] } } }
//
// Weight entries are numbers or the string "-Inf". "labels" is an optional
// extra field of "space". Parsing is strict: unknown versions, inconsistent
// sizes, and malformed scalars are rejected with located messages.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tropibary/measure.hpp"

namespace tropibary {

using json = nlohmann::ordered_json;

inline json scalar_to_json(Scalar s) { return s.is_bottom() ? json("-Inf") : json(s.value()); }

inline Scalar scalar_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "-Inf") return Scalar::bottom();
    throw invalid_input(where + ": expected a number or \"-Inf\"");
  }
  if (!j.is_number()) throw invalid_input(where + ": expected a number or \"-Inf\"");
  return Scalar(j.get<double>());
}

struct NamedMeta {
  std::vector<std::string> atom_names;
  std::vector<Scalar> raw_weights;
  MetaMeasure meta;
};

struct Document {
  SpacePtr space;
  std::vector<std::pair<std::string, IdempotentMeasure>> measures;
  std::vector<std::pair<std::string, NamedMeta>> metas;

  const IdempotentMeasure& measure(const std::string& name) const {
    for (const auto& [n, m] : measures)
      if (n == name) return m;
    throw invalid_input("unknown measure '" + name + "'");
  }

  const NamedMeta& meta(const std::string& name) const {
    for (const auto& [n, m] : metas)
      if (n == name) return m;
    throw invalid_input("unknown meta measure '" + name + "'");
  }
};

namespace detail {

inline std::vector<Scalar> weight_list(const json& arr, std::size_t n, const std::string& where) {
  if (!arr.is_array()) throw invalid_input(where + ": expected an array of weights");
  if (arr.size() != n)
    throw invalid_input(where + ": expected " + std::to_string(n) + " weights, got " + std::to_string(arr.size()));
  std::vector<Scalar> w;
  w.reserve(n);
  for (std::size_t i = 0; i < arr.size(); ++i)
    w.push_back(scalar_from_json(arr[i], where + ", entry " + std::to_string(i)));
  return w;
}

inline SpacePtr parse_space(const json& js) {
  if (!js.is_object()) throw invalid_input("space: expected an object");
  std::optional<PointConfig> coords;
  if (js.contains("points")) {
    const json& pts = js["points"];
    if (!pts.is_array() || pts.empty()) throw invalid_input("space.points: expected a non-empty array");
    std::vector<Point> rows;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const json& row = pts[i];
      std::string where = "space.points, point " + std::to_string(i);
      if (!row.is_array() || row.empty()) throw invalid_input(where + ": expected a non-empty array");
      Point p;
      for (std::size_t t = 0; t < row.size(); ++t)
        p.push_back(scalar_from_json(row[t], where + ", coordinate " + std::to_string(t)));
      rows.push_back(std::move(p));
    }
    coords.emplace(std::move(rows));
  }
  std::vector<std::string> labels;
  if (js.contains("labels")) {
    const json& ls = js["labels"];
    if (!ls.is_array() || ls.empty()) throw invalid_input("space.labels: expected a non-empty array");
    for (const json& l : ls) {
      if (!l.is_string()) throw invalid_input("space.labels: expected strings");
      labels.push_back(l.get<std::string>());
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j]) throw invalid_input("space.labels: duplicate label '" + labels[i] + "'");
  }
  if (!js.contains("metric"))
    throw invalid_input("space.metric: required (\"sup\" or a distance matrix)");
  const json& metric = js["metric"];
  if (metric.is_string() && metric.get<std::string>() == "sup") {
    if (!coords) throw invalid_input("space.metric: \"sup\" requires space.points");
    if (labels.empty()) labels = GroundSpace::auto_labels(coords->size());
    return GroundSpace::sup_space(std::move(labels), std::move(*coords));
  }
  if (metric.is_array()) {
    std::size_t n = metric.size();
    if (n == 0) throw invalid_input("space.metric: expected a non-empty matrix");
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const json& row = metric[i];
      if (!row.is_array() || row.size() != n) throw invalid_input("space.metric: expected a square matrix");
      for (std::size_t j = 0; j < n; ++j) {
        if (!row[j].is_number()) throw invalid_input("space.metric: expected numbers");
        dist[i * n + j] = row[j].get<double>();
      }
    }
    if (labels.empty()) labels = GroundSpace::auto_labels(n);
    return std::make_shared<GroundSpace>(std::move(labels), std::move(coords), std::move(dist));
  }
  throw invalid_input("space.metric: expected \"sup\" or a distance matrix");
}

}  // namespace detail

inline Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw invalid_input("invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  if (!j.is_object()) throw invalid_input("document: expected a JSON object");
  if (!j.contains("version") || !j["version"].is_string() || j["version"].get<std::string>() != "tropibary/1")
    throw invalid_input("document: version must be \"tropibary/1\"");
  if (!j.contains("space")) throw invalid_input("document: space is required");
  Document doc;
  doc.space = detail::parse_space(j["space"]);
  std::size_t n = doc.space->size();
  if (j.contains("measures")) {
    const json& ms = j["measures"];
    if (!ms.is_object()) throw invalid_input("measures: expected an object of named measures");
    for (const auto& [name, spec] : ms.items()) {
      std::string where = "measures." + name;
      if (!spec.is_object() || !spec.contains("weights"))
        throw invalid_input(where + ": expected {\"weights\": [...]}");
      std::vector<Scalar> w = detail::weight_list(spec["weights"], n, where);
      try {
        doc.measures.emplace_back(name, IdempotentMeasure(doc.space, std::move(w)));
      } catch (const invalid_input& e) {
        throw invalid_input(where + ": " + e.what());
      }
    }
  }
  if (j.contains("meta_measures")) {
    const json& ms = j["meta_measures"];
    if (!ms.is_object()) throw invalid_input("meta_measures: expected an object");
    for (const auto& [name, spec] : ms.items()) {
      std::string where = "meta_measures." + name;
      if (!spec.is_object() || !spec.contains("atoms") || !spec.contains("weights"))
        throw invalid_input(where + ": expected {\"atoms\": [...], \"weights\": [...]}");
      const json& atoms = spec["atoms"];
      if (!atoms.is_array() || atoms.empty()) throw invalid_input(where + ".atoms: expected a non-empty array");
      std::vector<std::string> names;
      std::vector<IdempotentMeasure> resolved;
      for (const json& a : atoms) {
        if (!a.is_string()) throw invalid_input(where + ".atoms: expected measure names");
        names.push_back(a.get<std::string>());
        resolved.push_back(doc.measure(names.back()));
      }
      std::vector<Scalar> w = detail::weight_list(spec["weights"], names.size(), where + ".weights");
      try {
        MetaMeasure meta(std::move(resolved), w);
        doc.metas.emplace_back(name, NamedMeta{std::move(names), std::move(w), std::move(meta)});
      } catch (const invalid_input& e) {
        throw invalid_input(where + ": " + e.what());
      }
    }
  }
  return doc;
}

inline std::string serialize_document(const Document& doc) {
  json j;
  j["version"] = "tropibary/1";
  json js;
  const GroundSpace& sp = *doc.space;
  json labels = json::array();
  for (std::size_t i = 0; i < sp.size(); ++i) labels.push_back(sp.label(i));
  js["labels"] = std::move(labels);
  if (sp.has_coords()) {
    json pts = json::array();
    for (const Point& p : sp.coords().points()) {
      json row = json::array();
      for (Scalar c : p) row.push_back(scalar_to_json(c));
      pts.push_back(std::move(row));
    }
    js["points"] = std::move(pts);
  }
  if (sp.metric_kind() == "sup") {
    js["metric"] = "sup";
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < sp.size(); ++i) {
      json row = json::array();
      for (std::size_t jx = 0; jx < sp.size(); ++jx) row.push_back(sp.distance(i, jx));
      rows.push_back(std::move(row));
    }
    js["metric"] = std::move(rows);
  }
  j["space"] = std::move(js);
  json ms = json::object();
  for (const auto& [name, m] : doc.measures) {
    json arr = json::array();
    for (Scalar w : m.weights()) arr.push_back(scalar_to_json(w));
    ms[name] = json{{"weights", std::move(arr)}};
  }
  j["measures"] = std::move(ms);
  if (!doc.metas.empty()) {
    json mts = json::object();
    for (const auto& [name, nm] : doc.metas) {
      json spec;
      spec["atoms"] = nm.atom_names;
      json arr = json::array();
      for (Scalar w : nm.raw_weights) arr.push_back(scalar_to_json(w));
      spec["weights"] = std::move(arr);
      mts[name] = std::move(spec);
    }
    j["meta_measures"] = std::move(mts);
  }
  return j.dump(2) + "\n";
}

}  // namespace tropibary
