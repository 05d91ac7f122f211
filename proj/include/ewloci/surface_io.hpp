#pragma once

// Surface files:
//   {"cells": n,
//    "pairings": [[sideA, sideB, flip, weight?], ...],
//    "marked": [[cell, corner], ...],          optional
//    "labels": [[cell, corner, label], ...]}   optional
// Unknown keys are rejected.  Cover files add a "cover" object handled by
// cover_builder.

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ewloci/error.hpp"
#include "ewloci/flat_surface.hpp"

namespace ewloci {

using json = nlohmann::json;

namespace detail {

inline int json_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw Error(ErrorKind::ParseError, what + " must be an integer");
  return j.get<int>();
}

inline const json& json_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, what + " must be an array");
  return j;
}

}  // namespace detail

inline CellComplexSurface surface_from_json(const json& j, const std::set<std::string>& extra_keys = {}) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "surface document must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "cells" && key != "pairings" && key != "marked" && key != "labels" && !extra_keys.count(key)) {
      throw Error(ErrorKind::ParseError, "unknown key '" + key + "'");
    }
  }
  if (!j.contains("cells") || !j.contains("pairings")) throw Error(ErrorKind::ParseError, "need 'cells' and 'pairings'");
  int n = detail::json_int(j.at("cells"), "cells");
  std::vector<SideCouple> couples;
  for (const auto& p : detail::json_array(j.at("pairings"), "pairings")) {
    if (!p.is_array() || p.size() < 3 || p.size() > 4 || !p[2].is_boolean()) {
      throw Error(ErrorKind::ParseError, "pairing must be [sideA, sideB, flip, weight?]");
    }
    SideCouple c{detail::json_int(p[0], "side"), detail::json_int(p[1], "side"), p[2].get<bool>(), {}};
    if (p.size() == 4) c.weight = detail::json_int(p[3], "weight");
    couples.push_back(c);
  }
  std::vector<CornerRef> marked;
  if (j.contains("marked")) {
    for (const auto& m : detail::json_array(j.at("marked"), "marked")) {
      if (!m.is_array() || m.size() != 2) throw Error(ErrorKind::ParseError, "marked entry must be [cell, corner]");
      marked.push_back({detail::json_int(m[0], "cell"), detail::json_int(m[1], "corner")});
    }
  }
  std::vector<VertexLabel> labels;
  if (j.contains("labels")) {
    for (const auto& l : detail::json_array(j.at("labels"), "labels")) {
      if (!l.is_array() || l.size() != 3) throw Error(ErrorKind::ParseError, "label entry must be [cell, corner, label]");
      labels.push_back({{detail::json_int(l[0], "cell"), detail::json_int(l[1], "corner")}, detail::json_int(l[2], "label")});
    }
  }
  return CellComplexSurface::build(n, std::move(couples), marked, labels);
}

inline json surface_to_json(const CellComplexSurface& s) {
  json j;
  j["cells"] = s.cells();
  json pairings = json::array();
  for (const auto& c : s.couples()) {
    json p = json::array({c.a, c.b, c.flip});
    if (c.weight) p.push_back(*c.weight);
    pairings.push_back(p);
  }
  j["pairings"] = pairings;
  auto marked = s.marked_corners();
  if (!marked.empty()) {
    json m = json::array();
    for (auto x : marked) m.push_back({x.cell, x.corner});
    j["marked"] = m;
  }
  auto labels = s.vertex_labels();
  if (!labels.empty()) {
    json l = json::array();
    for (auto x : labels) l.push_back({x.at.cell, x.at.corner, x.label});
    j["labels"] = l;
  }
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace ewloci
