#pragma once

// Scene JSON:
//   {"field":"R"|"C", "d":int, "k":int, "sets":[[[x...]...]...],
//    "assignment":{"points":[[...]...], "phi":[int...]}?,
//    "planted":{"base":[...], "dirs":[[...]...]}?,
//    "label":{"value":"yes"|"no"|"unknown", "provenance":string}?}
// Complex vectors list 2d reals with (re, im) interleaved.  Numbers are
// written with 17 significant digits, so parse(emit(s)) reproduces s exactly.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ktrans/consistency.hpp"
#include "ktrans/core.hpp"
#include "ktrans/error.hpp"
#include "ktrans/instances.hpp"

namespace ktrans {

using json = nlohmann::json;

/// 17-significant-digit decimal that always reads back as a floating value.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

inline std::string format_vector(const CVec& v, Field f) {
  const RVec r = realify(v, f);
  std::string s = "[";
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (i) s += ", ";
    s += format_double(r(i));
  }
  return s + "]";
}

inline std::string json_string(const std::string& s) { return json(s).dump(); }

inline std::string emit_flat_fields(const AffineFlat& fl) {
  std::string s = "{\"base\": " + format_vector(fl.base(), fl.field()) + ", \"dirs\": [";
  for (int c = 0; c < fl.k(); ++c) {
    if (c) s += ", ";
    s += format_vector(fl.dirs().col(c), fl.field());
  }
  return s + "]}";
}

inline std::string emit_scene(const Scene& sc) {
  validate_scene(sc);
  std::ostringstream o;
  o << "{\n";
  o << "  \"field\": \"" << field_tag(sc.field) << "\",\n";
  o << "  \"d\": " << sc.d << ",\n";
  o << "  \"k\": " << sc.k << ",\n";
  o << "  \"sets\": [";
  for (std::size_t i = 0; i < sc.sets.size(); ++i) {
    o << (i ? ",\n    [" : "\n    [");
    const auto& vs = sc.sets[i].vertices();
    for (std::size_t j = 0; j < vs.size(); ++j) o << (j ? ", " : "") << format_vector(vs[j], sc.field);
    o << "]";
  }
  o << (sc.sets.empty() ? "]" : "\n  ]");
  if (sc.assignment) {
    const auto& a = *sc.assignment;
    o << ",\n  \"assignment\": {\"points\": [";
    for (std::size_t i = 0; i < a.points.size(); ++i) o << (i ? ", " : "") << format_vector(a.points[i], a.field);
    o << "], \"phi\": [";
    for (std::size_t i = 0; i < a.phi.size(); ++i) o << (i ? ", " : "") << a.phi[i];
    o << "]}";
  }
  if (sc.planted) o << ",\n  \"planted\": " << emit_flat_fields(*sc.planted);
  if (sc.label)
    o << ",\n  \"label\": {\"value\": \"" << label_name(sc.label->value)
      << "\", \"provenance\": " << json_string(sc.label->provenance) << "}";
  o << "\n}\n";
  return o.str();
}

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  throw Error(Errc::parse_error, where + ": " + what);
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

inline const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

inline int read_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) parse_fail(where, "expected an integer");
  return v.get<int>();
}

inline CVec read_vector(const json& v, Field f, int dim, const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected an array of numbers");
  const int rd = real_dim(f);
  if (static_cast<int>(v.size()) != dim * rd)
    parse_fail(where, "expected " + std::to_string(dim * rd) + " numbers, got " + std::to_string(v.size()));
  RVec r(dim * rd);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) parse_fail(where + "[" + std::to_string(i) + "]", "expected a number");
    r(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  if (!r.allFinite()) parse_fail(where, "non-finite number");
  return complexify(r, f);
}

inline Field read_field(const json& v, const std::string& where) {
  if (v == "R") return Field::real;
  if (v == "C") return Field::complex;
  parse_fail(where, "field must be \"R\" or \"C\"");
}

inline AffineFlat read_flat(const json& v, Field f, int d, const std::string& where) {
  const CVec base = read_vector(member(v, "base", where), f, d, where + ".base");
  const json& dirs = member(v, "dirs", where);
  if (!dirs.is_array()) parse_fail(where + ".dirs", "expected an array of vectors");
  CMat m(d, static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t c = 0; c < dirs.size(); ++c)
    m.col(static_cast<Eigen::Index>(c)) = read_vector(dirs[c], f, d, where + ".dirs[" + std::to_string(c) + "]");
  try {
    return AffineFlat(f, base, m);
  } catch (const Error& e) {
    throw Error(Errc::invariant_violation, where + ": " + e.what());
  }
}

}  // namespace detail

inline Scene scene_from_json(const json& j) {
  Scene sc;
  sc.field = detail::read_field(detail::member(j, "field", "scene"), "field");
  sc.d = detail::read_int(detail::member(j, "d", "scene"), "d");
  sc.k = detail::read_int(detail::member(j, "k", "scene"), "k");
  if (sc.d < 1) detail::parse_fail("d", "must be positive");
  const json& sets = detail::member(j, "sets", "scene");
  if (!sets.is_array()) detail::parse_fail("sets", "expected an array of sets");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string where = "sets[" + std::to_string(i) + "]";
    if (!sets[i].is_array() || sets[i].empty()) detail::parse_fail(where, "expected a nonempty array of vertices");
    std::vector<CVec> vs;
    for (std::size_t v = 0; v < sets[i].size(); ++v)
      vs.push_back(detail::read_vector(sets[i][v], sc.field, sc.d, where + "[" + std::to_string(v) + "]"));
    sc.sets.emplace_back(sc.field, std::move(vs));
  }
  if (auto it = j.find("assignment"); it != j.end()) {
    PointAssignment a;
    a.field = sc.field;
    a.k = sc.k;
    const json& pts = detail::member(*it, "points", "assignment");
    if (!pts.is_array()) detail::parse_fail("assignment.points", "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i)
      a.points.push_back(detail::read_vector(pts[i], sc.field, sc.k, "assignment.points[" + std::to_string(i) + "]"));
    const json& phi = detail::member(*it, "phi", "assignment");
    if (!phi.is_array()) detail::parse_fail("assignment.phi", "expected an array");
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const int t = detail::read_int(phi[i], "assignment.phi[" + std::to_string(i) + "]");
      if (t < 0) detail::parse_fail("assignment.phi[" + std::to_string(i) + "]", "must be nonnegative");
      a.phi.push_back(static_cast<std::size_t>(t));
    }
    sc.assignment = a;
  }
  if (auto it = j.find("planted"); it != j.end()) sc.planted = detail::read_flat(*it, sc.field, sc.d, "planted");
  if (auto it = j.find("label"); it != j.end()) {
    SceneLabel l;
    const json& v = detail::member(*it, "value", "label");
    if (v == "yes") l.value = Label::yes;
    else if (v == "no") l.value = Label::no;
    else if (v == "unknown") l.value = Label::unknown;
    else detail::parse_fail("label.value", "must be \"yes\", \"no\" or \"unknown\"");
    if (auto p = it->find("provenance"); p != it->end()) {
      if (!p->is_string()) detail::parse_fail("label.provenance", "expected a string");
      l.provenance = p->get<std::string>();
    }
    sc.label = l;
  }
  validate_scene(sc);
  return sc;
}

inline Scene parse_scene(const std::string& text) { return scene_from_json(detail::parse_json(text)); }

/// Flat documents: {"field":..., "base":[...], "dirs":[[...]...]}, or any
/// object carrying such a flat under "flat" (e.g. a find-transversal report).
inline AffineFlat parse_flat(const std::string& text, Field f, int d) {
  const json j = detail::parse_json(text);
  const json* obj = &j;
  if (j.is_object() && j.contains("flat")) obj = &j["flat"];
  if (obj->is_null()) detail::parse_fail("flat", "document holds no flat");
  if (obj->contains("field") && detail::read_field((*obj)["field"], "flat.field") != f)
    throw Error(Errc::field_mismatch, "flat field differs from the scene");
  return detail::read_flat(*obj, f, d, "flat");
}

inline std::string emit_flat(const AffineFlat& fl) {
  std::string body = emit_flat_fields(fl);
  return "{\"field\": \"" + field_tag(fl.field()) + "\", " + body.substr(1) + "\n";
}

}  // namespace ktrans
