#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lefrank/cohomology.hpp"
#include "lefrank/constructions.hpp"
#include "lefrank/filtration.hpp"
#include "lefrank/graded.hpp"
#include "lefrank/spectral.hpp"

namespace lefrank {

using Json = nlohmann::ordered_json;

namespace jsondetail {

inline int parse_int_key(const std::string& s) {
  if (s.empty()) throw invalid_input("empty integer key");
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) throw invalid_input("bad integer key '" + s + "'");
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw invalid_input("bad integer key '" + s + "'");
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    throw invalid_input("integer key out of range '" + s + "'");
  }
}

inline const Json& require(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains(field))
    throw invalid_input("missing field '" + field + "'");
  return j.at(field);
}

inline int require_int(const Json& j, const std::string& field) {
  const Json& v = require(j, field);
  if (!v.is_number_integer()) throw invalid_input("field '" + field + "' must be an integer");
  return v.get<int>();
}

inline MatrixQ parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) throw invalid_input(where + ": matrix must be an array of rows");
  std::vector<VectorQ> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw invalid_input(where + ": matrix row must be an array");
    VectorQ r;
    for (const auto& cell : row) {
      if (!cell.is_string()) throw invalid_input(where + ": matrix entries must be strings");
      r.push_back(parse_rational(cell.get<std::string>()));
    }
    rows.push_back(r);
    if (rows.size() > 1 && rows.back().size() != rows.front().size())
      throw invalid_input(where + ": ragged matrix");
  }
  return MatrixQ::from_rows(rows);
}

inline Json matrix_json(const MatrixQ& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rational(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jsondetail

inline BModule json_to_bmodule(const Json& j) {
  BModule v;
  const Json& dims = jsondetail::require(j, "dims");
  if (!dims.is_object()) throw invalid_input("'dims' must be an object");
  for (const auto& [key, val] : dims.items()) {
    if (!val.is_number_integer() || val.get<int>() <= 0)
      throw invalid_input("dimension at weight " + key + " must be a positive integer");
    v.space.dims[jsondetail::parse_int_key(key)] = val.get<int>();
  }
  if (j.contains("e")) {
    const Json& e = j.at("e");
    if (!e.is_object()) throw invalid_input("'e' must be an object");
    for (const auto& [key, val] : e.items()) {
      int k = jsondetail::parse_int_key(key);
      MatrixQ m = jsondetail::parse_matrix(val, "e[" + key + "]");
      if (m.rows() != static_cast<std::size_t>(v.dim_at(k + 2)) ||
          m.cols() != static_cast<std::size_t>(v.dim_at(k)))
        throw invalid_input("raising map at weight " + key + " has the wrong shape");
      v.set_e(k, m);
    }
  }
  Verdict ok = validate_b(v);
  if (!ok) throw invalid_input(ok.message);
  return v;
}

inline GModule json_to_gmodule(const Json& j) {
  GModule g;
  g.b = json_to_bmodule(j);
  const Json& f = jsondetail::require(j, "f");
  if (!f.is_object()) throw invalid_input("'f' must be an object");
  for (const auto& [key, val] : f.items()) {
    int k = jsondetail::parse_int_key(key);
    MatrixQ m = jsondetail::parse_matrix(val, "f[" + key + "]");
    if (m.rows() != static_cast<std::size_t>(g.b.dim_at(k - 2)) ||
        m.cols() != static_cast<std::size_t>(g.b.dim_at(k)))
      throw invalid_input("lowering map at weight " + key + " has the wrong shape");
    g.set_f(k, m);
  }
  Verdict ok = validate_g(g);
  if (!ok) throw invalid_input(ok.message);
  return g;
}

inline Json bmodule_to_json(const BModule& v) {
  Json j = Json::object();
  Json dims = Json::object();
  for (const auto& [k, d] : v.space.dims) dims[std::to_string(k)] = d;
  j["dims"] = dims;
  Json e = Json::object();
  for (const auto& [k, m] : v.e_maps) e[std::to_string(k)] = jsondetail::matrix_json(m);
  j["e"] = e;
  return j;
}

inline Json gmodule_to_json(const GModule& g) {
  Json j = bmodule_to_json(g.b);
  Json f = Json::object();
  for (const auto& [k, m] : g.f_maps) f[std::to_string(k)] = jsondetail::matrix_json(m);
  j["f"] = f;
  return j;
}

// Ring schema: degrees with no basis entries are omitted from "basis";
// products not listed are zero; each unordered pair appears once and the
// reader symmetrizes with the sign rule, rejecting contradictions.
inline CohomologyRing json_to_ring(const Json& j) {
  CohomologyRing r;
  r.dim = jsondetail::require_int(j, "dim");
  if (r.dim < 0) throw invalid_input("'dim' must be nonnegative");
  const Json& betti = jsondetail::require(j, "betti");
  if (!betti.is_array() || static_cast<int>(betti.size()) != r.dim + 1)
    throw invalid_input("'betti' must list degrees 0..dim");
  for (const auto& b : betti) {
    if (!b.is_number_integer() || b.get<int>() < 0)
      throw invalid_input("betti numbers must be nonnegative integers");
    r.betti.push_back(b.get<int>());
  }
  r.allocate();
  const Json& basis = jsondetail::require(j, "basis");
  if (!basis.is_object()) throw invalid_input("'basis' must be an object");
  std::map<std::string, std::pair<int, int>> where;
  for (const auto& [key, val] : basis.items()) {
    int d = jsondetail::parse_int_key(key);
    if (d < 0 || d > r.dim) throw invalid_input("basis degree " + key + " out of range");
    if (!val.is_array() || static_cast<int>(val.size()) != r.betti_at(d))
      throw invalid_input("basis list at degree " + key + " must match the betti number");
    for (std::size_t i = 0; i < val.size(); ++i) {
      if (!val[i].is_string()) throw invalid_input("basis labels must be strings");
      std::string label = val[i].get<std::string>();
      if (label.empty() || where.count(label))
        throw invalid_input("basis labels must be nonempty and globally unique");
      r.labels[d][i] = label;
      where[label] = {d, static_cast<int>(i)};
    }
  }
  for (int d = 0; d <= r.dim; ++d)
    if (r.betti_at(d) > 0 && !basis.contains(std::to_string(d)))
      throw invalid_input("basis missing for degree " + std::to_string(d));
  auto lookup = [&](const std::string& label) -> std::pair<int, int> {
    auto it = where.find(label);
    if (it == where.end()) throw invalid_input("unknown basis label '" + label + "'");
    return it->second;
  };
  auto parse_coords = [&](const Json& out, int deg) -> VectorQ {
    VectorQ v(r.betti_at(deg), Rational(0));
    if (!out.is_object()) throw invalid_input("'out' must be an object");
    for (const auto& [label, value] : out.items()) {
      auto [d, i] = lookup(label);
      if (d != deg)
        throw invalid_input("label '" + label + "' has degree " + std::to_string(d) +
                            ", expected " + std::to_string(deg));
      if (!value.is_string()) throw invalid_input("coefficients must be rational strings");
      v[i] = parse_rational(value.get<std::string>());
    }
    return v;
  };
  std::map<std::tuple<int, int, int, int>, VectorQ> given;
  if (j.contains("products")) {
    const Json& products = j.at("products");
    if (!products.is_array()) throw invalid_input("'products' must be an array");
    for (const auto& entry : products) {
      const Json& ja = jsondetail::require(entry, "a");
      const Json& jb = jsondetail::require(entry, "b");
      if (!ja.is_string() || !jb.is_string())
        throw invalid_input("product factors must be basis labels");
      std::string la = ja.get<std::string>();
      std::string lb = jb.get<std::string>();
      auto [a, i] = lookup(la);
      auto [b, jj] = lookup(lb);
      VectorQ out(r.betti_at(a + b), Rational(0));
      if (entry.contains("out")) out = parse_coords(entry.at("out"), a + b);
      auto key = std::make_tuple(a, i, b, jj);
      if (given.count(key)) throw invalid_input("duplicate product entry for '" + la +
                                                "','" + lb + "'");
      given[key] = out;
    }
  }
  for (const auto& [key, out] : given) {
    auto [a, i, b, jj] = key;
    r.products[a][i][b][jj] = out;
    auto mirror = std::make_tuple(b, jj, a, i);
    bool flip = (a % 2 == 1) && (b % 2 == 1);
    VectorQ mirrored = out;
    if (flip)
      for (auto& x : mirrored) x = -x;
    auto it = given.find(mirror);
    if (it != given.end()) {
      if (it->second != mirrored)
        throw invalid_input("product entries for '" + r.labels[a][i] + "','" +
                            r.labels[b][jj] + "' contradict graded commutativity");
    } else {
      r.products[b][jj][a][i] = mirrored;
    }
  }
  const Json& orientation = jsondetail::require(j, "orientation");
  r.orientation = parse_coords(orientation, r.dim);
  if (j.contains("classes")) {
    const Json& classes = j.at("classes");
    if (!classes.is_object()) throw invalid_input("'classes' must be an object");
    for (const auto& [name, val] : classes.items()) {
      if (!val.is_object() || val.empty())
        throw invalid_input("named class '" + name + "' must be a nonempty label map");
      int deg = lookup(val.items().begin().key()).first;
      r.classes[name] = {deg, parse_coords(val, deg)};
    }
  }
  return r;
}

inline Json ring_to_json(const CohomologyRing& r) {
  Json j = Json::object();
  j["dim"] = r.dim;
  j["betti"] = r.betti;
  Json basis = Json::object();
  for (int d = 0; d <= r.dim; ++d) {
    if (r.betti_at(d) == 0) continue;
    Json list = Json::array();
    for (const auto& l : r.labels[d]) list.push_back(l);
    basis[std::to_string(d)] = list;
  }
  j["basis"] = basis;
  Json products = Json::array();
  for (int a = 0; a <= r.dim; ++a)
    for (int i = 0; i < r.betti_at(a); ++i)
      for (int b = a; a + b <= r.dim; ++b)
        for (int jj = (b == a ? i : 0); jj < r.betti_at(b); ++jj) {
          const VectorQ& out = r.basis_product(a, i, b, jj);
          bool nonzero = false;
          for (const auto& x : out)
            if (x != 0) nonzero = true;
          if (!nonzero) continue;
          Json entry = Json::object();
          entry["a"] = r.labels[a][i];
          entry["b"] = r.labels[b][jj];
          Json coords = Json::object();
          for (std::size_t t = 0; t < out.size(); ++t)
            if (out[t] != 0) coords[r.labels[a + b][t]] = format_rational(out[t]);
          entry["out"] = coords;
          products.push_back(entry);
        }
  j["products"] = products;
  Json orient = Json::object();
  for (std::size_t t = 0; t < r.orientation.size(); ++t)
    if (r.orientation[t] != 0) orient[r.labels[r.dim][t]] = format_rational(r.orientation[t]);
  j["orientation"] = orient;
  if (!r.classes.empty()) {
    Json classes = Json::object();
    for (const auto& [name, cls] : r.classes) {
      Json coords = Json::object();
      for (std::size_t t = 0; t < cls.second.size(); ++t)
        if (cls.second[t] != 0)
          coords[r.labels[cls.first][t]] = format_rational(cls.second[t]);
      classes[name] = coords;
    }
    j["classes"] = classes;
  }
  return j;
}

// Lie schema: 1-based generator indices, i < j.
inline LieAlgebra json_to_lie(const Json& j) {
  LieAlgebra g;
  g.dim = jsondetail::require_int(j, "dim");
  if (g.dim < 0) throw invalid_input("'dim' must be nonnegative");
  if (j.contains("brackets")) {
    const Json& brackets = j.at("brackets");
    if (!brackets.is_array()) throw invalid_input("'brackets' must be an array");
    for (const auto& entry : brackets) {
      int i = jsondetail::require_int(entry, "i");
      int jj = jsondetail::require_int(entry, "j");
      if (i < 1 || jj < 1 || i > g.dim || jj > g.dim || i >= jj)
        throw invalid_input("bracket indices must satisfy 1 <= i < j <= dim");
      const Json& out = jsondetail::require(entry, "out");
      if (!out.is_object()) throw invalid_input("bracket 'out' must be an object");
      for (const auto& [key, val] : out.items()) {
        int k = jsondetail::parse_int_key(key);
        if (k < 1 || k > g.dim) throw invalid_input("bracket output index out of range");
        if (!val.is_string()) throw invalid_input("bracket coefficients must be strings");
        Rational c = parse_rational(val.get<std::string>());
        if (c != 0) g.brackets[{i - 1, jj - 1}][k - 1] = c;
      }
    }
  }
  Verdict ok = validate_lie(g);
  if (!ok) throw invalid_input(ok.message);
  return g;
}

inline Json lie_to_json(const LieAlgebra& g) {
  Json j = Json::object();
  j["dim"] = g.dim;
  Json brackets = Json::array();
  for (const auto& [ij, out] : g.brackets) {
    Json entry = Json::object();
    entry["i"] = ij.first + 1;
    entry["j"] = ij.second + 1;
    Json coords = Json::object();
    for (const auto& [k, c] : out)
      if (c != 0) coords[std::to_string(k + 1)] = format_rational(c);
    entry["out"] = coords;
    brackets.push_back(entry);
  }
  j["brackets"] = brackets;
  return j;
}

inline std::string detect_kind(const Json& j) {
  if (!j.is_object()) throw invalid_input("input must be a JSON object");
  if (j.contains("betti")) return "ring";
  if (j.contains("brackets")) return "lie-algebra";
  if (j.contains("dims")) return j.contains("f") ? "gmodule" : "bmodule";
  throw invalid_input("cannot recognize the input schema");
}

inline Json filtration_report_json(const CanonicalFiltration& f, const MultiplicityTable& t) {
  Json j = Json::object();
  j["lo"] = f.lo;
  j["hi"] = f.hi;
  Json dims = Json::object();
  if (!f.module.is_zero()) {
    for (int m = f.lo - 1; m <= f.hi; ++m) {
      Json level = Json::object();
      for (const auto& [k, s] : f.at(m))
        if (s.dim() > 0) level[std::to_string(k)] = static_cast<int>(s.dim());
      dims[std::to_string(m)] = level;
    }
  }
  j["dims"] = dims;
  Json mult = Json::object();
  for (const auto& [m, row] : t.mult) {
    Json line = Json::object();
    for (const auto& [d, c] : row) line[std::to_string(d)] = c;
    mult[std::to_string(m)] = line;
  }
  j["multiplicities"] = mult;
  return j;
}

inline Json lefschetz_report_json(const LefschetzReport& rep) {
  Json j = Json::object();
  j["hard"] = rep.hard;
  j["weak"] = rep.weak;
  j["lo"] = rep.lo;
  j["hi"] = rep.hi;
  Json levels = Json::array();
  for (const auto& eq : rep.levels) {
    Json line = Json::object();
    line["m"] = eq.m;
    line["onto"] = eq.onto;
    line["filtration_full"] = eq.filtration_full;
    line["complement_vanishes"] = eq.complement_vanishes;
    levels.push_back(line);
  }
  j["levels"] = levels;
  return j;
}

inline Json certificate_json(const DegenerationCertificate& cert) {
  Json j = Json::object();
  j["certified"] = cert.certified;
  j["route"] = cert.route;
  j["r0"] = cert.r0;
  j["lo"] = cert.lo;
  j["hi"] = cert.hi;
  Json axioms = Json::array();
  for (const auto& a : cert.axioms) axioms.push_back(a);
  j["axioms"] = axioms;
  Json betti = Json::array();
  for (int b : cert.total_betti) betti.push_back(b);
  j["total_betti"] = betti;
  if (cert.truncated) j["truncated"] = true;
  Json reason = Json::array();
  for (const auto& line : cert.reason) reason.push_back(line);
  j["reason"] = reason;
  return j;
}

inline Json decompose_report_json(const GModule& g, const std::map<int, int>& mult) {
  Json j = Json::object();
  j["total"] = g.b.total_dim();
  Json m = Json::object();
  for (const auto& [d, c] : mult) m[std::to_string(d)] = c;
  j["multiplicities"] = m;
  return j;
}

}  // namespace lefrank
