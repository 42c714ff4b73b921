#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lefrank/filtration.hpp"
#include "lefrank/graded.hpp"

namespace lefrank {

// Finite dimensional graded commutative ring with a top class evaluation,
// the shape cohomology of a closed oriented manifold takes.  Degrees run
// 0..dim; products landing above dim are zero.
struct CohomologyRing {
  int dim = 0;
  std::vector<int> betti;
  std::vector<std::vector<std::string>> labels;
  // products[a][i][b][j]: coordinates of the product in degree a+b, empty
  // when a+b exceeds dim.
  std::vector<std::vector<std::vector<std::vector<VectorQ>>>> products;
  VectorQ orientation;
  std::map<std::string, std::pair<int, VectorQ>> classes;

  int betti_at(int d) const {
    return (d < 0 || d > dim || d >= static_cast<int>(betti.size())) ? 0 : betti[d];
  }

  void allocate() {
    labels.resize(dim + 1);
    for (int d = 0; d <= dim; ++d) labels[d].resize(betti_at(d));
    products.assign(dim + 1, {});
    for (int a = 0; a <= dim; ++a) {
      products[a].assign(betti_at(a), {});
      for (int i = 0; i < betti_at(a); ++i) {
        products[a][i].assign(dim + 1, {});
        for (int b = 0; b <= dim; ++b)
          products[a][i][b].assign(betti_at(b), VectorQ(betti_at(a + b), Rational(0)));
      }
    }
    orientation.assign(betti_at(dim), Rational(0));
  }

  const VectorQ& basis_product(int a, int i, int b, int j) const {
    return products[a][i][b][j];
  }

  VectorQ mul(int a, const VectorQ& x, int b, const VectorQ& y) const {
    VectorQ out(betti_at(a + b), Rational(0));
    if (a < 0 || b < 0 || a > dim || b > dim) return out;
    for (int i = 0; i < betti_at(a); ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < betti_at(b); ++j) {
        if (y[j] == 0) continue;
        const VectorQ& p = products[a][i][b][j];
        for (std::size_t t = 0; t < out.size(); ++t) {
          if (p[t] == 0) continue;
          out[t] += x[i] * y[j] * p[t];
        }
      }
    }
    return out;
  }

  Rational orient(int deg, const VectorQ& x) const {
    if (deg != dim) return Rational(0);
    Rational s(0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0 && orientation[i] != 0) s += x[i] * orientation[i];
    return s;
  }

  std::optional<std::pair<int, int>> find_label(const std::string& name) const {
    for (int d = 0; d <= dim; ++d)
      for (int i = 0; i < betti_at(d); ++i)
        if (labels[d][i] == name) return std::make_pair(d, i);
    return std::nullopt;
  }
};

inline Verdict validate_ring(const CohomologyRing& r) {
  if (r.dim < 0) return verdict_fail("negative top degree");
  if (static_cast<int>(r.betti.size()) != r.dim + 1)
    return verdict_fail("betti table does not cover degrees 0..dim");
  for (int d = 0; d <= r.dim; ++d)
    if (r.betti[d] < 0) return verdict_fail("negative betti number in degree " + std::to_string(d));
  if (r.betti[0] != 1) return verdict_fail("degree zero must be one dimensional");
  if (static_cast<int>(r.labels.size()) != r.dim + 1) return verdict_fail("label table shape");
  for (int d = 0; d <= r.dim; ++d)
    if (static_cast<int>(r.labels[d].size()) != r.betti[d])
      return verdict_fail("label count mismatch in degree " + std::to_string(d));
  {
    std::map<std::string, int> seen;
    for (int d = 0; d <= r.dim; ++d)
      for (const auto& l : r.labels[d]) {
        if (l.empty()) return verdict_fail("empty basis label");
        if (seen.count(l)) return verdict_fail("duplicate basis label '" + l + "'");
        seen[l] = d;
      }
  }
  if (static_cast<int>(r.products.size()) != r.dim + 1) return verdict_fail("product table shape");
  for (int a = 0; a <= r.dim; ++a) {
    if (static_cast<int>(r.products[a].size()) != r.betti[a])
      return verdict_fail("product table shape in degree " + std::to_string(a));
    for (int i = 0; i < r.betti[a]; ++i) {
      if (static_cast<int>(r.products[a][i].size()) != r.dim + 1)
        return verdict_fail("product table shape");
      for (int b = 0; b <= r.dim; ++b)
        for (int j = 0; j < r.betti_at(b); ++j)
          if (static_cast<int>(r.products[a][i][b][j].size()) != r.betti_at(a + b))
            return verdict_fail("product value shape at degrees " + std::to_string(a) + "," +
                                std::to_string(b));
    }
  }
  if (static_cast<int>(r.orientation.size()) != r.betti_at(r.dim))
    return verdict_fail("orientation shape");
  // Unit.
  for (int b = 0; b <= r.dim; ++b)
    for (int j = 0; j < r.betti_at(b); ++j) {
      VectorQ unit_coords(1, Rational(1));
      VectorQ basis_coords(r.betti_at(b), Rational(0));
      basis_coords[j] = 1;
      if (r.mul(0, unit_coords, b, basis_coords) != basis_coords ||
          r.mul(b, basis_coords, 0, unit_coords) != basis_coords)
        return verdict_fail("unit fails on '" + r.labels[b][j] + "'");
    }
  // Graded commutativity.
  for (int a = 0; a <= r.dim; ++a)
    for (int b = a; b <= r.dim; ++b) {
      if (a + b > r.dim) continue;
      bool flip = (a % 2 == 1) && (b % 2 == 1);
      for (int i = 0; i < r.betti_at(a); ++i)
        for (int j = 0; j < r.betti_at(b); ++j) {
          VectorQ xy = r.basis_product(a, i, b, j);
          VectorQ yx = r.basis_product(b, j, a, i);
          for (std::size_t t = 0; t < xy.size(); ++t) {
            Rational want = flip ? Rational(-yx[t]) : yx[t];
            if (xy[t] != want)
              return verdict_fail("graded commutativity fails on '" + r.labels[a][i] + "','" +
                                  r.labels[b][j] + "'");
          }
        }
    }
  // Associativity, only where a product can be nonzero.  Both sides expand
  // through the basis product table directly; basis products are sparse in
  // every ring this library constructs, so this stays cheap.
  for (int a = 0; a <= r.dim; ++a)
    for (int b = 0; a + b <= r.dim; ++b)
      for (int c = 0; a + b + c <= r.dim; ++c) {
        int tot = r.betti_at(a + b + c);
        for (int i = 0; i < r.betti_at(a); ++i)
          for (int j = 0; j < r.betti_at(b); ++j) {
            const VectorQ& xy = r.basis_product(a, i, b, j);
            for (int t = 0; t < r.betti_at(c); ++t) {
              VectorQ left(tot, Rational(0));
              for (int u = 0; u < r.betti_at(a + b); ++u) {
                if (xy[u] == 0) continue;
                const VectorQ& p = r.basis_product(a + b, u, c, t);
                for (int s = 0; s < tot; ++s)
                  if (p[s] != 0) left[s] += xy[u] * p[s];
              }
              const VectorQ& yz = r.basis_product(b, j, c, t);
              VectorQ right(tot, Rational(0));
              for (int u = 0; u < r.betti_at(b + c); ++u) {
                if (yz[u] == 0) continue;
                const VectorQ& p = r.basis_product(a, i, b + c, u);
                for (int s = 0; s < tot; ++s)
                  if (p[s] != 0) right[s] += yz[u] * p[s];
              }
              if (left != right)
                return verdict_fail("associativity fails on '" + r.labels[a][i] + "','" +
                                    r.labels[b][j] + "','" + r.labels[c][t] + "'");
            }
          }
      }
  // Poincare pairing against the orientation class.
  for (int k = 0; k <= r.dim; ++k) {
    if (r.betti_at(k) != r.betti_at(r.dim - k))
      return verdict_fail("betti numbers not symmetric at degree " + std::to_string(k));
    int nk = r.betti_at(k);
    if (nk == 0) continue;
    MatrixQ pairing(nk, nk);
    for (int i = 0; i < nk; ++i)
      for (int j = 0; j < nk; ++j)
        pairing.at(i, j) = r.orient(r.dim, r.basis_product(k, i, r.dim - k, j));
    if (rank(pairing) != static_cast<std::size_t>(nk))
      return verdict_fail("degenerate pairing in degree " + std::to_string(k));
  }
  for (const auto& [name, cls] : r.classes) {
    if (cls.first < 0 || cls.first > r.dim)
      return verdict_fail("named class '" + name + "' has a bad degree");
    if (static_cast<int>(cls.second.size()) != r.betti_at(cls.first))
      return verdict_fail("named class '" + name + "' has bad coordinates");
  }
  return {};
}

struct SymplecticData {
  CohomologyRing ring;
  VectorQ omega;
};

inline Verdict validate_symplectic(const SymplecticData& s) {
  Verdict rv = validate_ring(s.ring);
  if (!rv) return rv;
  if (s.ring.dim % 2 != 0) return verdict_fail("odd dimensional manifold cannot be symplectic");
  if (static_cast<int>(s.omega.size()) != s.ring.betti_at(2))
    return verdict_fail("symplectic class must live in degree two");
  int n = s.ring.dim / 2;
  VectorQ p(1, Rational(1));
  int deg = 0;
  for (int i = 0; i < n; ++i) {
    p = s.ring.mul(deg, p, 2, s.omega);
    deg += 2;
  }
  if (s.ring.orient(deg, p) == 0)
    return verdict_fail("top power of the symplectic class vanishes");
  return {};
}

// Cup product with a fixed degree two class, viewed as the raising operator
// on the weight graded space with weight = degree.
inline BModule lefschetz_bmodule(const CohomologyRing& r, const VectorQ& alpha) {
  if (static_cast<int>(alpha.size()) != r.betti_at(2))
    throw invalid_input("lefschetz_bmodule: class must have degree two coordinates");
  BModule m;
  for (int d = 0; d <= r.dim; ++d)
    if (r.betti_at(d) > 0) m.space.dims[d] = r.betti_at(d);
  for (int d = 0; d <= r.dim; ++d) {
    if (r.betti_at(d) == 0 || r.betti_at(d + 2) == 0) continue;
    MatrixQ e(r.betti_at(d + 2), r.betti_at(d));
    for (int j = 0; j < r.betti_at(d); ++j) {
      VectorQ basis_j(r.betti_at(d), Rational(0));
      basis_j[j] = 1;
      VectorQ col = r.mul(2, alpha, d, basis_j);
      for (int i = 0; i < r.betti_at(d + 2); ++i) e.at(i, j) = col[i];
    }
    m.set_e(d, e);
  }
  return m;
}

inline BModule lefschetz_bmodule(const SymplecticData& s) {
  return lefschetz_bmodule(s.ring, s.omega);
}

// Half-dimension saturation tests on a plain module; n is half the real
// dimension of the underlying space.
inline bool module_hard_lefschetz(const BModule& m, int n) {
  return rank_saturated_at(m, n);
}
inline bool module_weak_lefschetz(const BModule& m, int n) {
  return rank_saturated_at(m, n + 1);
}

inline bool hard_lefschetz(const SymplecticData& s) {
  return module_hard_lefschetz(lefschetz_bmodule(s), s.ring.dim / 2);
}

inline bool weak_lefschetz(const SymplecticData& s) {
  return module_weak_lefschetz(lefschetz_bmodule(s), s.ring.dim / 2);
}

// Three equivalent readings of "level m exhausts everything": surjectivity
// of the iterated raising maps, fullness of the filtration level, vanishing
// of the complementary level of the dual pairing.
struct LevelEquivalence {
  int m = 0;
  bool onto = false;
  bool filtration_full = false;
  bool complement_vanishes = false;
  bool agree = false;
};

struct LefschetzReport {
  bool hard = false;
  bool weak = false;
  int lo = 0;
  int hi = 0;
  std::vector<LevelEquivalence> levels;
};

inline LefschetzReport lefschetz_report(const CohomologyRing& r, const VectorQ& alpha) {
  Verdict rv = validate_ring(r);
  if (!rv) throw invalid_input("lefschetz_report: " + rv.message);
  BModule m = lefschetz_bmodule(r, alpha);
  CanonicalFiltration f = canonical_filtration(m);
  LefschetzReport rep;
  rep.lo = f.lo;
  rep.hi = f.hi;
  int n = r.dim / 2;
  rep.hard = (r.dim % 2 == 0) && module_hard_lefschetz(m, n);
  rep.weak = (r.dim % 2 == 0) && module_weak_lefschetz(m, n);
  int total = m.total_dim();
  for (int lvl = f.lo - 1; lvl <= f.hi; ++lvl) {
    LevelEquivalence eq;
    eq.m = lvl;
    eq.onto = rank_saturated_at(m, lvl);
    eq.filtration_full = (f.total_dim_at(lvl) == total);
    eq.complement_vanishes = (f.total_dim_at(r.dim - lvl - 1) == 0);
    eq.agree = (eq.onto == eq.filtration_full) && (eq.onto == eq.complement_vanishes);
    internal_check(eq.agree, "level equivalence broke at level " + std::to_string(lvl));
    rep.levels.push_back(eq);
  }
  if (r.dim % 2 == 0) {
    internal_check(rep.hard == (f.lo == f.hi),
                   "hard verdict disagrees with the filtration gap");
    internal_check(rep.weak == (f.hi <= n + 1),
                   "weak verdict disagrees with the saturation level");
  }
  internal_check(f.lo + f.hi == r.dim, "filtration levels do not mirror around half dim");
  return rep;
}

// Graded pairing induced by the orientation class on opposite filtration
// levels; the orientation kills V_m against V_{dim-m-1}, so the pairing
// descends to the graded pieces, where it must be perfect.
struct GradedPairingReport {
  int m = 0;
  int left_dim = 0;
  int right_dim = 0;
  MatrixQ matrix;
  bool square = false;
  bool nondegenerate = false;
};

namespace detail {

// Lifted canonical bases of the graded piece at level m: per weight, rows
// spanning a complement of the lower level inside the upper one.
inline std::map<int, MatrixQ> piece_lifts(const CanonicalFiltration& f, int m) {
  std::map<int, MatrixQ> lifts;
  for (const auto& [k, s] : f.at(m)) {
    const Subspace& lower = f.at(m - 1).at(k);
    std::vector<VectorQ> residues;
    for (std::size_t i = 0; i < s.dim(); ++i)
      residues.push_back(lower.residue(s.basis().row(i)));
    Subspace c = Subspace::span(s.ambient_dim(), MatrixQ::from_rows(residues));
    if (c.dim() > 0) lifts[k] = c.basis();
  }
  return lifts;
}

}  // namespace detail

inline bool pairing_descends(const CohomologyRing& r, const CanonicalFiltration& f, int m) {
  const WeightFamily& vm = f.at(m);
  const WeightFamily& vc = f.at(r.dim - m - 1);
  for (const auto& [k, s] : vm) {
    auto it = vc.find(r.dim - k);
    if (it == vc.end()) continue;
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < it->second.dim(); ++j) {
        VectorQ prod = r.mul(k, s.basis().row(i), r.dim - k, it->second.basis().row(j));
        if (r.orient(r.dim, prod) != 0) return false;
      }
  }
  return true;
}

inline GradedPairingReport poincare_graded_pairing(const CohomologyRing& r,
                                                   const VectorQ& alpha, int m) {
  BModule mod = lefschetz_bmodule(r, alpha);
  CanonicalFiltration f = canonical_filtration(mod);
  internal_check(pairing_descends(r, f, m),
                 "orientation pairing does not descend to the graded pieces");
  auto left = detail::piece_lifts(f, m);
  auto right = detail::piece_lifts(f, r.dim - m);
  std::vector<std::pair<int, VectorQ>> lv, rv;
  for (const auto& [k, rows] : left)
    for (std::size_t i = 0; i < rows.rows(); ++i) lv.emplace_back(k, rows.row(i));
  for (const auto& [k, rows] : right)
    for (std::size_t i = 0; i < rows.rows(); ++i) rv.emplace_back(k, rows.row(i));
  GradedPairingReport rep;
  rep.m = m;
  rep.left_dim = static_cast<int>(lv.size());
  rep.right_dim = static_cast<int>(rv.size());
  rep.matrix = MatrixQ(lv.size(), rv.size());
  for (std::size_t i = 0; i < lv.size(); ++i)
    for (std::size_t j = 0; j < rv.size(); ++j) {
      VectorQ prod = r.mul(lv[i].first, lv[i].second, rv[j].first, rv[j].second);
      rep.matrix.at(i, j) = r.orient(lv[i].first + rv[j].first, prod);
    }
  rep.square = (rep.left_dim == rep.right_dim);
  rep.nondegenerate =
      rep.square && rank(rep.matrix) == static_cast<std::size_t>(rep.left_dim);
  return rep;
}

// Resolution order for a user supplied class name: named classes, then exact
// basis labels, then a +/- combination of labels with optional rational
// coefficients ("e14+e23", "2*h-1/3*k").
inline std::pair<int, VectorQ> resolve_class(const CohomologyRing& r, const std::string& text) {
  if (text.empty()) throw invalid_input("empty class expression");
  auto cls = r.classes.find(text);
  if (cls != r.classes.end()) return cls->second;
  if (auto hit = r.find_label(text)) {
    VectorQ v(r.betti_at(hit->first), Rational(0));
    v[hit->second] = 1;
    return {hit->first, v};
  }
  int degree = -1;
  VectorQ acc;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    Rational sign(1);
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
    } else if (!first) {
      throw invalid_input("expected '+' or '-' in class expression '" + text + "'");
    }
    first = false;
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '+' && text[pos] != '-') ++pos;
    std::string term = text.substr(start, pos - start);
    if (term.empty()) throw invalid_input("empty term in class expression '" + text + "'");
    Rational coeff(1);
    std::string label = term;
    auto star = term.find('*');
    if (star != std::string::npos) {
      coeff = parse_rational(term.substr(0, star));
      label = term.substr(star + 1);
    }
    auto hit = r.find_label(label);
    if (!hit) throw invalid_input("unknown basis label '" + label + "'");
    if (degree == -1) {
      degree = hit->first;
      acc.assign(r.betti_at(degree), Rational(0));
    } else if (degree != hit->first) {
      throw invalid_input("class expression mixes degrees " + std::to_string(degree) +
                          " and " + std::to_string(hit->first));
    }
    acc[hit->second] += sign * coeff;
  }
  return {degree, acc};
}

}  // namespace lefrank
