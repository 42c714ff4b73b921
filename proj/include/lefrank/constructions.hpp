#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lefrank/cohomology.hpp"

namespace lefrank {

// Structure constants over Q.  Only i < j pairs are stored (0-based);
// antisymmetry is built into the representation.
struct LieAlgebra {
  int dim = 0;
  std::map<std::pair<int, int>, std::map<int, Rational>> brackets;

  // [x_i, x_j] as a coordinate vector, any i, j.
  VectorQ bracket(int i, int j) const {
    VectorQ v(dim, Rational(0));
    if (i == j) return v;
    Rational sign(1);
    if (i > j) {
      std::swap(i, j);
      sign = -1;
    }
    auto it = brackets.find({i, j});
    if (it == brackets.end()) return v;
    for (const auto& [k, c] : it->second) v[k] = sign * c;
    return v;
  }
};

inline Verdict validate_lie(const LieAlgebra& g) {
  if (g.dim < 0) return verdict_fail("negative dimension");
  for (const auto& [ij, out] : g.brackets) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= g.dim || j >= g.dim)
      return verdict_fail("bracket index out of range");
    if (i >= j) return verdict_fail("brackets must be stored with i < j");
    for (const auto& [k, c] : out)
      if (k < 0 || k >= g.dim) return verdict_fail("bracket output index out of range");
  }
  // Jacobi: [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] = 0.
  for (int i = 0; i < g.dim; ++i)
    for (int j = i + 1; j < g.dim; ++j)
      for (int k = j + 1; k < g.dim; ++k) {
        VectorQ total(g.dim, Rational(0));
        auto add_term = [&](int a, int b, int c) {
          VectorQ ab = g.bracket(a, b);
          for (int t = 0; t < g.dim; ++t) {
            if (ab[t] == 0) continue;
            VectorQ tc = g.bracket(t, c);
            for (int s = 0; s < g.dim; ++s)
              if (tc[s] != 0) total[s] += ab[t] * tc[s];
          }
        };
        add_term(i, j, k);
        add_term(j, k, i);
        add_term(k, i, j);
        for (const auto& x : total)
          if (x != 0)
            return verdict_fail("Jacobi identity fails on generators " + std::to_string(i + 1) +
                                "," + std::to_string(j + 1) + "," + std::to_string(k + 1));
      }
  return {};
}

// Lower central series reaches zero.
inline bool is_nilpotent(const LieAlgebra& g) {
  Subspace current = Subspace::full(g.dim);
  for (int step = 0; step <= g.dim + 1; ++step) {
    if (current.dim() == 0) return true;
    std::vector<VectorQ> gens;
    for (int i = 0; i < g.dim; ++i)
      for (std::size_t r = 0; r < current.dim(); ++r) {
        VectorQ v(g.dim, Rational(0));
        VectorQ row = current.basis().row(r);
        for (int j = 0; j < g.dim; ++j) {
          if (row[j] == 0) continue;
          VectorQ br = g.bracket(i, j);
          for (int t = 0; t < g.dim; ++t)
            if (br[t] != 0) v[t] += row[j] * br[t];
        }
        gens.push_back(v);
      }
    Subspace next = gens.empty() ? Subspace(g.dim)
                                 : Subspace::span(g.dim, MatrixQ::from_rows(gens));
    if (next == current) return false;
    current = next;
  }
  return current.dim() == 0;
}

namespace detail {

// Monomial basis of the p-th exterior power: sorted index tuples in
// lexicographic order.
inline std::vector<std::vector<int>> monomials(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  std::vector<int> cur(p);
  for (int i = 0; i < p; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int t = p - 1;
    while (t >= 0 && cur[t] == n - p + t) --t;
    if (t < 0) break;
    ++cur[t];
    for (int s = t + 1; s < p; ++s) cur[s] = cur[s - 1] + 1;
  }
  return out;
}

// Wedge of two sorted tuples: nullopt on a repeated index, otherwise the
// merged tuple and the sign of the shuffle.
inline std::optional<std::pair<int, std::vector<int>>> wedge_monomials(
    const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> merged;
  merged.reserve(a.size() + b.size());
  int inversions = 0;
  for (int x : b) {
    int greater = 0;
    for (int y : a) {
      if (y == x) return std::nullopt;
      if (y > x) ++greater;
    }
    inversions += greater;
  }
  merged = a;
  merged.insert(merged.end(), b.begin(), b.end());
  std::sort(merged.begin(), merged.end());
  return std::make_pair(inversions % 2 == 0 ? 1 : -1, merged);
}

struct ExteriorBasis {
  int n = 0;
  std::vector<std::vector<std::vector<int>>> monos;        // per degree
  std::vector<std::map<std::vector<int>, int>> index;      // monomial -> position

  explicit ExteriorBasis(int n_) : n(n_) {
    monos.resize(n + 1);
    index.resize(n + 1);
    for (int p = 0; p <= n; ++p) {
      monos[p] = monomials(n, p);
      for (std::size_t i = 0; i < monos[p].size(); ++i) index[p][monos[p][i]] = static_cast<int>(i);
    }
  }
};

inline std::string monomial_label(const std::vector<int>& mono) {
  if (mono.empty()) return "1";
  std::string s = "e";
  bool wide = false;
  for (int i : mono)
    if (i >= 9) wide = true;
  for (std::size_t t = 0; t < mono.size(); ++t) {
    if (wide && t > 0) s += "_";
    s += std::to_string(mono[t] + 1);
  }
  return s;
}

// Basis classes represented by a single monomial keep its name; anything
// else gets a compact positional name that stays usable inside class
// expressions (no '+' or '-' in labels).
inline std::string class_label(const ExteriorBasis& basis, int p, const VectorQ& v, int index) {
  int nonzero = 0, last = -1;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) {
      ++nonzero;
      last = static_cast<int>(i);
    }
  if (nonzero == 1 && v[last] == 1) return monomial_label(basis.monos[p][last]);
  return "c" + std::to_string(p) + "_" + std::to_string(index);
}

}  // namespace detail

// Left invariant de Rham model: exterior algebra on the dual generators,
// with d x^k = -sum c^k_ij x^i x^j extended as an antiderivation.  Nilpotency
// is required; it makes the top cohomology one dimensional with the volume
// monomial as its canonical representative, which fixes the orientation.
inline CohomologyRing chevalley_eilenberg(const LieAlgebra& g) {
  Verdict lv = validate_lie(g);
  if (!lv) throw invalid_input("chevalley_eilenberg: " + lv.message);
  if (!is_nilpotent(g)) throw invalid_input("chevalley_eilenberg: algebra is not nilpotent");
  int n = g.dim;
  detail::ExteriorBasis basis(n);
  // Differential matrices per degree.
  std::vector<MatrixQ> d(n + 1);
  for (int p = 0; p <= n; ++p) {
    std::size_t rows = p + 1 <= n ? basis.monos[p + 1].size() : 0;
    d[p] = MatrixQ(rows, basis.monos[p].size());
    if (rows == 0) continue;
    for (std::size_t col = 0; col < basis.monos[p].size(); ++col) {
      const std::vector<int>& mono = basis.monos[p][col];
      for (std::size_t t = 0; t < mono.size(); ++t) {
        std::vector<int> rest;
        for (std::size_t s = 0; s < mono.size(); ++s)
          if (s != t) rest.push_back(mono[s]);
        // d x^{s_t} wedged back in; the two-form slides to the front freely.
        for (const auto& [ij, out] : g.brackets) {
          auto it = out.find(mono[t]);
          if (it == out.end()) continue;
          std::vector<int> two{ij.first, ij.second};
          auto w = detail::wedge_monomials(two, rest);
          if (!w) continue;
          Rational coeff = -it->second * Rational(w->first) *
                           Rational((t % 2 == 0) ? 1 : -1);
          d[p].at(basis.index[p + 1].at(w->second), col) += coeff;
        }
      }
    }
  }
  for (int p = 0; p + 2 <= n; ++p)
    internal_check((d[p + 1] * d[p]).is_zero(), "differential does not square to zero");
  // Harmonic style representatives: canonical complement of the exact forms
  // inside the closed ones.
  std::vector<Subspace> closed(n + 1), exact(n + 1), reps(n + 1);
  for (int p = 0; p <= n; ++p) {
    closed[p] = kernel_basis(d[p]);
    exact[p] = p == 0 ? Subspace(basis.monos[0].size()) : image_basis(d[p - 1]);
    std::vector<VectorQ> residues;
    for (std::size_t i = 0; i < closed[p].dim(); ++i)
      residues.push_back(exact[p].residue(closed[p].basis().row(i)));
    reps[p] = Subspace::span(exact[p].ambient_dim(),
                             residues.empty() ? MatrixQ(0, exact[p].ambient_dim())
                                              : MatrixQ::from_rows(residues));
  }
  CohomologyRing r;
  r.dim = n;
  r.betti.resize(n + 1);
  for (int p = 0; p <= n; ++p) r.betti[p] = static_cast<int>(reps[p].dim());
  r.allocate();
  for (int p = 0; p <= n; ++p)
    for (int i = 0; i < r.betti[p]; ++i)
      r.labels[p][i] = detail::class_label(basis, p, reps[p].basis().row(i), i);
  for (int a = 0; a <= n; ++a)
    for (int i = 0; i < r.betti[a]; ++i)
      for (int b = 0; a + b <= n; ++b)
        for (int j = 0; j < r.betti[b]; ++j) {
          VectorQ wedge(basis.monos[a + b].size(), Rational(0));
          const VectorQ u = reps[a].basis().row(i);
          const VectorQ v = reps[b].basis().row(j);
          for (std::size_t s = 0; s < u.size(); ++s) {
            if (u[s] == 0) continue;
            for (std::size_t t = 0; t < v.size(); ++t) {
              if (v[t] == 0) continue;
              auto w = detail::wedge_monomials(basis.monos[a][s], basis.monos[b][t]);
              if (!w) continue;
              wedge[basis.index[a + b].at(w->second)] += u[s] * v[t] * Rational(w->first);
            }
          }
          VectorQ residue = exact[a + b].residue(wedge);
          r.products[a][i][b][j] = reps[a + b].coordinates(residue);
        }
  if (r.betti[n] > 0) {
    internal_check(r.betti[n] == 1, "top cohomology of a nilpotent algebra must be a line");
    // The canonical representative is the volume monomial itself.
    r.orientation[0] = reps[n].basis().at(0, 0);
    internal_check(r.orientation[0] == 1, "top representative is not the volume monomial");
  }
  Verdict check = validate_ring(r);
  internal_check(check.ok, "invariant cohomology ring fails validation: " + check.message);
  return r;
}

inline CohomologyRing projective_space(int n_complex) {
  if (n_complex < 0) throw invalid_input("projective_space: negative dimension");
  CohomologyRing r;
  r.dim = 2 * n_complex;
  r.betti.assign(r.dim + 1, 0);
  for (int i = 0; i <= n_complex; ++i) r.betti[2 * i] = 1;
  r.allocate();
  for (int i = 0; i <= n_complex; ++i)
    r.labels[2 * i][0] = i == 0 ? "1" : (i == 1 ? "h" : "h" + std::to_string(i));
  for (int a = 0; a <= n_complex; ++a)
    for (int b = 0; a + b <= n_complex; ++b) r.products[2 * a][0][2 * b][0][0] = 1;
  r.orientation[0] = 1;
  return r;
}

inline LieAlgebra abelian_algebra(int k) {
  if (k < 0) throw invalid_input("abelian_algebra: negative dimension");
  LieAlgebra g;
  g.dim = k;
  return g;
}

inline CohomologyRing torus(int k) { return chevalley_eilenberg(abelian_algebra(k)); }

// Kuenneth product with the sign rule; basis of degree d is the ordered list
// of pairs (a, d-a) with ascending a, labels joined with '|'.
inline CohomologyRing product(const CohomologyRing& r1, const CohomologyRing& r2) {
  Verdict v1 = validate_ring(r1), v2 = validate_ring(r2);
  if (!v1) throw invalid_input("product: left factor: " + v1.message);
  if (!v2) throw invalid_input("product: right factor: " + v2.message);
  CohomologyRing r;
  r.dim = r1.dim + r2.dim;
  r.betti.assign(r.dim + 1, 0);
  // index maps: (a, i, b, j) -> position in degree a+b
  std::map<std::tuple<int, int, int, int>, int> pos;
  for (int d = 0; d <= r.dim; ++d) {
    int c = 0;
    for (int a = 0; a <= std::min(d, r1.dim); ++a) {
      int b = d - a;
      if (b > r2.dim) continue;
      for (int i = 0; i < r1.betti_at(a); ++i)
        for (int j = 0; j < r2.betti_at(b); ++j) pos[{a, i, b, j}] = c++;
    }
    r.betti[d] = c;
  }
  r.allocate();
  for (const auto& [key, p] : pos) {
    auto [a, i, b, j] = key;
    r.labels[a + b][p] = r1.labels[a][i] + "|" + r2.labels[b][j];
  }
  for (const auto& [k1, p1] : pos)
    for (const auto& [k2, p2] : pos) {
      auto [a1, i1, b1, j1] = k1;
      auto [a2, i2, b2, j2] = k2;
      int da = a1 + a2, db = b1 + b2;
      if (da + db > r.dim || da > r1.dim || db > r2.dim) continue;
      const VectorQ& left = r1.basis_product(a1, i1, a2, i2);
      const VectorQ& right = r2.basis_product(b1, j1, b2, j2);
      bool flip = (b1 % 2 == 1) && (a2 % 2 == 1);
      VectorQ& out = r.products[a1 + b1][p1][a2 + b2][p2];
      for (int u = 0; u < r1.betti_at(da); ++u) {
        if (left[u] == 0) continue;
        for (int w = 0; w < r2.betti_at(db); ++w) {
          if (right[w] == 0) continue;
          Rational c = left[u] * right[w];
          if (flip) c = -c;
          out[pos.at({da, u, db, w})] += c;
        }
      }
    }
  for (int i = 0; i < r1.betti_at(r1.dim); ++i)
    for (int j = 0; j < r2.betti_at(r2.dim); ++j)
      r.orientation[pos.at({r1.dim, i, r2.dim, j})] = r1.orientation[i] * r2.orientation[j];
  Verdict check = validate_ring(r);
  internal_check(check.ok, "product ring fails validation: " + check.message);
  return r;
}

// Raising module of a symplectic blowup along an embedded M of complex
// codimension k inside complex projective N-space: the ambient line piece
// plus M tensored with a shifted projective band.
inline BModule blowup_bmodule(const SymplecticData& m, int n_ambient, int codim) {
  Verdict sv = validate_symplectic(m);
  if (!sv) throw invalid_input("blowup_bmodule: " + sv.message);
  if (codim < 2) throw invalid_input("blowup_bmodule: codimension must be at least 2");
  if (m.ring.dim + 2 * codim != 2 * n_ambient)
    throw invalid_input("blowup_bmodule: dimensions do not match the ambient space");
  CohomologyRing cpn = projective_space(n_ambient);
  VectorQ h(1, Rational(1));
  BModule ambient = lefschetz_bmodule(cpn, h);
  CohomologyRing band_ring = projective_space(codim - 2);
  VectorQ hb(band_ring.betti_at(2), Rational(0));
  if (!hb.empty()) hb[0] = 1;
  BModule band = shift(lefschetz_bmodule(band_ring, hb), 2);
  BModule sub = tensor(lefschetz_bmodule(m), band);
  return direct_sum(ambient, sub);
}

// Built in example algebras.  Entries carry where the example comes from in
// the literature and, when one is standard, a symplectic class for it.
struct CatalogEntry {
  std::string name;
  std::string kind;
  std::string description;
  std::string provenance;
  std::string symplectic_class;  // empty when none is recorded
};

inline std::vector<CatalogEntry> catalog_builtin() {
  return {
      {"kodaira-thurston", "lie-algebra",
       "dim 4 nilpotent: [X1,X2]=X3; nilmanifold is symplectic but not Kahler",
       "Thurston's example of a closed symplectic manifold with no Kahler structure "
       "(Proc. AMS 55, 1976); underlying nilmanifold studied by Kodaira",
       "e14+e23"},
      {"heisenberg3", "lie-algebra",
       "dim 3 Heisenberg algebra: [X1,X2]=X3",
       "classical; compact quotient is the Heisenberg nilmanifold",
       ""},
      {"filiform6", "lie-algebra",
       "dim 6 filiform nilpotent: [X1,Xj]=X(j+1) for j=2..5; the listed class is "
       "symplectic but the degree 1 raising map has a kernel",
       "maximal nilpotency class algebra (0,0,12,13,14,15) from the standard "
       "six dimensional nilpotent classification",
       "e16+c2_2"},
      {"biheisenberg6", "lie-algebra",
       "dim 6 sum of two Heisenberg algebras: [X1,X2]=X3, [X4,X5]=X6",
       "product of two Heisenberg nilmanifolds, a standard six dimensional "
       "symplectic nilmanifold",
       "e13+e25+e46"},
      {"abelian<k>", "lie-algebra",
       "abelian algebra of dimension k (1 <= k <= 9); nilmanifold is the k-torus",
       "classical",
       ""},
  };
}

inline std::optional<LieAlgebra> catalog_builtin_algebra(const std::string& name) {
  auto pair_bracket = [](LieAlgebra& g, int i, int j, int k) {
    g.brackets[{i - 1, j - 1}][k - 1] = 1;
  };
  if (name == "kodaira-thurston") {
    LieAlgebra g;
    g.dim = 4;
    pair_bracket(g, 1, 2, 3);
    return g;
  }
  if (name == "heisenberg3") {
    LieAlgebra g;
    g.dim = 3;
    pair_bracket(g, 1, 2, 3);
    return g;
  }
  if (name == "filiform6") {
    LieAlgebra g;
    g.dim = 6;
    for (int j = 2; j <= 5; ++j) pair_bracket(g, 1, j, j + 1);
    return g;
  }
  if (name == "biheisenberg6") {
    LieAlgebra g;
    g.dim = 6;
    pair_bracket(g, 1, 2, 3);
    pair_bracket(g, 4, 5, 6);
    return g;
  }
  if (name.rfind("abelian", 0) == 0 && name.size() == 8 && name[7] >= '1' && name[7] <= '9')
    return abelian_algebra(name[7] - '0');
  return std::nullopt;
}

}  // namespace lefrank
