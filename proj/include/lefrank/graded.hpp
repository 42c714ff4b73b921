#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "lefrank/matrix.hpp"
#include "lefrank/subspace.hpp"

namespace lefrank {

struct Verdict {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

inline Verdict verdict_fail(const std::string& message) { return Verdict{false, message}; }

// Finitely supported weight decomposition.  Only strictly positive entries
// are stored.
struct GradedSpace {
  std::map<int, int> dims;

  int dim_at(int k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
  }
  int total_dim() const {
    int t = 0;
    for (const auto& [k, d] : dims) t += d;
    return t;
  }
  bool is_zero() const { return dims.empty(); }
  int min_weight() const { return dims.empty() ? 0 : dims.begin()->first; }
  int max_weight() const { return dims.empty() ? 0 : dims.rbegin()->first; }
};

// Module over the upper triangular pair (h, e): h acts as the weight, e
// raises it by 2.  e_maps[k] sends the weight-k space to the weight-(k+2)
// space; missing entries are zero maps.
struct BModule {
  GradedSpace space;
  std::map<int, MatrixQ> e_maps;

  int dim_at(int k) const { return space.dim_at(k); }
  int total_dim() const { return space.total_dim(); }
  bool is_zero() const { return space.is_zero(); }
  int min_weight() const { return space.min_weight(); }
  int max_weight() const { return space.max_weight(); }

  MatrixQ e_at(int k) const {
    auto it = e_maps.find(k);
    if (it != e_maps.end()) return it->second;
    return MatrixQ(dim_at(k + 2), dim_at(k));
  }
  // Stores only maps that carry information; zero maps stay implicit.
  void set_e(int k, const MatrixQ& m) {
    if (m.is_zero())
      e_maps.erase(k);
    else
      e_maps[k] = m;
  }
};

// Full sl2 structure: adds the lowering operator.  f_maps[k] sends weight k
// to weight k-2.
struct GModule {
  BModule b;
  std::map<int, MatrixQ> f_maps;

  MatrixQ f_at(int k) const {
    auto it = f_maps.find(k);
    if (it != f_maps.end()) return it->second;
    return MatrixQ(b.dim_at(k - 2), b.dim_at(k));
  }
  void set_f(int k, const MatrixQ& m) {
    if (m.is_zero())
      f_maps.erase(k);
    else
      f_maps[k] = m;
  }
};

// Weight homogeneous linear map: maps[k] sends source weight k to target
// weight k + weight_shift.
struct GradedHom {
  BModule source;
  BModule target;
  int weight_shift = 0;
  std::map<int, MatrixQ> maps;

  MatrixQ map_at(int k) const {
    auto it = maps.find(k);
    if (it != maps.end()) return it->second;
    return MatrixQ(target.dim_at(k + weight_shift), source.dim_at(k));
  }
  void set_map(int k, const MatrixQ& m) {
    if (m.is_zero())
      maps.erase(k);
    else
      maps[k] = m;
  }
};

inline Verdict validate_b(const BModule& v) {
  for (const auto& [k, d] : v.space.dims)
    if (d <= 0) return verdict_fail("nonpositive dimension at weight " + std::to_string(k));
  for (const auto& [k, m] : v.e_maps) {
    if (m.rows() != static_cast<std::size_t>(v.dim_at(k + 2)) ||
        m.cols() != static_cast<std::size_t>(v.dim_at(k)))
      return verdict_fail("raising map shape mismatch at weight " + std::to_string(k));
  }
  return {};
}

inline Verdict validate_g(const GModule& g) {
  Verdict base = validate_b(g.b);
  if (!base) return base;
  for (const auto& [k, m] : g.f_maps) {
    if (m.rows() != static_cast<std::size_t>(g.b.dim_at(k - 2)) ||
        m.cols() != static_cast<std::size_t>(g.b.dim_at(k)))
      return verdict_fail("lowering map shape mismatch at weight " + std::to_string(k));
  }
  // [e, f] = h, checked one weight at a time.
  for (const auto& [k, d] : g.b.space.dims) {
    MatrixQ ef = g.b.e_at(k - 2) * g.f_at(k);
    MatrixQ fe = g.f_at(k + 2) * g.b.e_at(k);
    MatrixQ want = MatrixQ::identity(d).scaled(rat(k));
    if (ef - fe != want)
      return verdict_fail("commutator relation fails at weight " + std::to_string(k));
  }
  return {};
}

// Composite e^l out of weight k.  l = 0 gives the identity.
inline MatrixQ e_power(const BModule& v, int k, int l) {
  MatrixQ acc = MatrixQ::identity(v.dim_at(k));
  for (int i = 0; i < l; ++i) acc = v.e_at(k + 2 * i) * acc;
  return acc;
}

// Contragredient action (x.a)(u) = -a(x.u): weights flip sign, raising maps
// are negated transposes of the originals two steps down.
inline BModule dual(const BModule& v) {
  BModule d;
  for (const auto& [k, n] : v.space.dims) d.space.dims[-k] = n;
  for (const auto& [k, n] : d.space.dims) {
    if (d.space.dim_at(k + 2) == 0) continue;
    MatrixQ m = v.e_at(-k - 2).transpose().scaled(rat(-1));
    d.set_e(k, m);
  }
  return d;
}

inline GModule dual(const GModule& g) {
  GModule d;
  d.b = dual(g.b);
  for (const auto& [k, n] : d.b.space.dims) {
    if (d.b.dim_at(k - 2) == 0) continue;
    MatrixQ m = g.f_at(-k + 2).transpose().scaled(rat(-1));
    d.set_f(k, m);
  }
  return d;
}

inline BModule direct_sum(const BModule& v, const BModule& w) {
  BModule s;
  for (const auto& [k, d] : v.space.dims) s.space.dims[k] += d;
  for (const auto& [k, d] : w.space.dims) s.space.dims[k] += d;
  for (const auto& [k, d] : s.space.dims) {
    int rows = s.dim_at(k + 2);
    if (rows == 0) continue;
    MatrixQ m(rows, d);
    MatrixQ ve = v.e_at(k), we = w.e_at(k);
    for (std::size_t i = 0; i < ve.rows(); ++i)
      for (std::size_t j = 0; j < ve.cols(); ++j) m.at(i, j) = ve.at(i, j);
    std::size_t ro = v.dim_at(k + 2), co = v.dim_at(k);
    for (std::size_t i = 0; i < we.rows(); ++i)
      for (std::size_t j = 0; j < we.cols(); ++j) m.at(ro + i, co + j) = we.at(i, j);
    s.set_e(k, m);
  }
  return s;
}

// Raises every weight by k.
inline BModule shift(const BModule& v, int k) {
  BModule s;
  for (const auto& [j, d] : v.space.dims) s.space.dims[j + k] = d;
  for (const auto& [j, m] : v.e_maps) s.e_maps[j + k] = m;
  return s;
}

inline GModule shift(const GModule& g, int k) {
  GModule s;
  s.b = shift(g.b, k);
  for (const auto& [j, m] : g.f_maps) s.f_maps[j + k] = m;
  return s;
}

// Basis layout of a tensor weight space: ascending first factor weight a,
// within a block row major over (i, j) with j fastest.  offset is the index
// of the first basis vector of block (a, k - a).
struct TensorBlock {
  int a;
  int b;
  int offset;
};

inline std::map<int, std::vector<TensorBlock>> tensor_blocks(const BModule& v,
                                                             const BModule& w) {
  std::map<int, std::vector<TensorBlock>> blocks;
  for (const auto& [a, da] : v.space.dims)
    for (const auto& [b, db] : w.space.dims) blocks[a + b].push_back({a, b, 0});
  for (auto& [k, vec] : blocks) {
    int off = 0;
    for (auto& blk : vec) {
      blk.offset = off;
      off += v.dim_at(blk.a) * w.dim_at(blk.b);
    }
  }
  return blocks;
}

// e acts as e(x)y + x e(y); the operator has even degree, so no sign.
inline BModule tensor(const BModule& v, const BModule& w) {
  BModule t;
  auto blocks = tensor_blocks(v, w);
  for (const auto& [k, vec] : blocks) {
    int total = 0;
    for (const auto& blk : vec) total += v.dim_at(blk.a) * w.dim_at(blk.b);
    if (total > 0) t.space.dims[k] = total;
  }
  auto offset_of = [&](int k, int a) -> int {
    for (const auto& blk : blocks.at(k))
      if (blk.a == a) return blk.offset;
    throw internal_error("tensor block lookup failure");
  };
  for (const auto& [k, dk] : t.space.dims) {
    int rows = t.dim_at(k + 2);
    if (rows == 0) continue;
    MatrixQ m(rows, dk);
    for (const auto& blk : blocks.at(k)) {
      int da = v.dim_at(blk.a), db = w.dim_at(blk.b);
      if (v.dim_at(blk.a + 2) > 0) {
        MatrixQ ev = v.e_at(blk.a);
        int to = offset_of(k + 2, blk.a + 2);
        for (std::size_t i = 0; i < ev.rows(); ++i)
          for (std::size_t j = 0; j < ev.cols(); ++j) {
            if (ev.at(i, j) == 0) continue;
            for (int y = 0; y < db; ++y)
              m.at(to + i * db + y, blk.offset + j * db + y) += ev.at(i, j);
          }
      }
      if (w.dim_at(blk.b + 2) > 0) {
        MatrixQ ew = w.e_at(blk.b);
        int to = offset_of(k + 2, blk.a);
        int db2 = w.dim_at(blk.b + 2);
        for (std::size_t i = 0; i < ew.rows(); ++i)
          for (std::size_t j = 0; j < ew.cols(); ++j) {
            if (ew.at(i, j) == 0) continue;
            for (int x = 0; x < da; ++x)
              m.at(to + x * db2 + i, blk.offset + x * db + j) += ew.at(i, j);
          }
      }
    }
    t.set_e(k, m);
  }
  return t;
}

// pre: weight_shift = 0.  Checks e phi = phi e on every weight.
inline Verdict is_bhom(const GradedHom& phi) {
  if (phi.weight_shift != 0)
    throw invalid_input("is_bhom requires a weight preserving map");
  for (const auto& [k, m] : phi.maps) {
    if (m.rows() != static_cast<std::size_t>(phi.target.dim_at(k)) ||
        m.cols() != static_cast<std::size_t>(phi.source.dim_at(k)))
      return verdict_fail("shape mismatch at weight " + std::to_string(k));
  }
  for (const auto& [k, d] : phi.source.space.dims) {
    MatrixQ lhs = phi.target.e_at(k) * phi.map_at(k);
    MatrixQ rhs = phi.map_at(k + 2) * phi.source.e_at(k);
    if (lhs != rhs)
      return verdict_fail("raising operator does not commute at weight " + std::to_string(k));
  }
  return {};
}

// pre: phi.weight_shift = -k, i.e. phi lowers weight by k.  Checks that phi
// commutes with e; such maps shift the canonical filtration by exactly -k.
inline Verdict is_shifted_equivariant(const GradedHom& phi, int k) {
  if (phi.weight_shift != -k)
    throw invalid_input("is_shifted_equivariant: declared shift disagrees with the map");
  int s = phi.weight_shift;
  for (const auto& [j, m] : phi.maps) {
    if (m.rows() != static_cast<std::size_t>(phi.target.dim_at(j + s)) ||
        m.cols() != static_cast<std::size_t>(phi.source.dim_at(j)))
      return verdict_fail("shape mismatch at weight " + std::to_string(j));
  }
  for (const auto& [j, d] : phi.source.space.dims) {
    MatrixQ lhs = phi.target.e_at(j + s) * phi.map_at(j);
    MatrixQ rhs = phi.map_at(j + 2) * phi.source.e_at(j);
    if (lhs != rhs)
      return verdict_fail("raising operator does not commute at weight " + std::to_string(j));
  }
  return {};
}

// Commutes with e and f (hence with h automatically, being weight graded).
inline Verdict is_ghom(const GModule& v, const GModule& w, const GradedHom& phi) {
  Verdict e = is_bhom(phi);
  if (!e) return e;
  for (const auto& [k, d] : v.b.space.dims) {
    MatrixQ lhs = w.f_at(k) * phi.map_at(k);
    MatrixQ rhs = phi.map_at(k - 2) * v.f_at(k);
    if (lhs != rhs)
      return verdict_fail("lowering operator does not commute at weight " + std::to_string(k));
  }
  return {};
}

// Multiplicity of the (d+1)-dimensional irreducible in a finite g-module:
// dim V^d - dim V^{d+2}.  Round trips against the weight dimensions.
inline std::map<int, int> decompose_g(const GModule& g) {
  Verdict v = validate_g(g);
  if (!v) throw invalid_input("decompose_g: not a g-module: " + v.message);
  std::map<int, int> mult;
  int top = g.b.is_zero() ? -1 : g.b.max_weight();
  for (int d = 0; d <= top; ++d) {
    int c = g.b.dim_at(d) - g.b.dim_at(d + 2);
    internal_check(c >= 0, "negative multiplicity in g-decomposition");
    if (c > 0) mult[d] = c;
  }
  GradedSpace rebuilt;
  for (const auto& [d, c] : mult)
    for (int k = -d; k <= d; k += 2) rebuilt.dims[k] += c;
  for (auto it = rebuilt.dims.begin(); it != rebuilt.dims.end();)
    it = it->second == 0 ? rebuilt.dims.erase(it) : std::next(it);
  internal_check(rebuilt.dims == g.b.space.dims,
                 "g-decomposition does not rebuild the weight dimensions");
  return mult;
}

// The (d+1)-dimensional irreducible: basis u_0..u_d descending from the top
// weight d, e u_i = i(d-i+1) u_{i-1}, f u_i = u_{i+1}.
inline GModule irreducible_g(int d) {
  if (d < 0) throw invalid_input("irreducible_g: negative highest weight");
  GModule g;
  for (int i = 0; i <= d; ++i) g.b.space.dims[d - 2 * i] = 1;
  for (int i = 1; i <= d; ++i) {
    MatrixQ e(1, 1);
    e.at(0, 0) = rat(static_cast<long>(i) * (d - i + 1));
    g.b.set_e(d - 2 * i, e);
    MatrixQ f(1, 1);
    f.at(0, 0) = 1;
    g.set_f(d - 2 * (i - 1), f);
  }
  return g;
}

inline BModule trivial_bmodule(int weight, int dim) {
  BModule t;
  if (dim < 0) throw invalid_input("trivial_bmodule: negative dimension");
  if (dim > 0) t.space.dims[weight] = dim;
  return t;
}

// Deterministic pseudo-random b-module.  Draws go through explicit modular
// reduction so the stream is identical on every platform.
inline BModule random_bmodule(std::uint64_t seed, int max_weight_span, int max_dim) {
  if (max_weight_span < 0 || max_dim < 1)
    throw invalid_input("random_bmodule: bad generator bounds");
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  BModule v;
  int w0 = draw(-max_weight_span, 0);
  for (int k = w0; k <= w0 + max_weight_span; ++k) {
    int d = draw(0, max_dim);
    if (d > 0) v.space.dims[k] = d;
  }
  if (v.space.dims.empty()) v.space.dims[w0] = 1;
  for (const auto& [k, d] : v.space.dims) {
    int up = v.dim_at(k + 2);
    if (up == 0) continue;
    MatrixQ m(up, d);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (draw(0, 2) == 0) continue;
        int num = draw(-3, 3);
        int den = draw(1, 2);
        m.at(i, j) = rat(num, den);
      }
    v.set_e(k, m);
  }
  return v;
}

// Direct sum of irreducibles with pseudo-random multiplicities, conjugated
// by random unimodular weight-space basis changes so the chain structure is
// not visible in the matrices.
inline GModule random_gmodule(std::uint64_t seed, int max_d, int max_mult) {
  if (max_d < 0 || max_mult < 1) throw invalid_input("random_gmodule: bad generator bounds");
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  GModule g;
  bool any = false;
  for (int d = 0; d <= max_d; ++d) {
    int mult = draw(0, max_mult);
    if (d == max_d && !any && mult == 0) mult = 1;
    for (int c = 0; c < mult; ++c) {
      GModule pieces;
      GModule irr = irreducible_g(d);
      if (!any) {
        g = irr;
      } else {
        GModule s;
        s.b = direct_sum(g.b, irr.b);
        for (const auto& [k, dk] : s.b.space.dims) {
          if (s.b.dim_at(k - 2) == 0) continue;
          MatrixQ m(s.b.dim_at(k - 2), dk);
          MatrixQ fg = g.f_at(k), fi = irr.f_at(k);
          for (std::size_t i = 0; i < fg.rows(); ++i)
            for (std::size_t j = 0; j < fg.cols(); ++j) m.at(i, j) = fg.at(i, j);
          std::size_t ro = g.b.dim_at(k - 2), co = g.b.dim_at(k);
          for (std::size_t i = 0; i < fi.rows(); ++i)
            for (std::size_t j = 0; j < fi.cols(); ++j) m.at(ro + i, co + j) = fi.at(i, j);
          s.set_f(k, m);
        }
        g = s;
      }
      any = true;
    }
  }
  // Conjugate: e' = P_{k+2} e P_k^{-1}, f' = P_{k-2} f P_k^{-1}.
  std::map<int, MatrixQ> p, pinv;
  for (const auto& [k, d] : g.b.space.dims) {
    MatrixQ lower = MatrixQ::identity(d), upper = MatrixQ::identity(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i > j) lower.at(i, j) = rat(draw(-2, 2));
        if (i < j) upper.at(i, j) = rat(draw(-2, 2));
      }
    p[k] = lower * upper;
    auto inv = inverse(p[k]);
    internal_check(inv.has_value(), "unimodular conjugator failed to invert");
    pinv[k] = *inv;
  }
  GModule out;
  out.b.space = g.b.space;
  for (const auto& [k, d] : g.b.space.dims) {
    if (g.b.dim_at(k + 2) > 0) out.b.set_e(k, p.at(k + 2) * g.b.e_at(k) * pinv.at(k));
    if (g.b.dim_at(k - 2) > 0) out.set_f(k, p.at(k - 2) * g.f_at(k) * pinv.at(k));
  }
  return out;
}

// Solves e_{k-2} f_k - f_{k+2} e_k = k id for all weights simultaneously.
// For a module admitting a g-structure the solution exists and the lowering
// maps are forced; inconsistency reports as nullopt.
inline std::optional<std::map<int, MatrixQ>> solve_f(const BModule& v) {
  std::map<int, int> offset;
  int nvars = 0;
  for (const auto& [k, d] : v.space.dims) {
    if (v.dim_at(k - 2) == 0) continue;
    offset[k] = nvars;
    nvars += v.dim_at(k - 2) * d;
  }
  std::vector<VectorQ> rows;
  VectorQ rhs_all;
  for (const auto& [k, d] : v.space.dims) {
    MatrixQ em = v.e_at(k - 2);
    MatrixQ ek = v.e_at(k);
    int dm = v.dim_at(k - 2), dp = v.dim_at(k + 2);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        VectorQ row(nvars, Rational(0));
        if (dm > 0) {
          int off = offset.at(k);
          for (int j = 0; j < dm; ++j)
            if (em.at(r, j) != 0) row[off + j * d + c] += em.at(r, j);
        }
        if (dp > 0) {
          int off = offset.at(k + 2);
          for (int j = 0; j < dp; ++j)
            if (ek.at(j, c) != 0) row[off + r * dp + j] -= ek.at(j, c);
        }
        rows.push_back(row);
        rhs_all.push_back(r == c ? rat(k) : Rational(0));
      }
  }
  MatrixQ a = MatrixQ::from_rows(rows);
  if (rows.empty()) return std::map<int, MatrixQ>{};
  auto x = solve(a, rhs_all);
  if (!x) return std::nullopt;
  std::map<int, MatrixQ> f;
  for (const auto& [k, off] : offset) {
    int dm = v.dim_at(k - 2), d = v.dim_at(k);
    MatrixQ m(dm, d);
    for (int i = 0; i < dm; ++i)
      for (int c = 0; c < d; ++c) m.at(i, c) = (*x)[off + i * d + c];
    if (!m.is_zero()) f[k] = m;
  }
  return f;
}

// Canonical basis of the space of e-commuting homs of a fixed weight shift.
inline std::vector<GradedHom> equivariant_hom_basis(const BModule& v, const BModule& w,
                                                    int s) {
  std::map<int, int> offset;
  int nvars = 0;
  for (const auto& [k, d] : v.space.dims) {
    int dt = w.dim_at(k + s);
    if (dt == 0) continue;
    offset[k] = nvars;
    nvars += dt * d;
  }
  std::vector<VectorQ> rows;
  for (const auto& [k, d] : v.space.dims) {
    MatrixQ ew = w.e_at(k + s);
    MatrixQ ev = v.e_at(k);
    int dt2 = w.dim_at(k + s + 2), dv2 = v.dim_at(k + 2);
    for (int r = 0; r < dt2; ++r)
      for (int c = 0; c < d; ++c) {
        VectorQ row(nvars, Rational(0));
        bool nontrivial = false;
        if (offset.count(k)) {
          int off = offset.at(k), dt = w.dim_at(k + s);
          for (int j = 0; j < dt; ++j)
            if (ew.at(r, j) != 0) {
              row[off + j * d + c] += ew.at(r, j);
              nontrivial = true;
            }
        }
        if (offset.count(k + 2) && dv2 > 0) {
          int off = offset.at(k + 2);
          for (int j = 0; j < dv2; ++j)
            if (ev.at(j, c) != 0) {
              row[off + r * dv2 + j] -= ev.at(j, c);
              nontrivial = true;
            }
        }
        if (nontrivial) rows.push_back(row);
      }
  }
  Subspace sol = rows.empty() ? Subspace::full(nvars)
                              : kernel_basis(MatrixQ::from_rows(rows));
  std::vector<GradedHom> basis;
  for (std::size_t i = 0; i < sol.dim(); ++i) {
    VectorQ x = sol.basis().row(i);
    GradedHom phi;
    phi.source = v;
    phi.target = w;
    phi.weight_shift = s;
    for (const auto& [k, off] : offset) {
      int dt = w.dim_at(k + s), d = v.dim_at(k);
      MatrixQ m(dt, d);
      for (int r = 0; r < dt; ++r)
        for (int c = 0; c < d; ++c) m.at(r, c) = x[off + r * d + c];
      phi.set_map(k, m);
    }
    basis.push_back(phi);
  }
  return basis;
}

}  // namespace lefrank
