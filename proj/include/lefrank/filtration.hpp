#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lefrank/graded.hpp"

namespace lefrank {

// Per-weight family of subspaces of the weight spaces of a fixed module.
using WeightFamily = std::map<int, Subspace>;

// The unique filtration by sub-b-modules whose shifted graded pieces carry a
// full sl2 structure.  Levels are stored for every m in the scan range
// [min_weight - 1, max_weight + 1]; outside they are clamped to the ends.
struct CanonicalFiltration {
  BModule module;
  int lo = 0;
  int hi = 0;
  int scan_lo = 0;
  int scan_hi = 0;
  std::map<int, WeightFamily> steps;

  const WeightFamily& at(int m) const {
    static const WeightFamily empty;
    if (steps.empty()) return empty;
    if (m < scan_lo) return steps.at(scan_lo);
    if (m > scan_hi) return steps.at(scan_hi);
    return steps.at(m);
  }

  int dim_at(int m, int k) const {
    const WeightFamily& fam = at(m);
    auto it = fam.find(k);
    return it == fam.end() ? 0 : static_cast<int>(it->second.dim());
  }

  int total_dim_at(int m) const {
    int t = 0;
    for (const auto& [k, s] : at(m)) t += static_cast<int>(s.dim());
    return t;
  }
};

namespace detail {

// Greatest family of subspaces that is closed under e and on which e^l maps
// the weight m-l part onto the weight m+l part for every l >= 1.  Computed by
// shrinking from the full family; both repairs are monotone, so the loop
// stops at the greatest fixed point.
inline WeightFamily level_family(const BModule& v, int m) {
  WeightFamily w;
  for (const auto& [k, d] : v.space.dims) w.emplace(k, Subspace::full(d));
  if (w.empty()) return w;
  int minw = v.min_weight(), maxw = v.max_weight();
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int k = it->first;
      if (v.dim_at(k + 2) == 0) continue;
      Subspace target = w.count(k + 2) ? w.at(k + 2) : Subspace(0);
      Subspace cut = intersect(it->second, preimage(v.e_at(k), target));
      if (cut != it->second) {
        it->second = cut;
        changed = true;
      }
    }
    for (int l = 1; m + l <= maxw; ++l) {
      if (v.dim_at(m + l) == 0) continue;
      Subspace img(v.dim_at(m + l));
      if (m - l >= minw && v.dim_at(m - l) > 0) {
        const Subspace& src = w.at(m - l);
        img = Subspace::span(v.dim_at(m + l),
                             src.basis() * e_power(v, m - l, l).transpose());
      }
      if (img != w.at(m + l)) {
        w.at(m + l) = img;
        changed = true;
      }
    }
  }
  return w;
}

}  // namespace detail

inline CanonicalFiltration canonical_filtration(const BModule& v) {
  Verdict ok = validate_b(v);
  if (!ok) throw invalid_input("canonical_filtration: " + ok.message);
  CanonicalFiltration f;
  f.module = v;
  if (v.is_zero()) return f;
  f.scan_lo = v.min_weight() - 1;
  f.scan_hi = v.max_weight() + 1;
  for (int m = f.scan_lo; m <= f.scan_hi; ++m) f.steps[m] = detail::level_family(v, m);
  int total = v.total_dim();
  internal_check(f.total_dim_at(f.scan_lo) == 0, "filtration does not start at zero");
  internal_check(f.total_dim_at(f.scan_hi) == total, "filtration does not exhaust the module");
  for (int m = f.scan_lo + 1; m <= f.scan_hi; ++m)
    for (const auto& [k, s] : f.steps.at(m))
      internal_check(contains(s, f.steps.at(m - 1).at(k)), "filtration levels not nested");
  f.lo = f.scan_hi;
  for (int m = f.scan_lo; m <= f.scan_hi; ++m)
    if (f.total_dim_at(m) > 0) {
      f.lo = m;
      break;
    }
  f.hi = f.scan_hi;
  for (int m = f.scan_lo; m <= f.scan_hi; ++m)
    if (f.total_dim_at(m) == total) {
      f.hi = m;
      break;
    }
  return f;
}

// Quotient of consecutive levels, shifted so its weights are centered, with
// the forced lowering maps solved for.  Level hi - lo gaps with no jump give
// the zero module.
inline GModule graded_piece(const CanonicalFiltration& f, int m) {
  GModule g;
  if (f.module.is_zero()) return g;
  const WeightFamily& top = f.at(m);
  const WeightFamily& bot = f.at(m - 1);
  std::map<int, Subspace> comp;
  for (const auto& [k, s] : top) {
    const Subspace& lower = bot.at(k);
    std::vector<VectorQ> residues;
    for (std::size_t i = 0; i < s.dim(); ++i) residues.push_back(lower.residue(s.basis().row(i)));
    Subspace c = Subspace::span(s.ambient_dim(), MatrixQ::from_rows(residues));
    internal_check(c.dim() == s.dim() - lower.dim(), "graded piece dimension drop");
    if (c.dim() > 0) {
      comp.emplace(k, c);
      g.b.space.dims[k - m] = static_cast<int>(c.dim());
    }
  }
  for (const auto& [k, c] : comp) {
    if (g.b.dim_at(k - m + 2) == 0) continue;
    const Subspace& cup = comp.at(k + 2);
    const Subspace& lower_up = f.at(m - 1).at(k + 2);
    MatrixQ e = f.module.e_at(k);
    MatrixQ mat(cup.dim(), c.dim());
    for (std::size_t j = 0; j < c.dim(); ++j) {
      VectorQ image = e * c.basis().row(j);
      VectorQ y = lower_up.residue(image);
      VectorQ coords = cup.coordinates(y);
      for (std::size_t i = 0; i < cup.dim(); ++i) mat.at(i, j) = coords[i];
    }
    g.b.set_e(k - m, mat);
  }
  auto fmaps = solve_f(g.b);
  internal_check(fmaps.has_value(), "graded piece does not carry an sl2 structure");
  g.f_maps = *fmaps;
  Verdict v = validate_g(g);
  internal_check(v.ok, "graded piece sl2 relations fail: " + v.message);
  return g;
}

// Axioms of the filtration, verified from scratch: ends, nesting, closure
// under e, and sl2 structure on every shifted graded piece.  This is the
// independent referee for canonical_filtration.
inline Verdict check_axioms(const BModule& v, const CanonicalFiltration& f) {
  if (v.is_zero()) {
    if (!f.steps.empty() || f.lo != 0 || f.hi != 0)
      return verdict_fail("zero module must have the trivial filtration");
    return {};
  }
  if (f.total_dim_at(f.scan_lo) != 0) return verdict_fail("lowest level is nonzero");
  if (f.total_dim_at(f.scan_hi) != v.total_dim()) return verdict_fail("highest level is proper");
  for (int m = f.scan_lo + 1; m <= f.scan_hi; ++m) {
    for (const auto& [k, s] : f.at(m)) {
      if (!contains(s, f.at(m - 1).at(k)))
        return verdict_fail("nesting fails at level " + std::to_string(m) + ", weight " +
                            std::to_string(k));
    }
  }
  for (int m = f.scan_lo; m <= f.scan_hi; ++m) {
    for (const auto& [k, s] : f.at(m)) {
      if (v.dim_at(k + 2) == 0) continue;
      Subspace img = image_of(v.e_at(k), s);
      if (!contains(f.at(m).at(k + 2), img))
        return verdict_fail("level " + std::to_string(m) + " not closed under e at weight " +
                            std::to_string(k));
    }
  }
  for (int m = f.scan_lo; m <= f.scan_hi; ++m) {
    try {
      GModule piece = graded_piece(f, m);
      if (!piece.b.is_zero()) decompose_g(piece);
    } catch (const internal_error& e) {
      return verdict_fail("graded piece at level " + std::to_string(m) + ": " + e.what());
    } catch (const invalid_input& e) {
      return verdict_fail("graded piece at level " + std::to_string(m) + ": " + e.what());
    }
  }
  if (f.lo > f.hi) return verdict_fail("lo exceeds hi");
  if (f.total_dim_at(f.lo - 1) != 0 || (f.lo > f.scan_lo && f.total_dim_at(f.lo) == 0))
    return verdict_fail("lo is not the first jump");
  if (f.total_dim_at(f.hi) != v.total_dim() ||
      (f.hi > f.scan_lo && f.total_dim_at(f.hi - 1) == v.total_dim()))
    return verdict_fail("hi is not the saturation level");
  return {};
}

// Rank of the l-fold raising map out of weight m-l equals the full weight
// space dimension at m+l for every l; level m then exhausts the module.
inline bool rank_saturated_at(const BModule& v, int m) {
  if (v.is_zero()) return true;
  for (int l = 1; m + l <= v.max_weight(); ++l) {
    int target = v.dim_at(m + l);
    if (target == 0) continue;
    if (static_cast<int>(rank(e_power(v, m - l, l))) != target) return false;
  }
  return true;
}

// (lo, hi) with hi recomputed directly from raising map ranks, bypassing the
// filtration, and cross-checked against it.
inline std::pair<int, int> saturation_level(const BModule& v) {
  CanonicalFiltration f = canonical_filtration(v);
  if (v.is_zero()) return {0, 0};
  int hi_by_rank = f.scan_hi;
  for (int m = f.scan_lo; m <= f.scan_hi; ++m)
    if (rank_saturated_at(v, m)) {
      hi_by_rank = m;
      break;
    }
  internal_check(hi_by_rank == f.hi, "rank saturation disagrees with the filtration");
  return {f.lo, f.hi};
}

// Chain content per level, from raising map ranks alone.  r(i, j) is the rank
// of e^i out of weight j; the alternating combination counts the chains of
// top gap d sitting at level m.
struct MultiplicityTable {
  std::map<int, std::map<int, int>> mult;

  int count(int m, int d) const {
    auto it = mult.find(m);
    if (it == mult.end()) return 0;
    auto jt = it->second.find(d);
    return jt == it->second.end() ? 0 : jt->second;
  }

  // dim (V_m)^k: chains of top gap d at level m' contribute one dimension to
  // weight k iff m' <= m, |k - m'| <= d and k - m' has the parity of d.
  int level_dim_at(int m, int k) const {
    int t = 0;
    for (const auto& [mp, row] : mult) {
      if (mp > m) continue;
      for (const auto& [d, c] : row)
        if (std::abs(k - mp) <= d && (k - mp - d) % 2 == 0) t += c;
    }
    return t;
  }

  int level_total(int m) const {
    int t = 0;
    for (const auto& [mp, row] : mult) {
      if (mp > m) continue;
      for (const auto& [d, c] : row) t += c * (d + 1);
    }
    return t;
  }
};

inline MultiplicityTable filtration_dims(const BModule& v) {
  Verdict ok = validate_b(v);
  if (!ok) throw invalid_input("filtration_dims: " + ok.message);
  MultiplicityTable table;
  if (v.is_zero()) return table;
  int minw = v.min_weight(), maxw = v.max_weight();
  int span = maxw - minw;
  auto r = [&](int i, int j) -> int {
    if (i < 0 || j < minw - 2 || j > maxw) return 0;
    if (v.dim_at(j) == 0) return 0;
    return static_cast<int>(rank(e_power(v, j, i)));
  };
  int total = 0;
  for (int m = minw; m <= maxw; ++m)
    for (int d = 0; d <= span + 2; ++d) {
      int c = r(d, m - d) - r(d + 1, m - d) - r(d + 1, m - d - 2) + r(d + 2, m - d - 2);
      internal_check(c >= 0, "negative chain multiplicity");
      if (c > 0) {
        table.mult[m][d] = c;
        total += c * (d + 1);
      }
    }
  internal_check(total == v.total_dim(), "chain multiplicities do not fill the module");
  return table;
}

// Extends the raising action to a full sl2 action when the filtration
// collapses to the single jump at level zero; unique when it exists.
inline std::optional<GModule> try_extend_to_g(const BModule& v) {
  auto [lo, hi] = saturation_level(v);
  if (lo != 0 || hi != 0) return std::nullopt;
  auto f = solve_f(v);
  internal_check(f.has_value(), "saturated module must carry an sl2 structure");
  GModule g;
  g.b = v;
  g.f_maps = *f;
  Verdict ok = validate_g(g);
  internal_check(ok.ok, "extended sl2 relations fail: " + ok.message);
  return g;
}

// Weight-preserving equivariant maps between graded pieces vanish when the
// chain supports at that level share no top gap.
struct SchurLine {
  int m = 0;
  bool forced_zero = false;
  std::vector<int> left;
  std::vector<int> right;
};

inline std::vector<SchurLine> schur_vanishing(const BModule& v, const BModule& w) {
  CanonicalFiltration fv = canonical_filtration(v);
  CanonicalFiltration fw = canonical_filtration(w);
  std::vector<SchurLine> lines;
  if (v.is_zero() && w.is_zero()) return lines;
  int lo = std::min(fv.lo, fw.lo), hi = std::max(fv.hi, fw.hi);
  for (int m = lo; m <= hi; ++m) {
    SchurLine line;
    line.m = m;
    for (const auto& [d, c] : decompose_g(graded_piece(fv, m))) line.left.push_back(d);
    for (const auto& [d, c] : decompose_g(graded_piece(fw, m))) line.right.push_back(d);
    std::set<int> l(line.left.begin(), line.left.end());
    bool meet = false;
    for (int d : line.right)
      if (l.count(d)) meet = true;
    line.forced_zero = !meet;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace lefrank
