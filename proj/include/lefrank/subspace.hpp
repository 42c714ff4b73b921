#pragma once

#include <cstddef>
#include <vector>

#include "lefrank/matrix.hpp"

namespace lefrank {

// Subspace of Q^n, stored as the reduced row echelon basis of its row span.
// RREF is unique, so equality of subspaces is equality of representations,
// byte for byte once serialized.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(std::size_t ambient, const MatrixQ& vectors_as_rows) {
    if (vectors_as_rows.rows() > 0 && vectors_as_rows.cols() != ambient)
      throw internal_error("span ambient mismatch");
    Subspace s(ambient);
    MatrixQ m = vectors_as_rows;
    if (m.rows() > 0) {
      s.pivots_ = rref_in_place(m);
      s.basis_ = m;
    }
    return s;
  }

  static Subspace full(std::size_t ambient) {
    Subspace s(ambient);
    s.basis_ = MatrixQ::identity(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  // Rows form the canonical (RREF) basis.
  const MatrixQ& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Residue of v modulo this subspace: subtract the unique combination of
  // basis rows matching v on the pivot columns.  Zero residue iff v lies in
  // the subspace; the residue map is linear with kernel exactly the subspace.
  VectorQ residue(const VectorQ& v) const {
    if (v.size() != ambient_) throw internal_error("residue ambient mismatch");
    VectorQ r = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      Rational c = r[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j) r[j] -= c * basis_.at(i, j);
    }
    return r;
  }

  bool contains_vector(const VectorQ& v) const {
    VectorQ r = residue(v);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }

  // Coordinates of v in the canonical basis; requires membership.
  VectorQ coordinates(const VectorQ& v) const {
    if (!contains_vector(v)) throw internal_error("coordinates of non-member vector");
    VectorQ c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  bool operator==(const Subspace& rhs) const {
    return ambient_ == rhs.ambient_ && basis_ == rhs.basis_;
  }
  bool operator!=(const Subspace& rhs) const { return !(*this == rhs); }

 private:
  std::size_t ambient_;
  MatrixQ basis_;
  std::vector<std::size_t> pivots_;
};

// W subseteq U.
inline bool contains(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw internal_error("contains ambient mismatch");
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!u.contains_vector(w.basis().row(i))) return false;
  return true;
}

inline Subspace sum(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw internal_error("sum ambient mismatch");
  return Subspace::span(u.ambient_dim(), u.basis().stacked(w.basis()));
}

// Null space of a, canonical basis.
inline Subspace kernel_basis(const MatrixQ& a) {
  MatrixQ r = a;
  std::vector<std::size_t> pivots = rref_in_place(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<VectorQ> gens;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    VectorQ v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, f);
    gens.push_back(v);
  }
  return Subspace::span(a.cols(), MatrixQ::from_rows(gens));
}

// Column span of a, canonical basis in the codomain.
inline Subspace image_basis(const MatrixQ& a) {
  return Subspace::span(a.rows(), a.transpose());
}

// Image of u under a.
inline Subspace image_of(const MatrixQ& a, const Subspace& u) {
  if (a.cols() != u.ambient_dim()) throw internal_error("image_of shape mismatch");
  return Subspace::span(a.rows(), u.basis() * a.transpose());
}

// Rows annihilating u: y with y . x = 0 for all x in u.  Double annihilator
// recovers u, which drives intersection and preimage below.
inline Subspace annihilator(const Subspace& u) {
  if (u.dim() == 0) return Subspace::full(u.ambient_dim());
  return kernel_basis(u.basis());
}

inline Subspace intersect(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim())
    throw internal_error("intersect ambient mismatch");
  MatrixQ constraints = annihilator(u).basis().stacked(annihilator(w).basis());
  if (constraints.rows() == 0) return Subspace::full(u.ambient_dim());
  return kernel_basis(constraints);
}

// {x : a x in u}, u a subspace of the codomain of a.
inline Subspace preimage(const MatrixQ& a, const Subspace& u) {
  if (a.rows() != u.ambient_dim()) throw internal_error("preimage shape mismatch");
  if (u.is_full() || a.rows() == 0) return Subspace::full(a.cols());
  MatrixQ constraints = annihilator(u).basis() * a;
  return kernel_basis(constraints);
}

}  // namespace lefrank
