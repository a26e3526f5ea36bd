#pragma once

#include <optional>
#include <vector>

#include "nilvar/matrix.hpp"
#include "nilvar/numeric.hpp"
#include "nilvar/quiver.hpp"

namespace nilvar {

// Matrix representation of a quiver over an exact scalar type T (Rat or Fp).
// mats[k] realizes arrow k as a map V_{source} -> V_{target}, so its shape is
// dim[target] x dim[source].  For T = Fp the modulus is carried in `p`
// (matrix entries may be value-initialized wildcard zeros).
template <class T>
struct Rep {
  Quiver q;
  std::vector<int> dim;
  std::vector<Matrix<T>> mats;
  long p = 0;  // modulus for T = Fp; 0 otherwise

  void validate() const {
    q.validate();
    if (int(dim.size()) != q.nv())
      throw validation_error("rep dimension list does not match quiver");
    for (int i : dim)
      if (i < 0) throw validation_error("negative dimension");
    if (int(mats.size()) != q.na())
      throw validation_error("rep matrix list does not match arrows");
    for (int k = 0; k < q.na(); ++k) {
      auto [s, t] = q.arrows[k];
      if (mats[k].r != dim[t] || mats[k].c != dim[s])
        throw validation_error("matrix shape mismatch on arrow " +
                               std::to_string(k));
    }
  }

  int total_dim() const {
    int s = 0;
    for (int i : dim) s += i;
    return s;
  }

  static Rep zero(const Quiver& q, const std::vector<int>& dim, long p = 0) {
    Rep r;
    r.q = q;
    r.dim = dim;
    r.p = p;
    for (auto [s, t] : q.arrows) r.mats.emplace_back(dim[t], dim[s]);
    return r;
  }
};

// Point of the doubled space T*E_d = E(Q) + E(Q-reversed): x[k] sits on arrow
// k of q, xstar[k] on its reversal (shape dim[source] x dim[target]).
template <class T>
struct DoubledPoint {
  Quiver q;
  std::vector<int> dim;
  std::vector<Matrix<T>> x;
  std::vector<Matrix<T>> xstar;
  long p = 0;

  void validate() const {
    q.validate();
    if (int(x.size()) != q.na() || int(xstar.size()) != q.na())
      throw validation_error("doubled point arrow count mismatch");
    for (int k = 0; k < q.na(); ++k) {
      auto [s, t] = q.arrows[k];
      if (x[k].r != dim[t] || x[k].c != dim[s])
        throw validation_error("x shape mismatch on arrow " + std::to_string(k));
      if (xstar[k].r != dim[s] || xstar[k].c != dim[t])
        throw validation_error("xstar shape mismatch on arrow " +
                               std::to_string(k));
    }
  }

  int total_dim() const {
    int s = 0;
    for (int i : dim) s += i;
    return s;
  }

  Rep<T> x_rep() const {
    Rep<T> r;
    r.q = q;
    r.dim = dim;
    r.mats = x;
    r.p = p;
    return r;
  }

  // The dual point on the opposite quiver: arrows reversed, components
  // swapped.  (x, x*) on Q corresponds to (x*, x) on Q^op.
  DoubledPoint swapped_opposite() const {
    DoubledPoint r;
    r.q = opposite(q);
    r.dim = dim;
    r.x = xstar;
    r.xstar = x;
    r.p = p;
    return r;
  }
};

// Per-vertex value of the moment map: mu_i = sum over arrows ending at i of
// x_a x*_a minus sum over arrows starting at i of x*_a x_a.  A loop at i
// contributes both terms (the commutator).
template <class T>
std::vector<Matrix<T>> moment_map(const DoubledPoint<T>& pt) {
  pt.validate();
  std::vector<Matrix<T>> mu;
  for (int i = 0; i < pt.q.nv(); ++i) mu.emplace_back(pt.dim[i], pt.dim[i]);
  for (int k = 0; k < pt.q.na(); ++k) {
    auto [s, t] = pt.q.arrows[k];
    if (pt.dim[t] > 0 && pt.dim[s] > 0) {
      mu[t] = mu[t] + pt.x[k] * pt.xstar[k];
      mu[s] = mu[s] - pt.xstar[k] * pt.x[k];
    }
  }
  return mu;
}

template <class T>
bool moment_map_vanishes(const DoubledPoint<T>& pt) {
  for (const Matrix<T>& m : moment_map(pt))
    if (!m.is_zero()) return false;
  return true;
}

// A representation is nilpotent when all long enough path compositions
// vanish: the chain W_0 = V, W_{k+1} = span of x_a(W_k) over all arrows,
// must reach zero (it is the span of all length-k path images).
template <class T>
bool is_nilpotent(const Rep<T>& r) {
  r.validate();
  int n = r.q.nv();
  std::vector<Matrix<T>> w;
  T unit = {};
  for (int i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<T, Fp>)
      unit = Fp(1, r.p);
    else
      unit = T(1);
    w.push_back(Matrix<T>::identity(r.dim[i], unit));
  }
  auto total = [&] {
    int s = 0;
    for (const auto& m : w) s += m.c;
    return s;
  };
  int prev = total();
  while (prev > 0) {
    std::vector<Matrix<T>> nw;
    for (int j = 0; j < n; ++j) nw.emplace_back(r.dim[j], 0);
    for (int k = 0; k < r.q.na(); ++k) {
      auto [s, t] = r.q.arrows[k];
      nw[t] = Matrix<T>::hcat(nw[t], r.mats[k] * w[s]);
    }
    for (auto& m : nw) m = image_basis(m);
    w = std::move(nw);
    int cur = total();
    if (cur == prev) return false;  // chain stabilized above zero
    prev = cur;
  }
  return true;
}

// Intertwiner system for Hom(r, s): the per-vertex unknowns f_i are
// flattened row-major at offset[i], and each arrow a -> b contributes the
// equations f_b x_a = y_a f_a entrywise.  Hom(r, s) is its kernel.
template <class T>
Matrix<T> hom_system(const Rep<T>& r, const Rep<T>& s) {
  r.validate();
  s.validate();
  if (r.q.vertices != s.q.vertices || r.q.arrows != s.q.arrows)
    throw validation_error("hom spaces require representations of one quiver");
  int n = r.q.nv();
  std::vector<int> offset(n + 1, 0);
  for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + s.dim[i] * r.dim[i];
  int unknowns = offset[n];
  int rows = 0;
  for (auto [a, b] : r.q.arrows) rows += s.dim[b] * r.dim[a];
  Matrix<T> sys(rows, unknowns);
  int row = 0;
  for (int k = 0; k < r.q.na(); ++k) {
    auto [a, b] = r.q.arrows[k];
    // Equation entry (p, q): sum_m f_b[p,m] x[m,q] - sum_m y[p,m] f_a[m,q].
    for (int p = 0; p < s.dim[b]; ++p)
      for (int q = 0; q < r.dim[a]; ++q) {
        for (int m = 0; m < r.dim[b]; ++m)
          sys.at(row, offset[b] + p * r.dim[b] + m) =
              sys.at(row, offset[b] + p * r.dim[b] + m) + r.mats[k].at(m, q);
        for (int m = 0; m < s.dim[a]; ++m)
          sys.at(row, offset[a] + m * r.dim[a] + q) =
              sys.at(row, offset[a] + m * r.dim[a] + q) - s.mats[k].at(p, m);
        ++row;
      }
  }
  return sys;
}

template <class T>
Int hom_dim(const Rep<T>& r, const Rep<T>& s) {
  int unknowns = 0;
  for (int i = 0; i < r.q.nv(); ++i) unknowns += s.dim[i] * r.dim[i];
  return Int(unknowns - rank(hom_system(r, s)));
}

template <class T>
Int end_dim(const Rep<T>& r) {
  return hom_dim(r, r);
}

template <class T>
Int orbit_dim(const Rep<T>& r) {
  Int sq = 0;
  for (int i : r.dim) sq += Int(i) * i;
  return sq - end_dim(r);
}

}  // namespace nilvar
