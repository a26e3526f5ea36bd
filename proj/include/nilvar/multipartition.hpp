#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilvar/rep.hpp"

namespace nilvar {

// The cyclic quiver C_n: vertices "0".."n-1", arrow i -> i+1 mod n.
// n = 1 is the one-loop (Jordan) quiver.
Quiver make_cyclic_quiver(int n);
// Throws unless q is exactly that quiver (the cyclic calculus is defined on
// the canonical presentation; residue i = vertex i).
void require_cyclic(const Quiver& q);

// Multipartition: a partition (weakly decreasing positive parts) for each
// residue class mod n.  Encodes the nilpotent representation that is the
// direct sum, over residues i and parts l of parts[i], of the length-l
// segment with top at vertex i.
struct MultiPartition {
  int n = 1;
  std::vector<std::vector<int>> parts;

  void validate() const;
  bool operator==(const MultiPartition& o) const = default;
  // Canonical order: residue by residue, partitions compared as their
  // weakly decreasing part vectors.
  bool operator<(const MultiPartition& o) const;
  std::string to_string() const;

  static MultiPartition empty(int n) {
    MultiPartition m;
    m.n = n;
    m.parts.assign(n, {});
    return m;
  }
};

// Segment dims: the length-l segment with top at residue i occupies vertices
// i, i+1, ..., i+l-1 (one dimension each, wrapping mod n).
DimVec dim_of(const MultiPartition& m);

// Aperiodic: for every l >= 1 some residue has no part equal to l.
bool is_aperiodic(const MultiPartition& m);
// Smallest l >= 1 such that every residue has a part equal to l, or 0.
int first_periodic_length(const MultiPartition& m);

// The nilpotent representation N_m on the canonical C_n: basis of V is the
// union of segment bases; the segment with top w at residue i has
// x(w_k) = w_{k+1} for k < l-1 and x(w_{l-1}) = 0.
template <class T>
Rep<T> build_nilpotent(const MultiPartition& m, long p = 0) {
  m.validate();
  Quiver q = make_cyclic_quiver(m.n);
  DimVec d = dim_of(m);
  std::vector<int> dim(m.n);
  for (int i = 0; i < m.n; ++i) dim[i] = int(d[i].get_si());
  Rep<T> r = Rep<T>::zero(q, dim, p);
  T one;
  if constexpr (std::is_same_v<T, Fp>)
    one = Fp(1, p);
  else
    one = T(1);
  // Fill per-vertex slots in a deterministic segment order.
  std::vector<int> used(m.n, 0);
  for (int i = 0; i < m.n; ++i)
    for (int l : m.parts[i]) {
      int slot_prev = -1, vertex_prev = -1;
      for (int k = 0; k < l; ++k) {
        int v = (i + k) % m.n;
        int slot = used[v]++;
        if (k > 0) {
          // Arrow vertex_prev -> v carries slot_prev to slot.
          r.mats[vertex_prev].at(slot, slot_prev) = one;
        }
        slot_prev = slot;
        vertex_prev = v;
      }
    }
  return r;
}

// Rank profile r[i][l] = rank of the composite path of length l starting at
// vertex i (l = 0 gives dim_i); computed for l = 0 .. total_dim + 1.
template <class T>
std::vector<std::vector<int>> rank_profile(const Rep<T>& r) {
  require_cyclic(r.q);
  int n = r.q.nv();
  int top = r.total_dim() + 1;
  std::vector<std::vector<int>> table(n, std::vector<int>(top + 1, 0));
  for (int i = 0; i < n; ++i) {
    table[i][0] = r.dim[i];
    T one;
    if constexpr (std::is_same_v<T, Fp>)
      one = Fp(1, r.p);
    else
      one = T(1);
    Matrix<T> comp = Matrix<T>::identity(r.dim[i], one);
    for (int l = 1; l <= top; ++l) {
      int v = (i + l - 1) % n;  // arrow v -> v+1 applied at step l
      comp = r.mats[v] * comp;
      table[i][l] = rank(comp);
    }
  }
  return table;
}

// Inverts the rank profile: the multiplicity of the length-l segment with
// top at residue a is D[a][l-1] - D[a-1][l] where D[i][l] = r[i][l] - r[i][l+1]
// (the two-dimensional inclusion-exclusion extending the Jordan multiplicity
// formula rank^{l-1} - 2 rank^l + rank^{l+1}).
template <class T>
MultiPartition decompose_nilpotent(const Rep<T>& r) {
  require_cyclic(r.q);
  if (!is_nilpotent(r))
    throw validation_error("decomposition requires a nilpotent representation");
  int n = r.q.nv();
  auto table = rank_profile(r);
  int top = r.total_dim();
  MultiPartition m = MultiPartition::empty(n);
  for (int a = 0; a < n; ++a) {
    for (int l = top; l >= 1; --l) {
      int am1 = (a + n - 1) % n;
      int mult = (table[a][l - 1] - table[a][l]) -
                 (table[am1][l] - table[am1][l + 1]);
      assert(mult >= 0);
      for (int c = 0; c < mult; ++c) m.parts[a].push_back(l);
    }
  }
  return m;
}

// Splits m into a completely periodic layer and an aperiodic remainder: for
// each part size l present at every residue, min-multiplicity copies of l
// move into lambda; what remains is aperiodic.
struct PairEncoding {
  MultiPartition aperiodic;
  std::vector<int> lambda;  // weakly decreasing
};
PairEncoding pair_encode(const MultiPartition& m);
// Rebuilds m by adding one part l at every residue for each entry l of
// lambda.  Rejects a non-aperiodic base.
MultiPartition pair_decode(const MultiPartition& aperiodic,
                           const std::vector<int>& lambda);

// All multipartitions of the given dimension vector, canonically ordered.
std::vector<MultiPartition> enumerate_orbits(int n, const DimVec& d,
                                             bool aperiodic_only);

// Finitely supported multiplicity function on partitions (the homogeneous
// content of a stratum).  Regular: support on single-part partitions only;
// regular semisimple: support only on (1).
struct RegularMu {
  std::map<std::vector<int>, Int> mu;

  Int weight() const;
  bool is_regular() const;
  bool is_regular_semisimple() const;
  bool operator==(const RegularMu& o) const = default;
  std::string to_string() const;
};

enum class MuMode { Any, Regular, RegularSemisimple };

// All mu of the given total weight subject to the mode: RegularSemisimple is
// the single mu supported on the partition (1); Regular allows any multiset
// of single-part partitions; Any allows arbitrary partition-multisets.
std::vector<RegularMu> enumerate_regular_mus(int w, MuMode mode);

// All (N, mu) with dim N + weight(mu) * (1,...,1) = d, mu constrained by
// mode; N filtered to aperiodic on request (component labels).
std::vector<std::pair<MultiPartition, RegularMu>> enumerate_cyclic_strata(
    int n, const DimVec& d, MuMode mode, bool aperiodic_n);

// Discrete flag-type resolving the closure of the orbit of N_m.  The steps
// are found by socle peeling: each step removes the socle box from the b
// longest segments socled at one vertex, and a step is kept only when the
// generic extension of the remainder by that semisimple layer re-attaches
// exactly the removed boxes.  The word makes N_m the generic module filtered
// by its layers, so the flag on an orbit point is unique and the incidence
// variety maps birationally onto the orbit closure.  level_dims reports the
// coarse image filtration d'_j = dim im(x^{N-j})/im(x^{N+1-j}) alongside.
struct ResolutionData {
  FlagType flag_type;
  std::vector<DimVec> level_dims;  // d'_0 .. d'_N
};
ResolutionData resolution_flag_type(const MultiPartition& m);

// Characteristic polynomial (exact coefficients, constant term first) of the
// full cycle composite x_{n-1} ... x_0 at vertex 0, computed division-free
// (Berkowitz), so it works over any exact field including tiny F_p.
template <class T>
std::vector<T> char_map(const Rep<T>& r) {
  require_cyclic(r.q);
  int n = r.q.nv();
  T one;
  if constexpr (std::is_same_v<T, Fp>)
    one = Fp(1, r.p);
  else
    one = T(1);
  Matrix<T> comp = Matrix<T>::identity(r.dim[0], one);
  for (int v = 0; v < n; ++v) comp = r.mats[v] * comp;
  int d = comp.r;
  // Berkowitz iteration: leading-first coefficient vectors of the principal
  // submatrices, each obtained from the previous by a Toeplitz product.
  std::vector<T> poly{one};
  for (int rsz = 1; rsz <= d; ++rsz) {
    std::vector<T> c(rsz + 1);
    c[0] = one;
    c[1] = -comp.at(rsz - 1, rsz - 1);
    if (rsz >= 2) {
      Matrix<T> row(1, rsz - 1), col(rsz - 1, 1);
      for (int j = 0; j < rsz - 1; ++j) {
        row.at(0, j) = comp.at(rsz - 1, j);
        col.at(j, 0) = comp.at(j, rsz - 1);
      }
      Matrix<T> acc = col;
      for (int k = 2; k <= rsz; ++k) {
        c[k] = -(row * acc).at(0, 0);
        if (k < rsz) {
          Matrix<T> block(rsz - 1, rsz - 1);
          for (int i = 0; i < rsz - 1; ++i)
            for (int j = 0; j < rsz - 1; ++j) block.at(i, j) = comp.at(i, j);
          acc = block * acc;
        }
      }
    }
    std::vector<T> next(rsz + 1);
    for (int i = 0; i <= rsz; ++i)
      for (int j = 0; j < int(poly.size()); ++j)
        if (i - j >= 0 && i - j <= rsz)
          next[i] = next[i] + c[i - j] * poly[j];
    poly = std::move(next);
  }
  // Constant term first.
  std::vector<T> out(poly.rbegin(), poly.rend());
  return out;
}

// All partitions of w, largest part first within each, canonically ordered.
std::vector<std::vector<int>> partitions_of(int w);

}  // namespace nilvar
