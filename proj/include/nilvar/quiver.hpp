#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilvar/matrix.hpp"
#include "nilvar/numeric.hpp"

namespace nilvar {

// Finite quiver: ordered vertex ids plus a list of arrows (source, target)
// given as indices into `vertices`.  Loops and parallel arrows are allowed.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> arrows;

  int nv() const { return int(vertices.size()); }
  int na() const { return int(arrows.size()); }
  int vertex_index(const std::string& id) const;  // throws validation_error
  void validate() const;                          // ids unique, arrows in range

  int arrows_between(int i, int j) const;  // count of arrows i -> j
  int loops_at(int i) const { return arrows_between(i, i); }
  bool is_acyclic() const;   // no directed cycle (loops count as cycles)
  bool is_connected() const;  // underlying graph, ignoring orientation
};

// Dimension vector aligned with Quiver::vertices.  Entries may be negative in
// intermediate lattice computations (Coxeter transforms and the like).
using DimVec = std::vector<Int>;

// Flag type: ordered nonzero dimension vectors, summing to the flag's total
// dimension.  Discrete when every step is supported at a single vertex.
using FlagType = std::vector<DimVec>;

DimVec zero_vec(int n);
bool is_nonneg(const DimVec& d);
Int total_dim(const DimVec& d);
std::string to_string(const DimVec& d);  // "(1,0,2)"

// Euler matrix A with A[i][j] = delta_ij - #(arrows i -> j).
Matrix<Int> euler_matrix(const Quiver& q);

// Euler form <d, e> = d^T A e and Tits form q(d) = <d, d>.
Int euler_form(const Quiver& q, const DimVec& d, const DimVec& e);
Int tits_form(const Quiver& q, const DimVec& d);
// Symmetrized form (d, e) = <d,e> + <e,d>.
Int symmetrized_form(const Quiver& q, const DimVec& d, const DimVec& e);

enum class QuiverKind { Finite, Affine, JordanLike, Wild };

// Representation-type classification of a connected quiver via the
// symmetrized Tits form, with the oriented-cycle case split off separately
// (a cyclically oriented cycle behaves like the Jordan quiver: nilpotency
// matters and there is no preprojective/preinjective part).
struct QuiverClass {
  QuiverKind kind = QuiverKind::Wild;
  std::string label;            // "A3", "D4~", "E6~", ... ; empty for Wild
  DimVec delta;                 // primitive radical generator (Affine only)
  std::vector<int> tube_periods;  // non-homogeneous tube ranks (Affine only)
  int cycle_length = 0;         // JordanLike: number of vertices on the cycle
  std::string notes;
};

QuiverClass classify(const Quiver& q);

// Defect <delta, d> of an affine quiver.  Precondition: classify(q) is
// Affine; otherwise a validation_error is thrown.
Int defect(const Quiver& q, const DimVec& d);

// All positive roots d (tits_form == 1, d != 0, d >= 0) with d <= bound
// entrywise, in lexicographic order.  This is the real-root search used by
// the affine enumerations; callers pass a bound that suits their dimension.
std::vector<DimVec> positive_roots(const Quiver& q, const DimVec& bound);

// Coxeter transformation Phi = -A^{-T} A of an acyclic quiver; exact integer
// matrix (A is unimodular for acyclic quivers).
Matrix<Int> coxeter_matrix(const Quiver& q);
DimVec coxeter_apply(const Matrix<Int>& phi, const DimVec& d);

// Same quiver with all arrows reversed.
Quiver opposite(const Quiver& q);
// Doubled quiver: original arrows followed by their reversals, so arrow k
// and arrow k + na(q) form a dual pair.
Quiver doubled(const Quiver& q);

}  // namespace nilvar
