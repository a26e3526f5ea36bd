// Flag types, relative positions of pairs of flags, and the dimension
// bookkeeping for the incidence varieties of flagged representations.
//
// A flag type is an ordered tuple of nonzero dimension vectors summing to d;
// the flag it describes is increasing, with the first entry the dimension of
// the smallest nonzero subspace.  The relative position of two flags of the
// same type is an r x r array z whose (p,q) entry is a dimension vector, with
// row and column margins both equal to the flag type.  All dimension counts
// here are formal parameter counts over an infinite field; over a small
// finite field a stratum can be empty even when its formal dimension is
// positive.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilvar/quiver.hpp"

namespace nilvar {

// Relative position of an ordered pair of flags of the same type.
// z[p][q] is a dimension vector; margins satisfy
//   sum_q z[p][q] = d_p  and  sum_p z[p][s] = d_s.
struct RelPosition {
  int r = 0;
  int nv = 0;
  std::vector<std::vector<DimVec>> z;

  void validate(const FlagType& ft) const;
  bool is_diagonal(const FlagType& ft) const;
  static RelPosition diagonal(const FlagType& ft);
  bool operator==(const RelPosition& o) const { return z == o.z; }
};

// All flag types of dimension d, ordered tuples of nonzero steps.  With
// discrete=true each step is supported at a single vertex.  max_steps, when
// set, keeps only tuples with at most that many steps.
std::vector<FlagType> enumerate_flag_types(const DimVec& d, bool discrete,
                                           std::optional<int> max_steps = {});

// Lazily enumerated relative positions for a flag type.  The tables at
// distinct vertices are independent, so the range is the product of the
// per-vertex lists of margin-constrained tables; only the per-vertex lists
// are materialized.
class ThetaRange {
 public:
  explicit ThetaRange(FlagType ft);

  class iterator {
   public:
    iterator(const ThetaRange* owner, bool at_end);
    RelPosition operator*() const;
    iterator& operator++();
    bool operator!=(const iterator& o) const { return done_ != o.done_ || idx_ != o.idx_; }

   private:
    const ThetaRange* owner_;
    std::vector<size_t> idx_;
    bool done_;
  };

  iterator begin() const { return iterator(this, false); }
  iterator end() const { return iterator(this, true); }
  Int size() const;

 private:
  friend class iterator;
  FlagType ft_;
  int r_ = 0, nv_ = 0;
  // tables_[i] lists every r x r table with row and column margins
  // ((d_1)_i, ..., (d_r)_i), each flattened row-major.
  std::vector<std::vector<std::vector<int>>> tables_;
};

inline ThetaRange theta(const FlagType& ft) { return ThetaRange(ft); }

// Dimensions attached to the stratum of pairs in relative position z inside
// the fibered square of the incidence variety: the flag-pair stratum
// (base_dim), the fiber of representations stabilizing both flags
// (fiber_dim), their sum, and the codimension inside the incidence variety.
struct IncidenceDims {
  Int base_dim = 0;
  Int fiber_dim = 0;
  Int total_dim = 0;
  Int codim = 0;
};

IncidenceDims incidence_dims(const Quiver& q, const FlagType& ft,
                             const RelPosition& z, bool nil);

// Dimension of the incidence variety of pairs (x, stable flag of type ft);
// nil selects the strictly-decreasing stability condition.
Int tilde_dim(const Quiver& q, const FlagType& ft, bool nil);

// For a square integer array with equal row and column margins, both
// quadratic rearrangement identities used in the codimension bookkeeping
// hold; evaluates all four sums and reports whether both equalities do.
bool identity_check(const std::vector<std::vector<Int>>& z);

struct SmallnessReport {
  bool is_small_criterion = true;
  bool has_offdiag = false;
  Int min_codim_offdiag = 0;
  RelPosition witness_z;
  std::vector<std::string> notes;
};

// Scans every non-diagonal relative position and checks that its stratum has
// positive codimension.  For a quiver with at least two loops at every
// vertex the criterion is guaranteed and a failure is an internal error; for
// one-vertex quivers the report also records the divisibility pattern of the
// codimensions.
SmallnessReport smallness_report(const Quiver& q, const FlagType& ft, bool nil);

}  // namespace nilvar
