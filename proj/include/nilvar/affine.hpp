#pragma once

#include <string>
#include <vector>

#include "nilvar/flagsearch.hpp"
#include "nilvar/multipartition.hpp"
#include "nilvar/quiver.hpp"

namespace nilvar {

// One tube of the regular category of an affine quiver.  The simple regular
// dimension vectors are the members of one Coxeter orbit in cyclic order
// (starting from the lexicographically smallest member); they sum to delta.
// Degenerate period-1 tubes carry {delta} itself and sit at the end of the
// regular_simples output, after all tubes of period >= 2.
struct TubeData {
  int index = 0;
  int period = 1;
  std::vector<DimVec> simple_regular_dims;
};

// Defect-zero positive roots below delta, partitioned into Coxeter orbits.
// The orbit-size multiset is cross-checked against the classification's tube
// periods (period-1 entries excluded) and each orbit must sum to delta;
// violations raise internal_error.  Precondition: classify(q) is Affine.
std::vector<TubeData> regular_simples(const Quiver& q);

// Dimension vector of the tube content: a part (s, l) at tube t contributes
// the sum of l consecutive simple_regular_dims starting at position s.
DimVec tube_segment_dim(const TubeData& tube, int s, int l);
DimVec tube_content_dim(const TubeData& tube, const MultiPartition& m);

// Decomposition type of an affine representation class: preprojective and
// preinjective indecomposable dimension multisets (real roots of negative
// and positive defect), per-tube nilpotent content for tubes of period >= 2,
// and the homogeneous content mu, whose weight counts copies of delta.
struct StratumType {
  std::vector<DimVec> preproj;          // sorted, defect < 0, Tits value 1
  std::vector<DimVec> preinj;           // sorted, defect > 0, Tits value 1
  std::vector<MultiPartition> tube_content;  // aligned with period>=2 tubes
  RegularMu mu;

  std::string to_string() const;
  bool operator<(const StratumType& o) const;
};

// Total dimension vector of a type; asserts the bookkeeping identity
// dim = sum(preproj) + sum(preinj) + sum_t dim(tube content) + weight(mu)*delta.
DimVec stratum_dim(const Quiver& q, const std::vector<TubeData>& tubes,
                   const StratumType& t);

// All types of total dimension d, with mu constrained by the mode and the
// tube content optionally restricted to aperiodic multipartitions.  Negative
// d gives an empty list; d = 0 gives the single empty type.
std::vector<StratumType> enumerate_stratum_types(const Quiver& q,
                                                 const DimVec& d, MuMode mode,
                                                 bool aperiodic_n);

// One irreducible component of the semi-nilpotent variety of (q, d) in the
// given flavor.  Every component is conormal to a stratum, hence of middle
// dimension: dim equals the dimension of the representation space of (q, d).
struct Component {
  std::string label;
  Int dim = 0;
  std::string notes;
};

enum class SheafLabelKind { FiniteOrbit, CyclicAperiodic, CyclicExtended, Affine, GLoop };

// Index of one simple perverse summand of the pushforward sheaf in the given
// flavor; `text` is the canonical rendering of the underlying datum (orbit
// root multiset, aperiodic multipartition, stratum type with partition, or
// discrete flag type).
struct SheafLabel {
  SheafLabelKind kind = SheafLabelKind::FiniteOrbit;
  std::string text;
  std::string notes;
};

// Component labels for the supported (quiver class, flavor) combinations:
//   finite type          any flavor    multisets of positive roots
//   affine acyclic       any flavor    stratum types (mu regular)
//   cyclic C_n, n >= 2   Nil/NilOne    aperiodic nilpotent orbits
//   cyclic C_n, n >= 2   Plain         (aperiodic orbit, regular mu) pairs
//   1 vertex, g loops    Nil/NilOne    discrete flag types, census-deduped
//   Jordan (g = 1)       Plain/One     (empty, regular mu): partitions of d
// Anything else raises validation_error.  Cyclic quivers must be in the
// canonical labeling (arrow i -> i+1 mod n in vertex order).
std::vector<Component> components(const Quiver& q, const DimVec& d,
                                  NilFlavor flavor);

// Simple-summand labels for the same combinations; the list has the same
// cardinality as components(q, d, flavor) on every supported input.
std::vector<SheafLabel> sheaf_labels(const Quiver& q, const DimVec& d,
                                     NilFlavor flavor);

}  // namespace nilvar
