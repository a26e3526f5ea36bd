// Finite-field brute force over representation spaces: exact orbit
// partitions, images and fibers of the flag-forgetting projections, and the
// canonical-filtration check for affine quivers.  Everything here is an
// oracle at desk scale; budgets are hard limits and refusals name both the
// required and the configured size.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilvar/flagsearch.hpp"
#include "nilvar/quiver.hpp"
#include "nilvar/rep.hpp"

namespace nilvar {

struct CensusBudget {
  Int max_points = Int(1) << 22;
};

// Points of the representation space E_d(F_p) are indexed mixed-radix over
// the matrix entries, arrow by arrow, rows before columns.
Int census_point_count(const Quiver& q, const DimVec& d, long p);
Rep<Fp> decode_point(const Quiver& q, const DimVec& d, long p, const Int& index);
Int encode_point(const Rep<Fp>& r);

struct OrbitRecord {
  Int representative = 0;  // smallest point index on the orbit
  Int size = 0;
  Int end_dim = 0;
};

struct CensusReport {
  long p = 0;
  Int total_points = 0;
  std::vector<OrbitRecord> orbits;  // ordered by representative index
  double elapsed_seconds = 0;
};

// Exact orbit partition of E_d(F_p) under the product of the vertex groups,
// by breadth-first closure under transvections and one scaling per vertex.
// The orbit sizes are checked to sum to p^{dim E_d}.
CensusReport orbit_census(const Quiver& q, const DimVec& d, long p,
                          const CensusBudget& budget = {});

// Point indices of the orbit through a given representation, sorted.
std::vector<Int> orbit_of(const Rep<Fp>& x, const CensusBudget& budget = {});

struct ImageReport {
  std::vector<Int> image;           // sorted point indices with >= 1 flag
  std::map<Int, Int> fiber_counts;  // flag count -> number of points
};

// For every x in E_d(F_p), counts stable flags of the given type (strict
// steps when nil) and reports the image of the flag-forgetting projection.
ImageReport image_of_pi(const Quiver& q, const FlagType& ft, bool nil, long p,
                        const CensusBudget& budget = {});

enum class Inclusion { Equal, FirstInSecond, SecondInFirst, Incomparable };

std::string to_string(Inclusion inc);

// Compares the images of two flag types over F_p.
Inclusion inclusion_check(const Quiver& q, const FlagType& ft1,
                          const FlagType& ft2, bool nil, long p,
                          const CensusBudget& budget = {});

struct FiltrationReport {
  Int checked = 0;
  std::vector<Int> violations;       // points whose subrepresentation count != 1
  std::vector<Int> flagged_samples;  // points skipped: End dimension above cap
};

// For each x over F_p, splits x into indecomposable summands (Fitting
// decomposition via an exhaustive scan of the endomorphism algebra), sorts
// the summands by defect sign into preprojective / regular / preinjective
// parts, and counts x-stable graded subspaces of dimensions d_I and
// d_I + d_R.  Each count must be exactly one.
FiltrationReport filtration_uniqueness(const Quiver& q, const DimVec& d, long p,
                                       int end_dim_cap = 6,
                                       const CensusBudget& budget = {});

// Number of x-stable graded subspaces with the given vertex dimensions.
Int count_stable_subspaces(const Rep<Fp>& x, const DimVec& dims);

// Indecomposable direct summands of x, by repeated Fitting splittings.
// Throws budget_error when some intermediate endomorphism algebra has
// dimension above the cap.
std::vector<Rep<Fp>> indecomposable_summands(const Rep<Fp>& x, int end_dim_cap);

}  // namespace nilvar
