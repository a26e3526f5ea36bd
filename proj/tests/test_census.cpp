#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "nilvar/affine.hpp"
#include "nilvar/census.hpp"
#include "nilvar/flagdims.hpp"
#include "nilvar/multipartition.hpp"

using namespace nilvar;

namespace {

Quiver quiver(std::vector<std::string> vs, std::vector<std::pair<int, int>> as) {
  Quiver q;
  q.vertices = std::move(vs);
  q.arrows = std::move(as);
  q.validate();
  return q;
}

Quiver a2() { return quiver({"1", "2"}, {{0, 1}}); }
Quiver a3() { return quiver({"1", "2", "3"}, {{0, 1}, {1, 2}}); }
Quiver kronecker() { return quiver({"1", "2"}, {{0, 1}, {0, 1}}); }

Quiver loops(int g) {
  std::vector<std::pair<int, int>> as(g, {0, 0});
  return quiver({"1"}, as);
}

DimVec dv(std::vector<long> v) {
  DimVec d;
  for (long x : v) d.emplace_back(x);
  return d;
}

FlagType ft(std::vector<std::vector<long>> steps) {
  FlagType f;
  for (auto& s : steps) f.push_back(dv(s));
  return f;
}

std::vector<DimVec> boxed(int nv, long cap) {
  std::vector<DimVec> out{DimVec{}};
  for (int i = 0; i < nv; ++i) {
    std::vector<DimVec> next;
    for (const DimVec& d : out)
      for (long v = 0; v <= cap; ++v) {
        DimVec e = d;
        e.emplace_back(v);
        next.push_back(e);
      }
    out = next;
  }
  return out;
}

// Gaussian binomial [n choose k]_q: the number of k-dimensional subspaces
// of an n-dimensional space over F_q.
Int gauss_binomial(int n, int k, long q) {
  Int num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    Int qe = 1;
    for (int e = 0; e < n - i; ++e) qe *= q;
    num *= qe - 1;
    qe = 1;
    for (int e = 0; e < k - i; ++e) qe *= q;
    den *= qe - 1;
  }
  return num / den;
}

}  // namespace

TEST_CASE("orbit census on frozen small spaces") {
  CensusReport rep = orbit_census(a2(), dv({1, 1}), 2);
  CHECK(rep.total_points == 2);
  CHECK(rep.orbits.size() == 2);
  for (const OrbitRecord& o : rep.orbits) CHECK(o.size == 1);

  // Conjugacy classes of 2x2 matrices over F_2: zero, identity, the two
  // nonzero eigenvalue patterns, one nilpotent class, one irreducible class.
  rep = orbit_census(loops(1), dv({2}), 2);
  CHECK(rep.total_points == 16);
  REQUIRE(rep.orbits.size() == 6);
  std::multiset<long> sizes, ends;
  Int sum = 0;
  for (const OrbitRecord& o : rep.orbits) {
    sizes.insert(to_long(o.size));
    ends.insert(to_long(o.end_dim));
    sum += o.size;
  }
  CHECK(sizes == std::multiset<long>{1, 1, 2, 3, 3, 6});
  CHECK(ends == std::multiset<long>{2, 2, 2, 2, 4, 4});
  CHECK(sum == rep.total_points);

  // Four points, all fixed by the two independent scalings.
  rep = orbit_census(kronecker(), dv({1, 1}), 2);
  CHECK(rep.orbits.size() == 4);
  for (const OrbitRecord& o : rep.orbits) CHECK(o.size == 1);

  CHECK(orbit_census(a2(), dv({0, 0}), 2).orbits.size() == 1);

  CensusBudget tiny;
  tiny.max_points = 4;
  CHECK_THROWS_AS(orbit_census(loops(2), dv({2}), 2, tiny), budget_error);
}

TEST_CASE("point encoding round trip") {
  for (long p : {2L, 3L}) {
    Int total = census_point_count(kronecker(), dv({2, 1}), p);
    Int expect = 1;
    for (int k = 0; k < 4; ++k) expect *= p;
    CHECK(total == expect);
    for (Int idx = 0; idx < total; idx += 7) {
      Rep<Fp> r = decode_point(kronecker(), dv({2, 1}), p, idx);
      CHECK(encode_point(r) == idx);
    }
  }
}

TEST_CASE("census orbit counts are field independent and match root multisets") {
  for (const Quiver& q : {a2(), a3()}) {
    for (const DimVec& d : boxed(q.nv(), 2)) {
      size_t want = components(q, d, NilFlavor::Nil).size();
      CHECK(orbit_census(q, d, 2).orbits.size() == want);
      CHECK(orbit_census(q, d, 3).orbits.size() == want);
    }
  }
}

TEST_CASE("census nilpotent orbit counts match the multipartition classification") {
  for (int n : {1, 2}) {
    Quiver q = make_cyclic_quiver(n);
    for (const DimVec& d : boxed(n, 2)) {
      CensusReport rep = orbit_census(q, d, 2);
      size_t nilpotent = 0;
      for (const OrbitRecord& o : rep.orbits)
        if (is_nilpotent(decode_point(q, d, 2, o.representative))) ++nilpotent;
      CHECK(nilpotent == enumerate_orbits(n, d, false).size());
    }
  }
}

TEST_CASE("flag projection images over small fields") {
  // Two strictly commuting-triangular loops on a plane: the image is the
  // simultaneously strictly triangularizable pairs, and most image points
  // carry exactly one flag.
  ImageReport rep = image_of_pi(loops(2), ft({{1}, {1}}), true, 2);
  CHECK(rep.image.size() == 10);
  // Nine points carry a unique flag; the zero pair is stabilized by each of
  // the three lines.  Total flag count 12 = 3 lines times 4 pairs per line,
  // and the remaining 246 of the 256 points admit no flag at all.
  CHECK(rep.fiber_counts ==
        (std::map<Int, Int>{{0, 246}, {1, 9}, {3, 1}}));

  // A one-step lax flag puts no condition at all.
  rep = image_of_pi(loops(2), ft({{2}}), false, 2);
  CHECK(rep.image.size() == 256);
  CHECK(rep.fiber_counts.at(1) == 256);

  // A one-step strict flag forces the zero representation.
  rep = image_of_pi(loops(2), ft({{2}}), true, 2);
  CHECK(rep.image == std::vector<Int>{0});

  // An invertible loop value is never strictly triangularizable.
  rep = image_of_pi(loops(1), ft({{1}}), true, 3);
  CHECK(rep.image == std::vector<Int>{0});

  // Nilpotent 3x3 matrices over F_2: 2^(9-3) points, flag per Jordan chain.
  rep = image_of_pi(loops(1), ft({{1}, {1}, {1}}), true, 2);
  CHECK(rep.image.size() == 64);
}

TEST_CASE("image inclusions under step merges") {
  // Merging adjacent steps strengthens the strict stability condition (the
  // composite must now drop two levels), so the merged image sits inside
  // the refined one: any flag for the merged type extends to the refined
  // type by inserting an intermediate subspace above the strict image.
  CHECK(inclusion_check(loops(2), ft({{1}, {1}}), ft({{1}, {1}}), true, 2) ==
        Inclusion::Equal);
  CHECK(inclusion_check(loops(2), ft({{2}}), ft({{1}, {1}}), true, 2) ==
        Inclusion::FirstInSecond);
  CHECK(inclusion_check(loops(1), ft({{3}}), ft({{2}, {1}}), true, 2) ==
        Inclusion::FirstInSecond);
  CHECK(inclusion_check(loops(1), ft({{2}, {1}}), ft({{1}, {1}, {1}}), true, 2) ==
        Inclusion::FirstInSecond);
  // For a single 3x3 matrix both two-step conditions say x^2 = 0.
  CHECK(inclusion_check(loops(1), ft({{2}, {1}}), ft({{1}, {2}}), true, 2) ==
        Inclusion::Equal);

  // On the oriented 2-cycle the two discrete orders kill different arrows.
  Quiver c2 = make_cyclic_quiver(2);
  CHECK(inclusion_check(c2, ft({{1, 0}, {0, 1}}), ft({{0, 1}, {1, 0}}), true,
                        2) == Inclusion::Incomparable);
}

TEST_CASE("pair counts by relative position stay near the formal dimension") {
  // For every discrete two-step flag type on the two-loop vertex, count
  // (x, F, F') with both flags strictly stable, bucketed by the relative
  // position, and compare with 2^total_dim(z): the census count must sit
  // within a fixed factor (32) of the formal parameter count.
  Quiver q = loops(2);
  long p = 2;
  for (const FlagType& f : enumerate_flag_types(dv({2}), true)) {
    if (f.size() < 2) continue;
    std::map<std::vector<long>, Int> counts;  // key: intersection dims of F_1
    Int total = census_point_count(q, dv({2}), p);
    for (Int idx = 0; idx < total; ++idx) {
      Rep<Fp> x = decode_point(q, dv({2}), p, idx);
      auto flags = enumerate_stable_flags(x, f, true);
      for (const auto& a : flags)
        for (const auto& b : flags) {
          Matrix<Fp> join = Matrix<Fp>::hcat(a.steps[0][0], b.steps[0][0]);
          std::vector<long> key{
              long(a.steps[0][0].c + b.steps[0][0].c - rank(join))};
          counts[key] += 1;
        }
    }
    // key = dim(F_1 cap F'_1): the diagonal has full intersection.
    for (const RelPosition& z : theta(f)) {
      std::vector<long> key{to_long(z.z[0][0][0])};
      IncidenceDims dims = incidence_dims(q, f, z, true);
      Int expect = 1;
      for (Int e = 0; e < dims.total_dim; ++e) expect *= p;
      REQUIRE(counts.count(key));
      CHECK(counts[key] * 32 >= expect);
      CHECK(counts[key] <= expect * 32);
    }
  }
}

TEST_CASE("canonical filtration uniqueness at census scale") {
  FiltrationReport rep = filtration_uniqueness(kronecker(), dv({1, 1}), 2);
  CHECK(rep.checked == 4);
  CHECK(rep.violations.empty());
  CHECK(rep.flagged_samples.empty());

  rep = filtration_uniqueness(kronecker(), dv({2, 1}), 2);
  CHECK(rep.checked == 16);
  CHECK(rep.violations.empty());
  CHECK(rep.flagged_samples.empty());
}

TEST_CASE("stable subspace counts of the zero representation") {
  Rep<Fp> zero = Rep<Fp>::zero(loops(1), {4}, 2);
  CHECK(count_stable_subspaces(zero, dv({2})) == gauss_binomial(4, 2, 2));
  CHECK(count_stable_subspaces(zero, dv({1})) == gauss_binomial(4, 1, 2));

  Rep<Fp> zero2 = Rep<Fp>::zero(a2(), {2, 2}, 3);
  CHECK(count_stable_subspaces(zero2, dv({1, 1})) ==
        gauss_binomial(2, 1, 3) * gauss_binomial(2, 1, 3));
}

TEST_CASE("indecomposable summands of small representations") {
  // The zero representation splits into simples.
  Rep<Fp> zero = Rep<Fp>::zero(kronecker(), {2, 1}, 2);
  auto parts = indecomposable_summands(zero, 6);
  CHECK(parts.size() == 3);

  // A regular Kronecker point of dimension (1,1) is indecomposable.
  Rep<Fp> reg = decode_point(kronecker(), dv({1, 1}), 2, 3);  // both maps 1
  parts = indecomposable_summands(reg, 6);
  CHECK(parts.size() == 1);

  // The endomorphism cap is a hard limit.
  Rep<Fp> big = Rep<Fp>::zero(loops(1), {3}, 2);
  CHECK_THROWS_AS(indecomposable_summands(big, 6), budget_error);
}
