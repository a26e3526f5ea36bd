#include <doctest.h>

#include <random>

#include "nilvar/flagsearch.hpp"
#include "nilvar/multipartition.hpp"
#include "nilvar/rep.hpp"

using namespace nilvar;

namespace {

Quiver quiver(std::vector<std::string> vs, std::vector<std::pair<int, int>> as) {
  Quiver q;
  q.vertices = std::move(vs);
  q.arrows = std::move(as);
  return q;
}

Quiver one_loop() { return quiver({"1"}, {{0, 0}}); }
Quiver two_loops() { return quiver({"1"}, {{0, 0}, {0, 0}}); }

// Nilpotent single Jordan block: e_{k+1} -> e_k, kernel e_1.
Matrix<Fp> jordan_zero(int d, long p) {
  Matrix<Fp> m(d, d);
  for (int i = 0; i + 1 < d; ++i) m.at(i, i + 1) = Fp(1, p);
  return m;
}

DoubledPoint<Fp> zero_point(const Quiver& q, std::vector<int> dim, long p) {
  DoubledPoint<Fp> pt;
  pt.q = q;
  pt.dim = std::move(dim);
  pt.p = p;
  for (auto [s, t] : q.arrows) {
    pt.x.emplace_back(pt.dim[t], pt.dim[s]);
    pt.xstar.emplace_back(pt.dim[s], pt.dim[t]);
  }
  return pt;
}

DoubledPoint<Fp> random_point(std::mt19937& rng, const Quiver& q,
                              std::vector<int> dim, long p) {
  DoubledPoint<Fp> pt = zero_point(q, std::move(dim), p);
  std::uniform_int_distribution<long> pick(0, p - 1);
  for (auto& m : pt.x)
    for (Fp& e : m.a) e = Fp(pick(rng), p);
  for (auto& m : pt.xstar)
    for (Fp& e : m.a) e = Fp(pick(rng), p);
  return pt;
}

// Mostly-zero entries: dense points are almost never semi-nilpotent, so the
// sparse sampler is what actually exercises the Present branch.
DoubledPoint<Fp> random_sparse_point(std::mt19937& rng, const Quiver& q,
                                     std::vector<int> dim, long p) {
  DoubledPoint<Fp> pt = zero_point(q, std::move(dim), p);
  std::uniform_int_distribution<long> pick(0, p - 1);
  std::uniform_int_distribution<int> gate(0, 2);
  for (auto& m : pt.x)
    for (Fp& e : m.a) e = gate(rng) == 0 ? Fp(pick(rng), p) : Fp(0, p);
  for (auto& m : pt.xstar)
    for (Fp& e : m.a) e = gate(rng) == 0 ? Fp(pick(rng), p) : Fp(0, p);
  return pt;
}

Decision exhaustive_decision(const DoubledPoint<Fp>& pt, NilFlavor flavor) {
  detail::SearchFrame<Fp> fr;
  for (int i = 0; i < pt.q.nv(); ++i) {
    fr.embed.push_back(Matrix<Fp>::identity(pt.dim[i], Fp(1, pt.p)));
    fr.cumulative.emplace_back(pt.dim[i], 0);
  }
  std::optional<GradedFlag<Fp>> found;
  return detail::exhaustive_search(pt, flavor, fr, found) ? Decision::Present
                                                          : Decision::Absent;
}

}  // namespace

TEST_CASE("moment map on the one-loop quiver") {
  DoubledPoint<Fp> pt = zero_point(one_loop(), {2}, 5);
  pt.x[0] = jordan_zero(2, 5);

  // xstar = 0: every commutator vanishes.
  CHECK(moment_map_vanishes(pt));

  // A commuting pair lies on the zero level.
  pt.xstar[0] = pt.x[0];
  CHECK(moment_map_vanishes(pt));

  // x = J_2(0), xstar = transpose: [x, x*] = diag(1, -1).
  pt.xstar[0] = pt.x[0].transpose();
  auto mu = moment_map(pt);
  REQUIRE(mu.size() == 1);
  CHECK(mu[0].at(0, 0) == Fp(1, 5));
  CHECK(mu[0].at(1, 1) == Fp(-1, 5));
  CHECK(mu[0].at(0, 1).is_zero());
  CHECK(!moment_map_vanishes(pt));
}

TEST_CASE("nilpotency of representations") {
  Rep<Fp> zero = Rep<Fp>::zero(two_loops(), {3}, 2);
  CHECK(is_nilpotent(zero));

  Rep<Fp> inv = Rep<Fp>::zero(one_loop(), {2}, 3);
  inv.mats[0] = Matrix<Fp>::identity(2, Fp(1, 3));
  CHECK(!is_nilpotent(inv));

  // On the oriented 2-cycle a single vanishing arrow kills every long path.
  Rep<Fp> c2 = Rep<Fp>::zero(make_cyclic_quiver(2), {1, 1}, 2);
  c2.mats[0].at(0, 0) = Fp(1, 2);
  CHECK(is_nilpotent(c2));

  c2.mats[1].at(0, 0) = Fp(1, 2);
  CHECK(!is_nilpotent(c2));
}

TEST_CASE("rank profile of cyclic representations") {
  MultiPartition m;
  m.n = 2;
  m.parts = {{2}, {}};
  Rep<Fp> r = build_nilpotent<Fp>(m, 2);
  auto table = rank_profile(r);
  CHECK(table[0][0] == 1);
  CHECK(table[0][1] == 1);
  CHECK(table[0][2] == 0);
  CHECK(table[1][1] == 0);
  CHECK(decompose_nilpotent(r) == m);

  Rep<Fp> z = Rep<Fp>::zero(make_cyclic_quiver(2), {2, 1}, 3);
  auto zt = rank_profile(z);
  for (int i = 0; i < 2; ++i)
    for (int l = 1; l <= 4; ++l) CHECK(zt[i][l] == 0);

  Rep<Fp> loop = Rep<Fp>::zero(make_cyclic_quiver(1), {3}, 2);
  loop.mats[0] = Matrix<Fp>::identity(3, Fp(1, 2));
  auto lt = rank_profile(loop);
  for (int l = 0; l <= 4; ++l) CHECK(lt[0][l] == 3);
}

TEST_CASE("nilpotent build/decompose round trip") {
  for (int n : {1, 2, 3}) {
    DimVec d(n, 2);
    for (const MultiPartition& m : enumerate_orbits(n, d, false)) {
      Rep<Fp> r = build_nilpotent<Fp>(m, 3);
      CHECK(is_nilpotent(r));
      CHECK(decompose_nilpotent(r) == m);
    }
  }
}

TEST_CASE("flag search on pinpoint examples") {
  // xstar = 0 and x nilpotent: the iterated-kernel flag works for Nil.
  DoubledPoint<Fp> pt = zero_point(one_loop(), {3}, 2);
  pt.x[0] = jordan_zero(3, 2);
  auto res = find_flag(pt, NilFlavor::Nil);
  CHECK(res.decision == Decision::Present);
  REQUIRE(res.witness.has_value());
  CHECK(verify_flag(pt, NilFlavor::Nil, *res.witness));

  // Identity pair on a loop: no strict step can ever be taken.
  DoubledPoint<Fp> idpt = zero_point(one_loop(), {2}, 2);
  idpt.x[0] = Matrix<Fp>::identity(2, Fp(1, 2));
  idpt.xstar[0] = idpt.x[0];
  for (NilFlavor f : {NilFlavor::Nil, NilFlavor::Plain, NilFlavor::NilOne,
                      NilFlavor::One}) {
    auto r = find_flag(idpt, f);
    CHECK(r.decision == Decision::Absent);
    CHECK(r.exhaustive_used);
  }

  // Same point over the rationals sits above every exhaustive cap: the
  // search must answer Undecided rather than guess.
  DoubledPoint<Rat> big;
  big.q = one_loop();
  big.dim = {2};
  big.x.push_back(Matrix<Rat>::identity(2, Rat(1)));
  big.xstar.push_back(Matrix<Rat>::identity(2, Rat(1)));
  CHECK(find_flag(big, NilFlavor::Nil).decision == Decision::Undecided);

  // Two equal nilpotent loops, xstar = 0: kernel line then everything.
  DoubledPoint<Fp> s2 = zero_point(two_loops(), {2}, 2);
  s2.x[0] = jordan_zero(2, 2);
  s2.x[1] = s2.x[0];
  auto rs2 = find_flag(s2, NilFlavor::NilOne);
  CHECK(rs2.decision == Decision::Present);
  REQUIRE(rs2.witness.has_value());
  CHECK(rs2.witness->steps.size() == 2);
  CHECK(verify_flag(s2, NilFlavor::NilOne, *rs2.witness));
}

TEST_CASE("lambda membership") {
  DoubledPoint<Fp> pt = zero_point(one_loop(), {2}, 2);
  pt.x[0] = jordan_zero(2, 2);
  auto rep = lambda_member(pt, NilFlavor::Nil);
  CHECK(rep.member == Decision::Present);
  CHECK(rep.mu_zero);

  // Commuting invertible pair: on the zero level but admits no flag.
  pt.xstar[0] = Matrix<Fp>::identity(2, Fp(1, 2));
  pt.x[0] = pt.xstar[0];
  rep = lambda_member(pt, NilFlavor::Plain);
  CHECK(rep.member == Decision::Absent);
  CHECK(rep.mu_zero);

  // Nonzero moment map is a definitive no, whatever the flavor.
  pt.x[0] = jordan_zero(2, 2);
  pt.xstar[0] = pt.x[0].transpose();
  rep = lambda_member(pt, NilFlavor::Nil);
  CHECK(rep.member == Decision::Absent);
  CHECK(!rep.mu_zero);
}

TEST_CASE("hom dimensions and orbit dimensions") {
  Quiver a2 = quiver({"1", "2"}, {{0, 1}});
  Rep<Rat> s12 = Rep<Rat>::zero(a2, {1, 1});
  CHECK(end_dim(s12) == 2);
  CHECK(orbit_dim(s12) == 0);

  // No maps from the preinjective simple to the preprojective simple.
  Quiver kr = quiver({"1", "2"}, {{0, 1}, {0, 1}});
  Rep<Rat> pre_inj = Rep<Rat>::zero(kr, {1, 0});
  Rep<Rat> pre_proj = Rep<Rat>::zero(kr, {0, 1});
  CHECK(hom_dim(pre_inj, pre_proj) == 0);
  CHECK(hom_dim(pre_proj, pre_inj) == 0);

  // Regular representation x = (1, t): End is the scalars.
  Rep<Rat> reg = Rep<Rat>::zero(kr, {1, 1});
  reg.mats[0].at(0, 0) = Rat(1);
  reg.mats[1].at(0, 0) = Rat(3);
  CHECK(end_dim(reg) == 1);
  CHECK(hom_dim(reg, reg) >= 1);

  std::mt19937 rng(29);
  std::uniform_int_distribution<long> pick(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Rep<Fp> r = Rep<Fp>::zero(kr, {2, 2}, 5);
    for (auto& m : r.mats)
      for (Fp& e : m.a) e = Fp(pick(rng), 5);
    CHECK(orbit_dim(r) + end_dim(r) == 8);
    CHECK(end_dim(r) >= 1);
  }
}

TEST_CASE("stable flag counts over small fields") {
  // Zero representation: every flag is stable, so the count is the number of
  // full flags of the type, a product of Gaussian binomials.
  for (long p : {2L, 3L}) {
    Rep<Fp> z = Rep<Fp>::zero(one_loop(), {2}, p);
    FlagType lines = {{Int(1)}, {Int(1)}};
    CHECK(stable_flags(z, lines, false) == p + 1);
    CHECK(stable_flags(z, lines, true) == p + 1);
  }

  Rep<Fp> j2 = Rep<Fp>::zero(one_loop(), {2}, 2);
  j2.mats[0] = jordan_zero(2, 2);
  FlagType lines = {{Int(1)}, {Int(1)}};
  // Strict stability forces F_1 = ker x.
  CHECK(stable_flags(j2, lines, true) == 1);
  // Plain stability only needs an invariant line; J_2(0) has exactly one.
  CHECK(stable_flags(j2, lines, false) == 1);

  Rep<Fp> inv = Rep<Fp>::zero(one_loop(), {2}, 2);
  inv.mats[0] = Matrix<Fp>::identity(2, Fp(1, 2));
  CHECK(stable_flags(inv, lines, true) == 0);
  CHECK(stable_flags(inv, lines, false) == 3);

  // Witness lists agree with the counts and verify as flags.
  auto flags = enumerate_stable_flags(j2, lines, true);
  REQUIRE(flags.size() == 1);
  CHECK(flags[0].steps.size() == 2);
}

TEST_CASE("greedy search matches the exhaustive oracle") {
  std::mt19937 rng(31);
  Quiver a2 = quiver({"1", "2"}, {{0, 1}});
  Quiver c2 = make_cyclic_quiver(2);
  for (int trial = 0; trial < 60; ++trial) {
    const Quiver& q = trial % 2 ? a2 : c2;
    DoubledPoint<Fp> pt = random_point(rng, q, {1, 2}, 2);
    for (NilFlavor f : {NilFlavor::Nil, NilFlavor::Plain, NilFlavor::NilOne,
                        NilFlavor::One}) {
      auto res = find_flag(pt, f);
      REQUIRE(res.decision != Decision::Undecided);
      CHECK(res.decision == exhaustive_decision(pt, f));
    }
  }
}

TEST_CASE("the four flavors agree on acyclic quivers") {
  std::mt19937 rng(37);
  Quiver a3 = quiver({"1", "2", "3"}, {{0, 1}, {2, 1}});
  for (int trial = 0; trial < 40; ++trial) {
    DoubledPoint<Fp> pt = random_point(rng, a3, {1, 2, 1}, 2);
    auto base = find_flag(pt, NilFlavor::Nil).decision;
    REQUIRE(base != Decision::Undecided);
    for (NilFlavor f : {NilFlavor::Plain, NilFlavor::NilOne, NilFlavor::One})
      CHECK(find_flag(pt, f).decision == base);
  }
}

TEST_CASE("flavors collapse pairwise when all cycles are loops") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    DoubledPoint<Fp> pt = random_point(rng, two_loops(), {2}, 2);
    auto nil = find_flag(pt, NilFlavor::Nil).decision;
    auto plain = find_flag(pt, NilFlavor::Plain).decision;
    REQUIRE(nil != Decision::Undecided);
    REQUIRE(plain != Decision::Undecided);
    CHECK(find_flag(pt, NilFlavor::NilOne).decision == nil);
    CHECK(find_flag(pt, NilFlavor::One).decision == plain);
  }
}

TEST_CASE("duality swaps the strict side") {
  std::mt19937 rng(43);
  FlagSearchConfig cfg;
  cfg.exhaustive_field_cap = 5;
  Quiver c2 = make_cyclic_quiver(2);
  int present = 0, absent = 0;
  for (int trial = 0; trial < 100; ++trial) {
    DoubledPoint<Fp> pt = trial % 2
                              ? random_sparse_point(rng, two_loops(), {2}, 5)
                              : random_sparse_point(rng, c2, {1, 2}, 5);
    DoubledPoint<Fp> dual = pt.swapped_opposite();
    auto nil = find_flag(pt, NilFlavor::Nil, cfg).decision;
    auto plain = find_flag(dual, NilFlavor::Plain, cfg).decision;
    REQUIRE(nil != Decision::Undecided);
    CHECK(nil == plain);
    CHECK(find_flag(pt, NilFlavor::NilOne, cfg).decision ==
          find_flag(dual, NilFlavor::One, cfg).decision);
    (nil == Decision::Present ? present : absent)++;
  }
  // The sample must exercise both outcomes to mean anything.
  CHECK(present > 0);
  CHECK(absent > 0);
}
