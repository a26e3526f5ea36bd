#include <doctest.h>

#include <random>

#include "nilvar/matrix.hpp"
#include "nilvar/numeric.hpp"

using namespace nilvar;

namespace {

Matrix<Fp> random_fp(std::mt19937& rng, int r, int c, long p) {
  Matrix<Fp> m(r, c);
  std::uniform_int_distribution<long> pick(0, p - 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Fp(pick(rng), p);
  return m;
}

Matrix<Rat> random_rat(std::mt19937& rng, int r, int c) {
  Matrix<Rat> m(r, c);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      Rat x(num(rng), den(rng));
      x.canonicalize();
      m.at(i, j) = x;
    }
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  for (long p : {2L, 3L, 5L, 7L, 11L}) {
    CHECK(is_prime(p));
    for (long v = 1; v < p; ++v) {
      Fp x(v, p);
      CHECK((x * x.inv()).v == 1);
      CHECK((x / x).v == 1);
    }
    // The primitive root generates the full multiplicative group.
    long g = primitive_root(p);
    long x = g % p, order = 1;
    while (x != 1) {
      x = (x * g) % p;
      ++order;
    }
    CHECK(order == p - 1);
  }
  CHECK(!is_prime(1));
  CHECK(!is_prime(4));
  CHECK(!is_prime(9));

  // Wildcard zero combines with any modulus.
  Fp wild;
  Fp three(3, 5);
  CHECK((wild + three).v == 3);
  CHECK((three * wild).is_zero());
  CHECK((-wild).is_zero());
  CHECK(Fp(-2, 5).v == 3);
}

TEST_CASE("rank and rref pivots") {
  // Rank-2 rational matrix with a dependent third row.
  Matrix<Rat> m(3, 3, {Rat(1), Rat(2), Rat(3),
                       Rat(0), Rat(1), Rat(4),
                       Rat(1), Rat(3), Rat(7)});
  CHECK(rank(m) == 2);
  CHECK(rank(m.transpose()) == 2);

  Matrix<Fp> id = Matrix<Fp>::identity(4, Fp(1, 3));
  CHECK(rank(id) == 4);
  CHECK(Matrix<Fp>(2, 5).is_zero());
  CHECK(rank(Matrix<Fp>(2, 5)) == 0);

  // 2 = 0 over F_2, so this matrix drops rank there but not over Q.
  Matrix<Fp> even(2, 2, {Fp(1, 2), Fp(1, 2), Fp(1, 2), Fp(3, 2)});
  CHECK(rank(even) == 1);
  Matrix<Rat> evenq(2, 2, {Rat(1), Rat(1), Rat(1), Rat(3)});
  CHECK(rank(evenq) == 2);
}

TEST_CASE("kernel basis satisfies rank-nullity") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + trial % 4, c = 1 + (trial / 4) % 5;
    Matrix<Fp> m = random_fp(rng, r, c, 5);
    Matrix<Fp> k = kernel_basis(m, Fp(1, 5));
    CHECK((m * k).is_zero());
    CHECK(rank(k) == k.c);
    CHECK(rank(m) + k.c == c);
  }
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<Rat> m = random_rat(rng, 3, 4);
    Matrix<Rat> k = kernel_basis(m, Rat(1));
    CHECK((m * k).is_zero());
    CHECK(rank(m) + k.c == 4);
  }
}

TEST_CASE("solve returns a solution exactly when one exists") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix<Fp> m = random_fp(rng, 3, 4, 3);
    Matrix<Fp> x0 = random_fp(rng, 4, 1, 3);
    Matrix<Fp> b = m * x0;
    auto x = solve(m, b, Fp(1, 3));
    REQUIRE(x.has_value());
    CHECK(m * *x == b);
  }
  // Inconsistent: zero matrix cannot hit a nonzero target.
  Matrix<Rat> z(2, 2);
  Matrix<Rat> b(2, 1, {Rat(1), Rat(0)});
  CHECK(!solve(z, b, Rat(1)).has_value());
}

TEST_CASE("inverse and singular detection") {
  std::mt19937 rng(17);
  int invertible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Matrix<Fp> m = random_fp(rng, 3, 3, 5);
    auto mi = inverse(m, Fp(1, 5));
    if (rank(m) == 3) {
      REQUIRE(mi.has_value());
      CHECK(m * *mi == Matrix<Fp>::identity(3, Fp(1, 5)));
      CHECK(*mi * m == Matrix<Fp>::identity(3, Fp(1, 5)));
      ++invertible;
    } else {
      CHECK(!mi.has_value());
    }
  }
  CHECK(invertible > 0);

  Matrix<Rat> m(2, 2, {Rat(2), Rat(1), Rat(7), Rat(4)});
  auto mi = inverse(m, Rat(1));
  REQUIRE(mi.has_value());
  CHECK(mi->at(0, 0) == Rat(4));
  CHECK(mi->at(0, 1) == Rat(-1));
}

TEST_CASE("image basis and span predicates") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix<Fp> m = random_fp(rng, 4, 5, 3);
    Matrix<Fp> im = image_basis(m);
    CHECK(im.c == rank(m));
    CHECK(rank(im) == im.c);
    CHECK(span_contains(im, m));
    CHECK(span_contains(m, im));
  }
  Matrix<Rat> e1(3, 1, {Rat(1), Rat(0), Rat(0)});
  Matrix<Rat> e12(3, 2, {Rat(1), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0)});
  CHECK(span_contains(e12, e1));
  CHECK(!span_contains(e1, e12));
}

TEST_CASE("span intersection has the modular dimension") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix<Fp> x = random_fp(rng, 4, 2, 5);
    Matrix<Fp> y = random_fp(rng, 4, 3, 5);
    Matrix<Fp> cap = span_intersection(x, y, Fp(1, 5));
    // dim(X cap Y) = dim X + dim Y - dim(X + Y).
    CHECK(cap.c == rank(x) + rank(y) - rank(Matrix<Fp>::hcat(x, y)));
    CHECK(span_contains(x, cap));
    CHECK(span_contains(y, cap));
  }
}

TEST_CASE("block concatenation and column selection") {
  Matrix<Rat> a(2, 1, {Rat(1), Rat(2)});
  Matrix<Rat> b(2, 2, {Rat(3), Rat(4), Rat(5), Rat(6)});
  Matrix<Rat> h = Matrix<Rat>::hcat(a, b);
  CHECK(h.r == 2);
  CHECK(h.c == 3);
  CHECK(h.at(0, 1) == Rat(3));
  CHECK(h.at(1, 2) == Rat(6));

  Matrix<Rat> v = Matrix<Rat>::vcat(b, b);
  CHECK(v.r == 4);
  CHECK(v.at(3, 1) == Rat(6));

  Matrix<Rat> sel = h.columns({2, 0});
  CHECK(sel.at(0, 0) == Rat(4));
  CHECK(sel.at(0, 1) == Rat(1));

  CHECK(h.transpose().transpose() == h);
}
