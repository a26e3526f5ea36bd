#include "nilvar/census.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <sstream>

#include "nilvar/errors.hpp"

namespace nilvar {

namespace {

long entry_count(const Quiver& q, const DimVec& d) {
  long e = 0;
  for (auto [i, j] : q.arrows) e += to_long(d[j] * d[i]);
  return e;
}

void check_budget(const Int& needed, const CensusBudget& budget) {
  if (needed > budget.max_points) {
    std::ostringstream os;
    os << "census needs " << needed.get_str() << " points but the budget allows "
       << budget.max_points.get_str();
    throw budget_error(os.str());
  }
}

Int pow_int(long p, long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)e);
  return r;
}

// One basis-change generator at a vertex, with its inverse.
struct Gen {
  int v;
  Matrix<Fp> m, minv;
};

std::vector<Gen> build_generators(const std::vector<int>& dims, long p) {
  std::vector<Gen> gens;
  for (int v = 0; v < int(dims.size()); ++v) {
    int d = dims[v];
    if (d == 0) continue;
    Fp one(1, p);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (a == b) continue;
        for (long c = 1; c < p; ++c) {
          Gen g{v, Matrix<Fp>::identity(d, one), Matrix<Fp>::identity(d, one)};
          g.m.at(a, b) = Fp(c, p);
          g.minv.at(a, b) = Fp(p - c, p);
          gens.push_back(std::move(g));
        }
      }
    if (p > 2) {
      // One determinant-moving scaling; together with the transvections it
      // generates the full group at the vertex.
      long g0 = primitive_root(p);
      long ginv = to_long(Fp(g0, p).inv().v);
      Gen g{v, Matrix<Fp>::identity(d, one), Matrix<Fp>::identity(d, one)};
      g.m.at(0, 0) = Fp(g0, p);
      g.minv.at(0, 0) = Fp(ginv, p);
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

Rep<Fp> apply_gen(const Rep<Fp>& x, const Gen& g) {
  Rep<Fp> out = x;
  for (int k = 0; k < x.q.na(); ++k) {
    auto [i, j] = x.q.arrows[k];
    if (j == g.v) out.mats[k] = g.m * out.mats[k];
    if (i == g.v) out.mats[k] = out.mats[k] * g.minv;
  }
  return out;
}

std::vector<long> orbit_indices(const Rep<Fp>& seed,
                                const std::vector<Gen>& gens, long total,
                                std::vector<bool>& visited) {
  std::vector<long> orbit;
  std::deque<long> queue;
  long start = to_long(encode_point(seed));
  visited[start] = true;
  queue.push_back(start);
  orbit.push_back(start);
  const Quiver& q = seed.q;
  DimVec d = zero_vec(q.nv());
  for (int i = 0; i < q.nv(); ++i) d[i] = seed.dim[i];
  while (!queue.empty()) {
    long at = queue.front();
    queue.pop_front();
    Rep<Fp> cur = decode_point(q, d, seed.p, at);
    for (const Gen& g : gens) {
      long nb = to_long(encode_point(apply_gen(cur, g)));
      if (!visited[nb]) {
        visited[nb] = true;
        queue.push_back(nb);
        orbit.push_back(nb);
      }
    }
  }
  (void)total;
  return orbit;
}

}  // namespace

Int census_point_count(const Quiver& q, const DimVec& d, long p) {
  q.validate();
  if (int(d.size()) != q.nv() || !is_nonneg(d))
    throw validation_error("dimension vector does not fit the quiver");
  if (!is_prime(p)) throw validation_error("census field size must be prime");
  return pow_int(p, entry_count(q, d));
}

Rep<Fp> decode_point(const Quiver& q, const DimVec& d, long p, const Int& index) {
  Rep<Fp> r;
  r.q = q;
  r.p = p;
  for (const Int& x : d) r.dim.push_back(int(x.get_si()));
  Int rest = index;
  for (auto [i, j] : q.arrows) {
    Matrix<Fp> m(r.dim[j], r.dim[i]);
    for (int a = 0; a < m.r; ++a)
      for (int b = 0; b < m.c; ++b) {
        Int digit = rest % p;
        rest /= p;
        m.at(a, b) = Fp(to_long(digit), p);
      }
    r.mats.push_back(std::move(m));
  }
  if (rest != 0) throw validation_error("point index out of range");
  r.validate();
  return r;
}

Int encode_point(const Rep<Fp>& r) {
  Int idx = 0;
  Int base = 1;
  for (const Matrix<Fp>& m : r.mats)
    for (int a = 0; a < m.r; ++a)
      for (int b = 0; b < m.c; ++b) {
        idx += base * m.at(a, b).v;
        base *= r.p;
      }
  return idx;
}

CensusReport orbit_census(const Quiver& q, const DimVec& d, long p,
                          const CensusBudget& budget) {
  auto t0 = std::chrono::steady_clock::now();
  Int total = census_point_count(q, d, p);
  check_budget(total, budget);
  long n = to_long(total);

  std::vector<int> dims;
  for (const Int& x : d) dims.push_back(int(x.get_si()));
  std::vector<Gen> gens = build_generators(dims, p);

  CensusReport rep;
  rep.p = p;
  rep.total_points = total;
  std::vector<bool> visited(n, false);
  Int covered = 0;
  for (long idx = 0; idx < n; ++idx) {
    if (visited[idx]) continue;
    Rep<Fp> seed = decode_point(q, d, p, idx);
    std::vector<long> orbit = orbit_indices(seed, gens, n, visited);
    OrbitRecord rec;
    rec.representative = idx;  // BFS seeds scan upward, so idx is minimal
    rec.size = Int(long(orbit.size()));
    rec.end_dim = end_dim(seed);
    covered += rec.size;
    rep.orbits.push_back(std::move(rec));
  }
  if (covered != total)
    throw internal_error("orbit sizes do not sum to the point count");
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<Int> orbit_of(const Rep<Fp>& x, const CensusBudget& budget) {
  x.validate();
  if (x.p < 2) throw validation_error("orbit closure needs a finite field");
  DimVec d;
  for (int v : x.dim) d.push_back(v);
  Int total = census_point_count(x.q, d, x.p);
  check_budget(total, budget);
  long n = to_long(total);
  std::vector<Gen> gens = build_generators(x.dim, x.p);
  std::vector<bool> visited(n, false);
  std::vector<long> orbit = orbit_indices(x, gens, n, visited);
  std::sort(orbit.begin(), orbit.end());
  std::vector<Int> out;
  for (long i : orbit) out.push_back(Int(i));
  return out;
}

ImageReport image_of_pi(const Quiver& q, const FlagType& ft, bool nil, long p,
                        const CensusBudget& budget) {
  q.validate();
  if (ft.empty()) throw validation_error("flag type must have at least one step");
  DimVec d = zero_vec(q.nv());
  for (const DimVec& step : ft) {
    if (int(step.size()) != q.nv())
      throw validation_error("flag type step has wrong length");
    for (int i = 0; i < q.nv(); ++i) d[i] += step[i];
  }
  Int total = census_point_count(q, d, p);
  check_budget(total, budget);
  long n = to_long(total);
  ImageReport rep;
  for (long idx = 0; idx < n; ++idx) {
    Rep<Fp> x = decode_point(q, d, p, idx);
    Int cnt = stable_flags(x, ft, nil);
    rep.fiber_counts[cnt] += 1;
    if (cnt > 0) rep.image.push_back(Int(idx));
  }
  return rep;
}

std::string to_string(Inclusion inc) {
  switch (inc) {
    case Inclusion::Equal: return "equal";
    case Inclusion::FirstInSecond: return "strict_subset(first_in_second)";
    case Inclusion::SecondInFirst: return "strict_subset(second_in_first)";
    case Inclusion::Incomparable: return "incomparable";
  }
  return "?";
}

Inclusion inclusion_check(const Quiver& q, const FlagType& ft1,
                          const FlagType& ft2, bool nil, long p,
                          const CensusBudget& budget) {
  ImageReport a = image_of_pi(q, ft1, nil, p, budget);
  ImageReport b = image_of_pi(q, ft2, nil, p, budget);
  bool ab = std::includes(b.image.begin(), b.image.end(), a.image.begin(),
                          a.image.end());
  bool ba = std::includes(a.image.begin(), a.image.end(), b.image.begin(),
                          b.image.end());
  if (ab && ba) return Inclusion::Equal;
  if (ab) return Inclusion::FirstInSecond;
  if (ba) return Inclusion::SecondInFirst;
  return Inclusion::Incomparable;
}

Int count_stable_subspaces(const Rep<Fp>& x, const DimVec& dims) {
  x.validate();
  if (int(dims.size()) != x.q.nv())
    throw validation_error("subspace dimension vector has wrong length");
  int n = x.q.nv();
  std::vector<std::vector<Matrix<Fp>>> choices(n);
  for (int i = 0; i < n; ++i) {
    long k = to_long(dims[i]);
    if (k < 0 || k > x.dim[i]) return 0;
    choices[i] = detail::subspaces_fp(x.dim[i], int(k), x.p);
  }
  Int count = 0;
  std::vector<size_t> idx(n, 0);
  while (true) {
    bool ok = true;
    for (int k = 0; ok && k < x.q.na(); ++k) {
      auto [a, b] = x.q.arrows[k];
      ok = span_contains(choices[b][idx[b]], x.mats[k] * choices[a][idx[a]]);
    }
    if (ok) count += 1;
    size_t at = 0;
    while (at < idx.size()) {
      if (++idx[at] < choices[at].size()) break;
      idx[at] = 0;
      ++at;
    }
    if (at == idx.size()) break;
  }
  return count;
}

namespace {

// Coordinates of x restricted to the x-stable graded subspace spanned by the
// columns of U.
Rep<Fp> restrict_to(const Rep<Fp>& x, const std::vector<Matrix<Fp>>& U) {
  Fp one(1, x.p);
  Rep<Fp> out;
  out.q = x.q;
  out.p = x.p;
  for (int i = 0; i < x.q.nv(); ++i) out.dim.push_back(U[i].c);
  for (int k = 0; k < x.q.na(); ++k) {
    auto [a, b] = x.q.arrows[k];
    if (x.dim[b] == 0) {
      out.mats.push_back(Matrix<Fp>(0, U[a].c));
      continue;
    }
    Matrix<Fp> full = Matrix<Fp>::hcat(U[b], detail::split_off(U[b], one).inj);
    auto full_inv = inverse(full, one);
    if (!full_inv) throw internal_error("subspace basis did not complete to a basis");
    Matrix<Fp> coords = *full_inv * (x.mats[k] * U[a]);
    Matrix<Fp> top(U[b].c, U[a].c);
    for (int r = 0; r < coords.r; ++r)
      for (int c = 0; c < coords.c; ++c) {
        if (r < U[b].c)
          top.at(r, c) = coords.at(r, c);
        else if (!is_zero(coords.at(r, c)))
          throw internal_error("restriction target is not stable");
      }
    out.mats.push_back(std::move(top));
  }
  out.validate();
  return out;
}

}  // namespace

std::vector<Rep<Fp>> indecomposable_summands(const Rep<Fp>& x, int end_dim_cap) {
  x.validate();
  if (x.total_dim() == 0) return {};
  Fp one(1, x.p);
  int n = x.q.nv();
  Matrix<Fp> basis = kernel_basis(hom_system(x, x), one);
  int ed = basis.c;
  if (ed > end_dim_cap) {
    std::ostringstream os;
    os << "endomorphism scan needs dimension " << ed
       << " but the cap allows " << end_dim_cap;
    throw budget_error(os.str());
  }
  std::vector<int> offset(n + 1, 0);
  for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + x.dim[i] * x.dim[i];
  long m = x.total_dim();

  std::vector<long> coeff(ed, 0);
  while (true) {
    // Next nonzero coefficient vector, odometer order.
    int at = 0;
    while (at < ed && coeff[at] == x.p - 1) coeff[at] = 0, ++at;
    if (at == ed) break;
    coeff[at] += 1;

    // Assemble the endomorphism and its (total dim)-th power vertexwise; the
    // kernel and image of that power are both x-stable and complementary.
    std::vector<Matrix<Fp>> pw(n);
    for (int i = 0; i < n; ++i) {
      Matrix<Fp> e(x.dim[i], x.dim[i]);
      for (int r = 0; r < x.dim[i]; ++r)
        for (int c = 0; c < x.dim[i]; ++c) {
          Fp v(0, x.p);
          for (int k = 0; k < ed; ++k)
            if (coeff[k])
              v = v + Fp(coeff[k], x.p) * basis.at(offset[i] + r * x.dim[i] + c, k);
          e.at(r, c) = v;
        }
      Matrix<Fp> acc = Matrix<Fp>::identity(x.dim[i], one);
      for (long s = 0; s < m; ++s) acc = acc * e;
      pw[i] = std::move(acc);
    }
    std::vector<Matrix<Fp>> im(n), ker(n);
    int im_total = 0, ker_total = 0;
    for (int i = 0; i < n; ++i) {
      im[i] = image_basis(pw[i]);
      ker[i] = kernel_basis(pw[i], one);
      im_total += im[i].c;
      ker_total += ker[i].c;
    }
    if (im_total == 0 || ker_total == 0) continue;  // nilpotent or invertible
    std::vector<Rep<Fp>> out = indecomposable_summands(restrict_to(x, im), end_dim_cap);
    std::vector<Rep<Fp>> rest = indecomposable_summands(restrict_to(x, ker), end_dim_cap);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  return {x};
}

FiltrationReport filtration_uniqueness(const Quiver& q, const DimVec& d, long p,
                                       int end_dim_cap,
                                       const CensusBudget& budget) {
  QuiverClass cls = classify(q);
  if (cls.kind != QuiverKind::Affine)
    throw validation_error("the canonical filtration check needs an affine quiver");
  Int total = census_point_count(q, d, p);
  check_budget(total, budget);
  long n = to_long(total);
  FiltrationReport rep;
  for (long idx = 0; idx < n; ++idx) {
    Rep<Fp> x = decode_point(q, d, p, idx);
    std::vector<Rep<Fp>> parts;
    try {
      parts = indecomposable_summands(x, end_dim_cap);
    } catch (const budget_error&) {
      rep.flagged_samples.push_back(Int(idx));
      continue;
    }
    DimVec d_i = zero_vec(q.nv()), d_r = zero_vec(q.nv());
    for (const Rep<Fp>& part : parts) {
      DimVec pd;
      for (int v : part.dim) pd.push_back(v);
      Int def = defect(q, pd);
      if (def > 0)
        for (int i = 0; i < q.nv(); ++i) d_i[i] += pd[i];
      else if (def == 0)
        for (int i = 0; i < q.nv(); ++i) d_r[i] += pd[i];
    }
    DimVec d_ir = d_i;
    for (int i = 0; i < q.nv(); ++i) d_ir[i] += d_r[i];
    rep.checked += 1;
    if (count_stable_subspaces(x, d_i) != 1 ||
        count_stable_subspaces(x, d_ir) != 1)
      rep.violations.push_back(Int(idx));
  }
  return rep;
}

}  // namespace nilvar
