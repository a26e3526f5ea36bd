#include "nilvar/flagsearch.hpp"

#include <algorithm>

namespace nilvar {
namespace detail {

// All k-dimensional subspaces of F_p^d: reduced-echelon row matrices over
// every pivot-column choice, free entries running through F_p; returned as
// column bases.
std::vector<Matrix<Fp>> subspaces_fp(int d, int k, long p) {
  std::vector<Matrix<Fp>> out;
  if (k < 0 || k > d) return out;
  if (k == 0) {
    out.emplace_back(d, 0);
    return out;
  }
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // Free positions: (row r, column j) with j > piv[r], j not a pivot.
    std::vector<std::pair<int, int>> free_pos;
    std::vector<bool> is_piv(d, false);
    for (int c : piv) is_piv[c] = true;
    for (int r = 0; r < k; ++r)
      for (int j = piv[r] + 1; j < d; ++j)
        if (!is_piv[j]) free_pos.emplace_back(r, j);
    std::vector<long> v(free_pos.size(), 0);
    while (true) {
      Matrix<Fp> rows(k, d);
      for (int r = 0; r < k; ++r) rows.at(r, piv[r]) = Fp(1, p);
      for (size_t f = 0; f < free_pos.size(); ++f)
        rows.at(free_pos[f].first, free_pos[f].second) = Fp(v[f], p);
      out.push_back(rows.transpose());
      size_t f = 0;
      while (f < v.size() && v[f] == p - 1) v[f++] = 0;
      if (f == v.size()) break;
      ++v[f];
    }
    // Next pivot combination, lexicographic.
    int i = k - 1;
    while (i >= 0 && piv[i] == d - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

namespace {

// Nonzero admissible steps for the exhaustive search at the current stage.
std::vector<Graded<Fp>> admissible_steps(const DoubledPoint<Fp>& pt,
                                         NilFlavor flavor) {
  int n = pt.q.nv();
  auto maps = half_maps(pt, flavor);
  std::vector<Graded<Fp>> out;
  if (flavor_discrete(flavor)) {
    for (int v = 0; v < n; ++v)
      for (int k = 1; k <= pt.dim[v]; ++k)
        for (const Matrix<Fp>& b : subspaces_fp(pt.dim[v], k, pt.p)) {
          Graded<Fp> u;
          for (int i = 0; i < n; ++i)
            u.push_back(i == v ? b : Matrix<Fp>(pt.dim[i], 0));
          if (step_admissible(maps, u)) out.push_back(std::move(u));
        }
    return out;
  }
  // Joint flavors: product over vertices of all subspaces, any dimensions.
  std::vector<std::vector<Matrix<Fp>>> per_vertex(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= pt.dim[i]; ++k)
      for (const Matrix<Fp>& b : subspaces_fp(pt.dim[i], k, pt.p))
        per_vertex[i].push_back(b);
  std::vector<size_t> idx(n, 0);
  while (true) {
    Graded<Fp> u;
    for (int i = 0; i < n; ++i) u.push_back(per_vertex[i][idx[i]]);
    if (graded_total(u) != 0 && step_admissible(maps, u))
      out.push_back(std::move(u));
    int i = 0;
    while (i < n && idx[i] + 1 == per_vertex[i].size()) idx[i++] = 0;
    if (i == n) break;
    ++idx[i];
  }
  return out;
}

}  // namespace

bool exhaustive_search(const DoubledPoint<Fp>& pt, NilFlavor flavor,
                       SearchFrame<Fp> fr,
                       std::optional<GradedFlag<Fp>>& found) {
  int n = pt.q.nv();
  bool done = true;
  for (int i = 0; i < n; ++i) done = done && pt.dim[i] == 0;
  if (done) {
    found = GradedFlag<Fp>{fr.steps};
    return true;
  }
  Fp one(1, pt.p);
  for (const Graded<Fp>& u : admissible_steps(pt, flavor)) {
    SearchFrame<Fp> next = fr;
    push_step(next, u, one);
    QuotientStage<Fp> qs = quotient_by(pt, u, one);
    descend(next, qs);
    if (exhaustive_search(qs.pt, flavor, next, found)) return true;
  }
  return false;
}

}  // namespace detail

namespace {

// Recursive enumeration of stable flags: at each stage extend the cumulative
// subspace by subspaces of prescribed dimensions chosen in quotient
// coordinates, then check the containment conditions on the new directions.
struct StableFlagEnum {
  const Rep<Fp>& r;
  const FlagType& ft;
  bool strict;
  long p;
  std::vector<GradedFlag<Fp>> flags;
  std::vector<Graded<Fp>> chain;  // cumulative bases so far

  bool stage_ok(const Graded<Fp>& prev, const Graded<Fp>& cur) const {
    for (int k = 0; k < r.q.na(); ++k) {
      auto [s, t] = r.q.arrows[k];
      Matrix<Fp> img = r.mats[k] * cur[s];
      if (!span_contains(strict ? prev[t] : cur[t], img)) return false;
    }
    return true;
  }

  void recurse(size_t stage) {
    int n = r.q.nv();
    if (stage == ft.size()) {
      flags.push_back(GradedFlag<Fp>{chain});
      return;
    }
    // Copy: chain reallocates inside the loop when deeper stages push.
    const Graded<Fp> prev = chain.back();
    // Per-vertex extension choices in complement coordinates.
    std::vector<std::vector<Matrix<Fp>>> choices(n);
    std::vector<detail::SplitSpace<Fp>> split;
    for (int i = 0; i < n; ++i) {
      split.push_back(detail::split_off(prev[i], Fp(1, p)));
      int quot_dim = r.dim[i] - prev[i].c;
      int want = int(ft[stage][i].get_si());
      for (const Matrix<Fp>& w : detail::subspaces_fp(quot_dim, want, p))
        choices[i].push_back(Matrix<Fp>::hcat(prev[i], split[i].inj * w));
    }
    std::vector<size_t> idx(n, 0);
    for (int i = 0; i < n; ++i)
      if (choices[i].empty()) return;
    while (true) {
      Graded<Fp> cur;
      for (int i = 0; i < n; ++i) cur.push_back(choices[i][idx[i]]);
      if (stage_ok(prev, cur)) {
        chain.push_back(cur);
        recurse(stage + 1);
        chain.pop_back();
      }
      int i = 0;
      while (i < n && idx[i] + 1 == choices[i].size()) idx[i++] = 0;
      if (i == n) break;
      ++idx[i];
    }
  }
};

}  // namespace

std::vector<GradedFlag<Fp>> enumerate_stable_flags(const Rep<Fp>& r,
                                                   const FlagType& ft,
                                                   bool strict) {
  r.validate();
  if (r.p < 2) throw validation_error("stable flag enumeration needs a prime field");
  DimVec total = zero_vec(r.q.nv());
  for (const DimVec& step : ft) {
    if (int(step.size()) != r.q.nv())
      throw validation_error("flag-type step does not match quiver");
    for (int i = 0; i < r.q.nv(); ++i) total[i] += step[i];
  }
  for (int i = 0; i < r.q.nv(); ++i)
    if (total[i] != r.dim[i])
      throw validation_error("flag-type does not sum to the representation dimension");
  StableFlagEnum en{r, ft, strict, r.p, {}, {}};
  Graded<Fp> empty;
  for (int i = 0; i < r.q.nv(); ++i) empty.emplace_back(r.dim[i], 0);
  en.chain.push_back(empty);
  en.recurse(0);
  // Drop the leading zero subspace from each recorded flag.
  for (auto& f : en.flags) f.steps.erase(f.steps.begin());
  return en.flags;
}

Int stable_flags(const Rep<Fp>& r, const FlagType& ft, bool strict) {
  return Int(enumerate_stable_flags(r, ft, strict).size());
}

}  // namespace nilvar
