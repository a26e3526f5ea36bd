#pragma once

#include <optional>
#include <type_traits>
#include <vector>

#include "nilvar/rep.hpp"

namespace nilvar {

// The four flag-based nilpotency notions on a doubled point (x, x*):
//   Nil    — x strictly decreases a graded flag, x* preserves it
//   Plain  — x preserves, x* strictly decreases
//   NilOne — Nil with a discrete flag (one vertex per step)
//   One    — Plain with a discrete flag
enum class NilFlavor { Nil, Plain, NilOne, One };

inline bool flavor_discrete(NilFlavor f) {
  return f == NilFlavor::NilOne || f == NilFlavor::One;
}
inline bool flavor_x_strict(NilFlavor f) {
  return f == NilFlavor::Nil || f == NilFlavor::NilOne;
}

enum class Decision { Present, Absent, Undecided };

// Per-vertex list of column bases: a graded subspace.
template <class T>
using Graded = std::vector<Matrix<T>>;

template <class T>
Int graded_total(const Graded<T>& g) {
  Int s = 0;
  for (const auto& m : g) s += m.c;
  return s;
}

// Witness flag: cumulative graded subspaces F_1 ⊆ F_2 ⊆ … = V, in the
// coordinates of the original point.
template <class T>
struct GradedFlag {
  std::vector<Graded<T>> steps;
};

template <class T>
struct FlagSearchResult {
  Decision decision = Decision::Undecided;
  std::optional<GradedFlag<T>> witness;
  bool exhaustive_used = false;
};

struct FlagSearchConfig {
  // The exhaustive subspace-enumeration fallback runs only over prime fields
  // with p <= exhaustive_field_cap and total dimension <= exhaustive_dim_cap;
  // beyond these caps a greedy failure is reported as Undecided.
  int exhaustive_dim_cap = 4;
  long exhaustive_field_cap = 3;
};

namespace detail {

template <class T>
T unit_of(long p) {
  if constexpr (std::is_same_v<T, Fp>)
    return Fp(1, p);
  else
    return T(1);
}

// One half-arrow of the doubled point viewed as a plain map with a role.
template <class T>
struct HalfMap {
  int from, to;
  bool strict;
  Matrix<T> mat;
};

template <class T>
std::vector<HalfMap<T>> half_maps(const DoubledPoint<T>& pt, NilFlavor flavor) {
  std::vector<HalfMap<T>> maps;
  bool xs = flavor_x_strict(flavor);
  for (int k = 0; k < pt.q.na(); ++k) {
    auto [s, t] = pt.q.arrows[k];
    maps.push_back({s, t, xs, pt.x[k]});
    maps.push_back({t, s, !xs, pt.xstar[k]});
  }
  return maps;
}

// {v : m v in span(basis)} as a column basis; L has rows spanning the
// functionals vanishing on the span.
template <class T>
Matrix<T> preimage(const Matrix<T>& m, const Matrix<T>& basis, const T& one) {
  Matrix<T> l = kernel_basis(basis.transpose(), one).transpose();
  if (l.r == 0) return Matrix<T>::identity(m.c, one);
  return kernel_basis(l * m, one);
}

// Largest graded subspace U with (strict maps)(U) = 0 and (lax maps)(U) ⊆ U.
// Start from the joint kernel of the strict maps and shrink; admissible
// subspaces are closed under sum, so the fixed point is the unique maximum.
template <class T>
Graded<T> max_joint_step(const DoubledPoint<T>& pt,
                         const std::vector<HalfMap<T>>& maps, const T& one) {
  int n = pt.q.nv();
  Graded<T> u;
  for (int i = 0; i < n; ++i) {
    Matrix<T> constraints(0, pt.dim[i]);
    for (const auto& hm : maps)
      if (hm.from == i && hm.strict)
        constraints = Matrix<T>::vcat(constraints, hm.mat);
    u.push_back(kernel_basis(constraints, one));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& hm : maps) {
      if (hm.strict) continue;
      Matrix<T> pre = preimage(hm.mat, u[hm.to], one);
      Matrix<T> cut = span_intersection(u[hm.from], pre, one);
      if (cut.c < u[hm.from].c) {
        u[hm.from] = cut;
        changed = true;
      }
    }
  }
  return u;
}

// Largest admissible subspace concentrated at one vertex v: strict maps out
// of v and lax maps from v to other vertices must kill it; lax loops at v
// must preserve it.
template <class T>
Matrix<T> max_vertex_step(const DoubledPoint<T>& pt,
                          const std::vector<HalfMap<T>>& maps, int v,
                          const T& one) {
  Matrix<T> constraints(0, pt.dim[v]);
  for (const auto& hm : maps)
    if (hm.from == v && (hm.strict || hm.to != v))
      constraints = Matrix<T>::vcat(constraints, hm.mat);
  Matrix<T> u = kernel_basis(constraints, one);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& hm : maps) {
      if (hm.strict || hm.from != v || hm.to != v) continue;
      Matrix<T> cut = span_intersection(u, preimage(hm.mat, u, one), one);
      if (cut.c < u.c) {
        u = cut;
        changed = true;
      }
    }
  }
  return u;
}

// Standard-basis complement of a full-column-rank basis, plus the projection
// onto complement coordinates (bottom rows of [B|C]^{-1}).
template <class T>
struct SplitSpace {
  Matrix<T> inj;   // d x (d-k), complement basis columns
  Matrix<T> proj;  // (d-k) x d, quotient coordinates
};

template <class T>
SplitSpace<T> split_off(const Matrix<T>& basis, const T& one) {
  int d = basis.r, k = basis.c;
  Matrix<T> bt = basis.transpose();
  std::vector<int> piv = rref(bt);
  assert(int(piv.size()) == k);
  std::vector<bool> is_piv(d, false);
  for (int p : piv) is_piv[p] = true;
  Matrix<T> c(d, d - k);
  int col = 0;
  for (int j = 0; j < d; ++j)
    if (!is_piv[j]) c.at(j, col++) = one;
  Matrix<T> m = Matrix<T>::hcat(basis, c);
  auto m_inv = inverse(m, one);
  assert(m_inv.has_value());
  Matrix<T> proj(d - k, d);
  for (int i = 0; i < d - k; ++i)
    for (int j = 0; j < d; ++j) proj.at(i, j) = m_inv->at(k + i, j);
  return {c, proj};
}

// The point induced on V/U together with the per-vertex complement data.
template <class T>
struct QuotientStage {
  DoubledPoint<T> pt;
  std::vector<SplitSpace<T>> split;
};

template <class T>
QuotientStage<T> quotient_by(const DoubledPoint<T>& pt, const Graded<T>& u,
                             const T& one) {
  QuotientStage<T> out;
  out.pt.q = pt.q;
  out.pt.p = pt.p;
  int n = pt.q.nv();
  for (int i = 0; i < n; ++i) {
    out.split.push_back(split_off(u[i], one));
    out.pt.dim.push_back(pt.dim[i] - u[i].c);
  }
  for (int k = 0; k < pt.q.na(); ++k) {
    auto [s, t] = pt.q.arrows[k];
    out.pt.x.push_back(out.split[t].proj * pt.x[k] * out.split[s].inj);
    out.pt.xstar.push_back(out.split[s].proj * pt.xstar[k] * out.split[t].inj);
  }
  return out;
}

// All subspaces of F_p^d of dimension k, as column bases (reduced echelon
// rows, transposed), enumerated deterministically.
std::vector<Matrix<Fp>> subspaces_fp(int d, int k, long p);

}  // namespace detail

// Checks a witness: cumulative, exhaustive at the top, flavor containments,
// discreteness when required.
template <class T>
bool verify_flag(const DoubledPoint<T>& pt, NilFlavor flavor,
                 const GradedFlag<T>& flag) {
  int n = pt.q.nv();
  auto maps = detail::half_maps(pt, flavor);
  Graded<T> prev;
  for (int i = 0; i < n; ++i) prev.emplace_back(pt.dim[i], 0);
  for (const Graded<T>& step : flag.steps) {
    Int grow = 0;
    int support = 0;
    for (int i = 0; i < n; ++i) {
      if (int(step.size()) != n || step[i].r != pt.dim[i]) return false;
      if (rank(step[i]) != step[i].c) return false;
      if (!span_contains(step[i], prev[i])) return false;
      Int di = step[i].c - prev[i].c;
      if (di < 0) return false;
      grow += di;
      if (di > 0) ++support;
    }
    if (grow == 0) return false;
    if (flavor_discrete(flavor) && support != 1) return false;
    for (const auto& hm : maps) {
      Matrix<T> img = hm.mat * step[hm.from];
      if (!span_contains(hm.strict ? prev[hm.to] : step[hm.to], img))
        return false;
    }
    prev = step;
  }
  for (int i = 0; i < n; ++i)
    if (prev[i].c != pt.dim[i]) return false;
  return true;
}

namespace detail {

// Shared recursion state: embedding of the current stage into the original
// space and the flag found so far.
template <class T>
struct SearchFrame {
  std::vector<Matrix<T>> embed;  // orig_dim x cur_dim per vertex
  Graded<T> cumulative;          // bases in original coordinates
  std::vector<Graded<T>> steps;
};

template <class T>
void push_step(SearchFrame<T>& fr, const Graded<T>& u, const T& one) {
  int n = int(fr.embed.size());
  Graded<T> cum;
  for (int i = 0; i < n; ++i)
    cum.push_back(Matrix<T>::hcat(fr.cumulative[i], fr.embed[i] * u[i]));
  fr.cumulative = cum;
  fr.steps.push_back(cum);
  (void)one;
}

template <class T>
void descend(SearchFrame<T>& fr, const QuotientStage<T>& qs) {
  int n = int(fr.embed.size());
  for (int i = 0; i < n; ++i) fr.embed[i] = fr.embed[i] * qs.split[i].inj;
}

// Greedy search, recursing on the quotient by the maximal admissible step.
// For the discrete flavors the step vertex is branched over (depth-first in
// vertex order); admissible steps at a fixed vertex are closed under sum, so
// per-vertex maxima cover all first steps.
template <class T>
bool greedy_search(const DoubledPoint<T>& pt, NilFlavor flavor,
                   SearchFrame<T> fr, std::optional<GradedFlag<T>>& found) {
  int n = pt.q.nv();
  T one = unit_of<T>(pt.p);
  bool done = true;
  for (int i = 0; i < n; ++i) done = done && pt.dim[i] == 0;
  if (done) {
    found = GradedFlag<T>{fr.steps};
    return true;
  }
  auto maps = half_maps(pt, flavor);
  if (!flavor_discrete(flavor)) {
    Graded<T> u = max_joint_step(pt, maps, one);
    if (graded_total(u) == 0) return false;
    SearchFrame<T> next = fr;
    push_step(next, u, one);
    QuotientStage<T> qs = quotient_by(pt, u, one);
    descend(next, qs);
    return greedy_search(qs.pt, flavor, next, found);
  }
  for (int v = 0; v < n; ++v) {
    if (pt.dim[v] == 0) continue;
    Matrix<T> w = max_vertex_step(pt, maps, v, one);
    if (w.c == 0) continue;
    Graded<T> u;
    for (int i = 0; i < n; ++i)
      u.push_back(i == v ? w : Matrix<T>(pt.dim[i], 0));
    SearchFrame<T> next = fr;
    push_step(next, u, one);
    QuotientStage<T> qs = quotient_by(pt, u, one);
    descend(next, qs);
    if (greedy_search(qs.pt, flavor, next, found)) return true;
  }
  return false;
}

// Exhaustive decision over a prime field: branch over every admissible
// nonzero step, not only maximal ones.  Independent of the greedy strategy;
// used as its oracle and as the below-cap fallback.
template <class T>
bool step_admissible(const std::vector<HalfMap<T>>& maps, const Graded<T>& u) {
  for (const auto& hm : maps) {
    Matrix<T> img = hm.mat * u[hm.from];
    if (hm.strict) {
      if (!img.is_zero()) return false;
    } else {
      if (!span_contains(u[hm.to], img)) return false;
    }
  }
  return true;
}

bool exhaustive_search(const DoubledPoint<Fp>& pt, NilFlavor flavor,
                       SearchFrame<Fp> fr, std::optional<GradedFlag<Fp>>& found);

}  // namespace detail

// Tri-state flag search: greedy first; on greedy failure an exhaustive
// subspace-enumeration decision when the field and dimension fit under the
// configured caps; otherwise Undecided.
template <class T>
FlagSearchResult<T> find_flag(const DoubledPoint<T>& pt, NilFlavor flavor,
                              const FlagSearchConfig& cfg = {}) {
  pt.validate();
  FlagSearchResult<T> res;
  detail::SearchFrame<T> fr;
  T one = detail::unit_of<T>(pt.p);
  for (int i = 0; i < pt.q.nv(); ++i) {
    fr.embed.push_back(Matrix<T>::identity(pt.dim[i], one));
    fr.cumulative.emplace_back(pt.dim[i], 0);
  }
  std::optional<GradedFlag<T>> found;
  if (detail::greedy_search(pt, flavor, fr, found)) {
    if (!verify_flag(pt, flavor, *found))
      throw internal_error("greedy flag witness failed verification");
    res.decision = Decision::Present;
    res.witness = std::move(found);
    return res;
  }
  if constexpr (std::is_same_v<T, Fp>) {
    if (pt.total_dim() <= cfg.exhaustive_dim_cap &&
        pt.p <= cfg.exhaustive_field_cap) {
      res.exhaustive_used = true;
      std::optional<GradedFlag<Fp>> ex_found;
      if (detail::exhaustive_search(pt, flavor, fr, ex_found)) {
        if (!verify_flag(pt, flavor, *ex_found))
          throw internal_error("exhaustive flag witness failed verification");
        res.decision = Decision::Present;
        res.witness = std::move(ex_found);
      } else {
        res.decision = Decision::Absent;
      }
      return res;
    }
  }
  res.decision = Decision::Undecided;
  return res;
}

// Membership in the flavor's variety: the moment map must vanish exactly and
// a witness flag must exist.  A nonzero moment map is a definitive no.
template <class T>
struct MembershipReport {
  Decision member = Decision::Undecided;
  bool mu_zero = false;
  FlagSearchResult<T> flag;
};

template <class T>
MembershipReport<T> lambda_member(const DoubledPoint<T>& pt, NilFlavor flavor,
                                  const FlagSearchConfig& cfg = {}) {
  MembershipReport<T> rep;
  rep.mu_zero = moment_map_vanishes(pt);
  if (!rep.mu_zero) {
    rep.member = Decision::Absent;
    return rep;
  }
  rep.flag = find_flag(pt, flavor, cfg);
  rep.member = rep.flag.decision;
  return rep;
}

// All graded flags of the given type stable under r (strict: each arrow maps
// F_k into F_{k-1}; plain: into F_k), over the prime field of r.  Returns
// the list of cumulative-step flags; stable_flags is the count.
std::vector<GradedFlag<Fp>> enumerate_stable_flags(const Rep<Fp>& r,
                                                   const FlagType& ft,
                                                   bool strict);
Int stable_flags(const Rep<Fp>& r, const FlagType& ft, bool strict);

}  // namespace nilvar
