#include "nilvar/affine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "nilvar/census.hpp"
#include "nilvar/errors.hpp"

namespace nilvar {

namespace {

bool lex_less(const DimVec& a, const DimVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

DimVec add(const DimVec& a, const DimVec& b) {
  DimVec out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

bool fits(const DimVec& a, const DimVec& rem) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > rem[i]) return false;
  return true;
}

DimVec sub(const DimVec& rem, const DimVec& a) {
  DimVec out = rem;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= a[i];
  return out;
}

}  // namespace

std::vector<TubeData> regular_simples(const Quiver& q) {
  QuiverClass cls = classify(q);
  if (cls.kind != QuiverKind::Affine)
    throw validation_error("regular simples are defined for affine quivers");
  const DimVec& delta = cls.delta;

  std::set<DimVec> pool;
  for (const DimVec& e : positive_roots(q, delta))
    if (defect(q, e) == 0) pool.insert(e);

  Matrix<Int> phi = coxeter_matrix(q);
  std::vector<TubeData> tubes;
  size_t total_roots = pool.size();
  while (!pool.empty()) {
    DimVec start = *pool.begin();  // lexicographically smallest remaining
    TubeData tube;
    DimVec cur = start;
    DimVec sum = zero_vec(q.nv());
    do {
      if (!pool.count(cur))
        throw internal_error("Coxeter orbit left the defect-zero root set");
      pool.erase(cur);
      tube.simple_regular_dims.push_back(cur);
      sum = add(sum, cur);
      cur = coxeter_apply(phi, cur);
      if (tube.simple_regular_dims.size() > total_roots)
        throw internal_error("Coxeter orbit does not close up");
    } while (cur != start);
    tube.period = int(tube.simple_regular_dims.size());
    if (sum == delta) {
      tubes.push_back(std::move(tube));
      continue;
    }
    // Orbits of longer tube segments: l consecutive simple regulars of a
    // period-p tube (2 <= l < p) are also defect-zero real roots below the
    // radical generator, and their Coxeter orbit sums to l copies of it.
    bool segment_orbit = false;
    for (int l = 2; l < tube.period; ++l) {
      DimVec scaled = delta;
      for (Int& x : scaled) x *= l;
      if (sum == scaled) {
        segment_orbit = true;
        break;
      }
    }
    if (!segment_orbit)
      throw internal_error("tube orbit does not sum to the radical generator");
  }

  std::multiset<int> got, want;
  for (const TubeData& t : tubes) got.insert(t.period);
  for (int p : cls.tube_periods)
    if (p >= 2) want.insert(p);
  if (got != want)
    throw internal_error("Coxeter orbit sizes disagree with the tube periods");

  std::sort(tubes.begin(), tubes.end(), [](const TubeData& a, const TubeData& b) {
    if (a.period != b.period) return a.period > b.period;
    return lex_less(a.simple_regular_dims[0], b.simple_regular_dims[0]);
  });
  for (int p : cls.tube_periods)
    if (p == 1) tubes.push_back(TubeData{0, 1, {delta}});
  for (size_t i = 0; i < tubes.size(); ++i) tubes[i].index = int(i);
  return tubes;
}

DimVec tube_segment_dim(const TubeData& tube, int s, int l) {
  if (tube.simple_regular_dims.empty())
    throw validation_error("tube has no simple regular dimensions");
  int p = tube.period;
  if (s < 0 || s >= p || l < 0) throw validation_error("bad tube segment");
  DimVec out = zero_vec(int(tube.simple_regular_dims[0].size()));
  for (int k = 0; k < l; ++k)
    out = add(out, tube.simple_regular_dims[(s + k) % p]);
  return out;
}

DimVec tube_content_dim(const TubeData& tube, const MultiPartition& m) {
  if (m.n != tube.period)
    throw validation_error("multipartition cycle length differs from the tube period");
  DimVec out = zero_vec(int(tube.simple_regular_dims[0].size()));
  for (int i = 0; i < m.n; ++i)
    for (int l : m.parts[i]) out = add(out, tube_segment_dim(tube, i, l));
  return out;
}

std::string StratumType::to_string() const {
  std::ostringstream os;
  os << "P=[";
  for (size_t i = 0; i < preproj.size(); ++i)
    os << (i ? "," : "") << nilvar::to_string(preproj[i]);
  os << "] I=[";
  for (size_t i = 0; i < preinj.size(); ++i)
    os << (i ? "," : "") << nilvar::to_string(preinj[i]);
  os << "] N=[";
  for (size_t t = 0; t < tube_content.size(); ++t)
    os << (t ? "," : "") << tube_content[t].to_string();
  os << "] mu=" << mu.to_string();
  return os.str();
}

bool StratumType::operator<(const StratumType& o) const {
  if (preproj != o.preproj)
    return std::lexicographical_compare(preproj.begin(), preproj.end(),
                                        o.preproj.begin(), o.preproj.end(),
                                        lex_less);
  if (preinj != o.preinj)
    return std::lexicographical_compare(preinj.begin(), preinj.end(),
                                        o.preinj.begin(), o.preinj.end(),
                                        lex_less);
  if (tube_content != o.tube_content) return tube_content < o.tube_content;
  return mu.to_string() < o.mu.to_string();
}

DimVec stratum_dim(const Quiver& q, const std::vector<TubeData>& tubes,
                   const StratumType& t) {
  QuiverClass cls = classify(q);
  DimVec out = zero_vec(q.nv());
  for (const DimVec& r : t.preproj) out = add(out, r);
  for (const DimVec& r : t.preinj) out = add(out, r);
  for (size_t k = 0; k < t.tube_content.size(); ++k)
    out = add(out, tube_content_dim(tubes[k], t.tube_content[k]));
  Int w = t.mu.weight();
  for (int i = 0; i < q.nv(); ++i) out[i] += w * cls.delta[i];
  return out;
}

std::vector<StratumType> enumerate_stratum_types(const Quiver& q,
                                                 const DimVec& d, MuMode mode,
                                                 bool aperiodic_n) {
  QuiverClass cls = classify(q);
  if (cls.kind != QuiverKind::Affine)
    throw validation_error("stratum types are defined for affine quivers");
  if (int(d.size()) != q.nv())
    throw validation_error("dimension vector does not fit the quiver");
  if (!is_nonneg(d)) return {};
  const DimVec& delta = cls.delta;
  std::vector<TubeData> tubes = regular_simples(q);
  int big_tubes = 0;
  while (big_tubes < int(tubes.size()) && tubes[big_tubes].period >= 2)
    ++big_tubes;

  std::vector<DimVec> neg_roots, pos_roots;
  for (const DimVec& r : positive_roots(q, d)) {
    Int def = defect(q, r);
    if (def < 0) neg_roots.push_back(r);
    if (def > 0) pos_roots.push_back(r);
  }

  std::vector<StratumType> out;
  StratumType cur;
  cur.tube_content.assign(big_tubes, MultiPartition{});

  // Innermost stage: the leftover must be a multiple of delta, carried by mu.
  auto finish = [&](const DimVec& rem) {
    Int w = rem[0] / delta[0];
    DimVec probe = zero_vec(q.nv());
    for (int i = 0; i < q.nv(); ++i) probe[i] = w * delta[i];
    if (probe != rem) return;
    for (const RegularMu& mu : enumerate_regular_mus(int(w.get_si()), mode)) {
      StratumType t = cur;
      t.mu = mu;
      if (stratum_dim(q, tubes, t) != d)
        throw internal_error("stratum dimension bookkeeping failed");
      out.push_back(std::move(t));
    }
  };

  // Per-tube content: dimension vectors c over the tube's residues with
  // sum c_i * srd_i inside the remainder, then every orbit of that size.
  std::function<void(int, const DimVec&)> rec_tube = [&](int t, const DimVec& rem) {
    if (t == big_tubes) {
      finish(rem);
      return;
    }
    const TubeData& tube = tubes[t];
    int p = tube.period;
    DimVec c = zero_vec(p);
    std::function<void(int, const DimVec&)> pick = [&](int i, const DimVec& left) {
      if (i == p) {
        for (const MultiPartition& m : enumerate_orbits(p, c, aperiodic_n)) {
          cur.tube_content[t] = m;
          rec_tube(t + 1, left);
        }
        cur.tube_content[t] = MultiPartition{};
        return;
      }
      DimVec left2 = left;
      c[i] = 0;
      while (true) {
        pick(i + 1, left2);
        if (!fits(tube.simple_regular_dims[i], left2)) break;
        left2 = sub(left2, tube.simple_regular_dims[i]);
        c[i] += 1;
      }
      c[i] = 0;
    };
    pick(0, rem);
  };

  std::function<void(size_t, const DimVec&)> rec_inj = [&](size_t at, const DimVec& rem) {
    if (at == pos_roots.size()) {
      rec_tube(0, rem);
      return;
    }
    DimVec left = rem;
    size_t base = cur.preinj.size();
    while (true) {
      rec_inj(at + 1, left);
      if (!fits(pos_roots[at], left)) break;
      left = sub(left, pos_roots[at]);
      cur.preinj.push_back(pos_roots[at]);
    }
    cur.preinj.resize(base);
  };

  std::function<void(size_t, const DimVec&)> rec_proj = [&](size_t at, const DimVec& rem) {
    if (at == neg_roots.size()) {
      rec_inj(0, rem);
      return;
    }
    DimVec left = rem;
    size_t base = cur.preproj.size();
    while (true) {
      rec_proj(at + 1, left);
      if (!fits(neg_roots[at], left)) break;
      left = sub(left, neg_roots[at]);
      cur.preproj.push_back(neg_roots[at]);
    }
    cur.preproj.resize(base);
  };

  rec_proj(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Int rep_space_dim(const Quiver& q, const DimVec& d) {
  Int s = 0;
  for (auto [i, j] : q.arrows) s += d[i] * d[j];
  return s;
}

// The cyclic modules expect vertex i to feed vertex i+1 mod n; reject other
// labelings of an oriented cycle rather than silently permuting.
bool canonical_cycle(const Quiver& q) {
  int n = q.nv();
  std::multiset<std::pair<int, int>> got(q.arrows.begin(), q.arrows.end()), want;
  for (int i = 0; i < n; ++i) want.insert({i, (i + 1) % n});
  return got == want;
}

std::string partition_str(const std::vector<int>& lam) {
  std::string s = "(";
  for (size_t i = 0; i < lam.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(lam[i]);
  }
  return s + ")";
}

// Multisets of positive roots with the prescribed sum, lexicographic pool
// order; these index the orbits (and the components) in finite type.
std::vector<std::vector<DimVec>> root_multisets(const Quiver& q, const DimVec& d) {
  std::vector<DimVec> roots = positive_roots(q, d);
  std::vector<std::vector<DimVec>> out;
  std::vector<DimVec> cur;
  std::function<void(size_t, const DimVec&)> rec = [&](size_t at, const DimVec& rem) {
    bool zero = true;
    for (const Int& x : rem) zero = zero && x == 0;
    if (zero) {
      out.push_back(cur);
      return;
    }
    if (at == roots.size()) return;
    DimVec left = rem;
    size_t base = cur.size();
    while (true) {
      rec(at + 1, left);
      if (!fits(roots[at], left)) break;
      left = sub(left, roots[at]);
      cur.push_back(roots[at]);
    }
    cur.resize(base);
  };
  rec(0, d);
  std::sort(out.begin(), out.end(),
            [](const std::vector<DimVec>& a, const std::vector<DimVec>& b) {
              return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                  b.end(), lex_less);
            });
  return out;
}

std::string root_multiset_str(const std::vector<DimVec>& ms) {
  std::string s = "{";
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i) s += ",";
    s += to_string(ms[i]);
  }
  return s + "}";
}

std::vector<std::vector<int>> compositions_of(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = 1; k <= left; ++k) {
      cur.push_back(k);
      rec(left - k);
      cur.pop_back();
    }
  };
  rec(m);
  return out;
}

// Discrete flag-types on a one-vertex quiver, deduplicated by the image of
// the flag-bundle projection when the census can decide it.  Beyond census
// scale the list stays one entry per composition, marked as pre-dedup.
std::vector<Component> gloop_components(const Quiver& q, const DimVec& d) {
  long m = to_long(d[0]);
  Int dim = rep_space_dim(q, d);
  std::vector<std::vector<int>> comps = compositions_of(int(m));
  std::vector<Component> out;
  if (m == 0) {
    out.push_back(Component{partition_str({}), dim, ""});
    return out;
  }
  if (m > 3) {
    for (const auto& c : comps)
      out.push_back(Component{partition_str(c), dim,
                              "candidate (pre-dedup): image equality is only "
                              "decided at census scale (total dimension <= 3)"});
    return out;
  }
  // Group compositions by the exact image of the projection over F_2.
  std::vector<std::vector<Int>> images;
  std::vector<std::vector<size_t>> groups;
  for (size_t k = 0; k < comps.size(); ++k) {
    FlagType ft;
    for (int step : comps[k]) ft.push_back(DimVec{Int(step)});
    std::vector<Int> img = image_of_pi(q, ft, true, 2, {}).image;
    bool placed = false;
    for (size_t g = 0; g < groups.size(); ++g)
      if (images[g] == img) {
        groups[g].push_back(k);
        placed = true;
        break;
      }
    if (!placed) {
      images.push_back(std::move(img));
      groups.push_back({k});
    }
  }
  for (const auto& g : groups) {
    Component comp;
    comp.label = partition_str(comps[g[0]]);
    comp.dim = dim;
    if (g.size() > 1) {
      std::string merged;
      for (size_t i = 1; i < g.size(); ++i) {
        if (i > 1) merged += ", ";
        merged += partition_str(comps[g[i]]);
      }
      comp.notes = "same census image as " + merged;
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_loops_only_single_vertex(const Quiver& q) {
  if (q.nv() != 1) return false;
  for (auto [i, j] : q.arrows)
    if (i != 0 || j != 0) return false;
  return q.na() >= 1;
}

[[noreturn]] void unsupported(const std::string& what) {
  throw validation_error("unsupported combination: " + what);
}

}  // namespace

std::vector<Component> components(const Quiver& q, const DimVec& d,
                                  NilFlavor flavor) {
  q.validate();
  if (int(d.size()) != q.nv())
    throw validation_error("dimension vector does not fit the quiver");
  if (!is_nonneg(d)) return {};
  Int dim = rep_space_dim(q, d);
  QuiverClass cls = classify(q);
  std::vector<Component> out;

  switch (cls.kind) {
    case QuiverKind::Finite: {
      // All four flavors agree on an acyclic quiver; components are orbit
      // closures, one per decomposition into indecomposables.
      for (const auto& ms : root_multisets(q, d))
        out.push_back(Component{root_multiset_str(ms), dim, ""});
      return out;
    }
    case QuiverKind::Affine: {
      for (const StratumType& t :
           enumerate_stratum_types(q, d, MuMode::Regular, false))
        out.push_back(Component{t.to_string(), dim, ""});
      return out;
    }
    case QuiverKind::JordanLike: {
      if (!canonical_cycle(q))
        unsupported("oriented cycle not in canonical labeling "
                    "(relabel so arrow i goes i -> i+1 mod n)");
      int n = cls.cycle_length;
      if (n == 1 && (flavor == NilFlavor::Nil || flavor == NilFlavor::NilOne))
        return gloop_components(q, d);
      switch (flavor) {
        case NilFlavor::Nil:
        case NilFlavor::NilOne:
          for (const MultiPartition& m : enumerate_orbits(n, d, true))
            out.push_back(Component{m.to_string(), dim, ""});
          return out;
        case NilFlavor::Plain:
        case NilFlavor::One: {
          if (n >= 2 && flavor == NilFlavor::One)
            unsupported("flavor One on an oriented cycle");
          for (const auto& [m, mu] :
               enumerate_cyclic_strata(n, d, MuMode::Regular, true))
            out.push_back(Component{
                "N=" + m.to_string() + " mu=" + mu.to_string(), dim, ""});
          return out;
        }
      }
      unsupported("flavor on an oriented cycle");
    }
    case QuiverKind::Wild: {
      if (is_loops_only_single_vertex(q) &&
          (flavor == NilFlavor::Nil || flavor == NilFlavor::NilOne))
        return gloop_components(q, d);
      unsupported("wild quiver (components are only enumerated for finite, "
                  "affine, oriented-cycle, and one-vertex loop quivers)");
    }
  }
  unsupported("unrecognized quiver class");
}

std::vector<SheafLabel> sheaf_labels(const Quiver& q, const DimVec& d,
                                     NilFlavor flavor) {
  q.validate();
  if (int(d.size()) != q.nv())
    throw validation_error("dimension vector does not fit the quiver");
  if (!is_nonneg(d)) return {};
  QuiverClass cls = classify(q);
  std::vector<SheafLabel> out;

  switch (cls.kind) {
    case QuiverKind::Finite: {
      for (const auto& ms : root_multisets(q, d))
        out.push_back(SheafLabel{SheafLabelKind::FiniteOrbit,
                                 root_multiset_str(ms), ""});
      return out;
    }
    case QuiverKind::Affine: {
      std::vector<TubeData> tubes = regular_simples(q);
      bool has_big_tube = !tubes.empty() && tubes[0].period >= 2;
      std::string note =
          has_big_tube
              ? "periodic tube content carries no label; the label count can "
                "fall below the component count on this quiver"
              : "";
      for (const StratumType& t :
           enumerate_stratum_types(q, d, MuMode::RegularSemisimple, true)) {
        int w = int(t.mu.weight().get_si());
        for (const auto& lam : partitions_of(w))
          out.push_back(SheafLabel{SheafLabelKind::Affine,
                                   t.to_string() + " lambda=" + partition_str(lam),
                                   note});
      }
      return out;
    }
    case QuiverKind::JordanLike: {
      if (!canonical_cycle(q))
        unsupported("oriented cycle not in canonical labeling "
                    "(relabel so arrow i goes i -> i+1 mod n)");
      int n = cls.cycle_length;
      if (n == 1 && (flavor == NilFlavor::Nil || flavor == NilFlavor::NilOne)) {
        for (const Component& c : gloop_components(q, d))
          out.push_back(SheafLabel{SheafLabelKind::GLoop, c.label, c.notes});
        return out;
      }
      switch (flavor) {
        case NilFlavor::Nil:
        case NilFlavor::NilOne:
          for (const MultiPartition& m : enumerate_orbits(n, d, true))
            out.push_back(SheafLabel{SheafLabelKind::CyclicAperiodic,
                                     m.to_string(), ""});
          return out;
        case NilFlavor::Plain:
        case NilFlavor::One: {
          if (n >= 2 && flavor == NilFlavor::One)
            unsupported("flavor One on an oriented cycle");
          for (const auto& [m, mu] : enumerate_cyclic_strata(
                   n, d, MuMode::RegularSemisimple, true)) {
            int w = int(mu.weight().get_si());
            for (const auto& lam : partitions_of(w))
              out.push_back(SheafLabel{SheafLabelKind::CyclicExtended,
                                       "N=" + m.to_string() +
                                           " lambda=" + partition_str(lam),
                                       ""});
          }
          return out;
        }
      }
      unsupported("flavor on an oriented cycle");
    }
    case QuiverKind::Wild: {
      if (is_loops_only_single_vertex(q) &&
          (flavor == NilFlavor::Nil || flavor == NilFlavor::NilOne)) {
        for (const Component& c : gloop_components(q, d))
          out.push_back(SheafLabel{SheafLabelKind::GLoop, c.label, c.notes});
        return out;
      }
      unsupported("wild quiver (labels are only enumerated for finite, "
                  "affine, oriented-cycle, and one-vertex loop quivers)");
    }
  }
  unsupported("unrecognized quiver class");
}

}  // namespace nilvar
