#include "nilvar/multipartition.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace nilvar {

Quiver make_cyclic_quiver(int n) {
  if (n < 1) throw validation_error("cycle length must be >= 1");
  Quiver q;
  for (int i = 0; i < n; ++i) q.vertices.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) q.arrows.emplace_back(i, (i + 1) % n);
  return q;
}

void require_cyclic(const Quiver& q) {
  Quiver c = make_cyclic_quiver(std::max(1, q.nv()));
  if (q.vertices != c.vertices || q.arrows != c.arrows)
    throw validation_error(
        "operation requires the canonical cyclic quiver (vertices 0..n-1, "
        "arrows i -> i+1 mod n)");
}

void MultiPartition::validate() const {
  if (n < 1) throw validation_error("multipartition needs n >= 1");
  if (int(parts.size()) != n)
    throw validation_error("multipartition has wrong number of residues");
  for (const auto& lam : parts) {
    for (size_t k = 0; k < lam.size(); ++k) {
      if (lam[k] <= 0) throw validation_error("partition parts must be positive");
      if (k > 0 && lam[k] > lam[k - 1])
        throw validation_error("partition parts must be weakly decreasing");
    }
  }
}

bool MultiPartition::operator<(const MultiPartition& o) const {
  if (n != o.n) return n < o.n;
  return parts < o.parts;
}

std::string MultiPartition::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (parts[i].empty()) continue;
    if (!first) os << ", ";
    first = false;
    os << i << ":(";
    for (size_t k = 0; k < parts[i].size(); ++k)
      os << (k ? "," : "") << parts[i][k];
    os << ")";
  }
  os << "}";
  return os.str();
}

DimVec dim_of(const MultiPartition& m) {
  m.validate();
  DimVec d = zero_vec(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int l : m.parts[i])
      for (int k = 0; k < l; ++k) d[(i + k) % m.n] += 1;
  return d;
}

int first_periodic_length(const MultiPartition& m) {
  int max_part = 0;
  for (const auto& lam : m.parts)
    if (!lam.empty()) max_part = std::max(max_part, lam[0]);
  for (int l = 1; l <= max_part; ++l) {
    bool everywhere = true;
    for (const auto& lam : m.parts)
      everywhere =
          everywhere && std::find(lam.begin(), lam.end(), l) != lam.end();
    if (everywhere) return l;
  }
  return 0;
}

bool is_aperiodic(const MultiPartition& m) {
  m.validate();
  return first_periodic_length(m) == 0;
}

PairEncoding pair_encode(const MultiPartition& m) {
  m.validate();
  PairEncoding out;
  out.aperiodic = m;
  int max_part = 0;
  for (const auto& lam : m.parts)
    if (!lam.empty()) max_part = std::max(max_part, lam[0]);
  for (int l = max_part; l >= 1; --l) {
    int common = -1;
    for (const auto& lam : out.aperiodic.parts) {
      int c = int(std::count(lam.begin(), lam.end(), l));
      common = (common < 0) ? c : std::min(common, c);
    }
    for (int c = 0; c < common; ++c) out.lambda.push_back(l);
    if (common > 0)
      for (auto& lam : out.aperiodic.parts)
        for (int c = 0; c < common; ++c)
          lam.erase(std::find(lam.begin(), lam.end(), l));
  }
  assert(is_aperiodic(out.aperiodic));
  return out;
}

MultiPartition pair_decode(const MultiPartition& aperiodic,
                           const std::vector<int>& lambda) {
  aperiodic.validate();
  if (!is_aperiodic(aperiodic))
    throw validation_error("pair decoding requires an aperiodic base");
  MultiPartition m = aperiodic;
  for (int l : lambda) {
    if (l <= 0) throw validation_error("partition parts must be positive");
    for (auto& lam : m.parts) lam.push_back(l);
  }
  for (auto& lam : m.parts) std::sort(lam.rbegin(), lam.rend());
  return m;
}

std::vector<MultiPartition> enumerate_orbits(int n, const DimVec& d,
                                             bool aperiodic_only) {
  if (n < 1) throw validation_error("cycle length must be >= 1");
  if (int(d.size()) != n)
    throw validation_error("dimension vector length must equal n");
  std::vector<MultiPartition> out;
  if (!is_nonneg(d)) return out;
  int total = int(total_dim(d).get_si());

  // Segments in canonical order (residue, then length); multiplicity choice
  // per segment with the remaining dimension as the pruning budget.
  struct Seg {
    int res, len;
    std::vector<int> dim;  // machine copy of the segment dimensions
  };
  std::vector<Seg> segs;
  for (int i = 0; i < n; ++i)
    for (int l = 1; l <= total; ++l) {
      Seg s{i, l, std::vector<int>(n, 0)};
      for (int k = 0; k < l; ++k) s.dim[(i + k) % n] += 1;
      segs.push_back(s);
    }
  std::vector<int> rem(n);
  for (int i = 0; i < n; ++i) rem[i] = int(d[i].get_si());
  MultiPartition cur = MultiPartition::empty(n);

  std::function<void(size_t)> rec = [&](size_t at) {
    int left = 0;
    for (int x : rem) left += x;
    if (left == 0) {
      MultiPartition m = cur;
      for (auto& lam : m.parts) std::sort(lam.rbegin(), lam.rend());
      if (!aperiodic_only || is_aperiodic(m)) out.push_back(std::move(m));
      return;
    }
    if (at == segs.size()) return;
    const Seg& s = segs[at];
    int max_mult = total;
    for (int i = 0; i < n; ++i)
      if (s.dim[i] > 0) max_mult = std::min(max_mult, rem[i] / s.dim[i]);
    for (int c = 0; c <= max_mult; ++c) {
      if (c > 0) {
        for (int i = 0; i < n; ++i) rem[i] -= s.dim[i];
        cur.parts[s.res].push_back(s.len);
      }
      rec(at + 1);
    }
    for (int c = 0; c < max_mult; ++c) {
      for (int i = 0; i < n; ++i) rem[i] += s.dim[i];
      cur.parts[s.res].pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

Int RegularMu::weight() const {
  Int w = 0;
  for (const auto& [lam, mult] : mu) {
    Int sz = 0;
    for (int x : lam) sz += x;
    w += sz * mult;
  }
  return w;
}

bool RegularMu::is_regular() const {
  for (const auto& [lam, mult] : mu)
    if (mult > 0 && lam.size() != 1) return false;
  return true;
}

bool RegularMu::is_regular_semisimple() const {
  for (const auto& [lam, mult] : mu)
    if (mult > 0 && lam != std::vector<int>{1}) return false;
  return true;
}

std::string RegularMu::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [lam, mult] : mu) {
    if (mult == 0) continue;
    if (!first) os << ", ";
    first = false;
    os << "(";
    for (size_t k = 0; k < lam.size(); ++k) os << (k ? "," : "") << lam[k];
    os << "):" << mult.get_str();
  }
  os << "}";
  return os.str();
}

std::vector<std::vector<int>> partitions_of(int w) {
  std::vector<std::vector<int>> out;
  if (w < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int l = std::min(left, max_part); l >= 1; --l) {
      cur.push_back(l);
      rec(left - l, l);
      cur.pop_back();
    }
  };
  rec(w, w);
  return out;
}

std::vector<RegularMu> enumerate_regular_mus(int w, MuMode mode) {
  if (w < 0) throw validation_error("weight must be >= 0");
  std::vector<RegularMu> out;
  switch (mode) {
    case MuMode::RegularSemisimple: {
      RegularMu mu;
      if (w > 0) mu.mu[{1}] = w;
      out.push_back(mu);
      break;
    }
    case MuMode::Regular: {
      // Support on single-part partitions (l): one mu per partition of w.
      for (const auto& lam : partitions_of(w)) {
        RegularMu mu;
        for (int l : lam) mu.mu[{l}] += 1;
        out.push_back(mu);
      }
      break;
    }
    case MuMode::Any: {
      // Multisets of partitions with total weight w.
      std::vector<std::vector<int>> pool;
      for (int k = 1; k <= w; ++k)
        for (const auto& lam : partitions_of(k)) pool.push_back(lam);
      RegularMu cur;
      std::function<void(size_t, int)> rec = [&](size_t at, int left) {
        if (left == 0) {
          out.push_back(cur);
          return;
        }
        if (at == pool.size()) return;
        int sz = 0;
        for (int x : pool[at]) sz += x;
        for (int c = 0; c * sz <= left; ++c) {
          if (c > 0) cur.mu[pool[at]] += 1;
          rec(at + 1, left - c * sz);
        }
        if (cur.mu.count(pool[at])) cur.mu.erase(pool[at]);
      };
      rec(0, w);
      break;
    }
  }
  return out;
}

std::vector<std::pair<MultiPartition, RegularMu>> enumerate_cyclic_strata(
    int n, const DimVec& d, MuMode mode, bool aperiodic_n) {
  if (n < 1) throw validation_error("cycle length must be >= 1");
  if (int(d.size()) != n)
    throw validation_error("dimension vector length must equal n");
  std::vector<std::pair<MultiPartition, RegularMu>> out;
  if (!is_nonneg(d)) return out;
  Int wmax = d[0];
  for (const Int& x : d) wmax = std::min(wmax, x);
  for (Int w = 0; w <= wmax; ++w) {
    DimVec rem = d;
    for (Int& x : rem) x -= w;
    auto ns = enumerate_orbits(n, rem, aperiodic_n);
    for (const RegularMu& mu : enumerate_regular_mus(int(w.get_si()), mode))
      for (const MultiPartition& m : ns) out.emplace_back(m, mu);
  }
  return out;
}

ResolutionData resolution_flag_type(const MultiPartition& m) {
  m.validate();
  if (!is_aperiodic(m)) {
    int l = first_periodic_length(m);
    throw validation_error(
        "resolution requires an aperiodic multipartition: every residue has "
        "a part of length " +
        std::to_string(l));
  }
  ResolutionData out;
  int n = m.n;
  DimVec d = dim_of(m);
  if (total_dim(d) == 0) return out;

  // Level dimensions via the rank profile of N_m: the graded dimension of
  // im(x^s) at vertex v is r[v-s][s].
  Rep<Rat> rep = build_nilpotent<Rat>(m);
  auto table = rank_profile(rep);
  int top = rep.total_dim();
  auto im_dim = [&](int s, int v) -> int {
    if (s > top + 1) return 0;
    return table[((v - s) % n + n) % n][s];
  };
  int big_n = 0;
  for (int s = 1; s <= top; ++s) {
    int tot = 0;
    for (int i = 0; i < n; ++i) tot += table[i][s];
    if (tot > 0) big_n = s;
  }
  for (int j = 0; j <= big_n; ++j) {
    DimVec dj = zero_vec(n);
    for (int v = 0; v < n; ++v)
      dj[v] = im_dim(big_n - j, v) - im_dim(big_n + 1 - j, v);
    out.level_dims.push_back(dj);
  }

  // Cross-check each level increment against the combinatorial description:
  // (d'_j - rotated d'_{j-1})_i counts the parts of size N-j+1 in the
  // partition at residue i - (N-j).
  for (int j = 0; j <= big_n; ++j) {
    for (int i = 0; i < n; ++i) {
      Int expect = out.level_dims[j][i];
      if (j > 0) expect -= out.level_dims[j - 1][(i + 1) % n];
      int res = ((i - (big_n - j)) % n + n) % n;
      int want = int(std::count(m.parts[res].begin(), m.parts[res].end(),
                                big_n - j + 1));
      if (expect != want)
        throw internal_error("level increments disagree with the part counts");
    }
  }

  // Single-vertex steps by socle peeling.  A flag step of size b at vertex
  // v corresponds to a semisimple layer S_v^b at the bottom of N_m, i.e. to
  // removing the socle box from b segments whose socle sits at residue v.
  // The word is sound when each removal is inverted by the generic
  // extension of the remainder by S_v^b: the b new boxes attach below the
  // longest segments socled at v-1, so the shortened segments must stay the
  // longest ones there, and a segment that vanishes entirely (a singleton
  // at v) is recreated only when the remainder has no segment socled at
  // v-1 to absorb the box instead.  A word of sound moves makes N_m the
  // generic module filtered by these layers: the flag over a point of the
  // orbit is then unique and the incidence image is exactly the orbit
  // closure.  Moves are searched depth first, at each stage trying vertices
  // in ascending order and step sizes largest first, backtracking past
  // states with no sound continuation.
  struct Seg {
    int top;
    int len;
  };
  std::vector<Seg> segs;
  for (int res = 0; res < n; ++res)
    for (int len : m.parts[res]) segs.push_back({res, len});
  auto seg_key = [](std::vector<Seg> s) {
    std::sort(s.begin(), s.end(), [](const Seg& a, const Seg& b) {
      return std::tie(a.top, a.len) < std::tie(b.top, b.len);
    });
    std::string key;
    for (const Seg& x : s)
      key += std::to_string(x.top) + ':' + std::to_string(x.len) + ';';
    return key;
  };
  std::vector<std::pair<int, int>> word;
  std::set<std::string> dead;
  std::function<bool(const std::vector<Seg>&)> peel =
      [&](const std::vector<Seg>& cur) -> bool {
    if (cur.empty()) return true;
    std::string key = seg_key(cur);
    if (dead.count(key)) return false;
    for (int v = 0; v < n; ++v) {
      std::vector<int> at_v;
      int prev_max = 0;
      for (int i = 0; i < int(cur.size()); ++i) {
        int soc = (cur[i].top + cur[i].len - 1) % n;
        if (soc == v)
          at_v.push_back(i);
        else if (soc == (v + n - 1) % n)
          prev_max = std::max(prev_max, cur[i].len);
      }
      std::sort(at_v.begin(), at_v.end(),
                [&](int a, int b) { return cur[a].len > cur[b].len; });
      for (int take = int(at_v.size()); take >= 1; --take) {
        bool vanish = cur[at_v[take - 1]].len == 1;
        if (vanish ? prev_max > 0 : prev_max > cur[at_v[take - 1]].len - 1)
          continue;
        std::vector<Seg> next;
        for (int i = 0; i < int(cur.size()); ++i) {
          Seg s = cur[i];
          if (std::find(at_v.begin(), at_v.begin() + take, i) !=
              at_v.begin() + take)
            --s.len;
          if (s.len > 0) next.push_back(s);
        }
        word.emplace_back(v, take);
        if (peel(next)) return true;
        word.pop_back();
      }
    }
    dead.insert(key);
    return false;
  };
  if (!peel(segs))
    throw internal_error("aperiodic multipartition admits no peeling word");
  for (const auto& [res, mult] : word) {
    DimVec step = zero_vec(n);
    step[res] = mult;
    out.flag_type.push_back(step);
  }
  return out;
}

}  // namespace nilvar
