#include "nilvar/flagdims.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "nilvar/errors.hpp"

namespace nilvar {

namespace {

void validate_flag_type(const FlagType& ft, int nv) {
  for (const DimVec& step : ft) {
    if (int(step.size()) != nv)
      throw validation_error("flag type step has wrong length");
    if (!is_nonneg(step) || total_dim(step) == 0)
      throw validation_error("flag type steps must be nonzero and nonnegative");
  }
}

}  // namespace

void RelPosition::validate(const FlagType& ft) const {
  if (int(ft.size()) != r)
    throw validation_error("relative position has wrong number of steps");
  if (int(z.size()) != r)
    throw validation_error("relative position array has wrong shape");
  for (const auto& row : z)
    if (int(row.size()) != r)
      throw validation_error("relative position array has wrong shape");
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      if (int(z[p][q].size()) != nv)
        throw validation_error("relative position entry has wrong length");
      if (!is_nonneg(z[p][q]))
        throw validation_error("relative position entries must be nonnegative");
    }
  for (int s = 0; s < r; ++s) {
    DimVec row_sum = zero_vec(nv), col_sum = zero_vec(nv);
    for (int t = 0; t < r; ++t)
      for (int i = 0; i < nv; ++i) {
        row_sum[i] += z[s][t][i];
        col_sum[i] += z[t][s][i];
      }
    if (row_sum != ft[s] || col_sum != ft[s])
      throw validation_error("relative position margins do not match the flag type");
  }
}

bool RelPosition::is_diagonal(const FlagType& ft) const {
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      if (p == q && z[p][q] != ft[p]) return false;
      if (p != q && total_dim(z[p][q]) != 0) return false;
    }
  return true;
}

RelPosition RelPosition::diagonal(const FlagType& ft) {
  RelPosition out;
  out.r = int(ft.size());
  out.nv = ft.empty() ? 0 : int(ft[0].size());
  out.z.assign(out.r, std::vector<DimVec>(out.r, zero_vec(out.nv)));
  for (int p = 0; p < out.r; ++p) out.z[p][p] = ft[p];
  return out;
}

std::vector<FlagType> enumerate_flag_types(const DimVec& d, bool discrete,
                                           std::optional<int> max_steps) {
  int nv = int(d.size());
  if (!is_nonneg(d)) throw validation_error("dimension vector must be nonnegative");
  std::vector<FlagType> out;
  FlagType cur;
  std::function<void(DimVec)> rec = [&](DimVec rem) {
    if (total_dim(rem) == 0) {
      out.push_back(cur);
      return;
    }
    if (max_steps && int(cur.size()) >= *max_steps) return;
    if (discrete) {
      for (int i = 0; i < nv; ++i)
        for (Int k = 1; k <= rem[i]; ++k) {
          DimVec step = zero_vec(nv);
          step[i] = k;
          DimVec next = rem;
          next[i] -= k;
          cur.push_back(step);
          rec(next);
          cur.pop_back();
        }
    } else {
      // Odometer over all nonzero vectors 0 <= step <= rem.
      DimVec step = zero_vec(nv);
      while (true) {
        int at = 0;
        while (at < nv && step[at] == rem[at]) step[at] = 0, ++at;
        if (at == nv) break;
        step[at] += 1;
        DimVec next = rem;
        for (int i = 0; i < nv; ++i) next[i] -= step[i];
        cur.push_back(step);
        rec(next);
        cur.pop_back();
      }
    }
  };
  rec(d);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// All r x r nonnegative integer tables with row margins = column margins =
// the given vector, flattened row-major.
std::vector<std::vector<int>> margin_tables(const std::vector<int>& margins) {
  int r = int(margins.size());
  std::vector<std::vector<int>> out;
  std::vector<int> table(r * r, 0);
  std::vector<int> col_left = margins;
  std::function<void(int, int, int)> rec = [&](int row, int col, int row_left) {
    if (row == r) {
      out.push_back(table);
      return;
    }
    if (col == r - 1) {
      if (row_left <= col_left[col]) {
        table[row * r + col] = row_left;
        col_left[col] -= row_left;
        rec(row + 1, 0, row + 1 < r ? margins[row + 1] : 0);
        col_left[col] += row_left;
        table[row * r + col] = 0;
      }
      return;
    }
    int cap = std::min(row_left, col_left[col]);
    for (int v = 0; v <= cap; ++v) {
      table[row * r + col] = v;
      col_left[col] -= v;
      rec(row, col + 1, row_left - v);
      col_left[col] += v;
    }
    table[row * r + col] = 0;
  };
  if (r == 0)
    out.push_back({});
  else
    rec(0, 0, margins[0]);
  return out;
}

}  // namespace

ThetaRange::ThetaRange(FlagType ft) : ft_(std::move(ft)) {
  r_ = int(ft_.size());
  nv_ = ft_.empty() ? 0 : int(ft_[0].size());
  validate_flag_type(ft_, nv_);
  tables_.resize(nv_);
  for (int i = 0; i < nv_; ++i) {
    std::vector<int> margins(r_);
    for (int p = 0; p < r_; ++p) margins[p] = int(ft_[p][i].get_si());
    tables_[i] = margin_tables(margins);
  }
}

Int ThetaRange::size() const {
  Int n = 1;
  for (const auto& lst : tables_) n *= Int(lst.size());
  return n;
}

ThetaRange::iterator::iterator(const ThetaRange* owner, bool at_end)
    : owner_(owner), idx_(owner->tables_.size(), 0), done_(at_end) {
  for (const auto& lst : owner_->tables_)
    if (lst.empty()) done_ = true;  // cannot happen for valid flag types
}

RelPosition ThetaRange::iterator::operator*() const {
  RelPosition out;
  out.r = owner_->r_;
  out.nv = owner_->nv_;
  out.z.assign(out.r, std::vector<DimVec>(out.r, zero_vec(out.nv)));
  for (int i = 0; i < out.nv; ++i) {
    const auto& t = owner_->tables_[i][idx_[i]];
    for (int p = 0; p < out.r; ++p)
      for (int q = 0; q < out.r; ++q) out.z[p][q][i] = t[p * out.r + q];
  }
  return out;
}

ThetaRange::iterator& ThetaRange::iterator::operator++() {
  size_t at = 0;
  while (at < idx_.size()) {
    if (++idx_[at] < owner_->tables_[at].size()) break;
    idx_[at] = 0;
    ++at;
  }
  if (at == idx_.size()) done_ = true;
  // A vertexless flag type has a single (empty) relative position.
  if (idx_.empty()) done_ = true;
  return *this;
}

Int tilde_dim(const Quiver& q, const FlagType& ft, bool nil) {
  q.validate();
  validate_flag_type(ft, q.nv());
  int r = int(ft.size());
  Int dim = 0;
  for (const auto& [i, j] : q.arrows)
    for (int p = 0; p < r; ++p)
      for (int t = 0; t <= p; ++t) {
        if (nil && t == p) continue;
        dim += ft[p][i] * ft[t][j];
      }
  for (int i = 0; i < q.nv(); ++i)
    for (int p = 0; p < r; ++p)
      for (int t = 0; t < p; ++t) dim += ft[p][i] * ft[t][i];
  return dim;
}

IncidenceDims incidence_dims(const Quiver& q, const FlagType& ft,
                             const RelPosition& z, bool nil) {
  q.validate();
  validate_flag_type(ft, q.nv());
  if (z.nv != q.nv())
    throw validation_error("relative position and quiver disagree on vertices");
  z.validate(ft);
  int r = z.r;
  int nv = q.nv();

  IncidenceDims out;
  // Flag-pair stratum: an orbit of the product of the vertex groups.
  for (int i = 0; i < nv; ++i)
    for (int p = 0; p < r; ++p)
      for (int t = 0; t < r; ++t) out.base_dim += ft[p][i] * ft[t][i];
  for (int i = 0; i < nv; ++i)
    for (int p = 0; p < r; ++p)
      for (int t = 0; t <= p; ++t)
        for (int qq = 0; qq < r; ++qq)
          for (int s = 0; s <= qq; ++s)
            out.base_dim -= z.z[p][qq][i] * z.z[t][s][i];

  // Fiber: representations stabilizing both flags; the nilpotent condition
  // makes both index ranges strict.
  for (const auto& [i, j] : q.arrows)
    for (int p = 0; p < r; ++p)
      for (int t = 0; t < r; ++t)
        for (int qq = 0; qq < r; ++qq)
          for (int s = 0; s < r; ++s) {
            bool ok = nil ? (t < p && s < qq) : (t <= p && s <= qq);
            if (ok) out.fiber_dim += z.z[p][qq][i] * z.z[t][s][j];
          }

  out.total_dim = out.base_dim + out.fiber_dim;
  out.codim = tilde_dim(q, ft, nil) - out.total_dim;

  // The codimension also has a closed form; the two routes must agree.
  Int closed = 0;
  for (const auto& [i, j] : q.arrows)
    for (int p = 0; p < r; ++p)
      for (int t = 0; t < r; ++t)
        for (int qq = 0; qq < r; ++qq)
          for (int s = 0; s < r; ++s) {
            bool ok = nil ? (t < p && qq <= s) : (t <= p && qq < s);
            if (ok) closed += z.z[p][qq][i] * z.z[t][s][j];
          }
  for (int i = 0; i < nv; ++i)
    for (int p = 0; p < r; ++p)
      for (int t = 0; t < r; ++t)
        for (int qq = 0; qq < r; ++qq)
          for (int s = 0; s < r; ++s) {
            bool ok = nil ? (t < p && qq <= s) : (t <= p && qq < s);
            if (ok) closed -= z.z[p][qq][i] * z.z[t][s][i];
          }
  if (closed != out.codim)
    throw internal_error("codimension closed form disagrees with the difference of dimensions");
  return out;
}

bool identity_check(const std::vector<std::vector<Int>>& z) {
  int r = int(z.size());
  for (const auto& row : z)
    if (int(row.size()) != r)
      throw validation_error("identity check needs a square array");
  for (int s = 0; s < r; ++s) {
    Int rows = 0, cols = 0;
    for (int t = 0; t < r; ++t) {
      rows += z[s][t];
      cols += z[t][s];
    }
    if (rows != cols)
      throw validation_error("identity check needs equal row and column sums");
  }
  Int a_lhs = 0, a_rhs = 0, b_lhs = 0, b_rhs = 0;
  for (int p = 0; p < r; ++p)
    for (int qq = 0; qq < r; ++qq)
      for (int t = 0; t < r; ++t)
        for (int s = 0; s < r; ++s) {
          Int prod = z[p][qq] * z[t][s];
          if (t < p && qq <= s) a_lhs += prod;
          if (t <= p && qq < s) a_rhs += prod;
          if (t < p && qq == s) b_lhs += prod;
          if (t == p && qq < s) b_rhs += prod;
        }
  return a_lhs == a_rhs && b_lhs == b_rhs;
}

SmallnessReport smallness_report(const Quiver& q, const FlagType& ft, bool nil) {
  q.validate();
  validate_flag_type(ft, q.nv());
  SmallnessReport rep;
  bool negative = q.nv() > 0;
  for (int i = 0; i < q.nv(); ++i) negative = negative && q.loops_at(i) >= 2;

  int g = q.nv() == 1 ? q.loops_at(0) : 0;
  bool divisible = true;
  for (const RelPosition& z : theta(ft)) {
    if (z.is_diagonal(ft)) continue;
    IncidenceDims dims = incidence_dims(q, ft, z, nil);
    if (!rep.has_offdiag || dims.codim < rep.min_codim_offdiag) {
      rep.has_offdiag = true;
      rep.min_codim_offdiag = dims.codim;
      rep.witness_z = z;
    }
    if (dims.codim <= 0) rep.is_small_criterion = false;
    if (g >= 2 && dims.codim % (g - 1) != 0) divisible = false;
  }
  if (negative && !rep.is_small_criterion)
    throw internal_error("positive codimension must hold off the diagonal when every vertex has two loops");

  if (!rep.has_offdiag)
    rep.notes.push_back("no off-diagonal relative positions; the criterion holds vacuously");
  if (g >= 2) {
    std::ostringstream os;
    os << "one vertex with " << g << " loops: off-diagonal codimensions "
       << (divisible ? "are" : "ARE NOT") << " all divisible by " << (g - 1);
    rep.notes.push_back(os.str());
    if (!divisible)
      throw internal_error("one-vertex codimensions must be divisible by the loop count minus one");
    Int td = tilde_dim(q, ft, true);
    std::ostringstream os2;
    os2 << "incidence dimension (strict mode) " << td.get_str() << " is "
        << (td % (g + 1) == 0 ? "" : "NOT ") << "a multiple of " << (g + 1);
    rep.notes.push_back(os2.str());
    if (td % (g + 1) != 0)
      throw internal_error("one-vertex strict incidence dimension must be a multiple of the loop count plus one");
  } else if (g == 1) {
    rep.notes.push_back("one vertex with a single loop: the divisibility pattern is trivial and not checked");
  }
  rep.notes.push_back(
      "dimensions are formal parameter counts; over a small finite field a "
      "stratum of positive formal dimension can still be empty");
  return rep;
}

}  // namespace nilvar
