#include "nilvar/quiver.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nilvar/errors.hpp"

namespace nilvar {

int Quiver::vertex_index(const std::string& id) const {
  for (int i = 0; i < nv(); ++i)
    if (vertices[i] == id) return i;
  throw validation_error("unknown vertex id: " + id);
}

void Quiver::validate() const {
  if (vertices.empty()) throw validation_error("quiver has no vertices");
  std::set<std::string> seen;
  for (const std::string& v : vertices)
    if (!seen.insert(v).second)
      throw validation_error("duplicate vertex id: " + v);
  for (const auto& [s, t] : arrows)
    if (s < 0 || s >= nv() || t < 0 || t >= nv())
      throw validation_error("arrow endpoint out of range");
}

int Quiver::arrows_between(int i, int j) const {
  int c = 0;
  for (const auto& [s, t] : arrows)
    if (s == i && t == j) ++c;
  return c;
}

bool Quiver::is_acyclic() const {
  // Depth-first search with colors; a back edge is a directed cycle.
  std::vector<int> color(nv(), 0);
  std::vector<std::vector<int>> out(nv());
  for (const auto& [s, t] : arrows) {
    if (s == t) return false;
    out[s].push_back(t);
  }
  for (int root = 0; root < nv(); ++root) {
    if (color[root]) continue;
    std::vector<std::pair<int, int>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < int(out[v].size())) {
        int w = out[v][next++];
        if (color[w] == 1) return false;
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

bool Quiver::is_connected() const {
  if (nv() == 0) return false;
  std::vector<bool> vis(nv(), false);
  std::vector<int> todo{0};
  vis[0] = true;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (const auto& [s, t] : arrows) {
      if (s == v && !vis[t]) { vis[t] = true; todo.push_back(t); }
      if (t == v && !vis[s]) { vis[s] = true; todo.push_back(s); }
    }
  }
  return std::all_of(vis.begin(), vis.end(), [](bool b) { return b; });
}

DimVec zero_vec(int n) { return DimVec(n, 0); }

bool is_nonneg(const DimVec& d) {
  return std::all_of(d.begin(), d.end(), [](const Int& x) { return x >= 0; });
}

Int total_dim(const DimVec& d) {
  Int s = 0;
  for (const Int& x : d) s += x;
  return s;
}

std::string to_string(const DimVec& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += d[i].get_str();
  }
  return s + ")";
}

Matrix<Int> euler_matrix(const Quiver& q) {
  Matrix<Int> a(q.nv(), q.nv());
  for (int i = 0; i < q.nv(); ++i) a.at(i, i) = 1;
  for (const auto& [s, t] : q.arrows) a.at(s, t) -= 1;
  return a;
}

Int euler_form(const Quiver& q, const DimVec& d, const DimVec& e) {
  if (int(d.size()) != q.nv() || int(e.size()) != q.nv())
    throw validation_error("dimension vector does not match quiver");
  Int v = 0;
  for (int i = 0; i < q.nv(); ++i) v += d[i] * e[i];
  for (const auto& [s, t] : q.arrows) v -= d[s] * e[t];
  return v;
}

Int tits_form(const Quiver& q, const DimVec& d) { return euler_form(q, d, d); }

Int symmetrized_form(const Quiver& q, const DimVec& d, const DimVec& e) {
  return euler_form(q, d, e) + euler_form(q, e, d);
}

namespace {

// Bareiss fraction-free determinant of an integer matrix.
Int det_bareiss(Matrix<Int> m) {
  assert(m.r == m.c);
  int n = m.r;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int sel = -1;
    for (int i = k; i < n; ++i)
      if (m.at(i, k) != 0) { sel = i; break; }
    if (sel < 0) return 0;
    if (sel != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(k, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev;
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign > 0 ? prev : -prev;
}

// Coefficients of det(x I - B), degree n, index k = coefficient of x^k.
// Exact, via evaluation at n+1 integer points and Lagrange interpolation.
std::vector<Int> char_poly(const Matrix<Int>& b) {
  int n = b.r;
  std::vector<Rat> ys(n + 1);
  for (int x = 0; x <= n; ++x) {
    Matrix<Int> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m.at(i, j) = -b.at(i, j);
        if (i == j) m.at(i, j) += x;
      }
    ys[x] = Rat(det_bareiss(m));
  }
  // Newton's divided differences, then expand.
  std::vector<Rat> coef = ys;
  for (int level = 1; level <= n; ++level)
    for (int i = n; i >= level; --i)
      coef[i] = (coef[i] - coef[i - 1]) / Rat(level);
  std::vector<Rat> poly(n + 1, Rat(0));
  poly[0] = coef[n];
  for (int k = n - 1; k >= 0; --k) {
    // poly <- poly * (x - k) + coef[k]
    for (int j = n; j >= 1; --j) poly[j] = poly[j - 1] - Rat(k) * poly[j];
    poly[0] = coef[k] - Rat(k) * poly[0];
  }
  std::vector<Int> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    assert(poly[k].get_den() == 1);
    out[k] = poly[k].get_num();
  }
  return out;
}

// Undirected neighbour multiset sizes (loops contribute 2 to the degree).
std::vector<int> underlying_degrees(const Quiver& q) {
  std::vector<int> deg(q.nv(), 0);
  for (const auto& [s, t] : q.arrows) {
    deg[s] += 1;
    deg[t] += 1;
  }
  return deg;
}

std::vector<std::set<int>> underlying_neighbours(const Quiver& q) {
  std::vector<std::set<int>> nb(q.nv());
  for (const auto& [s, t] : q.arrows) {
    if (s == t) continue;
    nb[s].insert(t);
    nb[t].insert(s);
  }
  return nb;
}

// Lengths (vertex counts) of the three paths hanging off a degree-3 vertex
// of a tree whose other vertices have degree <= 2.
std::vector<int> branch_lengths(const Quiver& q, int center) {
  auto nb = underlying_neighbours(q);
  std::vector<int> lens;
  for (int start : nb[center]) {
    int len = 0, prev = center, cur = start;
    while (true) {
      ++len;
      int next = -1;
      for (int w : nb[cur])
        if (w != prev) next = w;
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

// Walk a simple cycle (every vertex degree 2, nv >= 3) starting at vertex 0
// toward its smaller-indexed neighbour; returns the vertex order.
std::vector<int> cycle_walk(const Quiver& q) {
  auto nb = underlying_neighbours(q);
  std::vector<int> order{0};
  int prev = 0;
  int cur = *nb[0].begin();
  while (cur != 0) {
    order.push_back(cur);
    int next = -1;
    for (int w : nb[cur])
      if (w != prev) next = w;
    prev = cur;
    cur = next;
  }
  return order;
}

}  // namespace

QuiverClass classify(const Quiver& q) {
  q.validate();
  if (!q.is_connected())
    throw validation_error("classification requires a connected quiver");

  QuiverClass out;
  int n = q.nv();

  // Cyclically oriented cycle (including the one-loop quiver): the underlying
  // multigraph is a single cycle and the orientation admits a directed cycle.
  bool underlying_cycle = (q.na() == n);
  if (underlying_cycle) {
    auto deg = underlying_degrees(q);
    for (int d : deg) underlying_cycle = underlying_cycle && (d == 2);
  }
  if (underlying_cycle && !q.is_acyclic()) {
    out.kind = QuiverKind::JordanLike;
    out.cycle_length = n;
    out.label = "C" + std::to_string(n);
    out.notes = "cyclically oriented cycle; nilpotent theory of the Jordan kind";
    return out;
  }

  // Symmetrized form B = A + A^T; positivity read off the characteristic
  // polynomial: the elementary symmetric functions of the eigenvalues are
  // all >= 0 exactly when B is positive semidefinite.
  Matrix<Int> a = euler_matrix(q);
  Matrix<Int> b = a + a.transpose();
  std::vector<Int> cp = char_poly(b);
  bool psd = true, pd = true;
  for (int k = 1; k <= n; ++k) {
    // e_k = (-1)^k * coefficient of x^{n-k}.
    Int ek = cp[n - k];
    if (k % 2 == 1) ek = -ek;
    if (ek < 0) psd = false;
    if (ek <= 0) pd = false;
  }

  if (pd) {
    out.kind = QuiverKind::Finite;
    auto deg = underlying_degrees(q);
    int max_deg = *std::max_element(deg.begin(), deg.end());
    if (max_deg <= 2) {
      out.label = "A" + std::to_string(n);
    } else {
      int center = int(std::find(deg.begin(), deg.end(), 3) - deg.begin());
      auto bl = branch_lengths(q, center);
      if (bl[0] == 1 && bl[1] == 1)
        out.label = "D" + std::to_string(n);
      else
        out.label = "E" + std::to_string(n);
    }
    return out;
  }

  if (psd) {
    // Radical of B; affine means it is a line spanned by a positive vector.
    Matrix<Rat> br(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) br.at(i, j) = Rat(b.at(i, j));
    Matrix<Rat> rad = kernel_basis(br, Rat(1));
    if (rad.c != 1)
      throw internal_error("connected psd quiver with radical rank != 1");
    Int lcm_den = 1;
    for (int i = 0; i < n; ++i) {
      Int den = rad.at(i, 0).get_den();
      lcm_den = lcm_den / gcd(lcm_den, den) * den;
    }
    DimVec delta(n);
    Int g = 0;
    for (int i = 0; i < n; ++i) {
      Rat x = rad.at(i, 0) * Rat(lcm_den);
      delta[i] = x.get_num();
      g = gcd(g, delta[i]);
    }
    for (Int& x : delta) x /= g;
    if (delta[0] < 0)
      for (Int& x : delta) x = -x;
    for (const Int& x : delta)
      if (x <= 0) throw internal_error("affine radical vector not positive");
    out.kind = QuiverKind::Affine;
    out.delta = delta;

    auto deg = underlying_degrees(q);
    int max_deg = *std::max_element(deg.begin(), deg.end());
    if (n == 2) {
      out.label = "A1~";
      out.notes = "two parallel arrows; no non-homogeneous tubes";
    } else if (max_deg == 2) {
      out.label = "A" + std::to_string(n - 1) + "~";
      // Tube ranks are the numbers of arrows running with and against the
      // canonical cycle walk.
      std::vector<int> walk = cycle_walk(q);
      int cw = 0, ccw = 0;
      for (int k = 0; k < n; ++k) {
        int u = walk[k], w = walk[(k + 1) % n];
        cw += q.arrows_between(u, w);
        ccw += q.arrows_between(w, u);
      }
      out.tube_periods = {cw, ccw};
      out.notes = "clockwise=" + std::to_string(cw) +
                  " counterclockwise=" + std::to_string(ccw);
      if (cw == 1 || ccw == 1)
        out.notes += "; a period-1 entry marks a homogeneous (degenerate) tube";
    } else if (max_deg == 4) {
      out.label = "D4~";
      out.tube_periods = {2, 2, 2};
    } else {
      int deg3 = int(std::count(deg.begin(), deg.end(), 3));
      if (deg3 == 2) {
        out.label = "D" + std::to_string(n - 1) + "~";
        out.tube_periods = {2, 2, n - 3};
      } else {
        // One branch vertex: affine E series, ranks (2, 3, n-1-3).
        out.label = "E" + std::to_string(n - 1) + "~";
        out.tube_periods = {2, 3, n - 4};
      }
    }
    return out;
  }

  out.kind = QuiverKind::Wild;
  out.notes = "symmetrized form indefinite";
  return out;
}

Int defect(const Quiver& q, const DimVec& d) {
  QuiverClass cls = classify(q);
  if (cls.kind != QuiverKind::Affine)
    throw validation_error("defect is defined for affine quivers only");
  if (int(d.size()) != q.nv())
    throw validation_error("dimension vector does not match quiver");
  return euler_form(q, cls.delta, d);
}

std::vector<DimVec> positive_roots(const Quiver& q, const DimVec& bound) {
  q.validate();
  if (int(bound.size()) != q.nv())
    throw validation_error("bound vector does not match quiver");
  if (!is_nonneg(bound)) throw validation_error("root search bound must be >= 0");
  int n = q.nv();
  std::vector<DimVec> roots;
  DimVec d = zero_vec(n);
  while (true) {
    // Next vector in the box, lexicographic from the last coordinate.
    int k = n - 1;
    while (k >= 0 && d[k] == bound[k]) {
      d[k] = 0;
      --k;
    }
    if (k < 0) break;
    d[k] += 1;
    if (tits_form(q, d) == 1) roots.push_back(d);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Matrix<Int> coxeter_matrix(const Quiver& q) {
  q.validate();
  if (!q.is_acyclic())
    throw validation_error("Coxeter transformation requires an acyclic quiver");
  int n = q.nv();
  Matrix<Int> a = euler_matrix(q);
  Matrix<Rat> at(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) at.at(i, j) = Rat(a.at(j, i));
  auto at_inv = inverse(at, Rat(1));
  assert(at_inv.has_value());
  Matrix<Rat> ar(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ar.at(i, j) = Rat(a.at(i, j));
  Matrix<Rat> phi_r = *at_inv * ar;
  Matrix<Int> phi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat x = -phi_r.at(i, j);
      assert(x.get_den() == 1);
      phi.at(i, j) = x.get_num();
    }
  return phi;
}

DimVec coxeter_apply(const Matrix<Int>& phi, const DimVec& d) {
  if (int(d.size()) != phi.c)
    throw validation_error("dimension vector does not match Coxeter matrix");
  DimVec out(phi.r, 0);
  for (int i = 0; i < phi.r; ++i)
    for (int j = 0; j < phi.c; ++j) out[i] += phi.at(i, j) * d[j];
  return out;
}

Quiver opposite(const Quiver& q) {
  Quiver r = q;
  for (auto& [s, t] : r.arrows) std::swap(s, t);
  return r;
}

Quiver doubled(const Quiver& q) {
  Quiver r = q;
  for (const auto& [s, t] : q.arrows) r.arrows.emplace_back(t, s);
  return r;
}

}  // namespace nilvar
