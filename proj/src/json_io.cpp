#include "nilvar/json_io.hpp"

#include <string>

#include "nilvar/errors.hpp"

namespace nilvar {

namespace {

[[noreturn]] void bad(const std::string& what) { throw validation_error(what); }

long expect_long(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + " must be an integer");
  return j.get<long>();
}

Int expect_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      bad(where + " is not a valid integer string");
    }
  }
  bad(where + " must be an integer or a decimal string");
}

Rat expect_rat(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      Rat r(j.get<std::string>());
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      bad(where + " is not a valid rational string");
    }
  }
  bad(where + " must be an integer or an \"a/b\" string");
}

template <class T, class F>
Matrix<T> parse_matrix(const Json& j, int rows, int cols, F entry,
                       const std::string& where) {
  if (!j.is_array() || int(j.size()) != rows)
    bad(where + " must be an array of " + std::to_string(rows) + " rows");
  Matrix<T> m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || int(row.size()) != cols)
      bad(where + " row " + std::to_string(r) + " must have " +
          std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = entry(row[c], where + "[" + std::to_string(r) + "][" +
                                     std::to_string(c) + "]");
  }
  return m;
}

struct FieldSpec {
  bool rational = false;
  long p = 0;
};

FieldSpec parse_field(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) bad("field must have a kind");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "Rationals") return {true, 0};
  if (kind == "Fp") {
    if (!j.contains("p")) bad("field Fp needs p");
    long p = expect_long(j["p"], "field p");
    if (!is_prime(p)) bad("field size must be prime");
    return {false, p};
  }
  bad("field kind must be \"Fp\" or \"Rationals\"");
}

template <class T, class F>
std::vector<Matrix<T>> parse_mats(const Json& j, const Quiver& q,
                                  const std::vector<int>& dim, F entry,
                                  bool transposed, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object keyed by arrow index");
  std::vector<Matrix<T>> mats;
  for (int k = 0; k < q.na(); ++k) {
    auto [s, t] = q.arrows[k];
    int rows = transposed ? dim[s] : dim[t];
    int cols = transposed ? dim[t] : dim[s];
    std::string key = std::to_string(k);
    if (j.contains(key))
      mats.push_back(parse_matrix<T>(j[key], rows, cols, entry,
                                     where + "[\"" + key + "\"]"));
    else
      mats.push_back(Matrix<T>(rows, cols));
  }
  for (const auto& [key, val] : j.items()) {
    (void)val;
    char* end = nullptr;
    long k = std::strtol(key.c_str(), &end, 10);
    if (*end != '\0' || k < 0 || k >= q.na())
      bad(where + " key \"" + key + "\" is not an arrow index");
  }
  return mats;
}

std::vector<int> small_dims(const DimVec& d) {
  std::vector<int> out;
  for (const Int& x : d) {
    if (x < 0 || x > 1000000) bad("dimension entry out of range");
    out.push_back(int(x.get_si()));
  }
  return out;
}

// Fp matrices parsed with a fixed modulus carried through the entry closure.
Rep<Fp> parse_rep_fp(const Json& j, const Quiver& q, const DimVec& d, long p) {
  Rep<Fp> r;
  r.q = q;
  r.dim = small_dims(d);
  r.p = p;
  auto entry = [p](const Json& e, const std::string& w) {
    Int v = expect_int(e, w);
    Int m = v % p;
    if (m < 0) m += p;
    return Fp(to_long(m), p);
  };
  r.mats = parse_mats<Fp>(j.contains("mats") ? j["mats"] : Json::object(), q,
                          r.dim, entry, false, "mats");
  r.validate();
  return r;
}

Rep<Rat> parse_rep_rat(const Json& j, const Quiver& q, const DimVec& d) {
  Rep<Rat> r;
  r.q = q;
  r.dim = small_dims(d);
  auto entry = [](const Json& e, const std::string& w) { return expect_rat(e, w); };
  r.mats = parse_mats<Rat>(j.contains("mats") ? j["mats"] : Json::object(), q,
                           r.dim, entry, false, "mats");
  r.validate();
  return r;
}

}  // namespace

Quiver parse_quiver(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
    bad("quiver needs \"vertices\" and \"arrows\"");
  Quiver q;
  for (const Json& v : j["vertices"]) {
    if (!v.is_string()) bad("vertex ids must be strings");
    q.vertices.push_back(v.get<std::string>());
  }
  for (const Json& a : j["arrows"]) {
    if (!a.is_array() || a.size() != 2) bad("each arrow must be an id pair");
    q.arrows.push_back({q.vertex_index(a[0].get<std::string>()),
                        q.vertex_index(a[1].get<std::string>())});
  }
  q.validate();
  return q;
}

DimVec parse_dimvec(const Json& j, const Quiver& q) {
  if (!j.is_object()) bad("dimension vector must be an object keyed by vertex id");
  DimVec d = zero_vec(q.nv());
  for (const auto& [key, val] : j.items())
    d[q.vertex_index(key)] = expect_int(val, "dim[\"" + key + "\"]");
  return d;
}

FlagType parse_flag_type(const Json& j, const Quiver& q) {
  if (!j.is_array()) bad("flag type must be an array of steps");
  FlagType ft;
  for (const Json& step : j) {
    if (step.is_array()) {
      if (int(step.size()) != q.nv())
        bad("flag-type step length must equal the vertex count");
      DimVec s;
      for (const Json& e : step) s.push_back(expect_int(e, "flag-type entry"));
      ft.push_back(std::move(s));
    } else if (step.is_object()) {
      ft.push_back(parse_dimvec(step, q));
    } else {
      bad("flag-type step must be an array or a DimVector object");
    }
  }
  return ft;
}

MultiPartition parse_multipartition(const Json& j) {
  if (!j.is_object() || !j.contains("n")) bad("multipartition needs \"n\"");
  MultiPartition m;
  m.n = int(expect_long(j["n"], "multipartition n"));
  if (m.n < 1) bad("multipartition n must be >= 1");
  m.parts.assign(m.n, {});
  if (j.contains("parts")) {
    if (!j["parts"].is_object()) bad("\"parts\" must be an object keyed by residue");
    for (const auto& [key, val] : j["parts"].items()) {
      char* end = nullptr;
      long res = std::strtol(key.c_str(), &end, 10);
      if (*end != '\0' || res < 0 || res >= m.n)
        bad("residue \"" + key + "\" out of range");
      if (!val.is_array()) bad("parts[\"" + key + "\"] must be an array");
      for (const Json& e : val) {
        long l = expect_long(e, "part length");
        if (l < 1) bad("part lengths must be >= 1");
        m.parts[res].push_back(int(l));
      }
    }
  }
  m.validate();
  return m;
}

AnyRep parse_rep(const Json& j) {
  if (!j.is_object() || !j.contains("quiver") || !j.contains("dim"))
    bad("rep needs \"quiver\" and \"dim\"");
  Quiver q = parse_quiver(j["quiver"]);
  DimVec d = parse_dimvec(j["dim"], q);
  FieldSpec f = j.contains("field") ? parse_field(j["field"]) : FieldSpec{true, 0};
  if (f.rational) return parse_rep_rat(j, q, d);
  return parse_rep_fp(j, q, d, f.p);
}

AnyDoubled parse_doubled(const Json& j) {
  if (!j.is_object() || !j.contains("quiver") || !j.contains("dim"))
    bad("doubled point needs \"quiver\" and \"dim\"");
  Quiver q = parse_quiver(j["quiver"]);
  DimVec d = parse_dimvec(j["dim"], q);
  FieldSpec f = j.contains("field") ? parse_field(j["field"]) : FieldSpec{true, 0};
  Json x = j.contains("x") ? j["x"] : Json::object();
  Json xs = j.contains("xstar") ? j["xstar"] : Json::object();
  if (f.rational) {
    DoubledPoint<Rat> pt;
    pt.q = q;
    pt.dim = small_dims(d);
    auto entry = [](const Json& e, const std::string& w) { return expect_rat(e, w); };
    pt.x = parse_mats<Rat>(x, q, pt.dim, entry, false, "x");
    pt.xstar = parse_mats<Rat>(xs, q, pt.dim, entry, true, "xstar");
    pt.validate();
    return pt;
  }
  DoubledPoint<Fp> pt;
  pt.q = q;
  pt.dim = small_dims(d);
  pt.p = f.p;
  long p = f.p;
  auto entry = [p](const Json& e, const std::string& w) {
    Int v = expect_int(e, w);
    Int m = v % p;
    if (m < 0) m += p;
    return Fp(to_long(m), p);
  };
  pt.x = parse_mats<Fp>(x, q, pt.dim, entry, false, "x");
  pt.xstar = parse_mats<Fp>(xs, q, pt.dim, entry, true, "xstar");
  pt.validate();
  return pt;
}

Json int_json(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const Quiver& q) {
  Json j;
  j["vertices"] = q.vertices;
  Json arrows = Json::array();
  for (auto [s, t] : q.arrows)
    arrows.push_back(Json::array({q.vertices[s], q.vertices[t]}));
  j["arrows"] = arrows;
  return j;
}

Json to_json(const Quiver& q, const DimVec& d) {
  Json j = Json::object();
  for (int i = 0; i < q.nv(); ++i) j[q.vertices[i]] = int_json(d[i]);
  return j;
}

Json flag_type_json(const FlagType& ft) {
  Json j = Json::array();
  for (const DimVec& step : ft) {
    Json s = Json::array();
    for (const Int& x : step) s.push_back(int_json(x));
    j.push_back(s);
  }
  return j;
}

Json to_json(const MultiPartition& m) {
  Json j;
  j["n"] = m.n;
  Json parts = Json::object();
  for (int i = 0; i < m.n; ++i) parts[std::to_string(i)] = m.parts[i];
  j["parts"] = parts;
  return j;
}

Json matrix_json(const Matrix<Fp>& m) {
  Json j = Json::array();
  for (int r = 0; r < m.r; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.c; ++c) row.push_back(int_json(m.at(r, c).v));
    j.push_back(row);
  }
  return j;
}

Json matrix_json(const Matrix<Rat>& m) {
  Json j = Json::array();
  for (int r = 0; r < m.r; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.c; ++c) {
      const Rat& x = m.at(r, c);
      if (x.get_den() == 1)
        row.push_back(int_json(x.get_num()));
      else
        row.push_back(x.get_str());
    }
    j.push_back(row);
  }
  return j;
}

Json matrix_json(const Matrix<Int>& m) {
  Json j = Json::array();
  for (int r = 0; r < m.r; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.c; ++c) row.push_back(int_json(m.at(r, c)));
    j.push_back(row);
  }
  return j;
}

namespace {

template <class T>
Json rep_json(const Rep<T>& r, const char* field_kind, long p) {
  Json j;
  j["quiver"] = to_json(r.q);
  for (int i = 0; i < r.q.nv(); ++i) j["dim"][r.q.vertices[i]] = r.dim[i];
  j["field"] = p ? Json{{"kind", field_kind}, {"p", p}} : Json{{"kind", field_kind}};
  Json mats = Json::object();
  for (int k = 0; k < r.q.na(); ++k)
    mats[std::to_string(k)] = matrix_json(r.mats[k]);
  j["mats"] = mats;
  return j;
}

template <class T>
Json doubled_json(const DoubledPoint<T>& pt, const char* field_kind, long p) {
  Json j;
  j["quiver"] = to_json(pt.q);
  for (int i = 0; i < pt.q.nv(); ++i) j["dim"][pt.q.vertices[i]] = pt.dim[i];
  j["field"] = p ? Json{{"kind", field_kind}, {"p", p}} : Json{{"kind", field_kind}};
  Json x = Json::object(), xs = Json::object();
  for (int k = 0; k < pt.q.na(); ++k) {
    x[std::to_string(k)] = matrix_json(pt.x[k]);
    xs[std::to_string(k)] = matrix_json(pt.xstar[k]);
  }
  j["x"] = x;
  j["xstar"] = xs;
  return j;
}

template <class T>
Json flag_json(const GradedFlag<T>& f) {
  Json j = Json::array();
  for (const Graded<T>& step : f.steps) {
    Json s = Json::array();
    for (const Matrix<T>& m : step) s.push_back(matrix_json(m));
    j.push_back(s);
  }
  return j;
}

}  // namespace

Json to_json(const Rep<Fp>& r) { return rep_json(r, "Fp", r.p); }
Json to_json(const Rep<Rat>& r) { return rep_json(r, "Rationals", 0); }
Json to_json(const DoubledPoint<Fp>& p) { return doubled_json(p, "Fp", p.p); }
Json to_json(const DoubledPoint<Rat>& p) { return doubled_json(p, "Rationals", 0); }
Json graded_flag_json(const GradedFlag<Fp>& f) { return flag_json(f); }
Json graded_flag_json(const GradedFlag<Rat>& f) { return flag_json(f); }

}  // namespace nilvar
