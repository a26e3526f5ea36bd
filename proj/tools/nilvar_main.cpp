// Command-line front end: every verb is a thin wrapper over one library
// operation, with JSON in, JSON (or flat text) out, and deterministic
// ordering so reruns are byte-identical.
//
// Exit codes: 0 success, 2 validation error, 3 budget refusal, 4 a heuristic
// returned "undecided".  All errors are emitted as {"error": ...}.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nilvar/affine.hpp"
#include "nilvar/census.hpp"
#include "nilvar/errors.hpp"
#include "nilvar/flagdims.hpp"
#include "nilvar/flagsearch.hpp"
#include "nilvar/json_io.hpp"
#include "nilvar/multipartition.hpp"
#include "nilvar/quiver.hpp"

namespace {

using nilvar::Json;

// Inline JSON if the argument looks like a literal, otherwise a file path.
Json load_json(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || (arg[0] != '{' && arg[0] != '[')) {
    std::ifstream in(arg);
    if (!in) throw nilvar::validation_error("cannot open input file: " + arg);
    text.assign(std::istreambuf_iterator<char>(in),
                std::istreambuf_iterator<char>());
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw nilvar::validation_error(std::string("bad JSON input: ") + e.what());
  }
}

nilvar::NilFlavor parse_flavor(const std::string& s) {
  if (s == "nil") return nilvar::NilFlavor::Nil;
  if (s == "plain") return nilvar::NilFlavor::Plain;
  if (s == "nil1") return nilvar::NilFlavor::NilOne;
  if (s == "one") return nilvar::NilFlavor::One;
  throw nilvar::validation_error("flavor must be one of nil, plain, nil1, one");
}

const char* decision_str(nilvar::Decision d) {
  switch (d) {
    case nilvar::Decision::Present: return "present";
    case nilvar::Decision::Absent: return "absent";
    case nilvar::Decision::Undecided: return "undecided";
  }
  return "?";
}

Json dimvec_array(const nilvar::DimVec& d) {
  Json a = Json::array();
  for (const nilvar::Int& x : d) a.push_back(nilvar::int_json(x));
  return a;
}

Json rel_position_json(const nilvar::RelPosition& z) {
  Json rows = Json::array();
  for (const auto& row : z.z) {
    Json r = Json::array();
    for (const nilvar::DimVec& e : row) r.push_back(dimvec_array(e));
    rows.push_back(r);
  }
  return rows;
}

// Cyclic-quiver dimension vectors may be given as plain arrays; vertex-id
// objects also work since the canonical quiver has ids "0".."n-1".
nilvar::DimVec parse_dimvec_flex(const Json& j, const nilvar::Quiver& q) {
  if (j.is_array()) {
    if (int(j.size()) != q.nv())
      throw nilvar::validation_error("dimension array length must equal the vertex count");
    nilvar::DimVec d;
    for (const Json& e : j) {
      if (e.is_number_integer())
        d.push_back(nilvar::Int(e.get<long>()));
      else if (e.is_string())
        d.push_back(nilvar::Int(e.get<std::string>()));
      else
        throw nilvar::validation_error("dimension entries must be integers");
    }
    return d;
  }
  return nilvar::parse_dimvec(j, q);
}

// Flat YAML-ish rendering for --output text: scalars inline, containers
// indented one level per depth.
void render_text(const Json& j, std::ostream& os, int indent) {
  std::string pad(indent * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || v.is_array()) {
        os << pad << k << ":\n";
        render_text(v, os, indent + 1);
      } else {
        os << pad << k << ": " << v.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const Json& v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        render_text(v, os, indent + 1);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
    if (j.empty()) os << pad << "[]\n";
  } else {
    os << pad << j.dump() << "\n";
  }
}

struct Shared {
  std::string output = "json";
  long long budget = -1;  // census point budget; -1 keeps the default
  int dim_cap = 4;        // exhaustive flag-search caps
  long long field_cap = 3;
  int end_cap = 6;  // endomorphism-scan cap for the filtration check

  nilvar::CensusBudget census_budget() const {
    nilvar::CensusBudget b;
    if (budget >= 0) b.max_points = nilvar::Int((long)budget);
    return b;
  }
  nilvar::FlagSearchConfig search_config() const {
    return nilvar::FlagSearchConfig{dim_cap, (long)field_cap};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics and linear algebra for nilpotent "
               "varieties of quiver representations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value config file")
      ->envname("NILVAR_CONFIG");

  Shared shared;
  app.add_option("--output", shared.output, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget", shared.budget,
                 "maximum number of points a census may enumerate");
  app.add_option("--dim-cap", shared.dim_cap,
                 "total-dimension cap for exhaustive flag search");
  app.add_option("--field-cap", shared.field_cap,
                 "field-size cap for exhaustive flag search");
  app.add_option("--end-cap", shared.end_cap,
                 "endomorphism-dimension cap for summand decomposition");

  std::string quiver_arg, dim_arg, ft_arg, ft2_arg, mp_arg, point_arg;
  std::string flavor_arg = "nil", mu_arg = "regular";
  long long n_arg = 1, p_arg = 2;
  bool aperiodic = false, plain_mode = false, nil_mode = false,
       count_only = false;

  std::optional<Json> result;
  int rc = 0;

  auto nil_selected = [&]() {
    if (plain_mode && nil_mode)
      throw nilvar::validation_error("--nil and --plain are mutually exclusive");
    return !plain_mode;
  };

  // classify
  auto* c_classify = app.add_subcommand("classify", "representation type of a quiver");
  c_classify->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  c_classify->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    nilvar::QuiverClass cls = nilvar::classify(q);
    Json j;
    switch (cls.kind) {
      case nilvar::QuiverKind::Finite: j["kind"] = "Finite"; break;
      case nilvar::QuiverKind::Affine: j["kind"] = "Affine"; break;
      case nilvar::QuiverKind::JordanLike: j["kind"] = "JordanLike"; break;
      case nilvar::QuiverKind::Wild: j["kind"] = "Wild"; break;
    }
    if (!cls.label.empty()) j["label"] = cls.label;
    if (cls.kind == nilvar::QuiverKind::Affine) {
      j["delta"] = nilvar::to_json(q, cls.delta);
      j["tube_periods"] = cls.tube_periods;
    }
    if (cls.kind == nilvar::QuiverKind::JordanLike)
      j["cycle_length"] = cls.cycle_length;
    if (!cls.notes.empty()) j["notes"] = cls.notes;
    result = j;
  });

  // roots
  auto* c_roots = app.add_subcommand("roots", "positive real roots up to a bound");
  c_roots->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  c_roots->add_option("--bound", dim_arg, "entrywise bound (DimVector JSON)")->required();
  c_roots->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    nilvar::DimVec bound = nilvar::parse_dimvec(load_json(dim_arg), q);
    Json roots = Json::array();
    for (const nilvar::DimVec& r : nilvar::positive_roots(q, bound))
      roots.push_back(nilvar::to_json(q, r));
    Json j;
    j["count"] = roots.size();
    j["roots"] = roots;
    result = j;
  });

  // defect
  auto* c_defect = app.add_subcommand("defect", "defect of a dimension vector (affine only)");
  c_defect->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  c_defect->add_option("--dim", dim_arg, "DimVector JSON")->required();
  c_defect->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    nilvar::DimVec d = nilvar::parse_dimvec(load_json(dim_arg), q);
    Json j;
    j["defect"] = nilvar::int_json(nilvar::defect(q, d));
    result = j;
  });

  // coxeter
  auto* c_cox = app.add_subcommand("coxeter", "Coxeter transformation matrix (acyclic only)");
  c_cox->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  c_cox->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    Json j;
    j["matrix"] = nilvar::matrix_json(nilvar::coxeter_matrix(q));
    result = j;
  });

  // orbits
  auto* c_orbits = app.add_subcommand("orbits", "nilpotent orbits of a cyclic quiver");
  c_orbits->add_option("--n", n_arg, "cycle length")->required();
  c_orbits->add_option("--dim", dim_arg, "dimension vector (array or DimVector JSON)")->required();
  c_orbits->add_flag("--aperiodic", aperiodic, "keep only aperiodic orbits");
  c_orbits->callback([&] {
    nilvar::Quiver q = nilvar::make_cyclic_quiver(int(n_arg));
    nilvar::DimVec d = parse_dimvec_flex(load_json(dim_arg), q);
    Json orbits = Json::array();
    for (const nilvar::MultiPartition& m :
         nilvar::enumerate_orbits(int(n_arg), d, aperiodic))
      orbits.push_back(nilvar::to_json(m));
    Json j;
    j["count"] = orbits.size();
    j["orbits"] = orbits;
    result = j;
  });

  // strata
  auto* c_strata = app.add_subcommand("strata", "(N, mu) strata of a cyclic quiver");
  c_strata->add_option("--n", n_arg, "cycle length")->required();
  c_strata->add_option("--dim", dim_arg, "dimension vector (array or DimVector JSON)")->required();
  c_strata->add_option("--mu", mu_arg, "mu mode: regular, rss, or any");
  c_strata->add_flag("--aperiodic", aperiodic, "restrict N to aperiodic orbits");
  c_strata->callback([&] {
    nilvar::Quiver q = nilvar::make_cyclic_quiver(int(n_arg));
    nilvar::DimVec d = parse_dimvec_flex(load_json(dim_arg), q);
    nilvar::MuMode mode;
    if (mu_arg == "regular") mode = nilvar::MuMode::Regular;
    else if (mu_arg == "rss") mode = nilvar::MuMode::RegularSemisimple;
    else if (mu_arg == "any") mode = nilvar::MuMode::Any;
    else throw nilvar::validation_error("--mu must be regular, rss, or any");
    Json strata = Json::array();
    for (const auto& [m, mu] :
         nilvar::enumerate_cyclic_strata(int(n_arg), d, mode, aperiodic)) {
      Json s;
      s["N"] = nilvar::to_json(m);
      s["mu"] = mu.to_string();
      strata.push_back(s);
    }
    Json j;
    j["count"] = strata.size();
    j["strata"] = strata;
    result = j;
  });

  // components / labels
  auto add_comp_verb = [&](const char* name, const char* desc, bool labels) {
    auto* c = app.add_subcommand(name, desc);
    c->add_option("--quiver", quiver_arg, "quiver JSON")->required();
    c->add_option("--dim", dim_arg, "DimVector JSON")->required();
    c->add_option("--flavor", flavor_arg, "nil, plain, nil1, or one");
    c->callback([&, labels] {
      nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
      nilvar::DimVec d = parse_dimvec_flex(load_json(dim_arg), q);
      nilvar::NilFlavor flavor = parse_flavor(flavor_arg);
      Json j = Json::array();
      if (labels) {
        for (const nilvar::SheafLabel& l : nilvar::sheaf_labels(q, d, flavor)) {
          Json e;
          switch (l.kind) {
            case nilvar::SheafLabelKind::FiniteOrbit: e["kind"] = "FiniteOrbit"; break;
            case nilvar::SheafLabelKind::CyclicAperiodic: e["kind"] = "CyclicAperiodic"; break;
            case nilvar::SheafLabelKind::CyclicExtended: e["kind"] = "CyclicExtended"; break;
            case nilvar::SheafLabelKind::Affine: e["kind"] = "Affine"; break;
            case nilvar::SheafLabelKind::GLoop: e["kind"] = "GLoop"; break;
          }
          e["label"] = l.text;
          e["notes"] = l.notes;
          j.push_back(e);
        }
      } else {
        for (const nilvar::Component& c2 : nilvar::components(q, d, flavor)) {
          Json e;
          e["label"] = c2.label;
          e["stratum_dim"] = nilvar::int_json(c2.dim);
          e["notes"] = c2.notes;
          j.push_back(e);
        }
      }
      result = j;
    });
  };
  add_comp_verb("components", "irreducible components of the nilpotent variety", false);
  add_comp_verb("labels", "simple perverse-summand labels", true);

  // resolve
  auto* c_resolve = app.add_subcommand("resolve", "resolution flag-type of an aperiodic orbit");
  c_resolve->add_option("--multipartition", mp_arg, "MultiPartition JSON")->required();
  c_resolve->callback([&] {
    nilvar::MultiPartition m = nilvar::parse_multipartition(load_json(mp_arg));
    nilvar::ResolutionData res = nilvar::resolution_flag_type(m);
    Json j;
    j["flag_type"] = nilvar::flag_type_json(res.flag_type);
    Json levels = Json::array();
    for (const nilvar::DimVec& lv : res.level_dims) levels.push_back(dimvec_array(lv));
    j["level_dims"] = levels;
    result = j;
  });

  // theta
  auto* c_theta = app.add_subcommand("theta", "relative positions of flag pairs");
  c_theta->add_option("--flagtype", ft_arg, "flag type JSON")->required();
  c_theta->add_option("--quiver", quiver_arg, "quiver JSON (adds incidence dimensions)");
  c_theta->add_flag("--count", count_only, "emit the cardinality only");
  c_theta->callback([&] {
    std::optional<nilvar::Quiver> q;
    if (!quiver_arg.empty()) q = nilvar::parse_quiver(load_json(quiver_arg));
    Json jft = load_json(ft_arg);
    nilvar::FlagType ft;
    if (q) {
      ft = nilvar::parse_flag_type(jft, *q);
    } else {
      if (!jft.is_array() || jft.empty() || !jft[0].is_array())
        throw nilvar::validation_error(
            "flag type must be an array of step arrays (or pass --quiver)");
      nilvar::Quiver probe;  // only the vertex count matters here
      for (size_t i = 0; i < jft[0].size(); ++i)
        probe.vertices.push_back(std::to_string(i));
      ft = nilvar::parse_flag_type(jft, probe);
    }
    nilvar::ThetaRange range = nilvar::theta(ft);
    if (count_only) {
      result = nilvar::int_json(range.size());
      return;
    }
    Json positions = Json::array();
    for (const nilvar::RelPosition& z : range) {
      Json e;
      e["z"] = rel_position_json(z);
      if (q) {
        nilvar::IncidenceDims nil = nilvar::incidence_dims(*q, ft, z, true);
        nilvar::IncidenceDims pl = nilvar::incidence_dims(*q, ft, z, false);
        e["base_dim"] = nilvar::int_json(nil.base_dim);
        e["fiber_dim_nil"] = nilvar::int_json(nil.fiber_dim);
        e["fiber_dim_plain"] = nilvar::int_json(pl.fiber_dim);
        e["codim_nil"] = nilvar::int_json(nil.codim);
        e["codim_plain"] = nilvar::int_json(pl.codim);
      }
      positions.push_back(e);
    }
    Json j;
    j["count"] = nilvar::int_json(range.size());
    j["positions"] = positions;
    result = j;
  });

  // smallness
  auto* c_small = app.add_subcommand("smallness", "codimension scan over off-diagonal positions");
  c_small->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  c_small->add_option("--flagtype", ft_arg, "flag type JSON")->required();
  c_small->add_flag("--nil", nil_mode, "strict stability (default)");
  c_small->add_flag("--plain", plain_mode, "lax stability");
  c_small->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    nilvar::FlagType ft = nilvar::parse_flag_type(load_json(ft_arg), q);
    nilvar::SmallnessReport rep = nilvar::smallness_report(q, ft, nil_selected());
    Json j;
    j["is_small_criterion"] = rep.is_small_criterion;
    j["has_offdiag"] = rep.has_offdiag;
    if (rep.has_offdiag) {
      j["min_codim_offdiag"] = nilvar::int_json(rep.min_codim_offdiag);
      j["witness_z"] = rel_position_json(rep.witness_z);
    }
    j["notes"] = rep.notes;
    result = j;
  });

  // lambda-check
  auto* c_lambda = app.add_subcommand("lambda-check", "variety membership of a doubled point");
  c_lambda->add_option("--point", point_arg, "DoubledPoint JSON")->required();
  c_lambda->add_option("--flavor", flavor_arg, "nil, plain, nil1, or one");
  c_lambda->callback([&] {
    nilvar::AnyDoubled pt = nilvar::parse_doubled(load_json(point_arg));
    nilvar::NilFlavor flavor = parse_flavor(flavor_arg);
    Json j;
    std::visit(
        [&](const auto& p) {
          auto rep = nilvar::lambda_member(p, flavor, shared.search_config());
          j["member"] = decision_str(rep.member);
          j["moment_map_zero"] = rep.mu_zero;
          j["flag_decision"] = decision_str(rep.flag.decision);
          j["exhaustive_used"] = rep.flag.exhaustive_used;
          if (rep.flag.witness)
            j["flag"] = nilvar::graded_flag_json(*rep.flag.witness);
          if (rep.member == nilvar::Decision::Undecided) rc = 4;
        },
        pt);
    result = j;
  });

  // census
  auto* c_census = app.add_subcommand("census", "finite-field brute-force checks");
  c_census->require_subcommand(1);

  auto* cc_orbits = c_census->add_subcommand("orbits", "isomorphism-class census");
  cc_orbits->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  cc_orbits->add_option("--dim", dim_arg, "DimVector JSON")->required();
  cc_orbits->add_option("--p", p_arg, "prime field size");
  cc_orbits->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    nilvar::DimVec d = parse_dimvec_flex(load_json(dim_arg), q);
    nilvar::CensusReport rep =
        nilvar::orbit_census(q, d, (long)p_arg, shared.census_budget());
    Json orbits = Json::array();
    for (const nilvar::OrbitRecord& o : rep.orbits) {
      Json e;
      e["representative"] = nilvar::int_json(o.representative);
      e["size"] = nilvar::int_json(o.size);
      e["end_dim"] = nilvar::int_json(o.end_dim);
      orbits.push_back(e);
    }
    Json j;
    j["p"] = rep.p;
    j["total_points"] = nilvar::int_json(rep.total_points);
    j["orbit_count"] = orbits.size();
    j["orbits"] = orbits;
    result = j;
  });

  auto* cc_image = c_census->add_subcommand("pi-image", "image of the flag-bundle projection");
  cc_image->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  cc_image->add_option("--flagtype", ft_arg, "flag type JSON")->required();
  cc_image->add_option("--p", p_arg, "prime field size");
  cc_image->add_flag("--nil", nil_mode, "strict stability (default)");
  cc_image->add_flag("--plain", plain_mode, "lax stability");
  cc_image->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    nilvar::FlagType ft = nilvar::parse_flag_type(load_json(ft_arg), q);
    nilvar::ImageReport rep = nilvar::image_of_pi(q, ft, nil_selected(),
                                                  (long)p_arg, shared.census_budget());
    Json j;
    j["image_size"] = rep.image.size();
    Json hist = Json::object();
    for (const auto& [count, num] : rep.fiber_counts)
      hist[count.get_str()] = nilvar::int_json(num);
    j["fiber_counts"] = hist;
    if (rep.image.size() <= 4096) {
      Json img = Json::array();
      for (const nilvar::Int& i : rep.image) img.push_back(nilvar::int_json(i));
      j["image"] = img;
    } else {
      j["image_omitted"] = true;
    }
    result = j;
  });

  auto* cc_incl = c_census->add_subcommand("inclusion", "compare two projection images");
  cc_incl->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  cc_incl->add_option("--ft1", ft_arg, "first flag type JSON")->required();
  cc_incl->add_option("--ft2", ft2_arg, "second flag type JSON")->required();
  cc_incl->add_option("--p", p_arg, "prime field size");
  cc_incl->add_flag("--nil", nil_mode, "strict stability (default)");
  cc_incl->add_flag("--plain", plain_mode, "lax stability");
  cc_incl->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    nilvar::FlagType f1 = nilvar::parse_flag_type(load_json(ft_arg), q);
    nilvar::FlagType f2 = nilvar::parse_flag_type(load_json(ft2_arg), q);
    Json j;
    j["relation"] = nilvar::to_string(nilvar::inclusion_check(
        q, f1, f2, nil_selected(), (long)p_arg, shared.census_budget()));
    result = j;
  });

  auto* cc_filt = c_census->add_subcommand("filtration",
                                           "uniqueness of the canonical two-step filtration");
  cc_filt->add_option("--quiver", quiver_arg, "quiver JSON")->required();
  cc_filt->add_option("--dim", dim_arg, "DimVector JSON")->required();
  cc_filt->add_option("--p", p_arg, "prime field size");
  cc_filt->callback([&] {
    nilvar::Quiver q = nilvar::parse_quiver(load_json(quiver_arg));
    nilvar::DimVec d = parse_dimvec_flex(load_json(dim_arg), q);
    nilvar::FiltrationReport rep = nilvar::filtration_uniqueness(
        q, d, (long)p_arg, shared.end_cap, shared.census_budget());
    Json j;
    j["checked"] = nilvar::int_json(rep.checked);
    Json viol = Json::array();
    for (const nilvar::Int& v : rep.violations) viol.push_back(nilvar::int_json(v));
    j["violations"] = viol;
    Json flagged = Json::array();
    for (const nilvar::Int& v : rep.flagged_samples)
      flagged.push_back(nilvar::int_json(v));
    j["flagged_samples"] = flagged;
    result = j;
  });

  // duality-check
  auto* c_dual = app.add_subcommand("duality-check",
                                    "nilpotency on Q versus the opposite quiver");
  c_dual->add_option("--point", point_arg, "DoubledPoint JSON")->required();
  c_dual->callback([&] {
    nilvar::AnyDoubled pt = nilvar::parse_doubled(load_json(point_arg));
    Json j;
    std::visit(
        [&](const auto& p) {
          auto op = p.swapped_opposite();
          auto cfg = shared.search_config();
          auto nil_q = nilvar::find_flag(p, nilvar::NilFlavor::Nil, cfg);
          auto plain_op = nilvar::find_flag(op, nilvar::NilFlavor::Plain, cfg);
          auto nil1_q = nilvar::find_flag(p, nilvar::NilFlavor::NilOne, cfg);
          auto one_op = nilvar::find_flag(op, nilvar::NilFlavor::One, cfg);
          j["nil_on_q"] = decision_str(nil_q.decision);
          j["plain_on_opposite"] = decision_str(plain_op.decision);
          j["nil1_on_q"] = decision_str(nil1_q.decision);
          j["one_on_opposite"] = decision_str(one_op.decision);
          bool undecided = nil_q.decision == nilvar::Decision::Undecided ||
                           plain_op.decision == nilvar::Decision::Undecided ||
                           nil1_q.decision == nilvar::Decision::Undecided ||
                           one_op.decision == nilvar::Decision::Undecided;
          if (undecided) {
            rc = 4;
          } else {
            j["match"] = nil_q.decision == plain_op.decision;
            j["match_discrete"] = nil1_q.decision == one_op.decision;
          }
        },
        pt);
    result = j;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json err;
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const nilvar::budget_error& e) {
    Json err;
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 3;
  } catch (const nilvar::validation_error& e) {
    Json err;
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 1;
  }

  if (result) {
    if (shared.output == "text")
      render_text(*result, std::cout, 0);
    else
      std::cout << result->dump(2) << "\n";
  }
  return rc;
}
