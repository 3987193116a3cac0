#pragma once

// Problem files, task execution and reports for the pbwforge command line.
//
// A problem file is a JSON object (schema in schema/problem.schema.json):
//
//   {
//     "schema_version": 1,
//     "seed": 7,
//     "algebra": {"family": "yang-mills", "s": 2, "metric": "euclidean"},
//     "current": {"parameters": {"b": ["1", "0", "0"]}},
//     "tasks": [{"task": "check"}, {"task": "oracle", "n_max": 5, "cutoff": 6}]
//   }
//
// Rationals are JSON integers or strings "p" / "p/q". Unknown keys are
// rejected everywhere. Reports use sorted keys and contain no timing or
// host data, so a rerun with the same input yields the same bytes.

#include "classifier.hpp"
#include "lie.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace pbwforge::cli {

using json = nlohmann::json;

inline constexpr const char* engine_version = "1.0.0";
inline constexpr int schema_version = 1;

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_invalid = 2, exit_resource = 3, exit_internal = 4 };

enum class Family { yang_mills, super_yang_mills, antisymmetrizer, custom };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::yang_mills: return "yang-mills";
    case Family::super_yang_mills: return "super-yang-mills";
    case Family::antisymmetrizer: return "antisymmetrizer";
    case Family::custom: return "custom";
  }
  return "";
}

struct TaskSpec {
  std::string kind;  // identities | check | oracle | hilbert | classify
  std::size_t n_max = 5;
  std::size_t cutoff = 6;
  std::size_t samples = 5;
  std::optional<std::uint64_t> seed;
};

struct Problem {
  Family family = Family::custom;
  std::size_t s = 0;
  std::size_t degree = 0;
  std::optional<Metric> metric;
  std::string metric_name;  // "euclidean", "minkowski" or "explicit"
  AlgebraPresentation algebra;
  DeformationMap current;
  std::string current_kind = "zero";  // zero | parameters | raw | phi
  std::optional<ym::CurrentParameters> ym_parameters;
  std::optional<std::uint64_t> seed;
  std::vector<TaskSpec> tasks;
};

struct Outcome {
  int exit_code = exit_pass;
  json report;
  std::string tsv;
  std::string summary;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed,
                       const std::set<std::string>& required = {}) {
  if (!obj.is_object()) throw input_error(where + ": expected an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) throw input_error(where + ": unknown field '" + item.key() + "'");
  for (const auto& key : required)
    if (!obj.contains(key)) throw input_error(where + ": missing field '" + key + "'");
}

inline Scalar scalar(const json& j, const std::string& where) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Scalar(mpz_class(std::to_string(j.get<std::uint64_t>())));
    return Scalar(mpz_class(std::to_string(j.get<std::int64_t>())));
  }
  throw input_error(where + ": expected an integer or a \"p/q\" string");
}

inline std::size_t count(const json& j, const std::string& where, std::size_t lo, std::size_t hi) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw input_error(where + ": expected a nonnegative integer");
  const auto v = j.get<std::uint64_t>();
  if (v < lo || v > hi) throw input_error(where + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<std::size_t>(v);
}

inline std::uint64_t seed_value(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw input_error(where + ": seed must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline Vector dense(const json& j, std::size_t len, const std::string& where) {
  if (!j.is_array()) throw input_error(where + ": expected an array");
  if (j.size() != len) throw input_error(where + ": expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  Vector out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(scalar(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Letter letter(const json& j, std::size_t d, const std::string& where) {
  return static_cast<Letter>(count(j, where, 0, d - 1));
}

/// A rank-`rank` tensor over d indices, either dense (d^rank entries, first
/// index slowest) or as a list of {"index": [...], "value": q} entries. With
/// sign = ±1 every entry is spread over all index permutations
/// (anti)symmetrically; sign = 0 sets exactly the given slot. Entries add up.
inline Vector tensor(const json& j, std::size_t d, std::size_t rank, int sign, const std::string& where) {
  const std::size_t len = power(d, rank);
  if (!j.is_array()) throw input_error(where + ": expected an array");
  if (j.empty() || !j[0].is_object()) return dense(j, len, where);
  Vector out(len);
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string at = where + "[" + std::to_string(e) + "]";
    check_keys(j[e], at, {"index", "value"}, {"index", "value"});
    const json& idx = j[e]["index"];
    if (!idx.is_array() || idx.size() != rank) throw input_error(at + ".index: expected " + std::to_string(rank) + " indices");
    std::vector<std::size_t> ix;
    for (const auto& i : idx) ix.push_back(letter(i, d, at + ".index"));
    const Scalar v = scalar(j[e]["value"], at + ".value");
    Vector t(len);
    if (sign == 0 || rank == 1) {
      std::size_t flat = 0;
      for (std::size_t i : ix) flat = flat * d + i;
      t[flat] = v;
    } else if (rank == 2) {
      if (sign == -1 && ix[0] == ix[1] && v != 0) throw input_error(at + ": antisymmetric entry with a repeated index");
      t[tidx(d, ix[1], ix[0])] = sign * v;
      t[tidx(d, ix[0], ix[1])] = v;
    } else if (rank == 3) {
      try {
        fill_symmetric3(t, d, ix[0], ix[1], ix[2], v, sign);
      } catch (const input_error& err) {
        throw input_error(at + ": " + err.what());
      }
    } else {
      throw input_error(at + ": unsupported tensor rank");
    }
    for (std::size_t i = 0; i < len; ++i) out[i] += t[i];
  }
  return out;
}

/// [{"word": [letters], "coeff": q}, ...]
inline TensorElement terms(const json& j, std::size_t d, std::size_t max_degree, const std::string& where) {
  if (!j.is_array()) throw input_error(where + ": expected a list of terms");
  TensorElement out(d);
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string at = where + "[" + std::to_string(e) + "]";
    check_keys(j[e], at, {"word", "coeff"}, {"word", "coeff"});
    const json& w = j[e]["word"];
    if (!w.is_array()) throw input_error(at + ".word: expected an array of generator indices");
    if (w.size() > max_degree) throw input_error(at + ".word: degree exceeds " + std::to_string(max_degree));
    Word word;
    for (const auto& l : w) word.push_back(letter(l, d, at + ".word"));
    out.add_term(std::move(word), scalar(j[e]["coeff"], at + ".coeff"));
  }
  return out;
}

inline Metric metric(const json& j, std::size_t d, std::string& name) {
  if (j.is_string()) {
    name = j.get<std::string>();
    if (name == "euclidean") return Metric::euclidean(d);
    if (name == "minkowski") return Metric::minkowski(d);
    throw input_error("algebra.metric: unknown named metric '" + name + "'");
  }
  if (!j.is_array() || j.size() != d) throw input_error("algebra.metric: expected a name or a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Vector row = dense(j[i], d, "algebra.metric[" + std::to_string(i) + "]");
    for (std::size_t k = 0; k < d; ++k) g(i, k) = row[k];
  }
  name = "explicit";
  return Metric::from_lower(std::move(g));
}

inline void parse_algebra(const json& j, Problem& p) {
  check_keys(j, "algebra", {"family", "s", "N", "metric", "relations"}, {"family", "s"});
  if (!j["family"].is_string()) throw input_error("algebra.family: expected a string");
  const std::string fam = j["family"].get<std::string>();
  if (fam == "yang-mills") p.family = Family::yang_mills;
  else if (fam == "super-yang-mills") p.family = Family::super_yang_mills;
  else if (fam == "antisymmetrizer") p.family = Family::antisymmetrizer;
  else if (fam == "custom") p.family = Family::custom;
  else throw input_error("algebra.family: unknown family '" + fam + "'");

  const bool cubic = p.family == Family::yang_mills || p.family == Family::super_yang_mills;
  p.s = count(j["s"], "algebra.s", cubic ? 1 : 0, 64);
  const std::size_t d = p.s + 1;
  if (cubic) {
    p.degree = j.contains("N") ? count(j["N"], "algebra.N", 3, 3) : 3;
    if (j.contains("relations")) throw input_error("algebra.relations: only allowed for the custom family");
    p.metric = metric(j.contains("metric") ? j["metric"] : json("euclidean"), d, p.metric_name);
  } else {
    if (!j.contains("N")) throw input_error("algebra: missing field 'N'");
    p.degree = count(j["N"], "algebra.N", 2, 64);
    if (j.contains("metric")) throw input_error("algebra.metric: only allowed for the Yang-Mills families");
  }
  guard_dimension(power(d, p.degree + 1), "V^{⊗(N+1)}");

  switch (p.family) {
    case Family::yang_mills: p.algebra = ym::build_ym(*p.metric); break;
    case Family::super_yang_mills: p.algebra = sym::build_sym(*p.metric); break;
    case Family::antisymmetrizer:
      if (j.contains("relations")) throw input_error("algebra.relations: only allowed for the custom family");
      p.algebra = build_antisymmetrizer_relations(d, p.degree);
      break;
    case Family::custom: {
      if (!j.contains("relations") || !j["relations"].is_array()) throw input_error("algebra.relations: required list for the custom family");
      std::vector<Vector> rows;
      for (std::size_t r = 0; r < j["relations"].size(); ++r) {
        const json& rel = j["relations"][r];
        const std::string at = "algebra.relations[" + std::to_string(r) + "]";
        if (rel.is_array() && !rel.empty() && rel[0].is_object()) {
          const TensorElement t = terms(rel, d, p.degree, at);
          if (!t.is_homogeneous(p.degree)) throw input_error(at + ": relation must be homogeneous of degree N");
          rows.push_back(t.degree_coords(p.degree));
        } else {
          rows.push_back(dense(rel, power(d, p.degree), at));
        }
      }
      p.algebra = AlgebraPresentation(d, p.degree, std::move(rows));
      break;
    }
  }
}

inline void parse_current(const json& j, Problem& p) {
  check_keys(j, "current", {"parameters", "raw", "phi"});
  if (j.size() != 1) throw input_error("current: give exactly one of 'parameters', 'raw', 'phi'");
  const std::size_t d = p.s + 1;
  const AlgebraPresentation& a = p.algebra;
  if (j.contains("phi")) {
    const json& images = j["phi"];
    if (!images.is_array() || images.size() != a.relation_count())
      throw input_error("current.phi: expected one term list per relation (" + std::to_string(a.relation_count()) + ")");
    std::vector<TensorElement> imgs;
    for (std::size_t r = 0; r < images.size(); ++r)
      imgs.push_back(terms(images[r], d, p.degree - 1, "current.phi[" + std::to_string(r) + "]"));
    p.current = DeformationMap::from_images(a, imgs);
    p.current_kind = "phi";
    return;
  }
  if (p.family != Family::yang_mills && p.family != Family::super_yang_mills)
    throw input_error("current: 'parameters' and 'raw' are only defined for the Yang-Mills families; use 'phi'");
  const bool ym_family = p.family == Family::yang_mills;
  if (j.contains("raw")) {
    const json& r = j["raw"];
    check_keys(r, "current.raw", {"j3", "j2", "j1"});
    Vector j3 = r.contains("j3") ? tensor(r["j3"], d, 3, 0, "current.raw.j3") : Vector(d * d * d);
    Vector j2 = r.contains("j2") ? tensor(r["j2"], d, 2, 0, "current.raw.j2") : Vector(d * d);
    Vector j1 = r.contains("j1") ? tensor(r["j1"], d, 1, 0, "current.raw.j1") : Vector(d);
    if (ym_family) {
      p.current = ym::current_to_deformation({d, std::move(j3), std::move(j2), std::move(j1)}, a);
    } else {
      p.current = sym::super_current_to_deformation({d, std::move(j3), std::move(j2), std::move(j1)}, a);
    }
    p.current_kind = "raw";
    return;
  }
  const json& q = j["parameters"];
  if (ym_family) {
    check_keys(q, "current.parameters", {"b", "omega3", "s3", "s2", "s1"});
    ym::CurrentParameters c = ym::CurrentParameters::zero(d);
    if (q.contains("b")) c.b = dense(q["b"], d, "current.parameters.b");
    if (q.contains("omega3")) c.omega3 = tensor(q["omega3"], d, 3, -1, "current.parameters.omega3");
    if (q.contains("s3")) c.s3 = tensor(q["s3"], d, 3, 1, "current.parameters.s3");
    if (q.contains("s2")) c.s2 = tensor(q["s2"], d, 2, 1, "current.parameters.s2");
    if (q.contains("s1")) c.s1 = dense(q["s1"], d, "current.parameters.s1");
    p.current = ym::current_to_deformation(ym::current_from_parameters(c, *p.metric), a);
    p.ym_parameters = c;
  } else {
    check_keys(q, "current.parameters", {"b", "omega"});
    const Vector b = q.contains("b") ? dense(q["b"], d, "current.parameters.b") : Vector(d);
    const Vector omega = q.contains("omega") ? tensor(q["omega"], d, 2, -1, "current.parameters.omega") : Vector(d * d);
    p.current = sym::super_current_to_deformation(sym::super_current_from_parameters(b, omega, *p.metric), a);
  }
  p.current_kind = "parameters";
}

inline TaskSpec parse_task(const json& j, std::size_t index) {
  const std::string where = "tasks[" + std::to_string(index) + "]";
  if (!j.is_object() || !j.contains("task") || !j["task"].is_string()) throw input_error(where + ": expected an object with a 'task' name");
  TaskSpec t;
  t.kind = j["task"].get<std::string>();
  if (t.kind == "identities" || t.kind == "hilbert") {
    check_keys(j, where, {"task", "n_max"});
  } else if (t.kind == "check") {
    check_keys(j, where, {"task"});
  } else if (t.kind == "oracle") {
    check_keys(j, where, {"task", "n_max", "cutoff"});
  } else if (t.kind == "classify") {
    check_keys(j, where, {"task", "samples", "seed"});
  } else {
    throw input_error(where + ": unknown task '" + t.kind + "'");
  }
  if (j.contains("n_max")) t.n_max = count(j["n_max"], where + ".n_max", 0, 32);
  t.cutoff = j.contains("cutoff") ? count(j["cutoff"], where + ".cutoff", 0, 32) : t.n_max + 1;
  if (t.kind == "oracle" && t.cutoff < t.n_max) throw input_error(where + ": cutoff must be at least n_max");
  if (j.contains("samples")) t.samples = count(j["samples"], where + ".samples", 0, 1000);
  if (j.contains("seed")) t.seed = seed_value(j["seed"], where + ".seed");
  return t;
}

}  // namespace detail

inline Problem parse_problem(const json& j) {
  detail::check_keys(j, "problem", {"schema_version", "seed", "algebra", "current", "tasks"}, {"schema_version", "algebra"});
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<std::int64_t>() != schema_version)
    throw input_error("problem.schema_version: only version " + std::to_string(schema_version) + " is supported");
  Problem p;
  if (j.contains("seed")) p.seed = detail::seed_value(j["seed"], "problem.seed");
  detail::parse_algebra(j["algebra"], p);
  p.current = DeformationMap(p.algebra);
  if (j.contains("current")) detail::parse_current(j["current"], p);
  if (j.contains("tasks")) {
    if (!j["tasks"].is_array()) throw input_error("problem.tasks: expected a list");
    for (std::size_t i = 0; i < j["tasks"].size(); ++i) p.tasks.push_back(detail::parse_task(j["tasks"][i], i));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Report pieces

inline json to_json(const Scalar& q) { return format_scalar(q); }

inline json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(format_scalar(x));
  return out;
}

inline json to_json(const TensorElement& t) {
  json out = json::array();
  for (const auto& [w, c] : t.terms()) out.push_back({{"word", w}, {"coeff", format_scalar(c)}});
  return out;
}

inline json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row_vector(i)));
  return out;
}

inline json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

inline json verdict_json(const PbwVerdict& v) {
  json j2 = json::array();
  for (const auto& x : v.j2) j2.push_back(optional_bool(x));
  return {{"J1", v.j1_holds},
          {"J2", j2},
          {"J3", optional_bool(v.j3)},
          {"overall", v.overall},
          {"failed_condition", v.failed_condition.empty() ? json(nullptr) : json(v.failed_condition)},
          {"witness", v.witness ? to_json(*v.witness) : json(nullptr)}};
}

inline json oracle_json(const OracleResult& o) {
  return {{"n_max", o.n_max},
          {"cutoff", o.cutoff},
          {"quotient_dims", o.quotient_dims},
          {"expected_dims", o.expected_dims},
          {"verdict", to_string(o.verdict)},
          {"failure_degree", o.failure_degree ? json(*o.failure_degree) : json(nullptr)}};
}

inline json stage_json(const StageSolution& s) {
  json j = {{"stage", s.stage},
            {"levels", s.levels},
            {"feasible", s.feasible},
            {"solution_dim", s.parameters.dim()},
            {"equations", s.equations},
            {"unknowns", s.unknowns}};
  j["certificate"] = s.certificate ? to_json(*s.certificate) : json(nullptr);
  return j;
}

/// Tables appended to the TSV output; one block per task.
struct TsvTable {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::ostringstream os;
    os << "# " << title << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "\t" : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
      os << "\n";
    }
    return os.str();
  }
};

struct TaskResult {
  json report;
  bool passed = true;
  std::optional<TsvTable> table;
  std::string summary;
};

/// a_n = 3a_{n-1} − 3a_{n-3} + a_{n-4} with a_{<0} = 0, checked for n >= 1.
inline bool satisfies_cubic_koszul_recurrence(const std::vector<std::size_t>& a) {
  auto at = [&](std::ptrdiff_t n) -> long long { return n < 0 ? 0 : static_cast<long long>(a[static_cast<std::size_t>(n)]); };
  if (a.empty() || a[0] != 1) return false;
  for (std::ptrdiff_t n = 1; n < static_cast<std::ptrdiff_t>(a.size()); ++n)
    if (at(n) != 3 * at(n - 1) - 3 * at(n - 3) + at(n - 4)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Tasks

inline TaskResult run_identities(const Problem& p, const TaskSpec& t) {
  TaskResult r;
  r.report = {{"task", "identities"}};
  TsvTable table{"identities", {"quantity", "value"}, {}};
  if (p.family == Family::yang_mills) {
    const auto rep = ym::verify_identities(*p.metric);
    r.report["cyclic"] = rep.cyclic;
    r.report["w_two_sided"] = rep.w_two_sided;
    r.report["cyclic_sum"] = rep.cyclic_sum;
    r.report["relations_independent"] = rep.relations_independent;
    r.report["overlap_dim"] = rep.overlap_dim;
    r.report["w_spans_overlap"] = rep.w_spans_overlap;
    r.passed = rep.all();
    table.rows.push_back({"overlap_dim", std::to_string(rep.overlap_dim)});
  } else if (p.family == Family::super_yang_mills) {
    const auto rep = sym::verify_super_identities(*p.metric);
    const auto cen = sym::centrality_check(p.algebra, *p.metric, t.n_max);
    r.report["anticyclic"] = rep.anticyclic;
    r.report["w_two_sided"] = rep.w_two_sided;
    r.report["relations_independent"] = rep.relations_independent;
    r.report["overlap_dim"] = rep.overlap_dim;
    r.report["w_spans_overlap"] = rep.w_spans_overlap;
    json central = json::array();
    for (std::size_t i = 0; i < cen.degrees.size(); ++i)
      central.push_back({{"degree", cen.degrees[i]}, {"central", static_cast<bool>(cen.central_in_degree[i])}});
    r.report["centrality"] = {{"commutators_span_relations", cen.spans_match}, {"degrees", central}};
    r.passed = rep.all() && cen.all();
    table.rows.push_back({"overlap_dim", std::to_string(rep.overlap_dim)});
  } else {
    const std::size_t overlap = overlap_space(p.algebra).dim();
    r.report["relations_independent"] = true;
    r.report["relation_count"] = p.algebra.relation_count();
    r.report["overlap_dim"] = overlap;
    table.rows.push_back({"relation_count", std::to_string(p.algebra.relation_count())});
    table.rows.push_back({"overlap_dim", std::to_string(overlap)});
  }
  r.report["passed"] = r.passed;
  r.table = table;
  r.summary = std::string("identities: ") + (r.passed ? "PASS" : "FAIL");
  return r;
}

inline TaskResult run_check(const Problem& p, const TaskSpec&) {
  TaskResult r;
  const PbwVerdict v = pbw_verdict(p.current);
  r.report = {{"task", "check"}, {"current_kind", p.current_kind}, {"pbw", verdict_json(v)}};
  r.report["verdict"] = v.overall ? "regular" : "not regular";
  r.passed = v.overall;
  if (p.ym_parameters) {
    const auto sc = ym::side_conditions(*p.ym_parameters);
    r.report["side_conditions"] = {{"s3_b_zero", sc.s3_b}, {"s2_b_zero", sc.s2_b}, {"s1_b_zero", sc.s1_b}};
  }
  if (p.family == Family::yang_mills) {
    const auto c = conservation_residual(p.current);
    const bool agree = c.conserved == v.overall;
    r.report["conservation"] = {{"conserved", c.conserved}, {"residual", to_json(c.residual)}, {"agrees_with_pbw", agree}};
    r.passed = r.passed && agree;
  }
  r.report["passed"] = r.passed;
  r.summary = std::string("check: ") + (r.passed ? "PASS" : "FAIL") + " (" + (v.overall ? "regular" : "not regular, " + v.failed_condition) + ")";
  return r;
}

inline TaskResult run_oracle(const Problem& p, const TaskSpec& t) {
  TaskResult r;
  const OracleResult o = brute_force_oracle(p.current, t.n_max, t.cutoff);
  const bool pbw = pbw_verdict(p.current).overall;
  r.report = oracle_json(o);
  r.report["task"] = "oracle";
  r.report["pbw_overall"] = pbw;
  r.report["agrees_with_pbw"] = pbw == (o.verdict == OracleVerdict::consistent);
  r.passed = o.verdict == OracleVerdict::consistent;
  r.report["passed"] = r.passed;
  TsvTable table{"oracle", {"n", "quotient_dim", "expected_dim"}, {}};
  for (std::size_t n = 0; n < o.quotient_dims.size(); ++n)
    table.rows.push_back({std::to_string(n), std::to_string(o.quotient_dims[n]), std::to_string(o.expected_dims[n])});
  r.table = table;
  r.summary = std::string("oracle: ") + to_string(o.verdict) + " (n_max " + std::to_string(o.n_max) + ", cutoff " + std::to_string(o.cutoff) + ")";
  return r;
}

inline TaskResult run_hilbert(const Problem& p, const TaskSpec& t) {
  TaskResult r;
  const auto dims = hilbert_coefficients(p.algebra, t.n_max);
  r.report = {{"task", "hilbert"}, {"n_max", t.n_max}, {"dims", dims}};
  const bool cubic_koszul = p.family == Family::yang_mills || p.family == Family::super_yang_mills;
  if (cubic_koszul) {
    r.passed = satisfies_cubic_koszul_recurrence(dims);
    r.report["recurrence"] = {{"formula", "a_n = 3a_{n-1} - 3a_{n-3} + a_{n-4}"}, {"holds", r.passed}};
  } else {
    r.report["recurrence"] = nullptr;
  }
  r.report["passed"] = r.passed;
  TsvTable table{"hilbert", {"n", "dim"}, {}};
  std::string list;
  for (std::size_t n = 0; n < dims.size(); ++n) {
    table.rows.push_back({std::to_string(n), std::to_string(dims[n])});
    list += " " + std::to_string(dims[n]);
  }
  r.table = table;
  r.summary = std::string("hilbert: ") + (r.passed ? "PASS" : "FAIL") + " dims" + list;
  return r;
}

inline TaskResult run_classify(const Problem& p, const TaskSpec& t) {
  TaskResult r;
  const PbwChecker checker(p.algebra);
  const StageSolution s1 = solve_stage1(checker);
  r.report = {{"task", "classify"}};
  r.report["stage1"] = stage_json(s1);
  r.report["stage1"]["dimension_source"] = "derived by rank";
  TsvTable table{"classify", {"stage", "solution_dim"}, {{s1.stage, std::to_string(s1.parameters.dim())}}};

  std::optional<std::vector<Vector>> family;
  std::string family_name;
  if (p.family == Family::yang_mills) {
    family = ym_top_family(*p.metric);
    family_name = "j^{abc} = (g^{ar}g^{bc} - g^{ac}g^{br}) b_r + omega^{abc} + s^{abc}";
  } else if (p.family == Family::super_yang_mills) {
    family = sym_top_family(*p.metric);
    family_name = "jt^{abc} = (g^{ac}g^{br} - g^{bc}g^{ar}) b_r";
  }
  if (family) {
    const FamilyComparison c = family_equals_solutions(checker, *family);
    r.report["family"] = {{"formula", family_name},
                          {"family_dim", c.family_dim},
                          {"solution_dim", c.solution_dim},
                          {"family_in_solutions", c.family_in_solutions},
                          {"solutions_in_family", c.solutions_in_family},
                          {"equal", c.equal()}};
    r.passed = c.equal();
  } else {
    r.report["family"] = nullptr;
  }

  // Seeded stage-1 points pushed through the lower stages; every feasible
  // point must assemble into a PBW deformation.
  json samples = json::array();
  const auto seed = t.seed ? t.seed : p.seed;
  if (t.samples > 0 && !seed) throw input_error("classify: sampling needs a 'seed' in the problem or the task");
  std::mt19937_64 rng(seed.value_or(0));
  const std::size_t top = p.degree - 1;
  for (std::size_t i = 0; i < t.samples; ++i) {
    const Matrix phi_top = phi_matrix(p.algebra, top, random_point(s1.parameters, rng));
    const auto stages = solve_stage2plus(checker, phi_top);
    json st = json::array();
    for (const auto& s : stages) st.push_back(stage_json(s));
    json closure = nullptr;
    if (stages.back().feasible && stages.size() == p.degree) {
      const Vector lower = add(stages.back().particular, random_point(stages.back().parameters, rng));
      const bool ok = checker.verdict(assemble(p.algebra, phi_top, lower)).overall;
      closure = ok;
      r.passed = r.passed && ok;
    }
    samples.push_back({{"phi_top", to_json(phi_coords(phi_top))}, {"stages", st}, {"closure", closure}});
  }
  r.report["samples"] = samples;

  if (p.current_kind != "zero") {
    DeformationMap top_only(p.algebra);
    top_only.set_phi(top, p.current.phi(top).matrix);
    if (checker.check_j1(top_only).holds == true) {
      json st = json::array();
      for (const auto& s : solve_stage2plus(checker, p.current.phi(top).matrix)) {
        st.push_back(stage_json(s));
        table.rows.push_back({"current " + s.stage, s.feasible ? std::to_string(s.parameters.dim()) : "infeasible"});
      }
      r.report["current_stages"] = st;
    } else {
      r.report["current_stages"] = "current fails the stage-1 condition";
    }
  }
  r.report["passed"] = r.passed;
  r.table = table;
  r.summary = std::string("classify: ") + (r.passed ? "PASS" : "FAIL") + " stage-1 dim " + std::to_string(s1.parameters.dim());
  return r;
}

inline TaskResult run_task(const Problem& p, const TaskSpec& t) {
  if (t.kind == "identities") return run_identities(p, t);
  if (t.kind == "check") return run_check(p, t);
  if (t.kind == "oracle") return run_oracle(p, t);
  if (t.kind == "hilbert") return run_hilbert(p, t);
  if (t.kind == "classify") return run_classify(p, t);
  throw input_error("unknown task '" + t.kind + "'");
}

inline json algebra_json(const Problem& p) {
  json j = {{"family", to_string(p.family)},
            {"s", p.s},
            {"N", p.degree},
            {"dim_v", p.algebra.dim_v()},
            {"relation_count", p.algebra.relation_count()}};
  if (p.metric) j["metric"] = {{"name", p.metric_name}, {"lower", to_json(p.metric->lower())}};
  return j;
}

inline Outcome assemble_outcome(const std::string& command, const json& algebra, const std::optional<std::uint64_t>& seed,
                                std::vector<TaskResult> results) {
  Outcome out;
  bool passed = true;
  json tasks = json::array();
  for (auto& r : results) {
    passed = passed && r.passed;
    tasks.push_back(std::move(r.report));
    if (r.table) out.tsv += (out.tsv.empty() ? "" : "\n") + r.table->render();
    out.summary += r.summary + "\n";
  }
  out.report = {{"schema_version", schema_version},
                {"engine", {{"name", "pbwforge"}, {"version", engine_version}}},
                {"provenance", {{"command", command}, {"seed", seed ? json(*seed) : json(nullptr)}, {"dimension_limit", dimension_limit()}}},
                {"algebra", algebra},
                {"tasks", tasks},
                {"passed", passed}};
  out.summary += std::string("overall: ") + (passed ? "PASS" : "FAIL") + "\n";
  out.exit_code = passed ? exit_pass : exit_fail;
  return out;
}

/// Subcommand name -> task kind (run executes the file's task list).
inline std::optional<std::string> task_for_command(const std::string& command) {
  if (command == "identities") return "identities";
  if (command == "check-current") return "check";
  if (command == "classify") return "classify";
  if (command == "oracle") return "oracle";
  if (command == "hilbert") return "hilbert";
  return std::nullopt;
}

/// Executes a parsed problem. `run` executes every task in order; the other
/// subcommands execute the tasks of their kind, or one with default options
/// when the file lists none. Throws input_error / resource_error.
inline Outcome execute(const std::string& command, const Problem& p) {
  std::vector<TaskSpec> selected;
  if (command == "run") {
    if (p.tasks.empty()) throw input_error("problem.tasks: 'run' needs at least one task");
    selected = p.tasks;
  } else {
    const auto kind = task_for_command(command);
    if (!kind) throw input_error("unknown subcommand '" + command + "'");
    for (const auto& t : p.tasks)
      if (t.kind == *kind) selected.push_back(t);
    if (selected.empty()) {
      TaskSpec t;
      t.kind = *kind;
      selected.push_back(t);
    }
  }
  std::vector<TaskResult> results;
  for (const auto& t : selected) results.push_back(run_task(p, t));
  return assemble_outcome(command, algebra_json(p), p.seed, std::move(results));
}

/// Built-in quadratic demo: "so3", "broken", or "random" (seeded).
inline Outcome demo_lie(const std::string& which, std::size_t n_max, std::optional<std::uint64_t> seed) {
  lie::Bracket br;
  if (which == "so3") br = lie::so3();
  else if (which == "broken") br = lie::broken();
  else if (which == "random") {
    if (!seed) throw input_error("demo-lie random needs --seed");
    std::mt19937_64 rng(*seed);
    br = lie::random_bracket(3, rng);
  } else {
    throw input_error("demo-lie: unknown bracket '" + which + "' (so3, broken, random)");
  }
  const DeformationMap d = lie::bracket_deformation(br);
  const PbwVerdict v = pbw_verdict(d);
  const OracleResult o = brute_force_oracle(d, n_max, n_max + 1);
  json jac = json::array();
  for (const auto& x : lie::jacobiators(br)) jac.push_back(to_json(x));
  const bool jacobi = lie::satisfies_jacobi(br);

  TaskResult r;
  r.report = {{"task", "demo-lie"},
              {"bracket", which},
              {"structure_constants", to_json(br.c)},
              {"jacobiators", jac},
              {"jacobi_holds", jacobi},
              {"pbw", verdict_json(v)},
              {"oracle", oracle_json(o)},
              {"certificates_agree", jacobi == v.overall && v.overall == (o.verdict == OracleVerdict::consistent)}};
  r.passed = v.overall;
  r.report["passed"] = r.passed;
  TsvTable table{"demo-lie", {"n", "quotient_dim", "expected_dim"}, {}};
  for (std::size_t n = 0; n < o.quotient_dims.size(); ++n)
    table.rows.push_back({std::to_string(n), std::to_string(o.quotient_dims[n]), std::to_string(o.expected_dims[n])});
  r.table = table;
  r.summary = "demo-lie " + which + ": " + (r.passed ? "PASS" : "FAIL") + " (Jacobi " + (jacobi ? "holds" : "fails") +
              ", oracle " + to_string(o.verdict) + ")";
  const json algebra = {{"family", "symmetric-algebra"}, {"s", 2}, {"N", 2}, {"dim_v", 3}, {"relation_count", 3}};
  std::vector<TaskResult> results;
  results.push_back(std::move(r));
  return assemble_outcome("demo-lie", algebra, seed, std::move(results));
}

/// Parses and executes, mapping failures onto the exit-code contract.
inline Outcome run_text(const std::string& command, const std::string& text) {
  Outcome out;
  try {
    return execute(command, parse_problem(json::parse(text)));
  } catch (const json::exception& e) {
    out.exit_code = exit_invalid;
    out.summary = std::string("invalid input: ") + e.what() + "\n";
  } catch (const input_error& e) {
    out.exit_code = exit_invalid;
    out.summary = std::string("invalid input: ") + e.what() + "\n";
  } catch (const resource_error& e) {
    out.exit_code = exit_resource;
    out.summary = std::string("resource limit: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace pbwforge::cli
