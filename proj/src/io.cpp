#include "cvp/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <tuple>

namespace cvp {
namespace {

using Json = nlohmann::ordered_json;

Error parse_error(const std::string& what) { return Error(ErrorCode::kParseError, what); }

void only_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) throw parse_error(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw parse_error(where + ": unknown key '" + key + "'");
  }
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw parse_error(where + ": missing key '" + key + "'");
  return *it;
}

std::int64_t as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw parse_error(where + ": expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw parse_error(where + ": integer out of range");
  return v.get<std::int64_t>();
}

std::vector<std::int64_t> as_int_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw parse_error(where + ": expected an array");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Rational as_rational(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(mpz_class(std::to_string(as_int(v, where)), 10));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error&) {
      throw parse_error(where + ": not a rational '" + v.get<std::string>() + "'");
    }
  }
  throw parse_error(where + ": expected an integer or a \"p/q\" string");
}

Json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return Json(static_cast<std::int64_t>(r.get_num().get_si()));
  return Json(to_string(r));
}

// mu and nu may be omitted, defaulting to (1, 0)
ObjectiveWeights as_weights(const Json& j) {
  ObjectiveWeights w;
  if (j.contains("mu")) w.mu = as_rational(j["mu"], "mu");
  if (j.contains("nu")) w.nu = as_rational(j["nu"], "nu");
  return w;
}

Cap as_cap(const Json& v, const std::string& where) {
  if (v.is_string() && v.get<std::string>() == "inf") return Cap::infinite();
  if (v.is_number_integer()) return Cap::finite(as_int(v, where));
  throw parse_error(where + ": expected an integer or \"inf\"");
}

Json cap_json(const Cap& cap) { return cap.is_infinite() ? Json("inf") : Json(cap.value()); }

std::optional<Interval> as_opening(const Json& v, const std::string& where) {
  if (v.is_null()) return std::nullopt;
  const auto pair = as_int_array(v, where);
  if (pair.size() != 2) throw parse_error(where + ": expected [l, r] or null");
  if (pair[0] < std::numeric_limits<int>::min() || pair[0] > std::numeric_limits<int>::max() ||
      pair[1] < std::numeric_limits<int>::min() || pair[1] > std::numeric_limits<int>::max())
    throw parse_error(where + ": interval end out of range");
  return Interval{static_cast<int>(pair[0]), static_cast<int>(pair[1])};
}

Segment as_segment(const Json& v, const std::string& where) {
  if (!v.is_array()) throw parse_error(where + ": expected a list of per-row openings");
  Segment seg;
  for (std::size_t i = 0; i < v.size(); ++i) seg.rows.push_back(as_opening(v[i], where + "[" + std::to_string(i) + "]"));
  return seg;
}

Json segment_json(const Segment& seg) {
  Json rows = Json::array();
  for (const auto& iv : seg.rows) rows.push_back(iv ? Json::array({iv->lo, iv->hi}) : Json(nullptr));
  return rows;
}

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

void pretty(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      pretty(value, out, indent + 2);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (v.is_array()) {
    if (std::all_of(v.begin(), v.end(), is_scalar)) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      pretty(v[i], out, indent + 2);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else {
    out += v.dump();
  }
}

std::string render(const Json& v) {
  std::string out;
  pretty(v, out, 0);
  out += "\n";
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
}

CvpInstance parse_vector(const Json& j) {
  only_keys(j, {"kind", "d", "C", "a", "generators", "mu", "nu"}, "instance");
  CvpInstance inst;
  const std::int64_t d = as_int(field(j, "d", "instance"), "d");
  inst.target = as_int_array(field(j, "a", "instance"), "a");
  if (d < 0 || static_cast<std::size_t>(d) != inst.target.size())
    throw parse_error("d: " + std::to_string(d) + " differs from the length of a");
  const Json& gens = field(j, "generators", "instance");
  if (!gens.is_array()) throw parse_error("generators: expected an array");
  for (std::size_t q = 0; q < gens.size(); ++q) {
    const std::string where = "generators[" + std::to_string(q) + "]";
    std::vector<std::uint8_t> g;
    for (auto v : as_int_array(gens[q], where)) {
      if (v < 0 || v > 255) throw Error(ErrorCode::kInvalidInstance, where + ": entry " + std::to_string(v) + " is not binary", q);
      g.push_back(static_cast<std::uint8_t>(v));
    }
    inst.generators.push_back(std::move(g));
  }
  inst.cap = as_cap(field(j, "C", "instance"), "C");
  inst.weights = as_weights(j);
  require_valid(inst);
  return inst;
}

MatrixInstance parse_matrix(const Json& j) {
  only_keys(j, {"kind", "m", "n", "C", "A", "constraint", "mu", "nu"}, "instance");
  MatrixInstance mi;
  const std::int64_t m = as_int(field(j, "m", "instance"), "m");
  const std::int64_t n = as_int(field(j, "n", "instance"), "n");
  if (m < 1 || n < 1 || m > std::numeric_limits<int>::max() || n > std::numeric_limits<int>::max())
    throw parse_error("m, n: must be positive");
  mi.m = static_cast<int>(m);
  mi.n = static_cast<int>(n);
  const Json& rows = field(j, "A", "instance");
  if (!rows.is_array()) throw parse_error("A: expected an array of rows");
  for (std::size_t i = 0; i < rows.size(); ++i) mi.a.push_back(as_int_array(rows[i], "A[" + std::to_string(i) + "]"));
  mi.cap = as_cap(field(j, "C", "instance"), "C");
  mi.weights = as_weights(j);
  const Json& c = field(j, "constraint", "instance");
  only_keys(c, {"msc", "segments"}, "constraint");
  if (c.size() != 1) throw parse_error("constraint: expected exactly one of 'msc' or 'segments'");
  if (c.contains("msc")) {
    const Json& msc = c["msc"];
    only_keys(msc, {"lambda"}, "constraint.msc");
    const std::int64_t lambda = as_int(field(msc, "lambda", "constraint.msc"), "constraint.msc.lambda");
    if (lambda < std::numeric_limits<int>::min() || lambda > std::numeric_limits<int>::max())
      throw parse_error("constraint.msc.lambda: out of range");
    mi.constraint = MinSeparation{static_cast<int>(lambda)};
  } else {
    const Json& segs = c["segments"];
    if (!segs.is_array()) throw parse_error("constraint.segments: expected an array");
    ExplicitSegments list;
    for (std::size_t s = 0; s < segs.size(); ++s)
      list.segments.push_back(as_segment(segs[s], "constraint.segments[" + std::to_string(s) + "]"));
    mi.constraint = std::move(list);
  }
  const auto violations = validate_matrix_instance(mi);
  if (!violations.empty()) throw Error(ErrorCode::kInvalidInstance, violations.front());
  return mi;
}

}  // namespace

AnyInstance parse_instance(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw parse_error("instance: expected an object");
  const Json& kind = field(j, "kind", "instance");
  if (kind == "vector") return parse_vector(j);
  if (kind == "matrix") return parse_matrix(j);
  throw parse_error("kind: expected \"vector\" or \"matrix\"");
}

std::string write_instance(const AnyInstance& instance) {
  Json j;
  if (const auto* v = std::get_if<CvpInstance>(&instance)) {
    j["kind"] = "vector";
    j["d"] = v->d();
    j["C"] = cap_json(v->cap);
    j["a"] = v->target;
    j["generators"] = Json::array();
    for (const auto& g : v->generators) {
      Json row = Json::array();
      for (auto e : g) row.push_back(static_cast<int>(e));
      j["generators"].push_back(std::move(row));
    }
    j["mu"] = rational_json(v->weights.mu);
    j["nu"] = rational_json(v->weights.nu);
  } else {
    const auto& mi = std::get<MatrixInstance>(instance);
    j["kind"] = "matrix";
    j["m"] = mi.m;
    j["n"] = mi.n;
    j["C"] = cap_json(mi.cap);
    j["A"] = mi.a;
    if (const auto* msc = std::get_if<MinSeparation>(&mi.constraint)) {
      j["constraint"]["msc"]["lambda"] = msc->lambda;
    } else {
      Json segs = Json::array();
      for (const auto& s : std::get<ExplicitSegments>(mi.constraint).segments) segs.push_back(segment_json(s));
      j["constraint"]["segments"] = std::move(segs);
    }
    j["mu"] = rational_json(mi.weights.mu);
    j["nu"] = rational_json(mi.weights.nu);
  }
  return render(j);
}

SolutionFile to_solution_file(const SolveReport& report) {
  if (!report.solution) throw Error(ErrorCode::kInvalidArgument, "report carries no solution");
  SolutionFile f;
  f.u = report.solution->u;
  f.tc = report.solution->tc;
  f.linf = report.solution->linf;
  f.bot = report.solution->bot;
  f.objective = report.solution->objective;
  f.status = std::string(status_name(report.status));
  f.method = report.method;
  f.seed = report.seed;
  return f;
}

SolutionFile to_solution_file(const MatrixPlan& plan, SolveStatus status, std::string method,
                              std::optional<std::uint64_t> seed) {
  SolutionFile f;
  f.terms = plan.terms;
  f.tc = plan.tc;
  f.linf = plan.linf;
  f.bot = plan.bot;
  f.objective = plan.objective;
  f.status = std::string(status_name(status));
  f.method = std::move(method);
  f.seed = seed;
  return f;
}

SolutionFile parse_solution(std::string_view text) {
  const Json j = parse_json(text);
  only_keys(j, {"u", "terms", "tc", "linf", "bot", "objective", "status", "method", "seed"}, "solution");
  SolutionFile f;
  if (j.contains("u") == j.contains("terms")) throw parse_error("solution: expected exactly one of 'u' or 'terms'");
  if (j.contains("u")) {
    f.u = as_int_array(j["u"], "u");
  } else {
    const Json& terms = j["terms"];
    if (!terms.is_array()) throw parse_error("terms: expected an array");
    f.terms.emplace();
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string where = "terms[" + std::to_string(t) + "]";
      only_keys(terms[t], {"segment", "coef"}, where);
      f.terms->push_back({as_segment(field(terms[t], "segment", where), where + ".segment"),
                          as_int(field(terms[t], "coef", where), where + ".coef")});
    }
  }
  f.tc = as_int(field(j, "tc", "solution"), "tc");
  f.linf = as_int(field(j, "linf", "solution"), "linf");
  f.bot = as_int(field(j, "bot", "solution"), "bot");
  f.objective = as_rational(field(j, "objective", "solution"), "objective");
  const Json& status = field(j, "status", "solution");
  const Json& method = field(j, "method", "solution");
  if (!status.is_string() || !method.is_string()) throw parse_error("status, method: expected strings");
  f.status = status.get<std::string>();
  f.method = method.get<std::string>();
  if (f.status != "optimal" && f.status != "approximate")
    throw parse_error("status: expected \"optimal\" or \"approximate\"");
  if (j.contains("seed") && !j["seed"].is_null()) {
    if (!j["seed"].is_number_unsigned()) throw parse_error("seed: expected a nonnegative integer");
    f.seed = j["seed"].get<std::uint64_t>();
  }
  return f;
}

std::string write_solution(const SolutionFile& f) {
  Json j;
  if (f.u) {
    j["u"] = *f.u;
  } else {
    j["terms"] = Json::array();
    for (const auto& term : f.terms.value_or(std::vector<PlanTerm>{}))
      j["terms"].push_back(Json{{"segment", segment_json(term.segment)}, {"coef", term.coefficient}});
  }
  j["tc"] = f.tc;
  j["linf"] = f.linf;
  j["bot"] = f.bot;
  j["objective"] = rational_json(f.objective);
  j["status"] = f.status;
  j["method"] = f.method;
  j["seed"] = f.seed ? Json(*f.seed) : Json(nullptr);
  return render(j);
}

std::vector<std::string> verify_solution(const AnyInstance& instance, const SolutionFile& f) {
  std::vector<std::string> out;
  std::int64_t tc = 0;
  std::int64_t linf = 0;
  std::int64_t bot = 0;
  Rational objective;
  bool within_cap = true;
  try {
    if (const auto* v = std::get_if<CvpInstance>(&instance)) {
      if (!f.u) return {"vector instance needs a 'u' solution"};
      const Solution s = evaluate(*v, *f.u);
      std::tie(tc, linf, bot, objective, within_cap) = std::tie(s.tc, s.linf, s.bot, s.objective, s.within_cap);
    } else {
      const auto& mi = std::get<MatrixInstance>(instance);
      if (!f.terms) return {"matrix instance needs a 'terms' solution"};
      out = check_plan_constraints(mi, *f.terms);
      const MatrixPlan p = evaluate_plan(mi, *f.terms);
      std::tie(tc, linf, bot, objective, within_cap) = std::tie(p.tc, p.linf, p.bot, p.objective, p.within_cap);
    }
  } catch (const Error& e) {
    out.push_back(std::string("invalid plan: ") + e.what());
    return out;
  }
  if (tc != f.tc) out.emplace_back("tc mismatch");
  if (linf != f.linf) out.emplace_back("linf mismatch");
  if (bot != f.bot) out.emplace_back("bot mismatch");
  if (objective != f.objective) out.emplace_back("objective mismatch");
  if (f.status == "optimal" && !within_cap) out.emplace_back("cap violated: linf exceeds C");
  return out;
}

}  // namespace cvp
