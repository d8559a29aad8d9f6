#include "cvp/segmentation.hpp"

#include <algorithm>
#include <cstdlib>

#include "cvp/flow.hpp"

namespace cvp {

std::vector<std::string> validate_matrix_instance(const MatrixInstance& instance) {
  std::vector<std::string> out;
  if (instance.m <= 0 || instance.n <= 0) {
    out.emplace_back("dimensions: m and n must be positive");
    return out;
  }
  if (instance.a.size() != static_cast<std::size_t>(instance.m))
    out.push_back("A: expected " + std::to_string(instance.m) + " rows");
  for (std::size_t i = 0; i < instance.a.size(); ++i) {
    if (instance.a[i].size() != static_cast<std::size_t>(instance.n)) {
      out.push_back("A[" + std::to_string(i) + "]: expected " + std::to_string(instance.n) + " columns");
      continue;
    }
    for (std::size_t j = 0; j < instance.a[i].size(); ++j) {
      if (instance.a[i][j] < 0)
        out.push_back("A[" + std::to_string(i) + "][" + std::to_string(j) + "]: negative target entry");
    }
  }
  if (instance.cap.is_finite() && instance.cap.value() < 0) out.emplace_back("cap: negative finite cap");
  if (instance.weights.mu < 0) out.emplace_back("weights.mu: negative weight");
  if (instance.weights.nu < 0) out.emplace_back("weights.nu: negative weight");
  if (const auto* msc = std::get_if<MinSeparation>(&instance.constraint)) {
    if (msc->lambda < 1 || msc->lambda > instance.n)
      out.push_back("constraint.msc.lambda: " + std::to_string(msc->lambda) + " outside [1, n]");
  } else {
    const auto& segments = std::get<ExplicitSegments>(instance.constraint).segments;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      if (segments[s].rows.size() != static_cast<std::size_t>(instance.m)) {
        out.push_back("constraint.segments[" + std::to_string(s) + "]: expected " +
                      std::to_string(instance.m) + " rows");
        continue;
      }
      for (std::size_t i = 0; i < segments[s].rows.size(); ++i) {
        const auto& iv = segments[s].rows[i];
        if (iv && (iv->lo < 1 || iv->hi > instance.n || iv->lo > iv->hi))
          out.push_back("constraint.segments[" + std::to_string(s) + "][" + std::to_string(i) +
                        "]: interval " + to_string(*iv) + " outside [1, n]");
      }
    }
  }
  return out;
}

std::vector<Interval> msc_row_intervals(int n, int lambda) {
  if (n < 1 || lambda < 1 || lambda > n)
    throw Error(ErrorCode::kInvalidLambda,
                "lambda = " + std::to_string(lambda) + " outside [1, " + std::to_string(n) + "]");
  std::vector<Interval> out;
  for (int lo = 1; lo <= n; ++lo) {
    for (int hi = lo + lambda - 1; hi <= n; ++hi) out.push_back({lo, hi});
  }
  return out;
}

bool satisfies_msc(const Segment& segment, int lambda) {
  return std::all_of(segment.rows.begin(), segment.rows.end(),
                     [&](const auto& iv) { return !iv || iv->length() >= lambda; });
}

SolveReport solve_row(std::span<const std::int64_t> row, std::span<const Interval> intervals, Cap cap,
                      const ObjectiveWeights& weights) {
  CvpInstance instance;
  instance.target.assign(row.begin(), row.end());
  instance.cap = cap;
  instance.weights = weights;
  for (const auto& iv : intervals) instance.generators.push_back(interval_indicator(row.size(), iv));
  return solve_by_flow(instance);
}

std::vector<PlanTerm> assemble_matrix_segments(std::span<const RowPlan> row_plans) {
  std::vector<std::vector<Interval>> slices(row_plans.size());
  std::size_t horizon = 0;
  for (std::size_t i = 0; i < row_plans.size(); ++i) {
    RowPlan sorted(row_plans[i].begin(), row_plans[i].end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [iv, coef] : sorted) {
      if (coef < 0) throw Error(ErrorCode::kInvalidCoefficients, "negative row coefficient", i);
      slices[i].insert(slices[i].end(), static_cast<std::size_t>(coef), iv);
    }
    horizon = std::max(horizon, slices[i].size());
  }
  std::vector<PlanTerm> terms;
  for (std::size_t t = 0; t < horizon; ++t) {
    Segment seg;
    seg.rows.reserve(row_plans.size());
    for (const auto& row : slices) {
      if (t < row.size())
        seg.rows.emplace_back(row[t]);
      else
        seg.rows.emplace_back(std::nullopt);
    }
    if (!terms.empty() && terms.back().segment == seg)
      ++terms.back().coefficient;
    else
      terms.push_back({std::move(seg), 1});
  }
  return terms;
}

MatrixPlan evaluate_plan(const MatrixInstance& instance, std::vector<PlanTerm> terms) {
  const auto m = static_cast<std::size_t>(instance.m);
  const auto n = static_cast<std::size_t>(instance.n);
  MatrixPlan plan;
  plan.realized.assign(m, std::vector<std::int64_t>(n, 0));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& term = terms[t];
    if (term.coefficient < 0)
      throw Error(ErrorCode::kInvalidCoefficients, "term " + std::to_string(t) + " has a negative coefficient", t);
    if (term.segment.rows.size() != m)
      throw Error(ErrorCode::kInvalidCoefficients, "term " + std::to_string(t) + " has the wrong row count", t);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& iv = term.segment.rows[i];
      if (!iv) continue;
      if (iv->lo < 1 || iv->hi > instance.n || iv->lo > iv->hi)
        throw Error(ErrorCode::kInvalidCoefficients, "term " + std::to_string(t) + " opens outside [1, n]", t);
      for (int c = iv->lo; c <= iv->hi; ++c) plan.realized[i][static_cast<std::size_t>(c - 1)] += term.coefficient;
    }
    plan.bot += term.coefficient;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::int64_t dev = std::llabs(instance.a[i][c] - plan.realized[i][c]);
      plan.tc += dev;
      plan.linf = std::max(plan.linf, dev);
    }
  }
  plan.objective = objective_value(instance.weights, plan.tc, plan.bot);
  plan.within_cap = instance.cap.admits(plan.linf);
  plan.terms = std::move(terms);
  return plan;
}

MatrixSolveResult solve_msc(const MatrixInstance& instance) {
  const auto violations = validate_matrix_instance(instance);
  if (!violations.empty()) throw Error(ErrorCode::kInvalidInstance, violations.front());
  const auto* msc = std::get_if<MinSeparation>(&instance.constraint);
  if (!msc) throw Error(ErrorCode::kUnsupported, "solve_msc needs a minimum separation constraint");
  const auto intervals = msc_row_intervals(instance.n, msc->lambda);

  MatrixSolveResult result;
  std::vector<RowPlan> row_plans;
  std::int64_t row_tc = 0;
  for (std::size_t i = 0; i < instance.a.size(); ++i) {
    SolveReport report = solve_row(instance.a[i], intervals, instance.cap, instance.weights);
    if (report.status == SolveStatus::kInfeasible) {
      result.infeasible_row = i;
      result.rows.push_back(std::move(report));
      return result;
    }
    RowPlan plan;
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      if (report.solution->u[j] > 0) plan.emplace_back(intervals[j], report.solution->u[j]);
    }
    row_tc += report.solution->tc;
    row_plans.push_back(std::move(plan));
    result.rows.push_back(std::move(report));
  }
  MatrixPlan plan = evaluate_plan(instance, assemble_matrix_segments(row_plans));
  if (plan.tc != row_tc) throw Error(ErrorCode::kInternalError, "assembly changed the total change");
  plan.matrix_optimal = sgn(instance.weights.nu) == 0 || instance.m == 1;
  result.status = plan.matrix_optimal ? SolveStatus::kOptimalExact : SolveStatus::kApproximate;
  result.plan = std::move(plan);
  return result;
}

std::vector<std::string> check_plan_constraints(const MatrixInstance& instance, std::span<const PlanTerm> terms) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (terms[t].coefficient <= 0) out.push_back("term " + std::to_string(t) + ": nonpositive coefficient");
  }
  if (const auto* msc = std::get_if<MinSeparation>(&instance.constraint)) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto& rows = terms[t].segment.rows;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] && rows[i]->length() < msc->lambda)
          out.push_back("MSC violation row " + std::to_string(i + 1) + " (term " + std::to_string(t) + ")");
      }
    }
  } else {
    const auto& allowed = std::get<ExplicitSegments>(instance.constraint).segments;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (std::find(allowed.begin(), allowed.end(), terms[t].segment) == allowed.end())
        out.push_back("term " + std::to_string(t) + ": segment not in the allowed list");
    }
  }
  return out;
}

std::vector<std::uint8_t> flatten_segment(const Segment& segment, int n) {
  std::vector<std::uint8_t> g(segment.rows.size() * static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < segment.rows.size(); ++i) {
    const auto& iv = segment.rows[i];
    if (!iv) continue;
    for (int c = iv->lo; c <= iv->hi; ++c)
      g.at(i * static_cast<std::size_t>(n) + static_cast<std::size_t>(c - 1)) = 1;
  }
  return g;
}

CvpInstance flatten(const MatrixInstance& instance) {
  const auto violations = validate_matrix_instance(instance);
  if (!violations.empty()) throw Error(ErrorCode::kInvalidInstance, violations.front());
  const auto* explicit_list = std::get_if<ExplicitSegments>(&instance.constraint);
  if (!explicit_list) throw Error(ErrorCode::kUnsupported, "only explicit segment lists flatten to a vector instance");
  CvpInstance out;
  for (const auto& row : instance.a) out.target.insert(out.target.end(), row.begin(), row.end());
  for (const auto& seg : explicit_list->segments) out.generators.push_back(flatten_segment(seg, instance.n));
  out.cap = instance.cap;
  out.weights = instance.weights;
  return out;
}

MatrixPlan plan_from_coefficients(const MatrixInstance& instance, std::span<const std::int64_t> u) {
  const auto& segments = std::get<ExplicitSegments>(instance.constraint).segments;
  if (u.size() != segments.size())
    throw Error(ErrorCode::kInvalidCoefficients, "coefficient vector does not match the segment list");
  std::vector<PlanTerm> terms;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] < 0) throw Error(ErrorCode::kInvalidCoefficients, "negative coefficient", j);
    if (u[j] > 0) terms.push_back({segments[j], u[j]});
  }
  return evaluate_plan(instance, std::move(terms));
}

}  // namespace cvp
