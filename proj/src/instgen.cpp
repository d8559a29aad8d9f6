#include "cvp/instgen.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace cvp {

std::vector<std::string> validate_formula(const Sat36Formula& f) {
  std::vector<std::string> out;
  if (f.s < 1) {
    out.emplace_back("s: variable count must be positive");
    return out;
  }
  if (f.t() != static_cast<std::size_t>(2 * f.s))
    out.push_back("t: expected 2s = " + std::to_string(2 * f.s) + " clauses, found " + std::to_string(f.t()));
  std::vector<int> pos(static_cast<std::size_t>(f.s) + 1, 0);
  std::vector<int> neg(static_cast<std::size_t>(f.s) + 1, 0);
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& c = f.clauses[j];
    const std::string where = "clause " + std::to_string(j + 1);
    bool in_range = true;
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > f.s) {
        out.push_back(where + ": literal " + std::to_string(lit) + " outside +-[1, " + std::to_string(f.s) + "]");
        in_range = false;
      }
    }
    if (!in_range) continue;
    if (std::abs(c[0]) == std::abs(c[1]) || std::abs(c[0]) == std::abs(c[2]) || std::abs(c[1]) == std::abs(c[2]))
      out.push_back(where + ": a variable appears more than once");
    for (int lit : c) ++(lit > 0 ? pos : neg)[static_cast<std::size_t>(std::abs(lit))];
  }
  for (int v = 1; v <= f.s; ++v) {
    const auto i = static_cast<std::size_t>(v);
    if (pos[i] != 3 || neg[i] != 3)
      out.push_back("variable " + std::to_string(v) + ": occurs " + std::to_string(pos[i]) + " times positive and " +
                    std::to_string(neg[i]) + " times negative, expected 3 and 3");
  }
  return out;
}

void require_valid_formula(const Sat36Formula& formula) {
  const auto violations = validate_formula(formula);
  if (!violations.empty()) throw Error(ErrorCode::kMalformedFormula, violations.front());
}

Sat36Formula parse_sat36(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Sat36Formula f;
  bool header = false;
  std::size_t expected = 0;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c') continue;
    if (!header) {
      std::string kind;
      long long s = 0;
      long long t = 0;
      std::string extra;
      if (first != "p" || !(ls >> kind >> s >> t) || kind != "sat36" || (ls >> extra))
        throw fail("expected header 'p sat36 s t'");
      if (s < 0 || t < 0 || s > 1'000'000 || t > 2'000'000) throw fail("header counts out of range");
      f.s = static_cast<int>(s);
      expected = static_cast<std::size_t>(t);
      header = true;
      continue;
    }
    std::vector<long long> nums;
    std::istringstream all(line);
    std::string tok;
    while (all >> tok) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw fail("not an integer: '" + tok + "'");
      } catch (const std::logic_error&) {
        throw fail("not an integer: '" + tok + "'");
      }
    }
    if (nums.size() == 4 && nums[3] == 0) nums.pop_back();
    if (nums.size() != 3) throw fail("expected three literals");
    for (long long v : nums) {
      if (v < -1'000'000 || v > 1'000'000) throw fail("literal out of range");
    }
    f.clauses.push_back({static_cast<int>(nums[0]), static_cast<int>(nums[1]), static_cast<int>(nums[2])});
  }
  if (!header) throw Error(ErrorCode::kParseError, "missing header 'p sat36 s t'");
  if (f.clauses.size() != expected)
    throw Error(ErrorCode::kParseError, "header announces " + std::to_string(expected) + " clauses, found " +
                                            std::to_string(f.clauses.size()));
  require_valid_formula(f);
  return f;
}

std::string write_sat36(const Sat36Formula& f) {
  std::string out = "p sat36 " + std::to_string(f.s) + " " + std::to_string(f.t()) + "\n";
  for (const auto& c : f.clauses)
    out += std::to_string(c[0]) + " " + std::to_string(c[1]) + " " + std::to_string(c[2]) + "\n";
  return out;
}

int count_satisfied(const Sat36Formula& f, const std::vector<bool>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(f.s))
    throw Error(ErrorCode::kInvalidArgument, "assignment length differs from s");
  int sat = 0;
  for (const auto& c : f.clauses) {
    sat += std::any_of(c.begin(), c.end(), [&](int lit) {
      return assignment[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
    });
  }
  return sat;
}

Sat36Formula random_sat36(int s, Rng& rng) {
  if (s < 3) throw Error(ErrorCode::kInvalidArgument, "3SAT-6 needs at least 3 variables");
  std::vector<int> slots;
  for (int v = 1; v <= s; ++v) {
    for (int r = 0; r < 3; ++r) {
      slots.push_back(v);
      slots.push_back(-v);
    }
  }
  for (;;) {
    for (std::size_t i = slots.size() - 1; i > 0; --i) std::swap(slots[i], slots[rng.below(i + 1)]);
    Sat36Formula f;
    f.s = s;
    for (std::size_t i = 0; i < slots.size(); i += 3) f.clauses.push_back({slots[i], slots[i + 1], slots[i + 2]});
    if (validate_formula(f).empty()) return f;
  }
}

Interval clause_subinterval(int clause, int gamma) {
  static constexpr std::array<std::pair<int, int>, 10> kOffsets{{
      {0, 0}, {2, 2}, {4, 4}, {1, 1}, {3, 3}, {0, 1}, {3, 4}, {1, 3}, {0, 3}, {1, 4},
  }};
  if (gamma < 1 || gamma > 10) throw Error(ErrorCode::kInvalidArgument, "clause sub-interval index outside 1..10");
  const int base = 5 * clause - 4;
  const auto [lo, hi] = kOffsets[static_cast<std::size_t>(gamma - 1)];
  return {base + lo, base + hi};
}

Interval literal_subinterval(int literal, int beta) {
  if (literal == 0 || beta < 1 || beta > 3) throw Error(ErrorCode::kInvalidArgument, "bad literal sub-interval");
  const int base = 6 * std::abs(literal) - 5;
  // x: 1/3/2 split, not-x: 2/3/1 split
  static constexpr std::array<std::pair<int, int>, 3> kPositive{{{0, 0}, {1, 3}, {4, 5}}};
  static constexpr std::array<std::pair<int, int>, 3> kNegative{{{0, 1}, {2, 4}, {5, 5}}};
  const auto [lo, hi] = (literal > 0 ? kPositive : kNegative)[static_cast<std::size_t>(beta - 1)];
  return {base + lo, base + hi};
}

std::vector<int> filler_completion(unsigned mask) {
  switch (mask & 7U) {
    case 0b000: return {9};
    case 0b001: return {10};
    case 0b010: return {6, 7};
    case 0b100: return {9};
    case 0b011: return {4, 7};
    case 0b101: return {8};
    case 0b110: return {5, 6};
    default: return {4, 5};
  }
}

ReducedInstance reduce_3sat6(const Sat36Formula& formula) {
  require_valid_formula(formula);
  ReducedInstance r;
  r.s = formula.s;
  r.t = static_cast<int>(formula.t());
  const int n = 10 * r.s;

  auto& mi = r.matrix_instance;
  mi.m = 2;
  mi.n = n;
  mi.a.assign(2, std::vector<std::int64_t>(static_cast<std::size_t>(n), 1));
  std::fill(mi.a[0].begin() + 6 * r.s, mi.a[0].end(), 0);
  mi.cap = Cap::infinite();

  std::vector<int> seen(2 * static_cast<std::size_t>(r.s) + 1, 0);  // occurrences so far, by literal
  auto slot = [&](int lit) -> int& { return seen[static_cast<std::size_t>(lit + r.s)]; };
  for (int j = 1; j <= r.t; ++j) {
    const auto& c = formula.clauses[static_cast<std::size_t>(j - 1)];
    for (int alpha = 1; alpha <= 3; ++alpha) {
      const int lit = c[static_cast<std::size_t>(alpha - 1)];
      const int beta = ++slot(lit);
      r.segments.push_back(Segment{{literal_subinterval(lit, beta), clause_subinterval(j, alpha)}});
      r.provenance.push_back({GadgetRole::Kind::kLiteral, j, alpha, lit, beta});
    }
    for (int gamma = 4; gamma <= 10; ++gamma) {
      r.segments.push_back(Segment{{std::nullopt, clause_subinterval(j, gamma)}});
      r.provenance.push_back({GadgetRole::Kind::kFiller, j, gamma, 0, 0});
    }
  }
  mi.constraint = ExplicitSegments{r.segments};
  return r;
}

std::vector<std::int64_t> assignment_to_coefficients(const ReducedInstance& reduced,
                                                     const std::vector<bool>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(reduced.s))
    throw Error(ErrorCode::kInvalidArgument, "assignment length differs from s");
  auto truth = [&](int lit) { return assignment[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0); };
  std::vector<std::int64_t> u(reduced.segments.size(), 0);
  std::vector<unsigned> mask(static_cast<std::size_t>(reduced.t) + 1, 0);
  for (std::size_t q = 0; q < reduced.provenance.size(); ++q) {
    const auto& role = reduced.provenance[q];
    if (role.kind == GadgetRole::Kind::kLiteral && truth(role.literal)) {
      u[q] = 1;
      mask[static_cast<std::size_t>(role.clause)] |= 1U << (role.position - 1);
    }
  }
  for (std::size_t q = 0; q < reduced.provenance.size(); ++q) {
    const auto& role = reduced.provenance[q];
    if (role.kind != GadgetRole::Kind::kFiller) continue;
    const auto fill = filler_completion(mask[static_cast<std::size_t>(role.clause)]);
    if (std::find(fill.begin(), fill.end(), role.position) != fill.end()) u[q] = 1;
  }
  return u;
}

MatrixPlan assignment_to_plan(const ReducedInstance& reduced, const std::vector<bool>& assignment) {
  return plan_from_coefficients(reduced.matrix_instance, assignment_to_coefficients(reduced, assignment));
}

CvpInstance gen_random_instance(std::size_t d, std::size_t k, std::int64_t max_entry, Cap cap,
                                bool consecutive_only, Rng& rng) {
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "d must be positive");
  if (max_entry < 0) throw Error(ErrorCode::kInvalidArgument, "max_entry must be nonnegative");
  CvpInstance inst;
  inst.cap = cap;
  inst.target.resize(d);
  for (auto& a : inst.target) a = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_entry) + 1));
  const std::uint64_t interval_count = d * (d + 1) / 2;
  for (std::size_t j = 0; j < k; ++j) {
    if (consecutive_only) {
      std::uint64_t idx = rng.below(interval_count);
      int lo = 1;
      for (std::uint64_t width = d; idx >= width; --width) {
        idx -= width;
        ++lo;
      }
      inst.generators.push_back(interval_indicator(d, {lo, lo + static_cast<int>(idx)}));
      continue;
    }
    std::vector<std::uint8_t> g(d);
    do {
      std::uint64_t bits = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (i % 64 == 0) bits = rng.next();
        g[i] = static_cast<std::uint8_t>(bits & 1U);
        bits >>= 1;
      }
    } while (std::all_of(g.begin(), g.end(), [](std::uint8_t v) { return v == 0; }));
    inst.generators.push_back(std::move(g));
  }
  return inst;
}

MatrixInstance gen_msc_matrix(const MscGenOptions& o, Rng& rng) {
  const auto intervals = msc_row_intervals(o.n, o.lambda);
  if (o.m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  if (o.max_entry < 0) throw Error(ErrorCode::kInvalidArgument, "max_entry must be nonnegative");
  MatrixInstance mi;
  mi.m = o.m;
  mi.n = o.n;
  mi.cap = o.cap;
  mi.constraint = MinSeparation{o.lambda};
  mi.a.assign(static_cast<std::size_t>(o.m), std::vector<std::int64_t>(static_cast<std::size_t>(o.n), 0));
  const auto range = static_cast<std::uint64_t>(o.max_entry) + 1;
  for (auto& row : mi.a) {
    if (!o.decomposable) {
      for (auto& v : row) v = static_cast<std::int64_t>(rng.below(range));
      continue;
    }
    // at most max_entry unit intervals per row keeps entries within range
    const auto terms = rng.below(range);
    for (std::uint64_t q = 0; q < terms; ++q) {
      const Interval iv = intervals[rng.below(intervals.size())];
      for (int c = iv.lo; c <= iv.hi; ++c) ++row[static_cast<std::size_t>(c - 1)];
    }
  }
  return mi;
}

}  // namespace cvp
