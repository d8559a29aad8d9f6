#include "cvp/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <tuple>

namespace cvp {
namespace {

using Wide = __int128;

std::int64_t to_int64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Error(ErrorCode::kUnsupported, "objective weights too large for the oracle");
  return v.get_si();
}

class Search {
 public:
  Search(const CvpInstance& inst, std::vector<std::size_t> order, std::vector<std::int64_t> bounds,
         std::uint64_t node_limit)
      : inst_(inst), order_(std::move(order)), bounds_(std::move(bounds)), node_limit_(node_limit) {
    const std::size_t d = inst.d();
    mpz_class scale;
    mpz_lcm(scale.get_mpz_t(), inst.weights.mu.get_den_mpz_t(), inst.weights.nu.get_den_mpz_t());
    wmu_ = to_int64(inst.weights.mu.get_num() * (scale / inst.weights.mu.get_den()));
    wnu_ = to_int64(inst.weights.nu.get_num() * (scale / inst.weights.nu.get_den()));
    cap_ = inst.cap.is_finite() ? inst.cap.value() : -1;

    // a coordinate is final once the last generator touching it is decided
    std::vector<std::ptrdiff_t> last_touch(d, -1);
    for (std::size_t p = 0; p < order_.size(); ++p) {
      const auto& g = inst.generators[order_[p]];
      for (std::size_t i = 0; i < d; ++i) {
        if (g[i]) last_touch[i] = static_cast<std::ptrdiff_t>(p);
      }
      support_.emplace_back();
      for (std::size_t i = 0; i < d; ++i) {
        if (g[i]) support_.back().push_back(i);
      }
    }
    finals_.resize(order_.size());
    b_.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (last_touch[i] >= 0) {
        finals_[static_cast<std::size_t>(last_touch[i])].push_back(i);
      } else {
        under_ += inst.target[i];
        if (cap_ >= 0 && inst.target[i] > cap_) dead_ = true;
      }
    }
    u_.assign(order_.size(), 0);
  }

  void run() {
    if (!dead_) dfs(0);
  }

  bool found() const { return found_; }
  const std::vector<std::int64_t>& best_u() const { return best_u_; }

 private:
  Wide bound(std::int64_t over, std::int64_t under, std::int64_t bot) const {
    return static_cast<Wide>(wmu_) * (over + under) + static_cast<Wide>(wnu_) * bot;
  }

  bool beats(Wide lb) const { return !found_ || lb < best_; }

  void dfs(std::size_t p) {
    if (p == order_.size()) {
      const Wide value = bound(over_, under_, bot_);
      if (beats(value)) {
        best_ = value;
        found_ = true;
        best_u_.assign(inst_.k(), 0);
        for (std::size_t q = 0; q < order_.size(); ++q) best_u_[order_[q]] = u_[q];
      }
      return;
    }
    const auto& support = support_[p];
    const auto& finals = finals_[p];
    const std::int64_t saved_over = over_;
    const std::int64_t saved_bot = bot_;
    for (std::int64_t v = 0; v <= bounds_[p]; ++v) {
      if (++nodes_ > node_limit_) throw Error(ErrorCode::kBudgetExceeded, "oracle node limit exceeded");
      if (v > 0) {
        bool capped = false;
        for (std::size_t i : support) {
          const std::int64_t a = inst_.target[i];
          ++b_[i];
          if (b_[i] > a) {
            ++over_;
            if (cap_ >= 0 && b_[i] - a > cap_) capped = true;
          }
        }
        ++bot_;
        // over and bot only grow with v, so neither test can recover later
        if (capped || !beats(bound(over_, under_, bot_))) break;
      }
      u_[p] = v;
      std::int64_t added = 0;
      bool short_cap = false;
      for (std::size_t i : finals) {
        const std::int64_t gap = inst_.target[i] - b_[i];
        if (gap > 0) {
          added += gap;
          if (cap_ >= 0 && gap > cap_) short_cap = true;
        }
      }
      under_ += added;
      if (!short_cap && beats(bound(over_, under_, bot_))) dfs(p + 1);
      under_ -= added;
    }
    u_[p] = 0;
    for (std::size_t i : support) b_[i] -= static_cast<std::int64_t>(bot_ - saved_bot);
    over_ = saved_over;
    bot_ = saved_bot;
  }

  const CvpInstance& inst_;
  std::vector<std::size_t> order_;
  std::vector<std::int64_t> bounds_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::int64_t wmu_ = 0;
  std::int64_t wnu_ = 0;
  std::int64_t cap_ = -1;
  std::vector<std::vector<std::size_t>> support_;
  std::vector<std::vector<std::size_t>> finals_;
  std::vector<std::int64_t> b_;
  std::vector<std::int64_t> u_;
  std::int64_t over_ = 0;
  std::int64_t under_ = 0;
  std::int64_t bot_ = 0;
  bool dead_ = false;
  bool found_ = false;
  Wide best_ = 0;
  std::vector<std::int64_t> best_u_;
};

}  // namespace

SolveReport brute_force_opt(const CvpInstance& instance, const OracleBudget& budget) {
  require_valid(instance);
  if (budget.u_max && *budget.u_max < 0) throw Error(ErrorCode::kInvalidArgument, "u_max must be nonnegative");
  const std::size_t k = instance.k();
  const std::size_t d = instance.d();

  std::vector<std::ptrdiff_t> first(k, -1);
  std::vector<std::ptrdiff_t> last(k, -1);
  std::vector<std::int64_t> sufficient(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      if (!instance.generators[j][i]) continue;
      if (first[j] < 0) first[j] = static_cast<std::ptrdiff_t>(i);
      last[j] = static_cast<std::ptrdiff_t>(i);
      sufficient[j] = std::max(sufficient[j], instance.target[i]);
    }
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::tie(last[x], first[x], x) < std::tie(last[y], first[y], y);
  });

  bool certified = true;
  std::vector<std::int64_t> bounds;
  for (std::size_t j : order) {
    std::int64_t bj = sufficient[j];
    if (budget.u_max && *budget.u_max < bj) {
      bj = *budget.u_max;
      certified = false;
    }
    bounds.push_back(bj);
  }

  Search search(instance, std::move(order), std::move(bounds), budget.node_limit);
  search.run();

  SolveReport report;
  report.method = "oracle";
  if (!search.found()) {
    if (!certified)
      throw Error(ErrorCode::kBudgetExceeded, "no solution within u_max, and u_max is too small to prove infeasibility");
    return report;
  }
  report.solution = evaluate(instance, search.best_u());
  if (!report.solution->within_cap) throw Error(ErrorCode::kInternalError, "oracle returned a vector beyond C");
  report.status = certified ? SolveStatus::kOptimalExact : SolveStatus::kApproximate;
  return report;
}

int brute_force_maxsat(const Sat36Formula& formula) {
  if (formula.s > 20) throw Error(ErrorCode::kTooManyVariables, "brute force MaxSAT supports s <= 20");
  require_valid_formula(formula);
  // per clause: which variables must be 1 / 0 to satisfy a literal
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const auto& c : formula.clauses) {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
    for (int lit : c) (lit > 0 ? pos : neg) |= 1U << (std::abs(lit) - 1);
    masks.emplace_back(pos, neg);
  }
  int best = 0;
  const std::uint32_t total = 1U << formula.s;
  for (std::uint32_t x = 0; x < total; ++x) {
    int sat = 0;
    for (const auto& [pos, neg] : masks) sat += ((x & pos) | (~x & neg)) != 0;
    best = std::max(best, sat);
  }
  return best;
}

}  // namespace cvp
